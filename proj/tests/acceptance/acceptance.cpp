// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "poafd/basis_method.hpp"
#include "poafd/error.hpp"
#include "poafd/io.hpp"
#include "poafd/oracle.hpp"
#include "poafd/poafd_engine.hpp"
#include "poafd/problem_solvers.hpp"
#include "poafd/sampling.hpp"

using namespace poafd;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool passed = true;
    std::string detail;
};

struct Criterion {
    int id;
    std::string title;
    double budget_seconds;
    std::function<Outcome()> body;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// Worst value of lhs / rhs over a set of checks; <= 1 means every check holds.
struct Ratio {
    double worst = 0.0;
    void add(double lhs, double rhs) { worst = std::max(worst, rhs > 0.0 ? lhs / rhs : (lhs > 0.0 ? INFINITY : 0.0)); }
    bool ok() const { return worst <= 1.0; }
};

// F = sum_{j<=20} c_j E_{q_j} with sum |c_j| = M; poles anywhere in |q| <= 0.9.
sampling::Molecule molecule(sampling::Rng& rng)
{
    std::uniform_real_distribution<double> total(0.5, 5.0);
    return sampling::random_molecule(rng, 20, 0.9, total(rng));
}

PoafdConfig rate_config()
{
    PoafdConfig c;
    c.max_terms = 50;
    c.tol_residual = 0.0;
    return c;
}

Outcome reproducing_property()
{
    sampling::Rng rng(sampling::kDefaultSeed + 1);
    double worst = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const DiscFunction f = sampling::random_disc_function(rng, kDefaultDegree, 0.99);
        const Complex q = sampling::random_point(rng, 0.9);
        worst = std::max(worst, std::abs(hk_inner(f, szego({q, 0})) - evaluate(f, q)) / f.norm());
    }
    return {worst <= 1e-10, fmt("max |<F,K_q> - F(q)|/||F|| = %.2e over 1000 pairs (tol 1e-10)", worst)};
}

Outcome littlewood_paley()
{
    sampling::Rng rng(sampling::kDefaultSeed + 2);
    std::uniform_int_distribution<std::size_t> degree(0, 8);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        const DiscFunction f = sampling::random_disc_function(rng, degree(rng), 1.0);
        worst = std::max(worst, std::abs(littlewood_paley_norm2(f, 256, 256) - f.norm2()));
    }
    const double z = std::abs(littlewood_paley_norm2(DiscFunction({0.0, 1.0}), 256, 256) - 1.0);
    return {worst <= 1e-6 && z <= 1e-8,
            fmt("max |quadrature - sum|c_k|^2| = %.2e (tol 1e-6); F(z)=z error %.2e (tol 1e-8)", worst, z)};
}

Outcome poafd_rate()
{
    sampling::Rng rng(sampling::kDefaultSeed + 3);
    Ratio r;
    for (int t = 0; t < 20; ++t) {
        const auto m = molecule(rng);
        const ExpansionResult res = poafd_expand(m.function, rate_config());
        for (std::size_t n = 1; n < res.residual_norms.size(); ++n) {
            r.add(res.residual_norms[n], m.total / std::sqrt(static_cast<double>(n)));
        }
    }
    return {r.ok(), fmt("max residual_n / (M/sqrt n) = %.3f over 20 inputs, n <= 50", r.worst)};
}

Outcome sparse_recovery()
{
    // Unit-norm atoms are taken from the default grid, pairwise >= 0.3 apart,
    // with weights decreasing by 1e-3 so that each greedy pick lands on an atom.
    // Grid selection only: refinement would chase the continuum maximizer,
    // which the lighter atoms shift off the grid point.
    sampling::Rng rng(sampling::kDefaultSeed + 4);
    PoafdConfig cfg;
    cfg.refine_steps = 0;
    cfg.tol_residual = 1e-13;
    const auto& grid = cfg.grid.points;
    std::uniform_int_distribution<std::size_t> pick(1, grid.size() - 1);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    double worst = 0.0;
    int runs = 0;
    for (std::size_t k = 1; k <= 3; ++k) {
        for (int t = 0; t < 5; ++t, ++runs) {
            std::vector<Complex> pts;
            while (pts.size() < k) {
                const Complex q = grid[pick(rng)];
                bool ok = std::abs(q) >= 0.2 && std::abs(q) <= 0.9;
                for (const auto& p : pts) {
                    ok = ok && std::abs(p - q) >= 0.3;
                }
                if (ok) {
                    pts.push_back(q);
                }
            }
            std::vector<Complex> weights;
            for (std::size_t j = 0; j < k; ++j) {
                weights.push_back(std::polar(std::pow(1e-3, static_cast<double>(j)), phase(rng)));
            }
            const DiscFunction f = sampling::normalized_kernel_sum(pts, weights, kDefaultDegree).function;
            cfg.max_terms = static_cast<int>(k);
            const ExpansionResult res = poafd_expand(f, cfg);
            worst = std::max(worst, res.residual_norms.back() / f.norm());
        }
    }
    return {worst <= 1e-9, fmt("max ||G_{k+1}||/||F|| = %.2e over %g inputs with k = 1..3 atoms (tol 1e-9)", worst,
                               runs)};
}

Outcome greedy_optimality()
{
    sampling::Rng rng(sampling::kDefaultSeed + 5);
    PoafdConfig cfg;
    cfg.grid = SelectionGrid::polar(16, 32);
    cfg.refine_steps = 0;
    cfg.max_terms = 10;
    cfg.tol_residual = 0.0;
    double worst = 0.0;
    int mismatches = 0;
    for (int t = 0; t < 10; ++t) {
        const DiscFunction f = sampling::random_disc_function(rng, kDefaultDegree, 0.9);
        const ExpansionResult res = poafd_expand(f, cfg);
        const oracle::GreedyTrace ref = oracle::exhaustive_greedy(f, cfg.grid.points, 10);
        if (ref.params.size() != res.terms()) {
            ++mismatches;
            continue;
        }
        for (std::size_t k = 0; k < res.terms(); ++k) {
            if (!(res.system.params()[k] == ref.params[k])) {
                ++mismatches;
            }
            worst = std::max(worst, std::abs(res.residual_norms[k + 1] - ref.residuals[k + 1]) / f.norm());
        }
    }
    return {mismatches == 0 && worst <= 1e-9,
            fmt("%g differing selections; max residual gap %.2e (tol 1e-9), 10 inputs x 10 steps", mismatches, worst)};
}

Outcome inversion_bound()
{
    sampling::Rng rng(sampling::kDefaultSeed + 6);
    Ratio bound;
    double iso = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto m = molecule(rng);
        const InversionResult inv = solve_inversion(m.function, rate_config());
        const BoundaryFunction lift = apply_L_inverse(m.function);
        for (std::size_t n = 1; n <= inv.expansion.terms(); ++n) {
            const BoundaryFunction part = inv.inverse_prefix(n);
            bound.add((lift - part).norm(), m.total / std::sqrt(static_cast<double>(n)));
            iso = std::max(iso, std::abs(part.norm() - reconstruct(inv.expansion, n).norm()));
        }
    }
    return {bound.ok() && iso <= 1e-10,
            fmt("max ||f+ - inverse_n|| / (M/sqrt n) = %.3f; max | ||inverse_n|| - ||F_n|| | = %.2e (tol 1e-10)",
                bound.worst, iso)};
}

Outcome moore_penrose()
{
    sampling::Rng rng(sampling::kDefaultSeed + 7);
    Ratio bound;
    double defect_err = 0.0;
    for (int t = 0; t < 20; ++t) {
        const auto m = molecule(rng);
        BoundaryFunction f = apply_L_inverse(m.function);
        double noise2 = 0.0;
        for (long k = 1; k <= static_cast<long>(kDefaultDegree); ++k) {
            f[-k] = sampling::random_complex(rng) * std::pow(0.9, static_cast<double>(k));
            noise2 += std::norm(f[-k]);
        }
        const PseudoInverseResult r = solve_pseudo_inverse(f, rate_config());
        defect_err = std::max(defect_err, std::abs(r.defect - std::sqrt(noise2)));
        const double d2 = r.defect * r.defect;
        for (std::size_t n = 1; n <= r.expansion.terms(); ++n) {
            bound.add(r.approximation_error2(f, n) - d2, m.total * m.total / static_cast<double>(n));
        }
    }
    return {bound.ok() && defect_err <= 1e-10,
            fmt("max (||F - G_n||^2 - d_F^2) / (M^2/n) = %.3f; d_F error %.2e (tol 1e-10)", bound.worst,
                defect_err)};
}

Outcome basis_equivalence()
{
    sampling::Rng rng(sampling::kDefaultSeed + 8);
    std::uniform_int_distribution<std::size_t> size(1, 8);
    double s1_err = 0.0;
    double s2_err = 0.0;
    int s3_mismatch = 0;
    for (int t = 0; t < 100; ++t) {
        const auto pts = sampling::separated_points(rng, size(rng), 0.9, 0.1);
        BoundaryFunction f(kDefaultDegree);
        for (long k = -static_cast<long>(kDefaultDegree); k <= static_cast<long>(kDefaultDegree); ++k) {
            f[k] = sampling::random_complex(rng) * std::pow(0.95, std::abs(static_cast<double>(k)));
        }
        const DiscFunction g = apply_L(f);
        const BasisPlan plan(pts);
        const DiscFunction s1 = basis_expand(g, plan);
        const BoundaryFunction s2 = basis_invert(g, plan);
        const DiscFunction ref = oracle::projection_least_squares(g, pts).function;
        s1_err = std::max(s1_err, (s1 - ref).norm() / g.norm());
        s2_err = std::max(s2_err, (apply_L(s2) - s1).norm() / g.norm());
        s3_mismatch += basis_pseudo_inverse(f, plan) == s2 ? 0 : 1;
    }
    return {s1_err <= 1e-8 && s2_err <= 1e-8 && s3_mismatch == 0,
            fmt("S1 vs oracle %.2e, L(S2) vs S1 %.2e (tol 1e-8), S3 != S2 o L in %g of 100", s1_err, s2_err,
                s3_mismatch)};
}

Outcome multiple_kernels()
{
    sampling::Rng rng(sampling::kDefaultSeed + 9);
    double e1 = 0.0;
    double e2 = 0.0;
    for (int t = 0; t < 20; ++t) {
        const Complex q = sampling::random_point(rng, 0.9);
        const DiscFunction k1 = szego({q, 1});
        const DiscFunction k2 = szego({q, 2});
        e1 = std::max(e1, (oracle::finite_difference_kernel_derivative(q, 1, 1e-5) - k1).norm() / k1.norm());
        e2 = std::max(e2, (oracle::finite_difference_kernel_derivative(q, 2, 1e-4) - k2).norm() / k2.norm());
    }

    // F = K_q0 + dK_q0. The first step is forced onto q0; the free second
    // step must return to q0 with a first-order kernel.
    PoafdConfig cfg;
    const Complex q0 = cfg.grid.points[1 + 20 * 128 + 17];
    const DiscFunction f = szego({q0, 0}) + szego({q0, 1});
    OrthoSystem sys = extend(OrthoSystem(), KernelParam{q0, 0}).first;
    DiscFunction g = f;
    detail::subtract_scaled(g.coeffs(), hk_inner(g, sys.basis(0)), sys.basis(0).coeffs());
    const Selection sel = maximal_selection(sys, g, cfg);
    bool repeat_ok = std::abs(sel.param.q - q0) <= cfg.eps_coincide && sel.param.order == 1;
    auto [next, diag] = extend(sys, sel.param);
    repeat_ok = repeat_ok && diag.accepted;
    if (diag.accepted) {
        const DiscFunction& b = next.basis(1);
        detail::subtract_scaled(g.coeffs(), hk_inner(g, b), b.coeffs());
    }
    const double res = g.norm() / f.norm();
    return {e1 <= 1e-6 && e2 <= 1e-4 && repeat_ok && res <= 1e-8,
            fmt("finite differences m=1 %.2e (tol 1e-6), m=2 %.2e (tol 1e-4); repeat residual %.2e", e1, e2, res) +
                (repeat_ok ? ", order 1 at the repeat" : ", repeat NOT selected with order 1")};
}

Outcome orthonormality_stress()
{
    // 32 candidate poles in a disc of diameter 0.02. Once the distinct poles
    // are exhausted numerically the engine repeats poles with higher orders.
    sampling::Rng rng(sampling::kDefaultSeed + 10);
    const Complex centre(0.06, 0.08);
    std::vector<Complex> pts;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 8; ++j) {
            pts.push_back(centre + std::polar(0.01 * i / 3.0, 2.0 * std::numbers::pi * j / 8.0));
        }
    }
    PoafdConfig cfg;
    cfg.grid = SelectionGrid::from_points(pts);
    cfg.max_terms = 64;
    cfg.tol_residual = 0.0;
    double worst = 0.0;
    std::size_t fewest = 64;
    for (int t = 0; t < 3; ++t) {
        const ExpansionResult res = poafd_expand(sampling::random_disc_function(rng, kDefaultDegree, 0.97), cfg);
        worst = std::max(worst, res.system.orthonormality_error());
        fewest = std::min(fewest, res.terms());
    }
    return {worst <= 1e-8 && fewest == 64,
            fmt("max |<B_i,B_j> - delta_ij| = %.2e (tol 1e-8) after %g steps, poles within 0.02", worst,
                static_cast<double>(fewest))};
}

Outcome weak_mode()
{
    sampling::Rng rng(sampling::kDefaultSeed + 11);
    double worst = INFINITY;
    int repeats = 0;
    for (const double rho : {0.5, 0.9, 0.99}) {
        PoafdConfig cfg;
        cfg.mode = Mode::weak;
        cfg.rho = rho;
        cfg.max_terms = 32;
        for (int t = 0; t < 3; ++t) {
            const auto m = molecule(rng);
            const ExpansionResult res = poafd_expand(m.function, cfg);
            for (std::size_t i = 0; i < res.terms(); ++i) {
                worst = std::min(worst, res.objective_trace[i] / res.supremum_trace[i] - rho);
                for (std::size_t j = 0; j < i; ++j) {
                    repeats += std::abs(res.system.params()[i].q - res.system.params()[j].q) <= cfg.eps_coincide;
                }
            }
        }
    }
    return {worst >= 0.0 && repeats == 0,
            fmt("min (accepted / supremum - rho) = %.3e; %g repeated parameters", worst, repeats)};
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome cli_determinism()
{
    const fs::path dir = fs::temp_directory_path() / "poafd_acceptance";
    fs::create_directories(dir);
    sampling::Rng rng(sampling::kDefaultSeed + 12);
    const DiscFunction f = sampling::random_disc_function(rng, kDefaultDegree, 0.9);
    const std::string text = io::dump(io::to_json(f));
    std::ofstream(dir / "input.json", std::ios::binary) << text;

    std::vector<std::string> outputs;
    for (int run = 0; run < 2; ++run) {
        const std::string tag = std::to_string(run);
        const std::string cmd = std::string(POAFD_CLI_PATH) + " expand --max-terms 16 --input " +
                                (dir / "input.json").string() + " --output " + (dir / ("out" + tag + ".json")).string() +
                                " --csv " + (dir / ("out" + tag + ".csv")).string();
        if (std::system(cmd.c_str()) != 0) {
            return {false, "expand run failed: " + cmd};
        }
        outputs.push_back(slurp(dir / ("out" + tag + ".json")) + slurp(dir / ("out" + tag + ".csv")));
    }
    const bool same = outputs[0] == outputs[1] && !outputs[0].empty();
    const auto back = io::ingest(dir / "input.json");
    const bool lossless = std::holds_alternative<DiscFunction>(back) && std::get<DiscFunction>(back) == f &&
                          io::dump(io::to_json(std::get<DiscFunction>(back))) == text;
    return {same && lossless, std::string("two expand runs ") + (same ? "byte-identical" : "DIFFER") +
                                  ", coefficient round trip " + (lossless ? "lossless" : "LOSSY")};
}

}  // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "reproducing property", 5, reproducing_property},
        {2, "Littlewood-Paley identity", 30, littlewood_paley},
        {3, "POAFD rate M/sqrt(n)", 120, poafd_rate},
        {4, "exact sparse recovery", 10, sparse_recovery},
        {5, "greedy optimality vs exhaustive search", 120, greedy_optimality},
        {6, "inversion isometry and truncation bound", 120, inversion_bound},
        {7, "Moore-Penrose decomposition", 120, moore_penrose},
        {8, "basis-method equivalence", 60, basis_equivalence},
        {9, "multiple-kernel correctness", 30, multiple_kernels},
        {10, "orthonormality under clustered poles", 60, orthonormality_stress},
        {11, "weak-mode guarantee", 60, weak_mode},
        {12, "CLI determinism and round trip", 10, cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = secs <= c.budget_seconds;
        const bool passed = o.passed && in_time;
        failures += passed ? 0 : 1;
        std::printf("%s  [%2d] %s: %s (%.2f s, limit %.0f s%s)\n", passed ? "PASS" : "FAIL", c.id, c.title.c_str(),
                    o.detail.c_str(), secs, c.budget_seconds, in_time ? "" : ", OVER BUDGET");
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
