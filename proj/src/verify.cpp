#include "poafd/verify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "poafd/basis_method.hpp"
#include "poafd/hardy_model.hpp"
#include "poafd/oracle.hpp"
#include "poafd/poafd_engine.hpp"
#include "poafd/problem_solvers.hpp"

namespace poafd {

bool VerificationReport::passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

namespace {

using sampling::Rng;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Runs `trial` the given number of times and keeps the worst error.
CheckResult check(std::string name, std::size_t trials, double tolerance, const std::function<double()>& trial)
{
    CheckResult r{std::move(name), trials, 0.0, tolerance, false};
    for (std::size_t t = 0; t < trials; ++t) {
        const double e = trial();
        r.max_error = std::isnan(e) ? kInf : std::max(r.max_error, e);
    }
    r.passed = r.max_error <= tolerance;
    return r;
}

double rel_distance(const DiscFunction& a, const DiscFunction& b, double scale)
{
    return (a - b).norm() / scale;
}

}  // namespace

VerificationReport run_verification(std::uint64_t seed, std::size_t trials)
{
    VerificationReport report;
    report.seed = seed;
    Rng rng(seed);
    constexpr std::size_t kN = kDefaultDegree;

    report.checks.push_back(check("reproducing_property", trials, 1e-10, [&] {
        const DiscFunction f = sampling::random_disc_function(rng, kN, 0.98);
        const Complex q = sampling::random_point(rng, 0.9);
        return std::abs(hk_inner(f, szego({q, 0}, kN)) - evaluate(f, q)) / f.norm();
    }));

    const double trunc = std::pow(kDefaultRMax * kDefaultRMax, kN + 1) / (1.0 - kDefaultRMax * kDefaultRMax);
    report.checks.push_back(check("kernel_gram_identity", trials, trunc, [&] {
        const Complex q = sampling::random_point(rng, kDefaultRMax);
        const Complex p = sampling::random_point(rng, kDefaultRMax);
        return std::abs(hk_inner(szego({q, 0}, kN), szego({p, 0}, kN)) - 1.0 / (1.0 - std::conj(q) * p));
    }));

    report.checks.push_back(check("kernel_isometry", trials, 0.0, [&] {
        const Complex q = sampling::random_point(rng, kDefaultRMax);
        const Complex p = sampling::random_point(rng, kDefaultRMax);
        return std::abs(l2_inner(szego_boundary({q, 0}, kN), szego_boundary({p, 0}, kN)) -
                        hk_inner(szego({q, 0}, kN), szego({p, 0}, kN)));
    }));

    report.checks.push_back(check("plemelj_pythagoras", trials, 1e-12, [&] {
        BoundaryFunction f(32);
        for (long k = -32; k <= 32; ++k) {
            f[k] = sampling::random_complex(rng);
        }
        const auto [plus, minus] = plemelj_split(f);
        return std::abs(f.norm2() - plus.norm2() - minus.norm2()) / f.norm2() + std::abs(l2_inner(plus, minus));
    }));

    auto fd_check = [&](int order, double h) {
        const Complex q = sampling::random_point(rng, 0.9);
        const DiscFunction exact = szego({q, order}, kN);
        return rel_distance(oracle::finite_difference_kernel_derivative(q, order, h, kN), exact, exact.norm());
    };
    report.checks.push_back(check("finite_difference_order1", trials, 1e-6, [&] { return fd_check(1, 1e-5); }));
    report.checks.push_back(check("finite_difference_order2", trials, 1e-4, [&] { return fd_check(2, 1e-4); }));

    report.checks.push_back(check("littlewood_paley", trials, 1e-6, [&] {
        std::uniform_int_distribution<std::size_t> deg(0, 8);
        const DiscFunction f = sampling::random_disc_function(rng, deg(rng), 1.0);
        return std::abs(oracle::quadrature_hk_norm2(f, 128, 64) - f.norm2()) / f.norm2();
    }));

    std::uniform_int_distribution<std::size_t> plan_size(1, 8);
    report.checks.push_back(check("projection_vs_basis_expand", trials, 1e-8, [&] {
        const auto pts = sampling::separated_points(rng, plan_size(rng), 0.9, 0.1);
        const DiscFunction f = sampling::random_disc_function(rng, kN);
        const DiscFunction s1 = basis_expand(f, BasisPlan(pts, kN));
        const DiscFunction ref = oracle::projection_least_squares(f, pts).function;
        return rel_distance(s1, ref, f.norm());
    }));

    report.checks.push_back(check("basis_inversion_round_trip", trials, 1e-8, [&] {
        const auto pts = sampling::separated_points(rng, plan_size(rng), 0.9, 0.1);
        const DiscFunction f = sampling::random_disc_function(rng, kN);
        const BasisPlan plan(pts, kN);
        const OrthoSystem sys = basis_build(plan);
        const DiscFunction s1 = basis_expand(f, sys);
        return rel_distance(apply_L(basis_invert(f, sys)), s1, f.norm());
    }));

    // The exhaustive oracle is expensive; a handful of small runs suffices.
    const std::size_t greedy_trials = std::max<std::size_t>(1, trials / 20);
    report.checks.push_back(check("greedy_vs_exhaustive", greedy_trials, 1e-9, [&] {
        PoafdConfig cfg;
        cfg.grid = SelectionGrid::polar(8, 16);
        cfg.refine_steps = 0;
        cfg.max_terms = 5;
        cfg.tol_residual = 0.0;
        const DiscFunction f = sampling::random_disc_function(rng, kN, 0.8);
        const ExpansionResult res = poafd_expand(f, cfg);
        const oracle::GreedyTrace ref = oracle::exhaustive_greedy(f, cfg.grid.points, 5);
        if (ref.params.size() != res.terms()) {
            return kInf;
        }
        double err = 0.0;
        for (std::size_t k = 0; k < res.terms(); ++k) {
            const KernelParam& p = res.system.params()[k];
            if (p.order != ref.params[k].order) {
                return kInf;
            }
            err = std::max(err, std::abs(p.q - ref.params[k].q));
            err = std::max(err, std::abs(res.residual_norms[k + 1] - ref.residuals[k + 1]) / f.norm());
        }
        return err;
    }));

    report.checks.push_back(check("poafd_energy_identity", greedy_trials, 1e-8, [&] {
        PoafdConfig cfg;
        cfg.max_terms = 16;
        const DiscFunction f = sampling::random_disc_function(rng, kN, 0.9);
        const ExpansionResult res = poafd_expand(f, cfg);
        double energy = 0.0;
        for (const auto& c : res.coefficients) {
            energy += std::norm(c);
        }
        const double tail = res.residual_norms.back();
        return std::abs(f.norm2() - energy - tail * tail) / f.norm2();
    }));

    report.checks.push_back(check("inversion_round_trip", greedy_trials, 1e-9, [&] {
        PoafdConfig cfg;
        cfg.max_terms = 16;
        const DiscFunction f = sampling::random_disc_function(rng, kN, 0.9);
        const InversionResult inv = solve_inversion(f, cfg);
        double err = 0.0;
        for (std::size_t n = 0; n <= inv.expansion.terms(); ++n) {
            const DiscFunction partial = reconstruct(inv.expansion, n);
            err = std::max(err, rel_distance(apply_L(inv.inverse_prefix(n)), partial, f.norm()));
        }
        return err;
    }));

    return report;
}

}  // namespace poafd
