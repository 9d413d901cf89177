#include "poafd/poafd_engine.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <string>

#include "parallel.hpp"
#include "poafd/error.hpp"

namespace poafd {

// ---------------------------------------------------------------------------
// Grid and configuration

SelectionGrid SelectionGrid::polar(int radial, int angular, double r_max)
{
    if (radial < 2 || angular < 1) {
        throw Error(ErrorCode::invalid_argument, "polar grid needs radial >= 2 and angular >= 1");
    }
    if (!(r_max > 0.0 && r_max < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "grid r_max must lie in (0, 1)");
    }
    SelectionGrid grid;
    grid.radial_count = radial;
    grid.angular_count = angular;
    grid.r_max = r_max;
    grid.points.reserve(1 + static_cast<std::size_t>(radial - 1) * static_cast<std::size_t>(angular));
    grid.points.emplace_back(0.0, 0.0);
    for (int i = 1; i < radial; ++i) {
        const double r = r_max * i / (radial - 1);
        for (int j = 0; j < angular; ++j) {
            grid.points.push_back(std::polar(r, 2.0 * std::numbers::pi * j / angular));
        }
    }
    return grid;
}

SelectionGrid SelectionGrid::from_points(std::vector<Complex> points, double r_max)
{
    SelectionGrid grid;
    grid.points = std::move(points);
    grid.r_max = r_max;
    return grid;
}

double SelectionGrid::radial_step() const
{
    return radial_count >= 2 ? r_max / (radial_count - 1) : 0.0;
}

double SelectionGrid::angular_step() const
{
    return angular_count >= 1 ? 2.0 * std::numbers::pi / angular_count : 0.0;
}

void PoafdConfig::validate() const
{
    auto fail = [](const std::string& what) { throw Error(ErrorCode::invalid_argument, what); };
    if (mode == Mode::weak && !(rho > 0.0 && rho < 1.0)) {
        fail("rho must lie in (0, 1)");
    }
    if (max_terms < 1) {
        fail("max_terms must be >= 1");
    }
    if (!(tol_residual >= 0.0)) {
        fail("tol_residual must be >= 0");
    }
    if (!(eps_coincide > 0.0)) {
        fail("eps_coincide must be positive");
    }
    if (!(delta_span > 0.0 && delta_span < 1.0)) {
        fail("delta_span must lie in (0, 1)");
    }
    if (refine_steps < 0) {
        fail("refine_steps must be >= 0");
    }
    if (degree < 1) {
        fail("truncation degree must be >= 1");
    }
    if (!(grid.r_max > 0.0 && grid.r_max < 1.0)) {
        fail("grid r_max must lie in (0, 1)");
    }
    if (grid.points.empty()) {
        fail("selection grid is empty");
    }
    for (const auto& q : grid.points) {
        if (!(std::abs(q) <= grid.r_max * (1.0 + 1e-12))) {
            fail("grid point outside |q| <= r_max");
        }
    }
}

bool selection_precedes(double objective_a, Complex a, double objective_b, Complex b) noexcept
{
    if (objective_a != objective_b) {
        return objective_a > objective_b;
    }
    const double ra = std::abs(a);
    const double rb = std::abs(b);
    if (ra != rb) {
        return ra < rb;
    }
    return std::arg(a) < std::arg(b);
}

// ---------------------------------------------------------------------------
// Objective

namespace {

// nullopt marks a degenerate candidate (numerically inside the span).
std::optional<double> explicit_objective(const OrthoSystem& sys, const DiscFunction& residual, Complex q,
                                         const PoafdConfig& config)
{
    const KernelParam param = candidate_param(sys.params(), q, config.eps_coincide);
    DiscFunction unit = szego(param, sys.degree(), config.grid.r_max);
    detail::scale(unit.coeffs(), 1.0 / unit.norm());
    const Remainder rem = orthogonal_remainder(sys, std::move(unit));
    if (rem.recipe.norm * rem.recipe.norm <= config.delta_span) {
        return std::nullopt;
    }
    return std::abs(hk_inner(residual, rem.vector)) / rem.recipe.norm;
}

bool coincides(const OrthoSystem& sys, Complex q, double eps)
{
    for (const auto& p : sys.params()) {
        if (std::abs(p.q - q) <= eps) {
            return true;
        }
    }
    return false;
}

}  // namespace

double selection_objective(const OrthoSystem& sys, const DiscFunction& residual, Complex q,
                           const PoafdConfig& config)
{
    return explicit_objective(sys, residual, q, config).value_or(0.0);
}

// ---------------------------------------------------------------------------
// Sweep

SelectionSweep::SelectionSweep(PoafdConfig config) : config_(std::move(config))
{
    config_.validate();
    const auto& pts = config_.grid.points;
    kernel_norm2_.resize(pts.size());
    bessel_.assign(pts.size(), 0.0);
    objectives_.assign(pts.size(), 0.0);
    exact_.assign(pts.size(), 0);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        kernel_norm2_[i] = szego_norm2(pts[i], config_.degree);
    }
}

void SelectionSweep::sync(const OrthoSystem& sys)
{
    if (sys.degree() != config_.degree) {
        throw Error(ErrorCode::invalid_argument, "system degree does not match the sweep configuration");
    }
    if (sys.size() < synced_) {
        std::fill(bessel_.begin(), bessel_.end(), 0.0);
        synced_ = 0;
    }
    if (sys.size() == synced_) {
        return;
    }
    const auto& pts = config_.grid.points;
    const std::size_t from = synced_;
    detail::parallel_for(pts.size(), [&](std::size_t i) {
        for (std::size_t k = from; k < sys.size(); ++k) {
            bessel_[i] += std::norm(evaluate_unchecked(sys.basis(k).coeffs(), pts[i]));
        }
    });
    synced_ = sys.size();
}

double SelectionSweep::point_objective(const OrthoSystem& sys, const DiscFunction& residual, Complex q,
                                       double kernel_norm2, double bessel, bool coincident) const
{
    const double defect = kernel_norm2 - bessel;
    if (!coincident && defect + kFastDefectSlack * kernel_norm2 <= config_.delta_span * kernel_norm2) {
        return -1.0;  // in the span even allowing for the rounding of the fast formula
    }
    if (coincident || defect <= kFastDefectFloor * kernel_norm2) {
        return exact_objective(sys, residual, q);
    }
    return std::abs(evaluate_unchecked(residual.coeffs(), q)) / std::sqrt(defect);
}

double SelectionSweep::exact_objective(const OrthoSystem& sys, const DiscFunction& residual, Complex q) const
{
    return explicit_objective(sys, residual, q, config_).value_or(-1.0);
}

void SelectionSweep::settle_near(const OrthoSystem& sys, const DiscFunction& residual, double value)
{
    const auto& pts = config_.grid.points;
    const double floor = value * (1.0 - kNearTie);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (!exact_[i] && objectives_[i] >= floor) {
            objectives_[i] = exact_objective(sys, residual, pts[i]);
            exact_[i] = 1;
        }
    }
}

void SelectionSweep::sweep(const OrthoSystem& sys, const DiscFunction& residual, bool skip_coincident)
{
    const auto& pts = config_.grid.points;
    detail::parallel_for(pts.size(), [&](std::size_t i) {
        const bool coincident = coincides(sys, pts[i], config_.eps_coincide);
        if (coincident && skip_coincident) {
            objectives_[i] = -1.0;
            exact_[i] = 1;
            return;
        }
        const double defect = kernel_norm2_[i] - bessel_[i];
        exact_[i] = coincident || defect <= kFastDefectFloor * kernel_norm2_[i];
        objectives_[i] = point_objective(sys, residual, pts[i], kernel_norm2_[i], bessel_[i], coincident);
    });
}

Selection SelectionSweep::select(const OrthoSystem& sys, const DiscFunction& residual)
{
    sync(sys);
    return config_.mode == Mode::full ? select_full(sys, residual) : select_weak(sys, residual);
}

double SelectionSweep::settled_supremum(const OrthoSystem& sys, const DiscFunction& residual)
{
    auto max_objective = [this] {
        double m = -1.0;
        for (double obj : objectives_) {
            m = std::max(m, obj);
        }
        return m;
    };
    // Settling can only lower the maximum if it was a fast-path overestimate,
    // in which case the band below the new maximum is settled in turn.
    double sup = max_objective();
    while (sup >= 0.0) {
        settle_near(sys, residual, sup);
        const double settled = max_objective();
        if (settled >= sup) {
            return settled;
        }
        sup = settled;
    }
    return sup;
}

Selection SelectionSweep::select_full(const OrthoSystem& sys, const DiscFunction& residual)
{
    const auto& pts = config_.grid.points;
    sweep(sys, residual, false);
    if (settled_supremum(sys, residual) < 0.0) {
        throw Error(ErrorCode::exhausted_dictionary, "every grid point is degenerate against the current system");
    }

    std::optional<Candidate> best;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (objectives_[i] < 0.0) {
            continue;
        }
        if (!best || selection_precedes(objectives_[i], pts[i], best->objective, best->q)) {
            best = Candidate{pts[i], objectives_[i]};
        }
    }
    double supremum = best->objective;
    if (config_.grid.radial_count >= 2 && config_.refine_steps > 0) {
        best = refine(sys, residual, *best, supremum);
    }
    return {candidate_param(sys.params(), best->q, config_.eps_coincide), best->objective, supremum};
}

SelectionSweep::Candidate SelectionSweep::refine(const OrthoSystem& sys, const DiscFunction& residual,
                                                 Candidate best, double& supremum) const
{
    constexpr int kHalfWidth = 2;
    const double r_max = config_.grid.r_max;
    double dr = config_.grid.radial_step();
    double dt = config_.grid.angular_step();

    for (int round = 0; round < config_.refine_steps; ++round) {
        dr /= 4.0;
        dt /= 4.0;
        const Complex center = best.q;
        const double r0 = std::abs(center);
        const double t0 = std::arg(center);
        Candidate round_best = best;
        for (int i = -kHalfWidth; i <= kHalfWidth; ++i) {
            for (int j = -kHalfWidth; j <= kHalfWidth; ++j) {
                if (i == 0 && j == 0) {
                    continue;
                }
                Complex q;
                if (r0 == 0.0) {
                    q = center + Complex(i * dr, j * dr);
                } else {
                    const double r = r0 + i * dr;
                    if (r < 0.0) {
                        continue;
                    }
                    q = std::polar(r, t0 + j * dt);
                }
                if (std::abs(q) > r_max) {
                    continue;
                }
                // A patch holds only a couple of dozen points; evaluate them exactly.
                const double obj = exact_objective(sys, residual, q);
                if (obj < 0.0) {
                    continue;
                }
                supremum = std::max(supremum, obj);
                if (selection_precedes(obj, q, round_best.objective, round_best.q)) {
                    round_best = {q, obj};
                }
            }
        }
        best = round_best;
    }
    return best;
}

Selection SelectionSweep::select_weak(const OrthoSystem& sys, const DiscFunction& residual)
{
    const auto& pts = config_.grid.points;
    // First pass: objectives over all admissible points. Points coinciding with
    // earlier selections are excluded so that every selection is distinct.
    sweep(sys, residual, true);
    const double supremum = settled_supremum(sys, residual);
    if (supremum < 0.0) {
        throw Error(ErrorCode::exhausted_dictionary, "every grid point is degenerate against the current system");
    }

    const double threshold = config_.rho * supremum;
    const double loose = threshold * (1.0 - kNearTie);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (objectives_[i] < loose) {
            continue;
        }
        if (!exact_[i]) {
            objectives_[i] = exact_objective(sys, residual, pts[i]);
            exact_[i] = 1;
        }
        if (objectives_[i] >= threshold) {
            return {{pts[i], 0}, objectives_[i], supremum};
        }
    }
    // Unreachable: the supremum itself satisfies the threshold.
    throw Error(ErrorCode::exhausted_dictionary, "weak selection found no admissible point");
}

Selection maximal_selection(const OrthoSystem& sys, const DiscFunction& residual, const PoafdConfig& config)
{
    if (residual.is_zero()) {
        throw Error(ErrorCode::zero_input, "maximal selection needs a nonzero residual");
    }
    PoafdConfig cfg = config;
    cfg.degree = sys.degree();
    SelectionSweep sweep(std::move(cfg));
    return sweep.select(sys, residual.resized(sys.degree()));
}

// ---------------------------------------------------------------------------
// Expansion

ExpansionResult poafd_expand(const DiscFunction& f, const PoafdConfig& config)
{
    config.validate();
    if (f.is_zero()) {
        throw Error(ErrorCode::zero_input, "cannot expand the zero function");
    }
    for (std::size_t k = config.degree + 1; k < f.size(); ++k) {
        if (f[k] != Complex{}) {
            throw Error(ErrorCode::invalid_argument, "input degree exceeds the truncation degree");
        }
    }

    DiscFunction residual = f.resized(config.degree);
    const double input_norm = residual.norm();

    ExpansionResult result;
    result.mode = config.mode;
    result.system = OrthoSystem(config.degree);
    result.residual_norms.push_back(input_norm);

    SelectionSweep sweep(config);
    double residual_norm = input_norm;
    while (result.terms() < static_cast<std::size_t>(config.max_terms) &&
           residual_norm > config.tol_residual * input_norm) {
        const Selection sel = sweep.select(result.system, residual);
        if (!(sel.objective > 0.0)) {
            break;
        }
        auto [next, diag] = extend(std::move(result.system), sel.param, config.delta_span, config.grid.r_max);
        result.system = std::move(next);
        if (!diag.accepted) {
            throw Error(ErrorCode::exhausted_dictionary, "selected candidate lies in the span of the system");
        }
        const DiscFunction& b = result.system.basis(result.system.size() - 1);
        // <G_n, B_n> equals <F, B_n> since G_n is orthogonal to B_1..B_{n-1}.
        const Complex c = hk_inner(residual, b);
        detail::subtract_scaled(residual.coeffs(), c, b.coeffs());
        residual_norm = residual.norm();

        result.coefficients.push_back(c);
        result.residual_norms.push_back(residual_norm);
        result.objective_trace.push_back(sel.objective);
        result.supremum_trace.push_back(sel.supremum);
    }
    return result;
}

DiscFunction reconstruct(const ExpansionResult& result, std::size_t n)
{
    if (n > result.terms()) {
        throw Error(ErrorCode::invalid_argument, "requested " + std::to_string(n) + " terms but the expansion has " +
                                                     std::to_string(result.terms()));
    }
    DiscFunction out(result.system.degree());
    for (std::size_t k = 0; k < n; ++k) {
        detail::subtract_scaled(out.coeffs(), -result.coefficients[k], result.system.basis(k).coeffs());
    }
    return out;
}

}  // namespace poafd
