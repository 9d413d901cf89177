#pragma once

///
/// \file poafd_engine.hpp
///
/// Pre-orthogonal adaptive Fourier decomposition (POAFD) and its weak variant.
///
/// At step n, with B_1..B_{n-1} already chosen and residual
/// G_n = F - sum_{k<n} <F, B_k> B_k, every candidate parameter q is scored by
///
///   |<G_n, B_n^q>|,   B_n^q = the Gram-Schmidt completion of the multiple
///                             kernel at q against B_1..B_{n-1},
///
/// and the parameter maximizing the score (full mode) or the first one
/// reaching rho times the supremum (weak mode) is added to the system.
///
/// The continuum search over the disc is replaced by a polar grid followed by
/// a few rounds of local refinement around the incumbent.
///

#include <cstddef>
#include <vector>

#include "poafd/hardy_model.hpp"
#include "poafd/orthonormalize.hpp"

namespace poafd {

struct SelectionGrid {
    std::vector<Complex> points;
    int radial_count = 0;   ///< 0 for an explicit point list (no refinement)
    int angular_count = 0;
    double r_max = kDefaultRMax;

    /// The origin followed by rings r_i = r_max * i / (radial - 1), i = 1..radial-1,
    /// each with `angular` points at angles 2 pi j / angular.
    static SelectionGrid polar(int radial = 64, int angular = 128, double r_max = kDefaultRMax);

    /// An explicit, unstructured list of candidate points.
    static SelectionGrid from_points(std::vector<Complex> points, double r_max = kDefaultRMax);

    double radial_step() const;
    double angular_step() const;
};

enum class Mode { full, weak };

struct PoafdConfig {
    Mode mode = Mode::full;
    double rho = 0.9;                  ///< weak mode acceptance fraction, in (0, 1)
    int max_terms = 64;
    double tol_residual = 1e-8;        ///< stop when ||G|| <= tol_residual * ||F||
    double eps_coincide = kDefaultEpsCoincide;
    double delta_span = kDefaultDeltaSpan;
    SelectionGrid grid = SelectionGrid::polar();
    int refine_steps = 3;
    std::size_t degree = kDefaultDegree;

    /// Throws invalid_argument on out-of-range settings.
    void validate() const;
};

struct Selection {
    KernelParam param;
    double objective = 0.0;
    /// Largest objective seen over the grid (and refinement) at this step.
    double supremum = 0.0;
};

struct ExpansionResult {
    Mode mode = Mode::full;
    OrthoSystem system;
    std::vector<Complex> coefficients;     ///< <F, B_k>, k = 1..n
    /// residual_norms[n] = ||F - sum_{k<=n} <F,B_k> B_k||; index 0 holds ||F||.
    std::vector<double> residual_norms;
    std::vector<double> objective_trace;   ///< accepted objective per step
    std::vector<double> supremum_trace;    ///< grid supremum per step

    std::size_t terms() const noexcept { return coefficients.size(); }
};

/// |<G, B_n^q>| computed by explicit Gram-Schmidt of the multiple kernel at q.
/// Returns 0 when the candidate lies numerically in the span of the system.
double selection_objective(const OrthoSystem& sys, const DiscFunction& residual, Complex q,
                           const PoafdConfig& config);

/// Grid sweep bound to one growing OrthoSystem.
///
/// For a residual orthogonal to the system, <G, B_n^q> = G(q) / sqrt(d(q)) with
/// d(q) = ||K_q||^2 - sum_k |B_k(q)|^2. The sweep caches sum_k |B_k(q)|^2 per
/// grid point and updates it as the system grows, so a step costs two Horner
/// evaluations per point. Where d(q) < 1e-8 ||K_q||^2 the subtraction loses
/// too many digits and the point falls back to selection_objective(), as do
/// points near earlier selections. Every grid value within a relative 1e-4 of
/// a decision (the maximum, the weak-mode threshold) is also recomputed
/// explicitly, so rounding in the fast formula cannot change the outcome.
/// Points that are clearly inside the span are dropped on the fast value.
class SelectionSweep {
public:
    explicit SelectionSweep(PoafdConfig config);

    /// Selects the next parameter. `sys` must be the same system (possibly
    /// grown) passed on previous calls, or a fresh one.
    Selection select(const OrthoSystem& sys, const DiscFunction& residual);

    const PoafdConfig& config() const noexcept { return config_; }

private:
    struct Candidate {
        Complex q;
        double objective;
    };

    static constexpr double kFastDefectFloor = 1e-8;
    static constexpr double kNearTie = 1e-4;
    /// Bound on the rounding error of d(q) / ||K_q||^2 from the fast formula
    /// (observed around 1e-15). Points whose fast defect sits below
    /// delta_span by more than this are degenerate without further work.
    static constexpr double kFastDefectSlack = 1e-13;

    void sync(const OrthoSystem& sys);
    double point_objective(const OrthoSystem& sys, const DiscFunction& residual, Complex q,
                           double kernel_norm2, double bessel, bool coincident) const;
    double exact_objective(const OrthoSystem& sys, const DiscFunction& residual, Complex q) const;
    void sweep(const OrthoSystem& sys, const DiscFunction& residual, bool skip_coincident);
    void settle_near(const OrthoSystem& sys, const DiscFunction& residual, double value);
    double settled_supremum(const OrthoSystem& sys, const DiscFunction& residual);
    Selection select_full(const OrthoSystem& sys, const DiscFunction& residual);
    Selection select_weak(const OrthoSystem& sys, const DiscFunction& residual);
    Candidate refine(const OrthoSystem& sys, const DiscFunction& residual, Candidate best, double& supremum) const;

    PoafdConfig config_;
    std::vector<double> kernel_norm2_;
    std::vector<double> bessel_;
    std::size_t synced_ = 0;
    std::vector<double> objectives_;
    std::vector<char> exact_;
};

/// One maximal selection step with a fresh sweep. Throws exhausted_dictionary
/// when every grid point is degenerate.
Selection maximal_selection(const OrthoSystem& sys, const DiscFunction& residual, const PoafdConfig& config);

/// Full POAFD (or Weak-POAFD) expansion of F. Throws zero_input for F = 0.
ExpansionResult poafd_expand(const DiscFunction& f, const PoafdConfig& config);

/// Partial sum sum_{k<=n} <F, B_k> B_k; n = 0 gives the zero function.
DiscFunction reconstruct(const ExpansionResult& result, std::size_t n);

/// Deterministic ordering for argmax ties: larger objective first, then
/// smaller |q|, then smaller principal argument.
bool selection_precedes(double objective_a, Complex a, double objective_b, Complex b) noexcept;

}  // namespace poafd
