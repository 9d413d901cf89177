#pragma once

///
/// \file orthonormalize.hpp
///
/// Incremental Gram-Schmidt over kernel dictionaries.
///
/// An OrthoSystem holds the selected dictionary elements E_1..E_n (unit
/// normalized candidates), their orthonormalization B_1..B_n and the lower
/// triangular transfer matrix A with A[i][j] = <E_i, B_j>, so that A B = E.
/// Each B_n is produced by modified Gram-Schmidt; a second pass runs when the
/// first one cancels more than four digits of the candidate.
///

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "poafd/hardy_model.hpp"

namespace poafd {

inline constexpr double kDefaultDeltaSpan = 1e-12;
inline constexpr double kDefaultEpsCoincide = 1e-9;
/// Relative defect below which a second orthogonalization pass is made.
inline constexpr double kReorthogonalizeBelow = 1e-4;

struct GsDiagnostics {
    /// <K, B_k> for k < n, K the candidate as supplied (not normalized).
    std::vector<Complex> projection_coeffs;
    /// ||K||^2 - sum_k |<K, B_k>|^2, evaluated as the squared norm of the
    /// orthogonal remainder.
    double defect = 0.0;
    bool accepted = false;
};

/// Replayable record of one orthonormalization step:
/// v = E - sum over passes, in order, of c_k B_k; then B = v / norm.
struct GsRecipe {
    std::vector<std::vector<Complex>> passes;
    double norm = 0.0;
};

class OrthoSystem {
public:
    explicit OrthoSystem(std::size_t degree = kDefaultDegree) : degree_(degree) {}

    std::size_t size() const noexcept { return basis_.size(); }
    bool empty() const noexcept { return basis_.empty(); }
    std::size_t degree() const noexcept { return degree_; }

    /// Kernel parameters of the atoms selected so far, in selection order.
    /// Entries added through the generic-candidate extend() are skipped.
    const std::vector<KernelParam>& params() const noexcept { return params_; }
    const std::optional<KernelParam>& atom(std::size_t i) const { return atoms_.at(i); }

    std::span<const DiscFunction> basis() const noexcept { return basis_; }
    std::span<const DiscFunction> dictionary() const noexcept { return dictionary_; }
    const DiscFunction& basis(std::size_t i) const { return basis_.at(i); }
    const DiscFunction& dictionary(std::size_t i) const { return dictionary_.at(i); }

    /// ||K~_i||, the norm of the i-th candidate before normalization.
    double candidate_norm(std::size_t i) const { return candidate_norms_.at(i); }
    const GsRecipe& recipe(std::size_t i) const { return recipes_.at(i); }

    /// A[i][j] = <E_i, B_j>; zero above the diagonal.
    Complex transfer(std::size_t i, std::size_t j) const;
    const std::vector<std::vector<Complex>>& transfer_rows() const noexcept { return transfer_; }

    /// Orthogonal projection sum_k <f, B_k> B_k.
    DiscFunction project(const DiscFunction& f) const;

    /// max_{i,j} |<B_i, B_j> - delta_ij|.
    double orthonormality_error() const;

private:
    friend std::pair<OrthoSystem, GsDiagnostics> append_candidate(OrthoSystem sys, DiscFunction candidate,
                                                                  std::optional<KernelParam> atom,
                                                                  double delta_span);

    std::size_t degree_;
    std::vector<KernelParam> params_;
    std::vector<std::optional<KernelParam>> atoms_;
    std::vector<DiscFunction> basis_;
    std::vector<DiscFunction> dictionary_;
    std::vector<double> candidate_norms_;
    std::vector<std::vector<Complex>> transfer_;
    std::vector<GsRecipe> recipes_;
};

/// 1 + number of previous parameters within eps_coincide of q.
std::size_t multiplicity(std::span<const KernelParam> params, Complex q, double eps_coincide);

/// The kernel parameter to use at q: order = multiplicity - 1.
KernelParam candidate_param(std::span<const KernelParam> params, Complex q, double eps_coincide);

/// szego(q, multiplicity(params, q, eps) - 1): the multiple kernel at q.
DiscFunction candidate_kernel(std::span<const KernelParam> params, Complex q, double eps_coincide,
                              std::size_t degree = kDefaultDegree, double r_max = kDefaultRMax);

struct Remainder {
    DiscFunction vector;
    GsRecipe recipe;
};

/// Orthogonal remainder of `unit` (expected to have norm 1) against the
/// system, without modifying it. recipe.norm is left at ||vector||.
Remainder orthogonal_remainder(const OrthoSystem& sys, DiscFunction unit);

/// Orthonormalize the kernel described by `atom` against the system. When the
/// remainder's squared relative norm is <= delta_span the candidate is taken
/// to lie in the span: the system comes back unchanged and accepted = false.
std::pair<OrthoSystem, GsDiagnostics> extend(OrthoSystem sys, const KernelParam& atom,
                                             double delta_span = kDefaultDeltaSpan,
                                             double r_max = kDefaultRMax);

/// Same for an arbitrary nonzero candidate; throws zero_input on zero.
std::pair<OrthoSystem, GsDiagnostics> extend(OrthoSystem sys, const DiscFunction& candidate,
                                             double delta_span = kDefaultDeltaSpan);

}  // namespace poafd
