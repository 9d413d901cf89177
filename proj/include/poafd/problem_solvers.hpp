#pragma once

///
/// \file problem_solvers.hpp
///
/// The three problems driven by POAFD:
///   (i)   expansion of F in H^2,
///   (ii)  minimum-norm inversion f^+ = L^{-1} F,
///   (iii) Moore-Penrose pseudo-inversion of F in L^2(circle), where H^2 sits
///         inside L^2 as a closed subspace through boundary values.
///

#include <cstddef>
#include <vector>

#include "poafd/hardy_model.hpp"
#include "poafd/poafd_engine.hpp"

namespace poafd {

struct InversionResult {
    ExpansionResult expansion;
    /// L^{-1} B_k for each term of the expansion.
    std::vector<BoundaryFunction> atoms;
    /// sum_k <F, B_k> L^{-1} B_k over all terms.
    BoundaryFunction inverse;

    /// Partial inverse sum over the first n terms.
    BoundaryFunction inverse_prefix(std::size_t n) const;
};

struct PseudoInverseResult {
    DiscFunction projection;    ///< G = P_{H^2} F = L F
    double defect = 0.0;        ///< d_F = ||F - G||, the distance from F to H^2
    ExpansionResult expansion;  ///< POAFD expansion of G; empty when G = 0
    std::vector<BoundaryFunction> atoms;
    BoundaryFunction inverse;   ///< L^{-1} applied to the expansion of G

    BoundaryFunction inverse_prefix(std::size_t n) const;

    /// ||F - G_n||^2 measured directly in L^2, G_n the n-term partial sum.
    double approximation_error2(const BoundaryFunction& f, std::size_t n) const;
};

/// Images L^{-1} B_k obtained by replaying each Gram-Schmidt recipe with the
/// kernel atoms K~_q replaced by their boundary counterparts h~_q.
std::vector<BoundaryFunction> inverse_basis(const OrthoSystem& sys, double r_max = kDefaultRMax);

ExpansionResult solve_expansion(const DiscFunction& f, const PoafdConfig& config);

InversionResult solve_inversion(const DiscFunction& f, const PoafdConfig& config);

/// Zero analytic part is not an error: the result has an empty expansion, a
/// zero inverse and defect = ||F||.
PseudoInverseResult solve_pseudo_inverse(const BoundaryFunction& f, const PoafdConfig& config);

}  // namespace poafd
