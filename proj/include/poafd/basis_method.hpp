#pragma once

///
/// \file basis_method.hpp
///
/// Non-adaptive comparator: a fixed plan of distinct parameters q_1..q_n,
/// its Gram-Schmidt system B = A^{-1} E and the three transfer-matrix
/// solutions
///
///   S1 = F_B B,   S2 = F_B A^{-1} T,   S3 = {<F, K_.>}_B A^{-1} T,
///
/// with F_B the row of <F, B_l>, T the column of normalized boundary kernels
/// h_{q_l} / ||h_{q_l}||. A^{-1} is never formed; S2 and S3 use a triangular
/// solve.
///

#include <cstddef>
#include <vector>

#include "poafd/hardy_model.hpp"
#include "poafd/orthonormalize.hpp"

namespace poafd {

inline constexpr double kMaxTransferCondition = 1e12;

class BasisPlan {
public:
    /// Throws DegeneratePlanError (with the offending index) when two
    /// parameters lie within eps_coincide; parameter_out_of_domain for
    /// |q| > r_max.
    BasisPlan(std::vector<Complex> points, std::size_t degree = kDefaultDegree,
              double eps_coincide = kDefaultEpsCoincide, double r_max = kDefaultRMax);

    const std::vector<Complex>& points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }
    std::size_t degree() const noexcept { return degree_; }
    double r_max() const noexcept { return r_max_; }

private:
    std::vector<Complex> points_;
    std::size_t degree_;
    double r_max_;
};

/// Orthonormal system of the plan's normalized kernels. A kernel numerically
/// in the span of its predecessors raises DegeneratePlanError.
OrthoSystem basis_build(const BasisPlan& plan, double delta_span = kDefaultDeltaSpan);

/// S1: orthogonal projection of F onto span{K_q : q in plan}.
DiscFunction basis_expand(const DiscFunction& f, const BasisPlan& plan);
DiscFunction basis_expand(const DiscFunction& f, const OrthoSystem& sys);

/// S2 = F_B A^{-1} T. Throws ill_conditioned when cond(A) > 1e12.
BoundaryFunction basis_invert(const DiscFunction& f, const BasisPlan& plan);
BoundaryFunction basis_invert(const DiscFunction& f, const OrthoSystem& sys, double r_max = kDefaultRMax);

/// S3: S2 applied to G = L F, the projection of F onto H^2.
BoundaryFunction basis_pseudo_inverse(const BoundaryFunction& f, const BasisPlan& plan);

/// 2-norm condition number of the transfer matrix.
double transfer_condition(const OrthoSystem& sys);

}  // namespace poafd
