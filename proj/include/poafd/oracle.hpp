#pragma once

///
/// \file oracle.hpp
///
/// Brute-force references for the primary modules. Everything here is built
/// on the hardy-model primitives and dense linear algebra only; none of it
/// calls into the Gram-Schmidt, POAFD or basis-method code it certifies.
///

#include <cstddef>
#include <vector>

#include "poafd/hardy_model.hpp"

namespace poafd::oracle {

inline constexpr double kMaxGramCondition = 1e14;

struct GramSystem {
    /// gram[i][j] = <K_{q_j}, K_{q_i}> for the degree-N truncated kernels.
    std::vector<std::vector<Complex>> gram;
    /// rhs[i] = <F, K_{q_i}> = F(q_i).
    std::vector<Complex> rhs;
};

GramSystem gram_system(const DiscFunction& f, const std::vector<Complex>& params);

struct Projection {
    DiscFunction function;
    std::vector<Complex> weights;  ///< x with function = sum_j x_j K_{q_j}
    double condition = 1.0;        ///< 2-norm condition of the Gram matrix
};

/// Least-squares projection of F onto span{K_q}, from the Gram normal
/// equations. Refuses (ill_conditioned) a Gram condition above 1e14.
Projection projection_least_squares(const DiscFunction& f, const std::vector<Complex>& params);

struct GreedyTrace {
    std::vector<KernelParam> params;
    std::vector<double> objectives;
    /// residuals[n] = distance from F to the span of the first n selections.
    std::vector<double> residuals;
};

/// Greedy maximal selection over a fixed point list, recomputing the complete
/// orthonormal system with Householder QR at every candidate.
GreedyTrace exhaustive_greedy(const DiscFunction& f, const std::vector<Complex>& grid, std::size_t steps,
                              double eps_coincide = 1e-9, double delta_span = 1e-12,
                              double r_max = kDefaultRMax);

/// m-th central difference of q -> K_q along conj(q), step h in [1e-7, 1e-3].
DiscFunction finite_difference_kernel_derivative(Complex q, int order, double h,
                                                 std::size_t degree = kDefaultDegree,
                                                 double r_max = 0.999);

/// H^2 norm squared by the Littlewood-Paley area integral.
double quadrature_hk_norm2(const DiscFunction& f, int radial_nodes, int angular_nodes);

}  // namespace poafd::oracle
