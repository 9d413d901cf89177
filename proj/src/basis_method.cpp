#include "poafd/basis_method.hpp"

#include <cmath>
#include <string>

#include <Eigen/Dense>

#include "poafd/error.hpp"

namespace poafd {

BasisPlan::BasisPlan(std::vector<Complex> points, std::size_t degree, double eps_coincide, double r_max)
    : points_(std::move(points)), degree_(degree), r_max_(r_max)
{
    if (points_.empty()) {
        throw Error(ErrorCode::invalid_argument, "basis plan is empty");
    }
    if (!(eps_coincide > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "eps_coincide must be positive");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        validate(KernelParam{points_[i], 0}, r_max_);
        for (std::size_t j = 0; j < i; ++j) {
            if (std::abs(points_[i] - points_[j]) <= eps_coincide) {
                throw DegeneratePlanError(i, "plan parameter " + std::to_string(i) + " coincides with parameter " +
                                                 std::to_string(j));
            }
        }
    }
}

OrthoSystem basis_build(const BasisPlan& plan, double delta_span)
{
    OrthoSystem sys(plan.degree());
    for (std::size_t i = 0; i < plan.size(); ++i) {
        auto [next, diag] = extend(std::move(sys), KernelParam{plan.points()[i], 0}, delta_span, plan.r_max());
        if (!diag.accepted) {
            throw DegeneratePlanError(i, "plan kernel " + std::to_string(i) +
                                             " lies numerically in the span of its predecessors");
        }
        sys = std::move(next);
    }
    return sys;
}

DiscFunction basis_expand(const DiscFunction& f, const OrthoSystem& sys)
{
    return sys.project(f.resized(sys.degree()));
}

DiscFunction basis_expand(const DiscFunction& f, const BasisPlan& plan)
{
    return basis_expand(f, basis_build(plan));
}

double transfer_condition(const OrthoSystem& sys)
{
    const auto n = static_cast<Eigen::Index>(sys.size());
    if (n == 0) {
        return 1.0;
    }
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j <= i; ++j) {
            a(i, j) = sys.transfer(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    const Eigen::VectorXd sv = Eigen::JacobiSVD<Eigen::MatrixXcd>(a).singularValues();
    const double smin = sv(n - 1);
    return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
}

BoundaryFunction basis_invert(const DiscFunction& f, const OrthoSystem& sys, double r_max)
{
    const double cond = transfer_condition(sys);
    if (!(cond <= kMaxTransferCondition)) {
        throw Error(ErrorCode::ill_conditioned, "transfer matrix condition estimate " + std::to_string(cond) +
                                                    " exceeds 1e12");
    }
    const std::size_t n = sys.size();
    const DiscFunction g = f.resized(sys.degree());

    // Row vector x with x A = F_B, i.e. a back substitution on A^T.
    std::vector<Complex> x(n);
    for (std::size_t j = n; j-- > 0;) {
        Complex s = hk_inner(g, sys.basis(j));
        for (std::size_t i = j + 1; i < n; ++i) {
            s -= x[i] * sys.transfer(i, j);
        }
        x[j] = s / sys.transfer(j, j);
    }

    BoundaryFunction out(sys.degree());
    for (std::size_t i = 0; i < n; ++i) {
        BoundaryFunction t = sys.atom(i) ? szego_boundary(*sys.atom(i), sys.degree(), r_max)
                                         : apply_L_inverse(sys.dictionary(i));
        if (sys.atom(i)) {
            detail::scale(t.coeffs(), 1.0 / sys.candidate_norm(i));
        }
        detail::subtract_scaled(out.coeffs(), -x[i], t.coeffs());
    }
    return out;
}

BoundaryFunction basis_invert(const DiscFunction& f, const BasisPlan& plan)
{
    return basis_invert(f, basis_build(plan), plan.r_max());
}

BoundaryFunction basis_pseudo_inverse(const BoundaryFunction& f, const BasisPlan& plan)
{
    return basis_invert(apply_L(f), plan);
}

}  // namespace poafd
