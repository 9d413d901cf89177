#include "poafd/problem_solvers.hpp"

#include "poafd/error.hpp"

namespace poafd {

namespace {

BoundaryFunction accumulate(const std::vector<BoundaryFunction>& atoms, const std::vector<Complex>& coeffs,
                            std::size_t n, std::size_t degree)
{
    if (n > atoms.size()) {
        throw Error(ErrorCode::invalid_argument, "prefix longer than the expansion");
    }
    BoundaryFunction out(degree);
    for (std::size_t k = 0; k < n; ++k) {
        detail::subtract_scaled(out.coeffs(), -coeffs[k], atoms[k].coeffs());
    }
    return out;
}

}  // namespace

std::vector<BoundaryFunction> inverse_basis(const OrthoSystem& sys, double r_max)
{
    std::vector<BoundaryFunction> images;
    images.reserve(sys.size());
    for (std::size_t n = 0; n < sys.size(); ++n) {
        // L^{-1} E_n: the boundary counterpart of the normalized dictionary atom.
        BoundaryFunction v;
        if (const auto& atom = sys.atom(n)) {
            v = szego_boundary(*atom, sys.degree(), r_max);
            detail::scale(v.coeffs(), 1.0 / sys.candidate_norm(n));
        } else {
            v = apply_L_inverse(sys.dictionary(n));
        }
        const GsRecipe& recipe = sys.recipe(n);
        for (const auto& pass : recipe.passes) {
            for (std::size_t k = 0; k < pass.size(); ++k) {
                detail::subtract_scaled(v.coeffs(), pass[k], images[k].coeffs());
            }
        }
        detail::scale(v.coeffs(), 1.0 / recipe.norm);
        images.push_back(std::move(v));
    }
    return images;
}

BoundaryFunction InversionResult::inverse_prefix(std::size_t n) const
{
    return accumulate(atoms, expansion.coefficients, n, expansion.system.degree());
}

BoundaryFunction PseudoInverseResult::inverse_prefix(std::size_t n) const
{
    return accumulate(atoms, expansion.coefficients, n, projection.degree());
}

double PseudoInverseResult::approximation_error2(const BoundaryFunction& f, std::size_t n) const
{
    const std::size_t degree = std::max(f.degree(), projection.degree());
    BoundaryFunction diff = f.resized(degree);
    if (n > 0) {
        diff -= apply_L_inverse(reconstruct(expansion, n));
    }
    return diff.norm2();
}

ExpansionResult solve_expansion(const DiscFunction& f, const PoafdConfig& config)
{
    return poafd_expand(f, config);
}

InversionResult solve_inversion(const DiscFunction& f, const PoafdConfig& config)
{
    InversionResult out;
    out.expansion = poafd_expand(f, config);
    out.atoms = inverse_basis(out.expansion.system, config.grid.r_max);
    out.inverse = out.inverse_prefix(out.expansion.terms());
    return out;
}

PseudoInverseResult solve_pseudo_inverse(const BoundaryFunction& f, const PoafdConfig& config)
{
    PseudoInverseResult out;
    const BoundaryFunction padded = f.degree() < config.degree ? f.resized(config.degree) : f;
    // G(q) = <F, K_q> in L^2: the analytic part of F.
    out.projection = apply_L(padded);
    const auto [plus, minus] = plemelj_split(padded);
    out.defect = minus.norm();
    out.expansion.mode = config.mode;
    out.expansion.system = OrthoSystem(config.degree);

    if (out.projection.is_zero()) {
        out.projection = out.projection.resized(config.degree);
        out.expansion.residual_norms.push_back(0.0);
        out.inverse = BoundaryFunction(config.degree);
        return out;
    }
    out.expansion = poafd_expand(out.projection, config);
    out.projection = out.projection.resized(config.degree);
    out.atoms = inverse_basis(out.expansion.system, config.grid.r_max);
    out.inverse = out.inverse_prefix(out.expansion.terms());
    return out;
}

}  // namespace poafd
