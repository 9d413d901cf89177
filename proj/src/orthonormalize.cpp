#include "poafd/orthonormalize.hpp"

#include <cmath>

#include "poafd/error.hpp"

namespace poafd {

Complex OrthoSystem::transfer(std::size_t i, std::size_t j) const
{
    const auto& row = transfer_.at(i);
    return j < row.size() ? row[j] : Complex{};
}

DiscFunction OrthoSystem::project(const DiscFunction& f) const
{
    DiscFunction out(degree_);
    for (const auto& b : basis_) {
        const Complex c = hk_inner(f, b);
        detail::subtract_scaled(out.coeffs(), -c, b.coeffs());
    }
    return out;
}

double OrthoSystem::orthonormality_error() const
{
    double worst = 0.0;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex g = hk_inner(basis_[i], basis_[j]);
            worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    }
    return worst;
}

std::size_t multiplicity(std::span<const KernelParam> params, Complex q, double eps_coincide)
{
    if (!(eps_coincide > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "eps_coincide must be positive");
    }
    std::size_t count = 1;
    for (const auto& p : params) {
        if (std::abs(p.q - q) <= eps_coincide) {
            ++count;
        }
    }
    return count;
}

KernelParam candidate_param(std::span<const KernelParam> params, Complex q, double eps_coincide)
{
    return {q, static_cast<int>(multiplicity(params, q, eps_coincide) - 1)};
}

DiscFunction candidate_kernel(std::span<const KernelParam> params, Complex q, double eps_coincide,
                              std::size_t degree, double r_max)
{
    return szego(candidate_param(params, q, eps_coincide), degree, r_max);
}

Remainder orthogonal_remainder(const OrthoSystem& sys, DiscFunction unit)
{
    Remainder out{std::move(unit), {}};
    auto v = out.vector.coeffs();
    const auto basis = sys.basis();
    const double start = out.vector.norm2();

    auto pass = [&] {
        std::vector<Complex> coeffs;
        coeffs.reserve(basis.size());
        for (const auto& b : basis) {
            const Complex c = hk_inner(out.vector, b);
            detail::subtract_scaled(v, c, b.coeffs());
            coeffs.push_back(c);
        }
        out.recipe.passes.push_back(std::move(coeffs));
    };

    if (!basis.empty()) {
        pass();
        if (out.vector.norm2() < kReorthogonalizeBelow * start) {
            pass();
        }
    }
    out.recipe.norm = out.vector.norm();
    return out;
}

std::pair<OrthoSystem, GsDiagnostics> append_candidate(OrthoSystem sys, DiscFunction candidate,
                                                       std::optional<KernelParam> atom, double delta_span)
{
    if (!(delta_span > 0.0)) {
        throw Error(ErrorCode::invalid_argument, "delta_span must be positive");
    }
    if (candidate.degree() != sys.degree_) {
        candidate = candidate.resized(sys.degree_);
    }
    const double cand_norm = candidate.norm();
    if (cand_norm == 0.0) {
        throw Error(ErrorCode::zero_input, "cannot orthonormalize a zero candidate");
    }

    DiscFunction unit = candidate;
    detail::scale(unit.coeffs(), 1.0 / cand_norm);

    Remainder rem = orthogonal_remainder(sys, unit);

    GsDiagnostics diag;
    diag.projection_coeffs.assign(sys.size(), Complex{});
    for (const auto& pass : rem.recipe.passes) {
        for (std::size_t k = 0; k < pass.size(); ++k) {
            diag.projection_coeffs[k] += cand_norm * pass[k];
        }
    }
    const double rel_defect = rem.recipe.norm * rem.recipe.norm;
    diag.defect = cand_norm * cand_norm * rel_defect;
    diag.accepted = rel_defect > delta_span;
    if (!diag.accepted) {
        return {std::move(sys), std::move(diag)};
    }

    DiscFunction b = std::move(rem.vector);
    detail::scale(b.coeffs(), 1.0 / rem.recipe.norm);

    std::vector<Complex> row;
    row.reserve(sys.size() + 1);
    for (const auto& prev : sys.basis_) {
        row.push_back(hk_inner(unit, prev));
    }
    row.push_back(hk_inner(unit, b));

    if (atom) {
        sys.params_.push_back(*atom);
    }
    sys.atoms_.push_back(atom);
    sys.basis_.push_back(std::move(b));
    sys.dictionary_.push_back(std::move(unit));
    sys.candidate_norms_.push_back(cand_norm);
    sys.transfer_.push_back(std::move(row));
    sys.recipes_.push_back(std::move(rem.recipe));
    return {std::move(sys), std::move(diag)};
}

std::pair<OrthoSystem, GsDiagnostics> extend(OrthoSystem sys, const KernelParam& atom, double delta_span,
                                             double r_max)
{
    DiscFunction candidate = szego(atom, sys.degree(), r_max);
    return append_candidate(std::move(sys), std::move(candidate), atom, delta_span);
}

std::pair<OrthoSystem, GsDiagnostics> extend(OrthoSystem sys, const DiscFunction& candidate,
                                             double delta_span)
{
    return append_candidate(std::move(sys), candidate, std::nullopt, delta_span);
}

}  // namespace poafd
