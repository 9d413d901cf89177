#include "poafd/oracle.hpp"

#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Dense>

#include "poafd/error.hpp"

namespace poafd::oracle {

namespace {

// <K_a, K_b> for kernels truncated at degree N: sum_{k<=N} (conj(a) b)^k.
Complex truncated_kernel_inner(Complex a, Complex b, std::size_t degree)
{
    const Complex w = std::conj(a) * b;
    if (std::abs(1.0 - w) < 1e-300) {
        return static_cast<double>(degree + 1);
    }
    return (1.0 - std::pow(w, static_cast<double>(degree + 1))) / (1.0 - w);
}

Eigen::VectorXcd to_eigen(const DiscFunction& f)
{
    Eigen::VectorXcd v(static_cast<Eigen::Index>(f.size()));
    for (std::size_t k = 0; k < f.size(); ++k) {
        v(static_cast<Eigen::Index>(k)) = f[k];
    }
    return v;
}

}  // namespace

GramSystem gram_system(const DiscFunction& f, const std::vector<Complex>& params)
{
    GramSystem sys;
    const std::size_t n = params.size();
    sys.gram.assign(n, std::vector<Complex>(n));
    sys.rhs.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            sys.gram[i][j] = truncated_kernel_inner(params[j], params[i], f.degree());
        }
        sys.rhs[i] = evaluate(f, params[i]);
    }
    return sys;
}

Projection projection_least_squares(const DiscFunction& f, const std::vector<Complex>& params)
{
    const GramSystem gs = gram_system(f, params);
    const auto n = static_cast<Eigen::Index>(params.size());
    Eigen::MatrixXcd g(n, n);
    Eigen::VectorXcd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            g(i, j) = gs.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        rhs(i) = gs.rhs[static_cast<std::size_t>(i)];
    }

    Projection out;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(g, Eigen::EigenvaluesOnly);
    const double lmax = eig.eigenvalues().maxCoeff();
    const double lmin = eig.eigenvalues().minCoeff();
    out.condition = lmin > 0.0 ? lmax / lmin : std::numeric_limits<double>::infinity();
    if (!(out.condition <= kMaxGramCondition)) {
        throw Error(ErrorCode::ill_conditioned,
                    "Gram matrix condition estimate " + std::to_string(out.condition) + " exceeds 1e14");
    }

    Eigen::LLT<Eigen::MatrixXcd> llt(g);
    if (llt.info() != Eigen::Success) {
        g.diagonal().array() += 1e-12;
        llt.compute(g);
    }
    const Eigen::VectorXcd x = llt.solve(rhs);

    out.function = DiscFunction(f.degree());
    out.weights.resize(params.size());
    for (std::size_t j = 0; j < params.size(); ++j) {
        out.weights[j] = x(static_cast<Eigen::Index>(j));
        out.function += x(static_cast<Eigen::Index>(j)) * szego({params[j], 0}, f.degree(), 1.0 - 1e-15);
    }
    return out;
}

GreedyTrace exhaustive_greedy(const DiscFunction& f, const std::vector<Complex>& grid, std::size_t steps,
                              double eps_coincide, double delta_span, double r_max)
{
    const std::size_t degree = f.degree();
    const auto rows = static_cast<Eigen::Index>(f.size());
    const Eigen::VectorXcd target = to_eigen(f);

    GreedyTrace trace;
    trace.residuals.push_back(target.norm());
    std::vector<Eigen::VectorXcd> selected;  // normalized multiple kernels

    auto kernel_at = [&](Complex q) {
        int order = 0;
        for (const auto& p : trace.params) {
            if (std::abs(p.q - q) <= eps_coincide) {
                ++order;
            }
        }
        Eigen::VectorXcd k = to_eigen(szego({q, order}, degree, r_max));
        k /= k.norm();
        return std::pair{k, order};
    };

    for (std::size_t step = 0; step < steps; ++step) {
        const auto cols = static_cast<Eigen::Index>(selected.size() + 1);
        Eigen::MatrixXcd m(rows, cols);
        for (Eigen::Index c = 0; c + 1 < cols; ++c) {
            m.col(c) = selected[static_cast<std::size_t>(c)];
        }

        // Residual of F against the current selections.
        Eigen::VectorXcd residual = target;
        if (cols > 1) {
            const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m.leftCols(cols - 1));
            const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, cols - 1);
            residual -= q * (q.adjoint() * target);
        }

        std::optional<std::size_t> best;
        double best_obj = -1.0;
        int best_order = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const auto [k, order] = kernel_at(grid[i]);
            m.col(cols - 1) = k;
            const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
            const double diag = std::abs(qr.matrixQR()(cols - 1, cols - 1));
            if (diag * diag <= delta_span) {
                continue;
            }
            const Eigen::VectorXcd u = qr.householderQ() * Eigen::VectorXcd::Unit(rows, cols - 1);
            const double obj = std::abs(u.dot(residual));
            bool better = !best || obj > best_obj;
            if (best && obj == best_obj) {
                const Complex a = grid[i];
                const Complex b = grid[*best];
                better = std::abs(a) < std::abs(b) || (std::abs(a) == std::abs(b) && std::arg(a) < std::arg(b));
            }
            if (better) {
                best = i;
                best_obj = obj;
                best_order = order;
            }
        }
        if (!best) {
            break;
        }
        selected.push_back(kernel_at(grid[*best]).first);
        trace.params.push_back({grid[*best], best_order});
        trace.objectives.push_back(best_obj);

        const auto n = static_cast<Eigen::Index>(selected.size());
        Eigen::MatrixXcd s(rows, n);
        for (Eigen::Index c = 0; c < n; ++c) {
            s.col(c) = selected[static_cast<std::size_t>(c)];
        }
        const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(s);
        const Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(rows, n);
        trace.residuals.push_back((target - q * (q.adjoint() * target)).norm());
    }
    return trace;
}

DiscFunction finite_difference_kernel_derivative(Complex q, int order, double h, std::size_t degree, double r_max)
{
    if (order < 0) {
        throw Error(ErrorCode::invalid_argument, "derivative order must be >= 0");
    }
    if (order == 0) {
        return szego({q, 0}, degree, r_max);
    }
    if (!(h >= 1e-7 && h <= 1e-3)) {
        throw Error(ErrorCode::invalid_argument, "finite-difference step must lie in [1e-7, 1e-3]");
    }
    // conj(q + s) = conj(q) + s for real s, so stepping q along the real axis
    // differentiates along conj(q).
    DiscFunction out(degree);
    double binom = 1.0;
    for (int j = 0; j <= order; ++j) {
        const double offset = (0.5 * order - j) * h;
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        out += Complex(sign * binom, 0.0) * szego({q + offset, 0}, degree, r_max);
        binom = binom * (order - j) / (j + 1);
    }
    out *= Complex(1.0 / std::pow(h, order), 0.0);
    return out;
}

double quadrature_hk_norm2(const DiscFunction& f, int radial_nodes, int angular_nodes)
{
    return littlewood_paley_norm2(f, radial_nodes, angular_nodes);
}

}  // namespace poafd::oracle
