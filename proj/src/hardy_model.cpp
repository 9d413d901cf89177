#include "poafd/hardy_model.hpp"

#include <cmath>
#include <memory>
#include <numbers>
#include <string>

#include <gsl/gsl_integration.h>

#include "poafd/error.hpp"

namespace poafd {

namespace {

double sum_abs2(std::span<const Complex> v)
{
    double s = 0.0;
    for (const auto& c : v) {
        s += std::norm(c);
    }
    return s;
}

void check_finite(std::span<const Complex> v, const char* what)
{
    for (const auto& c : v) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw Error(ErrorCode::malformed_input, std::string(what) + ": non-finite coefficient");
        }
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// DiscFunction

DiscFunction::DiscFunction(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.empty()) {
        throw Error(ErrorCode::malformed_input, "disc function needs at least one coefficient");
    }
    check_finite(coeffs_, "disc function");
}

double DiscFunction::norm2() const { return sum_abs2(coeffs_); }
double DiscFunction::norm() const { return std::sqrt(norm2()); }

bool DiscFunction::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

DiscFunction DiscFunction::resized(std::size_t degree) const
{
    DiscFunction out(degree);
    std::copy_n(coeffs_.begin(), std::min(coeffs_.size(), out.coeffs_.size()), out.coeffs_.begin());
    return out;
}

DiscFunction& DiscFunction::operator+=(const DiscFunction& other)
{
    if (other.size() > size()) {
        coeffs_.resize(other.size());
    }
    for (std::size_t k = 0; k < other.size(); ++k) {
        coeffs_[k] += other.coeffs_[k];
    }
    return *this;
}

DiscFunction& DiscFunction::operator-=(const DiscFunction& other)
{
    if (other.size() > size()) {
        coeffs_.resize(other.size());
    }
    for (std::size_t k = 0; k < other.size(); ++k) {
        coeffs_[k] -= other.coeffs_[k];
    }
    return *this;
}

DiscFunction& DiscFunction::operator*=(Complex s)
{
    for (auto& c : coeffs_) {
        c *= s;
    }
    return *this;
}

// ---------------------------------------------------------------------------
// BoundaryFunction

BoundaryFunction::BoundaryFunction(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs))
{
    if (coeffs_.size() % 2 == 0) {
        throw Error(ErrorCode::malformed_input,
                    "boundary function needs 2N+1 coefficients c_{-N}..c_N");
    }
    check_finite(coeffs_, "boundary function");
}

Complex BoundaryFunction::at(long k) const
{
    const long n = static_cast<long>(degree());
    if (k < -n || k > n) {
        return {};
    }
    return coeffs_[static_cast<std::size_t>(k + n)];
}

Complex& BoundaryFunction::operator[](long k)
{
    const long n = static_cast<long>(degree());
    if (k < -n || k > n) {
        throw Error(ErrorCode::invalid_argument, "frequency outside the stored band");
    }
    return coeffs_[static_cast<std::size_t>(k + n)];
}

double BoundaryFunction::norm2() const { return sum_abs2(coeffs_); }
double BoundaryFunction::norm() const { return std::sqrt(norm2()); }

bool BoundaryFunction::is_zero() const
{
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](Complex c) { return c == Complex{}; });
}

BoundaryFunction BoundaryFunction::resized(std::size_t degree) const
{
    BoundaryFunction out(degree);
    const long n = static_cast<long>(std::min(degree, this->degree()));
    for (long k = -n; k <= n; ++k) {
        out[k] = at(k);
    }
    return out;
}

BoundaryFunction& BoundaryFunction::operator+=(const BoundaryFunction& other)
{
    if (other.degree() > degree()) {
        *this = resized(other.degree());
    }
    const long n = static_cast<long>(other.degree());
    for (long k = -n; k <= n; ++k) {
        (*this)[k] += other.at(k);
    }
    return *this;
}

BoundaryFunction& BoundaryFunction::operator-=(const BoundaryFunction& other)
{
    if (other.degree() > degree()) {
        *this = resized(other.degree());
    }
    const long n = static_cast<long>(other.degree());
    for (long k = -n; k <= n; ++k) {
        (*this)[k] -= other.at(k);
    }
    return *this;
}

BoundaryFunction& BoundaryFunction::operator*=(Complex s)
{
    for (auto& c : coeffs_) {
        c *= s;
    }
    return *this;
}

// ---------------------------------------------------------------------------
// Kernels and inner products

void validate(const KernelParam& param, double r_max)
{
    if (!(r_max > 0.0 && r_max < 1.0)) {
        throw Error(ErrorCode::invalid_argument, "r_max must lie in (0, 1)");
    }
    if (param.order < 0) {
        throw Error(ErrorCode::parameter_out_of_domain, "kernel derivative order must be >= 0");
    }
    const double r = std::abs(param.q);
    if (!std::isfinite(r) || r > r_max * (1.0 + 1e-12)) {
        throw Error(ErrorCode::parameter_out_of_domain,
                    "kernel parameter |q| = " + std::to_string(r) + " exceeds r_max = " +
                        std::to_string(r_max));
    }
}

Complex hk_inner(const DiscFunction& a, const DiscFunction& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    const auto ca = a.coeffs();
    const auto cb = b.coeffs();
    Complex s{};
    for (std::size_t k = 0; k < n; ++k) {
        s += ca[k] * std::conj(cb[k]);
    }
    return s;
}

Complex l2_inner(const BoundaryFunction& f, const BoundaryFunction& g)
{
    const long n = static_cast<long>(std::min(f.degree(), g.degree()));
    Complex s{};
    for (long k = -n; k <= n; ++k) {
        s += f.at(k) * std::conj(g.at(k));
    }
    return s;
}

namespace {

void fill_kernel(std::span<Complex> out, const KernelParam& param)
{
    const Complex w = std::conj(param.q);
    const std::size_t m = static_cast<std::size_t>(param.order);
    Complex power{1.0, 0.0};  // w^{k-m}
    for (std::size_t k = m; k < out.size(); ++k) {
        double falling = 1.0;  // k (k-1) ... (k-m+1)
        for (std::size_t j = 0; j < m; ++j) {
            falling *= static_cast<double>(k - j);
        }
        out[k] = falling * power;
        power *= w;
    }
}

}  // namespace

DiscFunction szego(const KernelParam& param, std::size_t degree, double r_max)
{
    validate(param, r_max);
    DiscFunction out(degree);
    fill_kernel(out.coeffs(), param);
    return out;
}

BoundaryFunction szego_boundary(const KernelParam& param, std::size_t degree, double r_max)
{
    validate(param, r_max);
    BoundaryFunction out(degree);
    fill_kernel(out.nonnegative(), param);
    return out;
}

double szego_norm2(Complex q, std::size_t degree)
{
    const double r2 = std::norm(q);
    if (r2 == 0.0) {
        return 1.0;
    }
    return -std::expm1(static_cast<double>(degree + 1) * std::log(r2)) / (1.0 - r2);
}

Complex evaluate_unchecked(std::span<const Complex> coeffs, Complex p) noexcept
{
    Complex acc{};
    for (std::size_t k = coeffs.size(); k-- > 0;) {
        acc = acc * p + coeffs[k];
    }
    return acc;
}

Complex evaluate(const DiscFunction& f, Complex p)
{
    if (!(std::abs(p) < 1.0)) {
        throw Error(ErrorCode::parameter_out_of_domain, "evaluation point must lie in the open disc");
    }
    return evaluate_unchecked(f.coeffs(), p);
}

DiscFunction apply_L(const BoundaryFunction& f)
{
    const auto plus = f.nonnegative();
    return DiscFunction(std::vector<Complex>(plus.begin(), plus.end()));
}

BoundaryFunction apply_L_inverse(const DiscFunction& f)
{
    BoundaryFunction out(f.degree());
    std::copy(f.coeffs().begin(), f.coeffs().end(), out.nonnegative().begin());
    return out;
}

std::pair<BoundaryFunction, BoundaryFunction> plemelj_split(const BoundaryFunction& f)
{
    BoundaryFunction plus(f.degree());
    BoundaryFunction minus(f.degree());
    const long n = static_cast<long>(f.degree());
    for (long k = -n; k <= n; ++k) {
        (k >= 0 ? plus : minus)[k] = f.at(k);
    }
    return {std::move(plus), std::move(minus)};
}

double littlewood_paley_norm2(const DiscFunction& f, int radial_nodes, int angular_nodes)
{
    constexpr int kMinNodes = 16;
    if (radial_nodes < kMinNodes || angular_nodes < kMinNodes) {
        throw Error(ErrorCode::invalid_argument, "Littlewood-Paley quadrature needs at least 16 nodes per direction");
    }

    // Coefficients of F'.
    std::vector<Complex> deriv(std::max<std::size_t>(f.degree(), 1));
    for (std::size_t k = 1; k <= f.degree(); ++k) {
        deriv[k - 1] = static_cast<double>(k) * f[k];
    }

    // With r = t^2 the radial integrand r log(1/r) dr becomes -4 t^3 log(t) dt,
    // which Gauss-Legendre on (0, 1) handles without a special weight.
    using Table = std::unique_ptr<gsl_integration_glfixed_table, decltype(&gsl_integration_glfixed_table_free)>;
    Table table(gsl_integration_glfixed_table_alloc(static_cast<std::size_t>(radial_nodes)),
                &gsl_integration_glfixed_table_free);
    if (!table) {
        throw Error(ErrorCode::invalid_argument, "cannot allocate Gauss-Legendre table");
    }

    const double dtheta = 2.0 * std::numbers::pi / angular_nodes;
    double radial_sum = 0.0;
    for (int i = 0; i < radial_nodes; ++i) {
        double t = 0.0;
        double w = 0.0;
        gsl_integration_glfixed_point(0.0, 1.0, static_cast<std::size_t>(i), &t, &w, table.get());
        const double r = t * t;
        double ring = 0.0;  // (1 / 2pi) * integral over the circle of radius r
        for (int j = 0; j < angular_nodes; ++j) {
            const Complex z = std::polar(r, j * dtheta);
            ring += std::norm(evaluate_unchecked(deriv, z));
        }
        ring /= angular_nodes;
        radial_sum += w * ring * (-4.0 * t * t * t * std::log(t));
    }
    // dA = r dr dtheta / pi, so 2 * integral = 2 * (2pi / pi) * radial integral.
    return std::norm(f[0]) + 4.0 * radial_sum;
}

}  // namespace poafd
