#pragma once

///
/// \file hardy_model.hpp
///
/// Coefficient-space model of the pair H = L^2(unit circle), H_K = H^2(D).
///
/// A function in the Hardy space H^2(D) is stored by its Taylor coefficients
/// c_0..c_N, a boundary function in L^2 of the circle by its Fourier
/// coefficients c_{-N}..c_N. Both inner products are then plain finite sums,
/// so the operator
///
///   (L f)(p) = <f, h_p>,   h_p(e^{it}) = 1 / (1 - conj(p) e^{it})
///
/// is exact: it keeps the nonnegative frequencies and annihilates the
/// negative ones. Its image carries the reproducing kernel
/// K_q(p) = 1 / (1 - conj(q) p), the Szego kernel.
///

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace poafd {

using Complex = std::complex<double>;

inline constexpr std::size_t kDefaultDegree = 256;
inline constexpr double kDefaultRMax = 0.95;

namespace detail {

// y -= a * x over the common prefix. Every Gram-Schmidt update in the library
// goes through this routine so that replaying an orthonormalization on a
// different representation reproduces identical floating point results.
inline void subtract_scaled(std::span<Complex> y, Complex a, std::span<const Complex> x)
{
    const std::size_t n = std::min(y.size(), x.size());
    for (std::size_t i = 0; i < n; ++i) {
        y[i] -= a * x[i];
    }
}

inline void scale(std::span<Complex> y, double s)
{
    for (auto& v : y) {
        v *= s;
    }
}

}  // namespace detail

/// Element of H^2(D) truncated to degree N: F(z) = sum_{k<=N} c_k z^k.
class DiscFunction {
public:
    DiscFunction() : coeffs_(1) {}
    explicit DiscFunction(std::size_t degree) : coeffs_(degree + 1) {}
    explicit DiscFunction(std::vector<Complex> coeffs);

    std::size_t degree() const noexcept { return coeffs_.size() - 1; }
    std::size_t size() const noexcept { return coeffs_.size(); }

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::span<Complex> coeffs() noexcept { return coeffs_; }
    const std::vector<Complex>& vector() const noexcept { return coeffs_; }

    Complex operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Complex{}; }
    Complex& operator[](std::size_t k) { return coeffs_[k]; }

    double norm2() const;
    double norm() const;
    bool is_zero() const;

    /// Copy truncated or zero-padded to `degree`.
    DiscFunction resized(std::size_t degree) const;

    DiscFunction& operator+=(const DiscFunction& other);
    DiscFunction& operator-=(const DiscFunction& other);
    DiscFunction& operator*=(Complex s);

    friend DiscFunction operator+(DiscFunction a, const DiscFunction& b) { return a += b; }
    friend DiscFunction operator-(DiscFunction a, const DiscFunction& b) { return a -= b; }
    friend DiscFunction operator*(Complex s, DiscFunction a) { return a *= s; }
    friend DiscFunction operator*(DiscFunction a, Complex s) { return a *= s; }

    bool operator==(const DiscFunction&) const = default;

private:
    std::vector<Complex> coeffs_;
};

/// Element of L^2 of the unit circle truncated to |k| <= N:
/// f(e^{it}) = sum_{k=-N}^{N} c_k e^{ikt}.
class BoundaryFunction {
public:
    BoundaryFunction() : coeffs_(1) {}
    explicit BoundaryFunction(std::size_t degree) : coeffs_(2 * degree + 1) {}
    /// `coeffs` holds c_{-N}..c_N and must have odd length.
    explicit BoundaryFunction(std::vector<Complex> coeffs);

    std::size_t degree() const noexcept { return coeffs_.size() / 2; }
    long min_k() const noexcept { return -static_cast<long>(degree()); }

    std::span<const Complex> coeffs() const noexcept { return coeffs_; }
    std::span<Complex> coeffs() noexcept { return coeffs_; }
    const std::vector<Complex>& vector() const noexcept { return coeffs_; }

    /// Coefficients c_0..c_N.
    std::span<const Complex> nonnegative() const noexcept { return std::span(coeffs_).subspan(degree()); }
    std::span<Complex> nonnegative() noexcept { return std::span(coeffs_).subspan(degree()); }

    /// c_k for any integer k; zero outside the stored band.
    Complex at(long k) const;
    Complex& operator[](long k);

    double norm2() const;
    double norm() const;
    bool is_zero() const;

    BoundaryFunction resized(std::size_t degree) const;

    BoundaryFunction& operator+=(const BoundaryFunction& other);
    BoundaryFunction& operator-=(const BoundaryFunction& other);
    BoundaryFunction& operator*=(Complex s);

    friend BoundaryFunction operator+(BoundaryFunction a, const BoundaryFunction& b) { return a += b; }
    friend BoundaryFunction operator-(BoundaryFunction a, const BoundaryFunction& b) { return a -= b; }
    friend BoundaryFunction operator*(Complex s, BoundaryFunction a) { return a *= s; }

    bool operator==(const BoundaryFunction&) const = default;

private:
    std::vector<Complex> coeffs_;
};

/// A point of the disc together with the derivative order of the kernel
/// attached to it (multiplicity minus one).
struct KernelParam {
    Complex q{};
    int order = 0;

    bool operator==(const KernelParam&) const = default;
};

/// Throws parameter_out_of_domain unless |q| <= r_max < 1 and order >= 0.
void validate(const KernelParam& param, double r_max = kDefaultRMax);

Complex hk_inner(const DiscFunction& a, const DiscFunction& b);
Complex l2_inner(const BoundaryFunction& f, const BoundaryFunction& g);

/// Szego kernel K_q, or for order m >= 1 its m-th derivative along conj(q):
/// c_k = k (k-1) ... (k-m+1) conj(q)^{k-m}.
DiscFunction szego(const KernelParam& param, std::size_t degree = kDefaultDegree,
                   double r_max = kDefaultRMax);

/// Boundary representative h_q (and its parameter derivatives); same
/// nonnegative coefficients as szego(), zero negative part.
BoundaryFunction szego_boundary(const KernelParam& param, std::size_t degree = kDefaultDegree,
                                double r_max = kDefaultRMax);

/// Squared H^2 norm of the degree-N truncated kernel K_q, in closed form.
double szego_norm2(Complex q, std::size_t degree);

/// F(p) by Horner's scheme; requires |p| < 1.
Complex evaluate(const DiscFunction& f, Complex p);

/// Horner evaluation without the domain check; for hot loops over grids
/// whose points are already known to lie in the disc.
Complex evaluate_unchecked(std::span<const Complex> coeffs, Complex p) noexcept;

/// L f: the Cauchy integral of boundary data, i.e. the nonnegative frequencies.
DiscFunction apply_L(const BoundaryFunction& f);

/// L^{-1} F: the unique preimage in N(L)^perp (the analytic lift f^+).
BoundaryFunction apply_L_inverse(const DiscFunction& f);

/// f = fplus + fminus with fplus in N(L)^perp (k >= 0) and fminus in N(L).
std::pair<BoundaryFunction, BoundaryFunction> plemelj_split(const BoundaryFunction& f);

/// |F(0)|^2 + 2 * integral over D of |F'(z)|^2 log(1/|z|) dA(z), with dA the
/// normalized area measure, by a tensor quadrature (trapezoid in angle,
/// Gauss-Legendre in radius after r = t^2). Node counts must be >= 16.
double littlewood_paley_norm2(const DiscFunction& f, int radial_nodes, int angular_nodes);

}  // namespace poafd
