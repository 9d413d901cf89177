#pragma once

// Random test inputs shared by the verification suite and the tests.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "poafd/hardy_model.hpp"

namespace poafd::sampling {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kDefaultSeed = 20240917;

/// Uniform point of the disc |q| <= radius.
inline Complex random_point(Rng& rng, double radius)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double r = radius * std::sqrt(u(rng));
    return std::polar(r, 2.0 * std::numbers::pi * u(rng));
}

inline Complex random_complex(Rng& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    return {g(rng), g(rng)};
}

/// Gaussian coefficients with geometric decay c_k ~ decay^k, degree N.
inline DiscFunction random_disc_function(Rng& rng, std::size_t degree, double decay = 0.9)
{
    DiscFunction f(degree);
    double scale = 1.0;
    for (std::size_t k = 0; k <= degree; ++k) {
        f[k] = scale * random_complex(rng);
        scale *= decay;
    }
    return f;
}

/// `count` points with |q| <= radius and pairwise distance >= separation.
inline std::vector<Complex> separated_points(Rng& rng, std::size_t count, double radius, double separation)
{
    std::vector<Complex> pts;
    while (pts.size() < count) {
        const Complex q = random_point(rng, radius);
        bool ok = true;
        for (const auto& p : pts) {
            ok = ok && std::abs(p - q) >= separation;
        }
        if (ok) {
            pts.push_back(q);
        }
    }
    return pts;
}

/// F = sum_j c_j E_{q_j} with unit-norm kernels E_q = K_q / ||K_q|| and
/// sum_j |c_j| = total. Returned together with its points and weights.
struct Molecule {
    DiscFunction function;
    std::vector<Complex> points;
    std::vector<Complex> weights;
    double total = 0.0;
};

inline Molecule normalized_kernel_sum(const std::vector<Complex>& points, const std::vector<Complex>& weights,
                                      std::size_t degree)
{
    Molecule m{DiscFunction(degree), points, weights, 0.0};
    for (std::size_t j = 0; j < points.size(); ++j) {
        DiscFunction k = szego({points[j], 0}, degree);
        k *= Complex(1.0 / k.norm(), 0.0);
        m.function += weights[j] * k;
        m.total += std::abs(weights[j]);
    }
    return m;
}

inline Molecule random_molecule(Rng& rng, std::size_t atoms, double radius, double total,
                                std::size_t degree = kDefaultDegree)
{
    std::vector<Complex> points;
    std::vector<Complex> weights;
    double sum = 0.0;
    for (std::size_t j = 0; j < atoms; ++j) {
        points.push_back(random_point(rng, radius));
        weights.push_back(random_complex(rng));
        sum += std::abs(weights.back());
    }
    for (auto& w : weights) {
        w *= total / sum;
    }
    return normalized_kernel_sum(points, weights, degree);
}

}  // namespace poafd::sampling
