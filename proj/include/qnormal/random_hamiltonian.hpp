#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

#include "qnormal/complex_matrix.hpp"
#include "qnormal/eig.hpp"
#include "qnormal/errors.hpp"
#include "qnormal/lu.hpp"

namespace qnormal {

/// Seeded instance source for the property suites and the CLI.
///
/// The derivation is pinned for cross-platform reproducibility: raw
/// mt19937_64 output mapped to [0,1) via the top 53 bits, Box-Muller for
/// Gaussian entries. Identical seeds produce bit-identical matrices.
struct RandomHamiltonianSpec {
    std::size_t dim = 4;
    std::uint64_t seed = 1;
    double re_lo = -1.0, re_hi = 1.0;
    double im_lo = -1.0, im_hi = 1.0;
    double min_separation = 0.1;
};

struct RandomHamiltonian {
    ComplexMatrix h;
    ComplexVector planted_eigenvalues;
    ComplexMatrix p;
    double kappa_p = 0.0;
};

inline constexpr const char* kRandomGeneratorId = "mt19937_64/top53/box-muller";

namespace detail {

class SeededSource {
public:
    explicit SeededSource(std::uint64_t seed) : rng_(seed) {}

    double uniform01() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    double gaussian() {
        const double u1 = uniform01();
        const double u2 = uniform01();
        return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace detail

inline RandomHamiltonian generate_random_hamiltonian(const RandomHamiltonianSpec& spec) {
    if (spec.dim == 0) throw ValidationError("random.dim must be positive");
    if (spec.re_hi < spec.re_lo || spec.im_hi < spec.im_lo)
        throw ValidationError("random: empty eigenvalue rectangle");
    const double diameter = std::hypot(spec.re_hi - spec.re_lo, spec.im_hi - spec.im_lo);
    if (spec.dim >= 2 && spec.min_separation > diameter)
        throw SpecInfeasible("random: min_separation exceeds rectangle diameter");

    detail::SeededSource src(spec.seed);

    ComplexVector lambda;
    lambda.reserve(spec.dim);
    const std::size_t max_draws = 2000 * spec.dim;
    std::size_t draws = 0;
    while (lambda.size() < spec.dim) {
        if (draws++ >= max_draws)
            throw SpecInfeasible("random: cannot place " + std::to_string(spec.dim) +
                                 " eigenvalues separated by " +
                                 std::to_string(spec.min_separation) + " in the rectangle");
        const double re = src.uniform(spec.re_lo, spec.re_hi);
        const double im = src.uniform(spec.im_lo, spec.im_hi);
        const Complex cand(re, im);
        bool ok = true;
        for (const Complex& prev : lambda)
            if (std::abs(cand - prev) < spec.min_separation) {
                ok = false;
                break;
            }
        if (ok) lambda.push_back(cand);
    }

    RandomHamiltonian out;
    out.planted_eigenvalues = lambda;
    for (int attempt = 0; attempt < 500; ++attempt) {
        ComplexMatrix p(spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i)
            for (std::size_t j = 0; j < spec.dim; ++j)
                p(i, j) = Complex(src.gaussian(), src.gaussian()) * 0.7071067811865476;
        double kappa;
        try {
            kappa = spectral_condition(p);
        } catch (const Singular&) {
            continue;
        }
        if (kappa > 1e4) continue;
        out.p = p;
        out.kappa_p = kappa;
        out.h = p * ComplexMatrix::diagonal(lambda) * inverse(p);
        return out;
    }
    throw SpecInfeasible("random: failed to draw a well-conditioned eigenvector basis");
}

}  // namespace qnormal
