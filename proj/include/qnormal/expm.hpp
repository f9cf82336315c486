#pragma once

#include <array>
#include <cmath>
#include <cstddef>

#include "qnormal/complex_matrix.hpp"
#include "qnormal/eig.hpp"
#include "qnormal/errors.hpp"
#include "qnormal/lu.hpp"

namespace qnormal {

namespace detail {

// Pade approximant of order m for exp: numerator U (odd) and V (even),
// exp(A) ~ (V - U)^-1 (V + U).
template <std::size_t M>
inline ComplexMatrix pade_eval(const ComplexMatrix& a, const std::array<double, M + 1>& b) {
    const std::size_t n = a.dim();
    const ComplexMatrix a2 = a * a;
    ComplexMatrix even(n), odd(n);
    // Horner in a2: even = sum b[2k] a^{2k}, odd = a * sum b[2k+1] a^{2k}
    ComplexMatrix even_poly(n), odd_poly(n);
    for (std::size_t i = 0; i < n; ++i) {
        even_poly(i, i) = b[M % 2 == 0 ? M : M - 1];
        odd_poly(i, i) = b[M % 2 == 0 ? M - 1 : M];
    }
    for (std::size_t k = (M % 2 == 0 ? M : M - 1); k >= 2; k -= 2) {
        even_poly = even_poly * a2;
        for (std::size_t i = 0; i < n; ++i) even_poly(i, i) += b[k - 2];
    }
    for (std::size_t k = (M % 2 == 0 ? M - 1 : M); k >= 2; k -= 2) {
        odd_poly = odd_poly * a2;
        for (std::size_t i = 0; i < n; ++i) odd_poly(i, i) += b[k - 2];
    }
    even = even_poly;
    odd = a * odd_poly;
    ComplexMatrix p = even + odd;
    ComplexMatrix q = even - odd;
    return LuDecomposition(q).solve(p);
}

}  // namespace detail

/// Matrix exponential by scaling and squaring with diagonal Pade
/// approximants of order 3/5/7/9/13, order picked from the 1-norm.
inline ComplexMatrix expm(const ComplexMatrix& m) {
    if (!m.is_finite()) throw ValidationError("expm: input has non-finite entries");
    const std::size_t n = m.dim();
    if (n == 0) return m;
    const double nrm = one_norm(m);

    static constexpr std::array<double, 4> b3 = {120, 60, 12, 1};
    static constexpr std::array<double, 6> b5 = {30240, 15120, 3360, 420, 30, 1};
    static constexpr std::array<double, 8> b7 = {17297280, 8648640, 1995840, 277200,
                                                 25200, 1512, 56, 1};
    static constexpr std::array<double, 10> b9 = {17643225600., 8821612800., 2075673600.,
                                                  302702400., 30270240., 2162160.,
                                                  110880., 3960., 90., 1.};
    static constexpr std::array<double, 14> b13 = {
        64764752532480000., 32382376266240000., 7771770303897600., 1187353796428800.,
        129060195264000., 10559470521600., 670442572800., 33522128640.,
        1323241920., 40840800., 960960., 16380., 182., 1.};

    if (nrm <= 1.495585217958292e-2) return detail::pade_eval<3>(m, b3);
    if (nrm <= 2.539398330063230e-1) return detail::pade_eval<5>(m, b5);
    if (nrm <= 9.504178996162932e-1) return detail::pade_eval<7>(m, b7);
    if (nrm <= 2.097847961257068e0) return detail::pade_eval<9>(m, b9);

    const double theta13 = 5.371920351148152e0;
    int s = 0;
    if (nrm > theta13) s = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
    ComplexMatrix scaled = m;
    scaled *= Complex(std::ldexp(1.0, -s), 0.0);
    ComplexMatrix r = detail::pade_eval<13>(scaled, b13);
    for (int i = 0; i < s; ++i) r = r * r;
    return r;
}

/// P * diag(exp(s * lambda_i)) * P^-1 -- the spectral route to the
/// propagator, exact on the decomposition.
inline ComplexMatrix spectral_exp(const SpectralDecomposition& d, Complex s) {
    const std::size_t n = d.dim();
    ComplexMatrix scaled(n); // p * diag(exp(s lambda))
    for (std::size_t j = 0; j < n; ++j) {
        const Complex f = std::exp(s * d.eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) = d.p(i, j) * f;
    }
    return scaled * d.p_inv;
}

}  // namespace qnormal
