#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "qnormal/complex_matrix.hpp"
#include "qnormal/errors.hpp"
#include "qnormal/lu.hpp"

namespace qnormal {

struct EigOptions {
    double tol_eig = 1e-10;   // relative reconstruction / identity tolerance
    double kappa_max = 1e8;   // defectiveness threshold on kappa(P)
    std::size_t max_iter = 0; // total QR iterations, 0 = 30*dim
};

/// Result of diagonalizing H = P D P^{-1}.
///
/// Eigenvalues are sorted by descending imaginary part, ties by ascending
/// real part, then by pre-sort index. Each eigenvector column has unit
/// Euclidean norm with its largest-magnitude entry real and positive, so
/// the decomposition (and any metric built from it) is reproducible.
struct SpectralDecomposition {
    ComplexVector eigenvalues;
    ComplexMatrix p;
    ComplexMatrix p_inv;
    double kappa = 0.0;            // spectral condition number of p
    bool degenerate_warning = false; // some |l_i - l_j| < 1e-8 * |H|

    std::size_t dim() const { return eigenvalues.size(); }
};

namespace detail {

// Diagonal similarity scaling with powers of 2 (exact in floating point).
// Returns the scale vector d such that the balanced matrix is D^-1 A D;
// eigenvectors of A are recovered as D * (eigenvectors of balanced A).
inline std::vector<double> balance(ComplexMatrix& a) {
    const std::size_t n = a.dim();
    std::vector<double> scale(n, 1.0);
    constexpr double radix = 2.0;
    constexpr double sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double c = 0.0, r = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                c += std::abs(a(j, i));
                r += std::abs(a(i, j));
            }
            if (c == 0.0 || r == 0.0) continue;
            double g = r / radix;
            double f = 1.0;
            const double s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < 0.95 * s) {
                done = false;
                const double ginv = 1.0 / f;
                scale[i] *= f;
                for (std::size_t j = 0; j < n; ++j) a(i, j) *= ginv;
                for (std::size_t j = 0; j < n; ++j) a(j, i) *= f;
            }
        }
    }
    return scale;
}

// Householder reduction to upper Hessenberg form, accumulating the
// unitary similarity V so that A_in = V * A_out * V^dag.
inline void hessenberg_reduce(ComplexMatrix& a, ComplexMatrix& v) {
    const std::size_t n = a.dim();
    v = ComplexMatrix::identity(n);
    if (n < 3) return;
    ComplexVector hv(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1; // length of the column tail
        double xnorm = 0.0;
        for (std::size_t i = 0; i < m; ++i) xnorm += std::norm(a(k + 1 + i, k));
        xnorm = std::sqrt(xnorm);
        if (xnorm == 0.0) continue;
        const Complex x0 = a(k + 1, k);
        const Complex phase = (x0 == 0.0) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        const Complex alpha = -phase * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) {
            hv[i] = a(k + 1 + i, k);
            if (i == 0) hv[i] -= alpha;
            vnorm2 += std::norm(hv[i]);
        }
        if (vnorm2 == 0.0) continue;
        const double beta = 2.0 / vnorm2;

        // left: rows k+1..n-1 of columns k..n-1
        for (std::size_t j = k; j < n; ++j) {
            Complex s = 0.0;
            for (std::size_t i = 0; i < m; ++i) s += std::conj(hv[i]) * a(k + 1 + i, j);
            s *= beta;
            for (std::size_t i = 0; i < m; ++i) a(k + 1 + i, j) -= hv[i] * s;
        }
        // right: columns k+1..n-1 of all rows
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += a(i, k + 1 + j) * hv[j];
            s *= beta;
            for (std::size_t j = 0; j < m; ++j) a(i, k + 1 + j) -= s * std::conj(hv[j]);
        }
        // accumulate into v
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = 0.0;
            for (std::size_t j = 0; j < m; ++j) s += v(i, k + 1 + j) * hv[j];
            s *= beta;
            for (std::size_t j = 0; j < m; ++j) v(i, k + 1 + j) -= s * std::conj(hv[j]);
        }
        a(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) a(i, k) = 0.0;
    }
}

struct GivensRotation {
    double c;  // real cosine
    Complex s; // complex sine
};

// Rotation G with G * (a, b)^T = (r, 0)^T, G = [[c, s], [-conj(s), c]].
inline GivensRotation make_givens(Complex a, Complex b) {
    const double aa = std::abs(a), ab = std::abs(b);
    if (ab == 0.0) return {1.0, Complex(0.0, 0.0)};
    if (aa == 0.0) return {0.0, std::conj(b) / ab};
    const double r = std::hypot(aa, ab);
    const Complex phase = a / aa;
    return {aa / r, phase * std::conj(b) / r};
}

// Shifted QR iteration on an upper Hessenberg matrix, accumulating the
// Schur basis z so that on return h is upper triangular and
// h_in = z * h_out * z^dag. Wilkinson shift from the trailing 2x2 of the
// active block, exceptional shift every 10 stalled iterations.
inline void schur_triangularize(ComplexMatrix& h, ComplexMatrix& z, std::size_t max_iter) {
    const std::size_t n = h.dim();
    if (n < 2) return;
    const double eps = std::numeric_limits<double>::epsilon();
    const double hnorm = frobenius_norm(h);
    std::size_t total = 0;
    std::size_t m = n - 1;
    std::size_t stalled = 0;
    std::vector<GivensRotation> rot(n);

    while (true) {
        // deflate fully converged 1x1 blocks at the bottom
        std::size_t l = m;
        while (l > 0) {
            double tst = std::abs(h(l - 1, l - 1)) + std::abs(h(l, l));
            if (tst == 0.0) tst = hnorm;
            if (std::abs(h(l, l - 1)) <= eps * tst) {
                h(l, l - 1) = 0.0;
                break;
            }
            --l;
        }
        if (l == m) {
            if (m == 0) break;
            --m;
            stalled = 0;
            continue;
        }

        if (total >= max_iter)
            throw NonConvergence("eig: QR iteration cap (" + std::to_string(max_iter) +
                                 ") reached with unconverged block");
        ++total;
        ++stalled;

        // shift
        Complex mu;
        if (stalled % 10 == 0) {
            mu = h(m, m) + 0.75 * std::abs(h(m, m - 1));
        } else {
            const Complex a = h(m - 1, m - 1), b = h(m - 1, m);
            const Complex c = h(m, m - 1), d = h(m, m);
            const Complex tr = a + d;
            const Complex disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
            const Complex r1 = 0.5 * (tr + disc);
            const Complex r2 = 0.5 * (tr - disc);
            mu = (std::abs(r1 - d) < std::abs(r2 - d)) ? r1 : r2;
        }

        for (std::size_t i = l; i <= m; ++i) h(i, i) -= mu;

        // QR sweep: left rotations make rows l..m upper triangular
        for (std::size_t k = l; k < m; ++k) {
            rot[k] = make_givens(h(k, k), h(k + 1, k));
            const double c = rot[k].c;
            const Complex s = rot[k].s;
            for (std::size_t j = k; j < n; ++j) {
                const Complex t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = c * t1 + s * t2;
                h(k + 1, j) = -std::conj(s) * t1 + c * t2;
            }
        }
        // right multiplication by G^dag restores Hessenberg form
        for (std::size_t k = l; k < m; ++k) {
            const double c = rot[k].c;
            const Complex s = rot[k].s;
            const std::size_t top = std::min(k + 2, n);
            for (std::size_t i = 0; i < top; ++i) {
                const Complex t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = c * t1 + std::conj(s) * t2;
                h(i, k + 1) = -s * t1 + c * t2;
            }
            for (std::size_t i = 0; i < n; ++i) {
                const Complex t1 = z(i, k), t2 = z(i, k + 1);
                z(i, k) = c * t1 + std::conj(s) * t2;
                z(i, k + 1) = -s * t1 + c * t2;
            }
        }
        for (std::size_t i = l; i <= m; ++i) h(i, i) += mu;
    }
    // clean below the diagonal
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j + 1 <= i && j < n; ++j)
            if (i > j) h(i, j) = 0.0;
}

// Eigenvectors of an upper triangular matrix by back-substitution.
// Column k of the result is the eigenvector for t(k, k).
inline ComplexMatrix triangular_eigenvectors(const ComplexMatrix& t) {
    const std::size_t n = t.dim();
    const double eps = std::numeric_limits<double>::epsilon();
    const double tnorm = frobenius_norm(t);
    const double floor_d = eps * (tnorm > 0.0 ? tnorm : 1.0);
    ComplexMatrix y(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex lambda = t(k, k);
        y(k, k) = 1.0;
        for (std::size_t ii = k; ii-- > 0;) {
            Complex s = 0.0;
            for (std::size_t j = ii + 1; j <= k; ++j) s += t(ii, j) * y(j, k);
            Complex d = t(ii, ii) - lambda;
            if (std::abs(d) < floor_d) d = floor_d; // near-defective: keep finite
            y(ii, k) = -s / d;
        }
    }
    return y;
}

// Dominant eigenvalue of the hermitian Gram matrix m^dag m, computed
// through the same Schur iteration; sqrt gives the spectral norm.
inline double spectral_norm(const ComplexMatrix& m, std::size_t max_iter_mult = 60) {
    const std::size_t n = m.dim();
    if (n == 0) return 0.0;
    ComplexMatrix g = m.adjoint() * m;
    ComplexMatrix v;
    std::vector<double> scale = balance(g);
    hessenberg_reduce(g, v);
    schur_triangularize(g, v, max_iter_mult * std::max<std::size_t>(n, 1));
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) top = std::max(top, g(i, i).real());
    return std::sqrt(std::max(top, 0.0));
}

}  // namespace detail

/// kappa_2(m) = sigma_max(m) * sigma_max(m^-1). Throws Singular when m
/// has no usable inverse.
inline double spectral_condition(const ComplexMatrix& m) {
    const ComplexMatrix minv = inverse(m);
    return detail::spectral_norm(m) * detail::spectral_norm(minv);
}

/// Diagonalizes a general complex square matrix: balance, Householder
/// reduction to Hessenberg, shifted QR to triangular Schur form,
/// eigenvectors by back-substitution, then normalization, phase fix and
/// the deterministic sort.
inline SpectralDecomposition eig(const ComplexMatrix& h, const EigOptions& opts = {}) {
    const std::size_t n = h.dim();
    if (n == 0) throw DimensionMismatch("eig: empty matrix");
    if (!h.is_finite()) throw ValidationError("eig: input has non-finite entries");

    const std::size_t max_iter = opts.max_iter ? opts.max_iter : 30 * n;
    const double hnorm = frobenius_norm(h);

    ComplexMatrix t = h;
    std::vector<double> scale = detail::balance(t);
    ComplexMatrix z;
    detail::hessenberg_reduce(t, z);
    detail::schur_triangularize(t, z, max_iter);
    const ComplexMatrix y = detail::triangular_eigenvectors(t);

    // map back to the original basis: x = D_scale * Z * y
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    ComplexVector lambda(n);
    for (std::size_t k = 0; k < n; ++k) lambda[k] = t(k, k);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (lambda[a].imag() != lambda[b].imag()) return lambda[a].imag() > lambda[b].imag();
        return lambda[a].real() < lambda[b].real();
    });

    SpectralDecomposition d;
    d.eigenvalues.resize(n);
    d.p = ComplexMatrix(n);
    ComplexVector x(n);
    for (std::size_t out = 0; out < n; ++out) {
        const std::size_t k = order[out];
        d.eigenvalues[out] = lambda[k];
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = 0.0;
            for (std::size_t j = 0; j <= k; ++j) s += z(i, j) * y(j, k);
            x[i] = scale[i] * s;
        }
        double nrm = vector_norm(x);
        if (nrm == 0.0) { x[out] = 1.0; nrm = 1.0; } // degenerate fallback
        std::size_t imax = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double m = std::abs(x[i]);
            if (m > best) { best = m; imax = i; }
        }
        const Complex piv = x[imax];
        const Complex phase = std::conj(piv) / std::abs(piv);
        for (std::size_t i = 0; i < n; ++i) d.p(i, out) = x[i] * (phase / nrm);
        d.p(imax, out) = std::abs(piv) / nrm; // exactly real positive
    }

    try {
        d.p_inv = inverse(d.p);
    } catch (const Singular&) {
        throw NonDiagonalizable("eig: eigenvector matrix numerically singular (defective input)");
    }
    d.kappa = detail::spectral_norm(d.p) * detail::spectral_norm(d.p_inv);
    if (!(d.kappa <= opts.kappa_max))
        throw NonDiagonalizable("eig: kappa(P) = " + std::to_string(d.kappa) +
                                " exceeds kappa_max = " + std::to_string(opts.kappa_max));

    // invariant checks on the returned value
    ComplexMatrix recon = h * d.p;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) recon(i, j) -= d.p(i, j) * d.eigenvalues[j];
    if (frobenius_norm(recon) > opts.tol_eig * (hnorm > 0.0 ? hnorm : 1.0))
        throw NonConvergence("eig: reconstruction residual exceeds tol_eig * |H|");
    ComplexMatrix idres = d.p * d.p_inv;
    for (std::size_t i = 0; i < n; ++i) idres(i, i) -= 1.0;
    if (frobenius_norm(idres) > opts.tol_eig * std::max(1.0, d.kappa * 1e-4))
        throw NonConvergence("eig: p * p_inv deviates from identity beyond tol_eig");

    double min_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            min_gap = std::min(min_gap, std::abs(d.eigenvalues[i] - d.eigenvalues[j]));
    d.degenerate_warning = (n > 1) && (min_gap < 1e-8 * hnorm);
    return d;
}

}  // namespace qnormal
