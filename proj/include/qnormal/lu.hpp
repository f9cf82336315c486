#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "qnormal/complex_matrix.hpp"
#include "qnormal/errors.hpp"

namespace qnormal {

/// LU factorization with partial pivoting, PA = LU stored packed.
class LuDecomposition {
public:
    explicit LuDecomposition(const ComplexMatrix& m) : lu_(m), piv_(m.dim()) {
        const std::size_t n = m.dim();
        const double pivot_floor =
            static_cast<double>(std::max<std::size_t>(n, 1)) *
            std::numeric_limits<double>::epsilon() * max_abs(m);
        for (std::size_t i = 0; i < n; ++i) piv_[i] = i;
        for (std::size_t k = 0; k < n; ++k) {
            std::size_t p = k;
            double best = std::abs(lu_(k, k));
            for (std::size_t i = k + 1; i < n; ++i) {
                const double v = std::abs(lu_(i, k));
                if (v > best) {
                    best = v;
                    p = i;
                }
            }
            if (best <= pivot_floor)
                throw Singular("LU: pivot below threshold at column " + std::to_string(k));
            if (p != k) {
                for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
                std::swap(piv_[k], piv_[p]);
            }
            const Complex d = lu_(k, k);
            for (std::size_t i = k + 1; i < n; ++i) {
                const Complex f = lu_(i, k) / d;
                lu_(i, k) = f;
                if (f == 0.0) continue;
                for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
            }
        }
    }

    ComplexVector solve(const ComplexVector& b) const {
        const std::size_t n = lu_.dim();
        if (b.size() != n) throw DimensionMismatch("LU solve: size mismatch");
        ComplexVector x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = b[piv_[i]];
        for (std::size_t i = 1; i < n; ++i) {
            Complex s = x[i];
            for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
            x[i] = s;
        }
        for (std::size_t ii = n; ii-- > 0;) {
            Complex s = x[ii];
            for (std::size_t j = ii + 1; j < n; ++j) s -= lu_(ii, j) * x[j];
            x[ii] = s / lu_(ii, ii);
        }
        return x;
    }

    /// Solves M X = B column by column.
    ComplexMatrix solve(const ComplexMatrix& b) const {
        const std::size_t n = lu_.dim();
        if (b.dim() != n) throw DimensionMismatch("LU solve: dimension mismatch");
        ComplexMatrix x(n);
        ComplexVector col(n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
            ComplexVector sol = solve(col);
            for (std::size_t i = 0; i < n; ++i) x(i, j) = sol[i];
        }
        return x;
    }

private:
    ComplexMatrix lu_;
    std::vector<std::size_t> piv_;
};

/// Matrix inverse via LU with partial pivoting. Throws Singular when a
/// pivot falls below n*eps*max|m|.
inline ComplexMatrix inverse(const ComplexMatrix& m) {
    return LuDecomposition(m).solve(ComplexMatrix::identity(m.dim()));
}

}  // namespace qnormal
