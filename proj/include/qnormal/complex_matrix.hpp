#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qnormal/errors.hpp"

namespace qnormal {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square matrix of complex doubles, row-major.
///
/// This is the value type for H, P, Q, observables and everything
/// derived from them. All entries are expected to stay finite; callers
/// that construct matrices from external input should run is_finite().
class ComplexMatrix {
public:
    ComplexMatrix() = default;

    explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
        : dim_(rows.size()), a_(rows.size() * rows.size()) {
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != dim_)
                throw DimensionMismatch("ComplexMatrix: ragged initializer");
            std::size_t j = 0;
            for (const auto& v : row) (*this)(i, j++) = v;
            ++i;
        }
    }

    static ComplexMatrix identity(std::size_t dim) {
        ComplexMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(const ComplexVector& d) {
        ComplexMatrix m(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t i, std::size_t j) { return a_[i * dim_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return a_[i * dim_ + j]; }

    const ComplexVector& data() const { return a_; }

    bool is_finite() const {
        for (const auto& v : a_)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix r(dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }

    ComplexMatrix& operator+=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
        return *this;
    }

    ComplexMatrix& operator-=(const ComplexMatrix& o) {
        check_same_dim(o);
        for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
        return *this;
    }

    ComplexMatrix& operator*=(Complex s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
        a.check_same_dim(b);
        const std::size_t n = a.dim_;
        ComplexMatrix r(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) {
                const Complex aik = a(i, k);
                if (aik == 0.0) continue;
                for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend ComplexVector operator*(const ComplexMatrix& a, const ComplexVector& x) {
        if (x.size() != a.dim_)
            throw DimensionMismatch("matrix-vector product: size mismatch");
        ComplexVector y(a.dim_);
        for (std::size_t i = 0; i < a.dim_; ++i) {
            Complex s = 0.0;
            for (std::size_t j = 0; j < a.dim_; ++j) s += a(i, j) * x[j];
            y[i] = s;
        }
        return y;
    }

private:
    void check_same_dim(const ComplexMatrix& o) const {
        if (o.dim_ != dim_) throw DimensionMismatch("matrix dimensions differ");
    }

    std::size_t dim_ = 0;
    ComplexVector a_;
};

inline double frobenius_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (const auto& v : m.data()) s += std::norm(v);
    return std::sqrt(s);
}

inline double one_norm(const ComplexMatrix& m) {
    double best = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < m.dim(); ++i) c += std::abs(m(i, j));
        if (c > best) best = c;
    }
    return best;
}

inline double max_abs(const ComplexMatrix& m) {
    double best = 0.0;
    for (const auto& v : m.data()) best = std::max(best, std::abs(v));
    return best;
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b - b * a;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a * b + b * a;
}

inline double vector_norm(const ComplexVector& x) {
    double s = 0.0;
    for (const auto& v : x) s += std::norm(v);
    return std::sqrt(s);
}

inline Complex dot(const ComplexVector& x, const ComplexVector& y) {
    if (x.size() != y.size()) throw DimensionMismatch("dot: size mismatch");
    Complex s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

inline bool is_finite(const ComplexVector& x) {
    for (const auto& v : x)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

}  // namespace qnormal
