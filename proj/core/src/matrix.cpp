#include "nclab/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nclab {

CMatrix::CMatrix(int rows, int cols, std::initializer_list<Complex> entries)
    : rows_(rows), cols_(cols), a_(entries) {
    if (a_.size() != static_cast<size_t>(rows) * cols)
        throw DimensionError("matrix literal size does not match shape");
}

CMatrix CMatrix::identity(int n) {
    CMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::diag(const CVector& d) {
    CMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

CMatrix CMatrix::adjoint() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

CMatrix CMatrix::transpose() const {
    CMatrix m(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

CMatrix CMatrix::conj() const {
    CMatrix m(rows_, cols_);
    for (size_t k = 0; k < a_.size(); ++k) m.a_[k] = std::conj(a_[k]);
    return m;
}

CMatrix& CMatrix::operator+=(const CMatrix& b) {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix add: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& b) {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("matrix sub: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= b.a_[k];
    return *this;
}

CMatrix& CMatrix::operator*=(Complex s) {
    for (auto& v : a_) v *= s;
    return *this;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) { return matmul(a, b); }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("matmul: inner dimensions differ");
    CMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

CVector CMatrix::apply(const CVector& x) const {
    if (static_cast<int>(x.size()) != cols_) throw DimensionError("matvec: size mismatch");
    CVector y(rows_, Complex(0.0));
    for (int i = 0; i < rows_; ++i) {
        Complex s = 0.0;
        for (int j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
        y[i] = s;
    }
    return y;
}

double CMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

CMatrix CMatrix::unvec(const CVector& v, int n) {
    if (static_cast<int>(v.size()) != n * n) throw DimensionError("unvec: size mismatch");
    CMatrix m(n, n);
    m.data() = v;
    return m;
}

CMatrix inverse(const CMatrix& a) {
    if (a.rows() != a.cols()) throw DimensionError("inverse: square matrix required");
    const int n = a.rows();
    CMatrix work = a;
    CMatrix inv = CMatrix::identity(n);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(work(col, col));
        for (int r = col + 1; r < n; ++r) {
            if (std::abs(work(r, col)) > best) {
                best = std::abs(work(r, col));
                piv = r;
            }
        }
        if (best < 1e-13) throw DomainError("inverse: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(work(piv, j), work(col, j));
                std::swap(inv(piv, j), inv(col, j));
            }
        }
        const Complex d = work(col, col);
        for (int j = 0; j < n; ++j) {
            work(col, j) /= d;
            inv(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            const Complex f = work(r, col);
            if (f == Complex(0.0)) continue;
            for (int j = 0; j < n; ++j) {
                work(r, j) -= f * work(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionError("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (size_t k = 0; k < a.data().size(); ++k)
        m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
}

double vector_pnorm(const CVector& x, const std::vector<double>& weights, double p) {
    if (x.size() != weights.size()) throw DimensionError("vector_pnorm: weight count mismatch");
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& v : x) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += weights[i] * std::pow(std::abs(x[i]), p);
    return std::pow(s, 1.0 / p);
}

double vector_pnorm(const CVector& x, double p) {
    return vector_pnorm(x, std::vector<double>(x.size(), 1.0), p);
}

}  // namespace nclab
