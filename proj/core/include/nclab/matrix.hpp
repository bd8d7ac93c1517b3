#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "nclab/errors.hpp"

namespace nclab {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

// Dense complex matrix, row-major. Everything at desk scale (dim <= 64 for
// algebra elements, a few thousand for vectorized operators), so no attempt
// at blocking or expression templates.
class CMatrix {
  public:
    CMatrix() = default;
    CMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}
    CMatrix(int rows, int cols, std::initializer_list<Complex> entries);

    static CMatrix identity(int n);
    static CMatrix zero(int n) { return CMatrix(n, n); }
    static CMatrix diag(const CVector& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return a_.empty(); }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    const std::vector<Complex>& data() const { return a_; }
    std::vector<Complex>& data() { return a_; }

    CMatrix adjoint() const;
    CMatrix transpose() const;
    CMatrix conj() const;

    CMatrix& operator+=(const CMatrix& b);
    CMatrix& operator-=(const CMatrix& b);
    CMatrix& operator*=(Complex s);

    friend CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
    friend CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
    friend CMatrix operator*(Complex s, CMatrix a) { return a *= s; }
    friend CMatrix operator*(CMatrix a, Complex s) { return a *= s; }
    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);

    CVector apply(const CVector& x) const;  // matrix-vector product

    double frobenius_norm() const;
    double max_abs() const;  // entrywise sup norm

    // Column-stacking of the rows (row-major flatten); the convention used
    // whenever a linear map on matrices is itself written as a matrix.
    CVector vec() const { return a_; }
    static CMatrix unvec(const CVector& v, int n);

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Complex> a_;
};

// Gaussian-elimination inverse with partial pivoting. Throws DomainError on
// (numerically) singular input.
CMatrix inverse(const CMatrix& a);

CMatrix matmul(const CMatrix& a, const CMatrix& b);

double max_abs_diff(const CMatrix& a, const CMatrix& b);

// ||x||_p on coordinates with positive weights: (sum_i w_i |x_i|^p)^{1/p},
// p = infinity gives max |x_i|.
double vector_pnorm(const CVector& x, const std::vector<double>& weights, double p);
double vector_pnorm(const CVector& x, double p);

}  // namespace nclab
