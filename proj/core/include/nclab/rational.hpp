#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

#include "nclab/errors.hpp"

namespace nclab {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Accepts "p/q", integers, and finite decimal strings ("0.25" -> 1/4).
Rational parse_rational(const std::string& text);

// Dense rational matrix, real entries, row-major.
class RMatrix {
  public:
    RMatrix() = default;
    RMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    static RMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rational& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const {
        return a_[static_cast<size_t>(i) * cols_ + j];
    }

    RMatrix& operator+=(const RMatrix& b);
    friend RMatrix operator+(RMatrix a, const RMatrix& b) { return a += b; }
    friend RMatrix operator*(const RMatrix& a, const RMatrix& b);
    friend RMatrix operator*(const Rational& s, RMatrix a);

    bool operator==(const RMatrix& b) const { return rows_ == b.rows_ && cols_ == b.cols_ && a_ == b.a_; }

    Rational max_abs() const;

  private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> a_;
};

}  // namespace nclab
