#include "nclab/rational.hpp"

namespace nclab {

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ConfigError("parse_rational: empty string");
    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const std::string num = text.substr(0, slash);
        const std::string den = text.substr(slash + 1);
        try {
            return Rational(BigInt(num), BigInt(den));
        } catch (const std::exception&) {
            throw ConfigError("parse_rational: bad fraction '" + text + "'");
        }
    }
    const auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const size_t places = text.size() - dot - 1;
        bool neg = false;
        if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
            neg = digits[0] == '-';
            digits = digits.substr(1);
        }
        if (digits.empty()) throw ConfigError("parse_rational: bad decimal '" + text + "'");
        // strip leading zeros; cpp_int reads a leading 0 as an octal prefix
        size_t first = digits.find_first_not_of('0');
        digits = (first == std::string::npos) ? "0" : digits.substr(first);
        try {
            BigInt num(digits);
            BigInt den = 1;
            for (size_t i = 0; i < places; ++i) den *= 10;
            Rational r(num, den);
            return neg ? -r : r;
        } catch (const std::exception&) {
            throw ConfigError("parse_rational: bad decimal '" + text + "'");
        }
    }
    try {
        return Rational(BigInt(text));
    } catch (const std::exception&) {
        throw ConfigError("parse_rational: bad integer '" + text + "'");
    }
}

RMatrix RMatrix::identity(int n) {
    RMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RMatrix& RMatrix::operator+=(const RMatrix& b) {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw DimensionError("RMatrix add: shape mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += b.a_[k];
    return *this;
}

RMatrix operator*(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionError("RMatrix mul: inner dimensions differ");
    RMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

RMatrix operator*(const Rational& s, RMatrix a) {
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) a(i, j) *= s;
    return a;
}

Rational RMatrix::max_abs() const {
    Rational m = 0;
    for (const auto& v : a_) {
        Rational av = v < 0 ? Rational(-v) : v;
        if (av > m) m = av;
    }
    return m;
}

}  // namespace nclab
