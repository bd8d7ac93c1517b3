#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "nclab/eig.hpp"
#include "nclab/matrix.hpp"

namespace nclab::opalg {

// Finite trace: tau(x) = sum_i weights[i] * x(i,i). With all weights equal
// to one this is the usual matrix trace. The trace is tracial
// (tau(xy) = tau(yx)) exactly when the weights are constant on the matrix
// blocks the elements actually mix; the function-space configurations used
// throughout (counting trace, or per-point weights on block-diagonal
// algebras) all satisfy that.
struct TraceContext {
    int dim = 1;
    std::vector<double> weights;  // empty means counting trace

    static TraceContext counting(int dim) { return TraceContext{dim, {}}; }
    static TraceContext weighted(std::vector<double> w);

    double weight(int i) const { return weights.empty() ? 1.0 : weights[i]; }
    bool operator==(const TraceContext& o) const;
};

// An element of the matrix algebra carrying its trace context.
struct AlgebraElement {
    TraceContext ctx;
    CMatrix mat;

    AlgebraElement() = default;
    AlgebraElement(TraceContext c, CMatrix m);

    int dim() const { return ctx.dim; }
    AlgebraElement adjoint() const { return {ctx, mat.adjoint()}; }

    AlgebraElement& operator+=(const AlgebraElement& b);
    AlgebraElement& operator-=(const AlgebraElement& b);
    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
    friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
    friend AlgebraElement operator*(Complex s, AlgebraElement a) {
        a.mat *= s;
        return a;
    }
};

void require_same_context(const AlgebraElement& a, const AlgebraElement& b);

Complex trace(const AlgebraElement& x);

struct ElementSequence {
    std::vector<AlgebraElement> items;

    explicit ElementSequence(std::vector<AlgebraElement> xs);
    size_t size() const { return items.size(); }
    const TraceContext& ctx() const { return items.front().ctx; }
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// p in [1, inf]; `weak` marks the weak-L_p quasi-norm.
struct PNorm {
    double p = 2.0;
    bool weak = false;

    static PNorm lp(double p) { return PNorm{p, false}; }
    static PNorm weak_lp(double p) { return PNorm{p, true}; }
};

enum class Side { row, column, rc };

// [lower, upper] enclosure; degenerate (lower == upper) whenever the value
// is computed exactly.
struct Interval {
    double lower = 0.0;
    double upper = 0.0;
    double width() const { return upper - lower; }
};

// tau(|x|^p)^{1/p}; p = inf gives the largest singular value.
double schatten_norm(const AlgebraElement& x, double p);
double schatten_norm(const AlgebraElement& x, const PNorm& p);

// sup_{lambda>0} lambda * tau(chi_(lambda,inf)(|x|))^{1/p}, evaluated at the
// finitely many jump points of the distribution function.
double weak_quasinorm(const AlgebraElement& x, double p);

// |x| = (x*x)^{1/2}
AlgebraElement modulus(const AlgebraElement& x);

// chi_(lo,hi](a) for self-adjoint a.
AlgebraElement spectral_projection(const AlgebraElement& a, double lo, double hi);

// smallest projection s with xs = x = sx, for positive x
AlgebraElement support_projection(const AlgebraElement& x);

// Row / column / rc square-function norms of a finite sequence.
//   row    = || (sum x_n x_n*)^{1/2} ||_p
//   column = || (sum x_n* x_n)^{1/2} ||_p
//   rc     = max(row, column)             for p >= 2
//   rc     = inf over decompositions x = y + z of row(y) + column(z),
//            reported as an enclosure     for p < 2
double rc_row_norm(const ElementSequence& xs, double p);
double rc_col_norm(const ElementSequence& xs, double p);
Interval rc_norm(const ElementSequence& xs, double p, Side side,
                 int dual_witnesses = 200, uint64_t seed = 20240901);

// Exact L_p mean over all sign patterns:
// (2^-N sum_eps ||sum eps_n x_n||_p^p)^{1/p}. N capped at 16.
double khintchine_mean(const ElementSequence& xs, double p);

// Standard positivity / self-adjointness probes used across modules.
bool is_hermitian(const CMatrix& a, double tol = 1e-9);
bool is_positive_semidefinite(const CMatrix& a, double tol = 1e-9);
double projection_defect(const CMatrix& p);  // max(||p^2-p||, ||p-p*||) entrywise

}  // namespace nclab::opalg
