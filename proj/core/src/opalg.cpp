#include "nclab/opalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace nclab::opalg {

TraceContext TraceContext::weighted(std::vector<double> w) {
    TraceContext c;
    c.dim = static_cast<int>(w.size());
    for (double v : w)
        if (!(v > 0.0)) throw DomainError("TraceContext: weights must be positive");
    c.weights = std::move(w);
    return c;
}

bool TraceContext::operator==(const TraceContext& o) const {
    if (dim != o.dim) return false;
    for (int i = 0; i < dim; ++i)
        if (weight(i) != o.weight(i)) return false;
    return true;
}

AlgebraElement::AlgebraElement(TraceContext c, CMatrix m) : ctx(std::move(c)), mat(std::move(m)) {
    if (mat.rows() != ctx.dim || mat.cols() != ctx.dim)
        throw DimensionError("AlgebraElement: matrix shape does not match context dim");
    if (!ctx.weights.empty() && static_cast<int>(ctx.weights.size()) != ctx.dim)
        throw DimensionError("AlgebraElement: weight count does not match context dim");
}

void require_same_context(const AlgebraElement& a, const AlgebraElement& b) {
    if (!(a.ctx == b.ctx)) throw DimensionError("algebra elements live in different contexts");
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& b) {
    require_same_context(*this, b);
    mat += b.mat;
    return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& b) {
    require_same_context(*this, b);
    mat -= b.mat;
    return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
    require_same_context(a, b);
    return {a.ctx, a.mat * b.mat};
}

Complex trace(const AlgebraElement& x) {
    Complex s = 0.0;
    for (int i = 0; i < x.dim(); ++i) s += x.ctx.weight(i) * x.mat(i, i);
    return s;
}

ElementSequence::ElementSequence(std::vector<AlgebraElement> xs) : items(std::move(xs)) {
    if (items.empty()) throw DomainError("ElementSequence: empty sequence");
    for (const auto& x : items) require_same_context(items.front(), x);
}

namespace {

// Spectral data of a positive element seen through the trace: singular-type
// values sigma_j with trace coefficients c_j = sum_i w_i |V_ij|^2, so that
// tau(f(a)) = sum_j c_j f(sigma_j).
struct TraceSpectrum {
    std::vector<double> sigma;
    std::vector<double> coeff;
};

TraceSpectrum modulus_spectrum(const AlgebraElement& x) {
    const EigResult e = hermitian_eig(x.mat.adjoint() * x.mat);
    const int n = x.dim();
    TraceSpectrum s;
    s.sigma.resize(n);
    s.coeff.resize(n);
    for (int j = 0; j < n; ++j) {
        s.sigma[j] = std::sqrt(std::max(0.0, e.values[j]));
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += x.ctx.weight(i) * std::norm(e.vectors(i, j));
        s.coeff[j] = c;
    }
    return s;
}

double hermitian_psd_pnorm(const AlgebraElement& s, double p) {
    // ||s^{1/2}||_p for positive s, through one eigendecomposition
    const EigResult e = hermitian_eig(s.mat);
    const int n = s.dim();
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : e.values) m = std::max(m, std::sqrt(std::max(0.0, v)));
        return m;
    }
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
        double c = 0.0;
        for (int i = 0; i < n; ++i) c += s.ctx.weight(i) * std::norm(e.vectors(i, j));
        acc += c * std::pow(std::max(0.0, e.values[j]), p / 2.0);
    }
    return std::pow(acc, 1.0 / p);
}

}  // namespace

double schatten_norm(const AlgebraElement& x, double p) {
    if (!(p >= 1.0)) throw DomainError("schatten_norm: p must lie in [1, inf]");
    const TraceSpectrum s = modulus_spectrum(x);
    if (std::isinf(p)) {
        double m = 0.0;
        for (double v : s.sigma) m = std::max(m, v);
        return m;
    }
    double acc = 0.0;
    for (size_t j = 0; j < s.sigma.size(); ++j) acc += s.coeff[j] * std::pow(s.sigma[j], p);
    return std::pow(acc, 1.0 / p);
}

double schatten_norm(const AlgebraElement& x, const PNorm& p) {
    return p.weak ? weak_quasinorm(x, p.p) : schatten_norm(x, p.p);
}

double weak_quasinorm(const AlgebraElement& x, double p) {
    if (!(p >= 1.0) || std::isinf(p))
        throw DomainError("weak_quasinorm: finite p >= 1 required");
    TraceSpectrum s = modulus_spectrum(x);
    // the distribution function jumps exactly at the singular values; the
    // supremum over lambda is attained approaching each jump from below
    std::vector<size_t> order(s.sigma.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return s.sigma[a] > s.sigma[b]; });
    double best = 0.0;
    double mass = 0.0;
    const double scale = s.sigma.empty() ? 0.0 : *std::max_element(s.sigma.begin(), s.sigma.end());
    const double tie = 1e-12 * std::max(scale, 1.0);
    size_t k = 0;
    while (k < order.size()) {
        const double sig = s.sigma[order[k]];
        if (sig <= tie) break;  // zero singular values never contribute
        while (k < order.size() && s.sigma[order[k]] >= sig - tie) {
            mass += s.coeff[order[k]];
            ++k;
        }
        best = std::max(best, sig * std::pow(mass, 1.0 / p));
    }
    return best;
}

AlgebraElement modulus(const AlgebraElement& x) { return {x.ctx, modulus_matrix(x.mat)}; }

AlgebraElement spectral_projection(const AlgebraElement& a, double lo, double hi) {
    const double scale = std::max(a.mat.max_abs(), 1.0);
    if (!is_hermitian(a.mat, 1e-8 * scale))
        throw DomainError("spectral_projection: self-adjoint input required");
    const double slack = 1e-9 * scale;
    return {a.ctx, eig_interval_projection(a.mat, lo, hi, slack)};
}

AlgebraElement support_projection(const AlgebraElement& x) {
    const EigResult e = hermitian_eig(x.mat);
    double top = 0.0;
    for (double v : e.values) top = std::max(top, std::abs(v));
    const double cut = 1e-9 * std::max(top, 1e-300);
    if (!e.values.empty() && e.values.front() < -cut)
        throw DomainError("support_projection: input has negative spectrum");
    return {x.ctx, eig_interval_projection(x.mat, cut, top + 1.0, 0.0)};
}

double rc_row_norm(const ElementSequence& xs, double p) {
    const int n = xs.ctx().dim;
    AlgebraElement s{xs.ctx(), CMatrix(n, n)};
    for (const auto& x : xs.items) s.mat += x.mat * x.mat.adjoint();
    return hermitian_psd_pnorm(s, p);
}

double rc_col_norm(const ElementSequence& xs, double p) {
    const int n = xs.ctx().dim;
    AlgebraElement s{xs.ctx(), CMatrix(n, n)};
    for (const auto& x : xs.items) s.mat += x.mat.adjoint() * x.mat;
    return hermitian_psd_pnorm(s, p);
}

namespace {

double split_objective(const ElementSequence& xs, const std::vector<double>& t, double p) {
    const int n = xs.ctx().dim;
    CMatrix row_acc(n, n), col_acc(n, n);
    for (size_t k = 0; k < xs.items.size(); ++k) {
        const CMatrix y = (1.0 - t[k]) * xs.items[k].mat;
        const CMatrix z = t[k] * xs.items[k].mat;
        row_acc += y * y.adjoint();
        col_acc += z.adjoint() * z;
    }
    return hermitian_psd_pnorm({xs.ctx(), row_acc}, p) +
           hermitian_psd_pnorm({xs.ctx(), col_acc}, p);
}

// Coordinate descent on scalar split fractions t_n in [0,1]. The objective
// is convex in t, so golden-section per coordinate settles each 1-d slice.
double refine_split(const ElementSequence& xs, std::vector<double> t, double p) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double best = split_objective(xs, t, p);
    for (int pass = 0; pass < 4; ++pass) {
        for (size_t k = 0; k < t.size(); ++k) {
            double lo = 0.0, hi = 1.0;
            double m1 = hi - gr * (hi - lo), m2 = lo + gr * (hi - lo);
            auto eval = [&](double v) {
                const double saved = t[k];
                t[k] = v;
                const double r = split_objective(xs, t, p);
                t[k] = saved;
                return r;
            };
            double f1 = eval(m1), f2 = eval(m2);
            for (int it = 0; it < 24; ++it) {
                if (f1 <= f2) {
                    hi = m2;
                    m2 = m1;
                    f2 = f1;
                    m1 = hi - gr * (hi - lo);
                    f1 = eval(m1);
                } else {
                    lo = m1;
                    m1 = m2;
                    f1 = f2;
                    m2 = lo + gr * (hi - lo);
                    f2 = eval(m2);
                }
            }
            const double cand = 0.5 * (lo + hi);
            const double fc = eval(cand);
            if (fc < best) {
                best = fc;
                t[k] = cand;
            }
        }
    }
    return best;
}

double dual_pairing(const ElementSequence& xs, const std::vector<CMatrix>& ys) {
    Complex s = 0.0;
    for (size_t k = 0; k < xs.items.size(); ++k)
        s += trace({xs.ctx(), xs.items[k].mat * ys[k]});
    return s.real();
}

double intersection_norm(const TraceContext& ctx, const std::vector<CMatrix>& ys, double q) {
    std::vector<AlgebraElement> seq;
    seq.reserve(ys.size());
    for (const auto& y : ys) seq.push_back({ctx, y});
    const ElementSequence es(std::move(seq));
    return std::max(rc_row_norm(es, q), rc_col_norm(es, q));
}

}  // namespace

Interval rc_norm(const ElementSequence& xs, double p, Side side, int dual_witnesses,
                 uint64_t seed) {
    if (!(p >= 1.0)) throw DomainError("rc_norm: p must lie in [1, inf]");
    if (side == Side::row) {
        const double v = rc_row_norm(xs, p);
        return {v, v};
    }
    if (side == Side::column) {
        const double v = rc_col_norm(xs, p);
        return {v, v};
    }
    const double row = rc_row_norm(xs, p);
    const double col = rc_col_norm(xs, p);
    if (p >= 2.0) {
        const double v = std::max(row, col);
        return {v, v};
    }

    // p < 2: sum-norm infimum over decompositions x_n = y_n + z_n.
    // Upper bound: best scalar-split candidate plus coordinate descent.
    const size_t count = xs.items.size();
    double upper = std::min(row, col);
    for (const auto& start : {std::vector<double>(count, 0.0), std::vector<double>(count, 1.0),
                              std::vector<double>(count, 0.5)}) {
        upper = std::min(upper, refine_split(xs, start, p));
    }

    // Lower bound: duality against the intersection-normed ball in L_q.
    const double q = std::isinf(p) ? 1.0 : (p == 1.0 ? kInfinity : p / (p - 1.0));
    const int n = xs.ctx().dim;
    double lower = 0.0;
    auto consider = [&](const std::vector<CMatrix>& ys) {
        const double nu = intersection_norm(xs.ctx(), ys, q);
        if (nu <= 1e-300) return;
        lower = std::max(lower, dual_pairing(xs, ys) / nu);
    };

    {
        // aligned witness y_n = |x_n|^{p-1} u_n* built from the polar parts
        std::vector<CMatrix> ys;
        ys.reserve(count);
        for (const auto& x : xs.items) {
            const CMatrix u = polar_partial_isometry(x.mat);
            const CMatrix pw = hermitian_function(
                x.mat.adjoint() * x.mat,
                [p](double v) { return std::pow(std::max(0.0, v), 0.5 * (p - 1.0)); });
            ys.push_back(pw * u.adjoint());
        }
        consider(ys);
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int w = 0; w < dual_witnesses; ++w) {
        std::vector<CMatrix> ys;
        ys.reserve(count);
        for (size_t k = 0; k < count; ++k) {
            CMatrix y(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) y(i, j) = Complex(gauss(rng), gauss(rng));
            ys.push_back(std::move(y));
        }
        consider(ys);
    }
    lower = std::min(lower, upper);  // guard numerical crossover
    return {lower, upper};
}

double khintchine_mean(const ElementSequence& xs, double p) {
    if (!(p >= 1.0) || std::isinf(p)) throw DomainError("khintchine_mean: finite p >= 1 required");
    const size_t count = xs.size();
    if (count > 16) throw ResourceError("khintchine_mean: more than 16 terms");
    const int n = xs.ctx().dim;
    const uint64_t patterns = uint64_t(1) << count;
    double acc = 0.0;
    for (uint64_t bits = 0; bits < patterns; ++bits) {
        CMatrix s(n, n);
        for (size_t k = 0; k < count; ++k) {
            const double sign = (bits >> k) & 1 ? -1.0 : 1.0;
            s += sign * xs.items[k].mat;
        }
        acc += std::pow(schatten_norm({xs.ctx(), s}, p), p);
    }
    return std::pow(acc / static_cast<double>(patterns), 1.0 / p);
}

bool is_hermitian(const CMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > tol) return false;
    return true;
}

bool is_positive_semidefinite(const CMatrix& a, double tol) {
    if (!is_hermitian(a, tol)) return false;
    const EigResult e = hermitian_eig(a);
    return e.values.empty() || e.values.front() >= -tol;
}

double projection_defect(const CMatrix& p) {
    const double idem = max_abs_diff(p * p, p);
    const double sa = max_abs_diff(p, p.adjoint());
    return std::max(idem, sa);
}

}  // namespace nclab::opalg
