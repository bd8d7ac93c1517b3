#include "nclab/lamperti.hpp"

#include <algorithm>
#include <cmath>

#include "nclab/rand.hpp"

namespace nclab::lamperti {

using opalg::support_projection;

JordanDescriptor JordanDescriptor::identity_conjugation(int dim) {
    return conjugation(CMatrix::identity(dim));
}

JordanDescriptor JordanDescriptor::conjugation(CMatrix u) {
    JordanDescriptor j;
    j.kind = JordanKind::conjugation;
    j.u = std::move(u);
    if (max_abs_diff(j.u.adjoint() * j.u, CMatrix::identity(j.u.rows())) > 1e-9)
        throw ConstructionError("JordanDescriptor: u is not unitary");
    return j;
}

JordanDescriptor JordanDescriptor::transpose_conjugation(CMatrix u) {
    JordanDescriptor j = conjugation(std::move(u));
    j.kind = JordanKind::transpose_conjugation;
    return j;
}

JordanDescriptor JordanDescriptor::point_permutation(std::vector<int> pi,
                                                     std::vector<double> mask) {
    JordanDescriptor j;
    j.kind = JordanKind::point_permutation;
    j.pi = std::move(pi);
    j.mask = std::move(mask);
    std::vector<bool> seen(j.pi.size(), false);
    for (int v : j.pi) {
        if (v < 0 || v >= static_cast<int>(j.pi.size()) || seen[v])
            throw ConstructionError("JordanDescriptor: pi is not a bijection");
        seen[v] = true;
    }
    if (!j.mask.empty() && j.mask.size() != j.pi.size())
        throw ConstructionError("JordanDescriptor: mask length mismatch");
    return j;
}

int JordanDescriptor::dim() const {
    return kind == JordanKind::point_permutation ? static_cast<int>(pi.size()) : u.rows();
}

CMatrix JordanDescriptor::apply(const CMatrix& x) const {
    switch (kind) {
        case JordanKind::conjugation:
            return u * x * u.adjoint();
        case JordanKind::transpose_conjugation:
            return u * x.transpose() * u.adjoint();
        case JordanKind::point_permutation: {
            const int n = dim();
            CMatrix y(n, n);
            for (int i = 0; i < n; ++i) {
                const double mi = mask.empty() ? 1.0 : mask[i];
                if (mi == 0.0) continue;
                for (int j = 0; j < n; ++j) {
                    const double mj = mask.empty() ? 1.0 : mask[j];
                    if (mj == 0.0) continue;
                    y(i, j) = x(pi[i], pi[j]);
                }
            }
            return y;
        }
    }
    throw std::logic_error("unreachable");
}

CMatrix JordanDescriptor::unit() const {
    const int n = dim();
    if (kind == JordanKind::point_permutation && !mask.empty()) {
        CVector d(n);
        for (int i = 0; i < n; ++i) d[i] = mask[i];
        return CMatrix::diag(d);
    }
    return CMatrix::identity(n);
}

AlgebraElement LampertiOperator::apply(const AlgebraElement& x) const {
    if (!(x.ctx == ctx)) throw DimensionError("LampertiOperator: context mismatch");
    return {ctx, w.mat * (b.mat * jordan.apply(x.mat))};
}

CMatrix LampertiOperator::map_matrix() const {
    const int n = ctx.dim;
    CMatrix m(n * n, n * n);
    CMatrix unit(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            unit(r, c) = 1.0;
            const CMatrix img = w.mat * (b.mat * jordan.apply(unit));
            unit(r, c) = 0.0;
            const int col = r * n + c;
            for (int i = 0; i < n * n; ++i) m(i, col) = img.data()[i];
        }
    }
    return m;
}

LampertiOperator make_lamperti(AlgebraElement w, AlgebraElement b, JordanDescriptor j) {
    const TraceContext ctx = w.ctx;
    if (!(b.ctx == ctx) || j.dim() != ctx.dim)
        throw DimensionError("make_lamperti: mismatched parts");

    const CMatrix j1 = j.unit();
    const CMatrix wsw = w.mat.adjoint() * w.mat;
    const CMatrix sb = support_projection(b).mat;
    if (max_abs_diff(wsw, j1) > 1e-9 || max_abs_diff(wsw, sb) > 1e-9)
        throw ConstructionError("make_lamperti: item (1) failed, w*w = J(1) = s(b) violated");

    // item (2): spectral projections of b commute with the image of J,
    // checked against J applied to all matrix units
    const int n = ctx.dim;
    const EigResult eb = hermitian_eig(b.mat);
    std::vector<CMatrix> spectral;
    size_t lo = 0;
    while (lo < eb.values.size()) {
        size_t hi = lo;
        while (hi + 1 < eb.values.size() && eb.values[hi + 1] - eb.values[lo] < 1e-10) ++hi;
        CMatrix p(n, n);
        for (size_t k = lo; k <= hi; ++k)
            for (int r = 0; r < n; ++r)
                for (int c = 0; c < n; ++c)
                    p(r, c) += eb.vectors(r, static_cast<int>(k)) *
                               std::conj(eb.vectors(c, static_cast<int>(k)));
        spectral.push_back(std::move(p));
        lo = hi + 1;
    }
    // basis of the algebra the operator acts on: all matrix units for the
    // matrix kinds, diagonal indicators for the commutative model
    const bool diagonal_model = j.kind == JordanKind::point_permutation;
    CMatrix unit(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (diagonal_model && r != c) continue;
            unit(r, c) = 1.0;
            const CMatrix jx = j.apply(unit);
            unit(r, c) = 0.0;
            for (const auto& p : spectral) {
                if (max_abs_diff(p * jx, jx * p) > 1e-8 * std::max(1.0, jx.max_abs()))
                    throw ConstructionError(
                        "make_lamperti: item (2) failed, spectral projection of b does not "
                        "commute with J(x)");
            }
        }
    }

    LampertiOperator t;
    t.ctx = ctx;
    t.w = std::move(w);
    t.b = std::move(b);
    t.jordan = std::move(j);
    return t;
}

namespace {

CMatrix apply_map(const CMatrix& map_matrix, const CMatrix& x) {
    const int n = x.rows();
    return CMatrix::unvec(map_matrix.apply(x.vec()), n);
}

}  // namespace

LampertiWitness is_lamperti(const CMatrix& map_matrix, const TraceContext& ctx, int budget,
                            bool strict, uint64_t seed, double tol, bool commutative) {
    const int n = ctx.dim;
    if (map_matrix.rows() != n * n || map_matrix.cols() != n * n)
        throw DimensionError("is_lamperti: map must be d^2 x d^2");

    auto violation = [&](const CMatrix& e, const CMatrix& f) -> std::optional<double> {
        const CMatrix te = apply_map(map_matrix, e);
        const CMatrix tf = apply_map(map_matrix, f);
        const double r1 = (te.adjoint() * tf).max_abs();
        const double r2 = (te * tf.adjoint()).max_abs();
        const double scale = std::max({1.0, te.max_abs(), tf.max_abs()});
        const double r = std::max(r1, r2) / scale;
        if (r > tol) return r;
        return std::nullopt;
    };

    LampertiWitness out;
    auto fail = [&](const CMatrix& e, const CMatrix& f, double r) {
        out.lamperti = false;
        out.e = e;
        out.f = f;
        out.residual = r;
        return out;
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            CMatrix e(n, n), f(n, n);
            e(i, i) = 1.0;
            f(j, j) = 1.0;
            if (auto r = violation(e, f)) return fail(e, f, *r);
        }
    }

    std::mt19937_64 rng(seed);

    if (commutative) {
        // projections of the diagonal algebra are coordinate subsets
        for (int trial = 0; trial < budget && n >= 2; ++trial) {
            CMatrix e(n, n), f(n, n);
            bool has_e = false, has_f = false;
            for (int i = 0; i < n; ++i) {
                switch (rng() % 3) {
                    case 0:
                        e(i, i) = 1.0;
                        has_e = true;
                        break;
                    case 1:
                        f(i, i) = 1.0;
                        has_f = true;
                        break;
                    default:
                        break;
                }
            }
            if (!has_e || !has_f) continue;
            if (auto r = violation(e, f)) return fail(e, f, *r);
        }
        return out;
    }

    auto projections_from_basis = [&](const CMatrix& v, int k1, int count1, int k2, int count2) {
        CMatrix e(n, n), f(n, n);
        for (int c = 0; c < count1; ++c)
            for (int r1 = 0; r1 < n; ++r1)
                for (int c1 = 0; c1 < n; ++c1)
                    e(r1, c1) += v(r1, k1 + c) * std::conj(v(c1, k1 + c));
        for (int c = 0; c < count2; ++c)
            for (int r1 = 0; r1 < n; ++r1)
                for (int c1 = 0; c1 < n; ++c1)
                    f(r1, c1) += v(r1, k2 + c) * std::conj(v(c1, k2 + c));
        return std::pair<CMatrix, CMatrix>(e, f);
    };

    for (int trial = 0; trial < budget && n >= 2; ++trial) {
        const CMatrix v = random_unitary(n, rng);
        std::uniform_int_distribution<int> cut(1, n - 1);
        const int k = cut(rng);
        std::uniform_int_distribution<int> len1(1, k), len2(1, n - k);
        const int c1 = len1(rng), c2 = len2(rng);
        auto [e, f] = projections_from_basis(v, 0, c1, k, c2);
        if (auto r = violation(e, f)) return fail(e, f, *r);
    }

    if (strict && n >= 2) {
        const CMatrix v = random_unitary(n, rng);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                auto [e, f] = projections_from_basis(v, i, 1, j, 1);
                if (auto r = violation(e, f)) return fail(e, f, *r);
            }
        }
    }
    return out;
}

LampertiWitness is_lamperti(const LampertiOperator& t, int budget, bool strict, uint64_t seed,
                            double tol) {
    const bool comm = t.jordan.kind == JordanKind::point_permutation;
    return is_lamperti(t.map_matrix(), t.ctx, budget, strict, seed, tol, comm);
}

LampertiOperator lamperti_decompose(const CMatrix& diag_action, const TraceContext& ctx,
                                    double tol) {
    const int n = ctx.dim;
    if (diag_action.rows() != n || diag_action.cols() != n)
        throw DimensionError("lamperti_decompose: action must be d x d");
    const double scale = std::max(diag_action.max_abs(), 1.0);

    // column i of the action is T(e_i); it must be c_i * e_{sigma(i)}
    std::vector<int> sigma(n, -1);
    CVector coeff(n, 0.0);
    for (int i = 0; i < n; ++i) {
        int hit = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(diag_action(j, i)) > tol * scale) {
                if (hit >= 0)
                    throw DomainError(
                        "lamperti_decompose: indicator maps to a non-indicator");
                hit = j;
            }
        }
        if (hit >= 0) {
            sigma[i] = hit;
            coeff[i] = diag_action(hit, i);
        }
    }

    std::vector<bool> used(n, false);
    for (int i = 0; i < n; ++i)
        if (sigma[i] >= 0) {
            if (used[sigma[i]])
                throw DomainError("lamperti_decompose: two indicators share a target");
            used[sigma[i]] = true;
        }
    for (int i = 0; i < n; ++i) {
        if (sigma[i] >= 0) continue;
        for (int j = 0; j < n; ++j)
            if (!used[j]) {
                sigma[i] = j;
                used[j] = true;
                break;
            }
    }

    // pi = sigma^{-1}; at the target point j = sigma(i):
    //   w_j = phase(c_i), b_j = |c_i|, with phase(0) = 0
    std::vector<int> pi(n);
    for (int i = 0; i < n; ++i) pi[sigma[i]] = i;
    CVector wdiag(n, 0.0), bdiag(n, 0.0);
    std::vector<double> mask(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const int j = sigma[i];
        const double mag = std::abs(coeff[i]);
        if (mag > tol * scale) {
            wdiag[j] = coeff[i] / mag;
            bdiag[j] = mag;
            mask[j] = 1.0;
        }
    }

    LampertiOperator t =
        make_lamperti({ctx, CMatrix::diag(wdiag)}, {ctx, CMatrix::diag(bdiag)},
                      JordanDescriptor::point_permutation(pi, mask));

    for (int i = 0; i < n; ++i) {
        CMatrix e(n, n);
        e(i, i) = 1.0;
        const CMatrix img = t.apply({ctx, e}).mat;
        CMatrix want(n, n);
        want(sigma[i], sigma[i]) = coeff[i];
        if (max_abs_diff(img, want) > 1e-10 * scale)
            throw DomainError("lamperti_decompose: reconstruction failed");
    }
    return t;
}

LampertiOperator lamperti_modulus(const LampertiOperator& t) {
    return make_lamperti(support_projection(t.b), t.b, t.jordan);
}

namespace {

JordanDescriptor to_matrix_kind(const JordanDescriptor& j) {
    if (j.kind != JordanKind::point_permutation) return j;
    if (!j.mask.empty())
        for (double m : j.mask)
            if (m == 0.0)
                throw DomainError("lamperti_compose: permutation part lacks full support");
    const int n = j.dim();
    CMatrix p(n, n);
    for (int i = 0; i < n; ++i) p(i, j.pi[i]) = 1.0;  // (P x P*)_{ii} = x_{pi(i) pi(i)}
    return JordanDescriptor::conjugation(p);
}

JordanDescriptor compose_jordan(const JordanDescriptor& a, const JordanDescriptor& b) {
    if (a.kind == JordanKind::point_permutation && b.kind == JordanKind::point_permutation) {
        const int n = a.dim();
        std::vector<int> pi(n);
        for (int i = 0; i < n; ++i) pi[i] = b.pi[a.pi[i]];  // (J_a J_b x)_i = x_{pi_b(pi_a(i))}
        return JordanDescriptor::point_permutation(pi);
    }
    const JordanDescriptor ja = to_matrix_kind(a);
    const JordanDescriptor jb = to_matrix_kind(b);
    const bool ta = ja.kind == JordanKind::transpose_conjugation;
    const bool tb = jb.kind == JordanKind::transpose_conjugation;
    const CMatrix ub = ta ? jb.u.conj() : jb.u;
    const CMatrix u = ja.u * ub;
    return (ta != tb) ? JordanDescriptor::transpose_conjugation(u)
                      : JordanDescriptor::conjugation(u);
}

}  // namespace

LampertiOperator lamperti_compose(const LampertiOperator& s, const LampertiOperator& t) {
    if (!(s.ctx == t.ctx)) throw DimensionError("lamperti_compose: context mismatch");
    const int n = s.ctx.dim;
    for (const auto* op : {&s, &t}) {
        if (max_abs_diff(support_projection(op->b).mat, CMatrix::identity(n)) > 1e-9)
            throw DomainError("lamperti_compose: operators must have full-support b");
    }

    const CMatrix bprime = s.b.mat * s.jordan.apply(t.b.mat);
    const CMatrix wprime = s.w.mat * s.jordan.apply(t.w.mat);
    JordanDescriptor jprime = compose_jordan(s.jordan, t.jordan);

    LampertiOperator out = make_lamperti({s.ctx, wprime}, {s.ctx, modulus_matrix(bprime)},
                                         std::move(jprime));
    // the polar matching above can fail outside the commuting situations the
    // factorization covers; verify the product on a matrix-unit basis
    CMatrix unit(n, n);
    double resid = 0.0;
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            unit(r, c) = 1.0;
            const AlgebraElement x{s.ctx, unit};
            resid = std::max(resid, max_abs_diff(out.apply(x).mat, s.apply(t.apply(x)).mat));
            unit(r, c) = 0.0;
        }
    }
    const double scale = std::max({1.0, s.b.mat.max_abs(), t.b.mat.max_abs()});
    if (resid > 1e-10 * scale * scale)
        throw DomainError("lamperti_compose: composition leaves the supported class");
    return out;
}

ModulusPower::ModulusPower(double mu_, double gamma_, double p_) : mu(mu_), gamma(gamma_), p(p_) {
    if (!(mu > 0.0) || !(gamma >= 1.0) || !(p >= 1.0) || std::abs(mu * gamma - p) > 1e-12)
        throw DomainError("ModulusPower: need mu*gamma = p, gamma >= 1, p >= 1");
}

LampertiOperator lamperti_power_mu(const LampertiOperator& t, const ModulusPower& mp) {
    const CMatrix sb = support_projection(t.b).mat;
    if (max_abs_diff(t.w.mat, sb) > 1e-9)
        throw DomainError("lamperti_power_mu: operator must be positive (w = s(b))");
    const double mu = mp.mu;
    const CMatrix bmu =
        hermitian_function(t.b.mat, [mu](double v) { return std::pow(std::max(0.0, v), mu); });
    return make_lamperti({t.ctx, sb}, {t.ctx, bmu}, t.jordan);
}

CMatrix weighted_permutation_matrix(const LampertiOperator& t) {
    if (t.jordan.kind != JordanKind::point_permutation)
        throw DomainError("weighted_permutation_matrix: permutation kind required");
    const int n = t.ctx.dim;
    CMatrix a(n, n);
    for (int j = 0; j < n; ++j) {
        // T(f)(j) = w_j b_j f(pi(j))
        a(j, t.jordan.pi[j]) = t.w.mat(j, j) * t.b.mat(j, j);
    }
    return a;
}

double weighted_permutation_pnorm(const LampertiOperator& t) {
    double m = 0.0;
    for (int i = 0; i < t.ctx.dim; ++i) m = std::max(m, std::abs(t.b.mat(i, i)));
    return m;
}

namespace {

// Nonlinear power ascent for ||a||_{p->p} on unweighted l_p, 1 < p < inf.
double boyd_ascent(const CMatrix& a, double p, int restarts, uint64_t seed) {
    const int n = a.rows();
    const double q = p / (p - 1.0);
    const CMatrix ah = a.adjoint();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);

    auto dual_scale = [](CVector& v, double r) {
        // v <- |v|^{r-1} sgn(v)
        for (auto& x : v) {
            const double m = std::abs(x);
            x = (m > 1e-300) ? x / m * std::pow(m, r - 1.0) : Complex(0.0);
        }
    };

    double best = 0.0;
    for (int rs = 0; rs < std::max(restarts, 1) + n + 1; ++rs) {
        CVector x(n);
        if (rs == 0) {
            for (auto& v : x) v = 1.0;
        } else if (rs <= n) {
            x[rs - 1] = 1.0;  // basis starts reach permutation-type maximizers
        } else {
            for (auto& v : x) v = Complex(g(rng), g(rng));
        }
        double nx = vector_pnorm(x, p);
        if (nx < 1e-300) continue;
        for (auto& v : x) v /= nx;
        double prev = 0.0;
        for (int it = 0; it < 60; ++it) {
            CVector y = a.apply(x);
            const double ny = vector_pnorm(y, p);
            if (ny < 1e-300) break;
            best = std::max(best, ny);
            if (std::abs(ny - prev) < 1e-13 * std::max(1.0, ny)) break;
            prev = ny;
            dual_scale(y, p);
            CVector z = ah.apply(y);
            dual_scale(z, q);
            const double nz = vector_pnorm(z, p);
            if (nz < 1e-300) break;
            for (auto& v : z) v /= nz;
            x = std::move(z);
        }
    }
    return best;
}

}  // namespace

double vector_operator_pnorm(const CMatrix& a, const std::vector<double>& weights, double p,
                             int restarts, uint64_t seed) {
    if (!(p >= 1.0)) throw DomainError("vector_operator_pnorm: p in [1, inf] required");
    const int n = a.rows();
    if (std::isinf(p)) {
        double m = 0.0;
        for (int i = 0; i < n; ++i) {
            double s = 0.0;
            for (int j = 0; j < n; ++j) s += std::abs(a(i, j));
            m = std::max(m, s);
        }
        return m;
    }
    if (p == 1.0) {
        double m = 0.0;
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += weights[i] * std::abs(a(i, j));
            m = std::max(m, s / weights[j]);
        }
        return m;
    }
    // fold the weights: ||a||_{p,w} = ||W^{1/p} a W^{-1/p}||_p
    CMatrix folded = a;
    for (int i = 0; i < n; ++i) {
        const double wi = std::pow(weights[i], 1.0 / p);
        for (int j = 0; j < n; ++j) folded(i, j) *= wi / std::pow(weights[j], 1.0 / p);
    }
    return boyd_ascent(folded, p, restarts, seed);
}

double vector_operator_pnorm(const CMatrix& a, double p, int restarts, uint64_t seed) {
    return vector_operator_pnorm(a, std::vector<double>(a.rows(), 1.0), p, restarts, seed);
}

}  // namespace nclab::lamperti
