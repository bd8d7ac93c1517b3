#include "nclab/ergodic.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace nclab::ergodic {

using opalg::AlgebraElement;
using opalg::ElementSequence;
using opalg::Interval;

AverageSpec::AverageSpec(AverageKind k, std::vector<int> idx) : kind(k), indices(std::move(idx)) {
    if (indices.size() < 2) throw DomainError("AverageSpec: at least two indices required");
    for (size_t i = 1; i < indices.size(); ++i)
        if (indices[i] <= indices[i - 1] || indices[i - 1] < 1)
            throw DomainError("AverageSpec: indices must be strictly increasing and positive");
}

CMatrix cesaro_average(const CMatrix& t, int n, AverageKind kind) {
    if (n < 1) throw DomainError("cesaro_average: n >= 1 required");
    const int d = t.rows();
    if (kind == AverageKind::one_sided) {
        CMatrix acc = CMatrix::identity(d);
        CMatrix power = CMatrix::identity(d);
        for (int j = 1; j < n; ++j) {
            power = power * t;
            acc += power;
        }
        return (1.0 / n) * acc;
    }
    const CMatrix tinv = inverse(t);  // throws DomainError when singular
    CMatrix acc = CMatrix::identity(d);
    CMatrix pos = CMatrix::identity(d), neg = CMatrix::identity(d);
    for (int k = 1; k <= n; ++k) {
        pos = pos * t;
        neg = neg * tinv;
        acc += pos;
        acc += neg;
    }
    return (1.0 / (2.0 * n + 1.0)) * acc;
}

CMatrix tuple_average(const std::vector<CMatrix>& ts, int n) {
    if (ts.empty()) throw DomainError("tuple_average: empty tuple");
    if (n < 1) throw DomainError("tuple_average: n >= 1 required");
    for (size_t i = 0; i < ts.size(); ++i)
        for (size_t j = i + 1; j < ts.size(); ++j)
            if (max_abs_diff(ts[i] * ts[j], ts[j] * ts[i]) >
                1e-10 * std::max(1.0, ts[i].max_abs() * ts[j].max_abs()))
                throw DomainError("tuple_average: members " + std::to_string(i) + " and " +
                                  std::to_string(j) + " do not commute");
    // for a commuting tuple the d-fold product average factors through the
    // one-dimensional averages
    CMatrix out = cesaro_average(ts[0], n, AverageKind::one_sided);
    for (size_t i = 1; i < ts.size(); ++i)
        out = out * cesaro_average(ts[i], n, AverageKind::one_sided);
    return out;
}

CMatrix semigroup_average(const Semigroup& sg, double t, int k) {
    if (!(t > 0.0) || k < 1) throw DomainError("semigroup_average: t > 0, k >= 1 required");
    const int n = static_cast<int>(std::floor(k * t));
    if (n < 1) throw DomainError("semigroup_average: floor(k t) vanished");
    std::vector<CMatrix> tuple;
    for (int i = 0; i < sg.arity; ++i) {
        std::vector<double> s(sg.arity, 0.0);
        s[i] = 1.0 / k;
        tuple.push_back(sg.at(s));
    }
    return tuple_average(tuple, n);
}

namespace {

// averages A_idx x at every requested index, sharing partial sums
template <typename Vec, typename Apply, typename Add, typename Scale, typename ApplyInv>
std::vector<Vec> averages_at_indices(const Vec& x, const AverageSpec& spec, Apply apply, Add add,
                                     Scale scale, ApplyInv apply_inv) {
    std::vector<Vec> out;
    const int top = spec.indices.back();
    if (spec.kind == AverageKind::one_sided) {
        Vec sum = x;    // sum_{j<n} T^j x
        Vec power = x;  // T^j x
        size_t next = 0;
        for (int n = 1; n <= top; ++n) {
            if (n > 1) {
                power = apply(power);
                add(sum, power);
            }
            while (next < spec.indices.size() && spec.indices[next] == n) {
                out.push_back(scale(sum, 1.0 / n));
                ++next;
            }
        }
        return out;
    }
    Vec sum = x, pos = x, neg = x;
    size_t next = 0;
    for (int n = 1; n <= top; ++n) {
        pos = apply(pos);
        neg = apply_inv(neg);
        add(sum, pos);
        add(sum, neg);
        while (next < spec.indices.size() && spec.indices[next] == n) {
            out.push_back(scale(sum, 1.0 / (2.0 * n + 1.0)));
            ++next;
        }
    }
    return out;
}

}  // namespace

double square_function_norm(const CMatrix& t, const CVector& x,
                            const std::vector<double>& weights, const AverageSpec& spec,
                            double p) {
    CMatrix tinv;
    if (spec.kind == AverageKind::symmetric) tinv = inverse(t);
    auto apply = [&](const CVector& v) { return t.apply(v); };
    auto apply_inv = [&](const CVector& v) { return tinv.apply(v); };
    auto add = [](CVector& a, const CVector& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    };
    auto scale = [](const CVector& v, double s) {
        CVector o = v;
        for (auto& c : o) c *= s;
        return o;
    };
    const std::vector<CVector> avgs =
        averages_at_indices<CVector>(x, spec, apply, add, scale, apply_inv);

    // row and column coincide pointwise on the commutative carrier, so the
    // rc norm is || (sum_i |D_i|^2)^{1/2} ||_p exactly, at every p
    std::vector<double> acc(x.size(), 0.0);
    for (size_t i = 0; i + 1 < avgs.size(); ++i)
        for (size_t c = 0; c < x.size(); ++c) acc[c] += std::norm(avgs[i + 1][c] - avgs[i][c]);
    CVector root(x.size());
    for (size_t c = 0; c < x.size(); ++c) root[c] = std::sqrt(acc[c]);
    return vector_pnorm(root, weights, p);
}

Interval square_function_norm(const CMatrix& tmap, const AlgebraElement& x,
                              const AverageSpec& spec, double p) {
    const int d = x.dim();
    if (tmap.rows() != d * d) throw DimensionError("square_function_norm: map shape mismatch");
    CMatrix tinv;
    if (spec.kind == AverageKind::symmetric) tinv = inverse(tmap);
    auto apply = [&](const CMatrix& v) { return CMatrix::unvec(tmap.apply(v.vec()), d); };
    auto apply_inv = [&](const CMatrix& v) { return CMatrix::unvec(tinv.apply(v.vec()), d); };
    auto add = [](CMatrix& a, const CMatrix& b) { a += b; };
    auto scale = [](const CMatrix& v, double s) { return Complex(s) * v; };
    const std::vector<CMatrix> avgs =
        averages_at_indices<CMatrix>(x.mat, spec, apply, add, scale, apply_inv);

    std::vector<AlgebraElement> diffs;
    for (size_t i = 0; i + 1 < avgs.size(); ++i) diffs.push_back({x.ctx, avgs[i + 1] - avgs[i]});
    return opalg::rc_norm(ElementSequence(std::move(diffs)), p, opalg::Side::rc);
}

namespace {

double subseq_value(const std::vector<CVector>& avgs, const std::vector<int>& subseq,
                    const std::vector<double>& weights, double p) {
    const size_t d = avgs.front().size();
    std::vector<double> acc(d, 0.0);
    for (size_t i = 0; i + 1 < subseq.size(); ++i) {
        const CVector& a = avgs[subseq[i] - 1];
        const CVector& b = avgs[subseq[i + 1] - 1];
        for (size_t c = 0; c < d; ++c) acc[c] += std::norm(b[c] - a[c]);
    }
    CVector root(d);
    for (size_t c = 0; c < d; ++c) root[c] = std::sqrt(acc[c]);
    return vector_pnorm(root, weights, p);
}

}  // namespace

SupResult sup_square_function(const CMatrix& t, const CVector& x,
                              const std::vector<double>& weights, double p, int n_max,
                              SupMode mode, AverageKind kind) {
    if (n_max < 2) throw DomainError("sup_square_function: n_max >= 2 required");
    if (mode == SupMode::exhaustive && n_max > 14)
        throw ResourceError("sup_square_function: exhaustive mode capped at n_max = 14");

    std::vector<int> all(n_max);
    for (int i = 0; i < n_max; ++i) all[i] = i + 1;
    AverageSpec spec(kind, all);
    CMatrix tinv;
    if (kind == AverageKind::symmetric) tinv = inverse(t);
    auto apply = [&](const CVector& v) { return t.apply(v); };
    auto apply_inv = [&](const CVector& v) { return tinv.apply(v); };
    auto add = [](CVector& a, const CVector& b) {
        for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    };
    auto scale = [](const CVector& v, double s) {
        CVector o = v;
        for (auto& c : o) c *= s;
        return o;
    };
    const std::vector<CVector> avgs =
        averages_at_indices<CVector>(x, spec, apply, add, scale, apply_inv);

    SupResult best;
    if (mode == SupMode::exhaustive) {
        const uint32_t total = uint32_t(1) << n_max;
        std::vector<int> subseq;
        for (uint32_t bits = 0; bits < total; ++bits) {
            if (__builtin_popcount(bits) < 2) continue;
            subseq.clear();
            for (int i = 0; i < n_max; ++i)
                if ((bits >> i) & 1) subseq.push_back(i + 1);
            const double v = subseq_value(avgs, subseq, weights, p);
            if (v > best.value) {
                best.value = v;
                best.subsequence = subseq;
            }
        }
        return best;
    }

    // greedy: every pair as a start, then best-improvement insertion
    for (int i = 1; i <= n_max; ++i) {
        for (int j = i + 1; j <= n_max; ++j) {
            std::vector<int> cur = {i, j};
            double val = subseq_value(avgs, cur, weights, p);
            bool improved = true;
            while (improved && static_cast<int>(cur.size()) < n_max) {
                improved = false;
                std::vector<int> pick;
                double pick_val = val;
                for (int cand = 1; cand <= n_max; ++cand) {
                    if (std::binary_search(cur.begin(), cur.end(), cand)) continue;
                    std::vector<int> trial = cur;
                    trial.insert(std::upper_bound(trial.begin(), trial.end(), cand), cand);
                    const double tv = subseq_value(avgs, trial, weights, p);
                    if (tv > pick_val + 1e-15) {
                        pick_val = tv;
                        pick = std::move(trial);
                    }
                }
                if (!pick.empty()) {
                    cur = std::move(pick);
                    val = pick_val;
                    improved = true;
                }
            }
            if (val > best.value) {
                best.value = val;
                best.subsequence = cur;
            }
        }
    }
    return best;
}

double scalar_oracle_sqfn(const std::vector<Complex>& eigenvalues,
                          const std::vector<double>& weights, const AverageSpec& spec) {
    if (eigenvalues.size() != weights.size())
        throw DimensionError("scalar_oracle_sqfn: size mismatch");
    for (const auto& t : eigenvalues)
        if (std::abs(std::abs(t) - 1.0) > 1e-9)
            throw DomainError("scalar_oracle_sqfn: eigenvalue off the unit circle");
    if (spec.kind != AverageKind::one_sided)
        throw DomainError("scalar_oracle_sqfn: one-sided averages only");

    double total = 0.0;
    for (size_t j = 0; j < eigenvalues.size(); ++j) {
        const Complex t = eigenvalues[j];
        std::vector<Complex> a;  // a_n(t) = (1/n) sum_{k<n} t^k at the requested indices
        Complex sum = 0.0, power = 1.0;
        int n = 0;
        size_t next = 0;
        while (next < spec.indices.size()) {
            sum += power;
            power *= t;
            ++n;
            if (spec.indices[next] == n) {
                a.push_back(sum / static_cast<double>(n));
                ++next;
            }
        }
        double inner = 0.0;
        for (size_t i = 0; i + 1 < a.size(); ++i) inner += std::norm(a[i + 1] - a[i]);
        total += weights[j] * inner;
    }
    return std::sqrt(total);
}

// ---- groups ---------------------------------------------------------------

FiniteGroup make_group(std::vector<std::vector<int>> mult, std::vector<int> generators,
                       std::vector<double> haar) {
    FiniteGroup g;
    g.mult = std::move(mult);
    const int n = g.order();
    if (haar.empty()) haar.assign(n, 1.0);
    g.haar = std::move(haar);
    g.generators = std::move(generators);

    g.identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a) ok = g.mult[e][a] == a && g.mult[a][e] == a;
        if (ok) {
            g.identity = e;
            break;
        }
    }
    if (g.identity < 0) throw ConstructionError("FiniteGroup: no identity in the table");
    g.inverse.assign(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (g.mult[a][b] == g.identity) g.inverse[a] = b;
    for (int a = 0; a < n; ++a)
        if (g.inverse[a] < 0) throw ConstructionError("FiniteGroup: missing inverse");

    g.word_length.assign(n, -1);
    g.word_length[g.identity] = 0;
    std::deque<int> queue = {g.identity};
    while (!queue.empty()) {
        const int cur = queue.front();
        queue.pop_front();
        for (int v : g.generators) {
            const int nxt = g.mult[cur][v];
            if (g.word_length[nxt] < 0) {
                g.word_length[nxt] = g.word_length[cur] + 1;
                queue.push_back(nxt);
            }
        }
    }
    return g;
}

FiniteGroup FiniteGroup::cyclic(int q) {
    std::vector<std::vector<int>> mult(q, std::vector<int>(q));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b) mult[a][b] = (a + b) % q;
    std::vector<int> gens = {1 % q};
    if (q > 2) gens.push_back(q - 1);
    return make_group(std::move(mult), std::move(gens));
}

std::vector<int> FiniteGroup::ball(int g, double r) const {
    // d(g, h) = |g^{-1} h|
    std::vector<int> out;
    for (int h = 0; h < order(); ++h) {
        const int rel = mult[inverse[g]][h];
        if (word_length[rel] >= 0 && word_length[rel] <= r) out.push_back(h);
    }
    return out;
}

double FiniteGroup::measure(const std::vector<int>& subset) const {
    double s = 0.0;
    for (int g : subset) s += haar[g];
    return s;
}

bool FiniteGroup::generators_symmetric() const {
    for (int v : generators)
        if (std::find(generators.begin(), generators.end(), inverse[v]) == generators.end())
            return false;
    return true;
}

FiniteGroupAction make_action(FiniteGroup group, opalg::TraceContext ctx,
                              std::vector<std::function<CMatrix(const CMatrix&)>> maps) {
    if (static_cast<int>(maps.size()) != group.order())
        throw ConstructionError("make_action: one map per group element required");
    FiniteGroupAction a;
    a.group = std::move(group);
    a.ctx = std::move(ctx);
    a.maps = std::move(maps);

    const int n = a.group.order();
    if (n <= 64) {
        const int d = a.ctx.dim;
        CMatrix unit(d, d);
        for (int g = 0; g < n; ++g) {
            for (int h = 0; h < n; ++h) {
                const int gh = a.group.mult[g][h];
                double resid = 0.0;
                for (int r = 0; r < d && resid <= 1e-9; ++r) {
                    for (int c = 0; c < d; ++c) {
                        unit(r, c) = 1.0;
                        resid = std::max(
                            resid, max_abs_diff(a.maps[g](a.maps[h](unit)), a.maps[gh](unit)));
                        unit(r, c) = 0.0;
                        if (resid > 1e-9) break;
                    }
                }
                if (resid > 1e-9)
                    throw ConstructionError("make_action: alpha_g alpha_h != alpha_{gh} at (" +
                                            std::to_string(g) + ", " + std::to_string(h) + ")");
            }
        }
    }
    return a;
}

FiniteGroupAction translation_action(const FiniteGroup& group, int block_dim) {
    const int n = group.order();
    const int dim = n * block_dim;
    std::vector<double> weights(dim);
    for (int g = 0; g < n; ++g)
        for (int c = 0; c < block_dim; ++c) weights[g * block_dim + c] = group.haar[g];
    opalg::TraceContext ctx = opalg::TraceContext::weighted(weights);

    std::vector<std::function<CMatrix(const CMatrix&)>> maps;
    maps.reserve(n);
    for (int g = 0; g < n; ++g) {
        const FiniteGroup gr = group;
        maps.push_back([g, block_dim, dim, gr](const CMatrix& x) {
            // (alpha_g f)(h) = f(g^{-1} h): permute the diagonal blocks
            CMatrix y(dim, dim);
            for (int h = 0; h < gr.order(); ++h) {
                const int src = gr.mult[gr.inverse[g]][h];
                for (int r = 0; r < block_dim; ++r)
                    for (int c = 0; c < block_dim; ++c)
                        y(h * block_dim + r, h * block_dim + c) =
                            x(src * block_dim + r, src * block_dim + c);
            }
            return y;
        });
    }
    return make_action(group, std::move(ctx), std::move(maps));
}

Interval square_function_norm(const FiniteGroupAction& action, const AlgebraElement& x,
                              const std::vector<int>& radii, double p) {
    if (radii.size() < 2) throw DomainError("square_function_norm: two radii required");
    std::vector<AlgebraElement> diffs;
    AlgebraElement prev = ball_average_action(action, radii.front(), x);
    for (size_t i = 1; i < radii.size(); ++i) {
        if (radii[i] <= radii[i - 1])
            throw DomainError("square_function_norm: radii must increase");
        AlgebraElement cur = ball_average_action(action, radii[i], x);
        diffs.push_back(cur - prev);
        prev = std::move(cur);
    }
    return opalg::rc_norm(ElementSequence(std::move(diffs)), p, opalg::Side::rc);
}

AlgebraElement ball_average_action(const FiniteGroupAction& action, int n,
                                   const AlgebraElement& x) {
    if (n < 1) throw DomainError("ball_average_action: n >= 1 required");
    if (!action.group.generators_symmetric())
        throw DomainError("ball_average_action: generating set is not symmetric");
    const std::vector<int> ball = action.group.ball(action.group.identity, n);
    CMatrix acc(x.dim(), x.dim());
    double mass = 0.0;
    for (int g : ball) {
        acc += action.group.haar[g] * action.maps[g](x.mat);
        mass += action.group.haar[g];
    }
    return {x.ctx, (1.0 / mass) * acc};
}

double folner_ratio(const FiniteGroup& group, const std::vector<int>& subset, int g) {
    if (subset.empty()) throw DomainError("folner_ratio: empty set");
    std::vector<bool> in_f(group.order(), false), in_fg(group.order(), false);
    for (int f : subset) in_f[f] = true;
    for (int f : subset) in_fg[group.mult[f][g]] = true;
    double diff = 0.0;
    for (int h = 0; h < group.order(); ++h)
        if (in_f[h] != in_fg[h]) diff += group.haar[h];
    return diff / group.measure(subset);
}

TransferenceResult transference_identity_check(const FiniteGroupAction& action,
                                               const AlgebraElement& x, double r, int h,
                                               const std::vector<int>& ak, double p) {
    const FiniteGroup& g = action.group;
    std::vector<bool> in_ak(g.order(), ak.empty());
    for (int a : ak) in_ak[a] = true;

    // lhs = alpha_h(A_r x) with A_r the identity-ball average
    const std::vector<int> b_e = g.ball(g.identity, r);
    CMatrix avg(x.dim(), x.dim());
    double mass = 0.0;
    for (int u : b_e) {
        avg += g.haar[u] * action.maps[u](x.mat);
        mass += g.haar[u];
    }
    const CMatrix lhs = action.maps[h]((1.0 / mass) * avg);

    // rhs = M_r F(h) with F(g) = chi_AK(g) alpha_g(x)
    const std::vector<int> b_h = g.ball(h, r);
    TransferenceResult res;
    CMatrix rhs(x.dim(), x.dim());
    double mass_h = 0.0;
    for (int u : b_h) {
        if (!in_ak[u])
            res.covered = false;
        else
            rhs += g.haar[u] * action.maps[u](x.mat);
        mass_h += g.haar[u];
    }
    rhs = (1.0 / mass_h) * rhs;
    res.residual = opalg::schatten_norm({x.ctx, lhs - rhs}, p);
    return res;
}

}  // namespace nclab::ergodic
