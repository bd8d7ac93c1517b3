#include "nclab/dilation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "nclab/errors.hpp"

namespace nclab::dil {

namespace {

int64_t ipow(int64_t base, int exp) {
    int64_t r = 1;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

}  // namespace

Schedule enumerate_schedule(int N, int m) {
    if (N < 1 || m < 1) throw DomainError("enumerate_schedule: N, m >= 1 required");
    if (std::pow(static_cast<double>(m), N) > 1e6)
        throw ResourceError("enumerate_schedule: m^N exceeds 1e6");
    Schedule s;
    s.N = N;
    s.m = m;
    const int64_t total = ipow(m, N);
    s.alphas.reserve(static_cast<size_t>(total));
    std::vector<int> digits(N, 0);
    for (int64_t r = 0; r < total; ++r) {
        s.alphas.push_back(digits);
        for (int k = N - 1; k >= 0; --k) {  // alpha(0) most significant
            if (++digits[k] < m) break;
            digits[k] = 0;
        }
    }
    return s;
}

CMatrix ConvexFamily::combined() const {
    CMatrix t(dim(), dim());
    for (size_t j = 0; j < ops.size(); ++j) t += lambdas[j] * ops[j];
    return t;
}

void validate_family(const ConvexFamily& family, double p, uint64_t seed) {
    if (family.ops.empty() || family.lambdas.size() != family.ops.size())
        throw ConstructionError("ConvexFamily: lambdas and ops must pair up");
    double sum = 0.0;
    for (double l : family.lambdas) {
        if (l < 0.0 || l > 1.0) throw ConstructionError("ConvexFamily: lambda outside [0,1]");
        sum += l;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ConstructionError("ConvexFamily: lambdas do not sum to 1");

    const int d = family.dim();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    std::vector<CVector> probes;
    for (int k = 0; k < d; ++k) {
        CVector e(d, 0.0);
        e[k] = 1.0;
        probes.push_back(std::move(e));
    }
    for (int k = 0; k < 32; ++k) {
        CVector v(d);
        for (auto& x : v) x = Complex(g(rng), g(rng));
        probes.push_back(std::move(v));
    }
    for (size_t j = 0; j < family.ops.size(); ++j) {
        if (family.ops[j].rows() != d || family.ops[j].cols() != d)
            throw ConstructionError("ConvexFamily: op shape mismatch");
        for (const auto& v : probes) {
            const double in = vector_pnorm(v, p);
            const double out = vector_pnorm(family.ops[j].apply(v), p);
            if (std::abs(in - out) > 1e-9 * std::max(1.0, in))
                throw ConstructionError("ConvexFamily: member " + std::to_string(j) +
                                        " is not an isometry in the p-norm");
        }
    }
}

DilationDimensions dilation_dimensions(int n, int N, int m, int dimX) {
    DilationDimensions d;
    d.blocks = boost::multiprecision::pow(BigInt(N), static_cast<unsigned>(n)) *
               boost::multiprecision::pow(BigInt(m), static_cast<unsigned>(n * N));
    d.total = d.blocks * dimX;
    d.feasible = d.total <= BigInt(10000000);
    return d;
}

int64_t DilationSystem::block_id(const std::vector<int>& alpha_ranks,
                                 const std::vector<int>& is) const {
    const int64_t mn = ipow(m, N);
    int64_t a = 0;
    for (int r = n - 1; r >= 0; --r) a = a * mn + alpha_ranks[r];
    int64_t i = 0;
    for (int r = n - 1; r >= 0; --r) i = i * N + is[r];
    return a * ipow(N, n) + i;
}

CVector DilationSystem::embed(const CVector& x) const {
    if (static_cast<int>(x.size()) != dimX) throw DimensionError("embed: wrong input size");
    const int64_t mn = ipow(m, N);
    const int64_t ncount = ipow(N, n);
    CVector y(static_cast<size_t>(block_count) * dimX);
    const double ninv = 1.0 / static_cast<double>(ncount);
    for (int64_t a = 0; a < block_count / ncount; ++a) {
        int64_t rest = a;
        double lam = 1.0;
        for (int r = 0; r < n; ++r) {
            const int rank = static_cast<int>(rest % mn);
            rest /= mn;
            lam *= big_lambda[r][rank];
        }
        const double weight = std::pow(lam * ninv, 1.0 / p);
        for (int64_t i = 0; i < ncount; ++i) {
            const int64_t block = a * ncount + i;
            for (int c = 0; c < dimX; ++c) y[block * dimX + c] = weight * x[c];
        }
    }
    return y;
}

CVector DilationSystem::project(const CVector& y) const {
    if (static_cast<int64_t>(y.size()) != block_count * dimX)
        throw DimensionError("project: wrong input size");
    const int64_t mn = ipow(m, N);
    const int64_t ncount = ipow(N, n);
    CVector x(dimX, Complex(0.0));
    for (int64_t a = 0; a < block_count / ncount; ++a) {
        int64_t rest = a;
        double lam = 1.0;
        for (int r = 0; r < n; ++r) {
            const int rank = static_cast<int>(rest % mn);
            rest /= mn;
            lam *= big_lambda[r][rank];
        }
        const double weight = std::pow(lam / static_cast<double>(ncount), 1.0 / q);
        if (weight == 0.0) continue;
        for (int64_t i = 0; i < ncount; ++i) {
            const int64_t block = a * ncount + i;
            for (int c = 0; c < dimX; ++c) x[c] += weight * y[block * dimX + c];
        }
    }
    return x;
}

CVector DilationSystem::apply_u(int r, const CVector& y) const {
    if (r < 0 || r >= n) throw DimensionError("apply_u: family index out of range");
    if (static_cast<int64_t>(y.size()) != block_count * dimX)
        throw DimensionError("apply_u: wrong input size");
    const int64_t mn = ipow(m, N);
    const int64_t ncount = ipow(N, n);
    const int64_t nr_low = ipow(N, r);  // stride of the i_r digit

    CVector out(y.size());
    CVector xin(dimX), xout(dimX);
    for (int64_t a = 0; a < block_count / ncount; ++a) {
        int64_t rest = a;
        for (int s = 0; s < r; ++s) rest /= mn;
        const int rank_r = static_cast<int>(rest % mn);
        const std::vector<int>& alpha_r = schedule.alphas[rank_r];
        for (int64_t i = 0; i < ncount; ++i) {
            const int i_r = static_cast<int>((i / nr_low) % N);
            const int64_t i_src = i + static_cast<int64_t>(cycle_next(i_r, N) - i_r) * nr_low;
            const int64_t src = (a * ncount + i_src) * dimX;
            const int64_t dst = (a * ncount + i) * dimX;
            const CMatrix& op = families[r].ops[alpha_r[i_r]];
            for (int c = 0; c < dimX; ++c) xin[c] = y[src + c];
            xout = op.apply(xin);
            for (int c = 0; c < dimX; ++c) out[dst + c] = xout[c];
        }
    }
    return out;
}

double DilationSystem::norm_y(const CVector& y) const {
    // l_p of l_p^dimX collapses to one flat l_p norm
    return vector_pnorm(y, p);
}

DilationSystem build_dilation(std::vector<ConvexFamily> families, int N, double p,
                              uint64_t seed) {
    if (families.empty()) throw ConstructionError("build_dilation: no families");
    if (!(p > 1.0) || std::isinf(p)) throw DomainError("build_dilation: p in (1, inf) required");
    const int n = static_cast<int>(families.size());
    const int dimX = families.front().dim();
    int m = 0;
    for (const auto& f : families) {
        validate_family(f, p, seed);
        if (f.dim() != dimX) throw ConstructionError("build_dilation: mismatched base dims");
        m = std::max(m, static_cast<int>(f.ops.size()));
    }
    // pad shorter families with zero-weight members so one schedule shape
    // covers all of them
    for (auto& f : families) {
        while (static_cast<int>(f.ops.size()) < m) {
            f.ops.push_back(f.ops.front());
            f.lambdas.push_back(0.0);
        }
    }

    for (int r = 0; r < n; ++r) {
        for (int s = r + 1; s < n; ++s) {
            for (size_t ir = 0; ir < families[r].ops.size(); ++ir) {
                for (size_t is = 0; is < families[s].ops.size(); ++is) {
                    const CMatrix& a = families[r].ops[ir];
                    const CMatrix& b = families[s].ops[is];
                    if (max_abs_diff(a * b, b * a) >
                        1e-12 * std::max(1.0, a.max_abs() * b.max_abs()))
                        throw ConstructionError(
                            "build_dilation: families " + std::to_string(r) + " and " +
                            std::to_string(s) + " fail to commute at members (" +
                            std::to_string(ir) + ", " + std::to_string(is) + ")");
                }
            }
        }
    }

    const DilationDimensions dims = dilation_dimensions(n, N, m, dimX);
    if (!dims.feasible)
        throw ResourceError("build_dilation: total dimension " + dims.total.str() +
                            " exceeds the 1e7 cap");

    DilationSystem sys;
    sys.n = n;
    sys.N = N;
    sys.m = m;
    sys.p = p;
    sys.q = p / (p - 1.0);
    sys.dimX = dimX;
    sys.families = std::move(families);
    sys.schedule = enumerate_schedule(N, m);
    sys.block_count = static_cast<int64_t>(dims.blocks);

    sys.big_lambda.resize(n);
    for (int r = 0; r < n; ++r) {
        sys.big_lambda[r].reserve(sys.schedule.alphas.size());
        double total = 0.0;
        for (const auto& alpha : sys.schedule.alphas) {
            double lam = 1.0;
            for (int k = 0; k < N; ++k) lam *= sys.families[r].lambdas[alpha[k]];
            sys.big_lambda[r].push_back(lam);
            total += lam;
        }
        if (std::abs(total - 1.0) > 1e-10)
            throw ConstructionError("build_dilation: sum of Lambda(alpha) drifted from 1");
    }

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 8; ++trial) {
        CVector x(dimX);
        for (auto& v : x) v = Complex(g(rng), g(rng));
        const CVector jx = sys.embed(x);
        if (std::abs(sys.norm_y(jx) - vector_pnorm(x, p)) > 1e-10 * (1.0 + vector_pnorm(x, p)))
            throw ConstructionError("build_dilation: J is not an isometry");
        CVector y(static_cast<size_t>(sys.block_count) * dimX);
        for (auto& v : y) v = Complex(g(rng), g(rng));
        if (vector_pnorm(sys.project(y), p) > sys.norm_y(y) * (1.0 + 1e-10))
            throw ConstructionError("build_dilation: Q is not a contraction");
        for (int r = 0; r < n; ++r) {
            const CVector uy = sys.apply_u(r, y);
            if (std::abs(sys.norm_y(uy) - sys.norm_y(y)) > 1e-10 * (1.0 + sys.norm_y(y)))
                throw ConstructionError("build_dilation: U_" + std::to_string(r) +
                                        " is not an isometry");
        }
    }
    return sys;
}

namespace {

void enumerate_multi_indices(int n, int budget, std::vector<int>& cur,
                             std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == n) {
        out.push_back(cur);
        return;
    }
    for (int j = 0; j <= budget; ++j) {
        cur.push_back(j);
        enumerate_multi_indices(n, budget - j, cur, out);
        cur.pop_back();
    }
}

}  // namespace

DilationReport verify_joint_dilation(const DilationSystem& sys,
                                     const std::vector<CVector>& samples, double tol) {
    if (samples.empty()) throw DomainError("verify_joint_dilation: no samples");
    DilationReport rep;

    std::vector<std::vector<int>> multis;
    std::vector<int> cur;
    enumerate_multi_indices(sys.n, sys.N, cur, multis);
    std::sort(multis.begin(), multis.end());

    std::vector<CMatrix> combined;
    combined.reserve(sys.n);
    for (const auto& f : sys.families) combined.push_back(f.combined());

    for (const auto& j : multis) {
        MultiIndexRecord rec;
        rec.j = j;
        for (const auto& x : samples) {
            CVector lhs = x;
            for (int r = 0; r < sys.n; ++r)
                for (int k = 0; k < j[r]; ++k) lhs = combined[r].apply(lhs);
            CVector y = sys.embed(x);
            for (int r = 0; r < sys.n; ++r)
                for (int k = 0; k < j[r]; ++k) y = sys.apply_u(r, y);
            const CVector rhs = sys.project(y);
            double resid = 0.0;
            for (size_t c = 0; c < lhs.size(); ++c)
                resid = std::max(resid, std::abs(lhs[c] - rhs[c]));
            const double cap = tol >= 0.0 ? tol : 1e-9 * (1.0 + vector_pnorm(x, sys.p));
            rec.max_residual = std::max(rec.max_residual, resid);
            if (resid > cap) rec.pass = false;
        }
        rep.pass = rep.pass && rec.pass;
        rep.records.push_back(std::move(rec));
    }

    std::mt19937_64 rng(100);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 4; ++trial) {
        CVector x(sys.dimX);
        for (auto& v : x) v = Complex(g(rng), g(rng));
        const CVector jx = sys.embed(x);
        rep.j_isometry_residual =
            std::max(rep.j_isometry_residual, std::abs(sys.norm_y(jx) - vector_pnorm(x, sys.p)));
        CVector y(static_cast<size_t>(sys.block_count) * sys.dimX);
        for (auto& v : y) v = Complex(g(rng), g(rng));
        rep.q_contraction_excess = std::max(
            rep.q_contraction_excess, vector_pnorm(sys.project(y), sys.p) - sys.norm_y(y));
        for (int r = 0; r < sys.n; ++r) {
            const CVector uy = sys.apply_u(r, y);
            rep.u_isometry_residual =
                std::max(rep.u_isometry_residual, std::abs(sys.norm_y(uy) - sys.norm_y(y)));
            for (int s = r + 1; s < sys.n; ++s) {
                const CVector rs = sys.apply_u(r, sys.apply_u(s, y));
                const CVector sr = sys.apply_u(s, sys.apply_u(r, y));
                double d = 0.0;
                for (size_t c = 0; c < rs.size(); ++c) d = std::max(d, std::abs(rs[c] - sr[c]));
                rep.u_commutation_residual = std::max(rep.u_commutation_residual, d);
            }
        }
    }

    // the index maps touch disjoint digits for different families; verify
    // commutation exhaustively over the i tuples anyway
    int64_t ncount = 1;
    for (int r = 0; r < sys.n; ++r) ncount *= sys.N;
    for (int r = 0; r < sys.n && rep.index_maps_commute; ++r) {
        for (int s = r + 1; s < sys.n && rep.index_maps_commute; ++s) {
            auto shift = [&](int64_t idx, int fam) {
                int64_t low = 1;
                for (int t = 0; t < fam; ++t) low *= sys.N;
                const int digit = static_cast<int>((idx / low) % sys.N);
                return idx + static_cast<int64_t>(cycle_next(digit, sys.N) - digit) * low;
            };
            for (int64_t i = 0; i < ncount; ++i) {
                if (shift(shift(i, r), s) != shift(shift(i, s), r)) {
                    rep.index_maps_commute = false;
                    break;
                }
            }
        }
    }

    rep.pass = rep.pass && rep.index_maps_commute && rep.u_commutation_residual <= 1e-12 &&
               rep.j_isometry_residual <= 1e-10 && rep.q_contraction_excess <= 1e-10 &&
               rep.u_isometry_residual <= 1e-10;
    return rep;
}

Rational one_var_identity_residual(const RationalFamily& family, int N, int n) {
    if (family.ops.empty() || family.ops.size() != family.lambdas.size())
        throw ConstructionError("RationalFamily: lambdas and ops must pair up");
    if (n < 0 || n > N) throw DomainError("one_var_identity_residual: need 0 <= n <= N");
    const int m = static_cast<int>(family.ops.size());
    const int d = family.ops.front().rows();

    RMatrix lhs = RMatrix::identity(d);
    {
        RMatrix t(d, d);
        for (int j = 0; j < m; ++j) t += family.lambdas[j] * family.ops[j];
        for (int k = 0; k < n; ++k) lhs = lhs * t;
    }

    const Schedule sched = enumerate_schedule(N, m);
    RMatrix rhs(d, d);
    const Rational inv_n(1, N);
    for (const auto& alpha : sched.alphas) {
        Rational lam = 1;
        for (int k = 0; k < N; ++k) lam *= family.lambdas[alpha[k]];
        if (lam == 0) continue;
        RMatrix ksum(d, d);
        for (int k = 0; k < N; ++k) {
            // product over j = 1..n of T_{alpha(sigma^{k-1}(j))}, left to
            // right; sigma^{k-1}(j) on 0-based positions is (j + k) mod N
            RMatrix prod = RMatrix::identity(d);
            for (int j = 0; j < n; ++j) prod = prod * family.ops[alpha[(j + k) % N]];
            ksum += prod;
        }
        rhs += (lam * inv_n) * ksum;
    }

    Rational resid = 0;
    for (int i = 0; i < d; ++i)
        for (int jj = 0; jj < d; ++jj) {
            Rational diff = lhs(i, jj) - rhs(i, jj);
            if (diff < 0) diff = -diff;
            if (diff > resid) resid = diff;
        }
    return resid;
}

}  // namespace nclab::dil
