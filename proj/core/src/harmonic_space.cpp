#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "nclab/harmonic.hpp"
#include "nclab/rand.hpp"

namespace nclab::harmonic {

using opalg::AlgebraElement;
using opalg::TraceContext;

double FiniteMetricSpace::diameter() const {
    double d = 0.0;
    for (const auto& row : dist)
        for (double v : row) d = std::max(d, v);
    return d;
}

double FiniteMetricSpace::min_positive_distance() const {
    double d = 0.0;
    bool found = false;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (!found || dist[i][j] < d) {
                d = dist[i][j];
                found = true;
            }
    return found ? d : 0.0;
}

double FiniteMetricSpace::total_measure() const {
    double s = 0.0;
    for (double w : weight) s += w;
    return s;
}

std::vector<int> FiniteMetricSpace::ball(int center, double r) const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i)
        if (dist[center][i] <= r) out.push_back(i);
    return out;
}

double FiniteMetricSpace::ball_measure(int center, double r) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i)
        if (dist[center][i] <= r) s += weight[i];
    return s;
}

std::vector<double> FiniteMetricSpace::radius_grid() const {
    std::set<double> values;
    for (int i = 0; i < size(); ++i)
        for (int j = i + 1; j < size(); ++j)
            if (dist[i][j] > 0.0) values.insert(dist[i][j]);
    std::vector<double> grid(values.begin(), values.end());
    std::vector<double> out;
    for (size_t i = 0; i < grid.size(); ++i) {
        out.push_back(grid[i]);
        if (i + 1 < grid.size()) out.push_back(0.5 * (grid[i] + grid[i + 1]));
    }
    std::sort(out.begin(), out.end());
    return out;
}

SpacePtr make_space(std::vector<std::vector<double>> dist, std::vector<double> weight) {
    const int n = static_cast<int>(weight.size());
    if (static_cast<int>(dist.size()) != n)
        throw ConstructionError("make_space: distance matrix size mismatch");
    for (const auto& row : dist)
        if (static_cast<int>(row.size()) != n)
            throw ConstructionError("make_space: distance matrix not square");
    for (double w : weight)
        if (!(w > 0.0)) throw ConstructionError("make_space: weights must be positive");
    for (int i = 0; i < n; ++i) {
        if (dist[i][i] != 0.0) throw ConstructionError("make_space: nonzero diagonal");
        for (int j = 0; j < n; ++j) {
            if (dist[i][j] < 0.0) throw ConstructionError("make_space: negative distance");
            if (std::abs(dist[i][j] - dist[j][i]) > 1e-12)
                throw ConstructionError("make_space: asymmetric distances");
            if (i != j && dist[i][j] == 0.0)
                throw ConstructionError("make_space: distinct points at distance zero");
        }
    }
    if (n <= 256) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (dist[i][k] > dist[i][j] + dist[j][k] + 1e-12)
                        throw ConstructionError("make_space: triangle inequality fails");
    }
    auto s = std::make_shared<FiniteMetricSpace>();
    s->dist = std::move(dist);
    s->weight = std::move(weight);
    return s;
}

SpacePtr z_interval(int n) {
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) d[i][j] = std::abs(i - j);
    return make_space(std::move(d), std::vector<double>(n, 1.0));
}

SpacePtr z2_box(int w, int h) {
    const int n = w * h;
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    for (int a = 0; a < n; ++a) {
        const int ax = a % w, ay = a / w;
        for (int b = 0; b < n; ++b) {
            const int bx = b % w, by = b / w;
            d[a][b] = std::hypot(ax - bx, ay - by);
        }
    }
    return make_space(std::move(d), std::vector<double>(n, 1.0));
}

SpacePtr two_cluster(int n1, int n2, double gap) {
    const int n = n1 + n2;
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    auto coord = [&](int i) { return i < n1 ? static_cast<double>(i)
                                            : gap + static_cast<double>(i - n1); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) d[a][b] = std::abs(coord(a) - coord(b));
    return make_space(std::move(d), std::vector<double>(n, 1.0));
}

// ---- fields -----------------------------------------------------------------

OperatorField make_field(SpacePtr space, TraceContext ctx, std::vector<CMatrix> values) {
    if (static_cast<int>(values.size()) != space->size())
        throw DimensionError("make_field: one value per point required");
    for (const auto& v : values)
        if (v.rows() != ctx.dim || v.cols() != ctx.dim)
            throw DimensionError("make_field: value shape mismatch");
    return OperatorField{std::move(space), std::move(ctx), std::move(values)};
}

OperatorField constant_field(SpacePtr space, const AlgebraElement& value) {
    std::vector<CMatrix> vals(space->size(), value.mat);
    return make_field(std::move(space), value.ctx, std::move(vals));
}

OperatorField zero_field(SpacePtr space, const TraceContext& ctx) {
    std::vector<CMatrix> vals(space->size(), CMatrix(ctx.dim, ctx.dim));
    return make_field(std::move(space), ctx, std::move(vals));
}

OperatorField random_positive_field(SpacePtr space, int dim, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CMatrix> vals;
    vals.reserve(space->size());
    for (int i = 0; i < space->size(); ++i) vals.push_back(random_psd(dim, rng));
    return make_field(std::move(space), TraceContext::counting(dim), std::move(vals));
}

bool field_positive(const OperatorField& f, double tol) {
    for (const auto& v : f.values)
        if (!opalg::is_positive_semidefinite(v, tol)) return false;
    return true;
}

OperatorField& OperatorField::operator+=(const OperatorField& o) {
    if (space != o.space || !(ctx == o.ctx)) throw DimensionError("field add: mismatch");
    for (size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

OperatorField& OperatorField::operator-=(const OperatorField& o) {
    if (space != o.space || !(ctx == o.ctx)) throw DimensionError("field sub: mismatch");
    for (size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
}

double field_trace(const OperatorField& f) {
    double s = 0.0;
    for (int x = 0; x < f.space->size(); ++x)
        s += f.space->weight[x] * opalg::trace({f.ctx, f.values[x]}).real();
    return s;
}

namespace {

// all (singular value, trace mass) pairs of a block-diagonal field
std::vector<std::pair<double, double>> field_spectrum(const OperatorField& f) {
    std::vector<std::pair<double, double>> out;
    for (int x = 0; x < f.space->size(); ++x) {
        const EigResult e = hermitian_eig(f.values[x].adjoint() * f.values[x]);
        for (size_t j = 0; j < e.values.size(); ++j) {
            double mass = 0.0;
            for (int i = 0; i < f.dim(); ++i)
                mass += f.ctx.weight(i) * std::norm(e.vectors(i, static_cast<int>(j)));
            out.emplace_back(std::sqrt(std::max(0.0, e.values[j])),
                             f.space->weight[x] * mass);
        }
    }
    return out;
}

}  // namespace

double field_lp(const OperatorField& f, double p) {
    const auto spec = field_spectrum(f);
    if (std::isinf(p)) {
        double m = 0.0;
        for (const auto& [sigma, mass] : spec) m = std::max(m, sigma);
        return m;
    }
    double acc = 0.0;
    for (const auto& [sigma, mass] : spec) acc += mass * std::pow(sigma, p);
    return std::pow(acc, 1.0 / p);
}

double field_weak_l1(const OperatorField& f) {
    auto spec = field_spectrum(f);
    std::sort(spec.begin(), spec.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    double best = 0.0, mass = 0.0;
    for (size_t i = 0; i < spec.size(); ++i) {
        if (spec[i].first <= 1e-14) break;
        mass += spec[i].second;
        if (i + 1 < spec.size() && spec[i + 1].first >= spec[i].first - 1e-14) continue;
        best = std::max(best, spec[i].first * mass);
    }
    return best;
}

namespace {

double field_rc_side(const std::vector<OperatorField>& fs, double p, bool row) {
    const OperatorField& f0 = fs.front();
    OperatorField acc = zero_field(f0.space, f0.ctx);
    for (const auto& f : fs)
        for (int x = 0; x < f0.space->size(); ++x)
            acc.values[x] += row ? f.values[x] * f.values[x].adjoint()
                                 : f.values[x].adjoint() * f.values[x];
    // || acc^{1/2} ||_p from per-point eigendecompositions
    double out = std::isinf(p) ? 0.0 : 0.0;
    double accp = 0.0;
    for (int x = 0; x < f0.space->size(); ++x) {
        const EigResult e = hermitian_eig(acc.values[x]);
        for (size_t j = 0; j < e.values.size(); ++j) {
            double mass = 0.0;
            for (int i = 0; i < f0.dim(); ++i)
                mass += f0.ctx.weight(i) * std::norm(e.vectors(i, static_cast<int>(j)));
            const double sigma = std::sqrt(std::max(0.0, e.values[j]));
            if (std::isinf(p))
                out = std::max(out, sigma);
            else
                accp += f0.space->weight[x] * mass * std::pow(sigma, p);
        }
    }
    return std::isinf(p) ? out : std::pow(accp, 1.0 / p);
}

}  // namespace

double field_rc_row(const std::vector<OperatorField>& fs, double p) {
    return field_rc_side(fs, p, true);
}

double field_rc_col(const std::vector<OperatorField>& fs, double p) {
    return field_rc_side(fs, p, false);
}

double field_rc(const std::vector<OperatorField>& fs, double p) {
    const double r = field_rc_row(fs, p);
    const double c = field_rc_col(fs, p);
    return p >= 2.0 ? std::max(r, c) : std::min(r, c);
}

}  // namespace nclab::harmonic
