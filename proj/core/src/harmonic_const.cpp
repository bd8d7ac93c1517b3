#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "nclab/harmonic.hpp"

namespace nclab::harmonic {

SplitIntervals split_intervals(const std::vector<double>& radii, double delta) {
    if (!(delta > 1.0)) throw DomainError("split_intervals: delta > 1 required");
    for (size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw DomainError("split_intervals: radii must be positive");
        if (i > 0 && !(radii[i] > radii[i - 1]))
            throw DomainError("split_intervals: radii must be strictly increasing");
    }
    SplitIntervals out;
    auto push = [](std::vector<std::pair<double, double>>& list, double a, double b) {
        if (b > a) list.emplace_back(a, b);
    };
    for (size_t i = 0; i + 1 < radii.size(); ++i) {
        const double lo = radii[i], hi = radii[i + 1];
        // dyadic points delta^k inside [lo, hi); the upper split point may
        // sit at hi itself (closure)
        double first_dyadic = -1.0, last_dyadic = -1.0;
        int k = static_cast<int>(std::floor(std::log(lo) / std::log(delta))) - 2;
        for (;; ++k) {
            const double point = std::pow(delta, k);
            if (point > hi * (1.0 + 1e-15)) break;
            const bool in_half_open = point >= lo && point < hi;
            const bool in_closure = point >= lo && point <= hi * (1.0 + 1e-15);
            if (in_half_open && first_dyadic < 0.0) first_dyadic = point;
            if (in_closure) last_dyadic = point;
        }
        if (first_dyadic < 0.0) {
            // Case 1: no dyadic point
            push(out.short_parts, lo, hi);
            continue;
        }
        push(out.short_parts, lo, first_dyadic);
        push(out.long_parts, first_dyadic, std::min(last_dyadic, hi));
        push(out.short_parts, std::min(last_dyadic, hi), hi);
    }
    return out;
}

double bmo_norm(const OperatorField& f, const DyadicSystem& sys, BmoSide side) {
    if (sys.generations.size() < 2)
        throw DomainError("bmo_norm: system needs at least two generations");
    if (side == BmoSide::max)
        return std::max(bmo_norm(f, sys, BmoSide::row), bmo_norm(f, sys, BmoSide::column));

    const int d = f.dim();
    double sup = 0.0;
    const int gens = static_cast<int>(sys.generations.size());
    for (int gi = 0; gi + 1 < gens; ++gi) {  // top generation has no parent
        const Generation& gen = sys.generations[gi];
        const Generation& up = sys.generations[gi + 1];
        // parent averages
        std::vector<CMatrix> pavg(up.cubes.size(), CMatrix(d, d));
        for (size_t c = 0; c < up.cubes.size(); ++c) {
            double mass = 0.0;
            for (int w : up.cubes[c].members) {
                pavg[c] += f.space->weight[w] * f.values[w];
                mass += f.space->weight[w];
            }
            pavg[c] *= Complex(1.0 / mass);
        }
        for (const Cube& cube : gen.cubes) {
            CMatrix acc(d, d);
            double mass = 0.0;
            const CMatrix& ref = pavg[static_cast<size_t>(cube.parent)];
            for (int w : cube.members) {
                CMatrix diff = f.values[w] - ref;
                if (side == BmoSide::row) diff = diff.adjoint();
                acc += f.space->weight[w] * (diff.adjoint() * diff);
                mass += f.space->weight[w];
            }
            acc *= Complex(1.0 / mass);
            const EigResult e = hermitian_eig(acc);
            const double top = e.values.empty() ? 0.0 : std::max(0.0, e.values.back());
            sup = std::max(sup, std::sqrt(top));
        }
    }
    return sup;
}

namespace {

std::vector<double> breakpoints_from_split(const std::vector<double>& radii, double delta) {
    const SplitIntervals split = split_intervals(radii, delta);
    std::set<double> pts;
    for (const auto& [a, b] : split.long_parts) {
        pts.insert(a);
        pts.insert(b);
    }
    for (const auto& [a, b] : split.short_parts) {
        pts.insert(a);
        pts.insert(b);
    }
    return {pts.begin(), pts.end()};
}

}  // namespace

SqfnConstants estimate_sqfn_constants(const DyadicSystem& sys, double p, int trials,
                                      uint64_t seed, int matrix_dim,
                                      const std::vector<double>& radii_override) {
    const FiniteMetricSpace& space = *sys.space;
    SqfnConstants out;
    out.p = p;
    out.space_size = space.size();
    out.trials = trials;

    // radius ladder: subsample the grid to at most 11 radii, then refine at
    // the dyadic points
    std::vector<double> grid =
        radii_override.empty() ? space.radius_grid() : radii_override;
    std::vector<double> radii;
    if (grid.size() <= 11) {
        radii = grid;
    } else {
        for (int i = 0; i < 11; ++i)
            radii.push_back(grid[(grid.size() - 1) * i / 10]);
        radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
    }
    std::vector<double> breaks =
        radii.size() >= 2 ? breakpoints_from_split(radii, sys.delta) : radii;
    if (breaks.size() > 11) {
        std::vector<double> trimmed;
        for (size_t i = 0; i < 11; ++i)
            trimmed.push_back(breaks[(breaks.size() - 1) * i / 10]);
        trimmed.erase(std::unique(trimmed.begin(), trimmed.end()), trimmed.end());
        breaks = trimmed;
    }

    std::mt19937_64 rng(seed);
    for (int trial = 0; trial < trials; ++trial) {
        const OperatorField f = random_positive_field(sys.space, matrix_dim, rng());
        const double f_lp = field_lp(f, p);
        const double f_l1 = field_lp(f, 1.0);

        // (a) strong type: differences of averages at consecutive breakpoints
        std::vector<OperatorField> diffs;
        for (size_t i = 0; i + 1 < breaks.size(); ++i) {
            OperatorField d = hl_average(f, breaks[i + 1]);
            d -= hl_average(f, breaks[i]);
            diffs.push_back(std::move(d));
        }
        if (!diffs.empty() && f_lp > 1e-12)
            out.strong_ratio_max =
                std::max(out.strong_ratio_max, field_rc(diffs, p) / f_lp);

        // (b) weak (1,1) through exhaustive sign patterns
        if (!diffs.empty() && f_l1 > 1e-12) {
            const size_t count = std::min<size_t>(diffs.size(), 10);
            const uint64_t patterns = uint64_t(1) << count;
            // distribution data of |sum eps_i T_i f| over the product trace
            std::vector<std::pair<double, double>> spectrum;
            for (uint64_t bits = 0; bits < patterns; ++bits) {
                OperatorField s = zero_field(f.space, f.ctx);
                for (size_t i = 0; i < count; ++i) {
                    if ((bits >> i) & 1)
                        s -= diffs[i];
                    else
                        s += diffs[i];
                }
                for (int x = 0; x < space.size(); ++x) {
                    const EigResult e =
                        hermitian_eig(s.values[x].adjoint() * s.values[x]);
                    for (size_t j = 0; j < e.values.size(); ++j) {
                        double mass = 0.0;
                        for (int i2 = 0; i2 < matrix_dim; ++i2)
                            mass += f.ctx.weight(i2) *
                                    std::norm(e.vectors(i2, static_cast<int>(j)));
                        spectrum.emplace_back(
                            std::sqrt(std::max(0.0, e.values[j])),
                            space.weight[x] * mass / static_cast<double>(patterns));
                    }
                }
            }
            std::sort(spectrum.begin(), spectrum.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
            double best = 0.0, mass = 0.0;
            for (size_t i = 0; i < spectrum.size(); ++i) {
                if (spectrum[i].first <= 1e-14) break;
                mass += spectrum[i].second;
                if (i + 1 < spectrum.size() &&
                    spectrum[i + 1].first >= spectrum[i].first - 1e-14)
                    continue;
                best = std::max(best, spectrum[i].first * mass);
            }
            out.weak11_ratio_max = std::max(out.weak11_ratio_max, best / f_l1);
        }

        // (c) the long operator with unit weights over the available levels
        OperatorField lf = zero_field(f.space, f.ctx);
        bool any = false;
        for (int k = std::max(sys.n_r0 + 1, sys.k_bottom); k <= sys.k_top; ++k) {
            const double r = sys.scale_of(k);
            if (r <= 0.0) continue;
            OperatorField term = hl_average(f, r);
            term -= conditional_expectation(f, sys, k);
            lf += term;
            any = true;
        }
        if (any && f_lp > 1e-12)
            out.long_ratio_max = std::max(out.long_ratio_max, field_lp(lf, p) / f_lp);
    }
    return out;
}

}  // namespace nclab::harmonic
