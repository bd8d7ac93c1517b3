#include <algorithm>
#include <cmath>
#include <random>

#include "nclab/harmonic.hpp"

namespace nclab::harmonic {

double DyadicSystem::scale_of(int k) const { return std::pow(delta, k); }

const Generation& DyadicSystem::generation(int k) const {
    if (!has_generation(k)) throw DomainError("DyadicSystem: unknown generation");
    return generations[static_cast<size_t>(k - k_bottom)];
}

int DyadicSystem::cube_index(int k, int point) const {
    return generation(k).cube_of[point];
}

namespace {

struct BuildAttempt {
    std::vector<Generation> generations;
    bool ok = true;
    std::string reason;
};

BuildAttempt try_build(const FiniteMetricSpace& space, double delta, double c0, double C0,
                       int k_bottom, int k_top, uint64_t seed) {
    BuildAttempt out;
    const int n = space.size();
    const double a0 = c0 / 3.0;
    const double C1 = 2.0 * C0;

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::mt19937_64 rng(seed);
    for (int i = n - 1; i > 0; --i)
        std::swap(order[i], order[static_cast<int>(rng() % (i + 1))]);

    // nets from the top down, nested: centers of k+1 seed the net at k
    std::vector<std::vector<int>> nets(static_cast<size_t>(k_top - k_bottom + 1));
    std::vector<int> prev_centers;
    for (int k = k_top; k >= k_bottom; --k) {
        const double sep = c0 * std::pow(delta, k);
        std::vector<int> centers = prev_centers;
        auto far_from_all = [&](int w) {
            for (int z : centers)
                if (space.dist[w][z] < sep) return false;
            return true;
        };
        for (int w : order)
            if (far_from_all(w)) centers.push_back(w);
        nets[static_cast<size_t>(k - k_bottom)] = centers;
        prev_centers = std::move(centers);
    }

    // cube assignment from the top down; a center is admissible for a point
    // when it lies in the point's parent cube
    out.generations.resize(static_cast<size_t>(k_top - k_bottom + 1));
    for (int k = k_top; k >= k_bottom; --k) {
        Generation gen;
        gen.level = k;
        gen.scale = std::pow(delta, k);
        const auto& centers = nets[static_cast<size_t>(k - k_bottom)];
        const Generation* above =
            k < k_top ? &out.generations[static_cast<size_t>(k + 1 - k_bottom)] : nullptr;

        std::vector<int> cube_of_center(n, -1);
        gen.cubes.resize(centers.size());
        for (size_t c = 0; c < centers.size(); ++c) {
            gen.cubes[c].center = centers[c];
            cube_of_center[centers[c]] = static_cast<int>(c);
        }
        gen.cube_of.assign(n, -1);
        for (int w = 0; w < n; ++w) {
            int best = -1;
            double best_d = 0.0;
            for (size_t c = 0; c < centers.size(); ++c) {
                if (above) {
                    // admissibility: center shares the parent cube of w
                    if (above->cube_of[centers[c]] != above->cube_of[w]) continue;
                }
                const double d = space.dist[w][centers[c]];
                if (best < 0 || d < best_d - 1e-15 ||
                    (std::abs(d - best_d) <= 1e-15 && centers[c] < centers[static_cast<size_t>(best)])) {
                    best = static_cast<int>(c);
                    best_d = d;
                }
            }
            if (best < 0) {
                out.ok = false;
                out.reason = "no admissible center";
                return out;
            }
            gen.cube_of[w] = best;
            gen.cubes[static_cast<size_t>(best)].members.push_back(w);
        }
        for (auto& cube : gen.cubes)
            cube.parent = above ? above->cube_of[cube.center] : -1;

        // sandwich check B(z, a0 d^k) subset Q subset B(z, C1 d^k)
        for (size_t c = 0; c < gen.cubes.size(); ++c) {
            const Cube& cube = gen.cubes[c];
            for (int w : cube.members) {
                if (space.dist[w][cube.center] > C1 * gen.scale + 1e-12) {
                    out.ok = false;
                    out.reason = "outer sandwich failed at level " + std::to_string(k);
                    return out;
                }
            }
            for (int w : space.ball(cube.center, a0 * gen.scale)) {
                if (gen.cube_of[w] != static_cast<int>(c)) {
                    out.ok = false;
                    out.reason = "inner sandwich failed at level " + std::to_string(k);
                    return out;
                }
            }
        }
        out.generations[static_cast<size_t>(k - k_bottom)] = std::move(gen);
    }
    return out;
}

}  // namespace

DyadicSystem build_dyadic_system(SpacePtr space, double delta, double c0, double C0,
                                 uint64_t seed) {
    if (!(delta > 1.0) || !(c0 > 0.0) || !(c0 < C0))
        throw DomainError("build_dyadic_system: need delta > 1 and 0 < c0 < C0");
    if (18.0 * C0 / delta > c0 + 1e-15)
        throw DomainError("build_dyadic_system: parameter inequality 18 C0 <= c0 delta violated");

    const double dmin = space->min_positive_distance();
    const double diam = space->diameter();

    // finest level: every point is a net point; coarsest: a single cube
    int k_bottom = 0;
    if (dmin > 0.0) {
        k_bottom = static_cast<int>(std::floor(std::log(dmin / c0) / std::log(delta)));
        while (c0 * std::pow(delta, k_bottom + 1) <= dmin) ++k_bottom;
        while (c0 * std::pow(delta, k_bottom) > dmin) --k_bottom;
    }
    int k_top = k_bottom + 1;
    while (c0 * std::pow(delta, k_top) <= diam) ++k_top;

    DyadicSystem sys;
    sys.space = space;
    sys.delta = delta;
    sys.c0 = c0;
    sys.C0 = C0;
    sys.a0 = c0 / 3.0;
    sys.C1 = 2.0 * C0;
    sys.k_bottom = k_bottom;
    sys.k_top = k_top;

    for (int attempt = 0; attempt < 32; ++attempt) {
        const uint64_t attempt_seed = seed + static_cast<uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL;
        BuildAttempt built = try_build(*space, delta, c0, C0, k_bottom, k_top, attempt_seed);
        if (!built.ok) continue;
        sys.generations = std::move(built.generations);
        sys.seed = seed;
        sys.retries_used = attempt;

        sys.r0 = dmin > 0.0 ? dmin : 1.0;
        sys.k2 = 0;
        while (sys.a0 * std::pow(delta, sys.k2) <= sys.r0) ++sys.k2;
        while (sys.k2 > 0 && sys.a0 * std::pow(delta, sys.k2 - 1) > sys.r0) --sys.k2;
        sys.n_r0 = 0;
        while (std::pow(delta, sys.n_r0) >= sys.r0) --sys.n_r0;
        while (std::pow(delta, sys.n_r0 + 1) < sys.r0) ++sys.n_r0;
        sys.n1 = 0;
        while (std::pow(delta, sys.n1) < 2.0 * sys.r0) ++sys.n1;
        sys.L0 = static_cast<int>(std::floor(std::log(12.0 / c0) / std::log(delta))) + 1;
        sys.L1 =
            static_cast<int>(std::floor(std::log(36.0 * sys.r0 / c0) / std::log(delta))) + 1;
        sys.n0 = std::max(sys.L1 - sys.L0, 0);
        sys.k1 = 0;
        while (2.0 * sys.C1 * std::pow(delta, sys.k1) <= 1.0) ++sys.k1;
        --sys.k1;

        const DyadicCheck check = verify_dyadic(sys);
        if (check.all()) return sys;
    }
    throw ConstructionError("build_dyadic_system: no seed produced a valid system in 32 tries");
}

DyadicCheck verify_dyadic(const DyadicSystem& sys) {
    DyadicCheck check;
    const FiniteMetricSpace& space = *sys.space;
    const int n = space.size();
    for (const Generation& gen : sys.generations) {
        // partition
        std::vector<int> seen(n, 0);
        for (size_t c = 0; c < gen.cubes.size(); ++c)
            for (int w : gen.cubes[c].members) {
                ++seen[w];
                if (gen.cube_of[w] != static_cast<int>(c)) check.partition = false;
            }
        for (int w = 0; w < n; ++w)
            if (seen[w] != 1) check.partition = false;

        // sandwich
        for (size_t c = 0; c < gen.cubes.size(); ++c) {
            const Cube& cube = gen.cubes[c];
            for (int w : cube.members)
                if (space.dist[w][cube.center] > sys.C1 * gen.scale + 1e-12)
                    check.sandwich = false;
            for (int w : space.ball(cube.center, sys.a0 * gen.scale))
                if (gen.cube_of[w] != static_cast<int>(c)) check.sandwich = false;
        }
    }
    // nesting and unique parents across all pairs of generations
    for (int ka = sys.k_bottom; ka <= sys.k_top; ++ka) {
        const Generation& fine = sys.generation(ka);
        for (int kb = ka + 1; kb <= sys.k_top; ++kb) {
            const Generation& coarse = sys.generation(kb);
            for (const Cube& cube : fine.cubes) {
                int target = -1;
                for (int w : cube.members) {
                    if (target < 0) target = coarse.cube_of[w];
                    if (coarse.cube_of[w] != target) check.nesting = false;
                }
            }
        }
        if (ka < sys.k_top) {
            const Generation& up = sys.generation(ka + 1);
            for (const Cube& cube : fine.cubes) {
                if (cube.parent < 0 || cube.parent >= static_cast<int>(up.cubes.size()))
                    check.unique_parent = false;
                else
                    for (int w : cube.members)
                        if (up.cube_of[w] != cube.parent) check.unique_parent = false;
            }
        }
    }
    return check;
}

DoublingResult doubling_constant(const FiniteMetricSpace& space) {
    DoublingResult out;
    out.constant = 1;
    const std::vector<double> grid = space.radius_grid();
    for (int h = 0; h < space.size(); ++h) {
        for (double r : grid) {
            std::vector<int> target = space.ball(h, r);
            std::vector<bool> covered(space.size(), false);
            int remaining = static_cast<int>(target.size());
            std::vector<int> chosen;
            while (remaining > 0) {
                int best = -1, best_gain = -1;
                for (int z = 0; z < space.size(); ++z) {
                    int gain = 0;
                    for (int w : target)
                        if (!covered[w] && space.dist[z][w] <= r / 2.0) ++gain;
                    if (gain > best_gain) {
                        best_gain = gain;
                        best = z;
                    }
                }
                chosen.push_back(best);
                for (int w : target)
                    if (!covered[w] && space.dist[best][w] <= r / 2.0) {
                        covered[w] = true;
                        --remaining;
                    }
            }
            if (static_cast<int>(chosen.size()) > out.constant) {
                out.constant = static_cast<int>(chosen.size());
                out.worst_center = h;
                out.worst_radius = r;
                out.cover_centers = chosen;
            }
        }
    }
    return out;
}

double annular_decay_fit(const FiniteMetricSpace& space, double eps, double r0) {
    if (!(eps > 0.0 && eps <= 1.0)) throw DomainError("annular_decay_fit: eps in (0,1]");
    if (!(r0 > 0.0)) throw DomainError("annular_decay_fit: r0 > 0");
    const std::vector<double> grid = space.radius_grid();
    const double diam = space.diameter();
    double k = 0.0;
    for (int h = 0; h < space.size(); ++h) {
        for (double r : grid) {
            if (r <= r0 || r > diam) continue;
            const double base = space.ball_measure(h, r);
            for (double s : grid) {
                if (s <= 0.0 || s > r) continue;
                const double grown = space.ball_measure(h, r + s);
                const double ratio = (grown - base) / (std::pow(s / r, eps) * base);
                k = std::max(k, ratio);
            }
        }
    }
    return k;
}

OperatorField conditional_expectation(const OperatorField& f, const DyadicSystem& sys, int k) {
    const Generation& gen = sys.generation(k);
    OperatorField out = zero_field(f.space, f.ctx);
    for (const Cube& cube : gen.cubes) {
        CMatrix avg(f.dim(), f.dim());
        double mass = 0.0;
        for (int w : cube.members) {
            avg += f.space->weight[w] * f.values[w];
            mass += f.space->weight[w];
        }
        avg *= Complex(1.0 / mass);
        for (int w : cube.members) out.values[w] = avg;
    }
    return out;
}

OperatorField hl_average(const OperatorField& f, double r) {
    if (!(r > 0.0)) throw DomainError("hl_average: r > 0 required");
    OperatorField out = zero_field(f.space, f.ctx);
    for (int h = 0; h < f.space->size(); ++h) {
        CMatrix acc(f.dim(), f.dim());
        double mass = 0.0;
        for (int g : f.space->ball(h, r)) {
            acc += f.space->weight[g] * f.values[g];
            mass += f.space->weight[g];
        }
        out.values[h] = (1.0 / mass) * acc;
    }
    return out;
}

double hl_l1_norm(const FiniteMetricSpace& space, double r) {
    // atoms at g: sup_g sum_{h in B(g,r)} m(h) / m(B(h,r))
    double worst = 0.0;
    for (int g = 0; g < space.size(); ++g) {
        double s = 0.0;
        for (int h : space.ball(g, r)) s += space.weight[h] / space.ball_measure(h, r);
        worst = std::max(worst, s);
    }
    return worst;
}

double hl_linf_norm(const FiniteMetricSpace& space, double r) {
    // convex averaging: row sums are exactly one
    double worst = 0.0;
    for (int h = 0; h < space.size(); ++h) {
        double s = 0.0;
        for (int g : space.ball(h, r)) s += space.weight[g];
        worst = std::max(worst, s / space.ball_measure(h, r));
    }
    return worst;
}

}  // namespace nclab::harmonic
