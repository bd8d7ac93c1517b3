#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "nclab/opalg.hpp"

namespace nclab::harmonic {

// ---- finite metric measure space -------------------------------------------

struct FiniteMetricSpace {
    std::vector<std::vector<double>> dist;
    std::vector<double> weight;

    int size() const { return static_cast<int>(weight.size()); }
    double diameter() const;
    double min_positive_distance() const;  // 0 on a single point
    double total_measure() const;

    std::vector<int> ball(int center, double r) const;  // closed ball
    double ball_measure(int center, double r) const;

    // distinct positive distances plus midpoints, ascending; the grid on
    // which every "all r > 0" claim is evaluated
    std::vector<double> radius_grid() const;
};

using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

// Validates symmetry, zero diagonal, positivity off the diagonal and the
// triangle inequality (all triples, up to 256 points).
SpacePtr make_space(std::vector<std::vector<double>> dist, std::vector<double> weight);

SpacePtr z_interval(int n);                       // {0 .. n-1}, unit weights
SpacePtr z2_box(int w, int h);                    // euclidean metric
SpacePtr two_cluster(int n1, int n2, double gap); // two intervals, far apart

// ---- operator fields --------------------------------------------------------

// A map point -> matrix over one trace context; an element of the
// block-diagonal function algebra over the space.
struct OperatorField {
    SpacePtr space;
    opalg::TraceContext ctx;
    std::vector<CMatrix> values;

    int dim() const { return ctx.dim; }
    OperatorField& operator+=(const OperatorField& o);
    OperatorField& operator-=(const OperatorField& o);
    friend OperatorField operator+(OperatorField a, const OperatorField& b) { return a += b; }
    friend OperatorField operator-(OperatorField a, const OperatorField& b) { return a -= b; }
};

OperatorField make_field(SpacePtr space, opalg::TraceContext ctx, std::vector<CMatrix> values);
OperatorField constant_field(SpacePtr space, const opalg::AlgebraElement& value);
OperatorField zero_field(SpacePtr space, const opalg::TraceContext& ctx);
OperatorField random_positive_field(SpacePtr space, int dim, uint64_t seed);
bool field_positive(const OperatorField& f, double tol = 1e-9);

// phi = sum_x m(x) tau(.(x)); the L_p data of the block algebra
double field_trace(const OperatorField& f);                  // phi(f), real part
double field_lp(const OperatorField& f, double p);           // ||f||_p, p in [1, inf]
double field_weak_l1(const OperatorField& f);                // ||f||_{1,infty}
double field_rc_row(const std::vector<OperatorField>& fs, double p);
double field_rc_col(const std::vector<OperatorField>& fs, double p);
// max(row, col) for p >= 2, min(row, col) as the cheap decomposition upper
// bound below 2 (sweep surrogate; see opalg::rc_norm for the enclosure)
double field_rc(const std::vector<OperatorField>& fs, double p);

// ---- dyadic systems ---------------------------------------------------------

struct Cube {
    int center = 0;
    std::vector<int> members;
    int parent = -1;  // cube index in the generation above; -1 at the top
};

struct Generation {
    int level = 0;      // the exponent k
    double scale = 1.0; // delta^k
    std::vector<Cube> cubes;
    std::vector<int> cube_of;  // point -> cube index
};

struct DyadicSystem {
    SpacePtr space;
    double delta = 2.0, c0 = 1.0, C0 = 2.0;
    double a0 = 1.0 / 3.0, C1 = 4.0;  // a0 = c0/3, C1 = 2 C0
    std::vector<Generation> generations;  // ascending level, finest first
    int k_bottom = 0, k_top = 0;
    uint64_t seed = 0;
    int retries_used = 0;

    // derived thresholds
    double r0 = 1.0;  // min positive distance
    int k2 = 0;       // min{k : a0 delta^k > r0}
    int n_r0 = 0;     // delta^{n_r0} < r0 <= delta^{n_r0 + 1}
    int n1 = 0;       // min{n >= 0 : delta^n >= 2 r0}
    int L0 = 0, L1 = 0, n0 = 0, k1 = 0;

    double scale_of(int k) const;
    const Generation& generation(int k) const;
    bool has_generation(int k) const { return k >= k_bottom && k <= k_top; }
    int cube_index(int k, int point) const;
};

// Greedy nested nets over a seeded point order, top-down cube assignment to
// the nearest admissible center; retries with fresh seeds (up to 32) when
// the ball sandwich fails.
DyadicSystem build_dyadic_system(SpacePtr space, double delta, double c0, double C0,
                                 uint64_t seed);

struct DyadicCheck {
    bool partition = true;
    bool nesting = true;
    bool unique_parent = true;
    bool sandwich = true;
    bool all() const { return partition && nesting && unique_parent && sandwich; }
};

DyadicCheck verify_dyadic(const DyadicSystem& sys);

// ---- averages over a space --------------------------------------------------

struct DoublingResult {
    int constant = 1;
    int worst_center = 0;
    double worst_radius = 0.0;
    std::vector<int> cover_centers;
};

// Smallest D found by greedy covering of every ball B(h, r) with balls of
// radius r/2, over the whole (center, radius) grid.
DoublingResult doubling_constant(const FiniteMetricSpace& space);

// Smallest K with m(B(h,r+s)) - m(B(h,r)) <= K (s/r)^eps m(B(h,r)) over the
// finite grid of radii above r0.
double annular_decay_fit(const FiniteMetricSpace& space, double eps, double r0);

OperatorField conditional_expectation(const OperatorField& f, const DyadicSystem& sys, int k);
OperatorField hl_average(const OperatorField& f, double r);

// exact operator norms of M_r on the block algebra
double hl_l1_norm(const FiniteMetricSpace& space, double r);
double hl_linf_norm(const FiniteMetricSpace& space, double r);

// ---- Cuculescu and Calderon-Zygmund ----------------------------------------

struct CuculescuResult {
    double lambda = 1.0;
    int m_lambda = 0;  // largest generation with a cube average above lambda
    // aligned with sys.generations; one projection per cube
    std::vector<std::vector<CMatrix>> q_cube;
    // p_Q = q_parent - q_Q per cube (virtual root projection is 1)
    std::vector<std::vector<CMatrix>> p_cube;
    OperatorField q;  // the meet
    double monotonicity_residual = 0.0;   // max over points of neg part of q_{k+1}-q_k
    double compression_excess = 0.0;      // max eig of q f_k q - lambda q over cubes
    double qfq_norm_excess = 0.0;         // max eig of q f_k q - lambda
    double phi_complement = 0.0;          // phi(1 - q)
};

CuculescuResult cuculescu(const OperatorField& f, const DyadicSystem& sys, double lambda);

struct CZResult {
    double lambda = 1.0;
    OperatorField g, b_d, b_off;
    std::vector<OperatorField> b_d_k, b_off_k;  // generation slices
    double decomposition_residual = 0.0;  // max entry of f - g - b_d - b_off
    double atom_mean_residual = 0.0;      // max over atoms of the integral norm
    double f_l1 = 0.0, g_l1 = 0.0, g_l2_sq = 0.0, b_d_l1 = 0.0;
};

CZResult cz_decompose(const OperatorField& f, const DyadicSystem& sys,
                      const CuculescuResult& cu);
CZResult cz_decompose(const OperatorField& f, const DyadicSystem& sys, double lambda);

struct ZetaResult {
    OperatorField zeta;
    double phi_complement = 0.0;  // phi(1 - zeta)
    double stated_bound = 0.0;    // 2 (K+1) (4 C1 delta / a0)^eps ||f||_1 / lambda
    double enlargement_ratio = 0.0;  // max m(Q~)/m(Q) over contributing cubes
    double vanishing_residual = 0.0;  // ball / cube localized identities
    double expectation_residual = 0.0;  // zeta E_n b zeta for n above the threshold
    int n2 = 0;
    double eps = 1.0;
    double decay_k = 0.0;
};

// Builds the projection field killing the enlarged bad cubes and checks the
// exact vanishing identities for both bad parts. eps feeds the annular decay
// fit at r0 = min positive distance.
ZetaResult zeta_projection(const OperatorField& f, const CuculescuResult& cu,
                           const CZResult& cz, const DyadicSystem& sys, double eps = 1.0);

// ---- interval splitting and constants ----------------------------------------

struct SplitIntervals {
    std::vector<std::pair<double, double>> long_parts;
    std::vector<std::pair<double, double>> short_parts;
};

// Splits each [r_i, r_{i+1}) at its minimal and maximal contained dyadic
// points delta^k; empty parts are dropped.
SplitIntervals split_intervals(const std::vector<double>& radii, double delta);

struct SqfnConstants {
    double p = 2.0;
    int space_size = 0;
    int trials = 0;
    double strong_ratio_max = 0.0;
    double weak11_ratio_max = 0.0;
    double long_ratio_max = 0.0;
};

SqfnConstants estimate_sqfn_constants(const DyadicSystem& sys, double p, int trials,
                                      uint64_t seed, int matrix_dim = 2,
                                      const std::vector<double>& radii_override = {});

// ---- martingale BMO norms -----------------------------------------------------

enum class BmoSide { row, column, max };

// sup over cubes with a parent of || cube-average of |f - f_parent|^2 ||^{1/2};
// the row side applies the same to f*.
double bmo_norm(const OperatorField& f, const DyadicSystem& sys, BmoSide side);

}  // namespace nclab::harmonic
