#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "nclab/opalg.hpp"

namespace nclab::ergodic {

enum class AverageKind { one_sided, symmetric };

// Increasing average indices; kind selects between (1/n) sum_{j<n} T^j and
// the symmetric (1/(2n+1)) sum_{|k|<=n} T^k.
struct AverageSpec {
    AverageKind kind = AverageKind::one_sided;
    std::vector<int> indices;

    AverageSpec(AverageKind k, std::vector<int> idx);
};

// Cesaro average as a matrix on whatever space T acts on. The symmetric
// kind requires invertible T.
CMatrix cesaro_average(const CMatrix& t, int n, AverageKind kind);

// d-fold product average over a pairwise commuting tuple; throws with the
// violating pair otherwise.
CMatrix tuple_average(const std::vector<CMatrix>& ts, int n);

// One- or several-parameter semigroup in closed form.
struct Semigroup {
    int dim = 1;
    int arity = 1;
    std::function<CMatrix(const std::vector<double>&)> at;  // alpha_s
};

// Riemann-sum discretization A_{floor(k t)}(T_{1/k}) of the continuous
// average, with T_{1/k} the tuple of unit-coordinate samples at 1/k.
CMatrix semigroup_average(const Semigroup& sg, double t, int k);

// ---- square functions ---------------------------------------------------

// Commutative carrier: x in C^d with a weighted l_p norm. Exact at every p
// (row and column coincide pointwise, so the rc norm is a norm, not an
// enclosure).
double square_function_norm(const CMatrix& t, const CVector& x,
                            const std::vector<double>& weights, const AverageSpec& spec,
                            double p);

// Matrix carrier: T acts on vectorized elements (d^2 x d^2); the rc norm is
// an enclosure below p = 2.
opalg::Interval square_function_norm(const CMatrix& tmap, const opalg::AlgebraElement& x,
                                     const AverageSpec& spec, double p);

// Ball-average differences of a group action (declared below).
struct FiniteGroupAction;
opalg::Interval square_function_norm(const FiniteGroupAction& action,
                                     const opalg::AlgebraElement& x,
                                     const std::vector<int>& radii, double p);

enum class SupMode { exhaustive, greedy };

struct SupResult {
    double value = 0.0;
    std::vector<int> subsequence;
};

// Supremum of the square-function norm over increasing subsequences of
// {1..n_max}. Exhaustive mode enumerates all 2^n_max subsets (n_max <= 14);
// greedy extends best pairs and reports a lower bound.
SupResult sup_square_function(const CMatrix& t, const CVector& x,
                              const std::vector<double>& weights, double p, int n_max,
                              SupMode mode, AverageKind kind = AverageKind::one_sided);

// Independent scalar oracle at p = 2 for diagonal (normal) operators:
// eigenvalues t_j on the unit circle with masses w_j = |x_j|^2.
double scalar_oracle_sqfn(const std::vector<Complex>& eigenvalues,
                          const std::vector<double>& weights, const AverageSpec& spec);

// ---- finite group actions ------------------------------------------------

// Finite group as a multiplication table with a distinguished symmetric
// generating set; word lengths come from breadth-first search, so the ball
// of radius r is {g : |g| <= r}.
struct FiniteGroup {
    std::vector<std::vector<int>> mult;
    std::vector<int> inverse;
    std::vector<int> generators;
    std::vector<double> haar;         // per-element weight, counting by default
    std::vector<int> word_length;     // -1 when not generated

    int order() const { return static_cast<int>(mult.size()); }
    int identity = 0;

    static FiniteGroup cyclic(int q);  // generators {+1, -1}
    std::vector<int> ball(int g, double r) const;  // B(g, r) = {h : d(g,h) <= r}
    double measure(const std::vector<int>& subset) const;
    bool generators_symmetric() const;
};

FiniteGroup make_group(std::vector<std::vector<int>> mult, std::vector<int> generators,
                       std::vector<double> haar = {});

struct FiniteGroupAction {
    FiniteGroup group;
    opalg::TraceContext ctx;
    std::vector<std::function<CMatrix(const CMatrix&)>> maps;
};

// Validates the homomorphism property on all pairs (|G| <= 64) against the
// matrix-unit basis.
FiniteGroupAction make_action(FiniteGroup group, opalg::TraceContext ctx,
                              std::vector<std::function<CMatrix(const CMatrix&)>> maps);

// Translation action of G on l(G) tensor M_d: block-diagonal algebra of
// dim |G| * d, alpha_g permuting the blocks.
FiniteGroupAction translation_action(const FiniteGroup& group, int block_dim);

// (1/m(B_n)) sum_{g in B_n} haar(g) alpha_g(x) over the word ball B_n.
opalg::AlgebraElement ball_average_action(const FiniteGroupAction& action, int n,
                                          const opalg::AlgebraElement& x);

// |F g  symmetric-difference  F| / |F| in the Haar measure.
double folner_ratio(const FiniteGroup& group, const std::vector<int>& subset, int g);

struct TransferenceResult {
    double residual = 0.0;
    bool covered = true;  // AK covers h B_r
};

// Compares alpha_h(A_r x) with M_r F(h) for F(g) = chi_AK(g) alpha_g(x).
// An empty `ak` means AK = G. Reported in the Schatten p-norm.
TransferenceResult transference_identity_check(const FiniteGroupAction& action,
                                               const opalg::AlgebraElement& x, double r, int h,
                                               const std::vector<int>& ak = {}, double p = 2.0);

}  // namespace nclab::ergodic
