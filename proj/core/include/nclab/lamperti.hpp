#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nclab/opalg.hpp"

namespace nclab::lamperti {

using opalg::AlgebraElement;
using opalg::TraceContext;

enum class JordanKind { conjugation, transpose_conjugation, point_permutation };

// Jordan *-homomorphism in one of the two matrix forms (x -> u x u* or
// x -> u x^T u*) or as a point permutation of the diagonal algebra. The
// permutation form carries a 0/1 support mask so that degenerate operators
// (zero columns in the commutative class) still fit the factorization.
struct JordanDescriptor {
    JordanKind kind = JordanKind::conjugation;
    CMatrix u;                  // unitary, matrix kinds only
    std::vector<int> pi;        // 0-based permutation, point_permutation only
    std::vector<double> mask;   // 0/1 per point; empty = full support

    static JordanDescriptor identity_conjugation(int dim);
    static JordanDescriptor conjugation(CMatrix u);
    static JordanDescriptor transpose_conjugation(CMatrix u);
    static JordanDescriptor point_permutation(std::vector<int> pi,
                                              std::vector<double> mask = {});

    int dim() const;
    CMatrix apply(const CMatrix& x) const;
    CMatrix unit() const;  // J(1)
};

// T = w b J with w a partial isometry, b positive commuting with the image
// of J, and J a Jordan *-homomorphism.
struct LampertiOperator {
    TraceContext ctx;
    AlgebraElement w;
    AlgebraElement b;
    JordanDescriptor jordan;

    AlgebraElement apply(const AlgebraElement& x) const;
    CMatrix map_matrix() const;  // d^2 x d^2 matrix on vectorized elements
};

// Validates the three structural invariants and returns the operator.
// Throws ConstructionError naming the failed item.
LampertiOperator make_lamperti(AlgebraElement w, AlgebraElement b, JordanDescriptor j);

struct LampertiWitness {
    bool lamperti = true;
    CMatrix e, f;        // violating orthogonal projection pair when !lamperti
    double residual = 0.0;
};

// Tests (Te)*(Tf) = 0 and (Te)(Tf)* = 0 over all diagonal projection pairs
// plus `budget` random orthogonal projection pairs. strict mode additionally
// runs all rank-1 pairs from a random orthonormal basis. With `commutative`
// set, the map is understood as acting on the diagonal subalgebra and the
// random pairs are disjoint coordinate subsets.
LampertiWitness is_lamperti(const CMatrix& map_matrix, const TraceContext& ctx,
                            int budget = 64, bool strict = false,
                            uint64_t seed = 7321, double tol = 1e-9,
                            bool commutative = false);

// Convenience overload picking the sampling model from the Jordan kind.
LampertiWitness is_lamperti(const LampertiOperator& t, int budget = 64, bool strict = false,
                            uint64_t seed = 7321, double tol = 1e-9);

// Extraction for the weighted-permutation class: the input acts on the
// diagonal algebra, given as a d x d matrix A with T(e_i) = sum_j A(j,i) e_j.
// Each column must be a scalar multiple of one basis indicator.
LampertiOperator lamperti_decompose(const CMatrix& diag_action, const TraceContext& ctx,
                                    double tol = 1e-10);

// |T| = (s(b), b, J)
LampertiOperator lamperti_modulus(const LampertiOperator& t);

// S o T with parts (w_S J_S(w_T), b_S J_S(b_T), J_S o J_T); verified on a
// basis to 1e-10, errors if the composition leaves the supported class.
LampertiOperator lamperti_compose(const LampertiOperator& s, const LampertiOperator& t);

struct ModulusPower {
    double mu = 1.0;
    double gamma = 1.0;
    double p = 1.0;
    ModulusPower(double mu_, double gamma_, double p_);
};

// alpha^(mu): parts (s(b), b^mu, J); requires T positive (w = s(b)).
LampertiOperator lamperti_power_mu(const LampertiOperator& t, const ModulusPower& mp);

// Weighted permutation as a matrix acting on the diagonal coordinates.
CMatrix weighted_permutation_matrix(const LampertiOperator& t);

// sup_{||x||_p = 1} ||A x||_p over (C^d, weighted l_p). Exact closed forms at
// p = 1 and p = infinity; nonlinear power ascent with `restarts` random
// starts otherwise.
double vector_operator_pnorm(const CMatrix& a, const std::vector<double>& weights, double p,
                             int restarts = 16, uint64_t seed = 91);
double vector_operator_pnorm(const CMatrix& a, double p, int restarts = 16,
                             uint64_t seed = 91);

// Closed form max_i b_i for weighted permutations under the counting trace.
double weighted_permutation_pnorm(const LampertiOperator& t);

}  // namespace nclab::lamperti
