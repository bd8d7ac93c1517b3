#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nclab/matrix.hpp"
#include "nclab/rational.hpp"

namespace nclab::dil {

// All schedule functions alpha : [N] -> [m], 0-based digits, enumerated
// lexicographically with alpha(0) most significant.
struct Schedule {
    int N = 1;
    int m = 1;
    std::vector<std::vector<int>> alphas;
};

Schedule enumerate_schedule(int N, int m);  // caps m^N at 1e6

// N-cycle sigma(k) = k+1 mod N on 0-based positions.
inline int cycle_next(int k, int N) { return (k + 1) % N; }

// Convex combination sum lambda_j T_j of isometries of l_p^dim.
struct ConvexFamily {
    std::vector<double> lambdas;
    std::vector<CMatrix> ops;

    int dim() const { return ops.empty() ? 0 : ops.front().rows(); }
    CMatrix combined() const;  // sum lambda_j T_j
};

// Validates sum(lambda) = 1 and that every member is an isometry of
// l_p^dim, probed on the basis plus 32 seeded random vectors.
void validate_family(const ConvexFamily& family, double p, uint64_t seed = 12345);

struct DilationDimensions {
    BigInt blocks;    // N^n * m^(nN)
    BigInt total;     // blocks * dimX
    bool feasible = true;  // total <= 1e7
};

DilationDimensions dilation_dimensions(int n, int N, int m, int dimX);

// The dilation space carrier: block vectors indexed by
// (alpha_1..alpha_n, i_1..i_n), each block a vector of length dimX. The
// linearized block id packs the alpha ranks above the i digits, both
// little-endian across families:
//   id = (sum_r rank(alpha_r) (m^N)^(r-1)) * N^n + sum_r i_r N^(r-1)
struct DilationSystem {
    int n = 1;
    int N = 1;
    int m = 1;
    double p = 2.0;
    double q = 2.0;
    int dimX = 1;
    std::vector<ConvexFamily> families;
    Schedule schedule;
    std::vector<std::vector<double>> big_lambda;  // [family][alpha rank]
    int64_t block_count = 0;

    int64_t block_id(const std::vector<int>& alpha_ranks, const std::vector<int>& is) const;

    CVector embed(const CVector& x) const;           // J
    CVector project(const CVector& y) const;         // Q
    CVector apply_u(int r, const CVector& y) const;  // U_r, matrix-free

    double norm_y(const CVector& y) const;  // flat l_p norm of the block vector
};

// Builds the system and verifies on construction: J isometry, Q
// contraction, U_r isometries, cross-family commutation of the inputs.
DilationSystem build_dilation(std::vector<ConvexFamily> families, int N, double p,
                              uint64_t seed = 777);

struct MultiIndexRecord {
    std::vector<int> j;
    double max_residual = 0.0;
    bool pass = true;
};

struct DilationReport {
    std::vector<MultiIndexRecord> records;  // sorted by multi-index
    double u_commutation_residual = 0.0;
    bool index_maps_commute = true;
    double j_isometry_residual = 0.0;
    double q_contraction_excess = 0.0;  // max(0, ||Qy|| - ||y||) observed
    double u_isometry_residual = 0.0;
    bool pass = true;
};

// Checks T_1^{j_1} ... T_n^{j_n} x = Q U_1^{j_1} ... U_n^{j_n} J x for every
// multi-index with sum <= N over the given samples, plus the structural
// residuals above. tol < 0 selects the default 1e-9 * (1 + ||x||).
DilationReport verify_joint_dilation(const DilationSystem& system,
                                     const std::vector<CVector>& samples, double tol = -1.0);

// ----- exact rational backend ------------------------------------------

struct RationalFamily {
    std::vector<Rational> lambdas;
    std::vector<RMatrix> ops;
};

// Residual of T^n = sum_alpha (Lambda(alpha)/N) sum_k prod_j T_alpha(...)
// as an exact rational; zero iff the identity holds on the nose.
Rational one_var_identity_residual(const RationalFamily& family, int N, int n);

}  // namespace nclab::dil
