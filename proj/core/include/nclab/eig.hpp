#pragma once

#include <functional>
#include <vector>

#include "nclab/matrix.hpp"

namespace nclab {

// Eigendecomposition a = V diag(values) V* of a Hermitian matrix,
// eigenvalues ascending, V unitary with eigenvectors in columns.
struct EigResult {
    std::vector<double> values;
    CMatrix vectors;
};

// Cyclic Jacobi for Hermitian matrices. Dependency-free and deterministic;
// relative accuracy around 1e-12 up to dim 64, which is all this project
// ever asks of it. Throws DomainError if the input is not Hermitian within
// `hermitian_tol` relative to its sup norm.
EigResult hermitian_eig(const CMatrix& a, double hermitian_tol = 1e-8);

// V f(diag) V* for a Hermitian a.
CMatrix hermitian_function(const CMatrix& a, const std::function<double(double)>& f);

// Singular values (descending) of a general square matrix, via the
// eigenvalues of a*a.
std::vector<double> singular_values(const CMatrix& a);

// Positive square root of a*a.
CMatrix modulus_matrix(const CMatrix& a);

// Polar factor u with a = u|a|, a partial isometry supported on range(|a|).
// Singular directions below `rank_tol_rel * sigma_max` are dropped.
CMatrix polar_partial_isometry(const CMatrix& a, double rank_tol_rel = 1e-9);

// Projection onto the span of eigenvectors of Hermitian `a` with eigenvalue
// in (lo, hi]; comparisons are carried out with absolute slack `slack`.
CMatrix eig_interval_projection(const CMatrix& a, double lo, double hi, double slack);

// Orthogonal projection onto the common range of a family of projections
// (the lattice meet), computed as the kernel of sum(1 - p_i).
CMatrix projection_meet(const std::vector<CMatrix>& ps, double tol = 1e-9);

// Orthogonal projection onto the joint range span of a family of
// projections (the lattice join), computed as the support of sum(p_i).
CMatrix projection_join(const std::vector<CMatrix>& ps, double tol = 1e-9);

}  // namespace nclab
