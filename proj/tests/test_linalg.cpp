#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "nclab/eig.hpp"
#include "nclab/matrix.hpp"

using namespace nclab;

namespace {

CMatrix random_hermitian(int n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i) {
        a(i, i) = g(rng);
        for (int j = i + 1; j < n; ++j) {
            a(i, j) = Complex(g(rng), g(rng));
            a(j, i) = std::conj(a(i, j));
        }
    }
    return a;
}

}  // namespace

TEST_CASE("jacobi eig reconstructs random hermitian matrices") {
    for (int n : {1, 2, 3, 5, 8, 16, 33}) {
        const CMatrix a = random_hermitian(n, 1000 + n);
        const EigResult e = hermitian_eig(a);
        // A V = V diag
        CMatrix av = a * e.vectors;
        CMatrix vd = e.vectors;
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) vd(i, j) *= e.values[j];
        CHECK(max_abs_diff(av, vd) < 1e-10 * std::max(1.0, a.max_abs()));
        // V unitary
        CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(n)) < 1e-11);
        // ascending
        for (int j = 1; j < n; ++j) CHECK(e.values[j - 1] <= e.values[j] + 1e-12);
    }
}

TEST_CASE("eig handles diagonal and rank-deficient input") {
    CMatrix d = CMatrix::diag({Complex(3.0), Complex(-1.0), Complex(0.0)});
    const EigResult e = hermitian_eig(d);
    CHECK(e.values[0] == doctest::Approx(-1.0));
    CHECK(e.values[1] == doctest::Approx(0.0));
    CHECK(e.values[2] == doctest::Approx(3.0));
}

TEST_CASE("modulus of a nilpotent matrix") {
    CMatrix x(2, 2, {0.0, -2.0, 0.0, 0.0});
    const CMatrix m = modulus_matrix(x);
    CMatrix want(2, 2, {0.0, 0.0, 0.0, 2.0});
    CHECK(max_abs_diff(m, want) < 1e-12);
}

TEST_CASE("polar partial isometry recovers the unitary factor") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix x(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) x(i, j) = Complex(g(rng), g(rng));
    const CMatrix u = polar_partial_isometry(x);
    const CMatrix um = u * modulus_matrix(x);
    CHECK(max_abs_diff(um, x) < 1e-9);
    CHECK(max_abs_diff(u.adjoint() * u, CMatrix::identity(3)) < 1e-9);
}

TEST_CASE("projection meet and join on commuting diagonal projections") {
    CMatrix p = CMatrix::diag({1.0, 1.0, 0.0});
    CMatrix q = CMatrix::diag({0.0, 1.0, 1.0});
    CHECK(max_abs_diff(projection_meet({p, q}), CMatrix::diag({0.0, 1.0, 0.0})) < 1e-10);
    CHECK(max_abs_diff(projection_join({p, q}), CMatrix::identity(3)) < 1e-10);
}

TEST_CASE("inverse") {
    CMatrix a(2, 2, {1.0, 2.0, 3.0, 4.0});
    CHECK(max_abs_diff(a * inverse(a), CMatrix::identity(2)) < 1e-12);
    CHECK_THROWS_AS(inverse(CMatrix::zero(2)), DomainError);
}

TEST_CASE("jacobi accuracy at the dim-64 ceiling") {
    const int n = 64;
    const CMatrix a = random_hermitian(n, 4096);
    const EigResult e = hermitian_eig(a);
    // reconstruction residual relative to the matrix scale
    CMatrix recon(n, n);
    for (int j = 0; j < n; ++j)
        for (int r = 0; r < n; ++r) {
            const Complex vr = e.vectors(r, j) * e.values[j];
            for (int c = 0; c < n; ++c) recon(r, c) += vr * std::conj(e.vectors(c, j));
        }
    const double rel = max_abs_diff(recon, a) / a.max_abs();
    CHECK(rel < 1e-12);
    CHECK(max_abs_diff(e.vectors.adjoint() * e.vectors, CMatrix::identity(n)) < 1e-11);
}

TEST_CASE("eig rejects non-hermitian input") {
    CMatrix bad(2, 2, {0.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(hermitian_eig(bad), DomainError);
}
