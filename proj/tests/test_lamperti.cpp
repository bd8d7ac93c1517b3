#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "nclab/lamperti.hpp"
#include "nclab/rand.hpp"

using namespace nclab;
using namespace nclab::lamperti;
using opalg::AlgebraElement;
using opalg::TraceContext;

namespace {

// random weighted permutation with strictly positive weights
LampertiOperator random_weighted_permutation(int n, std::mt19937_64& rng, bool with_phases = true) {
    std::uniform_real_distribution<double> mag(0.2, 3.0);
    std::uniform_real_distribution<double> ang(0.0, 2.0 * 3.14159265358979);
    const TraceContext ctx = TraceContext::counting(n);
    CVector w(n), b(n);
    for (int i = 0; i < n; ++i) {
        b[i] = mag(rng);
        w[i] = with_phases ? std::exp(Complex(0.0, ang(rng))) : Complex(1.0);
    }
    return make_lamperti({ctx, CMatrix::diag(w)}, {ctx, CMatrix::diag(b)},
                         JordanDescriptor::point_permutation(random_permutation(n, rng)));
}

AlgebraElement diag_elem(const TraceContext& ctx, CVector d) {
    return {ctx, CMatrix::diag(d)};
}

}  // namespace

TEST_CASE("make_lamperti basics and the d=2 swap example") {
    const TraceContext c2 = TraceContext::counting(2);
    // identity operator
    LampertiOperator id = make_lamperti({c2, CMatrix::identity(2)}, {c2, CMatrix::identity(2)},
                                        JordanDescriptor::identity_conjugation(2));
    AlgebraElement x{c2, CMatrix(2, 2, {1.0, 2.0, 3.0, 4.0})};
    CHECK(max_abs_diff(id.apply(x).mat, x.mat) < 1e-14);

    // T(f)(1) = -2 f(2), T(f)(2) = 3 f(1)
    LampertiOperator t = make_lamperti(diag_elem(c2, {-1.0, 1.0}), diag_elem(c2, {2.0, 3.0}),
                                       JordanDescriptor::point_permutation({1, 0}));
    const AlgebraElement e1 = diag_elem(c2, {1.0, 0.0});
    const AlgebraElement e2 = diag_elem(c2, {0.0, 1.0});
    CHECK(max_abs_diff(t.apply(e2).mat, CMatrix::diag({-2.0, 0.0})) < 1e-14);
    CHECK(max_abs_diff(t.apply(e1).mat, CMatrix::diag({0.0, 3.0})) < 1e-14);

    // violating item (1): b supported on one point but w*w = 1
    CHECK_THROWS_AS(make_lamperti(diag_elem(c2, {1.0, 1.0}), diag_elem(c2, {1.0, 0.0}),
                                  JordanDescriptor::point_permutation({0, 1})),
                    ConstructionError);
}

TEST_CASE("is_lamperti detects and certifies") {
    const TraceContext c2 = TraceContext::counting(2);
    std::mt19937_64 rng(11);

    LampertiOperator wp = random_weighted_permutation(4, rng);
    CHECK(is_lamperti(wp).lamperti);

    // unitary conjugation
    const TraceContext c3 = TraceContext::counting(3);
    LampertiOperator conj =
        make_lamperti({c3, CMatrix::identity(3)}, {c3, CMatrix::identity(3)},
                      JordanDescriptor::conjugation(random_unitary(3, rng)));
    CHECK(is_lamperti(conj, 64, true).lamperti);

    // x -> tau(x)/d * 1 is not Lamperti; diagonal units already witness it
    const int d = 2;
    CMatrix avg(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) avg(j * d + j, i * d + i) = 1.0 / d;
    const LampertiWitness w = is_lamperti(avg, c2);
    CHECK_FALSE(w.lamperti);
    CHECK(w.e.max_abs() == doctest::Approx(1.0));
    CHECK((w.e * w.f).max_abs() < 1e-14);
}

TEST_CASE("lamperti_decompose on the weighted-permutation class") {
    const TraceContext c2 = TraceContext::counting(2);
    // action matrix A with T(e_1) = 3 e_2, T(e_2) = -2 e_1
    CMatrix a(2, 2, {0.0, -2.0, 3.0, 0.0});
    LampertiOperator t = lamperti_decompose(a, c2);
    CHECK(max_abs_diff(t.w.mat, CMatrix::diag({-1.0, 1.0})) < 1e-12);
    CHECK(max_abs_diff(t.b.mat, CMatrix::diag({2.0, 3.0})) < 1e-12);
    CHECK(t.jordan.pi == std::vector<int>{1, 0});

    // identity and zero
    LampertiOperator tid = lamperti_decompose(CMatrix::identity(3), TraceContext::counting(3));
    CHECK(max_abs_diff(tid.w.mat, CMatrix::identity(3)) < 1e-12);
    LampertiOperator tz = lamperti_decompose(CMatrix::zero(3), TraceContext::counting(3));
    CHECK(tz.w.mat.max_abs() < 1e-12);
    CHECK(tz.b.mat.max_abs() < 1e-12);
    CHECK(max_abs_diff(tz.jordan.unit(), CMatrix::zero(3)) < 1e-12);

    // mapping an indicator to a combination is rejected
    CMatrix bad(2, 2, {1.0, 0.0, 1.0, 0.0});
    CHECK_THROWS_AS(lamperti_decompose(bad, c2), DomainError);

    // round trip on random instances
    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 20; ++rep) {
        const LampertiOperator src = random_weighted_permutation(5, rng);
        const LampertiOperator dec = lamperti_decompose(weighted_permutation_matrix(src), src.ctx);
        CHECK(max_abs_diff(weighted_permutation_matrix(dec), weighted_permutation_matrix(src)) <
              1e-10);
    }
}

TEST_CASE("lamperti modulus") {
    const TraceContext c2 = TraceContext::counting(2);
    LampertiOperator t = make_lamperti(diag_elem(c2, {-1.0, 1.0}), diag_elem(c2, {2.0, 3.0}),
                                       JordanDescriptor::point_permutation({1, 0}));
    LampertiOperator mt = lamperti_modulus(t);
    const AlgebraElement e1 = diag_elem(c2, {1.0, 0.0});
    const AlgebraElement e2 = diag_elem(c2, {0.0, 1.0});
    CHECK(max_abs_diff(mt.apply(e2).mat, CMatrix::diag({2.0, 0.0})) < 1e-14);
    CHECK(max_abs_diff(mt.apply(e1).mat, CMatrix::diag({0.0, 3.0})) < 1e-14);
    // positive operator is its own modulus; modulus is idempotent
    CHECK(max_abs_diff(lamperti_modulus(mt).w.mat, mt.w.mat) < 1e-12);
}

TEST_CASE("modulus identity |Tx| = ||T|x| = |T||x| on random instances") {
    std::mt19937_64 rng(77);
    int checked = 0;
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const LampertiOperator t = random_weighted_permutation(n, rng);
        const LampertiOperator mt = lamperti_modulus(t);
        CMatrix x = random_gaussian_matrix(n, rng);
        // stay inside the diagonal algebra the operator acts on
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) x(i, j) = 0.0;
        const AlgebraElement xe{t.ctx, x};
        const CMatrix m1 = modulus_matrix(t.apply(xe).mat);
        const CMatrix m2 = modulus_matrix(mt.apply(xe).mat);
        const CMatrix m3 = mt.apply(opalg::modulus(xe)).mat;
        CHECK(max_abs_diff(m1, m2) < 1e-9);
        CHECK(max_abs_diff(m1, m3) < 1e-9);
        ++checked;
    }
    CHECK(checked == 200);
}

TEST_CASE("compose: swap example, unit law, associativity") {
    const TraceContext c2 = TraceContext::counting(2);
    LampertiOperator t = make_lamperti(diag_elem(c2, {1.0, 1.0}), diag_elem(c2, {2.0, 3.0}),
                                       JordanDescriptor::point_permutation({1, 0}));
    LampertiOperator tt = lamperti_compose(t, t);
    CHECK(max_abs_diff(tt.b.mat, CMatrix::diag({6.0, 6.0})) < 1e-12);
    CHECK(tt.jordan.pi == std::vector<int>{0, 1});
    const AlgebraElement f = diag_elem(c2, {1.0, -2.0});
    CHECK(max_abs_diff(tt.apply(f).mat, (6.0 * f.mat)) < 1e-12);

    LampertiOperator id = make_lamperti({c2, CMatrix::identity(2)}, {c2, CMatrix::identity(2)},
                                        JordanDescriptor::point_permutation({0, 1}));
    LampertiOperator t_id = lamperti_compose(t, id);
    CHECK(max_abs_diff(weighted_permutation_matrix(t_id), weighted_permutation_matrix(t)) < 1e-12);

    std::mt19937_64 rng(13);
    const LampertiOperator r = random_weighted_permutation(3, rng);
    const LampertiOperator s = random_weighted_permutation(3, rng);
    const LampertiOperator u = random_weighted_permutation(3, rng);
    const LampertiOperator lhs = lamperti_compose(lamperti_compose(r, s), u);
    const LampertiOperator rhs = lamperti_compose(r, lamperti_compose(s, u));
    CHECK(max_abs_diff(weighted_permutation_matrix(lhs), weighted_permutation_matrix(rhs)) < 1e-9);
}

TEST_CASE("compose of unitary conjugations") {
    const TraceContext c3 = TraceContext::counting(3);
    std::mt19937_64 rng(17);
    auto conj_op = [&](const CMatrix& u) {
        return make_lamperti({c3, CMatrix::identity(3)}, {c3, CMatrix::identity(3)},
                             JordanDescriptor::conjugation(u));
    };
    const CMatrix u1 = random_unitary(3, rng), u2 = random_unitary(3, rng);
    const LampertiOperator st = lamperti_compose(conj_op(u1), conj_op(u2));
    const AlgebraElement x{c3, random_gaussian_matrix(3, rng)};
    CHECK(max_abs_diff(st.apply(x).mat, u1 * u2 * x.mat * (u1 * u2).adjoint()) < 1e-9);
}

TEST_CASE("cocycle law on tabulated cyclic representations") {
    // b entries are powers of two with product one, so every identity below
    // is exact in binary64
    std::mt19937_64 rng(23);
    for (int q = 2; q <= 12; ++q) {
        const TraceContext ctx = TraceContext::counting(q);
        std::vector<int> expo(q);
        int sum = 0;
        for (int i = 0; i + 1 < q; ++i) {
            expo[i] = static_cast<int>(rng() % 5) - 2;
            sum += expo[i];
        }
        expo[q - 1] = -sum;
        CVector b(q);
        for (int i = 0; i < q; ++i) b[i] = std::ldexp(1.0, expo[i]);
        std::vector<int> shift(q);
        for (int i = 0; i < q; ++i) shift[i] = (i + 1) % q;
        const LampertiOperator gen = make_lamperti(
            {ctx, CMatrix::identity(q)}, {ctx, CMatrix::diag(b)},
            JordanDescriptor::point_permutation(shift));

        // T_g = gen^g for g = 0..q-1 (T_0 = identity)
        std::vector<LampertiOperator> rep;
        rep.push_back(make_lamperti({ctx, CMatrix::identity(q)}, {ctx, CMatrix::identity(q)},
                                    JordanDescriptor::point_permutation([&] {
                                        std::vector<int> idp(q);
                                        for (int i = 0; i < q; ++i) idp[i] = i;
                                        return idp;
                                    }())));
        for (int g = 1; g < q; ++g) rep.push_back(lamperti_compose(gen, rep.back()));

        // closure: gen^q = identity exactly
        const LampertiOperator full = lamperti_compose(gen, rep.back());
        CHECK(max_abs_diff(weighted_permutation_matrix(full),
                           weighted_permutation_matrix(rep[0])) == 0.0);

        for (int g = 0; g < q; ++g) {
            for (int h = 0; h < q; ++h) {
                const LampertiOperator gh = lamperti_compose(rep[g], rep[h]);
                const LampertiOperator& want = rep[(g + h) % q];
                // b_g J_g(b_h) = b_{gh} and J_g J_h = J_{gh}, exactly
                CHECK(max_abs_diff(gh.b.mat, want.b.mat) == 0.0);
                CHECK(gh.jordan.pi == want.jordan.pi);
            }
        }
    }
}

TEST_CASE("power mu") {
    const TraceContext c2 = TraceContext::counting(2);
    LampertiOperator t = make_lamperti(diag_elem(c2, {1.0, 1.0}), diag_elem(c2, {2.0, 3.0}),
                                       JordanDescriptor::point_permutation({1, 0}));
    const LampertiOperator t2 = lamperti_power_mu(t, ModulusPower(2.0, 2.0, 4.0));
    CHECK(max_abs_diff(t2.b.mat, CMatrix::diag({4.0, 9.0})) < 1e-12);
    const LampertiOperator t1 = lamperti_power_mu(t, ModulusPower(1.0, 3.0, 3.0));
    CHECK(max_abs_diff(t1.b.mat, t.b.mat) < 1e-12);

    // norm relation ||T^(mu)||_{gamma->gamma} = ||T||_{p->p} at p=4, gamma=2
    const double n_p = vector_operator_pnorm(weighted_permutation_matrix(t), 4.0);
    const double n_gamma = vector_operator_pnorm(weighted_permutation_matrix(t2), 2.0);
    CHECK(n_p == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(n_gamma == doctest::Approx(9.0).epsilon(1e-6));
    CHECK(std::sqrt(n_gamma) == doctest::Approx(n_p).epsilon(1e-6));

    // non-positive operator is rejected
    LampertiOperator neg = make_lamperti(diag_elem(c2, {-1.0, 1.0}), diag_elem(c2, {2.0, 3.0}),
                                         JordanDescriptor::point_permutation({1, 0}));
    CHECK_THROWS_AS(lamperti_power_mu(neg, ModulusPower(2.0, 2.0, 4.0)), DomainError);
}

TEST_CASE("vector operator p-norms") {
    CHECK(vector_operator_pnorm(CMatrix::identity(4), 2.5) == doctest::Approx(1.0));
    CHECK(vector_operator_pnorm(CMatrix::zero(3), 1.5) == doctest::Approx(0.0));
    const TraceContext c2 = TraceContext::counting(2);
    LampertiOperator t = make_lamperti(diag_elem(c2, {1.0, 1.0}), diag_elem(c2, {2.0, 3.0}),
                                       JordanDescriptor::point_permutation({1, 0}));
    for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, opalg::kInfinity})
        CHECK(vector_operator_pnorm(weighted_permutation_matrix(t), p) ==
              doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("norm equality against the closed form across the class") {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 40; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 4);
        const LampertiOperator t = random_weighted_permutation(n, rng);
        const LampertiOperator mt = lamperti_modulus(t);
        const double closed = weighted_permutation_pnorm(t);
        for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
            const double np = vector_operator_pnorm(weighted_permutation_matrix(t), p);
            const double nm = vector_operator_pnorm(weighted_permutation_matrix(mt), p);
            CHECK(std::abs(np - closed) < 1e-6 * std::max(1.0, closed));
            CHECK(std::abs(np - nm) < 1e-6 * std::max(1.0, closed));
        }
    }
}

TEST_CASE("trace domination: tau(b^p J(x)) <= ||T||^p tau(x) for positive x") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = 2 + static_cast<int>(rng() % 3);
        const LampertiOperator t = random_weighted_permutation(n, rng, false);
        const double c = weighted_permutation_pnorm(t);
        const double p = 1.0 + (rng() % 30) / 10.0;
        const CMatrix x = random_psd(n, rng);
        const CMatrix bp = hermitian_function(
            t.b.mat, [p](double v) { return std::pow(std::max(0.0, v), p); });
        const AlgebraElement lhs{t.ctx, bp * t.jordan.apply(x)};
        const double lt = opalg::trace(lhs).real();
        const double rt = std::pow(c, p) * opalg::trace({t.ctx, x}).real();
        CHECK(lt <= rt + 1e-9 * std::max(1.0, rt));
    }
}

TEST_CASE("validly constructed operators pass is_lamperti") {
    std::mt19937_64 rng(53);
    for (int rep = 0; rep < 10; ++rep) {
        const LampertiOperator t = random_weighted_permutation(3, rng);
        CHECK(is_lamperti(t, 32).lamperti);
    }
}
