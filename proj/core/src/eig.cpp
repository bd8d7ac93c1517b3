#include "nclab/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace nclab {

namespace {

double offdiag_norm(const CMatrix& a) {
    double s = 0.0;
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

}  // namespace

EigResult hermitian_eig(const CMatrix& a, double hermitian_tol) {
    if (a.rows() != a.cols()) throw DimensionError("hermitian_eig: square matrix required");
    const int n = a.rows();
    const double scale = a.max_abs();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (std::abs(a(i, j) - std::conj(a(j, i))) > hermitian_tol * std::max(scale, 1.0))
                throw DomainError("hermitian_eig: matrix is not Hermitian within tolerance");

    CMatrix w = a;
    // symmetrize away roundoff so the iteration below sees an exactly
    // Hermitian matrix
    for (int i = 0; i < n; ++i) {
        w(i, i) = Complex(w(i, i).real(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const Complex m = 0.5 * (w(i, j) + std::conj(w(j, i)));
            w(i, j) = m;
            w(j, i) = std::conj(m);
        }
    }
    CMatrix v = CMatrix::identity(n);

    const double stop = 1e-14 * std::max(w.frobenius_norm(), 1e-300);
    const int max_sweeps = 64;
    for (int sweep = 0; sweep < max_sweeps && offdiag_norm(w) > stop; ++sweep) {
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex apq = w(p, q);
                const double g = std::abs(apq);
                if (g <= 1e-300) continue;
                const double app = w(p, p).real();
                const double aqq = w(q, q).real();
                // phase that makes the pivot real, then a standard
                // symmetric Jacobi rotation on the 2x2 block
                const Complex phase = apq / g;
                const double tau = (aqq - app) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // U = diag(1, conj(phase)) * G with G = [[c, s], [-s, c]];
                // the diagonal factor makes the pivot real, G then kills it
                const Complex up_p = c;                          // U(p,p)
                const Complex up_q = s;                          // U(p,q)
                const Complex uq_p = -s * std::conj(phase);      // U(q,p)
                const Complex uq_q = c * std::conj(phase);       // U(q,q)
                // w <- U* w U
                for (int k = 0; k < n; ++k) {
                    const Complex wkp = w(k, p), wkq = w(k, q);
                    w(k, p) = wkp * up_p + wkq * uq_p;
                    w(k, q) = wkp * up_q + wkq * uq_q;
                }
                for (int k = 0; k < n; ++k) {
                    const Complex wpk = w(p, k), wqk = w(q, k);
                    w(p, k) = std::conj(up_p) * wpk + std::conj(uq_p) * wqk;
                    w(q, k) = std::conj(up_q) * wpk + std::conj(uq_q) * wqk;
                }
                w(p, q) = std::conj(w(q, p));  // keep exactly Hermitian
                for (int k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * up_p + vkq * uq_p;
                    v(k, q) = vkp * up_q + vkq * uq_q;
                }
            }
        }
    }

    EigResult r;
    r.values.resize(n);
    for (int i = 0; i < n; ++i) r.values[i] = w(i, i).real();
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int i, int j) { return r.values[i] < r.values[j]; });
    std::vector<double> sorted(n);
    CMatrix vs(n, n);
    for (int j = 0; j < n; ++j) {
        sorted[j] = r.values[order[j]];
        for (int i = 0; i < n; ++i) vs(i, j) = v(i, order[j]);
    }
    r.values = std::move(sorted);
    r.vectors = std::move(vs);
    return r;
}

CMatrix hermitian_function(const CMatrix& a, const std::function<double(double)>& f) {
    const EigResult e = hermitian_eig(a);
    const int n = a.rows();
    CMatrix out(n, n);
    for (int j = 0; j < n; ++j) {
        const double fj = f(e.values[j]);
        if (fj == 0.0) continue;
        for (int r = 0; r < n; ++r) {
            const Complex vr = e.vectors(r, j) * fj;
            for (int c = 0; c < n; ++c) out(r, c) += vr * std::conj(e.vectors(c, j));
        }
    }
    return out;
}

std::vector<double> singular_values(const CMatrix& a) {
    const EigResult e = hermitian_eig(a.adjoint() * a);
    std::vector<double> s(e.values.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = std::sqrt(std::max(0.0, e.values[i]));
    std::sort(s.begin(), s.end(), std::greater<double>());
    return s;
}

CMatrix modulus_matrix(const CMatrix& a) {
    return hermitian_function(a.adjoint() * a,
                              [](double x) { return std::sqrt(std::max(0.0, x)); });
}

CMatrix polar_partial_isometry(const CMatrix& a, double rank_tol_rel) {
    const EigResult e = hermitian_eig(a.adjoint() * a);
    const int n = a.rows();
    double smax = 0.0;
    for (double v : e.values) smax = std::max(smax, std::sqrt(std::max(0.0, v)));
    const double cut = rank_tol_rel * std::max(smax, 1e-300);
    // u = a |a|^+  via  a V sigma^{-1} V*
    CMatrix inv_mod(n, n);
    for (int j = 0; j < n; ++j) {
        const double sigma = std::sqrt(std::max(0.0, e.values[j]));
        if (sigma <= cut) continue;
        const double f = 1.0 / sigma;
        for (int r = 0; r < n; ++r) {
            const Complex vr = e.vectors(r, j) * f;
            for (int c = 0; c < n; ++c) inv_mod(r, c) += vr * std::conj(e.vectors(c, j));
        }
    }
    return a * inv_mod;
}

CMatrix eig_interval_projection(const CMatrix& a, double lo, double hi, double slack) {
    const EigResult e = hermitian_eig(a, 1e-8);
    const int n = a.rows();
    CMatrix p(n, n);
    for (int j = 0; j < n; ++j) {
        const double lam = e.values[j];
        if (!(lam > lo + slack && lam <= hi + slack)) continue;
        for (int r = 0; r < n; ++r) {
            const Complex vr = e.vectors(r, j);
            for (int c = 0; c < n; ++c) p(r, c) += vr * std::conj(e.vectors(c, j));
        }
    }
    return p;
}

CMatrix projection_meet(const std::vector<CMatrix>& ps, double tol) {
    if (ps.empty()) throw DimensionError("projection_meet: empty family");
    const int n = ps.front().rows();
    CMatrix sum_complement(n, n);
    for (const auto& p : ps) sum_complement += CMatrix::identity(n) - p;
    // kernel of a PSD sum = intersection of the ranges
    return eig_interval_projection(sum_complement, -1.0, tol, 0.0);
}

CMatrix projection_join(const std::vector<CMatrix>& ps, double tol) {
    if (ps.empty()) throw DimensionError("projection_join: empty family");
    const int n = ps.front().rows();
    CMatrix sum(n, n);
    for (const auto& p : ps) sum += p;
    const double top = std::max(1.0, sum.max_abs() * n);
    return eig_interval_projection(sum, tol, top + 1.0, 0.0);
}

}  // namespace nclab
