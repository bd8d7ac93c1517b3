#pragma once

#include <random>

#include "nclab/matrix.hpp"

namespace nclab {

inline CMatrix random_gaussian_matrix(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    return a;
}

// Haar-ish unitary via modified Gram-Schmidt on a Gaussian matrix.
inline CMatrix random_unitary(int n, std::mt19937_64& rng) {
    CMatrix a = random_gaussian_matrix(n, rng);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            Complex dot = 0.0;
            for (int i = 0; i < n; ++i) dot += std::conj(a(i, k)) * a(i, j);
            for (int i = 0; i < n; ++i) a(i, j) -= dot * a(i, k);
        }
        double nrm = 0.0;
        for (int i = 0; i < n; ++i) nrm += std::norm(a(i, j));
        nrm = std::sqrt(nrm);
        if (nrm < 1e-12) {  // essentially impossible; restart the column
            for (int i = 0; i < n; ++i) a(i, j) = (i == j) ? 1.0 : 0.0;
            --j;
            continue;
        }
        for (int i = 0; i < n; ++i) a(i, j) /= nrm;
    }
    return a;
}

inline std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    for (int i = n - 1; i > 0; --i) {
        std::uniform_int_distribution<int> pick(0, i);
        std::swap(p[i], p[static_cast<int>(pick(rng))]);
    }
    return p;
}

inline CMatrix random_psd(int n, std::mt19937_64& rng) {
    const CMatrix a = random_gaussian_matrix(n, rng);
    return a * a.adjoint();
}

}  // namespace nclab
