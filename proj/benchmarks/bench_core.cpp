#include <benchmark/benchmark.h>

#include <random>

#include "nclab/dilation.hpp"
#include "nclab/eig.hpp"
#include "nclab/harmonic.hpp"
#include "nclab/rand.hpp"

namespace {

using namespace nclab;

void BM_HermitianEig(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    std::mt19937_64 rng(7);
    const CMatrix a = [&] {
        CMatrix g = random_gaussian_matrix(n, rng);
        return CMatrix(0.5 * (g + g.adjoint()));
    }();
    for (auto _ : state) {
        benchmark::DoNotOptimize(hermitian_eig(a));
    }
}
BENCHMARK(BM_HermitianEig)->Arg(8)->Arg(16)->Arg(32)->Arg(64);

void BM_ApplyU(benchmark::State& state) {
    const int N = static_cast<int>(state.range(0));
    CMatrix c3(3, 3);
    c3(1, 0) = c3(2, 1) = c3(0, 2) = 1.0;
    dil::ConvexFamily f1, f2;
    f1.lambdas = {0.25, 0.75};
    f1.ops = {CMatrix::identity(3), c3};
    f2.lambdas = {0.5, 0.5};
    f2.ops = {c3 * c3, c3};
    const dil::DilationSystem sys = dil::build_dilation({f1, f2}, N, 2.0);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    CVector y(static_cast<size_t>(sys.block_count) * 3);
    for (auto& v : y) v = Complex(g(rng), g(rng));
    for (auto _ : state) {
        benchmark::DoNotOptimize(sys.apply_u(0, y));
    }
    state.SetItemsProcessed(state.iterations() * sys.block_count);
}
BENCHMARK(BM_ApplyU)->Arg(2)->Arg(3);

void BM_CuculescuSweep(benchmark::State& state) {
    using namespace nclab::harmonic;
    const int size = static_cast<int>(state.range(0));
    auto space = z_interval(size);
    const DyadicSystem sys = build_dyadic_system(space, 20.0, 1.0, 1.1, 7);
    const OperatorField f = random_positive_field(space, 4, 11);
    for (auto _ : state) {
        benchmark::DoNotOptimize(cuculescu(f, sys, 4.0));
    }
}
BENCHMARK(BM_CuculescuSweep)->Arg(16)->Arg(64);

void BM_DyadicBuild(benchmark::State& state) {
    using namespace nclab::harmonic;
    auto space = z_interval(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_dyadic_system(space, 20.0, 1.0, 1.1, 7));
    }
}
BENCHMARK(BM_DyadicBuild)->Arg(64)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
