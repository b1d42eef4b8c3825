#include "aqm/linalg.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

using namespace aqm;

Matrix random_hermitian(int dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = Complex(gauss(rng), gauss(rng));
    return 0.5 * (m + m.adjoint().eval());
}

Matrix random_density(int dim, std::uint64_t seed) {
    Matrix g = random_hermitian(dim, seed);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return 0.5 * (rho + rho.adjoint().eval());
}

void BM_Tensor(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    Operator a(random_hermitian(dim, 1), Factorization({dim}));
    Operator b(random_hermitian(dim, 2), Factorization({dim}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(tensor(a, b));
    }
}
BENCHMARK(BM_Tensor)->Arg(2)->Arg(4)->Arg(8);

void BM_PartialTrace(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    DensityState rho(random_density(2 * dim, 3), Factorization({2, dim}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(partial_trace(rho, {1}));
    }
}
BENCHMARK(BM_PartialTrace)->Arg(3)->Arg(8)->Arg(32);

void BM_EigHermitian(benchmark::State& state) {
    const int dim = static_cast<int>(state.range(0));
    Operator a = Operator::hermitian(random_hermitian(dim, 4), Factorization({dim}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(eig_hermitian(a));
    }
}
BENCHMARK(BM_EigHermitian)->Arg(6)->Arg(16)->Arg(64);

}  // namespace
