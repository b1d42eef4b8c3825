#include "aqm/algebra.hpp"
#include "aqm/dynamics.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace aqm;

Operator pauli(int which) {
    Matrix m(2, 2);
    switch (which) {
        case 0: m << 0, 1, 1, 0; break;
        case 1: m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0); break;
        default: m << 1, 0, 0, -1; break;
    }
    return Operator::hermitian(std::move(m), Factorization({2}));
}

void BM_GenerateFullPauliAlgebra(benchmark::State& state) {
    std::vector<Operator> gens{pauli(0), pauli(2)};
    for (auto _ : state) {
        benchmark::DoNotOptimize(generate_algebra(gens));
    }
}
BENCHMARK(BM_GenerateFullPauliAlgebra);

void BM_PointerSubalgebra(benchmark::State& state) {
    MeasurementModel model = MeasurementModel::standard();
    Operator lifted = model.pointer_lifted();
    for (auto _ : state) {
        benchmark::DoNotOptimize(pointer_subalgebra(lifted));
    }
}
BENCHMARK(BM_PointerSubalgebra);

void BM_ClassicalSpectrum(benchmark::State& state) {
    MeasurementModel model = MeasurementModel::standard();
    StarAlgebra alg = pointer_subalgebra(model.pointer_lifted());
    for (auto _ : state) {
        benchmark::DoNotOptimize(classical_spectrum(alg));
    }
}
BENCHMARK(BM_ClassicalSpectrum);

void BM_LocalSubalgebra(benchmark::State& state) {
    Factorization f({2, 3});
    for (auto _ : state) {
        benchmark::DoNotOptimize(local_subalgebra(f, 1));
    }
}
BENCHMARK(BM_LocalSubalgebra);

}  // namespace
