#include "aqm/doublet.hpp"
#include "aqm/dynamics.hpp"

#include <benchmark/benchmark.h>

#include <cmath>

namespace {

using namespace aqm;

Scenario born_scenario() {
    Scenario s;
    s.a1 = Complex(0.6, 0.0);
    s.a2 = Complex(0.8, 0.0);
    s.command = Command::simulate;
    return s;
}

void BM_RunExperiment(benchmark::State& state) {
    Scenario s = born_scenario();
    const long n = state.range(0);
    std::uint64_t seed = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(run_experiment(s, n, seed++));
    }
    state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RunExperiment)->Arg(1000)->Arg(100000);

void BM_SampleOutcome(benchmark::State& state) {
    Scenario s = born_scenario();
    MeasurementModel model = s.model();
    DensityState rho = DensityState::from_pure(premeasured_state(s.amplitudes(), model));
    ClassicalState dist = restrict_classical(rho, model.pointer_lifted());
    SampleRng rng(99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_outcome(dist, rng));
    }
}
BENCHMARK(BM_SampleOutcome);

void BM_ComparePureMixed(benchmark::State& state) {
    Scenario s = born_scenario();
    s.command = Command::compare;
    for (auto _ : state) {
        benchmark::DoNotOptimize(compare_pure_mixed(s));
    }
}
BENCHMARK(BM_ComparePureMixed);

void BM_LiouvilleStep(benchmark::State& state) {
    MeasurementModel model = MeasurementModel::standard();
    Operator h = premeasurement_hamiltonian(model, 1.0);
    Scenario s = born_scenario();
    DensityState rho = DensityState::from_pure(incoming_state(s.amplitudes(), model));
    const double dt = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve_liouville(rho, h, 1.0, dt));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_LiouvilleStep)->Arg(100)->Arg(1000);

}  // namespace
