#include "aqm/doublet.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace aqm {

namespace {

Operator pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator::hermitian(std::move(m), Factorization({2}));
}

Operator pauli_y() {
    Matrix m(2, 2);
    m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
    return Operator::hermitian(std::move(m), Factorization({2}));
}

// Final composite state under the scenario's evolution mode.
DensityState final_state(const Scenario& scenario, const MeasurementModel& model, Mode mode) {
    const Amplitudes amps = scenario.amplitudes();
    if (scenario.evolution == EvolutionKind::map) {
        if (mode == Mode::pure) {
            return DensityState::from_pure(premeasured_state(amps, model));
        }
        return mixed_final_state(amps, model);
    }
    const double duration = scenario.t1 - scenario.t0;
    Operator h = premeasurement_hamiltonian(model, duration);
    DensityState initial = mode == Mode::pure
                               ? DensityState::from_pure(incoming_state(amps, model))
                               : incoming_mixture(amps, model);
    return evolve_liouville(initial, h, duration, scenario.dt);
}

DensityState incoming_density(const Scenario& scenario, const MeasurementModel& model,
                              Mode mode) {
    const Amplitudes amps = scenario.amplitudes();
    return mode == Mode::pure ? DensityState::from_pure(incoming_state(amps, model))
                              : incoming_mixture(amps, model);
}

// Probability the declared preparation assigns to a spectrum point: the sum
// of |a_i|^2 over declared pointer eigenvalues q_i merged into that point.
double declared_probability(double point_value, const std::array<double, 3>& q,
                            const Amplitudes& amps) {
    const double weights[3] = {0.0, std::norm(amps.a1), std::norm(amps.a2)};
    double p = 0.0;
    for (int i = 0; i < 3; ++i) {
        if (std::abs(q[static_cast<std::size_t>(i)] - point_value) <= kDegeneracyGap) {
            p += weights[i];
        }
    }
    return p;
}

}  // namespace

int sample_outcome(const ClassicalState& distribution, SampleRng& rng) {
    if (distribution.points.empty()) {
        throw std::invalid_argument("sample_outcome: empty distribution");
    }
    const double u = rng.next_unit();
    double cumulative = 0.0;
    int last_positive = -1;
    for (std::size_t k = 0; k < distribution.points.size(); ++k) {
        const double p = distribution.points[k].probability;
        if (p <= 0.0) continue;
        cumulative += p;
        last_positive = static_cast<int>(k);
        if (u <= cumulative) return last_positive;
    }
    if (last_positive < 0) {
        throw std::invalid_argument("sample_outcome: distribution has no positive weight");
    }
    return last_positive;
}

RunStatistics run_experiment(const Scenario& scenario, long n_events, std::uint64_t seed) {
    if (n_events < 1) {
        throw std::invalid_argument("run_experiment: need at least one event");
    }
    const MeasurementModel model = scenario.model();
    const Amplitudes amps = scenario.amplitudes();

    // The preparation is event-independent; the per-event randomness is the
    // informational outcome draw.
    const DensityState rho_final = final_state(scenario, model, scenario.mode);
    const ClassicalState dist = restrict_classical(rho_final, model.pointer_lifted());

    RunStatistics stats;
    stats.seed = seed;
    stats.n_events = n_events;
    for (std::size_t k = 0; k < dist.points.size(); ++k) {
        const int label = static_cast<int>(k);
        stats.counts[label] = 0;
        stats.outcome_values[label] = dist.points[k].spectrum_value;
        stats.theory_probabilities[label] =
            declared_probability(dist.points[k].spectrum_value, scenario.pointer_eigenvalues, amps);
    }

    SampleRng rng(seed);
    for (long n = 0; n < n_events; ++n) {
        ++stats.counts[sample_outcome(dist, rng)];
    }

    double mean = 0.0;
    double theory_mean = 0.0;
    double chi2 = 0.0;
    for (const auto& [label, count] : stats.counts) {
        const double f = static_cast<double>(count) / static_cast<double>(n_events);
        stats.empirical_frequencies[label] = f;
        mean += f * stats.outcome_values[label];
        const double p = stats.theory_probabilities[label];
        theory_mean += p * stats.outcome_values[label];
        if (p > 0.0) {
            const double expected = p * static_cast<double>(n_events);
            const double d = static_cast<double>(count) - expected;
            chi2 += d * d / expected;
        }
    }
    stats.empirical_pointer_mean = mean;
    stats.theory_pointer_mean = theory_mean;
    stats.chi_square = chi2;

    const DensityState rho_in = incoming_density(scenario, model, scenario.mode);
    const double sx = rho_in.expectation(model.s_observable_lifted(pauli_x())).real();
    const double sy = rho_in.expectation(model.s_observable_lifted(pauli_y())).real();
    stats.purity_rate = std::hypot(sx, sy);
    stats.it_expectation = rho_final.expectation(interference_observable(model, 1, 2)).real();
    return stats;
}

ComparisonReport compare_pure_mixed(const Scenario& scenario) {
    const MeasurementModel model = scenario.model();
    ComparisonReport report;
    report.seed = scenario.seed;

    const DensityState in_pure = incoming_density(scenario, model, Mode::pure);
    const DensityState in_mixed = incoming_density(scenario, model, Mode::mixed);
    const DensityState fin_pure = final_state(scenario, model, Mode::pure);
    const DensityState fin_mixed = final_state(scenario, model, Mode::mixed);

    auto add_row = [&report](std::string name, double pure, double mixed) {
        report.rows.push_back({std::move(name), pure, mixed, std::abs(pure - mixed)});
    };

    const Operator sx = model.s_observable_lifted(pauli_x());
    const Operator sy = model.s_observable_lifted(pauli_y());
    const Operator sz = model.s_observable_lifted(model.s_basis_observable());
    add_row("S_x_incoming", in_pure.expectation(sx).real(), in_mixed.expectation(sx).real());
    add_row("S_y_incoming", in_pure.expectation(sy).real(), in_mixed.expectation(sy).real());
    add_row("S_z_incoming", in_pure.expectation(sz).real(), in_mixed.expectation(sz).real());

    const Operator pointer = model.pointer_lifted();
    add_row("Q_O_final", fin_pure.expectation(pointer).real(),
            fin_mixed.expectation(pointer).real());

    const Operator it = interference_observable(model, 1, 2);
    add_row("B_expectation", fin_pure.expectation(it).real(), fin_mixed.expectation(it).real());

    const ClassicalState dist_pure = restrict_classical(fin_pure, pointer);
    const ClassicalState dist_mixed = restrict_classical(fin_mixed, pointer);
    auto probability_at = [](const ClassicalState& c, double value) {
        for (const auto& point : c.points) {
            if (std::abs(point.spectrum_value - value) <= kDegeneracyGap) {
                return point.probability;
            }
        }
        return 0.0;
    };
    for (int i = 0; i < 3; ++i) {
        const double q = scenario.pointer_eigenvalues[static_cast<std::size_t>(i)];
        add_row("UO_restriction_q" + std::to_string(i), probability_at(dist_pure, q),
                probability_at(dist_mixed, q));
    }

    const StarAlgebra u_o = pointer_subalgebra(pointer);
    const StarAlgebra u_r = local_subalgebra(model.composite_factorization(), 1);
    const StarAlgebra u_ms = full_matrix_algebra(model.s_dim() * model.o_dim());
    auto add_verdict = [&](const std::string& name, const StarAlgebra& alg) {
        BreuerResult r = breuer_indistinguishable(fin_pure, fin_mixed, alg);
        report.verdicts.push_back(
            {name, r.indistinguishable, r.witness_gap, r.expectation_1, r.expectation_2});
    };
    add_verdict("U_O", u_o);
    add_verdict("U_R", u_r);
    add_verdict("U_MS", u_ms);
    return report;
}

DoubletState sample_doublet(const Scenario& scenario, std::uint64_t seed, long event_index) {
    const MeasurementModel model = scenario.model();
    DensityState dynamical = final_state(scenario, model, scenario.mode);
    const ClassicalState dist = restrict_classical(dynamical, model.pointer_lifted());
    SampleRng rng(seed);
    const int label = sample_outcome(dist, rng);
    EventRecord record{event_index, dist.points[static_cast<std::size_t>(label)].spectrum_value,
                       label};
    return DoubletState{std::move(dynamical), record};
}

WignerViews wigner_friend_views(const Scenario& scenario, std::uint64_t seed) {
    if (scenario.mode != Mode::pure) {
        throw std::invalid_argument("wigner_friend_views: requires a pure-mode scenario");
    }
    DoubletState doublet = sample_doublet(scenario, seed);
    return WignerViews{std::move(doublet.dynamical), std::get<EventRecord>(doublet.informational)};
}

double two_sample_chi_square(const std::map<int, long>& a, const std::map<int, long>& b, int* df) {
    double n_a = 0.0;
    double n_b = 0.0;
    std::map<int, std::pair<long, long>> bins;
    for (const auto& [label, count] : a) {
        bins[label].first = count;
        n_a += static_cast<double>(count);
    }
    for (const auto& [label, count] : b) {
        bins[label].second = count;
        n_b += static_cast<double>(count);
    }
    if (n_a <= 0.0 || n_b <= 0.0) {
        throw std::invalid_argument("two_sample_chi_square: empty sample");
    }
    double chi2 = 0.0;
    int used = 0;
    for (const auto& [label, counts] : bins) {
        const double pooled = static_cast<double>(counts.first + counts.second);
        if (pooled <= 0.0) continue;
        ++used;
        const double ea = n_a * pooled / (n_a + n_b);
        const double eb = n_b * pooled / (n_a + n_b);
        const double da = static_cast<double>(counts.first) - ea;
        const double db = static_cast<double>(counts.second) - eb;
        chi2 += da * da / ea + db * db / eb;
    }
    if (df != nullptr) {
        *df = std::max(used - 1, 0);
    }
    return chi2;
}

double chi_square_critical_001(int df) {
    // Upper 0.1% quantiles of chi-square, df = 1..5.
    static constexpr double table[5] = {10.828, 13.816, 16.266, 18.467, 20.515};
    if (df < 1 || df > 5) {
        throw std::invalid_argument("chi_square_critical_001: df must be in [1, 5]");
    }
    return table[df - 1];
}

}  // namespace aqm
