#pragma once

#include "aqm/dynamics.hpp"
#include "aqm/scenario.hpp"
#include "aqm/states.hpp"

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <variant>
#include <vector>

// Doublet states (dynamical + informational components), Born-weighted
// outcome sampling, Monte Carlo ensembles, and pure/mixed comparison reports.

namespace aqm {

/// One recorded pointer outcome: the sampled eigenvalue and its label.
struct EventRecord {
    long event_index = 0;
    double outcome_value = 0.0;
    int outcome_label = 0;
};

/// Paired description of one event: the unitary dynamical component (the
/// composite state for the external observer) and the informational component
/// (the observer's restricted state, or one concrete extremal outcome).
struct DoubletState {
    DensityState dynamical;
    std::variant<ClassicalState, EventRecord> informational;
};

/// Outcome tallies and summary statistics of one seeded run.
struct RunStatistics {
    std::map<int, long> counts;
    std::map<int, double> empirical_frequencies;
    std::map<int, double> theory_probabilities;
    std::map<int, double> outcome_values;  // label -> pointer eigenvalue
    double empirical_pointer_mean = 0.0;
    double theory_pointer_mean = 0.0;
    double purity_rate = 0.0;    // coherence magnitude of the incoming S state
    double it_expectation = 0.0; // interference-term expectation on the final state
    double chi_square = 0.0;     // Pearson statistic vs theory (zero-p bins excluded)
    std::uint64_t seed = 0;
    long n_events = 0;
};

/// Deterministic sampling stream: std::mt19937_64 (bit-exact per the C++
/// standard) with uniform doubles built as (x >> 11) * 2^-53. Identical seeds
/// reproduce identical event sequences across runs of the same build.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double next_unit() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

private:
    std::mt19937_64 engine_;
};

/// Inverse-CDF draw over the stored point order; ties at cumulative
/// boundaries resolve toward the lower label, zero-probability points are
/// never selected. Returns the point index.
int sample_outcome(const ClassicalState& distribution, SampleRng& rng);

/// Per event: prepare the incoming state, premeasure (pure mode) or use the
/// outcome-mixture preparation (mixed mode), restrict to the pointer, sample
/// the informational outcome; aggregate tallies. Theory probabilities are
/// |a_i|^2 in both modes.
RunStatistics run_experiment(const Scenario& scenario, long n_events, std::uint64_t seed);

struct ComparisonReport {
    struct Row {
        std::string quantity;
        double pure_value;
        double mixed_value;
        double abs_diff;
    };
    struct Verdict {
        std::string algebra_name;
        bool indistinguishable;
        double witness_gap;
        double witness_pure;
        double witness_mixed;
    };
    std::vector<Row> rows;
    std::vector<Verdict> verdicts;
    std::uint64_t seed = 0;
};

/// Side-by-side pure vs mixed preparation: incoming spin expectations, final
/// pointer and interference-term expectations, the pointer-restricted
/// distributions, and indistinguishability verdicts on U_O, U_R and the full
/// composite algebra.
ComparisonReport compare_pure_mixed(const Scenario& scenario);

struct WignerViews {
    DensityState o_prime_view;  // unitarily evolved composite state, no collapse
    EventRecord o_view;         // one sampled extremal outcome
};

/// Both faces of the same run: the external observer keeps the unitary
/// description while the internal observer records one definite outcome.
/// Pure-mode scenarios only.
WignerViews wigner_friend_views(const Scenario& scenario, std::uint64_t seed);

/// Doublet for one event of the scenario (used by wigner_friend_views).
DoubletState sample_doublet(const Scenario& scenario, std::uint64_t seed, long event_index = 0);

/// Pearson two-sample statistic between two outcome tables (pooled-expected
/// cells; bins empty in both tables are skipped). Degrees of freedom =
/// (used bins - 1).
double two_sample_chi_square(const std::map<int, long>& a, const std::map<int, long>& b,
                             int* df = nullptr);

/// Upper 0.001 critical value of the chi-square distribution, df in [1, 5].
double chi_square_critical_001(int df);

}  // namespace aqm
