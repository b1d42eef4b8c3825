#include "aqm/report.hpp"

#include "aqm/states.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace aqm {

namespace {

std::string format_integer(long v) {
    return std::to_string(v);
}

std::string format_unsigned(std::uint64_t v) {
    return std::to_string(v);
}

std::string preamble_entry(const std::string& key, const std::string& value) {
    return "# " + key + " = " + value;
}

ReportTable restrict_table(const Scenario& scenario) {
    const MeasurementModel model = scenario.model();
    const Amplitudes amps = scenario.amplitudes();
    const DensityState rho = scenario.mode == Mode::pure
                                 ? DensityState::from_pure(premeasured_state(amps, model))
                                 : mixed_final_state(amps, model);
    const ClassicalState dist = restrict_classical(rho, model.pointer_lifted());

    ReportTable table;
    table.preamble.push_back(preamble_entry("command", "restrict"));
    table.preamble.push_back(preamble_entry("mode", to_string(scenario.mode)));
    table.preamble.push_back(preamble_entry("seed", format_unsigned(scenario.seed)));
    table.preamble.push_back(
        preamble_entry("extremal", is_extremal(dist, 1e-10) ? "true" : "false"));
    table.header = {"outcome_label", "outcome_value", "probability"};
    for (std::size_t k = 0; k < dist.points.size(); ++k) {
        table.rows.push_back({format_integer(static_cast<long>(k)),
                              format_number(dist.points[k].spectrum_value),
                              format_number(dist.points[k].probability)});
    }
    return table;
}

ReportTable wigner_table(const Scenario& scenario) {
    const MeasurementModel model = scenario.model();
    const WignerViews views = wigner_friend_views(scenario, scenario.seed);
    const Operator it = interference_observable(model, 1, 2);

    ReportTable table;
    table.preamble.push_back(preamble_entry("command", "wigner"));
    table.preamble.push_back(preamble_entry("seed", format_unsigned(scenario.seed)));
    table.header = {"quantity", "value"};
    table.rows.push_back(
        {"o_prime_B_expectation", format_number(views.o_prime_view.expectation(it).real())});
    table.rows.push_back(
        {"o_prime_Q_O_expectation",
         format_number(views.o_prime_view.expectation(model.pointer_lifted()).real())});
    table.rows.push_back({"o_view_event_index", format_integer(views.o_view.event_index)});
    table.rows.push_back({"o_view_outcome_label", format_integer(views.o_view.outcome_label)});
    table.rows.push_back({"o_view_outcome_value", format_number(views.o_view.outcome_value)});
    return table;
}

ReportTable triple_table(const Scenario& scenario) {
    const MeasurementModel model = scenario.model();
    const Amplitudes amps = scenario.amplitudes();
    const EnvironmentSpec env = scenario.environment_or_default();
    const PureState psi =
        decohere_triple(amps, environment_pair(env.dim, env.overlap, env.phase));
    const DensityState rho_so = partial_trace(DensityState::from_pure(psi), {0, 1});

    const int idx1 = 1;  // |s_1, O_1>
    const int idx2 = 5;  // |s_2, O_2>
    const double coherence = std::abs(rho_so.entries()(idx1, idx2));
    const double predicted = std::abs(amps.a1) * std::abs(amps.a2) * env.overlap;
    const DensityState mixed = mixed_final_state(amps, model);
    const DensityState pure = DensityState::from_pure(premeasured_state(amps, model));

    ReportTable table;
    table.preamble.push_back(preamble_entry("command", "triple"));
    table.preamble.push_back(preamble_entry("seed", format_unsigned(scenario.seed)));
    table.header = {"quantity", "value"};
    table.rows.push_back({"kappa", format_number(env.overlap)});
    table.rows.push_back({"phase", format_number(env.phase)});
    table.rows.push_back({"coherence_magnitude", format_number(coherence)});
    table.rows.push_back({"predicted_coherence", format_number(predicted)});
    table.rows.push_back(
        {"max_diff_to_mixed", format_number(max_abs(rho_so.entries() - mixed.entries()))});
    table.rows.push_back(
        {"max_diff_to_pure", format_number(max_abs(rho_so.entries() - pure.entries()))});
    return table;
}

}  // namespace

std::string format_number(double v) {
    if (v == 0.0) {
        v = 0.0;  // normalize negative zero
    }
    char buffer[64];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), v, std::chars_format::fixed, 12);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    std::string out(buffer, ptr);
    if (out.size() > 1 && out.front() == '-' &&
        out.find_first_not_of("0.", 1) == std::string::npos) {
        out.erase(0, 1);  // tiny negatives round to -0.000000000000
    }
    return out;
}

std::string render(const ReportTable& table, ReportFormat format) {
    std::string out;
    for (const std::string& line : table.preamble) {
        out += line;
        out += '\n';
    }
    if (format == ReportFormat::csv) {
        auto emit_row = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                if (i > 0) out += ',';
                out += cells[i];
            }
            out += '\n';
        };
        emit_row(table.header);
        for (const auto& row : table.rows) emit_row(row);
        return out;
    }
    std::vector<std::size_t> widths(table.header.size(), 0);
    auto widen = [&widths](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            widths[i] = std::max(widths[i], cells[i].size());
        }
    };
    widen(table.header);
    for (const auto& row : table.rows) widen(row);
    auto emit_row = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) out += "  ";
            out += cells[i];
            if (i + 1 < cells.size()) {
                out.append(widths[i] - cells[i].size(), ' ');
            }
        }
        out += '\n';
    };
    emit_row(table.header);
    for (const auto& row : table.rows) emit_row(row);
    return out;
}

ReportTable to_table(const ComparisonReport& report) {
    ReportTable table;
    table.preamble.push_back(preamble_entry("command", "compare"));
    table.preamble.push_back(preamble_entry("seed", format_unsigned(report.seed)));
    table.header = {"quantity", "pure", "mixed", "abs_diff"};
    for (const auto& row : report.rows) {
        table.rows.push_back({row.quantity, format_number(row.pure_value),
                              format_number(row.mixed_value), format_number(row.abs_diff)});
    }
    for (const auto& verdict : report.verdicts) {
        table.rows.push_back({"breuer_gap_" + verdict.algebra_name,
                              format_number(verdict.witness_pure),
                              format_number(verdict.witness_mixed),
                              format_number(verdict.witness_gap)});
    }
    for (const auto& verdict : report.verdicts) {
        const double flag = verdict.indistinguishable ? 1.0 : 0.0;
        table.rows.push_back({"breuer_indistinguishable_" + verdict.algebra_name,
                              format_number(flag), format_number(flag), format_number(0.0)});
    }
    return table;
}

ReportTable to_table(const RunStatistics& stats) {
    ReportTable table;
    table.preamble.push_back(preamble_entry("command", "simulate"));
    table.preamble.push_back(preamble_entry("seed", format_unsigned(stats.seed)));
    table.preamble.push_back(preamble_entry("samples", format_integer(stats.n_events)));
    table.preamble.push_back(
        preamble_entry("empirical_pointer_mean", format_number(stats.empirical_pointer_mean)));
    table.preamble.push_back(
        preamble_entry("theory_pointer_mean", format_number(stats.theory_pointer_mean)));
    table.preamble.push_back(preamble_entry("purity_rate", format_number(stats.purity_rate)));
    table.preamble.push_back(preamble_entry("it_expectation", format_number(stats.it_expectation)));
    table.preamble.push_back(preamble_entry("chi_square", format_number(stats.chi_square)));
    table.header = {"outcome_label", "outcome_value", "count", "frequency", "theory"};
    for (const auto& [label, count] : stats.counts) {
        const double theory = stats.theory_probabilities.at(label);
        if (count == 0 && theory == 0.0) continue;  // outcomes outside the support
        table.rows.push_back({format_integer(label), format_number(stats.outcome_values.at(label)),
                              format_integer(count),
                              format_number(stats.empirical_frequencies.at(label)),
                              format_number(theory)});
    }
    return table;
}

std::string emit_report(const ComparisonReport& report, ReportFormat format) {
    return render(to_table(report), format);
}

std::string emit_report(const RunStatistics& stats, ReportFormat format) {
    return render(to_table(stats), format);
}

int run_command(const Scenario& scenario, ReportFormat format, std::ostream& out,
                std::ostream& err) {
    try {
        switch (scenario.command) {
            case Command::compare:
                out << emit_report(compare_pure_mixed(scenario), format);
                break;
            case Command::simulate:
                out << emit_report(run_experiment(scenario, scenario.samples, scenario.seed),
                                   format);
                break;
            case Command::restrict:
                out << render(restrict_table(scenario), format);
                break;
            case Command::wigner:
                out << render(wigner_table(scenario), format);
                break;
            case Command::triple:
                out << render(triple_table(scenario), format);
                break;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace aqm
