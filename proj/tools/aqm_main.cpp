#include "aqm/report.hpp"
#include "aqm/scenario.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

int run(const std::string& scenario_path, const std::string& format_name,
        const std::optional<std::string>& output_path, const std::optional<std::uint64_t>& seed,
        const std::optional<long>& samples) {
    std::ifstream in(scenario_path);
    if (!in) {
        std::cerr << "error: cannot open scenario file `" << scenario_path << "`\n";
        return 1;
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    aqm::Scenario scenario;
    try {
        scenario = aqm::parse_scenario(buffer.str());
    } catch (const std::exception& e) {
        std::cerr << "error: " << scenario_path << ": " << e.what() << "\n";
        return 1;
    }
    if (seed) scenario.seed = *seed;
    if (samples) {
        if (*samples < 1) {
            std::cerr << "error: --samples must be >= 1\n";
            return 1;
        }
        scenario.samples = *samples;
    }

    const aqm::ReportFormat format =
        format_name == "csv" ? aqm::ReportFormat::csv : aqm::ReportFormat::text;

    if (output_path) {
        std::ofstream out(*output_path, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot open output file `" << *output_path << "`\n";
            return 1;
        }
        return aqm::run_command(scenario, format, out, std::cerr);
    }
    return aqm::run_command(scenario, format, std::cout, std::cerr);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"aqm - algebraic quantum measurement toolkit"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string format_name = "text";
    std::optional<std::string> output_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<long> samples_override;

    CLI::App* run_cmd = app.add_subcommand("run", "run a scenario file and emit its report");
    run_cmd->add_option("scenario", scenario_path, "scenario file (key = value lines)")
        ->required();
    run_cmd->add_option("--format", format_name, "report format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();
    run_cmd->add_option("--output", output_path, "write the report to a file instead of stdout");
    run_cmd->add_option("--seed", seed_override, "override the scenario seed");
    run_cmd->add_option("--samples", samples_override, "override the scenario sample count");

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        return run(scenario_path, format_name, output_path, seed_override, samples_override);
    }
    return 1;
}
