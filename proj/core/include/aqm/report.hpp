#pragma once

#include "aqm/doublet.hpp"
#include "aqm/scenario.hpp"

#include <iosfwd>
#include <string>
#include <vector>

// Bit-stable text/CSV rendering and command dispatch. Floating-point values
// are printed with 12 fixed decimals through std::to_chars: no locale
// dependence, negative zero normalized, identical scenario + seed + build
// gives byte-identical output.

namespace aqm {

enum class ReportFormat { text, csv };

/// Intermediate tabular form shared by both renderers: comment preamble,
/// header, string cells.
struct ReportTable {
    std::vector<std::string> preamble;  // emitted as `# ...` lines
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

/// Fixed 12-decimal rendering used for every floating-point cell.
std::string format_number(double v);

std::string render(const ReportTable& table, ReportFormat format);

ReportTable to_table(const ComparisonReport& report);
ReportTable to_table(const RunStatistics& stats);

std::string emit_report(const ComparisonReport& report, ReportFormat format);
std::string emit_report(const RunStatistics& stats, ReportFormat format);

/// Dispatches the scenario command and writes the report to `out`.
/// Returns 0 on success, nonzero after writing a message to `err`.
int run_command(const Scenario& scenario, ReportFormat format, std::ostream& out,
                std::ostream& err);

}  // namespace aqm
