#pragma once

#include <cfq/harness/report.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace cfq::harness {

/// 17 significant digits, '.' decimal separator regardless of locale.
std::string format_double(double x);

void write_json(std::ostream& out, const std::string& command, const ExperimentConfig& config,
                const std::vector<ReportRow>& rows, const std::vector<ColumnTrend>* summary);
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);
void write_summary_csv(std::ostream& out, const std::vector<ColumnTrend>& summary);

void write_json(std::ostream& out, const TuneReport& report);
void write_csv(std::ostream& out, const TuneReport& report);

} // namespace cfq::harness
