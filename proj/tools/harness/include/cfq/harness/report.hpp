#pragma once

#include <cfq/counterfactuality.hpp>
#include <cfq/harness/config.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cfq::harness {

struct WeakTraceSummary {
  std::string outcome;
  std::string verdict;  // no-bob-presence | bob-presence | channel-presence | null-postselection
  bool bob_presence = false;
  bool channel_presence = false;
  /// Presence at Bob with none on any Channel segment.
  bool discontinuous = false;
  double max_bob_weak_value = 0.0;
};

struct HistoriesSummary {
  std::string outcome;
  std::string verdict;  // counterfactual | not-counterfactual | meaningless | null-postselection
  bool consistent = false;
  double max_offdiag_real = 0.0;
  std::size_t histories = 0;
};

struct ReportRow {
  std::string protocol;
  std::vector<std::pair<std::string, double>> parameters;
  protocols::BobAction action = protocols::BobAction::Open;
  LightModel light = LightModel::Fock;
  std::optional<std::string> sweep_param;
  double sweep_value = 0.0;
  std::map<std::string, double> probabilities;
  std::optional<double> crossing_mass;
  std::optional<double> bob_station_intensity;
  std::optional<WeakTraceSummary> weaktrace;
  std::optional<HistoriesSummary> histories;
  std::optional<cf::LossStatistics> loss;
};

/// Rows for one protocol spec, one per configured Bob action.
std::vector<ReportRow> run_point(const ExperimentConfig& config,
                                 const protocols::ProtocolSpec& spec);

/// All rows: sweep points in value order, each expanded over Bob actions.
std::vector<ReportRow> run_experiment(const ExperimentConfig& config);

struct ColumnTrend {
  std::string column;
  protocols::BobAction action = protocols::BobAction::Open;
  std::string direction;  // increasing | decreasing | constant | mixed
  bool strictly_monotone = false;
  double first = 0.0;
  double last = 0.0;
  /// Aitken delta-squared extrapolation of the last three points, when defined.
  std::optional<double> asymptote;
};

/// Trend of every numeric column across sweep points, per Bob action.
std::vector<ColumnTrend> summarize_sweep(const std::vector<ReportRow>& rows);

/// Numeric columns of a row by CSV column name.
std::map<std::string, double> numeric_columns(const ReportRow& row);

struct TuneReport {
  TuneConfig config;
  tune::TuneResult result;
  double leakage_bits = 0.0;
};

TuneReport run_tune(const TuneConfig& config);

} // namespace cfq::harness
