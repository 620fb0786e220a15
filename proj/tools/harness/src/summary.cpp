#include <cfq/harness/report.hpp>

#include <cmath>

namespace cfq::harness {

namespace {

// Differences this small are treated as ties.
constexpr double kTrendTolerance = 1e-14;

std::optional<double> aitken(const std::vector<double>& x) {
  if (x.size() < 3) return std::nullopt;
  const double x0 = x[x.size() - 3], x1 = x[x.size() - 2], x2 = x[x.size() - 1];
  const double denom = (x2 - x1) - (x1 - x0);
  if (std::abs(denom) < 1e-300) return std::nullopt;
  const double a = x2 - (x2 - x1) * (x2 - x1) / denom;
  if (!std::isfinite(a)) return std::nullopt;
  return a;
}

ColumnTrend trend_of(const std::string& column, protocols::BobAction action,
                     const std::vector<double>& x) {
  ColumnTrend t;
  t.column = column;
  t.action = action;
  t.first = x.front();
  t.last = x.back();
  int up = 0, down = 0, flat = 0;
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double d = x[i] - x[i - 1];
    if (d > kTrendTolerance) ++up;
    else if (d < -kTrendTolerance) ++down;
    else ++flat;
  }
  if (up == 0 && down == 0) t.direction = "constant";
  else if (down == 0) t.direction = "increasing";
  else if (up == 0) t.direction = "decreasing";
  else t.direction = "mixed";
  t.strictly_monotone = flat == 0 && (up == 0 || down == 0) && x.size() > 1;
  t.asymptote = aitken(x);
  return t;
}

} // namespace

std::map<std::string, double> numeric_columns(const ReportRow& row) {
  std::map<std::string, double> out;
  for (const auto& [name, value] : row.parameters) out[name] = value;
  for (const auto& [label, p] : row.probabilities) out["p:" + label] = p;
  if (row.crossing_mass) out["crossing_mass"] = *row.crossing_mass;
  if (row.bob_station_intensity) out["bob_station_intensity"] = *row.bob_station_intensity;
  if (row.weaktrace) out["weaktrace_max_bob_weak_value"] = row.weaktrace->max_bob_weak_value;
  if (row.histories) out["histories_max_offdiag_real"] = row.histories->max_offdiag_real;
  if (row.loss) {
    out["p_loss_block"] = row.loss->p_loss_block;
    out["p_loss_open"] = row.loss->p_loss_open;
    out["leakage_bits"] = row.loss->leakage_bits;
  }
  return out;
}

std::vector<ColumnTrend> summarize_sweep(const std::vector<ReportRow>& rows) {
  std::vector<ColumnTrend> out;
  for (auto action : {protocols::BobAction::Block, protocols::BobAction::Open}) {
    std::vector<std::map<std::string, double>> series;
    for (const auto& r : rows)
      if (r.action == action) series.push_back(numeric_columns(r));
    if (series.size() < 2) continue;
    // Only columns present and finite at every point; terminal sets can
    // change with the swept parameter.
    for (const auto& [column, unused] : series.front()) {
      std::vector<double> x;
      for (const auto& s : series) {
        const auto it = s.find(column);
        if (it == s.end() || !std::isfinite(it->second)) break;
        x.push_back(it->second);
      }
      if (x.size() == series.size()) out.push_back(trend_of(column, action, x));
    }
  }
  return out;
}

} // namespace cfq::harness
