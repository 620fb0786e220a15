#include <cfq/errors.hpp>
#include <cfq/harness/report.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>

namespace cfq::harness {

using protocols::BitValue;
using protocols::BobAction;

namespace {

constexpr double kUndefined = std::numeric_limits<double>::quiet_NaN();

std::string pick_outcome(const ExperimentConfig& config, const protocols::Protocol& p,
                         const OutcomeDistribution& fock) {
  if (!config.outcome.empty()) {
    if (!p.circuit.has_terminal(config.outcome))
      throw UsageError("outcome", "protocol has no terminal '" + config.outcome + "'");
    return config.outcome;
  }
  const BitValue sent = p.action == BobAction::Block ? BitValue::Bit1 : BitValue::Bit0;
  if (auto t = p.mapping.terminal_for(sent)) return *t;
  std::string best;
  double best_p = -1.0;
  for (const auto& [label, prob] : fock.values)
    if (p.mapping.of(label) != BitValue::Abort && prob > best_p) {
      best = label;
      best_p = prob;
    }
  return best;
}

WeakTraceSummary summarize_trace(const protocols::Protocol& p, const std::string& outcome,
                                 double epsilon) {
  WeakTraceSummary s;
  s.outcome = outcome;
  const PhotonState input = initial_state(p.circuit);
  try {
    const auto trace = cf::weak_trace(p.circuit, input, outcome, epsilon);
    s.bob_presence = trace.present_in(Region::Bob);
    s.channel_presence = trace.present_in(Region::Channel);
    s.discontinuous = s.bob_presence && !s.channel_presence;
    for (const auto* seg : trace.present_segments(Region::Bob))
      s.max_bob_weak_value = std::max(s.max_bob_weak_value, std::abs(seg->weak_value));
    s.verdict = s.bob_presence ? "bob-presence"
                : s.channel_presence ? "channel-presence"
                                     : "no-bob-presence";
  } catch (const NullPostSelectionError&) {
    s.verdict = "null-postselection";
  }
  return s;
}

HistoriesSummary summarize_histories(const protocols::Protocol& p, const std::string& outcome) {
  HistoriesSummary s;
  s.outcome = outcome;
  const auto family =
      cf::build_history_family(p.circuit, initial_state(p.circuit), cf::default_cuts(p.circuit),
                               cf::default_coarse_graining(p.circuit));
  s.consistent = family.consistent;
  s.max_offdiag_real = family.max_offdiag_real;
  s.histories = family.histories.size();
  try {
    s.verdict = std::string(cf::to_string(
        cf::classify_by_histories(family, {protocols::kCellBob}, outcome)));
  } catch (const NullPostSelectionError&) {
    s.verdict = "null-postselection";
  }
  return s;
}

} // namespace

std::vector<ReportRow> run_point(const ExperimentConfig& config,
                                 const protocols::ProtocolSpec& spec) {
  const auto has = [&](Analysis a) { return config.analyses.count(a) != 0; };

  std::optional<cf::LossStatistics> loss;
  if (has(Analysis::Loss)) {
    auto blocked = spec;
    blocked.action = BobAction::Block;
    auto open = spec;
    open.action = BobAction::Open;
    loss = cf::loss_statistics(protocols::build(blocked), protocols::build(open));
  }

  std::vector<ReportRow> rows;
  for (BobAction action : config.actions) {
    auto s = spec;
    s.action = action;
    const auto p = protocols::build(s);
    const PhotonState input = initial_state(p.circuit);
    const auto fock = run_fock(p.circuit, input);

    ReportRow row;
    row.protocol = std::string(protocols::to_string(spec.family));
    row.parameters = parameter_values(spec);
    row.action = action;
    row.light = config.light;
    row.probabilities =
        config.light == LightModel::Fock ? fock.values : run_classical(p.circuit, input).values;

    const std::string outcome = pick_outcome(config, p, fock);
    if (has(Analysis::Crossing)) {
      if (config.light == LightModel::Classical) {
        row.crossing_mass = cf::crossing_report(p.circuit, input, {LightModel::Classical, "", 0});
      } else {
        try {
          row.crossing_mass =
              cf::crossing_report(p.circuit, input, {LightModel::Fock, outcome, config.epsilon});
        } catch (const NullPostSelectionError&) {
          row.crossing_mass = kUndefined;
        }
      }
      row.bob_station_intensity = cf::bob_station_intensity(p.circuit, input);
    }
    if (has(Analysis::WeakTrace)) row.weaktrace = summarize_trace(p, outcome, config.epsilon);
    if (has(Analysis::Histories)) row.histories = summarize_histories(p, outcome);
    row.loss = loss;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ReportRow> run_experiment(const ExperimentConfig& config) {
  validate(config);
  if (!config.sweep) return run_point(config, config.protocol);

  const auto& values = config.sweep->values;
  std::vector<protocols::ProtocolSpec> specs;
  for (double v : values) specs.push_back(with_param(config.protocol, config.sweep->param, v));

  // Points run concurrently in batches; rows are gathered in sweep order.
  const std::size_t width = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::vector<ReportRow>> results(specs.size());
  for (std::size_t start = 0; start < specs.size(); start += width) {
    const std::size_t end = std::min(specs.size(), start + width);
    std::vector<std::future<std::vector<ReportRow>>> batch;
    for (std::size_t i = start; i < end; ++i)
      batch.push_back(std::async(std::launch::async, run_point, std::cref(config),
                                 std::cref(specs[i])));
    for (std::size_t i = start; i < end; ++i) results[i] = batch[i - start].get();
  }

  std::vector<ReportRow> rows;
  for (std::size_t i = 0; i < results.size(); ++i)
    for (auto& r : results[i]) {
      r.sweep_param = config.sweep->param;
      r.sweep_value = values[i];
      rows.push_back(std::move(r));
    }
  return rows;
}

TuneReport run_tune(const TuneConfig& config) {
  TuneReport report;
  report.config = config;
  const auto seeds = tune::seed_grid(config.problem.free.size(), config.seeds_per_dim);
  report.result = tune::solve_equal_loss(config.problem, seeds);
  report.leakage_bits = cf::abort_leakage_bits(report.result.evaluation.p_loss_block,
                                               report.result.evaluation.p_loss_open);
  return report;
}

} // namespace cfq::harness
