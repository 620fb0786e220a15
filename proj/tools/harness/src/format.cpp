#include <cfq/harness/format.hpp>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

namespace cfq::harness {

using json = nlohmann::ordered_json;

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_bool(bool b) { return b ? "true" : "false"; }

json row_json(const ReportRow& r) {
  json j;
  if (r.sweep_param) {
    j["sweep_param"] = *r.sweep_param;
    j["sweep_value"] = r.sweep_value;
  }
  j["protocol"] = r.protocol;
  json params = json::object();
  for (const auto& [k, v] : r.parameters) params[k] = v;
  j["parameters"] = params;
  j["bob_action"] = protocols::to_string(r.action);
  j["light"] = to_string(r.light);
  json probs = json::object();
  double total = 0.0;
  for (const auto& [k, v] : r.probabilities) {
    probs[k] = v;
    total += v;
  }
  j["probabilities"] = probs;
  j["probability_total"] = total;
  if (r.crossing_mass) {
    j["crossing_mass"] = *r.crossing_mass;
    j["bob_station_intensity"] = *r.bob_station_intensity;
  }
  if (r.weaktrace) {
    const auto& w = *r.weaktrace;
    j["weaktrace"] = {{"outcome", w.outcome},
                      {"verdict", w.verdict},
                      {"bob_presence", w.bob_presence},
                      {"channel_presence", w.channel_presence},
                      {"discontinuous", w.discontinuous},
                      {"max_bob_weak_value", w.max_bob_weak_value},
                      {"order", "first"}};
  }
  if (r.histories) {
    const auto& h = *r.histories;
    j["histories"] = {{"outcome", h.outcome},
                      {"verdict", h.verdict},
                      {"consistent", h.consistent},
                      {"max_offdiag_real", h.max_offdiag_real},
                      {"count", h.histories}};
  }
  if (r.loss) {
    j["loss"] = {{"p_loss_block", r.loss->p_loss_block},
                 {"p_loss_open", r.loss->p_loss_open},
                 {"leakage_bits", r.loss->leakage_bits}};
  }
  return j;
}

json config_json(const ExperimentConfig& c) {
  json j;
  j["protocol"] = protocols::to_string(c.protocol.family);
  json params = json::object();
  for (const auto& [k, v] : parameter_values(c.protocol)) params[k] = v;
  j["parameters"] = params;
  json actions = json::array();
  for (auto a : c.actions) actions.push_back(protocols::to_string(a));
  j["bob_actions"] = actions;
  j["light"] = to_string(c.light);
  json analyses = json::array();
  for (auto a : c.analyses) analyses.push_back(to_string(a));
  j["analyses"] = analyses;
  j["outcome"] = c.outcome;
  j["epsilon"] = c.epsilon;
  if (c.sweep) j["sweep"] = {{"param", c.sweep->param}, {"values", c.sweep->values}};
  return j;
}

} // namespace

void write_json(std::ostream& out, const std::string& command, const ExperimentConfig& config,
                const std::vector<ReportRow>& rows, const std::vector<ColumnTrend>* summary) {
  json j;
  j["schema_version"] = 1;
  j["command"] = command;
  j["config"] = config_json(config);
  json arr = json::array();
  for (const auto& r : rows) arr.push_back(row_json(r));
  j["rows"] = arr;
  if (summary) {
    json s = json::array();
    for (const auto& t : *summary) {
      json e = {{"column", t.column},
                {"bob_action", protocols::to_string(t.action)},
                {"direction", t.direction},
                {"strictly_monotone", t.strictly_monotone},
                {"first", t.first},
                {"last", t.last}};
      e["asymptote"] = t.asymptote ? json(*t.asymptote) : json(nullptr);
      s.push_back(e);
    }
    j["summary"] = s;
  }
  out << j.dump(2) << '\n';
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
  if (rows.empty()) return;
  const ReportRow& head = rows.front();
  std::vector<std::string> params;
  std::set<std::string> terminals;
  for (const auto& r : rows) {
    for (const auto& [k, v] : r.parameters)
      if (std::find(params.begin(), params.end(), k) == params.end()) params.push_back(k);
    for (const auto& [k, v] : r.probabilities) terminals.insert(k);
  }

  std::vector<std::string> header;
  if (head.sweep_param) header.insert(header.end(), {"sweep_param", "sweep_value"});
  header.push_back("protocol");
  header.insert(header.end(), params.begin(), params.end());
  header.insert(header.end(), {"bob_action", "light"});
  for (const auto& t : terminals) header.push_back("p:" + t);
  header.push_back("probability_total");
  if (head.crossing_mass) header.insert(header.end(), {"crossing_mass", "bob_station_intensity"});
  if (head.weaktrace)
    header.insert(header.end(),
                  {"weaktrace_outcome", "weaktrace_verdict", "weaktrace_bob_presence",
                   "weaktrace_channel_presence", "weaktrace_discontinuous",
                   "weaktrace_max_bob_weak_value"});
  if (head.histories)
    header.insert(header.end(), {"histories_outcome", "histories_verdict", "histories_consistent",
                                 "histories_max_offdiag_real", "histories_count"});
  if (head.loss) header.insert(header.end(), {"p_loss_block", "p_loss_open", "leakage_bits"});

  auto emit = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  emit(header);

  for (const auto& r : rows) {
    std::vector<std::string> c;
    if (head.sweep_param) {
      c.push_back(r.sweep_param.value_or(""));
      c.push_back(format_double(r.sweep_value));
    }
    c.push_back(r.protocol);
    for (const auto& name : params) {
      std::string cell;
      for (const auto& [k, v] : r.parameters)
        if (k == name) cell = format_double(v);
      c.push_back(cell);
    }
    c.push_back(std::string(protocols::to_string(r.action)));
    c.push_back(std::string(to_string(r.light)));
    double total = 0.0;
    for (const auto& t : terminals) {
      const auto it = r.probabilities.find(t);
      c.push_back(it == r.probabilities.end() ? "" : format_double(it->second));
      if (it != r.probabilities.end()) total += it->second;
    }
    c.push_back(format_double(total));
    if (head.crossing_mass) {
      c.push_back(format_double(r.crossing_mass.value_or(std::nan(""))));
      c.push_back(format_double(r.bob_station_intensity.value_or(std::nan(""))));
    }
    if (head.weaktrace) {
      const auto& w = *r.weaktrace;
      c.insert(c.end(), {w.outcome, w.verdict, csv_bool(w.bob_presence),
                         csv_bool(w.channel_presence), csv_bool(w.discontinuous),
                         format_double(w.max_bob_weak_value)});
    }
    if (head.histories) {
      const auto& h = *r.histories;
      c.insert(c.end(), {h.outcome, h.verdict, csv_bool(h.consistent),
                         format_double(h.max_offdiag_real), std::to_string(h.histories)});
    }
    if (head.loss)
      c.insert(c.end(), {format_double(r.loss->p_loss_block), format_double(r.loss->p_loss_open),
                         format_double(r.loss->leakage_bits)});
    emit(c);
  }
}

void write_summary_csv(std::ostream& out, const std::vector<ColumnTrend>& summary) {
  out << "column,bob_action,direction,strictly_monotone,first,last,asymptote\n";
  for (const auto& t : summary)
    out << t.column << ',' << protocols::to_string(t.action) << ',' << t.direction << ','
        << csv_bool(t.strictly_monotone) << ',' << format_double(t.first) << ','
        << format_double(t.last) << ',' << (t.asymptote ? format_double(*t.asymptote) : "")
        << '\n';
}

namespace {

json tune_json(const TuneReport& r) {
  const auto& p = r.config.problem;
  const auto& res = r.result;
  const auto& e = res.evaluation;
  json j;
  j["schema_version"] = 1;
  j["command"] = "tune";
  j["problem"] = {{"inner_count", p.inner_count},
                  {"angles", p.angles},
                  {"free", p.free},
                  {"objective", tune::to_string(p.objective)},
                  {"seeds_per_dim", r.config.seeds_per_dim}};
  j["result"] = {{"angles", res.angles},
                 {"residual", res.residual},
                 {"crosstalk", res.crosstalk},
                 {"p_loss_block", e.p_loss_block},
                 {"p_loss_open", e.p_loss_open},
                 {"p_d1_open", e.p_d1_open},
                 {"p_d0_block", e.p_d0_block},
                 {"decodability", e.decodability},
                 {"leakage_bits", r.leakage_bits},
                 {"iterations", res.iterations},
                 {"evaluations", res.evaluations},
                 {"seeds", res.seeds},
                 {"best_seed", res.best_seed},
                 {"converged", res.converged}};
  return j;
}

} // namespace

void write_json(std::ostream& out, const TuneReport& report) {
  out << tune_json(report).dump(2) << '\n';
}

void write_csv(std::ostream& out, const TuneReport& report) {
  const auto& res = report.result;
  const auto& e = res.evaluation;
  out << "inner_count,objective";
  for (std::size_t k = 0; k < res.angles.size(); ++k) out << ",angle" << k;
  out << ",residual,crosstalk,p_loss_block,p_loss_open,p_d1_open,p_d0_block,decodability,"
         "leakage_bits,iterations,evaluations,seeds,best_seed,converged\n";
  out << report.config.problem.inner_count << ',' << tune::to_string(report.config.problem.objective);
  for (double a : res.angles) out << ',' << format_double(a);
  for (double v : {res.residual, res.crosstalk, e.p_loss_block, e.p_loss_open, e.p_d1_open,
                   e.p_d0_block, e.decodability, report.leakage_bits})
    out << ',' << format_double(v);
  out << ',' << res.iterations << ',' << res.evaluations << ',' << res.seeds << ','
      << res.best_seed << ',' << csv_bool(res.converged) << '\n';
}

} // namespace cfq::harness
