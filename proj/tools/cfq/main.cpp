// cfq: run counterfactual-communication protocol simulations and analyses.
//
//   cfq simulate --protocol salih --outer 2 --inner 4 --bob block
//   cfq analyze  --protocol nested --analyses weaktrace
//   cfq sweep    --protocol zeno --sweep-param cycles --sweep-values 2..50
//   cfq tune     --inner-count 2 --format csv
//
// Options may also come from a key=value file given with --config; flags on
// the command line take precedence. Relative --output paths are placed under
// $CFQ_OUTPUT_DIR when it is set.

#include <cfq/errors.hpp>
#include <cfq/harness/format.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

namespace {

using namespace cfq;
using namespace cfq::harness;

enum Exit { kOk = 0, kFailure = 1, kUsage = 2, kResource = 3, kNotConverged = 4 };

struct Options {
  std::string protocol = "salih";
  int outer = 2;
  int inner = 2;
  int cycles = 10;
  bool polarized = true;
  double splitter = std::numbers::pi / 4;
  std::string photon = "H";
  double outer_splitter = protocols::NestedParams{}.outer_splitter;
  int inner_count = 2;
  std::string angles;
  std::string bob = "both";
  std::string bomb;
  std::string light = "fock";
  std::string analyses;
  std::string outcome;
  double epsilon = 1e-10;
  std::string sweep_param;
  std::string sweep_values;
  std::string format = "json";
  std::string output;
  std::string objective = "equal-loss-zero-crosstalk";
  std::size_t seeds_per_dim = 5;
  std::string free_slots;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

std::vector<double> vaidman_angles(const Options& o) {
  if (o.angles.empty()) return tune::default_problem(o.inner_count).angles;
  return parse_value_list("angles", o.angles);
}

protocols::ProtocolSpec protocol_spec(const Options& o) {
  protocols::ProtocolSpec spec;
  try {
    spec.family = protocols::family_from_string(o.protocol);
  } catch (const StructuralError& e) {
    throw UsageError("protocol", e.what());
  }
  switch (spec.family) {
    case protocols::Family::EVBombTester: spec.params = protocols::EVParams{}; break;
    case protocols::Family::Noh:
      spec.params = protocols::NohParams{
          o.splitter, polarization_from_string(o.photon)};
      break;
    case protocols::Family::ZenoChain: spec.params = protocols::ZenoParams{o.cycles}; break;
    case protocols::Family::Salih:
      spec.params = protocols::SalihParams{o.outer, o.inner, o.polarized};
      break;
    case protocols::Family::Vaidman:
      spec.params = protocols::VaidmanParams{o.inner_count, vaidman_angles(o)};
      break;
    case protocols::Family::NestedMZI:
      spec.params = protocols::NestedParams{o.outer_splitter};
      break;
  }
  return spec;
}

ExperimentConfig experiment_config(const Options& o, const std::string& command) {
  ExperimentConfig c;
  c.protocol = protocol_spec(o);
  std::string bob = o.bob;
  if (!o.bomb.empty()) bob = o.bomb == "live" ? "block" : "open";
  if (bob == "block") c.actions = {protocols::BobAction::Block};
  else if (bob == "open") c.actions = {protocols::BobAction::Open};
  c.light = o.light == "classical" ? LightModel::Classical : LightModel::Fock;

  c.analyses.clear();
  if (o.analyses.empty()) {
    c.analyses.insert(Analysis::Outcomes);
    if (command == "analyze")
      c.analyses.insert({Analysis::WeakTrace, Analysis::Histories, Analysis::Crossing,
                         Analysis::Loss});
  } else {
    for (const auto& a : split(o.analyses)) c.analyses.insert(analysis_from_string(a));
  }
  c.outcome = o.outcome;
  c.epsilon = o.epsilon;

  const bool sweep_flags = !o.sweep_param.empty() || !o.sweep_values.empty();
  if (command == "sweep") {
    if (o.sweep_param.empty()) throw UsageError("sweep-param", "required by sweep");
    c.sweep = SweepSpec{o.sweep_param, parse_value_list("sweep-values", o.sweep_values)};
  } else if (sweep_flags) {
    throw UsageError("sweep-param", "only valid with the sweep command");
  }
  c.format = o.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  c.output = o.output;
  validate(c);
  return c;
}

TuneConfig tune_config(const Options& o) {
  TuneConfig c;
  c.problem = tune::default_problem(o.inner_count);
  if (!o.angles.empty()) c.problem.angles = parse_value_list("angles", o.angles);
  if (!o.free_slots.empty()) {
    c.problem.free.clear();
    for (double v : parse_value_list("free", o.free_slots)) {
      if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
        throw UsageError("free", "slot indices must be non-negative integers");
      c.problem.free.push_back(static_cast<std::size_t>(v));
    }
  }
  try {
    c.problem.objective = tune::objective_from_string(o.objective);
  } catch (const StructuralError& e) {
    throw UsageError("objective", e.what());
  }
  c.seeds_per_dim = o.seeds_per_dim;
  c.format = o.format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  c.output = o.output;
  return c;
}

template <class Writer>
void with_output(const std::string& requested, Writer&& write) {
  const std::string path = resolve_output_path(requested);
  if (path.empty() || path == "-") {
    write(std::cout, path);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("output", "cannot open '" + path + "' for writing");
  write(out, path);
}

int run_experiment_command(const Options& o, const std::string& command) {
  const auto config = experiment_config(o, command);
  const auto rows = run_experiment(config);
  std::vector<ColumnTrend> summary;
  if (config.sweep) summary = summarize_sweep(rows);
  with_output(config.output, [&](std::ostream& out, const std::string& path) {
    if (config.format == OutputFormat::Json) {
      write_json(out, command, config, rows, config.sweep ? &summary : nullptr);
      return;
    }
    write_csv(out, rows);
    if (!config.sweep) return;
    if (path.empty() || path == "-") {
      write_summary_csv(std::cerr, summary);
    } else {
      std::ofstream s(path + ".summary.csv", std::ios::binary);
      write_summary_csv(s, summary);
    }
  });
  return kOk;
}

int run_tune_command(const Options& o) {
  const auto report = run_tune(tune_config(o));
  with_output(report.config.output, [&](std::ostream& out, const std::string&) {
    if (report.config.format == OutputFormat::Json) write_json(out, report);
    else write_csv(out, report);
  });
  if (!report.result.converged) {
    std::cerr << "cfq: tuner did not converge (residual " << format_double(report.result.residual)
              << ")\n";
    return kNotConverged;
  }
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Counterfactual communication protocol simulator", "cfq"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key=value file");
  Options o;

  app.add_option("--protocol", o.protocol, "ev | noh | zeno | salih | vaidman | nested")
      ->check(CLI::IsMember({"ev", "noh", "zeno", "salih", "vaidman", "nested"}));
  app.add_option("--outer", o.outer, "Salih outer cycles M")->check(CLI::Range(1, 100000));
  app.add_option("--inner", o.inner, "Salih inner cycles N")->check(CLI::Range(2, 100000));
  app.add_option("--cycles", o.cycles, "Zeno chain length N")->check(CLI::Range(1, 100000));
  app.add_option("--polarized", o.polarized, "Salih with HWP+PBS (true) or plain splitters");
  app.add_option("--splitter", o.splitter, "Noh splitter angle (rad)");
  app.add_option("--photon", o.photon, "Noh photon polarization")->check(CLI::IsMember({"H", "V"}));
  app.add_option("--outer-splitter", o.outer_splitter, "Nested MZI outer splitter angle (rad)");
  app.add_option("--inner-count", o.inner_count, "Vaidman inner interferometers")
      ->check(CLI::Range(2, 1000));
  app.add_option("--angles", o.angles, "Vaidman splitter angles, comma separated");
  app.add_option("--bob", o.bob, "block | open | both")
      ->check(CLI::IsMember({"block", "open", "both"}));
  app.add_option("--bomb", o.bomb, "Bomb tester: live (block) | dud (open)")
      ->check(CLI::IsMember({"live", "dud"}));
  app.add_option("--light", o.light, "fock | classical")
      ->check(CLI::IsMember({"fock", "classical"}));
  app.add_option("--analyses", o.analyses,
                 "Comma list of outcomes, weaktrace, histories, crossing, loss");
  app.add_option("--outcome", o.outcome, "Post-selected terminal for analyses");
  app.add_option("--epsilon", o.epsilon, "Weak-value presence threshold")
      ->check(CLI::PositiveNumber);
  app.add_option("--sweep-param", o.sweep_param, "Parameter to sweep");
  app.add_option("--sweep-values", o.sweep_values, "Comma list or integer range a..b");
  app.add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", o.output, "Report path (default stdout)");
  app.add_option("--objective", o.objective, "equal-loss | equal-loss-zero-crosstalk")
      ->check(CLI::IsMember({"equal-loss", "equal-loss-zero-crosstalk"}));
  app.add_option("--seeds-per-dim", o.seeds_per_dim, "Tuner seed grid points per free angle")
      ->check(CLI::Range(1, 625));
  app.add_option("--free", o.free_slots, "Tuner free angle slots, comma separated");

  auto* simulate = app.add_subcommand("simulate", "Outcome probabilities per Bob action");
  auto* analyze = app.add_subcommand("analyze", "Counterfactuality analyses");
  auto* sweep = app.add_subcommand("sweep", "Run over a parameter range and summarize trends");
  auto* tune = app.add_subcommand("tune", "Solve for equal-loss splitter angles");
  for (auto* sub : {simulate, analyze, sweep, tune}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*tune) return run_tune_command(o);
    const std::string command = app.get_subcommands().front()->get_name();
    return run_experiment_command(o, command);
  } catch (const UsageError& e) {
    std::cerr << "cfq: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const StructuralError& e) {
    std::cerr << "cfq: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "cfq: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    std::cerr << "cfq: resource limit: " << e.what() << '\n';
    return kResource;
  } catch (const std::exception& e) {
    std::cerr << "cfq: error: " << e.what() << '\n';
    return kFailure;
  }
}
