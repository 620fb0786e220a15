#pragma once

#include <cfq/loss_tuner.hpp>
#include <cfq/propagate.hpp>
#include <cfq/protocols.hpp>

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace cfq::harness {

/// Bad configuration. `field` names the offending config key.
class UsageError : public std::invalid_argument {
public:
  UsageError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

private:
  std::string field_;
};

enum class Analysis { Outcomes, WeakTrace, Histories, Crossing, Loss };
enum class OutputFormat { Json, Csv };

std::string_view to_string(Analysis a);
Analysis analysis_from_string(std::string_view s);

struct SweepSpec {
  std::string param;
  std::vector<double> values;
};

struct ExperimentConfig {
  protocols::ProtocolSpec protocol;
  /// Bob actions to run, in output order.
  std::vector<protocols::BobAction> actions{protocols::BobAction::Block,
                                            protocols::BobAction::Open};
  LightModel light = LightModel::Fock;
  std::set<Analysis> analyses{Analysis::Outcomes};
  /// Post-selected terminal; empty picks the terminal decoding Bob's bit.
  std::string outcome;
  double epsilon = 1e-10;
  std::optional<SweepSpec> sweep;
  OutputFormat format = OutputFormat::Json;
  std::string output;  // empty or "-" means stdout
};

struct TuneConfig {
  tune::TuneProblem problem = tune::default_problem();
  std::size_t seeds_per_dim = 5;
  OutputFormat format = OutputFormat::Json;
  std::string output;
};

/// Parses "2,3,5" or an inclusive integer range "2..50". Empty input is a
/// usage error.
std::vector<double> parse_value_list(const std::string& field, const std::string& text);

/// Parameter names accepted by sweeps for the given family.
std::vector<std::string> sweep_params(protocols::Family f);

/// Returns `spec` with `param` set to `value`. UsageError for names the
/// family does not have and for values violating its constraints.
protocols::ProtocolSpec with_param(const protocols::ProtocolSpec& spec, const std::string& param,
                                   double value);

/// Flat name -> value view of the protocol parameters (used for report
/// columns). Vaidman angles appear as angle0..angleK.
std::vector<std::pair<std::string, double>> parameter_values(const protocols::ProtocolSpec& spec);

/// Checks the whole config, including every sweep point.
void validate(const ExperimentConfig& config);

/// Prefixes relative output paths with $CFQ_OUTPUT_DIR when it is set.
std::string resolve_output_path(const std::string& output);

} // namespace cfq::harness
