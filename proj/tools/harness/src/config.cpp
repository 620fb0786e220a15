#include <cfq/errors.hpp>
#include <cfq/harness/config.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <sstream>

namespace cfq::harness {

using protocols::Family;

std::string_view to_string(Analysis a) {
  switch (a) {
    case Analysis::Outcomes: return "outcomes";
    case Analysis::WeakTrace: return "weaktrace";
    case Analysis::Histories: return "histories";
    case Analysis::Crossing: return "crossing";
    case Analysis::Loss: return "loss";
  }
  return "?";
}

Analysis analysis_from_string(std::string_view s) {
  for (auto a : {Analysis::Outcomes, Analysis::WeakTrace, Analysis::Histories,
                 Analysis::Crossing, Analysis::Loss})
    if (to_string(a) == s) return a;
  throw UsageError("analyses", "unknown analysis '" + std::string(s) + "'");
}

namespace {

double parse_number(const std::string& field, const std::string& token) {
  std::istringstream in(token);
  in.imbue(std::locale::classic());
  double v = 0.0;
  if (!(in >> v) || !in.eof() || !std::isfinite(v))
    throw UsageError(field, "not a number: '" + token + "'");
  return v;
}

int as_int(const std::string& field, double v) {
  if (v != std::floor(v) || std::abs(v) > 1e9)
    throw UsageError(field, "expected an integer, got " + std::to_string(v));
  return static_cast<int>(v);
}

std::string canonical(Family f, const std::string& param) {
  if (param == "M") return "outer";
  if (param == "N") return f == Family::ZenoChain ? "cycles" : "inner";
  return param;
}

} // namespace

std::vector<double> parse_value_list(const std::string& field, const std::string& text) {
  std::vector<double> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = as_int(field, parse_number(field, text.substr(0, dots)));
    const int hi = as_int(field, parse_number(field, text.substr(dots + 2)));
    if (hi < lo) throw UsageError(field, "empty range '" + text + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token.erase(0, token.find_first_not_of(" \t"));
    token.erase(token.find_last_not_of(" \t") + 1);
    if (!token.empty()) out.push_back(parse_number(field, token));
  }
  if (out.empty()) throw UsageError(field, "empty value list");
  return out;
}

std::vector<std::string> sweep_params(Family f) {
  switch (f) {
    case Family::EVBombTester: return {};
    case Family::Noh: return {"splitter"};
    case Family::ZenoChain: return {"cycles"};
    case Family::Salih: return {"outer", "inner"};
    case Family::Vaidman: return {"angle<k>"};
    case Family::NestedMZI: return {"outer_splitter"};
  }
  return {};
}

protocols::ProtocolSpec with_param(const protocols::ProtocolSpec& spec, const std::string& name,
                                   double value) {
  const std::string param = canonical(spec.family, name);
  const std::string field = "sweep.param";
  auto out = spec;
  auto unknown = [&] {
    return UsageError(field, "protocol '" + std::string(protocols::to_string(spec.family)) +
                                 "' has no parameter '" + name + "'");
  };
  std::visit(
      [&](auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, protocols::NohParams>) {
          if (param != "splitter") throw unknown();
          p.splitter = value;
        } else if constexpr (std::is_same_v<T, protocols::ZenoParams>) {
          if (param != "cycles") throw unknown();
          p.cycles = as_int(param, value);
        } else if constexpr (std::is_same_v<T, protocols::SalihParams>) {
          if (param == "outer") p.outer = as_int(param, value);
          else if (param == "inner") p.inner = as_int(param, value);
          else throw unknown();
        } else if constexpr (std::is_same_v<T, protocols::VaidmanParams>) {
          if (param.rfind("angle", 0) != 0 || param.size() == 5) throw unknown();
          const int k = as_int(param, parse_number(field, param.substr(5)));
          if (k < 0 || static_cast<std::size_t>(k) >= p.angles.size()) throw unknown();
          p.angles[static_cast<std::size_t>(k)] = value;
        } else if constexpr (std::is_same_v<T, protocols::NestedParams>) {
          if (param != "outer_splitter") throw unknown();
          p.outer_splitter = value;
        } else {
          throw unknown();
        }
      },
      out.params);
  try {
    protocols::validate(out);
  } catch (const StructuralError& e) {
    throw UsageError(param, e.what());
  }
  return out;
}

std::vector<std::pair<std::string, double>> parameter_values(const protocols::ProtocolSpec& spec) {
  std::vector<std::pair<std::string, double>> out;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, protocols::NohParams>) {
          out.emplace_back("splitter", p.splitter);
          out.emplace_back("photon_v", p.photon == Polarization::V ? 1.0 : 0.0);
        } else if constexpr (std::is_same_v<T, protocols::ZenoParams>) {
          out.emplace_back("cycles", p.cycles);
        } else if constexpr (std::is_same_v<T, protocols::SalihParams>) {
          out.emplace_back("outer", p.outer);
          out.emplace_back("inner", p.inner);
          out.emplace_back("polarized", p.polarized ? 1.0 : 0.0);
        } else if constexpr (std::is_same_v<T, protocols::VaidmanParams>) {
          out.emplace_back("inner_count", p.inner_count);
          for (std::size_t k = 0; k < p.angles.size(); ++k)
            out.emplace_back("angle" + std::to_string(k), p.angles[k]);
        } else if constexpr (std::is_same_v<T, protocols::NestedParams>) {
          out.emplace_back("outer_splitter", p.outer_splitter);
        }
      },
      spec.params);
  return out;
}

void validate(const ExperimentConfig& config) {
  try {
    protocols::validate(config.protocol);
  } catch (const StructuralError& e) {
    throw UsageError("protocol", e.what());
  }
  if (config.actions.empty()) throw UsageError("bob", "no Bob action selected");
  if (!(config.epsilon > 0.0)) throw UsageError("epsilon", "must be positive");
  if (config.sweep) {
    if (config.sweep->param.empty()) throw UsageError("sweep.param", "missing");
    if (config.sweep->values.empty()) throw UsageError("sweep.values", "empty value list");
    for (double v : config.sweep->values) with_param(config.protocol, config.sweep->param, v);
  }
  if (config.analyses.empty()) throw UsageError("analyses", "nothing to do");
}

std::string resolve_output_path(const std::string& output) {
  if (output.empty() || output == "-") return output;
  const std::filesystem::path p(output);
  if (p.is_absolute()) return output;
  if (const char* dir = std::getenv("CFQ_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
    return (std::filesystem::path(dir) / p).string();
  return output;
}

} // namespace cfq::harness
