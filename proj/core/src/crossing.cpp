#include <cfq/counterfactuality.hpp>
#include <cfq/errors.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace cfq::cf {

namespace {

bool beyond_alice(Region r) { return r == Region::Channel || r == Region::Bob; }

std::vector<double> classical_masses(const Circuit& circuit, const PhotonState& input) {
  const auto traj = forward_trajectory(circuit, input);
  std::vector<double> out;
  out.reserve(traj.size());
  for (const auto& s : traj) {
    double mass = 0.0;
    for (const auto& [m, a] : s.live)
      if (beyond_alice(circuit.region_of(m.path))) mass += std::norm(a);
    for (const auto& [m, a] : s.absorbed)
      if (beyond_alice(circuit.terminal(m.path).region)) mass += std::norm(a);
    out.push_back(mass);
  }
  return out;
}

std::vector<double> postselected_masses(const Circuit& circuit, const PhotonState& input,
                                        const CrossingQuery& q) {
  const WeakTraceReport trace = weak_trace(circuit, input, q.outcome, q.epsilon);
  std::vector<double> out(circuit.stage_count() + 1, 0.0);
  for (const auto& s : trace.segments)
    if (s.present && beyond_alice(s.region)) out[s.segment.boundary] += std::norm(s.forward);
  return out;
}

} // namespace

double crossing_report(const Circuit& circuit, const PhotonState& input,
                       const CrossingQuery& query) {
  std::vector<double> mass;
  if (query.light == LightModel::Classical) {
    mass = classical_masses(circuit, input);
  } else {
    if (query.outcome.empty())
      throw StructuralError("Fock crossing needs a post-selected outcome");
    mass = postselected_masses(circuit, input, query);
  }
  double crossed = std::max(0.0, mass.front());
  for (std::size_t k = 1; k < mass.size(); ++k) crossed += std::max(0.0, mass[k] - mass[k - 1]);
  // Round-off from isometric stages shows up as ~1e-17 inflows.
  return crossed < kZeroAmplitude ? 0.0 : crossed;
}

double bob_station_intensity(const Circuit& circuit, const PhotonState& input) {
  const auto dist = run_classical(circuit, input);
  double total = 0.0;
  std::size_t stations = 0;
  for (const auto& [label, ev] : circuit.terminals()) {
    if (ev.region != Region::Bob || ev.kind != TerminalKind::Blocker) continue;
    total += dist.at(label);
    ++stations;
  }
  return stations == 0 ? 0.0 : total / static_cast<double>(stations);
}

} // namespace cfq::cf
