#include <cfq/counterfactuality.hpp>
#include <cfq/errors.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace cfq::cf {

bool WeakTraceReport::present_in(Region r) const {
  return std::any_of(segments.begin(), segments.end(), [r](const SegmentTrace& s) {
    return !s.terminal && s.present && s.region == r;
  });
}

std::vector<const SegmentTrace*> WeakTraceReport::present_segments(Region r) const {
  std::vector<const SegmentTrace*> out;
  for (const auto& s : segments)
    if (!s.terminal && s.present && s.region == r) out.push_back(&s);
  return out;
}

double WeakTraceReport::max_weak_value_on(const std::string& path) const {
  double best = 0.0;
  for (const auto& s : segments)
    if (!s.terminal && s.segment.mode.path == path) best = std::max(best, std::abs(s.weak_value));
  return best;
}

bool WeakTraceReport::present_on(const std::string& path) const {
  return max_weak_value_on(path) > epsilon;
}

WeakTraceReport weak_trace(const Circuit& circuit, const PhotonState& input,
                           const std::string& outcome, double epsilon) {
  if (!(epsilon > 0.0)) throw DomainError("weak-trace epsilon must be positive");
  const PostSelection ps = post_select(circuit, input, outcome);
  const std::vector<PhotonState> fwd = forward_trajectory(circuit, input);
  const std::size_t n = circuit.stage_count();

  std::vector<PhotonState> bwd(n + 1);
  bwd[n] = ps.final_state;
  for (std::size_t k = n; k-- > 0;) bwd[k] = apply_stage_adjoint(circuit, bwd[k + 1], k);

  WeakTraceReport report;
  report.outcome = outcome;
  report.epsilon = epsilon;
  report.probability = ps.probability;
  report.overlap_forward = inner_product(bwd[n], fwd[n]);
  report.overlap_backward = inner_product(bwd[0], fwd[0]);
  const Complex overlap = report.overlap_forward;

  auto emit = [&](std::size_t k, const Mode& m, bool terminal, Complex f, Complex b) {
    SegmentTrace s;
    s.segment = Segment{k, m};
    s.terminal = terminal;
    s.region = terminal ? circuit.terminal(m.path).region : circuit.region_of(m.path);
    s.forward = f;
    s.backward = b;
    s.weak_value = std::conj(b) * f / overlap;
    s.present = std::abs(s.weak_value) > epsilon;
    report.segments.push_back(s);
    return s.weak_value;
  };

  auto lookup = [](const std::map<Mode, Complex>& amps, const Mode& m) {
    const auto it = amps.find(m);
    return it == amps.end() ? Complex{} : it->second;
  };

  report.boundary_sums.reserve(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Complex sum{};
    std::set<Mode> live_modes, term_modes;
    for (const auto& [m, a] : fwd[k].live) live_modes.insert(m);
    for (const auto& [m, a] : bwd[k].live) live_modes.insert(m);
    for (const auto& [m, a] : fwd[k].absorbed) term_modes.insert(m);
    for (const auto& [m, a] : bwd[k].absorbed) term_modes.insert(m);
    for (const auto& m : live_modes)
      sum += emit(k, m, false, lookup(fwd[k].live, m), lookup(bwd[k].live, m));
    for (const auto& m : term_modes)
      sum += emit(k, m, true, lookup(fwd[k].absorbed, m), lookup(bwd[k].absorbed, m));
    report.boundary_sums.push_back(sum);
  }
  return report;
}

} // namespace cfq::cf
