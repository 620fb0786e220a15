#include <cfq/propagate.hpp>

#include <cfq/errors.hpp>

#include <array>
#include <cmath>
#include <string>
#include <type_traits>

namespace cfq {

namespace {

using Amps = std::map<Mode, Complex>;
using PolAmps = std::map<Polarization, Complex>;

PolAmps take(Amps& amps, const std::string& path) {
  PolAmps out;
  if (path.empty()) return out;
  auto it = amps.lower_bound(Mode{path, Polarization::H});
  while (it != amps.end() && it->first.path == path) {
    out[it->first.pol] = it->second;
    it = amps.erase(it);
  }
  return out;
}

bool occupied(const Amps& amps, const std::string& path) {
  auto it = amps.lower_bound(Mode{path, Polarization::H});
  for (; it != amps.end() && it->first.path == path; ++it)
    if (std::abs(it->second) > kZeroAmplitude) return true;
  return false;
}

Complex get(const PolAmps& p, Polarization pol) {
  auto it = p.find(pol);
  return it == p.end() ? Complex{} : it->second;
}

// Writes `amp` to (path, pol). An empty path is an unused port: light there is
// an error, float dust is dropped.
void put(Amps& amps, const std::string& path, Polarization pol, Complex amp,
         const OpticalElement& element) {
  if (amp == Complex{}) return;
  if (path.empty()) {
    if (std::abs(amp) > kZeroAmplitude)
      throw InternalConsistencyError("light reached an unused port of " + describe(element));
    return;
  }
  amps[Mode{path, pol}] += amp;
}

// Writes to a port that must not be annihilated on the backward pass; empty
// names are vacuum inputs and silently absorb the backward amplitude.
void put_backward(Amps& amps, const std::string& path, Polarization pol, Complex amp) {
  if (path.empty() || amp == Complex{}) return;
  amps[Mode{path, pol}] += amp;
}

std::vector<Polarization> pols_of(const PolAmps& a, const PolAmps& b) {
  std::vector<Polarization> out;
  for (auto p : {Polarization::H, Polarization::V, Polarization::None})
    if (a.count(p) || b.count(p)) out.push_back(p);
  return out;
}

void require_polarized(const PolAmps& a, const OpticalElement& e) {
  if (a.count(Polarization::None))
    throw StructuralError(describe(e) + " acts on unpolarized light");
}

void check_paths(const Circuit& c, const OpticalElement& e) {
  for (const auto& p : touched_paths(e))
    if (!c.has_path(p)) throw StructuralError(describe(e) + ": unknown path '" + p + "'");
  if (const auto* a = std::get_if<Absorber>(&e); a && !c.has_terminal(a->terminal))
    throw StructuralError(describe(e) + ": unknown terminal '" + a->terminal + "'");
}

// Output paths that are not also inputs must be dark before the element
// writes to them.
void check_outputs_free(const Amps& amps, const OpticalElement& e,
                        std::initializer_list<const std::string*> outs,
                        std::initializer_list<const std::string*> ins) {
  for (const auto* o : outs) {
    if (o->empty()) continue;
    bool is_input = false;
    for (const auto* i : ins) is_input = is_input || (*i == *o);
    if (!is_input && occupied(amps, *o))
      throw InternalConsistencyError(describe(e) + ": output path '" + *o +
                                     "' already carries light");
  }
}

// Drops backward amplitude on paths the element consumes but does not emit:
// those modes have no preimage.
void drop_consumed(Amps& amps, std::initializer_list<const std::string*> ins,
                   std::initializer_list<const std::string*> outs) {
  for (const auto* i : ins) {
    if (i->empty()) continue;
    bool is_output = false;
    for (const auto* o : outs) is_output = is_output || (*i == *o);
    if (!is_output) take(amps, *i);
  }
}

void forward_in_place(PhotonState& s, const OpticalElement& element) {
  auto& amps = s.live;
  std::visit(
      [&](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          const std::string& oa = el.out_a.empty() && el.out_b.empty() ? el.in_a : el.out_a;
          auto a = take(amps, el.in_a);
          auto b = take(amps, el.in_b);
          check_outputs_free(amps, element, {&oa, &el.out_b}, {&el.in_a, &el.in_b});
          const double c = std::cos(el.theta), sn = std::sin(el.theta);
          for (auto p : pols_of(a, b)) {
            const Complex x = get(a, p), y = get(b, p);
            put(amps, oa, p, c * x - sn * y, element);
            put(amps, el.out_b, p, sn * x + c * y, element);
          }
        } else if constexpr (std::is_same_v<T, PolarizingBeamSplitter>) {
          auto a = take(amps, el.in_a);
          auto b = take(amps, el.in_b);
          require_polarized(a, element);
          require_polarized(b, element);
          check_outputs_free(amps, element, {&el.out_transmit, &el.out_reflect},
                             {&el.in_a, &el.in_b});
          put(amps, el.out_transmit, Polarization::H, get(a, Polarization::H), element);
          put(amps, el.out_reflect, Polarization::V, get(a, Polarization::V), element);
          put(amps, el.out_reflect, Polarization::H, get(b, Polarization::H), element);
          put(amps, el.out_transmit, Polarization::V, get(b, Polarization::V), element);
        } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
          auto a = take(amps, el.path);
          require_polarized(a, element);
          const double c = std::cos(el.theta), sn = std::sin(el.theta);
          const Complex h = get(a, Polarization::H), v = get(a, Polarization::V);
          put(amps, el.path, Polarization::H, c * h - sn * v, element);
          put(amps, el.path, Polarization::V, sn * h + c * v, element);
        } else if constexpr (std::is_same_v<T, Mirror>) {
          auto a = take(amps, el.from);
          check_outputs_free(amps, element, {&el.to}, {&el.from});
          for (const auto& [p, x] : a) put(amps, el.to, p, x, element);
        } else if constexpr (std::is_same_v<T, Absorber>) {
          auto a = take(amps, el.path);
          for (const auto& [p, x] : a)
            if (x != Complex{}) s.absorbed[Mode{el.terminal, p}] += x;
        } else if constexpr (std::is_same_v<T, Source>) {
          // inert
        }
      },
      element);
}

void adjoint_in_place(PhotonState& s, const OpticalElement& element) {
  auto& amps = s.live;
  std::visit(
      [&](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          const std::string& oa = el.out_a.empty() && el.out_b.empty() ? el.in_a : el.out_a;
          drop_consumed(amps, {&el.in_a, &el.in_b}, {&oa, &el.out_b});
          auto a = take(amps, oa);
          auto b = take(amps, el.out_b);
          const double c = std::cos(el.theta), sn = std::sin(el.theta);
          for (auto p : pols_of(a, b)) {
            const Complex x = get(a, p), y = get(b, p);
            put_backward(amps, el.in_a, p, c * x + sn * y);
            put_backward(amps, el.in_b, p, -sn * x + c * y);
          }
        } else if constexpr (std::is_same_v<T, PolarizingBeamSplitter>) {
          drop_consumed(amps, {&el.in_a, &el.in_b}, {&el.out_transmit, &el.out_reflect});
          auto t = take(amps, el.out_transmit);
          auto r = take(amps, el.out_reflect);
          put_backward(amps, el.in_a, Polarization::H, get(t, Polarization::H));
          put_backward(amps, el.in_b, Polarization::V, get(t, Polarization::V));
          put_backward(amps, el.in_a, Polarization::V, get(r, Polarization::V));
          put_backward(amps, el.in_b, Polarization::H, get(r, Polarization::H));
        } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
          auto a = take(amps, el.path);
          const double c = std::cos(el.theta), sn = std::sin(el.theta);
          const Complex h = get(a, Polarization::H), v = get(a, Polarization::V);
          put_backward(amps, el.path, Polarization::H, c * h + sn * v);
          put_backward(amps, el.path, Polarization::V, -sn * h + c * v);
        } else if constexpr (std::is_same_v<T, Mirror>) {
          take(amps, el.from);
          auto a = take(amps, el.to);
          for (const auto& [p, x] : a) put_backward(amps, el.from, p, x);
        } else if constexpr (std::is_same_v<T, Absorber>) {
          take(amps, el.path);
          auto a = take(s.absorbed, el.terminal);
          for (const auto& [p, x] : a) put_backward(amps, el.path, p, x);
        } else if constexpr (std::is_same_v<T, Source>) {
          // inert
        }
      },
      element);
}

void check_norm(double before, double after, const std::string& where) {
  if (std::abs(after - before) > kNormDriftLimit)
    throw InternalConsistencyError("norm drift " + std::to_string(after - before) + " at " +
                                   where);
}

} // namespace

std::string_view to_string(LightModel m) {
  return m == LightModel::Fock ? "fock" : "classical";
}

double OutcomeDistribution::at(const std::string& terminal) const {
  auto it = values.find(terminal);
  return it == values.end() ? 0.0 : it->second;
}

double OutcomeDistribution::total() const {
  double t = 0.0;
  for (const auto& [k, v] : values) t += v;
  return t;
}

std::vector<std::string> OutcomeDistribution::registering(double threshold) const {
  std::vector<std::string> out;
  for (const auto& [k, v] : values)
    if (v > threshold) out.push_back(k);
  return out;
}

PhotonState apply_element(const Circuit& circuit, const PhotonState& state,
                          const OpticalElement& element) {
  check_paths(circuit, element);
  PhotonState out = state;
  forward_in_place(out, element);
  out.prune();
  check_norm(state.norm(), out.norm(), describe(element));
  return out;
}

PhotonState apply_adjoint(const Circuit& circuit, const PhotonState& state,
                          const OpticalElement& element) {
  check_paths(circuit, element);
  PhotonState out = state;
  adjoint_in_place(out, element);
  out.prune();
  return out;
}

PhotonState apply_stage(const Circuit& circuit, const PhotonState& state, std::size_t stage) {
  PhotonState out = state;
  for (const auto& e : circuit.stage(stage)) {
    check_paths(circuit, e);
    forward_in_place(out, e);
  }
  out.prune();
  check_norm(state.norm(), out.norm(), "stage " + std::to_string(stage));
  return out;
}

PhotonState apply_stage_adjoint(const Circuit& circuit, const PhotonState& state,
                                std::size_t stage) {
  PhotonState out = state;
  const auto& st = circuit.stage(stage);
  for (auto it = st.rbegin(); it != st.rend(); ++it) {
    check_paths(circuit, *it);
    adjoint_in_place(out, *it);
  }
  out.prune();
  return out;
}

PhotonState initial_state(const Circuit& circuit) {
  const auto src = circuit.source();
  return PhotonState::single(src.path, src.pol);
}

std::vector<PhotonState> forward_trajectory(const Circuit& circuit, const PhotonState& input) {
  if (std::abs(input.norm() - 1.0) > kNormDriftLimit)
    throw DomainError("input state is not normalized (norm " + std::to_string(input.norm()) +
                      ")");
  std::vector<PhotonState> traj;
  traj.reserve(circuit.stage_count() + 1);
  traj.push_back(input);
  for (std::size_t i = 0; i < circuit.stage_count(); ++i)
    traj.push_back(apply_stage(circuit, traj.back(), i));
  return traj;
}

PhotonState propagate(const Circuit& circuit, const PhotonState& input) {
  if (std::abs(input.norm() - 1.0) > kNormDriftLimit)
    throw DomainError("input state is not normalized (norm " + std::to_string(input.norm()) +
                      ")");
  PhotonState s = input;
  for (std::size_t i = 0; i < circuit.stage_count(); ++i) s = apply_stage(circuit, s, i);
  if (s.live_norm() > kZeroAmplitude * kZeroAmplitude) {
    std::string where;
    for (const auto& [m, a] : s.live)
      if (std::abs(a) > kZeroAmplitude) where += " " + to_string(m);
    throw CircuitIncompleteError("circuit '" + circuit.name() +
                                 "' leaves light on non-terminal modes:" + where);
  }
  return s;
}

namespace {

OutcomeDistribution distribution(const Circuit& circuit, const PhotonState& input,
                                 LightModel model) {
  const PhotonState final_state = propagate(circuit, input);
  OutcomeDistribution d;
  d.model = model;
  for (const auto& [label, ev] : circuit.terminals()) d.values[label] = 0.0;
  for (const auto& [label, mass] : final_state.terminal_masses()) d.values[label] = mass;
  return d;
}

} // namespace

OutcomeDistribution run_fock(const Circuit& circuit, const PhotonState& input) {
  return distribution(circuit, input, LightModel::Fock);
}

// A classical field obeys the same linear evolution; |amplitude|^2 is read as
// the intensity fraction reaching each terminal in a single run.
OutcomeDistribution run_classical(const Circuit& circuit, const PhotonState& input) {
  return distribution(circuit, input, LightModel::Classical);
}

PostSelection post_select(const Circuit& circuit, const PhotonState& input,
                          const std::string& outcome) {
  if (!circuit.has_terminal(outcome))
    throw StructuralError("unknown outcome '" + outcome + "'");
  const PhotonState final_state = propagate(circuit, input);
  PostSelection ps;
  ps.probability = final_state.terminal_mass(outcome);
  if (ps.probability < kNullPostSelection)
    throw NullPostSelectionError("outcome '" + outcome + "' has probability " +
                                 std::to_string(ps.probability) + "; backward state undefined");
  const double scale = 1.0 / std::sqrt(ps.probability);
  for (const auto& [m, a] : final_state.absorbed)
    if (m.path == outcome) ps.final_state.absorbed[m] = a * scale;
  return ps;
}

} // namespace cfq
