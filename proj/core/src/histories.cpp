#include <cfq/counterfactuality.hpp>
#include <cfq/errors.hpp>

#include <algorithm>
#include <cmath>
#include <set>

namespace cfq::cf {

namespace {

// Dense D beyond this many nonzero histories is not worth building.
constexpr std::size_t kMaxDecoherenceRank = 4096;
constexpr double kZeroProbability = kZeroAmplitude * kZeroAmplitude;

PhotonState advance(const Circuit& circuit, PhotonState s, std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k) s = apply_stage(circuit, s, k);
  return s;
}

PhotonState project(const PhotonState& s, const CoarseGraining& cg, const std::string& cell) {
  PhotonState out;
  for (const auto& [m, a] : s.live)
    if (cg(m, false) == cell) out.live.emplace(m, a);
  for (const auto& [m, a] : s.absorbed)
    if (cg(m, true) == cell) out.absorbed.emplace(m, a);
  return out;
}

std::map<Polarization, Complex> arrival_at(const PhotonState& s, const std::string& terminal) {
  std::map<Polarization, Complex> out;
  for (const auto& [m, a] : s.absorbed)
    if (m.path == terminal) out[m.pol] += a;
  return out;
}

Complex dot(const std::map<Polarization, Complex>& a, const std::map<Polarization, Complex>& b) {
  Complex sum{};
  for (const auto& [pol, x] : a)
    if (const auto it = b.find(pol); it != b.end()) sum += std::conj(x) * it->second;
  return sum;
}

struct Enumerator {
  const Circuit& circuit;
  const CoarseGraining& cg;
  const std::vector<std::size_t>& cuts;
  const std::vector<std::string>& cells;
  std::vector<History>& out;
  std::vector<std::string> chain;

  void run(const PhotonState& s, std::size_t depth, std::size_t boundary) {
    if (s.norm() < kZeroProbability) return;
    if (depth == cuts.size()) {
      const PhotonState fin = advance(circuit, s, boundary, circuit.stage_count());
      if (fin.live_norm() > kNormDriftLimit)
        throw CircuitIncompleteError("light remains in the circuit after the last stage");
      for (const auto& [label, ev] : circuit.terminals()) {
        History h;
        h.chain = chain;
        h.outcome = label;
        h.arrival = arrival_at(fin, label);
        h.probability = dot(h.arrival, h.arrival).real();
        if (h.probability >= kZeroProbability) out.push_back(std::move(h));
      }
      return;
    }
    const PhotonState here = advance(circuit, s, boundary, cuts[depth]);
    for (const auto& cell : cells) {
      chain.push_back(cell);
      run(project(here, cg, cell), depth + 1, cuts[depth]);
      chain.pop_back();
    }
  }
};

} // namespace

bool History::visits_any(const std::set<std::string>& c) const {
  return std::any_of(chain.begin(), chain.end(), [&](const auto& x) { return c.count(x) != 0; });
}

double HistoryFamily::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < decoherence.size(); ++i) t += decoherence[i][i].real();
  return t;
}

double HistoryFamily::hermiticity_defect() const {
  double worst = 0.0;
  for (std::size_t i = 0; i < decoherence.size(); ++i)
    for (std::size_t j = 0; j < decoherence.size(); ++j)
      worst = std::max(worst, std::abs(decoherence[i][j] - std::conj(decoherence[j][i])));
  return worst;
}

CoarseGraining default_coarse_graining(const Circuit& circuit) {
  return [&circuit](const Mode& m, bool terminal) -> std::string {
    return terminal ? std::string(protocols::kCellTerminal) : circuit.cell_of(m.path);
  };
}

std::vector<std::size_t> default_cuts(const Circuit& circuit) {
  auto cuts = circuit.marks(protocols::kMarkHistoryCut);
  if (cuts.empty()) cuts.push_back(circuit.stage_count() / 2);
  return cuts;
}

HistoryFamily build_history_family(const Circuit& circuit, const PhotonState& input,
                                   const std::vector<std::size_t>& cuts,
                                   const CoarseGraining& coarse_graining, double tolerance) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] > circuit.stage_count())
      throw StructuralError("history cut " + std::to_string(cuts[i]) + " is past the last stage");
    if (i > 0 && cuts[i] <= cuts[i - 1])
      throw StructuralError("history cuts must be strictly increasing");
  }
  if (!(tolerance > 0.0)) throw DomainError("consistency tolerance must be positive");

  HistoryFamily fam;
  fam.cuts = cuts;
  fam.tolerance = tolerance;

  std::set<std::string> cells;
  for (const auto& [path, region] : circuit.regions())
    for (auto pol : {Polarization::H, Polarization::V, Polarization::None})
      cells.insert(coarse_graining(Mode{path, pol}, false));
  for (const auto& [label, ev] : circuit.terminals())
    for (auto pol : {Polarization::H, Polarization::V, Polarization::None})
      cells.insert(coarse_graining(Mode{label, pol}, true));
  fam.cells.assign(cells.begin(), cells.end());

  double count = static_cast<double>(circuit.terminals().size());
  for (std::size_t i = 0; i < cuts.size(); ++i) count *= static_cast<double>(fam.cells.size());
  if (count > static_cast<double>(kMaxHistories))
    throw ResourceError("history family would have " + std::to_string(count) +
                        " chains; use fewer cuts or a coarser cell map");

  Enumerator e{circuit, coarse_graining, cuts, fam.cells, fam.histories, {}};
  e.run(input, 0, 0);
  if (fam.histories.size() > kMaxDecoherenceRank)
    throw ResourceError(std::to_string(fam.histories.size()) +
                        " nonzero histories; decoherence matrix too large");

  // Reference direction per outcome: the full (unprojected) arrival.
  const PhotonState full = propagate(circuit, input);
  for (auto& h : fam.histories) {
    const auto ref = arrival_at(full, h.outcome);
    const double n = std::sqrt(dot(ref, ref).real());
    h.amplitude = n > kZeroAmplitude ? dot(ref, h.arrival) / n : Complex{std::sqrt(h.probability)};
  }

  const std::size_t n = fam.histories.size();
  fam.decoherence.assign(n, std::vector<Complex>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto& ha = fam.histories[a];
      const auto& hb = fam.histories[b];
      if (ha.outcome != hb.outcome) continue;
      fam.decoherence[a][b] = dot(hb.arrival, ha.arrival);
      if (a != b) {
        fam.max_offdiag_real = std::max(fam.max_offdiag_real, std::abs(fam.decoherence[a][b].real()));
        fam.max_offdiag_abs = std::max(fam.max_offdiag_abs, std::abs(fam.decoherence[a][b]));
      }
    }
  fam.consistent = fam.max_offdiag_real < tolerance;
  fam.strongly_consistent = fam.max_offdiag_abs < tolerance;
  return fam;
}

std::string_view to_string(HistoryVerdict v) {
  switch (v) {
    case HistoryVerdict::Counterfactual: return "counterfactual";
    case HistoryVerdict::NotCounterfactual: return "not-counterfactual";
    case HistoryVerdict::Meaningless: return "meaningless";
  }
  return "?";
}

HistoryVerdict classify_by_histories(const HistoryFamily& family,
                                     const std::set<std::string>& bob_cells,
                                     const std::string& outcome) {
  bool seen = false;
  bool touches_bob = false;
  for (const auto& h : family.histories) {
    if (h.outcome != outcome || h.probability < kZeroProbability) continue;
    seen = true;
    touches_bob = touches_bob || h.visits_any(bob_cells);
  }
  if (!seen) throw NullPostSelectionError("no history ends at '" + outcome + "'");
  if (!family.consistent) return HistoryVerdict::Meaningless;
  return touches_bob ? HistoryVerdict::NotCounterfactual : HistoryVerdict::Counterfactual;
}

} // namespace cfq::cf
