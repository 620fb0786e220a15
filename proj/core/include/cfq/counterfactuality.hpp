#pragma once

#include <cfq/circuit.hpp>
#include <cfq/propagate.hpp>
#include <cfq/protocols.hpp>
#include <cfq/state.hpp>

#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

namespace cfq::cf {

// --- classical counterfactual inference -------------------------------------

/// "Were A to happen, B would happen", optionally strengthened with
/// "were A not to happen, B would not happen".
struct ClassicalChannelModel {
  std::string antecedent = "A";
  std::string consequent = "B";
  bool biconditional = true;
};

struct ClassicalSignal {
  bool b_observed = false;
  bool energy_crossed = false;
};

/// One-to-one absence signalling: the sign's absence carries one bit value
/// with no energy, its presence carries the other with energy. Throws
/// DomainError without the biconditional (the absence is then uninformative).
ClassicalSignal classical_absence_channel(const ClassicalChannelModel& model, bool a_occurred);

// --- weak trace -------------------------------------------------------------

inline constexpr double kDefaultWeakEpsilon = 1e-10;

struct SegmentTrace {
  Segment segment;
  Region region = Region::Alice;
  bool terminal = false;  // segment.mode.path names a terminal
  Complex forward;
  Complex backward;
  Complex weak_value;     // conj(backward) * forward / <psi_f|psi_i>
  bool present = false;   // |weak_value| > epsilon
};

struct WeakTraceReport {
  std::string outcome;
  double epsilon = kDefaultWeakEpsilon;
  double probability = 0.0;
  /// The analysis is first order in the coupling; second-order traces are
  /// not computed.
  int order = 1;
  Complex overlap_forward;   // <psi_f| U |psi_i> from forward propagation
  Complex overlap_backward;  // <U^dag psi_f | psi_i> from backward propagation
  std::vector<SegmentTrace> segments;
  /// Sum of weak values over all modes (live and terminal) per boundary.
  std::vector<Complex> boundary_sums;

  bool present_in(Region r) const;
  /// Present segments on live paths in the given region.
  std::vector<const SegmentTrace*> present_segments(Region r) const;
  /// Max |weak value| over live segments on `path`.
  double max_weak_value_on(const std::string& path) const;
  bool present_on(const std::string& path) const;
};

/// Throws NullPostSelectionError if the outcome cannot be post-selected.
WeakTraceReport weak_trace(const Circuit& circuit, const PhotonState& input,
                           const std::string& outcome, double epsilon = kDefaultWeakEpsilon);

// --- channel crossing -------------------------------------------------------

struct CrossingQuery {
  LightModel light = LightModel::Classical;
  std::string outcome;  // Fock only: the post-selected terminal
  double epsilon = kDefaultWeakEpsilon;
};

/// Mass that entered Channel/Bob regions: the summed positive net inflow, over
/// stages, of region mode mass plus region terminal mass. Classical light
/// counts raw intensity; post-selected Fock light counts only modes carrying
/// a first-order weak value above epsilon.
double crossing_report(const Circuit& circuit, const PhotonState& input,
                       const CrossingQuery& query);

/// Classical intensity absorbed per Bob-region blocker, averaged over all
/// such blockers (0 if the circuit has none). With Bob blocking this is the
/// mean intensity each of Bob's stations sees.
double bob_station_intensity(const Circuit& circuit, const PhotonState& input);

// --- consistent histories ---------------------------------------------------

inline constexpr double kDefaultConsistencyTolerance = 1e-9;
inline constexpr std::size_t kMaxHistories = 1'000'000;

/// Maps a mode to its cell; `terminal` is true for absorbed (terminal) modes.
using CoarseGraining = std::function<std::string(const Mode& mode, bool terminal)>;

/// Cells from the circuit's path declarations; every terminal mode falls in
/// the "terminal" cell.
CoarseGraining default_coarse_graining(const Circuit& circuit);

struct History {
  std::vector<std::string> chain;  // one cell per cut
  std::string outcome;             // final projector: terminal event
  std::map<Polarization, Complex> arrival;  // C_alpha psi_i at the outcome terminal
  Complex amplitude;  // arrival projected on the outcome's full arrival direction
  double probability = 0.0;  // D(alpha, alpha)

  bool visits_any(const std::set<std::string>& cells) const;
};

struct HistoryFamily {
  std::vector<std::size_t> cuts;
  std::vector<std::string> cells;
  std::vector<History> histories;
  std::vector<std::vector<Complex>> decoherence;  // D(alpha, beta)
  double tolerance = kDefaultConsistencyTolerance;
  double max_offdiag_real = 0.0;     // max |Re D| off the diagonal
  double max_offdiag_abs = 0.0;      // max |D| off the diagonal
  bool consistent = false;           // max_offdiag_real < tolerance
  bool strongly_consistent = false;  // max_offdiag_abs < tolerance

  double trace() const;
  double hermiticity_defect() const;
};

/// Default cuts: the circuit's history-cut marks, or the midpoint if none.
std::vector<std::size_t> default_cuts(const Circuit& circuit);

/// Enumerates every cell chain over `cuts` (strictly increasing boundary
/// indices), resolved by final terminal. Throws StructuralError on bad cuts
/// and ResourceError if the family would exceed kMaxHistories.
HistoryFamily build_history_family(const Circuit& circuit, const PhotonState& input,
                                   const std::vector<std::size_t>& cuts,
                                   const CoarseGraining& coarse_graining,
                                   double tolerance = kDefaultConsistencyTolerance);

enum class HistoryVerdict { Counterfactual, NotCounterfactual, Meaningless };

std::string_view to_string(HistoryVerdict v);

/// Meaningless if the family is inconsistent; otherwise Counterfactual iff no
/// history with nonzero probability ending at `outcome` visits a Bob cell.
HistoryVerdict classify_by_histories(const HistoryFamily& family,
                                     const std::set<std::string>& bob_cells,
                                     const std::string& outcome);

// --- loss statistics --------------------------------------------------------

struct LossStatistics {
  double p_loss_block = 0.0;
  double p_loss_open = 0.0;
  /// Mutual information between Bob's bit and the abort flag, uniform prior.
  double leakage_bits = 0.0;
};

/// Both protocols must share the same decoding. Throws StructuralError if not.
LossStatistics loss_statistics(const protocols::Protocol& blocked,
                               const protocols::Protocol& open);

/// Total abort-decoded probability of a distribution.
double abort_probability(const OutcomeDistribution& d, const protocols::BitMapping& mapping);

/// I(bit; abort) in bits for abort probabilities under each bit, uniform prior.
double abort_leakage_bits(double p_abort_block, double p_abort_open);

} // namespace cfq::cf
