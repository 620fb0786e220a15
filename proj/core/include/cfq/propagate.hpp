#pragma once

#include <cfq/circuit.hpp>
#include <cfq/state.hpp>

#include <map>
#include <string>
#include <vector>

namespace cfq {

enum class LightModel { Fock, Classical };

std::string_view to_string(LightModel m);

/// Probability (Fock) or intensity fraction (classical) per terminal label.
struct OutcomeDistribution {
  LightModel model = LightModel::Fock;
  std::map<std::string, double> values;

  double at(const std::string& terminal) const;
  double total() const;

  /// Terminals that register in a run. Under the Fock model each run ends at
  /// exactly one of these; under the classical model all of them register
  /// simultaneously in every run.
  std::vector<std::string> registering(double threshold = kZeroAmplitude * kZeroAmplitude) const;
};

/// Applies one element. Throws StructuralError for unknown paths and
/// InternalConsistencyError when light reaches an unused port or the norm
/// drifts beyond kNormDriftLimit.
PhotonState apply_element(const Circuit& circuit, const PhotonState& state,
                          const OpticalElement& element);

/// Applies the adjoint of `element` (backward evolution). Components with no
/// preimage (absorbed terminals other than those carried by the state,
/// vacuum input ports) are annihilated.
PhotonState apply_adjoint(const Circuit& circuit, const PhotonState& state,
                          const OpticalElement& element);

PhotonState apply_stage(const Circuit& circuit, const PhotonState& state, std::size_t stage);
PhotonState apply_stage_adjoint(const Circuit& circuit, const PhotonState& state,
                                std::size_t stage);

/// The input state declared by the circuit's Source element.
PhotonState initial_state(const Circuit& circuit);

/// States at every boundary 0..stage_count() (forward evolution).
std::vector<PhotonState> forward_trajectory(const Circuit& circuit, const PhotonState& input);

/// Final state; throws CircuitIncompleteError if live amplitude remains.
PhotonState propagate(const Circuit& circuit, const PhotonState& input);

OutcomeDistribution run_fock(const Circuit& circuit, const PhotonState& input);
OutcomeDistribution run_classical(const Circuit& circuit, const PhotonState& input);

struct PostSelection {
  double probability = 0.0;
  /// Normalized amplitude arriving at the outcome's terminal.
  PhotonState final_state;
};

/// Throws StructuralError for an unknown outcome and NullPostSelectionError
/// when its probability is below kNullPostSelection.
PostSelection post_select(const Circuit& circuit, const PhotonState& input,
                          const std::string& outcome);

} // namespace cfq
