#pragma once

#include <compare>
#include <complex>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cfq {

using Complex = std::complex<double>;

/// Amplitudes with modulus below this are exactly zero for presence/absence.
inline constexpr double kZeroAmplitude = 1e-12;
/// Stage-boundary norm check; drift beyond this is an internal error.
inline constexpr double kNormDriftLimit = 1e-9;
/// Outcome probabilities below this cannot be post-selected on.
inline constexpr double kNullPostSelection = 1e-15;

enum class Polarization { H, V, None };
enum class Region { Alice, Channel, Bob };
enum class TerminalKind { Detector, Blocker, LossChannel, Explosion };

std::string_view to_string(Polarization p);
std::string_view to_string(Region r);
std::string_view to_string(TerminalKind k);
Polarization polarization_from_string(std::string_view s);
Region region_from_string(std::string_view s);

struct Mode {
  std::string path;
  Polarization pol = Polarization::None;

  friend auto operator<=>(const Mode&, const Mode&) = default;
  friend bool operator==(const Mode&, const Mode&) = default;
};

std::string to_string(const Mode& m);

struct TerminalEvent {
  TerminalKind kind = TerminalKind::Detector;
  std::string label;
  Region region = Region::Alice;

  friend bool operator==(const TerminalEvent&, const TerminalEvent&) = default;
};

// ---------------------------------------------------------------------------
// Optical elements. Every element is a linear isometry from its input modes to
// its output modes; empty input port names denote vacuum, empty output port
// names denote a port that must stay dark.
// ---------------------------------------------------------------------------

/// Real rotation [[cos t, -sin t], [sin t, cos t]] on (in_a, in_b) per
/// polarization, written to (out_a, out_b). No reflection phase.
struct BeamSplitter {
  double theta = 0.0;
  std::string in_a, in_b;
  std::string out_a, out_b;
};

/// Transmits H, reflects V: from in_a, H -> out_transmit and V -> out_reflect;
/// from in_b, H -> out_reflect and V -> out_transmit.
struct PolarizingBeamSplitter {
  std::string in_a, in_b;
  std::string out_transmit, out_reflect;
};

/// Rotates polarization by theta in the (H, V) plane; theta is the
/// polarization rotation angle, not the physical axis angle.
struct HalfWavePlate {
  double theta = 0.0;
  std::string path;
};

/// Identity relabeling, no phase.
struct Mirror {
  std::string from, to;
};

/// Blocker, detector, loss channel or bomb: moves all amplitude on `path`
/// into the terminal's modes.
struct Absorber {
  std::string path;
  std::string terminal;
};

/// Marks where the photon is injected; inert during propagation.
struct Source {
  std::string path;
  Polarization pol = Polarization::None;
};

using OpticalElement =
    std::variant<BeamSplitter, PolarizingBeamSplitter, HalfWavePlate, Mirror, Absorber, Source>;

/// Paths an element reads or writes (non-empty port names only).
std::vector<std::string> touched_paths(const OpticalElement& e);

std::string describe(const OpticalElement& e);

} // namespace cfq
