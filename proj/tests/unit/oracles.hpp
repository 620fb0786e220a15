#pragma once

// Independent closed-form oracles and small hand-built circuits used across
// the unit and acceptance tests. Nothing here calls the propagation code.

#include <cfq/circuit.hpp>

#include <cmath>
#include <numbers>
#include <utility>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

/// Blocked Zeno chain: the photon survives N splitters of pi/2N.
inline double zeno_survival(int n) { return std::pow(std::cos(pi / (2.0 * n)), 2.0 * n); }

/// Salih with Bob open: only the outer arm reaches D0.
inline double salih_open_d0(int m) { return std::pow(std::cos(pi / (2.0 * m)), 2.0 * m); }

/// Salih with Bob blocking: (h, v) amplitudes after M outer cycles, each inner
/// chain attenuating V by gamma = cos^N(pi/2N).
inline std::pair<double, double> salih_blocked(int m, int n) {
  const double gamma = std::pow(std::cos(pi / (2.0 * n)), n);
  const double a = pi / (2.0 * m);
  double h = 1.0, v = 0.0;
  for (int k = 0; k < m; ++k) {
    const double h2 = h * std::cos(a) - v * std::sin(a);
    const double v2 = gamma * (h * std::sin(a) + v * std::cos(a));
    h = h2;
    v = v2;
  }
  return {h, v};
}

inline double binary_entropy_bits(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

/// I(bit; abort) by the textbook entropy difference.
inline double leakage_bits(double pb, double po) {
  return binary_entropy_bits(0.5 * (pb + po)) - 0.5 * binary_entropy_bits(pb) -
         0.5 * binary_entropy_bits(po);
}

/// Balanced Mach-Zehnder: in -> (U, L) -> (Ddark, Dbright). With the real
/// rotation convention the first output port of the second splitter is dark.
inline cfq::Circuit balanced_mzi(bool block_lower = false) {
  using namespace cfq;
  Circuit c("mzi");
  c.add_path("in", Region::Alice, "src")
      .add_path("U", Region::Alice, "arm-up")
      .add_path("L", Region::Bob, "arm-down")
      .add_path("Pd", Region::Alice, "out")
      .add_path("Pb", Region::Alice, "out");
  c.add_terminal(TerminalKind::Detector, "Ddark", Region::Alice)
      .add_terminal(TerminalKind::Detector, "Dbright", Region::Alice);
  if (block_lower) c.add_terminal(TerminalKind::Blocker, "blk", Region::Bob);
  c.add_stage({Source{"in", Polarization::None}});
  c.add_stage({BeamSplitter{pi / 4, "in", "", "U", "L"}});
  if (block_lower) c.add_stage({Absorber{"L", "blk"}});
  else c.add_stage({});
  c.add_stage({BeamSplitter{pi / 4, "U", "L", "Pd", "Pb"}});
  c.add_stage({Absorber{"Pd", "Ddark"}, Absorber{"Pb", "Dbright"}});
  return c;
}

} // namespace oracle
