#pragma once

#include <cfq/optics.hpp>

#include <map>
#include <string>

namespace cfq {

/// Single-photon state: complex amplitude per live mode, plus the complex
/// amplitude already absorbed by each terminal (keyed by terminal label and
/// polarization). Keeping absorbed amplitudes complex makes every stage an
/// isometry, which the weak-value and history code relies on.
struct PhotonState {
  std::map<Mode, Complex> live;
  std::map<Mode, Complex> absorbed;  // Mode::path holds the terminal label

  static PhotonState single(const std::string& path, Polarization pol, Complex amp = 1.0);

  Complex amplitude(const Mode& m) const;
  double live_norm() const;
  double absorbed_norm() const;
  double norm() const { return live_norm() + absorbed_norm(); }

  /// Probability mass collected by `terminal` so far.
  double terminal_mass(const std::string& terminal) const;
  std::map<std::string, double> terminal_masses() const;

  /// Drops entries that are exactly zero.
  void prune();

  PhotonState& operator+=(const PhotonState& o);
  PhotonState& operator*=(Complex s);
};

PhotonState operator+(PhotonState a, const PhotonState& b);
PhotonState operator*(Complex s, PhotonState a);

/// <a|b> over live and absorbed modes.
Complex inner_product(const PhotonState& a, const PhotonState& b);

} // namespace cfq
