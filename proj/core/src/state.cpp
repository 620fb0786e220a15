#include <cfq/state.hpp>

#include <cmath>

namespace cfq {

PhotonState PhotonState::single(const std::string& path, Polarization pol, Complex amp) {
  PhotonState s;
  s.live[Mode{path, pol}] = amp;
  return s;
}

Complex PhotonState::amplitude(const Mode& m) const {
  auto it = live.find(m);
  return it == live.end() ? Complex{} : it->second;
}

double PhotonState::live_norm() const {
  double n = 0.0;
  for (const auto& [m, a] : live) n += std::norm(a);
  return n;
}

double PhotonState::absorbed_norm() const {
  double n = 0.0;
  for (const auto& [m, a] : absorbed) n += std::norm(a);
  return n;
}

double PhotonState::terminal_mass(const std::string& terminal) const {
  double n = 0.0;
  for (auto it = absorbed.lower_bound(Mode{terminal, Polarization::H});
       it != absorbed.end() && it->first.path == terminal; ++it)
    n += std::norm(it->second);
  return n;
}

std::map<std::string, double> PhotonState::terminal_masses() const {
  std::map<std::string, double> out;
  for (const auto& [m, a] : absorbed) out[m.path] += std::norm(a);
  return out;
}

void PhotonState::prune() {
  std::erase_if(live, [](const auto& kv) { return kv.second == Complex{}; });
  std::erase_if(absorbed, [](const auto& kv) { return kv.second == Complex{}; });
}

PhotonState& PhotonState::operator+=(const PhotonState& o) {
  for (const auto& [m, a] : o.live) live[m] += a;
  for (const auto& [m, a] : o.absorbed) absorbed[m] += a;
  return *this;
}

PhotonState& PhotonState::operator*=(Complex s) {
  for (auto& [m, a] : live) a *= s;
  for (auto& [m, a] : absorbed) a *= s;
  return *this;
}

PhotonState operator+(PhotonState a, const PhotonState& b) { return a += b; }
PhotonState operator*(Complex s, PhotonState a) { return a *= s; }

Complex inner_product(const PhotonState& a, const PhotonState& b) {
  Complex sum{};
  auto dot = [&](const std::map<Mode, Complex>& x, const std::map<Mode, Complex>& y) {
    for (const auto& [m, ax] : x)
      if (auto it = y.find(m); it != y.end()) sum += std::conj(ax) * it->second;
  };
  dot(a.live, b.live);
  dot(a.absorbed, b.absorbed);
  return sum;
}

} // namespace cfq
