#include <cfq/optics.hpp>

#include <cfq/errors.hpp>

#include <sstream>
#include <type_traits>

namespace cfq {

std::string_view to_string(Polarization p) {
  switch (p) {
    case Polarization::H: return "H";
    case Polarization::V: return "V";
    case Polarization::None: return "-";
  }
  return "?";
}

std::string_view to_string(Region r) {
  switch (r) {
    case Region::Alice: return "alice";
    case Region::Channel: return "channel";
    case Region::Bob: return "bob";
  }
  return "?";
}

std::string_view to_string(TerminalKind k) {
  switch (k) {
    case TerminalKind::Detector: return "detector";
    case TerminalKind::Blocker: return "blocker";
    case TerminalKind::LossChannel: return "loss";
    case TerminalKind::Explosion: return "explosion";
  }
  return "?";
}

Polarization polarization_from_string(std::string_view s) {
  if (s == "H" || s == "h") return Polarization::H;
  if (s == "V" || s == "v") return Polarization::V;
  if (s == "-" || s == "none" || s == "None") return Polarization::None;
  throw StructuralError("unknown polarization '" + std::string(s) + "'");
}

Region region_from_string(std::string_view s) {
  if (s == "alice") return Region::Alice;
  if (s == "channel") return Region::Channel;
  if (s == "bob") return Region::Bob;
  throw StructuralError("unknown region '" + std::string(s) + "'");
}

std::string to_string(const Mode& m) {
  std::string out = m.path;
  if (m.pol != Polarization::None) {
    out += ':';
    out += to_string(m.pol);
  }
  return out;
}

std::vector<std::string> touched_paths(const OpticalElement& e) {
  std::vector<std::string> out;
  auto push = [&](const std::string& p) {
    if (p.empty()) return;
    for (const auto& q : out)
      if (q == p) return;
    out.push_back(p);
  };
  std::visit(
      [&](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          push(el.in_a); push(el.in_b); push(el.out_a); push(el.out_b);
        } else if constexpr (std::is_same_v<T, PolarizingBeamSplitter>) {
          push(el.in_a); push(el.in_b); push(el.out_transmit); push(el.out_reflect);
        } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
          push(el.path);
        } else if constexpr (std::is_same_v<T, Mirror>) {
          push(el.from); push(el.to);
        } else if constexpr (std::is_same_v<T, Absorber>) {
          push(el.path);
        } else if constexpr (std::is_same_v<T, Source>) {
          push(el.path);
        }
      },
      e);
  return out;
}

std::string describe(const OpticalElement& e) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  std::visit(
      [&](const auto& el) {
        using T = std::decay_t<decltype(el)>;
        if constexpr (std::is_same_v<T, BeamSplitter>) {
          os << "BS(" << el.theta << "; " << el.in_a << "," << el.in_b << " -> " << el.out_a
             << "," << el.out_b << ")";
        } else if constexpr (std::is_same_v<T, PolarizingBeamSplitter>) {
          os << "PBS(" << el.in_a << "," << el.in_b << " -> T:" << el.out_transmit
             << " R:" << el.out_reflect << ")";
        } else if constexpr (std::is_same_v<T, HalfWavePlate>) {
          os << "HWP(" << el.theta << "; " << el.path << ")";
        } else if constexpr (std::is_same_v<T, Mirror>) {
          os << "Mirror(" << el.from << " -> " << el.to << ")";
        } else if constexpr (std::is_same_v<T, Absorber>) {
          os << "Absorber(" << el.path << " -> " << el.terminal << ")";
        } else if constexpr (std::is_same_v<T, Source>) {
          os << "Source(" << el.path << ":" << to_string(el.pol) << ")";
        }
      },
      e);
  return os.str();
}

} // namespace cfq
