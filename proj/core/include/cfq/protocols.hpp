#pragma once

#include <cfq/circuit.hpp>

#include <map>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cfq::protocols {

enum class Family { EVBombTester, Noh, ZenoChain, Salih, Vaidman, NestedMZI };

/// Bob's choice. Bit 1 is always "Bob blocks": a live bomb for the bomb
/// tester, absorbing the photon's polarization for Noh.
enum class BobAction { Block, Open };

enum class BitValue { Bit0, Bit1, Abort, Undefined };

std::string_view to_string(Family f);
std::string_view to_string(BobAction a);
std::string_view to_string(BitValue b);
Family family_from_string(std::string_view s);

/// Outcome -> bit decoding.
struct BitMapping {
  std::map<std::string, BitValue> decode;

  BitValue of(const std::string& terminal) const;
  /// The terminal decoding to `bit`, if any (at most one exists for Bit0/Bit1).
  std::optional<std::string> terminal_for(BitValue bit) const;
  /// Throws StructuralError unless every terminal is mapped, at most one
  /// terminal decodes to each bit, and all Bob-region terminals abort.
  void validate(const Circuit& circuit) const;
};

struct Protocol {
  Family family = Family::Salih;
  BobAction action = BobAction::Open;
  Circuit circuit;
  BitMapping mapping;
};

/// Coarse-graining cell names used by the builders.
inline constexpr const char* kCellOuter = "alice-outer";
inline constexpr const char* kCellInner = "alice-inner";
inline constexpr const char* kCellBob = "bob";
inline constexpr const char* kCellTerminal = "terminal";
/// Boundary marks recorded by the builders.
inline constexpr const char* kMarkHistoryCut = "history_cut";

// --- parameter records ------------------------------------------------------

struct EVParams {};

struct NohParams {
  double splitter = std::numbers::pi / 4;  // 50:50
  Polarization photon = Polarization::H;
};

struct ZenoParams {
  int cycles = 10;
};

struct SalihParams {
  int outer = 2;
  int inner = 2;
  bool polarized = true;
};

/// Angles: outer input splitter, then (first, second) splitter of each inner
/// interferometer, then the tap feeding D1, then the final recombiner.
struct VaidmanParams {
  int inner_count = 2;
  std::vector<double> angles;
};

struct NestedParams {
  /// Outer splitter angle; the default sends 1/3 of the light to the outer arm.
  double outer_splitter = 0.9553166181245093;  // acos(1/sqrt(3))
};

using Params =
    std::variant<EVParams, NohParams, ZenoParams, SalihParams, VaidmanParams, NestedParams>;

struct ProtocolSpec {
  Family family = Family::Salih;
  Params params = SalihParams{};
  BobAction action = BobAction::Open;
};

// --- builders ---------------------------------------------------------------

/// Balanced Mach-Zehnder with a bomb on the Bob arm. Block = live bomb.
Protocol build_ev_bomb_tester(BobAction action);

/// Alice's splitter sends one arm to Bob, who reflects one polarization and
/// absorbs the other in his detector. Block = Bob absorbs the photon's
/// polarization.
Protocol build_noh(const NohParams& params, BobAction action);

/// N chained splitters of angle pi/2N with a blockable Bob arm after each.
Protocol build_zeno_chain(int cycles, BobAction action);

/// Outer cycles of angle pi/2M each containing N inner cycles of pi/2N.
/// polarized=false swaps HWP+PBS pairs for plain beamsplitters.
Protocol build_salih(int outer, int inner, bool polarized, BobAction action);

/// Number of angles build_vaidman expects for `inner_count` inner MZIs.
std::size_t vaidman_arity(int inner_count);

Protocol build_vaidman(int inner_count, std::span<const double> angles, BobAction action);

/// Nested interferometer with Bob's inner MZI tuned so forward light leaves
/// through its side port: the weak-trace discontinuity configuration.
Protocol build_nested_mzi(const NestedParams& params, BobAction action);

Protocol build(const ProtocolSpec& spec);

/// Throws StructuralError if the parameters violate the family's constraints.
void validate(const ProtocolSpec& spec);

} // namespace cfq::protocols
