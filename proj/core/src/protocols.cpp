#include <cfq/protocols.hpp>

#include <cfq/errors.hpp>

#include <cmath>
#include <numbers>

namespace cfq::protocols {

namespace {

using std::numbers::pi;

std::string idx(const std::string& base, int i) { return base + "." + std::to_string(i); }
std::string idx(const std::string& base, int i, int j) {
  return base + "." + std::to_string(i) + "." + std::to_string(j);
}

BeamSplitter bs(double theta, std::string in_a, std::string in_b, std::string out_a,
                std::string out_b) {
  return BeamSplitter{theta, std::move(in_a), std::move(in_b), std::move(out_a), std::move(out_b)};
}

Protocol finish(Family family, BobAction action, Circuit circuit, BitMapping mapping) {
  circuit.validate();
  mapping.validate(circuit);
  return Protocol{family, action, std::move(circuit), std::move(mapping)};
}

} // namespace

std::string_view to_string(Family f) {
  switch (f) {
    case Family::EVBombTester: return "ev";
    case Family::Noh: return "noh";
    case Family::ZenoChain: return "zeno";
    case Family::Salih: return "salih";
    case Family::Vaidman: return "vaidman";
    case Family::NestedMZI: return "nested";
  }
  return "?";
}

std::string_view to_string(BobAction a) { return a == BobAction::Block ? "block" : "open"; }

std::string_view to_string(BitValue b) {
  switch (b) {
    case BitValue::Bit0: return "0";
    case BitValue::Bit1: return "1";
    case BitValue::Abort: return "abort";
    case BitValue::Undefined: return "undefined";
  }
  return "?";
}

Family family_from_string(std::string_view s) {
  for (auto f : {Family::EVBombTester, Family::Noh, Family::ZenoChain, Family::Salih,
                 Family::Vaidman, Family::NestedMZI})
    if (to_string(f) == s) return f;
  throw StructuralError("unknown protocol '" + std::string(s) + "'");
}

BitValue BitMapping::of(const std::string& terminal) const {
  auto it = decode.find(terminal);
  return it == decode.end() ? BitValue::Undefined : it->second;
}

std::optional<std::string> BitMapping::terminal_for(BitValue bit) const {
  for (const auto& [t, b] : decode)
    if (b == bit) return t;
  return std::nullopt;
}

void BitMapping::validate(const Circuit& circuit) const {
  int bit0 = 0, bit1 = 0;
  for (const auto& [label, ev] : circuit.terminals()) {
    auto it = decode.find(label);
    if (it == decode.end()) throw StructuralError("terminal '" + label + "' has no decoding");
    bit0 += it->second == BitValue::Bit0;
    bit1 += it->second == BitValue::Bit1;
    if (ev.region == Region::Bob && it->second != BitValue::Abort)
      throw StructuralError("Bob-region terminal '" + label + "' must decode to abort");
  }
  for (const auto& [label, b] : decode)
    if (!circuit.has_terminal(label))
      throw StructuralError("decoding names unknown terminal '" + label + "'");
  if (bit0 > 1 || bit1 > 1) throw StructuralError("a bit value decodes from several terminals");
}

// ---------------------------------------------------------------------------

Protocol build_ev_bomb_tester(BobAction action) {
  Circuit c("ev-bomb-tester");
  c.add_path("in", Region::Alice, kCellOuter)
      .add_path("U", Region::Alice, kCellOuter)
      .add_path("L", Region::Channel, kCellBob)
      .add_path("Lb", Region::Bob, kCellBob)
      .add_path("Lr", Region::Channel, kCellBob)
      .add_path("D1p", Region::Alice, kCellOuter)
      .add_path("D2p", Region::Alice, kCellOuter);
  c.add_terminal(TerminalKind::Detector, "D1", Region::Alice)
      .add_terminal(TerminalKind::Detector, "D2", Region::Alice)
      .add_terminal(TerminalKind::Explosion, "bomb", Region::Bob);

  c.add_stage({Source{"in", Polarization::None}});
  c.add_stage({bs(pi / 4, "in", "", "U", "L")});
  c.add_stage({Mirror{"L", "Lb"}});
  c.mark(kMarkHistoryCut, c.stage_count());
  if (action == BobAction::Block)
    c.add_stage({Absorber{"Lb", "bomb"}});
  else
    c.add_stage({Mirror{"Lb", "Lr"}});
  c.add_stage({bs(pi / 4, "U", "Lr", "D2p", "D1p")});
  c.add_stage({Absorber{"D1p", "D1"}, Absorber{"D2p", "D2"}});

  BitMapping m;
  m.decode = {{"D1", BitValue::Undefined}, {"D2", BitValue::Bit1}, {"bomb", BitValue::Abort}};
  return finish(Family::EVBombTester, action, std::move(c), std::move(m));
}

Protocol build_noh(const NohParams& params, BobAction action) {
  if (params.photon == Polarization::None)
    throw StructuralError("noh: photon polarization must be H or V");
  if (!(params.splitter > 0.0 && params.splitter < pi / 2))
    throw StructuralError("noh: splitter angle must lie in (0, pi/2)");

  Circuit c("noh");
  c.add_path("in", Region::Alice, kCellOuter)
      .add_path("A", Region::Alice, kCellOuter)
      .add_path("C", Region::Channel, kCellBob)
      .add_path("Cb", Region::Bob, kCellBob)
      .add_path("Cr", Region::Bob, kCellBob)
      .add_path("Ca", Region::Bob, kCellBob)
      .add_path("Cret", Region::Channel, kCellBob)
      .add_path("D1p", Region::Alice, kCellOuter)
      .add_path("D2p", Region::Alice, kCellOuter);
  c.add_terminal(TerminalKind::Detector, "D1", Region::Alice)
      .add_terminal(TerminalKind::Detector, "D2", Region::Alice)
      .add_terminal(TerminalKind::Detector, "DB", Region::Bob);

  // Bob reflects the photon's polarization when open, absorbs it when blocking.
  const Polarization reflected =
      action == BobAction::Open ? params.photon
                                : (params.photon == Polarization::H ? Polarization::V
                                                                    : Polarization::H);
  const bool reflect_h = reflected == Polarization::H;

  c.add_stage({Source{"in", params.photon}});
  c.add_stage({bs(params.splitter, "in", "", "A", "C")});
  c.add_stage({Mirror{"C", "Cb"}});
  c.add_stage({PolarizingBeamSplitter{"Cb", "", reflect_h ? "Cr" : "Ca", reflect_h ? "Ca" : "Cr"}});
  c.mark(kMarkHistoryCut, c.stage_count());
  c.add_stage({Absorber{"Ca", "DB"}, Mirror{"Cr", "Cret"}});
  c.add_stage({bs(params.splitter, "A", "Cret", "D1p", "D2p")});
  c.add_stage({Absorber{"D1p", "D1"}, Absorber{"D2p", "D2"}});

  BitMapping m;
  m.decode = {{"D1", BitValue::Bit1}, {"D2", BitValue::Undefined}, {"DB", BitValue::Abort}};
  return finish(Family::Noh, action, std::move(c), std::move(m));
}

Protocol build_zeno_chain(int cycles, BobAction action) {
  if (cycles < 1) throw StructuralError("zeno: cycles must be >= 1");
  const double theta = pi / (2.0 * cycles);

  Circuit c("zeno-chain");
  c.add_path("A", Region::Alice, kCellOuter)
      .add_path("Bret", Region::Channel, kCellBob);
  c.add_terminal(TerminalKind::Detector, "D1", Region::Alice)
      .add_terminal(TerminalKind::Detector, "D0", Region::Alice);
  for (int k = 1; k <= cycles; ++k) {
    c.add_path(idx("B", k), Region::Bob, kCellBob);
    c.add_terminal(TerminalKind::Blocker, idx("blk", k), Region::Bob);
  }

  c.add_stage({Source{"A", Polarization::None}});
  for (int k = 1; k <= cycles; ++k) {
    c.add_stage({bs(theta, "A", k == 1 ? "" : idx("B", k - 1), "A", idx("B", k))});
    c.mark(kMarkHistoryCut, c.stage_count());
    if (action == BobAction::Block) c.add_stage({Absorber{idx("B", k), idx("blk", k)}});
    else c.add_stage({});
  }
  c.add_stage({Mirror{idx("B", cycles), "Bret"}});
  c.add_stage({Absorber{"A", "D1"}, Absorber{"Bret", "D0"}});

  BitMapping m;
  m.decode = {{"D1", BitValue::Bit1}, {"D0", BitValue::Bit0}};
  for (int k = 1; k <= cycles; ++k) m.decode[idx("blk", k)] = BitValue::Abort;
  return finish(Family::ZenoChain, action, std::move(c), std::move(m));
}

Protocol build_salih(int outer, int inner, bool polarized, BobAction action) {
  if (outer < 1) throw StructuralError("salih: outer cycles M must be >= 1");
  if (inner < 2) throw StructuralError("salih: inner cycles N must be >= 2");
  const double alpha = pi / (2.0 * outer);
  const double beta = pi / (2.0 * inner);
  const bool block = action == BobAction::Block;

  Circuit c(polarized ? "salih" : "salih-unpolarized");
  c.add_path("O", Region::Alice, kCellOuter)
      .add_path("I", Region::Alice, kCellInner)
      .add_path("D0p", Region::Alice, kCellOuter)
      .add_path("D1p", Region::Alice, kCellInner);
  c.add_terminal(TerminalKind::Detector, "D0", Region::Alice)
      .add_terminal(TerminalKind::Detector, "D1", Region::Alice);
  for (int m = 1; m <= outer; ++m) {
    c.add_path(idx("X", m), Region::Bob, kCellBob);
    c.add_terminal(TerminalKind::LossChannel, idx("D3", m), Region::Bob);
    for (int n = 1; n <= inner; ++n) {
      c.add_path(idx("Bo", m, n), Region::Channel, kCellBob)
          .add_path(idx("Bb", m, n), Region::Bob, kCellBob)
          .add_path(idx("Br", m, n), Region::Channel, kCellBob);
      c.add_terminal(TerminalKind::Blocker, idx("blk", m, n), Region::Bob);
    }
  }

  auto bob_station = [&](int m, int n) {
    c.add_stage({Mirror{idx("Bo", m, n), idx("Bb", m, n)}});
    if (block) c.add_stage({Absorber{idx("Bb", m, n), idx("blk", m, n)}});
    else c.add_stage({Mirror{idx("Bb", m, n), idx("Br", m, n)}});
  };

  if (polarized) {
    c.add_stage({Source{"O", Polarization::H}});
    for (int m = 1; m <= outer; ++m) {
      c.add_stage({HalfWavePlate{alpha, "O"}});
      c.add_stage({PolarizingBeamSplitter{"O", "", "O", "I"}});
      for (int n = 1; n <= inner; ++n) {
        c.add_stage({HalfWavePlate{beta, "I"}});
        // H crosses to Bob; V stays in Alice's inner arm.
        c.add_stage({PolarizingBeamSplitter{"I", "", idx("Bo", m, n), "I"}});
        bob_station(m, n);
        c.add_stage({PolarizingBeamSplitter{idx("Br", m, n), "I", "I", ""}});
      }
      c.mark(kMarkHistoryCut, c.stage_count());
      // Inner-chain exit: H to the loss channel, V rejoins the outer path.
      c.add_stage({PolarizingBeamSplitter{"I", "", idx("X", m), "I"}});
      c.add_stage({Absorber{idx("X", m), idx("D3", m)}, PolarizingBeamSplitter{"O", "I", "O", ""}});
    }
    c.add_stage({PolarizingBeamSplitter{"O", "", "D0p", "D1p"}});
    c.add_stage({Absorber{"D0p", "D0"}, Absorber{"D1p", "D1"}});
  } else {
    c.add_stage({Source{"O", Polarization::None}});
    for (int m = 1; m <= outer; ++m) {
      c.add_stage({bs(alpha, "O", "I", "O", "I")});
      for (int n = 1; n <= inner; ++n) {
        c.add_stage({bs(beta, "I", n == 1 ? "" : idx("Br", m, n - 1), "I", idx("Bo", m, n))});
        bob_station(m, n);
      }
      c.mark(kMarkHistoryCut, c.stage_count());
      c.add_stage({Mirror{idx("Br", m, inner), idx("X", m)}});
      c.add_stage({Absorber{idx("X", m), idx("D3", m)}});
    }
    c.add_stage({Mirror{"O", "D0p"}, Mirror{"I", "D1p"}});
    c.add_stage({Absorber{"D0p", "D0"}, Absorber{"D1p", "D1"}});
  }

  BitMapping mp;
  mp.decode = {{"D0", BitValue::Bit0}, {"D1", BitValue::Bit1}};
  for (int m = 1; m <= outer; ++m) {
    mp.decode[idx("D3", m)] = BitValue::Abort;
    for (int n = 1; n <= inner; ++n) mp.decode[idx("blk", m, n)] = BitValue::Abort;
  }
  return finish(Family::Salih, action, std::move(c), std::move(mp));
}

std::size_t vaidman_arity(int inner_count) {
  return static_cast<std::size_t>(2 * inner_count + 3);
}

Protocol build_vaidman(int inner_count, std::span<const double> angles, BobAction action) {
  if (inner_count < 2) throw StructuralError("vaidman: inner_count must be >= 2");
  if (angles.size() != vaidman_arity(inner_count))
    throw StructuralError("vaidman: expected " + std::to_string(vaidman_arity(inner_count)) +
                          " beamsplitter angles, got " + std::to_string(angles.size()));
  for (double a : angles)
    if (!std::isfinite(a)) throw StructuralError("vaidman: non-finite beamsplitter angle");

  const double outer_in = angles.front();
  const double tap = angles[angles.size() - 2];
  const double final_bs = angles.back();

  Circuit c("vaidman");
  c.add_path("in", Region::Alice, kCellOuter)
      .add_path("O", Region::Alice, kCellOuter)
      .add_path("L", Region::Alice, kCellInner)
      .add_path("T", Region::Alice, kCellInner)
      .add_path("F0", Region::Alice, kCellOuter)
      .add_path("Ff", Region::Alice, kCellOuter);
  c.add_terminal(TerminalKind::Detector, "D0", Region::Alice)
      .add_terminal(TerminalKind::Detector, "D1", Region::Alice)
      .add_terminal(TerminalKind::LossChannel, "DLf", Region::Alice);
  for (int k = 1; k <= inner_count; ++k) {
    c.add_path(idx("Bo", k), Region::Channel, kCellBob)
        .add_path(idx("Bb", k), Region::Bob, kCellBob)
        .add_path(idx("Br", k), Region::Channel, kCellBob)
        .add_path(idx("DLp", k), Region::Alice, kCellInner);
    c.add_terminal(TerminalKind::Blocker, idx("blk", k), Region::Bob)
        .add_terminal(TerminalKind::LossChannel, idx("DL", k), Region::Alice);
  }

  c.add_stage({Source{"in", Polarization::None}});
  c.add_stage({bs(outer_in, "in", "", "O", "L")});
  for (int k = 1; k <= inner_count; ++k) {
    const double first = angles[static_cast<std::size_t>(2 * k - 1)];
    const double second = angles[static_cast<std::size_t>(2 * k)];
    c.add_stage({bs(first, "L", "", "L", idx("Bo", k))});
    c.add_stage({Mirror{idx("Bo", k), idx("Bb", k)}});
    if (action == BobAction::Block) c.add_stage({Absorber{idx("Bb", k), idx("blk", k)}});
    else c.add_stage({Mirror{idx("Bb", k), idx("Br", k)}});
    c.add_stage({bs(second, "L", idx("Br", k), "L", idx("DLp", k))});
    c.add_stage({Absorber{idx("DLp", k), idx("DL", k)}});
  }
  c.mark(kMarkHistoryCut, c.stage_count());
  c.add_stage({bs(tap, "L", "", "L", "T")});
  c.add_stage({Absorber{"T", "D1"}, bs(final_bs, "O", "L", "F0", "Ff")});
  c.add_stage({Absorber{"F0", "D0"}, Absorber{"Ff", "DLf"}});

  BitMapping m;
  m.decode = {{"D0", BitValue::Bit0}, {"D1", BitValue::Bit1}, {"DLf", BitValue::Abort}};
  for (int k = 1; k <= inner_count; ++k) {
    m.decode[idx("blk", k)] = BitValue::Abort;
    m.decode[idx("DL", k)] = BitValue::Abort;
  }
  return finish(Family::Vaidman, action, std::move(c), std::move(m));
}

Protocol build_nested_mzi(const NestedParams& params, BobAction action) {
  if (!(params.outer_splitter > 0.0 && params.outer_splitter < pi / 2))
    throw StructuralError("nested: outer splitter angle must lie in (0, pi/2)");

  Circuit c("nested-mzi");
  c.add_path("in", Region::Alice, kCellOuter)
      .add_path("A", Region::Alice, kCellOuter)
      .add_path("F", Region::Channel, kCellBob)
      .add_path("B", Region::Bob, kCellBob)
      .add_path("C", Region::Bob, kCellBob)
      .add_path("E", Region::Channel, kCellBob)
      .add_path("X", Region::Bob, kCellBob)
      .add_path("D1p", Region::Alice, kCellOuter)
      .add_path("D2p", Region::Alice, kCellOuter);
  c.add_terminal(TerminalKind::Detector, "D1", Region::Alice)
      .add_terminal(TerminalKind::Detector, "D2", Region::Alice)
      .add_terminal(TerminalKind::LossChannel, "D3", Region::Bob)
      .add_terminal(TerminalKind::Blocker, "blkC", Region::Bob);

  c.add_stage({Source{"in", Polarization::None}});
  c.add_stage({bs(params.outer_splitter, "in", "", "A", "F")});
  c.add_stage({bs(pi / 4, "F", "", "B", "C")});
  c.mark(kMarkHistoryCut, c.stage_count());
  if (action == BobAction::Block) c.add_stage({Absorber{"C", "blkC"}});
  else c.add_stage({});
  // Tuned so light entering from F leaves through X, never through E.
  c.add_stage({bs(pi / 4, "B", "C", "E", "X")});
  c.add_stage({Absorber{"X", "D3"}, bs(pi / 4, "A", "E", "D1p", "D2p")});
  c.add_stage({Absorber{"D1p", "D1"}, Absorber{"D2p", "D2"}});

  BitMapping m;
  m.decode = {{"D1", BitValue::Undefined},
              {"D2", BitValue::Undefined},
              {"D3", BitValue::Abort},
              {"blkC", BitValue::Abort}};
  return finish(Family::NestedMZI, action, std::move(c), std::move(m));
}

void validate(const ProtocolSpec& spec) {
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        const auto expect = [&](Family f) {
          if (spec.family != f)
            throw StructuralError("parameter record does not match protocol family '" +
                                  std::string(to_string(spec.family)) + "'");
        };
        if constexpr (std::is_same_v<T, EVParams>) {
          expect(Family::EVBombTester);
        } else if constexpr (std::is_same_v<T, NohParams>) {
          expect(Family::Noh);
          if (!(p.splitter > 0.0 && p.splitter < pi / 2))
            throw StructuralError("noh: splitter angle must lie in (0, pi/2)");
          if (p.photon == Polarization::None)
            throw StructuralError("noh: photon polarization must be H or V");
        } else if constexpr (std::is_same_v<T, ZenoParams>) {
          expect(Family::ZenoChain);
          if (p.cycles < 1) throw StructuralError("zeno: cycles must be >= 1");
        } else if constexpr (std::is_same_v<T, SalihParams>) {
          expect(Family::Salih);
          if (p.outer < 1) throw StructuralError("salih: outer cycles M must be >= 1");
          if (p.inner < 2) throw StructuralError("salih: inner cycles N must be >= 2");
        } else if constexpr (std::is_same_v<T, VaidmanParams>) {
          expect(Family::Vaidman);
          if (p.inner_count < 2) throw StructuralError("vaidman: inner_count must be >= 2");
          if (p.angles.size() != vaidman_arity(p.inner_count))
            throw StructuralError("vaidman: expected " +
                                  std::to_string(vaidman_arity(p.inner_count)) + " angles");
        } else if constexpr (std::is_same_v<T, NestedParams>) {
          expect(Family::NestedMZI);
        }
      },
      spec.params);
}

Protocol build(const ProtocolSpec& spec) {
  validate(spec);
  return std::visit(
      [&](const auto& p) -> Protocol {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, EVParams>) return build_ev_bomb_tester(spec.action);
        else if constexpr (std::is_same_v<T, NohParams>) return build_noh(p, spec.action);
        else if constexpr (std::is_same_v<T, ZenoParams>)
          return build_zeno_chain(p.cycles, spec.action);
        else if constexpr (std::is_same_v<T, SalihParams>)
          return build_salih(p.outer, p.inner, p.polarized, spec.action);
        else if constexpr (std::is_same_v<T, VaidmanParams>)
          return build_vaidman(p.inner_count, p.angles, spec.action);
        else return build_nested_mzi(p, spec.action);
      },
      spec.params);
}

} // namespace cfq::protocols
