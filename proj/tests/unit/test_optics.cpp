#include "oracles.hpp"

#include <cfq/errors.hpp>
#include <cfq/propagate.hpp>
#include <cfq/protocols.hpp>

#include <gtest/gtest.h>

using namespace cfq;

namespace {

Circuit scratch() {
  Circuit c("scratch");
  c.add_path("a", Region::Alice).add_path("b", Region::Alice).add_path("c", Region::Bob);
  c.add_terminal(TerminalKind::Blocker, "blk", Region::Bob);
  return c;
}

std::vector<protocols::Protocol> every_protocol() {
  using namespace protocols;
  std::vector<Protocol> out;
  for (auto a : {BobAction::Block, BobAction::Open}) {
    out.push_back(build_ev_bomb_tester(a));
    out.push_back(build_noh({}, a));
    out.push_back(build_zeno_chain(7, a));
    out.push_back(build_salih(2, 3, true, a));
    out.push_back(build_salih(3, 2, false, a));
    out.push_back(build_vaidman(2, std::vector<double>(7, oracle::pi / 4), a));
    out.push_back(build_nested_mzi({}, a));
  }
  return out;
}

} // namespace

TEST(Elements, BalancedSplitterSplitsEvenly) {
  const auto c = scratch();
  const auto out = apply_element(c, PhotonState::single("a", Polarization::None),
                                 BeamSplitter{oracle::pi / 4, "a", "", "a", "b"});
  EXPECT_NEAR(out.amplitude({"a", Polarization::None}).real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(out.amplitude({"b", Polarization::None}).real(), std::sqrt(0.5), 1e-15);
}

TEST(Elements, SplitterUsesRealRotation) {
  const auto c = scratch();
  const double t = 0.3;
  const auto out = apply_element(c, PhotonState::single("b", Polarization::None),
                                 BeamSplitter{t, "a", "b", "a", "b"});
  EXPECT_NEAR(out.amplitude({"a", Polarization::None}).real(), -std::sin(t), 1e-15);
  EXPECT_NEAR(out.amplitude({"b", Polarization::None}).real(), std::cos(t), 1e-15);
}

TEST(Elements, QuarterTurnPlateMapsHToV) {
  const auto c = scratch();
  const auto out = apply_element(c, PhotonState::single("a", Polarization::H),
                                 HalfWavePlate{oracle::pi / 2, "a"});
  EXPECT_NEAR(std::abs(out.amplitude({"a", Polarization::V})), 1.0, 1e-15);
  EXPECT_LT(std::abs(out.amplitude({"a", Polarization::H})), 1e-15);
}

TEST(Elements, PolarizingSplitterRoutesByPolarization) {
  const auto c = scratch();
  PhotonState s = PhotonState::single("a", Polarization::H, 0.6);
  s.live[{"a", Polarization::V}] = 0.8;
  const auto out = apply_element(c, s, PolarizingBeamSplitter{"a", "", "b", "c"});
  EXPECT_DOUBLE_EQ(out.amplitude({"b", Polarization::H}).real(), 0.6);
  EXPECT_DOUBLE_EQ(out.amplitude({"c", Polarization::V}).real(), 0.8);
}

TEST(Elements, BlockerMovesMassToTerminal) {
  const auto c = scratch();
  PhotonState s = PhotonState::single("c", Polarization::None, 0.6);
  s.live[{"a", Polarization::None}] = 0.8;
  const auto out = apply_element(c, s, Absorber{"c", "blk"});
  EXPECT_EQ(out.amplitude({"c", Polarization::None}), Complex{});
  EXPECT_NEAR(out.terminal_mass("blk"), 0.36, 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
}

TEST(Elements, UnknownPathIsStructural) {
  const auto c = scratch();
  EXPECT_THROW(apply_element(c, PhotonState::single("a", Polarization::None),
                             Mirror{"a", "nowhere"}),
               StructuralError);
}

TEST(Elements, LightOnUnusedPortIsInternalError) {
  const auto c = scratch();
  PhotonState s = PhotonState::single("b", Polarization::None);
  EXPECT_THROW(apply_element(c, s, BeamSplitter{0.0, "a", "b", "a", ""}),
               InternalConsistencyError);
}

TEST(Elements, AdjointUndoesSplitterAndPlate) {
  const auto c = scratch();
  PhotonState s = PhotonState::single("a", Polarization::H, {0.6, 0.1});
  s.live[{"b", Polarization::V}] = {0.2, -0.77};
  for (const OpticalElement& e :
       {OpticalElement{BeamSplitter{0.4, "a", "b", "a", "b"}},
        OpticalElement{HalfWavePlate{1.1, "a"}},
        OpticalElement{PolarizingBeamSplitter{"a", "b", "a", "b"}}}) {
    const auto back = apply_adjoint(c, apply_element(c, s, e), e);
    EXPECT_NEAR(std::abs(inner_product(s, back)), s.norm(), 1e-14) << describe(e);
  }
}

TEST(CircuitValidation, RejectsOverlappingElementsInOneStage) {
  Circuit c = scratch();
  c.add_stage({Source{"a", Polarization::None}});
  c.add_stage({Mirror{"a", "b"}, Absorber{"b", "blk"}});
  EXPECT_THROW(c.validate(), StructuralError);
}

TEST(CircuitValidation, RejectsUndeclaredPaths) {
  Circuit c = scratch();
  c.add_stage({Source{"a", Polarization::None}});
  c.add_stage({Mirror{"a", "z"}});
  EXPECT_THROW(c.validate(), StructuralError);
}

TEST(CircuitValidation, RejectsDuplicateTerminal) {
  Circuit c = scratch();
  EXPECT_THROW(c.add_terminal(TerminalKind::Detector, "blk", Region::Alice), StructuralError);
}

TEST(RunFock, BalancedMziIsBrightOnOnePort) {
  const auto c = oracle::balanced_mzi();
  const auto d = run_fock(c, initial_state(c));
  EXPECT_NEAR(d.at("Dbright"), 1.0, 1e-12);
  EXPECT_NEAR(d.at("Ddark"), 0.0, 1e-12);
}

TEST(RunFock, IncompleteCircuitThrows) {
  Circuit c = scratch();
  c.add_stage({Source{"a", Polarization::None}});
  c.add_stage({Mirror{"a", "b"}});
  EXPECT_THROW(run_fock(c, initial_state(c)), CircuitIncompleteError);
}

TEST(RunFock, UnnormalizedInputIsRejected) {
  const auto c = oracle::balanced_mzi();
  EXPECT_THROW(run_fock(c, PhotonState::single("in", Polarization::None, 0.5)), DomainError);
}

TEST(RunClassical, AllLitTerminalsRegisterTogether) {
  const auto p = protocols::build_salih(2, 2, true, protocols::BobAction::Open);
  const auto d = run_classical(p.circuit, initial_state(p.circuit));
  const auto lit = d.registering();
  EXPECT_NE(std::find(lit.begin(), lit.end(), "D0"), lit.end());
  EXPECT_NE(std::find(lit.begin(), lit.end(), "D3.1"), lit.end());
  EXPECT_GT(d.at("D0"), 0.0);

  const auto b = protocols::build_salih(2, 2, true, protocols::BobAction::Block);
  const auto db = run_classical(b.circuit, initial_state(b.circuit));
  EXPECT_GT(db.at("blk.1.1"), 0.0);
  EXPECT_GT(db.at("D1"), 0.0);
}

TEST(PostSelect, DarkPortIsNull) {
  const auto c = oracle::balanced_mzi();
  EXPECT_THROW(post_select(c, initial_state(c), "Ddark"), NullPostSelectionError);
  EXPECT_THROW(post_select(c, initial_state(c), "nope"), StructuralError);
}

TEST(PostSelect, MatchesRunFock) {
  const auto ev = protocols::build_ev_bomb_tester(protocols::BobAction::Block);
  EXPECT_NEAR(post_select(ev.circuit, initial_state(ev.circuit), "D2").probability, 0.25, 1e-12);
  const auto s = protocols::build_salih(2, 2, true, protocols::BobAction::Block);
  const auto in = initial_state(s.circuit);
  const auto ps = post_select(s.circuit, in, "D1");
  EXPECT_NEAR(ps.probability, run_fock(s.circuit, in).at("D1"), 1e-12);
  EXPECT_NEAR(ps.final_state.norm(), 1.0, 1e-12);
}

TEST(Properties, NormConservedAtEveryBoundary) {
  for (const auto& p : every_protocol()) {
    for (const auto& s : forward_trajectory(p.circuit, initial_state(p.circuit)))
      EXPECT_NEAR(s.norm(), 1.0, 1e-12) << p.circuit.name();
  }
}

TEST(Properties, TerminalMassNeverDecreases) {
  for (const auto& p : every_protocol()) {
    const auto traj = forward_trajectory(p.circuit, initial_state(p.circuit));
    for (std::size_t k = 1; k < traj.size(); ++k)
      for (const auto& [label, mass] : traj[k - 1].terminal_masses())
        EXPECT_GE(traj[k].terminal_mass(label), mass - 1e-15) << p.circuit.name();
  }
}

TEST(Properties, FockAndClassicalNumbersAgree) {
  for (const auto& p : every_protocol()) {
    const auto in = initial_state(p.circuit);
    const auto f = run_fock(p.circuit, in);
    const auto c = run_classical(p.circuit, in);
    ASSERT_EQ(f.values.size(), c.values.size());
    for (const auto& [label, v] : f.values) EXPECT_NEAR(v, c.at(label), 1e-12);
    EXPECT_NEAR(f.total(), 1.0, 1e-12);
  }
}

TEST(Properties, PropagationIsLinear) {
  // Inject into both inputs of the second splitter of a balanced MZI.
  const auto c = oracle::balanced_mzi();
  const auto s1 = PhotonState::single("U", Polarization::None);
  const auto s2 = PhotonState::single("L", Polarization::None);
  const Complex alpha{0.6, 0.0}, beta{0.0, 0.8};
  auto run_from_stage2 = [&](const PhotonState& s) {
    PhotonState x = s;
    for (std::size_t k = 2; k < c.stage_count(); ++k) x = apply_stage(c, x, k);
    return x;
  };
  const auto combined = run_from_stage2(alpha * s1 + beta * s2);
  const auto separate = alpha * run_from_stage2(s1) + beta * run_from_stage2(s2);
  for (const auto& [m, a] : combined.absorbed)
    EXPECT_NEAR(std::abs(a - separate.absorbed.at(m)), 0.0, 1e-12);
}

TEST(Properties, RunsAreBitIdentical) {
  const auto p = protocols::build_salih(4, 5, true, protocols::BobAction::Block);
  const auto a = run_fock(p.circuit, initial_state(p.circuit));
  const auto b = run_fock(p.circuit, initial_state(p.circuit));
  EXPECT_EQ(a.values, b.values);
}
