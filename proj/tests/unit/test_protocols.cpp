#include "oracles.hpp"

#include <cfq/errors.hpp>
#include <cfq/propagate.hpp>
#include <cfq/protocols.hpp>

#include <gtest/gtest.h>

using namespace cfq;
using namespace cfq::protocols;

namespace {

OutcomeDistribution fock(const Protocol& p) { return run_fock(p.circuit, initial_state(p.circuit)); }

} // namespace

TEST(BombTester, DudAlwaysReachesD1) {
  const auto d = fock(build_ev_bomb_tester(BobAction::Open));
  EXPECT_NEAR(d.at("D1"), 1.0, 1e-12);
  EXPECT_NEAR(d.at("D2"), 0.0, 1e-12);
}

TEST(BombTester, LiveBombOracle) {
  const auto d = fock(build_ev_bomb_tester(BobAction::Block));
  EXPECT_NEAR(d.at("bomb"), 0.5, 1e-12);
  EXPECT_NEAR(d.at("D1"), 0.25, 1e-12);
  EXPECT_NEAR(d.at("D2"), 0.25, 1e-12);
}

TEST(Noh, ReflectedPolarizationInterferesIntoD2) {
  EXPECT_NEAR(fock(build_noh({}, BobAction::Open)).at("D2"), 1.0, 1e-12);
}

TEST(Noh, AbsorbedPolarizationOracle) {
  const auto d = fock(build_noh({}, BobAction::Block));
  EXPECT_NEAR(d.at("DB"), 0.5, 1e-12);
  EXPECT_NEAR(d.at("D1"), 0.25, 1e-12);
  EXPECT_NEAR(d.at("D2"), 0.25, 1e-12);
}

TEST(Noh, VerticalPhotonSwapsRoles) {
  // Bob's choice is relative to the photon's polarization.
  NohParams v;
  v.photon = Polarization::V;
  EXPECT_NEAR(fock(build_noh(v, BobAction::Open)).at("D2"), 1.0, 1e-12);
  EXPECT_NEAR(fock(build_noh(v, BobAction::Block)).at("DB"), 0.5, 1e-12);
}

TEST(Zeno, SingleCycleOpenSendsPhotonToBob) {
  EXPECT_NEAR(fock(build_zeno_chain(1, BobAction::Open)).at("D0"), 1.0, 1e-12);
}

TEST(Zeno, OpenChainAlwaysReachesBob) {
  for (int n : {2, 3, 10, 57}) EXPECT_NEAR(fock(build_zeno_chain(n, BobAction::Open)).at("D0"), 1.0, 1e-12);
}

TEST(Zeno, BlockedSurvivalMatchesClosedForm) {
  EXPECT_NEAR(fock(build_zeno_chain(25, BobAction::Block)).at("D1"), 0.90595915942512660, 1e-12);
  for (int n : {1, 2, 5, 25, 200})
    EXPECT_NEAR(fock(build_zeno_chain(n, BobAction::Block)).at("D1"), oracle::zeno_survival(n),
                1e-12);
}

TEST(Zeno, LargeChainStaysExact) {
  EXPECT_NEAR(fock(build_zeno_chain(10000, BobAction::Block)).at("D1"),
              oracle::zeno_survival(10000), 1e-12);
}

TEST(Salih, OpenCaseClosedForm) {
  EXPECT_NEAR(fock(build_salih(2, 2, true, BobAction::Open)).at("D0"), 0.25, 1e-12);
  for (bool pol : {true, false})
    for (int m : {1, 2, 3, 7})
      for (int n : {2, 5})
        EXPECT_NEAR(fock(build_salih(m, n, pol, BobAction::Open)).at("D0"),
                    oracle::salih_open_d0(m), 1e-12);
}

TEST(Salih, MEqualsOneOpenNeverReachesD0) {
  EXPECT_NEAR(fock(build_salih(1, 3, true, BobAction::Open)).at("D0"), 0.0, 1e-12);
}

TEST(Salih, BlockedCaseMatchesRecurrence) {
  for (bool pol : {true, false})
    for (int m : {1, 2, 4})
      for (int n : {2, 3, 6}) {
        const auto d = fock(build_salih(m, n, pol, BobAction::Block));
        const auto [h, v] = oracle::salih_blocked(m, n);
        EXPECT_NEAR(d.at("D1"), v * v, 1e-12);
        EXPECT_NEAR(d.at("D0"), h * h, 1e-12);
      }
}

TEST(Salih, OnlyHorizontalLightAtBob) {
  for (auto a : {BobAction::Block, BobAction::Open}) {
    const auto p = build_salih(3, 3, true, a);
    for (const auto& s : forward_trajectory(p.circuit, initial_state(p.circuit)))
      for (const auto& [m, amp] : s.live)
        if (p.circuit.region_of(m.path) == Region::Bob && std::abs(amp) > kZeroAmplitude)
          EXPECT_EQ(m.pol, Polarization::H) << m.path;
  }
}

TEST(Salih, ParameterBounds) {
  EXPECT_THROW(build_salih(0, 2, true, BobAction::Open), StructuralError);
  EXPECT_THROW(build_salih(2, 1, true, BobAction::Open), StructuralError);
  EXPECT_THROW(build_zeno_chain(0, BobAction::Open), StructuralError);
}

TEST(Vaidman, OpenNeverReachesD1) {
  for (double t : {0.2, 0.7, 1.3}) {
    std::vector<double> angles(7, oracle::pi / 4);
    angles.front() = t;
    angles.back() = 1.5 - t;
    EXPECT_NEAR(fock(build_vaidman(2, angles, BobAction::Open)).at("D1"), 0.0, 1e-12);
  }
}

TEST(Vaidman, ArityIsChecked) {
  EXPECT_EQ(vaidman_arity(2), 7u);
  EXPECT_THROW(build_vaidman(2, std::vector<double>(6, 0.5), BobAction::Open), StructuralError);
  EXPECT_THROW(build_vaidman(1, std::vector<double>(5, 0.5), BobAction::Open), StructuralError);
}

TEST(Vaidman, ZeroOuterAngleKeepsLightOutOfInnerChain) {
  std::vector<double> angles(7, oracle::pi / 4);
  angles.front() = 0.0;
  const double fin = 0.4;
  angles.back() = fin;
  const auto p = build_vaidman(2, angles, BobAction::Open);
  const auto d = fock(p);
  EXPECT_NEAR(d.at("D0"), std::cos(fin) * std::cos(fin), 1e-12);
  EXPECT_NEAR(d.at("blk.1") + d.at("DL.1") + d.at("DL.2"), 0.0, 1e-12);
}

TEST(BitMapping, BuiltProtocolsSatisfyInvariants) {
  for (auto a : {BobAction::Block, BobAction::Open}) {
    for (const auto& p :
         {build_ev_bomb_tester(a), build_noh({}, a), build_zeno_chain(4, a),
          build_salih(2, 2, true, a), build_vaidman(3, std::vector<double>(9, 0.6), a),
          build_nested_mzi({}, a)}) {
      EXPECT_NO_THROW(p.mapping.validate(p.circuit)) << p.circuit.name();
      for (const auto& [label, ev] : p.circuit.terminals())
        if (ev.region == Region::Bob) EXPECT_EQ(p.mapping.of(label), BitValue::Abort) << label;
    }
  }
}

TEST(BitMapping, RejectsTwoTerminalsForOneBit) {
  auto p = build_zeno_chain(2, BobAction::Open);
  p.mapping.decode["blk.1"] = BitValue::Bit1;
  EXPECT_THROW(p.mapping.validate(p.circuit), StructuralError);
}

TEST(BitDecodability, DesignPointsNeverDecodeTheWrongBit) {
  // Bob blocking sends Bit1.
  const auto zb = fock(build_zeno_chain(30, BobAction::Block));
  EXPECT_GT(zb.at("D1"), 0.0);
  EXPECT_NEAR(zb.at("D0"), 0.0, 1e-12);
  const auto zo = fock(build_zeno_chain(30, BobAction::Open));
  EXPECT_NEAR(zo.at("D1"), 0.0, 1e-12);

  const auto eo = fock(build_ev_bomb_tester(BobAction::Open));
  EXPECT_NEAR(eo.at("D2"), 0.0, 1e-12);
  const auto so = fock(build_salih(3, 3, true, BobAction::Open));
  EXPECT_NEAR(so.at("D1"), 0.0, 1e-12);
}

TEST(Spec, BuildDispatchesOnFamily) {
  ProtocolSpec s;
  s.family = Family::Salih;
  s.params = SalihParams{2, 4, true};
  s.action = BobAction::Block;
  EXPECT_NEAR(fock(build(s)).at("D1"), oracle::salih_blocked(2, 4).second *
                                           oracle::salih_blocked(2, 4).second, 1e-12);
  s.params = ZenoParams{3};
  EXPECT_THROW(build(s), StructuralError);
  EXPECT_EQ(family_from_string("nested"), Family::NestedMZI);
  EXPECT_THROW(family_from_string("bogus"), StructuralError);
}
