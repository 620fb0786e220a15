#include "oracles.hpp"

#include <cfq/counterfactuality.hpp>
#include <cfq/errors.hpp>

#include <gtest/gtest.h>

using namespace cfq;
using namespace cfq::protocols;
using cf::CrossingQuery;

namespace {

double classical_crossing(const Protocol& p) {
  return cf::crossing_report(p.circuit, initial_state(p.circuit), {LightModel::Classical, "", 0});
}

double fock_crossing(const Protocol& p, const std::string& outcome) {
  return cf::crossing_report(p.circuit, initial_state(p.circuit),
                             {LightModel::Fock, outcome, cf::kDefaultWeakEpsilon});
}

cf::WeakTraceReport trace(const Protocol& p, const std::string& outcome) {
  return cf::weak_trace(p.circuit, initial_state(p.circuit), outcome);
}

cf::HistoryFamily family(const Protocol& p) {
  return cf::build_history_family(p.circuit, initial_state(p.circuit), cf::default_cuts(p.circuit),
                                  cf::default_coarse_graining(p.circuit));
}

Circuit straight_line() {
  Circuit c("line");
  c.add_path("a", Region::Alice).add_path("b", Region::Channel).add_path("c", Region::Alice);
  c.add_terminal(TerminalKind::Detector, "D", Region::Alice);
  c.add_stage({Source{"a", Polarization::None}});
  c.add_stage({Mirror{"a", "b"}});
  c.add_stage({Mirror{"b", "c"}});
  c.add_stage({Absorber{"c", "D"}});
  return c;
}

} // namespace

TEST(ClassicalInference, AbsenceCarriesABitForFree) {
  const cf::ClassicalChannelModel dog{"intruder", "bark", true};
  const auto quiet = cf::classical_absence_channel(dog, false);
  EXPECT_FALSE(quiet.b_observed);
  EXPECT_FALSE(quiet.energy_crossed);
  const auto bark = cf::classical_absence_channel(dog, true);
  EXPECT_TRUE(bark.b_observed);
  EXPECT_TRUE(bark.energy_crossed);
  const auto again = cf::classical_absence_channel(dog, false);
  EXPECT_EQ(again.b_observed, quiet.b_observed);
  EXPECT_EQ(again.energy_crossed, quiet.energy_crossed);
}

TEST(ClassicalInference, OneWayImplicationIsNotAChannel) {
  EXPECT_THROW(cf::classical_absence_channel({"A", "B", false}, false), DomainError);
}

TEST(WeakTrace, SinglePathHasUnitWeakValues) {
  const auto c = straight_line();
  const auto r = cf::weak_trace(c, initial_state(c), "D");
  for (const auto& s : r.segments) EXPECT_NEAR(std::abs(s.weak_value - Complex{1.0}), 0.0, 1e-15);
  EXPECT_TRUE(r.present_in(Region::Channel));
  EXPECT_EQ(r.order, 1);
}

TEST(WeakTrace, NestedInterferometerShowsDiscontinuousTrace) {
  const auto p = build_nested_mzi({}, BobAction::Open);
  const auto r = trace(p, "D2");
  EXPECT_NEAR(r.probability, 1.0 / 6.0, 1e-12);
  EXPECT_TRUE(r.present_on("C"));
  EXPECT_TRUE(r.present_on("B"));
  EXPECT_FALSE(r.present_on("E"));
  EXPECT_FALSE(r.present_on("F"));
  EXPECT_FALSE(r.present_in(Region::Channel));
  EXPECT_TRUE(r.present_in(Region::Bob));
  EXPECT_NEAR(r.max_weak_value_on("A"), 1.0, 1e-12);
  EXPECT_NEAR(r.max_weak_value_on("C"), std::sqrt(0.5), 1e-12);
  for (const auto& s : r.segments)
    if (s.segment.mode.path == "C") EXPECT_LT(s.weak_value.real(), 0.0);
}

TEST(WeakTrace, SalihBlockedLeavesNoTraceAtBob) {
  const auto p = build_salih(2, 2, true, BobAction::Block);
  const auto r = trace(p, "D1");
  EXPECT_FALSE(r.present_in(Region::Bob));
  EXPECT_FALSE(r.present_in(Region::Channel));
}

TEST(WeakTrace, WeakValuesSumToOneAtEveryBoundary) {
  const std::vector<std::pair<Protocol, std::string>> cases = {
      {build_nested_mzi({}, BobAction::Open), "D2"},
      {build_salih(3, 2, true, BobAction::Block), "D1"},
      {build_salih(3, 2, false, BobAction::Open), "D0"},
      {build_noh({}, BobAction::Block), "D1"},
      {build_ev_bomb_tester(BobAction::Block), "D2"},
      {build_zeno_chain(5, BobAction::Block), "D1"}};
  for (const auto& [p, outcome] : cases) {
    const auto r = trace(p, outcome);
    ASSERT_EQ(r.boundary_sums.size(), p.circuit.stage_count() + 1);
    for (const auto& sum : r.boundary_sums)
      EXPECT_NEAR(std::abs(sum - Complex{1.0}), 0.0, 1e-9) << p.circuit.name();
  }
}

TEST(WeakTrace, ForwardAndBackwardOverlapsAgree) {
  for (const auto& [p, outcome] :
       std::vector<std::pair<Protocol, std::string>>{
           {build_salih(2, 3, true, BobAction::Block), "D1"},
           {build_nested_mzi({}, BobAction::Open), "D1"},
           {build_noh({}, BobAction::Block), "D2"}}) {
    const auto r = trace(p, outcome);
    EXPECT_NEAR(std::abs(r.overlap_forward - r.overlap_backward), 0.0, 1e-12);
    EXPECT_NEAR(std::norm(r.overlap_forward), r.probability, 1e-12);
  }
}

TEST(WeakTrace, PresenceNeedsBothAmplitudes) {
  const auto r = trace(build_salih(2, 2, true, BobAction::Block), "D1");
  for (const auto& s : r.segments)
    if (std::abs(s.forward) < kZeroAmplitude || std::abs(s.backward) < kZeroAmplitude)
      EXPECT_FALSE(s.present);
}

TEST(WeakTrace, NullPostSelectionPropagates) {
  EXPECT_THROW(trace(build_ev_bomb_tester(BobAction::Open), "D2"), NullPostSelectionError);
}

TEST(Crossing, ClassicalLightAlwaysCrosses) {
  EXPECT_GT(classical_crossing(build_salih(2, 4, true, BobAction::Open)), 0.0);
  for (auto a : {BobAction::Block, BobAction::Open})
    for (const auto& p : {build_ev_bomb_tester(a), build_noh({}, a), build_zeno_chain(6, a),
                          build_salih(2, 2, true, a), build_salih(1, 4, false, a),
                          build_vaidman(2, std::vector<double>(7, 0.5), a),
                          build_nested_mzi({}, a)})
      EXPECT_GT(classical_crossing(p), 1e-12) << p.circuit.name() << ' ' << to_string(a);
}

TEST(Crossing, PostselectedSalihBitOneNeverCrosses) {
  EXPECT_NEAR(fock_crossing(build_salih(2, 4, true, BobAction::Block), "D1"), 0.0, 1e-12);
}

TEST(Crossing, ZenoPhotonDetectedAfterBobCrossedFully) {
  EXPECT_NEAR(fock_crossing(build_zeno_chain(10, BobAction::Open), "D0"), 1.0, 1e-12);
}

TEST(Crossing, NohReflectedPhotonHasBeenToBob) {
  EXPECT_GT(fock_crossing(build_noh({}, BobAction::Open), "D2"), 0.1);
  EXPECT_NEAR(fock_crossing(build_noh({}, BobAction::Block), "D1"), 0.0, 1e-12);
}

TEST(Crossing, ConcordanceWithWeakTrace) {
  const std::vector<std::pair<Protocol, std::string>> cases = {
      {build_nested_mzi({}, BobAction::Open), "D2"},
      {build_nested_mzi({}, BobAction::Block), "D2"},
      {build_salih(2, 2, true, BobAction::Block), "D1"},
      {build_salih(2, 2, true, BobAction::Open), "D0"},
      {build_noh({}, BobAction::Open), "D2"},
      {build_noh({}, BobAction::Block), "D1"},
      {build_zeno_chain(4, BobAction::Block), "D1"}};
  for (const auto& [p, outcome] : cases) {
    const bool crossed = fock_crossing(p, outcome) > 1e-12;
    const auto r = trace(p, outcome);
    bool present = false;
    for (const auto& s : r.segments)
      present = present || (s.present && s.region != Region::Alice);
    EXPECT_EQ(crossed, present) << p.circuit.name() << ' ' << outcome;
  }
}

TEST(Crossing, FockNeedsAnOutcome) {
  const auto p = build_salih(2, 2, true, BobAction::Block);
  EXPECT_THROW(cf::crossing_report(p.circuit, initial_state(p.circuit), {LightModel::Fock, "", 1e-10}),
               StructuralError);
}

TEST(BobStation, IntensityPerStationFallsWithMAndN) {
  auto at = [](int m, int n) {
    const auto p = build_salih(m, n, true, BobAction::Block);
    return cf::bob_station_intensity(p.circuit, initial_state(p.circuit));
  };
  EXPECT_GT(at(1, 2), at(2, 2));
  EXPECT_GT(at(2, 2), at(2, 3));
  EXPECT_GT(at(5, 5), 0.0);
}

TEST(Histories, OneCellGivesOneHistoryPerLitTerminal) {
  const auto c = oracle::balanced_mzi();
  const auto fam = cf::build_history_family(c, initial_state(c), {2},
                                            [](const Mode&, bool) { return std::string("all"); });
  ASSERT_EQ(fam.histories.size(), 1u);
  EXPECT_NEAR(std::abs(fam.histories[0].amplitude), 1.0, 1e-12);
  EXPECT_TRUE(fam.consistent);
}

TEST(Histories, InterferingArmsAreInconsistent) {
  const auto c = oracle::balanced_mzi();
  const auto fam =
      cf::build_history_family(c, initial_state(c), {2}, cf::default_coarse_graining(c));
  // Hand computation: each arm contributes +1/2 to the bright port amplitude
  // and +-1/2 to the dark one, so D(up, down) = +-1/4 within each outcome.
  ASSERT_EQ(fam.histories.size(), 4u);
  EXPECT_NEAR(fam.max_offdiag_real, 0.25, 1e-12);
  EXPECT_FALSE(fam.consistent);
  EXPECT_EQ(cf::classify_by_histories(fam, {"arm-down"}, "Dbright"), cf::HistoryVerdict::Meaningless);
}

TEST(Histories, BlockedArmMakesFamilyConsistent) {
  const auto c = oracle::balanced_mzi(true);
  const auto fam =
      cf::build_history_family(c, initial_state(c), {3}, cf::default_coarse_graining(c));
  EXPECT_TRUE(fam.consistent);
  EXPECT_EQ(cf::classify_by_histories(fam, {"arm-down"}, "Ddark"),
            cf::HistoryVerdict::Counterfactual);
}

TEST(Histories, SalihSingleOuterCycleIsCounterfactual) {
  const auto fam = family(build_salih(1, 2, true, BobAction::Block));
  EXPECT_TRUE(fam.consistent);
  for (const auto& h : fam.histories)
    if (h.outcome == "D1") EXPECT_FALSE(h.visits_any({kCellBob}));
  EXPECT_EQ(cf::classify_by_histories(fam, {kCellBob}, "D1"), cf::HistoryVerdict::Counterfactual);
}

TEST(Histories, ZenoSingleOpenCycleGoesThroughBob) {
  const auto fam = family(build_zeno_chain(1, BobAction::Open));
  EXPECT_TRUE(fam.consistent);
  EXPECT_EQ(cf::classify_by_histories(fam, {kCellBob}, "D0"),
            cf::HistoryVerdict::NotCounterfactual);
}

TEST(Histories, ZenoOpenChainInterferesAcrossCells) {
  // Both cells feed D0 coherently, so the off-diagonal terms survive.
  const auto fam = family(build_zeno_chain(3, BobAction::Open));
  EXPECT_FALSE(fam.consistent);
  EXPECT_EQ(cf::classify_by_histories(fam, {kCellBob}, "D0"), cf::HistoryVerdict::Meaningless);
}

TEST(Histories, DecoherenceMatrixProperties) {
  for (const auto& p : {build_salih(2, 2, false, BobAction::Block),
                        build_salih(2, 3, true, BobAction::Block),
                        build_nested_mzi({}, BobAction::Open)}) {
    const auto fam = family(p);
    EXPECT_LT(fam.hermiticity_defect(), 1e-12);
    EXPECT_NEAR(fam.trace(), 1.0, 1e-9);
    for (std::size_t i = 0; i < fam.histories.size(); ++i) {
      EXPECT_GE(fam.decoherence[i][i].real(), 0.0);
      EXPECT_NEAR(fam.decoherence[i][i].imag(), 0.0, 1e-15);
      EXPECT_NEAR(fam.decoherence[i][i].real(), fam.histories[i].probability, 1e-15);
    }
  }
}

TEST(Histories, ConsistentFamilySumsToOutcomeProbability) {
  const auto p = build_salih(1, 3, true, BobAction::Block);
  const auto fam = family(p);
  ASSERT_TRUE(fam.consistent);
  double sum = 0.0;
  for (const auto& h : fam.histories)
    if (h.outcome == "D1") sum += std::norm(h.amplitude);
  EXPECT_NEAR(sum, run_fock(p.circuit, initial_state(p.circuit)).at("D1"), 1e-9);
}

TEST(Histories, GuardAndCutValidation) {
  const auto p = build_salih(20, 2, true, BobAction::Block);
  EXPECT_THROW(family(p), ResourceError);
  const auto q = build_salih(1, 2, true, BobAction::Block);
  const auto in = initial_state(q.circuit);
  const auto cg = cf::default_coarse_graining(q.circuit);
  EXPECT_THROW(cf::build_history_family(q.circuit, in, {4, 3}, cg), StructuralError);
  EXPECT_THROW(cf::build_history_family(q.circuit, in, {q.circuit.stage_count() + 1}, cg),
               StructuralError);
}

TEST(LossStatistics, SalihTwoByTwo) {
  const auto s = cf::loss_statistics(build_salih(2, 2, true, BobAction::Block),
                                     build_salih(2, 2, true, BobAction::Open));
  const auto [h, v] = oracle::salih_blocked(2, 2);
  EXPECT_NEAR(s.p_loss_open, 0.75, 1e-12);
  EXPECT_NEAR(s.p_loss_block, 1.0 - h * h - v * v, 1e-12);
  EXPECT_GT(s.leakage_bits, 0.0);
  EXPECT_NEAR(s.leakage_bits, oracle::leakage_bits(s.p_loss_block, s.p_loss_open), 1e-12);
}

TEST(LossStatistics, SymmetricChannelLeaksNothing) {
  const auto p = build_salih(2, 2, true, BobAction::Open);
  EXPECT_EQ(cf::loss_statistics(p, p).leakage_bits, 0.0);
  EXPECT_EQ(cf::abort_leakage_bits(0.3, 0.3), 0.0);
  EXPECT_NEAR(cf::abort_leakage_bits(0.0, 1.0), 1.0, 1e-15);
}

TEST(LossStatistics, MismatchedDecodingIsRejected) {
  EXPECT_THROW(cf::loss_statistics(build_salih(2, 2, true, BobAction::Block),
                                   build_salih(3, 2, true, BobAction::Open)),
               StructuralError);
}
