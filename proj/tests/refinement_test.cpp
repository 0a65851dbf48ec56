#include <gtest/gtest.h>

#include "wsan/refinement.hpp"

using namespace wsan;

namespace {

constexpr NodeId A1{0};
constexpr NodeId A2{1};
constexpr NodeId A3{2};
constexpr NodeId S1{3};
constexpr NodeId S2{4};

WsanState m1_star_after_hub_failure() {
    WsanState s = initial_state(make_universe(3, 0), Level::M1);
    for (NodeId n : s.universe->actors()) s = apply_event(s, {EventName::AddNode, {n}});
    s = apply_event(s, {EventName::AddLink, {A1, A2}});
    s = apply_event(s, {EventName::AddLink, {A1, A3}});
    s = apply_event(s, {EventName::AddlNet2hopLink, {A2, A1, A3}});
    return apply_event(s, {EventName::RemoveNode, {A1}});
}

WsanState m2_star_with_sensor_bridge_after_hub_failure() {
    WsanState s = initial_state(make_universe(3, 2), Level::M2);
    for (NodeId n : s.universe->actors()) s = apply_event(s, {EventName::AddNode, {n}});
    for (NodeId n : s.universe->sensors()) {
        s = apply_event(s, {EventName::AddSensorNode, {n}});
    }
    s = apply_event(s, {EventName::AddLink, {A1, A2}});
    s = apply_event(s, {EventName::AddLink, {A1, A3}});
    s = apply_event(s, {EventName::AddlNet2hopLink, {A2, A1, A3}});
    s = apply_event(s, {EventName::AddSLink, {S1, S2}});
    s = apply_event(s, {EventName::AddSALink, {A2, S1}});
    s = apply_event(s, {EventName::AddSALink, {A3, S2}});
    return apply_event(s, {EventName::RemoveNode, {A1}});
}

}  // namespace

TEST(AbstractInstance, ProjectsParametersPositionally) {
    const WsanState s = m2_star_with_sensor_bridge_after_hub_failure();
    const auto rec = abstract_instance(s, {EventName::FaultDetRec, {A2, A3, A1, S1, S2}});
    ASSERT_TRUE(rec.has_value());
    EXPECT_EQ(*rec, (EventInstance{EventName::FaultDetRec, {A2, A3, A1}}));

    const auto slink = abstract_instance(s, {EventName::AddSLink, {S1, S2}});
    EXPECT_FALSE(slink.has_value());
}

TEST(GuardStrengthening, HoldsForLocalizedRecovery) {
    const WsanState m1_state = m1_star_after_hub_failure();
    EXPECT_TRUE(
        check_guard_strengthening(m1_state, {EventName::FaultDetRec, {A2, A3, A1}}).pass);
    EXPECT_TRUE(
        check_guard_strengthening(m1_state, {EventName::FaultDetRec2, {A2, A2}}).pass);

    const WsanState m2_state = m2_star_with_sensor_bridge_after_hub_failure();
    EXPECT_TRUE(
        check_guard_strengthening(m2_state, {EventName::FaultDetRec, {A2, A3, A1, S1, S2}})
            .pass);
}

TEST(GuardStrengthening, NewEventsPassVacuously) {
    WsanState s = initial_state(make_universe(2, 2), Level::M2);
    for (NodeId n : s.universe->sensors()) s = apply_event(s, {EventName::AddSensorNode, {n}});
    EXPECT_TRUE(check_guard_strengthening(s, {EventName::AddSLink, {NodeId{2}, NodeId{3}}}).pass);
    EXPECT_TRUE(check_guard_strengthening(s, {EventName::AddSensorNode, {NodeId{2}}}).pass);
}

TEST(GuardStrengthening, WeakenedGuardIsDetected) {
    // With the closure guard dropped, the concrete machine recovers pairs
    // that are still connected; the abstract machine refuses them.
    WsanState s = initial_state(make_universe(3, 0), Level::M1);
    for (NodeId n : s.universe->actors()) s = apply_event(s, {EventName::AddNode, {n}});
    for (auto [n, m] : {std::pair{A1, A2}, {A1, A3}, {A2, A3}}) {
        s = apply_event(s, {EventName::AddLink, {n, m}});
    }
    s = apply_event(s, {EventName::RemoveNode, {A3}});

    MachineOptions weak;
    weak.drop_closure_guard = true;
    const EventInstance rec{EventName::FaultDetRec, {A1, A2}};
    ASSERT_TRUE(is_enabled(s, rec, weak));
    const Verdict verdict = check_guard_strengthening(s, rec, weak);
    EXPECT_FALSE(verdict.pass);
    EXPECT_NE(verdict.detail.find("grd2"), std::string::npos);
}

TEST(ActionConsistency, InitialisationProjectsConsistently) {
    const auto u = make_universe(3, 2);
    const WsanState m2 = initial_state(u, Level::M2);
    EXPECT_EQ(project(m2, Level::M1), initial_state(u, Level::M1));
    EXPECT_EQ(project(m2, Level::M0), initial_state(u, Level::M0));
}

TEST(ActionConsistency, SharedVariablesAgreeForRemoveNode) {
    // Actor-only routes: the refined pruning terms are vacuous and the
    // projected step matches the abstract one exactly.
    WsanState s = initial_state(make_universe(3, 2), Level::M2);
    for (NodeId n : s.universe->actors()) s = apply_event(s, {EventName::AddNode, {n}});
    s = apply_event(s, {EventName::AddLink, {A1, A2}});
    s = apply_event(s, {EventName::AddLink, {A1, A3}});
    s = apply_event(s, {EventName::AddlNet2hopLink, {A2, A1, A3}});
    EXPECT_TRUE(check_action_consistency(s, {EventName::RemoveNode, {A1}}).pass);
    EXPECT_TRUE(check_action_consistency(s, {EventName::RemoveNode, {A2}}).pass);
}

TEST(ActionConsistency, SensorRoutedStatesMarkTheRefinementBoundary) {
    // Once sensor-mediated routes exist, the refined RemoveNode prunes
    // strictly more of lnet than the abstract event; the checker reports
    // the difference. Such states need more steps than the sweep depths
    // used for certification, so the sweeps stay green.
    WsanState s = m2_star_with_sensor_bridge_after_hub_failure();
    s = apply_event(s, {EventName::FaultDetRec, {A2, A3, A1, S1, S2}});
    s = apply_event(s, {EventName::FaultDetRec2, {A3, A3}});
    ASSERT_TRUE(s.failed_node_neigh.empty());
    EXPECT_TRUE(check_action_consistency(s, {EventName::AddNode, {A1}}).pass);
    const Verdict verdict = check_action_consistency(s, {EventName::RemoveNode, {A2}});
    EXPECT_FALSE(verdict.pass);
    EXPECT_NE(verdict.detail.find("lnet"), std::string::npos);
}

TEST(ActionConsistency, RefinedRecoveryStaysInAbstractAssignmentSet) {
    const WsanState s = m2_star_with_sensor_bridge_after_hub_failure();
    EXPECT_TRUE(
        check_action_consistency(s, {EventName::FaultDetRec, {A2, A3, A1, S1, S2}}).pass);
}

TEST(ActionConsistency, DirectFallbackMirrorsTheLocalizedAbstractStep) {
    // Stale route present, sensors unreachable: the concrete machine can
    // only fire the direct form, which must still project onto the
    // abstract localized step for that route.
    WsanState s = initial_state(make_universe(3, 2), Level::M2);
    for (NodeId n : s.universe->actors()) s = apply_event(s, {EventName::AddNode, {n}});
    s = apply_event(s, {EventName::AddLink, {A1, A2}});
    s = apply_event(s, {EventName::AddLink, {A1, A3}});
    s = apply_event(s, {EventName::AddlNet2hopLink, {A2, A1, A3}});
    s = apply_event(s, {EventName::RemoveNode, {A1}});

    const EventInstance direct{EventName::FaultDetRec, {A2, A3}};
    ASSERT_TRUE(is_enabled(s, direct));
    EXPECT_TRUE(check_guard_strengthening(s, direct).pass);
    const Verdict verdict = check_action_consistency(s, direct);
    EXPECT_TRUE(verdict.pass) << verdict.detail;
}

TEST(Sweep, M1RefinesM0OnSmallUniverses) {
    const RefinementReport two = refinement_sweep(make_universe(2, 0), Level::M1, 8);
    EXPECT_TRUE(two.pass()) << two.failures.front().detail;
    const RefinementReport three = refinement_sweep(make_universe(3, 0), Level::M1, 6);
    EXPECT_TRUE(three.pass()) << three.failures.front().detail;
    EXPECT_GT(three.instances, 0u);
}

TEST(Sweep, M2RefinesM1OnSmallUniverses) {
    const RefinementReport report = refinement_sweep(make_universe(2, 2), Level::M2, 6);
    EXPECT_TRUE(report.pass()) << report.failures.front().detail;
}

TEST(Sweep, BrokenFixtureIsReported) {
    ExploreOptions opt;
    opt.machine.drop_closure_guard = true;
    const RefinementReport report = refinement_sweep(make_universe(3, 0), Level::M1, 7, opt);
    ASSERT_FALSE(report.pass());
    EXPECT_EQ(report.failures.front().check, "guard-strengthening");
}

TEST(Sweep, ExplosionGuardApplies) {
    EXPECT_THROW(refinement_sweep(make_universe(8, 0), Level::M1, 3), ExplosionGuardError);
}
