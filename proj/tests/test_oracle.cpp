#include <gtest/gtest.h>

#include "hrl/envs.hpp"
#include "hrl/meta_train.hpp"
#include "hrl/oracle.hpp"
#include "hrl/planning.hpp"
#include "support.hpp"

using namespace hrl;

namespace {

TaskFamily slip_family(double slip, int H) {
    auto specs = six_task_four_room_specs(H);
    for (auto& s : specs) s.slip = slip;
    return make_four_room_family(specs);
}

}  // namespace

TEST(Oracle, GoalReachingValueIsHorizonMinusReachingTime) {
    const auto fam = slip_family(0.15, 20);
    const auto& h = fam.hierarchy;
    int queries = 0;
    for (int t : {0, 3}) {
        const auto& m = fam.task(t);
        const auto o = HierarchyOracle::exact(m, h);
        for (int c = 0; c < h.num_clusters(); ++c)
            for (int z : h.entrances(c))
                for (const auto& g : h.exits(c))
                    for (int step : {0, 7}) {
                        const auto avail = o.available_exits(z);
                        if (!std::binary_search(avail.begin(), avail.end(), g)) continue;
                        const auto res = o.goal_reaching(z, g, step);
                        const double et = hrl::testing::expected_reaching_time(m, o, res->policy, z, step, g);
                        EXPECT_NEAR((20 - step) - res->value_at(z), et, 1e-9) << z << " -> " << g.state;
                        ++queries;
                    }
    }
    EXPECT_GE(queries, 20);
}

TEST(Oracle, MinimumReachingTimeIsBfsDistance) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    const auto& h = fam.hierarchy;
    for (int t = 0; t < fam.num_tasks(); ++t) {
        const auto& m = fam.task(t);
        for (int c = 0; c < h.num_clusters(); ++c)
            for (int z : h.entrances(c))
                for (const auto& g : h.exits(c)) {
                    auto allowed = [&](int s, int a) {
                        return StateAction{s, a} == g || h.cluster_of(m.row(s, a)[0].next) == c;
                    };
                    const int d = hrl::testing::bfs_steps_to_exit(m, z, g, allowed);
                    const auto st = reaching_times(m, h, z, g, 20);
                    EXPECT_EQ(st.t_min, d < 0 ? 20 : std::min(d, 20));
                    // Deterministic moves: the optimal expected time is the shortest one.
                    EXPECT_DOUBLE_EQ(st.t_star, st.t_min);
                }
    }
}

TEST(Oracle, ReachingTimesRejectForeignExit) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    EXPECT_THROW(reaching_times(fam.task(0), fam.hierarchy, 0, {35, 1}, 20), std::invalid_argument);
}

TEST(Oracle, CertificateOnFourRoom) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    const auto cert = certify_reaching(fam.task(0), fam.hierarchy, 20);
    EXPECT_DOUBLE_EQ(cert.gamma, 0.0);
    EXPECT_EQ(cert.width, 5);
    EXPECT_EQ(cert.unreachable, 0);
}

TEST(Oracle, SealedModelRoutesExits) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    const auto o = HierarchyOracle::exact(fam.task(0), fam.hierarchy);
    const StateAction g{11, 1};
    const auto m = o.sealed_model(o.only_success(g), 20, 0);
    EXPECT_EQ(m.num_states(), 50);
    EXPECT_EQ(m.row(11, 1)[0].next, o.success_state());
    EXPECT_EQ(m.row(17, 2)[0].next, o.failure_state());
    EXPECT_TRUE(m.is_terminal(o.success_state()));
    EXPECT_THROW(o.only_success({0, 0}), std::invalid_argument);
}

TEST(Oracle, UnknownRowsFail) {
    DynamicsEstimate ref(2, 1);
    ref.set_row(0, 0, {{0, 1.0}});
    const HierarchyOracle o(ref, {}, {0}, 3);
    const auto m = o.sealed_model({}, 3, 0);
    EXPECT_EQ(m.row(1, 0)[0].next, o.failure_state());
}

TEST(Oracle, AvailableExitsFollowTheFloor) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    auto o = HierarchyOracle::exact(fam.task(0), fam.hierarchy);
    // Cluster 0 exits are reachable from 0; the others are sealed off.
    EXPECT_EQ(o.available_exits(0), (std::vector<StateAction>{{11, 1}, {17, 2}}));
    const double floor = reachability_floor(o, fam.hierarchy);
    EXPECT_GT(floor, 0.0);
    o.set_epsilon0(1.5 * floor);
    EXPECT_FALSE(o.available_exits(0).empty());
    o.set_epsilon0(1e6);
    EXPECT_TRUE(o.available_exits(0).empty());
    EXPECT_THROW(o.available_exits(1), std::invalid_argument);
}

TEST(Oracle, ResultsAreMemoized) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    const auto o = HierarchyOracle::exact(fam.task(0), fam.hierarchy);
    const auto a = o.goal_reaching(0, {11, 1}, 2);
    const std::size_t n = o.cache_size();
    const auto b = o.goal_reaching(0, {11, 1}, 2);
    EXPECT_EQ(a.get(), b.get());
    EXPECT_EQ(o.cache_size(), n);
    o.goal_reaching(0, {11, 1}, 3);
    EXPECT_EQ(o.cache_size(), n + 1);
}

TEST(Oracle, LearnedOracleAgreesWithExactOnDeterministicFamily) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    const auto st = meta_train(fam, MetaTrainConfig{}, 0);
    const auto learned = HierarchyOracle::from_state(st, 0.0);
    const auto exact = HierarchyOracle::exact(fam.task(0), fam.hierarchy);
    EXPECT_EQ(learned.exits(), exact.exits());
    for (const auto& g : std::vector<StateAction>{{11, 1}, {17, 2}})
        EXPECT_DOUBLE_EQ(learned.goal_reaching(0, g, 0)->value_at(0), exact.goal_reaching(0, g, 0)->value_at(0));
}
