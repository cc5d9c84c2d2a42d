#include <gtest/gtest.h>

#include <set>

#include "hrl/envs.hpp"
#include "hrl/planning.hpp"
#include "support.hpp"

using namespace hrl;

namespace {

/// Appends a zero-reward absorbing state and points (s,a) at it.
TabularMdp sever(const TabularMdp& m, StateAction sa) {
    const int S = m.num_states(), A = m.num_actions();
    std::vector<SparseRow> rows;
    std::vector<double> rewards;
    for (int s = 0; s <= S; ++s)
        for (int a = 0; a < A; ++a) {
            if (s == S) {
                rows.push_back({{S, 1.0}});
                rewards.push_back(0.0);
                continue;
            }
            const auto r = m.row(s, a);
            rows.push_back(StateAction{s, a} == sa ? SparseRow{{S, 1.0}} : SparseRow(r.begin(), r.end()));
            rewards.push_back(m.reward(s, a));
        }
    return TabularMdp(S + 1, A, m.horizon(), m.start_state(), rows, rewards);
}

int bfs_cells(const TabularMdp& m, int from, int to) {
    return hrl::testing::bfs_steps_to_exit(m, from, {to, 0}, [](int, int) { return true; }) - 1;
}

}  // namespace

TEST(FourRoom, LayoutCounts) {
    const FourRoomSpec spec;
    const FourRoomLayout lay(spec);
    EXPECT_EQ(lay.num_states(), 48);
    std::vector<int> per_room(4, 0);
    for (int s = 0; s < lay.num_states(); ++s) ++per_room[static_cast<std::size_t>(lay.room_of(s))];
    EXPECT_EQ(per_room, (std::vector<int>{12, 12, 12, 12}));
    EXPECT_TRUE(lay.is_wall({4, 0}));
    EXPECT_TRUE(lay.is_wall({0, 3}));
    EXPECT_THROW(lay.state_of({4, 4}), std::invalid_argument);
}

TEST(FourRoom, ExitsAreExactlyThePairsThatVary) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    std::set<StateAction> varying;
    const auto& t0 = fam.task(0);
    for (int s = 0; s < t0.num_states(); ++s)
        for (int a = 0; a < t0.num_actions(); ++a)
            for (int t = 1; t < fam.num_tasks(); ++t) {
                const auto r0 = t0.row(s, a);
                const auto rt = fam.task(t).row(s, a);
                if (!std::equal(r0.begin(), r0.end(), rt.begin(), rt.end())) varying.insert({s, a});
            }
    const auto exits = fam.hierarchy.all_exits();
    EXPECT_EQ(std::vector<StateAction>(varying.begin(), varying.end()), exits);
    EXPECT_EQ(exits.size(), 4u);
}

TEST(FourRoom, OptimalValuesFollowBfsDistance) {
    const auto specs = six_task_four_room_specs(20);
    const auto fam = make_four_room_family(specs);
    const FourRoomLayout lay(specs.front());
    for (int t = 0; t < fam.num_tasks(); ++t) {
        const auto& m = fam.task(t);
        const int goal = lay.state_of(specs[static_cast<std::size_t>(t)].goal);
        const int d = bfs_cells(m, m.start_state(), goal);
        bool can_stay = false;
        for (int a = 0; a < 4; ++a) can_stay |= m.row(goal, a)[0].next == goal;
        // Either stand on the goal or bounce off it every other step.
        const int expect = can_stay ? 20 - d : (20 - d + 1) / 2;
        EXPECT_DOUBLE_EQ(value_iteration(m).values.v(0, m.start_state()), expect) << "task " << t;
    }
}

TEST(FourRoom, SlipRowsStayNormalized) {
    auto specs = six_task_four_room_specs(20);
    for (auto& s : specs) s.slip = 0.2;
    const auto fam = make_four_room_family(specs);
    const auto& m = fam.task(2);
    for (int s = 0; s < m.num_states(); ++s)
        for (int a = 0; a < 4; ++a) {
            double sum = 0.0;
            for (const auto& tr : m.row(s, a)) sum += tr.prob;
            EXPECT_NEAR(sum, 1.0, 1e-12);
        }
}

TEST(FourRoom, RejectsFamilyWhereAGateNeverChanges) {
    auto specs = six_task_four_room_specs(20);
    specs.resize(1);
    EXPECT_THROW(make_four_room_family(specs), std::invalid_argument);
}

TEST(FourRoom, ValidationAndCoverage) {
    const auto fam = make_four_room_family(six_task_four_room_specs(20));
    const auto rep = validate_family(fam, {1.0, 0.0, 0.0, 4, 0});
    EXPECT_TRUE(rep.ok()) << (rep.violations.empty() ? "" : rep.violations.front());
    EXPECT_DOUBLE_EQ(rep.beta_min, 1.0);

    // alpha: for each exit, the best gap over tasks from severing it; then the minimum.
    double alpha = 1e9;
    for (const auto& e : fam.hierarchy.all_exits()) {
        double best = 0.0;
        for (const auto& m : fam.tasks) {
            const double v = value_iteration(m).values.v(0, m.start_state());
            const auto cut = sever(m, e);
            best = std::max(best, v - value_iteration(cut).values.v(0, cut.start_state()));
        }
        alpha = std::min(alpha, best);
    }
    const auto cov = check_coverage(fam, 2);
    EXPECT_NEAR(cov.alpha, alpha, 1e-9);
    EXPECT_GT(cov.zeta, 0.0);
}

TEST(Validation, FlagsUndeclaredVariation) {
    auto fam = make_four_room_family(six_task_four_room_specs(20));
    // Declare one extra pair as an exit; it never varies.
    const auto& h = fam.hierarchy;
    std::vector<std::vector<int>> entrances;
    std::vector<std::vector<StateAction>> exits;
    for (int c = 0; c < h.num_clusters(); ++c) {
        entrances.push_back(h.entrances(c));
        exits.push_back(h.exits(c));
    }
    exits[0].push_back({0, 0});
    fam.hierarchy = LatentHierarchy(h.cluster_map(), entrances, exits);
    const auto rep = validate_family(fam, {});
    ASSERT_FALSE(rep.ok());
    bool named = false;
    for (const auto& v : rep.violations) named |= v.find("(0,0)") != std::string::npos;
    EXPECT_TRUE(named);
}

TEST(Tree, Shape) {
    BinaryTreeSpec spec;
    spec.depth = 4;
    spec.leaf = 5;
    spec.a_star = 1;
    spec.e_star = 0;
    const auto full = make_binary_tree(spec, TreeVariant::full);
    EXPECT_EQ(full.mdp.num_states(), (1 << 4) + 4);
    const auto reduced = make_binary_tree(spec, TreeVariant::reduced);
    EXPECT_EQ(reduced.mdp.num_states(), (1 << 4) + 2);
    // The gate is first reachable after W+1 steps.
    EXPECT_EQ(bfs_cells(full.mdp, full.root, full.gate), 5);
    EXPECT_EQ(full.hierarchy.all_exits(), (std::vector<StateAction>{{full.gate, 0}, {full.gate, 1}}));
    EXPECT_EQ(full.mdp.row(full.gate, 0)[0].next, full.success);
    EXPECT_EQ(full.mdp.row(full.gate, 1)[0].next, full.failure);
}

TEST(Tree, OnlyTheMarkedLeafIsBiased) {
    BinaryTreeSpec spec;
    spec.depth = 5;
    spec.leaf = 9;
    spec.a_star = 0;
    spec.epsilon = 0.2;
    const auto env = make_binary_tree(spec, TreeVariant::reduced);
    for (std::uint32_t leaf = 0; leaf < 16; ++leaf)
        for (int a = 0; a < 2; ++a) {
            const int s = TreeEnv::node_index(4, leaf);
            const double p = env.mdp.prob(s, a, env.gate);
            EXPECT_DOUBLE_EQ(p, leaf == 9 && a == 0 ? 0.7 : 0.5);
        }
    EXPECT_THROW(make_binary_tree({5, 16, 0, 0, 0.1, 20}, TreeVariant::full), std::invalid_argument);
}

TEST(Counterexample, ChainShape) {
    const auto env = make_high_variance_chain(14);
    EXPECT_EQ(env.mdp.horizon(), 16);
    EXPECT_EQ(env.mdp.num_states(), 31);
    EXPECT_EQ(env.reward_cluster.size(), 1u);
}

TEST(Counterexample, TwoArmRoomIsValidMdp) {
    const auto env = make_two_arm_room(8);
    EXPECT_EQ(env.mdp.horizon(), 8);
    EXPECT_GT(value_iteration(env.mdp).values.v(0, env.mdp.start_state()), 0.0);
}
