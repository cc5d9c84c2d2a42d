#include <gtest/gtest.h>

#include <sstream>

#include "hrl/envs.hpp"
#include "hrl/meta_train.hpp"
#include "hrl/planning.hpp"
#include "support.hpp"

using namespace hrl;

namespace {

const TaskFamily& six_task() {
    static const TaskFamily fam = make_four_room_family(six_task_four_room_specs(20));
    return fam;
}

const MetaTrainState& trained() {
    static const MetaTrainState st = meta_train(six_task(), MetaTrainConfig{}, 0);
    return st;
}

}  // namespace

TEST(Boat, MatchesIndexFunctionEnumeration) {
    Rng rng(17);
    int checked = 0;
    while (checked < 30) {
        const auto in = hrl::testing::random_boat_instance(rng, 2 + rng.uniform_int(2), 1 + rng.uniform_int(2),
                                                           1 + rng.uniform_int(2), 1 + rng.uniform_int(2));
        if (hrl::testing::boat_index_count(in) > 5000) continue;
        const auto best = hrl::testing::enumerate_index_functions(in);
        const auto res = boat_vi(in.reference, in.tasks, in.rewards, in.horizon, in.flagged);
        for (int s = 0; s < in.reference.num_states(); ++s)
            EXPECT_NEAR(res.values.v(0, s), best[static_cast<std::size_t>(s)], 1e-9);
        ++checked;
    }
}

TEST(Boat, FlaggedPairsOnlyUseTheReference) {
    DynamicsEstimate ref(2, 1), task(2, 1);
    ref.set_row(0, 0, {{0, 1.0}});
    task.set_row(0, 0, {{1, 1.0}});
    ref.set_row(1, 0, {{1, 1.0}});
    const std::vector<DynamicsEstimate> tasks{task};
    const std::vector<double> r{0.0, 1.0};
    const auto open = boat_vi(ref, tasks, r, 3, {0, 0});
    EXPECT_DOUBLE_EQ(open.values.v(0, 0), 2.0);
    EXPECT_EQ(open.index_at(0, 0, 0, 2, 1), 1);
    const auto sealed = boat_vi(ref, tasks, r, 3, {1, 0});
    EXPECT_DOUBLE_EQ(sealed.values.v(0, 0), 0.0);
}

TEST(ExitTableTest, FlagsAndRows) {
    ExitTable t(4, 2, 3);
    EXPECT_EQ(t.size(), 0u);
    t.flag({1, 1});
    t.flag({0, 1});
    t.flag({1, 1});
    EXPECT_EQ(t.pairs(), (std::vector<StateAction>{{0, 1}, {1, 1}}));
    EXPECT_TRUE(t.row(2, {1, 1}).empty());
    t.set_row(2, {1, 1}, {{3, 1.0}});
    EXPECT_EQ(t.row(2, {1, 1}).front().next, 3);
    const auto mask = t.flag_mask();
    EXPECT_EQ(mask[0 * 2 + 1], 1);
    EXPECT_EQ(mask[0], 0);
}

TEST(Config, ValidateRejectsBadBudgets) {
    MetaTrainConfig c;
    EXPECT_NO_THROW(c.validate(6));
    c.thresh_ts = c.n_ts + 1;
    EXPECT_THROW(c.validate(6), std::invalid_argument);
    c = {};
    c.n_rf = 0;
    EXPECT_THROW(c.validate(6), std::invalid_argument);
    c = {};
    c.reference_tasks = {7};
    EXPECT_THROW(c.validate(6), std::invalid_argument);
}

TEST(Config, ScaledBudgetsGrowAsEpsilonShrinks) {
    BudgetInputs in;
    in.S = 48;
    in.A = 4;
    in.H = 20;
    in.T = 6;
    in.K = 4;
    in.L = 9;
    in.alpha = 7;
    in.epsilon = 1.0;
    const auto loose = scaled_budgets(in, 1e-3);
    in.epsilon = 0.25;
    const auto tight = scaled_budgets(in, 1e-3);
    EXPECT_GE(tight.n_ucbvi, loose.n_ucbvi);
    EXPECT_GE(tight.n_rf, loose.n_rf);
    EXPECT_NO_THROW(tight.validate(6));
}

TEST(Phases, OrderIsEnforced) {
    MetaTrainState st;
    EXPECT_THROW(run_phase2(six_task(), MetaTrainConfig{}, 0, st), PhaseOrderError);
    EXPECT_THROW(run_phase3(six_task(), MetaTrainConfig{}, 0, st), PhaseOrderError);
}

TEST(Phases, TaskLearningValueIsAPolicyAverage) {
    const auto& fam = six_task();
    const auto r = task_learning(fam.task(0), MetaTrainConfig{}, 0, 0);
    const double vstar = value_iteration(fam.task(0)).values.v(0, fam.task(0).start_state());
    // Averages every UCBVI policy, early ones included, on deterministic dynamics.
    EXPECT_GT(r.value_estimate, 0.0);
    EXPECT_LE(r.value_estimate, vstar + 1e-9);
    EXPECT_GT(r.timesteps, 0);
}

TEST(Phases, RecoverGroundTruthExits) {
    const auto& st = trained();
    EXPECT_EQ(st.phase_completed, 3);
    EXPECT_EQ(st.exits.pairs(), six_task().hierarchy.all_exits());
    EXPECT_GT(st.counters.phase1, 0);
    EXPECT_GT(st.counters.phase2, 0);
}

TEST(Phases, LearnedExitRowsMatchTheTasks) {
    const auto& st = trained();
    const auto& fam = six_task();
    for (const auto& e : st.exits.pairs())
        for (int t = 0; t < fam.num_tasks(); ++t) {
            const auto& row = st.exits.row(t, e);
            if (row.empty()) continue;  // never reached in that task
            const auto truth = fam.task(t).row(e.state, e.action);
            EXPECT_EQ(SparseRow(truth.begin(), truth.end()), row) << "task " << t;
        }
}

TEST(Phases, SplitRunEqualsFullRun) {
    MetaTrainState st;
    run_phase1(six_task(), MetaTrainConfig{}, 0, st);
    std::stringstream ss;
    write_state(ss, st);
    auto resumed = read_state(ss);
    run_phase2(six_task(), MetaTrainConfig{}, 0, resumed);
    run_phase3(six_task(), MetaTrainConfig{}, 0, resumed);
    EXPECT_EQ(resumed, trained());
}

TEST(Phases, StateRoundTrip) {
    std::stringstream ss;
    write_state(ss, trained());
    EXPECT_EQ(read_state(ss), trained());
}

TEST(BruteForce, RecoversExitsWithMoreSamples) {
    const auto bf = brute_force_hierarchy(six_task(), MetaTrainConfig{}, 0);
    EXPECT_EQ(bf.exits, six_task().hierarchy.all_exits());
    EXPECT_GT(bf.timesteps, trained().counters.three_phase_total());
}

TEST(LearnExit, ReachableExitRowIsExact) {
    const auto& fam = six_task();
    Rng rng(3);
    const auto r = learn_exit(fam.task(0), {11, 1}, MetaTrainConfig{}, rng);
    ASSERT_FALSE(r.row.empty()) << r.diagnostic;
    EXPECT_EQ(r.row.front().next, 12);
    EXPECT_GE(r.samples, MetaTrainConfig{}.thresh_el);
}
