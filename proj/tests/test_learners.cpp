#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "hrl/estimate.hpp"
#include "hrl/learners.hpp"
#include "hrl/planning.hpp"
#include "support.hpp"

using namespace hrl;

namespace {

/// Corridor of n states; action 1 moves right, action 0 resets. Reward at the end.
TabularMdp corridor(int n, int H) {
    std::vector<SparseRow> rows;
    std::vector<double> rewards;
    for (int s = 0; s < n; ++s) {
        rows.push_back({{0, 1.0}});
        rows.push_back({{std::min(s + 1, n - 1), 1.0}});
        rewards.push_back(0.0);
        rewards.push_back(s == n - 1 ? 1.0 : 0.0);
    }
    return TabularMdp(n, 2, H, 0, rows, rewards);
}

double mean(const std::vector<double>& v, std::size_t from, std::size_t to) {
    return std::accumulate(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(to), 0.0) /
           static_cast<double>(to - from);
}

}  // namespace

TEST(Empirical, CountsAndThreshold) {
    EmpiricalModel m(3, 2, 2);
    m.add(0, 1, 2);
    EXPECT_FALSE(m.known(0, 1));
    EXPECT_TRUE(m.estimate(0, 1).empty());
    m.add(0, 1, 1, 3);
    EXPECT_TRUE(m.known(0, 1));
    const auto row = m.estimate(0, 1);
    ASSERT_EQ(row.size(), 2u);
    EXPECT_DOUBLE_EQ(row[0].prob, 0.75);
    EXPECT_DOUBLE_EQ(row[1].prob, 0.25);
}

TEST(Empirical, MergeMaxCountKeepsTheRicherRow) {
    EmpiricalModel a(2, 1), b(2, 1);
    a.add(0, 0, 0, 5);
    b.add(0, 0, 1, 2);
    b.add(1, 0, 1, 4);
    const std::vector<EmpiricalModel> both{a, b};
    const auto m = merge_max_count(both);
    EXPECT_EQ(m.count(0, 0), 5);
    EXPECT_EQ(m.count(1, 0), 4);
    EXPECT_EQ(m.estimate(0, 0)[0].next, 0);
}

TEST(Empirical, TotalVariation) {
    const SparseRow p{{0, 0.5}, {1, 0.5}}, q{{1, 0.25}, {2, 0.75}};
    EXPECT_DOUBLE_EQ(tv_distance(p, q), 0.75);
    EXPECT_THROW(tv_distance(p, SparseRow{}), std::invalid_argument);
}

TEST(Empirical, TvConcentrates) {
    // Four-outcome row; most trials fall inside the high-probability radius.
    const SparseRow truth{{0, 0.1}, {1, 0.2}, {2, 0.3}, {3, 0.4}};
    Rng rng(1);
    const int S = 4, n = 500, trials = 200;
    const double radius = std::sqrt(S * std::log(S * 2.0 * 10.0 * n / 0.01) / n);
    int inside = 0;
    for (int t = 0; t < trials; ++t) {
        EmpiricalModel m(S, 1);
        const std::vector<double> p{0.1, 0.2, 0.3, 0.4};
        for (int k = 0; k < n; ++k) m.add(0, 0, rng.categorical(p));
        inside += tv_distance(m.estimate(0, 0), truth) <= radius;
    }
    EXPECT_GE(inside, trials * 99 / 100);
}

TEST(Rng, StreamsAreReproducibleAndDistinct) {
    Rng a = make_stream(5, 1, Phase::reward_free, 3), b = make_stream(5, 1, Phase::reward_free, 3);
    Rng c = make_stream(5, 2, Phase::reward_free, 3);
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
    Rng r(9);
    for (int i = 0; i < 1000; ++i) {
        const double u = r.uniform();
        EXPECT_GE(u, 0.0);
        EXPECT_LT(u, 1.0);
        const int k = r.uniform_int(7);
        EXPECT_GE(k, 0);
        EXPECT_LT(k, 7);
    }
}

TEST(Learner, ConfidenceLogFloorsFactors) {
    EXPECT_NEAR(confidence_log(0, 0, 0, 0, 0.5), std::log(2.0), 1e-12);
    EXPECT_THROW(confidence_log(2, 2, 2, 2, 1.0), std::invalid_argument);
    EXPECT_NEAR(confidence_log(2, 3, 4, 5, 0.5), std::log(2.0 * 3 * 4 * 5 / 0.5), 1e-12);
}

TEST(Learner, UnvisitedPairsAreOptimistic) {
    OptimisticLearner l(2, 2, 3, BonusKind::hoeffding, 0.02, 1.0, 1.0);
    l.plan();
    EXPECT_DOUBLE_EQ(l.value(0, 0), 1.0);  // capped at the range
    l.observe(0, 0, 0.0, 0);
    l.plan();
    // The unvisited action wins the tie.
    EXPECT_EQ(l.greedy_action(0, 0), 1);
}

TEST(Learner, AvailabilityMaskIsRespected) {
    OptimisticLearner l(2, 3, 2, BonusKind::bernstein, 0.02, 1.0, 1.0);
    l.set_available({0, 0, 1, 1, 0, 0});
    l.plan();
    for (int h = 0; h < 2; ++h) {
        EXPECT_EQ(l.greedy_action(h, 0), 2);
        EXPECT_EQ(l.greedy_action(h, 1), 0);
    }
}

TEST(Learner, AbsorbingStateHasZeroValue) {
    OptimisticLearner l(2, 1, 3, BonusKind::hoeffding, 0.02, 1.0, 3.0);
    l.set_absorbing(1);
    l.plan();
    EXPECT_DOUBLE_EQ(l.value(0, 1), 0.0);
    EXPECT_GT(l.value(0, 0), 0.0);
}

TEST(Learner, UcbviLearnsCorridor) {
    const auto m = corridor(5, 8);
    Rng rng(2);
    QueryCounter counter;
    const auto set = run_ucbvi(m, {300, 0.02, 0.05}, rng, &counter);
    EXPECT_EQ(counter.count(), 300 * 8);
    EXPECT_EQ(set.timesteps, 300 * 8);
    const auto regret = exact_regret(m, set.policies);
    EXPECT_LT(mean(regret, 250, 300), mean(regret, 0, 50));
    EXPECT_NEAR(mean(regret, 250, 300), 0.0, 1e-9);
}

TEST(Learner, EulerWithRewardOverride) {
    const auto m = corridor(4, 6);
    std::vector<double> r(8, 0.0);
    r[0] = 1.0;  // now resetting at the start pays
    Rng rng(4);
    const auto set = run_euler(m, r, {200, 0.02, 0.05}, rng);
    const auto m2 = m.with_rewards(r);
    EXPECT_NEAR(exact_regret(m2, set.policies).back(), 0.0, 1e-9);
}

TEST(Learner, RunsAreDeterministic) {
    const auto m = corridor(4, 6);
    Rng a(8), b(8);
    const auto x = run_ucbvi(m, {50, 0.02, 0.05}, a);
    const auto y = run_ucbvi(m, {50, 0.02, 0.05}, b);
    EXPECT_EQ(x.returns, y.returns);
    EXPECT_EQ(x.policies, y.policies);
}

TEST(Sampling, OneStepModeKeepsOneTransitionPerEpisode) {
    Rng rng(6);
    const auto m = hrl::testing::random_mdp(rng, 3, 2, 4);
    const std::vector<MarkovPolicy> pols{MarkovPolicy(4, 3, 0), MarkovPolicy(4, 3, 1)};
    const auto res = sample_policy_returns(m, pols, 100, SampleMode::one_step, rng);
    std::int64_t total = 0;
    for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 2; ++a) total += res.model.count(s, a);
    EXPECT_EQ(total, 100);
    const auto full = sample_policy_returns(m, pols, 100, SampleMode::full, rng);
    total = 0;
    for (int s = 0; s < 3; ++s)
        for (int a = 0; a < 2; ++a) total += full.model.count(s, a);
    EXPECT_EQ(total, 400);
}

TEST(Sampling, MeanReturnApproachesPolicyValue) {
    Rng rng(12);
    const auto m = hrl::testing::random_mdp(rng, 4, 2, 4);
    const auto pi = value_iteration(m).policy;
    const std::vector<MarkovPolicy> pols{pi};
    const auto res = sample_policy_returns(m, pols, 20000, SampleMode::one_step, rng);
    EXPECT_NEAR(res.mean_return(), hrl::testing::path_sum_value(m, pi, m.start_state()), 0.05);
}
