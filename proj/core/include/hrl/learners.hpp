#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hrl/estimate.hpp"
#include "hrl/mdp.hpp"
#include "hrl/random.hpp"

namespace hrl {

enum class BonusKind { hoeffding, bernstein };

struct LearnerBudget {
    int episodes = 0;
    double bonus_scale = 0.02;  ///< c_b
    double failure_prob = 0.05; ///< p in the log term
};

/// Optimistic backward induction on counts pooled over steps.
/// Q_h is clipped to [0, min(range, H - h)]; unvisited pairs sit at the cap.
/// Ties go to the action with fewer visits, then the lowest index.
class OptimisticLearner {
public:
    OptimisticLearner(int num_states, int num_actions, int horizon, BonusKind kind, double bonus_scale,
                      double log_term, double value_range);

    void observe(int s, int a, double reward, int next);
    /// State with known zero value (absorbing, never explored).
    void set_absorbing(int s);
    /// available[s*A + a] != 0 marks legal actions; empty means all legal.
    void set_available(std::vector<char> available);

    void plan();
    double value(int h, int s) const { return v_[static_cast<std::size_t>(h) * S_ + s]; }
    int greedy_action(int h, int s) const { return pi_[static_cast<std::size_t>(h) * S_ + s]; }
    MarkovPolicy greedy_policy() const;
    std::int64_t count(int s, int a) const { return n_[static_cast<std::size_t>(s) * A_ + a]; }
    double bonus(int s, int a, double variance) const;

private:
    int S_, A_, H_;
    BonusKind kind_;
    double scale_, log_term_, range_;
    std::vector<std::int64_t> n_;
    std::vector<double> reward_sum_;
    std::vector<std::vector<std::pair<int, std::int64_t>>> next_;
    std::vector<char> absorbing_;
    std::vector<char> available_;
    std::vector<double> v_;
    std::vector<int> pi_;
};

/// Learner sized for the MDP, with zero-reward terminal states marked absorbing.
OptimisticLearner make_learner(const TabularMdp& mdp, BonusKind kind, const LearnerBudget& budget);

/// log(S * A * H * N / p) with every factor at least 1.
double confidence_log(int num_states, int num_actions, int horizon, int episodes, double failure_prob);

struct PolicySet {
    std::vector<MarkovPolicy> policies;     ///< one per episode
    std::vector<double> returns;            ///< realized episode returns
    std::vector<double> optimistic_values;  ///< root optimistic value before each episode
    std::int64_t timesteps = 0;
    Policy as_mixture() const { return Policy::mixture(policies); }
};

/// Hoeffding-bonus optimistic value iteration.
PolicySet run_ucbvi(const TabularMdp& mdp, const LearnerBudget& budget, Rng& rng, QueryCounter* counter = nullptr);

/// Bernstein-bonus variant; `reward_override` replaces the MDP rewards if non-empty.
PolicySet run_euler(const TabularMdp& mdp, std::span<const double> reward_override, const LearnerBudget& budget,
                    Rng& rng, QueryCounter* counter = nullptr);

PolicySet run_optimistic(const TabularMdp& mdp, BonusKind kind, const LearnerBudget& budget, Rng& rng,
                         QueryCounter* counter = nullptr);

enum class SampleMode {
    full,      ///< keep every step of every trajectory
    one_step,  ///< keep one uniformly chosen step per trajectory
};

struct SampleResult {
    EmpiricalModel model;
    std::vector<double> returns;
    double mean_return() const;
};

/// Draws `n` policies uniformly from `policies` and rolls each out once.
SampleResult sample_policy_returns(const TabularMdp& mdp, std::span<const MarkovPolicy> policies, int n,
                                   SampleMode mode, Rng& rng, QueryCounter* counter = nullptr);

/// Exact V* - V^pi_k at the start state for each policy.
std::vector<double> exact_regret(const TabularMdp& mdp, std::span<const MarkovPolicy> policies);

}  // namespace hrl
