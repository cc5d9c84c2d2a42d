#include "hrl/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hrl/planning.hpp"

namespace hrl {

OptimisticLearner::OptimisticLearner(int num_states, int num_actions, int horizon, BonusKind kind, double bonus_scale,
                                     double log_term, double value_range)
    : S_(num_states), A_(num_actions), H_(horizon), kind_(kind), scale_(bonus_scale), log_term_(log_term),
      range_(value_range), n_(static_cast<std::size_t>(num_states) * num_actions, 0),
      reward_sum_(static_cast<std::size_t>(num_states) * num_actions, 0.0),
      next_(static_cast<std::size_t>(num_states) * num_actions), absorbing_(static_cast<std::size_t>(num_states), 0),
      v_(static_cast<std::size_t>(horizon + 1) * num_states, 0.0), pi_(static_cast<std::size_t>(horizon) * num_states, 0) {
    if (S_ <= 0 || A_ <= 0 || H_ <= 0) throw std::invalid_argument("learner needs positive sizes");
    if (bonus_scale < 0.0 || value_range <= 0.0) throw std::invalid_argument("learner: bad bonus scale or range");
}

void OptimisticLearner::observe(int s, int a, double reward, int next) {
    const std::size_t i = static_cast<std::size_t>(s) * A_ + a;
    ++n_[i];
    reward_sum_[i] += reward;
    auto& c = next_[i];
    auto it = std::lower_bound(c.begin(), c.end(), next, [](const auto& p, int v) { return p.first < v; });
    if (it != c.end() && it->first == next)
        ++it->second;
    else
        c.insert(it, {next, 1});
}

void OptimisticLearner::set_absorbing(int s) { absorbing_.at(static_cast<std::size_t>(s)) = 1; }

void OptimisticLearner::set_available(std::vector<char> available) {
    if (!available.empty() && available.size() != n_.size()) throw std::invalid_argument("availability mask has wrong size");
    available_ = std::move(available);
}

double OptimisticLearner::bonus(int s, int a, double variance) const {
    const double n = static_cast<double>(std::max<std::int64_t>(1, count(s, a)));
    if (kind_ == BonusKind::hoeffding) return scale_ * range_ * std::sqrt(log_term_ / n);
    return scale_ * (std::sqrt(std::max(0.0, variance) * log_term_ / n) + range_ * log_term_ / n);
}

void OptimisticLearner::plan() {
    std::fill(v_.begin() + static_cast<std::ptrdiff_t>(H_) * S_, v_.end(), 0.0);
    for (int h = H_ - 1; h >= 0; --h) {
        const double cap = std::min(range_, static_cast<double>(H_ - h));
        const double* vn = &v_[static_cast<std::size_t>(h + 1) * S_];
        for (int s = 0; s < S_; ++s) {
            double best = -1.0;
            int best_a = 0;
            for (int a = 0; a < A_; ++a) {
                const std::size_t i = static_cast<std::size_t>(s) * A_ + a;
                if (!available_.empty() && !available_[i]) continue;
                double q = 0.0;
                if (!absorbing_[static_cast<std::size_t>(s)]) {
                    const auto n = n_[i];
                    double mean = 0.0, second = 0.0;
                    if (n == 0) {
                        q = cap;  // unvisited pairs are fully optimistic
                    } else {
                        const double inv = 1.0 / static_cast<double>(n);
                        for (const auto& [nx, k] : next_[i]) {
                            const double p = static_cast<double>(k) * inv;
                            mean += p * vn[nx];
                            second += p * vn[nx] * vn[nx];
                        }
                        q = reward_sum_[i] * inv + mean + bonus(s, a, second - mean * mean);
                        q = std::clamp(q, 0.0, cap);
                    }
                }
                // Saturated ties go to the less visited action.
                if (q > best + 1e-12 || (q > best - 1e-12 && n_[i] < n_[static_cast<std::size_t>(s) * A_ + best_a])) {
                    best = std::max(best, q);
                    best_a = a;
                }
            }
            v_[static_cast<std::size_t>(h) * S_ + s] = std::max(best, 0.0);
            pi_[static_cast<std::size_t>(h) * S_ + s] = best_a;
        }
    }
}

MarkovPolicy OptimisticLearner::greedy_policy() const {
    MarkovPolicy p(H_, S_);
    for (int h = 0; h < H_; ++h)
        for (int s = 0; s < S_; ++s) p.set(h, s, greedy_action(h, s));
    return p;
}

double confidence_log(int num_states, int num_actions, int horizon, int episodes, double failure_prob) {
    if (!(failure_prob > 0.0 && failure_prob < 1.0)) throw std::invalid_argument("failure probability must lie in (0,1)");
    const double x = static_cast<double>(std::max(1, num_states)) * std::max(1, num_actions) * std::max(1, horizon) *
                     std::max(1, episodes) / failure_prob;
    return std::log(x);
}

OptimisticLearner make_learner(const TabularMdp& mdp, BonusKind kind, const LearnerBudget& budget) {
    if (budget.episodes < 0) throw std::invalid_argument("negative episode budget");
    const int S = mdp.num_states(), A = mdp.num_actions(), H = mdp.horizon();
    OptimisticLearner learner(S, A, H, kind, budget.bonus_scale,
                              confidence_log(S, A, H, budget.episodes, budget.failure_prob), static_cast<double>(H));
    for (int s = 0; s < S; ++s)
        if (mdp.is_terminal(s)) {
            bool zero = true;
            for (int a = 0; a < A; ++a) zero &= mdp.reward(s, a) == 0.0;
            if (zero) learner.set_absorbing(s);
        }
    return learner;
}

PolicySet run_optimistic(const TabularMdp& mdp, BonusKind kind, const LearnerBudget& budget, Rng& rng,
                         QueryCounter* counter) {
    auto learner = make_learner(mdp, kind, budget);
    const int H = mdp.horizon();
    PolicySet out;
    out.policies.reserve(static_cast<std::size_t>(budget.episodes));
    for (int k = 0; k < budget.episodes; ++k) {
        learner.plan();
        out.optimistic_values.push_back(learner.value(0, mdp.start_state()));
        out.policies.push_back(learner.greedy_policy());
        Rng ep = rng.child(static_cast<std::uint64_t>(k));
        const auto traj = simulate_episode(mdp, out.policies.back(), ep, counter);
        for (const auto& st : traj.steps) learner.observe(st.state, st.action, st.reward, st.next_state);
        out.returns.push_back(traj.total_reward());
        out.timesteps += H;
    }
    return out;
}

PolicySet run_ucbvi(const TabularMdp& mdp, const LearnerBudget& budget, Rng& rng, QueryCounter* counter) {
    return run_optimistic(mdp, BonusKind::hoeffding, budget, rng, counter);
}

PolicySet run_euler(const TabularMdp& mdp, std::span<const double> reward_override, const LearnerBudget& budget,
                    Rng& rng, QueryCounter* counter) {
    if (reward_override.empty()) return run_optimistic(mdp, BonusKind::bernstein, budget, rng, counter);
    const auto m = mdp.with_rewards(std::vector<double>(reward_override.begin(), reward_override.end()));
    return run_optimistic(m, BonusKind::bernstein, budget, rng, counter);
}

double SampleResult::mean_return() const {
    if (returns.empty()) return 0.0;
    double s = 0.0;
    for (double r : returns) s += r;
    return s / static_cast<double>(returns.size());
}

SampleResult sample_policy_returns(const TabularMdp& mdp, std::span<const MarkovPolicy> policies, int n,
                                   SampleMode mode, Rng& rng, QueryCounter* counter) {
    if (policies.empty()) throw std::invalid_argument("sample_policy_returns: empty policy set");
    if (n < 0) throw std::invalid_argument("sample_policy_returns: negative sample count");
    SampleResult out{EmpiricalModel(mdp.num_states(), mdp.num_actions()), {}};
    out.returns.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Rng ep = rng.child(static_cast<std::uint64_t>(i));
        const auto& pi = policies[static_cast<std::size_t>(ep.uniform_int(static_cast<int>(policies.size())))];
        const auto traj = simulate_episode(mdp, pi, ep, counter);
        out.returns.push_back(traj.total_reward());
        if (mode == SampleMode::full) {
            out.model.add(traj);
        } else {
            const auto& st = traj.steps[static_cast<std::size_t>(ep.uniform_int(static_cast<int>(traj.steps.size())))];
            out.model.add(st.state, st.action, st.next_state);
        }
    }
    return out;
}

std::vector<double> exact_regret(const TabularMdp& mdp, std::span<const MarkovPolicy> policies) {
    const double vstar = value_iteration(mdp).values.v(0, mdp.start_state());
    std::vector<double> out;
    out.reserve(policies.size());
    for (const auto& p : policies) out.push_back(vstar - policy_value(mdp, Policy(p)).v(0, mdp.start_state()));
    return out;
}

}  // namespace hrl
