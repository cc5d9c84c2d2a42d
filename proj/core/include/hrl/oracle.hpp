#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <vector>

#include "hrl/estimate.hpp"
#include "hrl/hierarchy.hpp"
#include "hrl/mdp.hpp"

namespace hrl {

struct MetaTrainState;

enum class ExitTarget : std::uint8_t { failure = 0, success = 1 };

/// One planning request. `exit_map` is aligned with HierarchyOracle::exits();
/// `rewards` covers the oracle model, (S + 2) * A entries.
struct OracleQuery {
    int start = 0;
    std::vector<ExitTarget> exit_map;
    std::vector<double> rewards;
    int horizon = 0;
};

struct OracleResult {
    ValueTable values;
    MarkovPolicy policy;  ///< over the S + 2 model states
    double value_at(int start) const { return values.v(0, start); }
};

/// Plans inside a cluster-sealed copy of the reference dynamics. Flagged exits
/// jump to one of two absorbing states, unknown rows fall into the failure state.
class HierarchyOracle {
public:
    HierarchyOracle(DynamicsEstimate reference, std::vector<StateAction> exits, std::vector<int> entrances,
                    int horizon, double epsilon0 = 0.0);

    /// `horizon` 0 keeps the meta-train horizon.
    static HierarchyOracle from_state(const MetaTrainState& state, double epsilon0, int horizon = 0);
    /// Oracle over exact dynamics and the ground-truth exits and entrances.
    static HierarchyOracle exact(const TabularMdp& mdp, const LatentHierarchy& hierarchy, double epsilon0 = 0.0);

    int num_states() const { return S_; }
    int num_actions() const { return A_; }
    int model_states() const { return S_ + 2; }
    int success_state() const { return S_; }
    int failure_state() const { return S_ + 1; }
    int horizon() const { return H_; }
    double epsilon0() const { return epsilon0_; }
    void set_epsilon0(double e);
    const std::vector<StateAction>& exits() const { return exits_; }
    const std::vector<int>& entrances() const { return entrances_; }
    bool is_exit(StateAction sa) const;
    bool is_entrance(int s) const;
    int exit_index(StateAction sa) const;  ///< -1 if not flagged

    /// Sealed model for an exit map (rewards zero, horizon H).
    TabularMdp sealed_model(const std::vector<ExitTarget>& exit_map, int horizon, int start) const;

    /// Exact value iteration on the sealed model. Results are memoized.
    std::shared_ptr<const OracleResult> solve(const OracleQuery& query) const;

    /// Reward 1 while sitting in the success state; only g leads there.
    std::shared_ptr<const OracleResult> goal_reaching(int z, StateAction g, int h) const;
    /// All exits fail; `base_rewards` has S * A entries.
    std::shared_ptr<const OracleResult> within_cluster(int z, const std::vector<double>& base_rewards, int h) const;

    /// Probability-like value of performing `e` within H steps from `s`.
    double exit_reach_value(int s, StateAction e) const;
    /// Exits whose reach value is at least 2/3 of epsilon0.
    std::vector<StateAction> available_exits(int s) const;

    std::vector<ExitTarget> all_fail() const { return std::vector<ExitTarget>(exits_.size(), ExitTarget::failure); }
    /// Only g succeeds. Throws if g is not flagged.
    std::vector<ExitTarget> only_success(StateAction g) const;
    std::vector<double> success_reward() const;

    std::size_t cache_size() const;

private:
    int S_ = 0, A_ = 0, H_ = 0;
    DynamicsEstimate reference_;
    std::vector<StateAction> exits_;
    std::vector<int> entrances_;
    double epsilon0_ = 0.0;

    using Key = std::tuple<std::vector<ExitTarget>, std::uint64_t, int>;
    mutable std::mutex mu_;
    mutable std::map<Key, std::shared_ptr<const OracleResult>> cache_;
    mutable std::map<int, std::vector<StateAction>> available_cache_;
};

/// Minimum positive reach value over (entrance, exit of the same cluster).
double reachability_floor(const HierarchyOracle& oracle, const LatentHierarchy& hierarchy);

struct ReachingTimeStats {
    int t_min = 0;        ///< fewest steps until the exit is performed, clamped at the horizon
    double t_star = 0.0;  ///< optimal expected clamped time
    std::vector<double> samples;
};

/// Times inside the cluster of `s`. Leaving the cluster other than through g
/// never arrives.
ReachingTimeStats reaching_times(const TabularMdp& mdp, const LatentHierarchy& hierarchy, int s, StateAction g,
                                 int horizon);

struct ReachingCertificate {
    double gamma = 0.0;  ///< max T*/T_min - 1 over reachable pairs
    int width = 0;       ///< max T_min over reachable pairs
    int pairs = 0;
    int unreachable = 0;
};

/// Over all (entrance, exit) pairs of each cluster.
ReachingCertificate certify_reaching(const TabularMdp& mdp, const LatentHierarchy& hierarchy, int horizon);

}  // namespace hrl
