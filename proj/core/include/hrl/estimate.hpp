#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "hrl/mdp.hpp"
#include "hrl/random.hpp"

namespace hrl {

/// Materialized transition estimate; an empty row means unknown.
class DynamicsEstimate {
public:
    DynamicsEstimate() = default;
    DynamicsEstimate(int num_states, int num_actions)
        : S_(num_states), A_(num_actions), rows_(static_cast<std::size_t>(num_states) * num_actions) {}
    static DynamicsEstimate from_mdp(const TabularMdp& mdp);

    int num_states() const { return S_; }
    int num_actions() const { return A_; }
    const SparseRow& row(int s, int a) const { return rows_[static_cast<std::size_t>(s) * A_ + a]; }
    bool known(int s, int a) const { return !row(s, a).empty(); }
    void set_row(int s, int a, SparseRow row);
    bool operator==(const DynamicsEstimate&) const = default;

private:
    int S_ = 0, A_ = 0;
    std::vector<SparseRow> rows_;
};

/// Transition counts; rows below the threshold estimate as all-zero.
class EmpiricalModel {
public:
    EmpiricalModel() = default;
    EmpiricalModel(int num_states, int num_actions, int threshold = 1);

    int num_states() const { return S_; }
    int num_actions() const { return A_; }
    int threshold() const { return threshold_; }
    void set_threshold(int n);

    void add(int s, int a, int next, std::int64_t n = 1);
    void add(const Trajectory& traj);
    void merge(const EmpiricalModel& other);

    std::int64_t count(int s, int a) const { return totals_[static_cast<std::size_t>(s) * A_ + a]; }
    /// Sorted (next, count) pairs.
    const std::vector<std::pair<int, std::int64_t>>& counts(int s, int a) const {
        return counts_[static_cast<std::size_t>(s) * A_ + a];
    }
    bool known(int s, int a) const { return count(s, a) > 0 && count(s, a) >= threshold_; }
    SparseRow estimate(int s, int a) const;
    DynamicsEstimate estimate() const;
    bool operator==(const EmpiricalModel&) const = default;

private:
    int S_ = 0, A_ = 0, threshold_ = 1;
    std::vector<std::vector<std::pair<int, std::int64_t>>> counts_;
    std::vector<std::int64_t> totals_;
};

/// Row-wise pick of the model with the largest count.
EmpiricalModel merge_max_count(std::span<const EmpiricalModel> models);

/// 0.5 * sum |p - q|. Throws on unknown (empty) rows.
double tv_distance(std::span<const Transition> p, std::span<const Transition> q);

/// Rolls out one episode; draws one mixture member up front.
Trajectory simulate_episode(const TabularMdp& mdp, const Policy& policy, Rng& rng,
                            QueryCounter* counter = nullptr);
Trajectory simulate_episode(const TabularMdp& mdp, const MarkovPolicy& policy, Rng& rng,
                            QueryCounter* counter = nullptr);

/// Samples the next state of (s,a) at step h.
int sample_next(const TabularMdp& mdp, int s, int a, int h, Rng& rng);

/// Estimates dynamics from i.i.d. trajectories of a policy.
EmpiricalModel estimate_dynamics(const TabularMdp& mdp, const Policy& policy, int episodes, int threshold,
                                 Rng& rng, QueryCounter* counter = nullptr);

}  // namespace hrl
