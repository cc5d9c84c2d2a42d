#pragma once

#include <functional>

#include "hrl/mdp.hpp"

namespace hrl {

struct PlanResult {
    ValueTable values;
    MarkovPolicy policy;  ///< greedy, ties broken toward the lowest action
};

/// Backward induction over the MDP horizon.
PlanResult value_iteration(const TabularMdp& mdp);

/// Exact value of a policy; a mixture is the average of member values.
ValueTable policy_value(const TabularMdp& mdp, const Policy& policy);

/// Forward state-action occupancy; each step sums to one.
OccupancyMeasure occupancy(const TabularMdp& mdp, const Policy& policy);

/// Exact probability that a trajectory under the policy contains a step
/// (h, s, a) for which `hit` is true.
double hit_probability(const TabularMdp& mdp, const Policy& policy,
                       const std::function<bool(int h, int s, int a)>& hit);

/// P((s,a) in tau) under the policy.
double visit_probability(const TabularMdp& mdp, const Policy& policy, StateAction sa);

struct ImportanceResult {
    double value = 0.0;          ///< V* of the MDP at its start state
    double value_removed = 0.0;  ///< V* when (s,a) leads to a zero reward sink
    double gap() const { return value - value_removed; }
};

/// Compares V* with and without the pair; the pair is alpha-important iff gap() > alpha.
ImportanceResult importance_value(const TabularMdp& mdp, StateAction sa);

/// Copy of `mdp` with one extra absorbing zero-reward state appended.
TabularMdp with_sink(const TabularMdp& mdp);

/// Keeps state indices; transitions into states with keep[s]==0 go to an
/// appended zero-reward sink (index S).
TabularMdp restrict_to(const TabularMdp& mdp, const std::vector<char>& keep);

/// max over policies of P(target visited) from the start state, using
/// `horizon` steps (0 means the MDP horizon).
double significance(const TabularMdp& mdp, int target, int horizon = 0);

}  // namespace hrl
