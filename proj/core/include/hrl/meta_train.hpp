#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hrl/estimate.hpp"
#include "hrl/hierarchy.hpp"
#include "hrl/learners.hpp"
#include "hrl/mdp.hpp"

namespace hrl {

struct MetaTrainConfig {
    // Phase I
    int n_ucbvi = 300;
    int n_ts = 100;
    int thresh_ts = 3;
    // Phase II
    int n_euler_rf = 200;
    int n_rf = 3000;
    int thresh_rf = 1;
    std::vector<int> reference_tasks{0};
    // Phase III
    int n_ed = 30;
    int thresh_ed = 2;
    int n_euler_el = 200;
    int n_el = 40;
    int thresh_el = 3;
    // Brute force baseline
    int n_euler_bf = 200;
    int n_bf = 40;
    int thresh_bf = 3;

    double beta = 1.0;
    double zeta = 0.5;
    double bonus_scale = 0.02;
    double failure_prob = 0.05;

    /// Throws std::invalid_argument on non-positive budgets or thresholds above budgets.
    void validate(int num_tasks) const;
};

struct BudgetInputs {
    int S = 1, A = 1, H = 1, T = 1, K = 1, L = 1;
    double C = 1.0, alpha = 1.0, beta = 1.0, zeta = 1.0, epsilon = 1.0, epsilon0 = 1.0, rho = 1.0, p = 0.05;
};

/// Parameter table of the exit detection guarantee, scaled and rounded up.
MetaTrainConfig scaled_budgets(const BudgetInputs& in, double scale, MetaTrainConfig base = {});

struct PhaseCounters {
    std::int64_t phase1 = 0;
    std::int64_t phase2 = 0;
    std::int64_t phase3 = 0;
    std::int64_t learn_exit = 0;
    std::int64_t brute_force = 0;
    std::int64_t three_phase_total() const { return phase1 + phase2 + phase3 + learn_exit; }
    bool operator==(const PhaseCounters&) const = default;
};

/// Flags plus per-task rows of every flagged pair.
class ExitTable {
public:
    ExitTable() = default;
    ExitTable(int num_states, int num_actions, int num_tasks);

    int num_tasks() const { return T_; }
    bool flagged(StateAction sa) const { return flags_.count(sa) != 0; }
    std::vector<char> flag_mask() const;
    /// Flagged pairs in sorted order.
    std::vector<StateAction> pairs() const;
    std::size_t size() const { return flags_.size(); }
    void flag(StateAction sa);
    const SparseRow& row(int task, StateAction sa) const;
    void set_row(int task, StateAction sa, SparseRow row);
    bool operator==(const ExitTable&) const = default;

private:
    int S_ = 0, A_ = 0, T_ = 0;
    std::map<StateAction, std::vector<SparseRow>> flags_;
};

struct MetaTrainState {
    int num_states = 0, num_actions = 0, horizon = 0, num_tasks = 0, start = 0;
    int phase_completed = 0;
    std::vector<EmpiricalModel> task_models;
    std::vector<double> value_estimates;
    EmpiricalModel reference;
    std::vector<double> mu;  ///< exact sampling distribution of Phase II
    ExitTable exits;
    PhaseCounters counters;
    std::vector<std::string> diagnostics;

    /// Start state plus every state an exit row reaches in some task.
    std::vector<int> entrances() const;
    bool operator==(const MetaTrainState&) const = default;
};

class PhaseOrderError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct Phase1Result {
    EmpiricalModel model;
    double value_estimate = 0.0;
    std::int64_t timesteps = 0;
};

Phase1Result task_learning(const TabularMdp& task, const MetaTrainConfig& cfg, std::uint64_t seed, int task_index);

struct Phase2Result {
    EmpiricalModel reference;
    std::vector<double> mu;
    std::int64_t timesteps = 0;
};

/// Goal-reaching EULER runs with horizon 2H, pooled and sampled one step per trajectory.
Phase2Result reward_free(const TabularMdp& task, const MetaTrainConfig& cfg, std::uint64_t seed, int task_index);

struct BoatResult {
    ValueTable values;
    MarkovPolicy greedy;
    std::vector<int> index;  ///< H*S*A; 0 is the reference, t >= 1 is task t-1
    int index_at(int h, int s, int a, int S, int A) const {
        return index[(static_cast<std::size_t>(h) * S + s) * A + a];
    }
};

/// Optimistic backup: flagged pairs use `reference`, others take the best
/// known row among the reference and the task estimates. Unknown rows add 0.
BoatResult boat_vi(const DynamicsEstimate& reference, std::span<const DynamicsEstimate> tasks,
                   std::span<const double> rewards, int horizon, const std::vector<char>& flagged);

struct LearnExitResult {
    SparseRow row;
    std::int64_t samples = 0;
    std::int64_t timesteps = 0;
    std::string diagnostic;  ///< set when the exit was not reached often enough
};

LearnExitResult learn_exit(const TabularMdp& task, StateAction sa, const MetaTrainConfig& cfg, Rng& rng);

void run_phase1(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed, MetaTrainState& state);
void run_phase2(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed, MetaTrainState& state);
void run_phase3(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed, MetaTrainState& state);

/// All three phases.
MetaTrainState meta_train(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed);

struct BruteForceResult {
    std::vector<StateAction> exits;
    std::int64_t timesteps = 0;
};

/// Visits every state of every task and tests every action there.
BruteForceResult brute_force_hierarchy(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed);

void write_state(std::ostream& os, const MetaTrainState& state);
MetaTrainState read_state(std::istream& is);
void save_state(const std::string& path, const MetaTrainState& state);
MetaTrainState load_state(const std::string& path);

}  // namespace hrl
