#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace hrl {

struct StateAction {
    int state = 0;
    int action = 0;
    auto operator<=>(const StateAction&) const = default;
};

struct Transition {
    int next = 0;
    double prob = 0.0;
    bool operator==(const Transition&) const = default;
};

/// Sparse distribution over next states, sorted by `next`. Empty means unknown.
using SparseRow = std::vector<Transition>;

inline constexpr double kRowTolerance = 1e-9;

/// Validates and normalizes a row in place. Throws std::invalid_argument.
void normalize_row(SparseRow& row, int num_states);

class TabularMdp {
public:
    TabularMdp() = default;

    /// rows[s*A+a] and rewards[s*A+a]. Terminal states must self-loop.
    TabularMdp(int num_states, int num_actions, int horizon, int start,
               std::vector<SparseRow> rows, std::vector<double> rewards,
               std::vector<char> terminal = {});

    static TabularMdp from_dense(int num_states, int num_actions, int horizon, int start,
                                 const std::vector<double>& p, std::vector<double> rewards,
                                 std::vector<char> terminal = {});

    int num_states() const { return S_; }
    int num_actions() const { return A_; }
    int horizon() const { return H_; }
    int start_state() const { return start_; }

    double reward(int s, int a) const { return rewards_[idx(s, a)]; }
    std::span<const double> rewards() const { return rewards_; }
    bool is_terminal(int s) const { return !terminal_.empty() && terminal_[s] != 0; }
    const std::vector<char>& terminal_mask() const { return terminal_; }

    std::span<const Transition> row(int s, int a) const { return (*rows_)[idx(s, a)]; }
    /// Row used at step h; differs from row(s,a) only for time-varying models.
    std::span<const Transition> row(int s, int a, int h) const {
        if (step_rows_) return (*step_rows_)[static_cast<std::size_t>(h)][idx(s, a)];
        return (*rows_)[idx(s, a)];
    }
    double prob(int s, int a, int next) const;
    bool time_varying() const { return step_rows_ != nullptr; }

    TabularMdp with_horizon(int horizon) const;
    TabularMdp with_start(int start) const;
    TabularMdp with_rewards(std::vector<double> rewards) const;
    TabularMdp with_row(int s, int a, SparseRow row) const;
    /// Per-step rows; step_rows[h][s*A+a]. Size must equal the horizon.
    TabularMdp with_step_rows(std::vector<std::vector<SparseRow>> step_rows) const;

    bool operator==(const TabularMdp& o) const;

private:
    std::size_t idx(int s, int a) const { return static_cast<std::size_t>(s) * A_ + a; }
    void check_state(int s, const char* what) const;

    int S_ = 0, A_ = 0, H_ = 0, start_ = 0;
    std::shared_ptr<const std::vector<SparseRow>> rows_;
    std::shared_ptr<const std::vector<std::vector<SparseRow>>> step_rows_;
    std::vector<double> rewards_;
    std::vector<char> terminal_;
};

/// Marks an entry that draws an action uniformly at random.
inline constexpr int kUniformAction = -1;

/// Deterministic nonstationary table pi_h(s); entries may be kUniformAction.
class MarkovPolicy {
public:
    MarkovPolicy() = default;
    MarkovPolicy(int horizon, int num_states, int fill = 0)
        : H_(horizon), S_(num_states), table_(static_cast<std::size_t>(horizon) * num_states, fill) {}

    int horizon() const { return H_; }
    int num_states() const { return S_; }
    int action(int h, int s) const { return table_[static_cast<std::size_t>(h) * S_ + s]; }
    void set(int h, int s, int a) { table_[static_cast<std::size_t>(h) * S_ + s] = a; }
    /// Drops states with index >= num_states.
    MarkovPolicy restricted(int num_states) const;
    bool operator==(const MarkovPolicy&) const = default;

private:
    int H_ = 0, S_ = 0;
    std::vector<int> table_;
};

/// Either one Markov policy or a uniform mixture drawn once per episode.
class Policy {
public:
    Policy() = default;
    Policy(MarkovPolicy p) : members_{std::move(p)} {}
    static Policy mixture(std::vector<MarkovPolicy> members);

    bool is_mixture() const { return members_.size() > 1; }
    std::span<const MarkovPolicy> members() const { return members_; }
    int horizon() const { return members_.empty() ? 0 : members_.front().horizon(); }

private:
    std::vector<MarkovPolicy> members_;
};

struct Step {
    int h = 0;
    int state = 0;
    int action = 0;
    double reward = 0.0;
    int next_state = 0;
};

struct Trajectory {
    std::vector<Step> steps;
    double total_reward() const;
    bool contains(StateAction sa) const;
};

/// V has (H+1)*S entries, Q has H*S*A entries.
class ValueTable {
public:
    ValueTable() = default;
    ValueTable(int horizon, int num_states, int num_actions)
        : H_(horizon), S_(num_states), A_(num_actions),
          v_(static_cast<std::size_t>(horizon + 1) * num_states, 0.0),
          q_(static_cast<std::size_t>(horizon) * num_states * num_actions, 0.0) {}

    int horizon() const { return H_; }
    int num_states() const { return S_; }
    int num_actions() const { return A_; }
    double& v(int h, int s) { return v_[static_cast<std::size_t>(h) * S_ + s]; }
    double v(int h, int s) const { return v_[static_cast<std::size_t>(h) * S_ + s]; }
    double& q(int h, int s, int a) { return q_[(static_cast<std::size_t>(h) * S_ + s) * A_ + a]; }
    double q(int h, int s, int a) const { return q_[(static_cast<std::size_t>(h) * S_ + s) * A_ + a]; }

private:
    int H_ = 0, S_ = 0, A_ = 0;
    std::vector<double> v_, q_;
};

class OccupancyMeasure {
public:
    OccupancyMeasure() = default;
    OccupancyMeasure(int horizon, int num_states, int num_actions)
        : H_(horizon), S_(num_states), A_(num_actions),
          d_(static_cast<std::size_t>(horizon) * num_states * num_actions, 0.0) {}

    int horizon() const { return H_; }
    double& at(int h, int s, int a) { return d_[(static_cast<std::size_t>(h) * S_ + s) * A_ + a]; }
    double at(int h, int s, int a) const { return d_[(static_cast<std::size_t>(h) * S_ + s) * A_ + a]; }
    double state(int h, int s) const;
    double step_mass(int h) const;

private:
    int H_ = 0, S_ = 0, A_ = 0;
    std::vector<double> d_;
};

}  // namespace hrl
