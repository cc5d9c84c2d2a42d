#include "hrl/mdp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hrl {

void normalize_row(SparseRow& row, int num_states) {
    std::sort(row.begin(), row.end(), [](const Transition& x, const Transition& y) { return x.next < y.next; });
    SparseRow merged;
    merged.reserve(row.size());
    for (const auto& t : row) {
        if (t.next < 0 || t.next >= num_states)
            throw std::invalid_argument("transition to out of range state " + std::to_string(t.next));
        if (!(t.prob >= 0.0) || !std::isfinite(t.prob))
            throw std::invalid_argument("negative or non-finite transition probability");
        if (t.prob == 0.0) continue;
        if (!merged.empty() && merged.back().next == t.next)
            merged.back().prob += t.prob;
        else
            merged.push_back(t);
    }
    double sum = 0.0;
    for (const auto& t : merged) sum += t.prob;
    if (std::abs(sum - 1.0) > kRowTolerance)
        throw std::invalid_argument("transition row sums to " + std::to_string(sum));
    // Leave floating point noise alone so text round trips are bit exact.
    if (std::abs(sum - 1.0) > 1e-12)
        for (auto& t : merged) t.prob /= sum;
    row = std::move(merged);
}

TabularMdp::TabularMdp(int num_states, int num_actions, int horizon, int start,
                       std::vector<SparseRow> rows, std::vector<double> rewards,
                       std::vector<char> terminal)
    : S_(num_states), A_(num_actions), H_(horizon), start_(start), rewards_(std::move(rewards)),
      terminal_(std::move(terminal)) {
    if (S_ <= 0 || A_ <= 0) throw std::invalid_argument("MDP needs at least one state and action");
    if (H_ < 1) throw std::invalid_argument("horizon must be at least 1");
    check_state(start_, "start state");
    const std::size_t n = static_cast<std::size_t>(S_) * A_;
    if (rows.size() != n) throw std::invalid_argument("transition table has wrong size");
    if (rewards_.size() != n) throw std::invalid_argument("reward table has wrong size");
    if (!terminal_.empty() && terminal_.size() != static_cast<std::size_t>(S_))
        throw std::invalid_argument("terminal mask has wrong size");
    for (double r : rewards_)
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("reward outside [0,1]");
    for (auto& row : rows) normalize_row(row, S_);
    for (int s = 0; s < S_; ++s) {
        if (!is_terminal(s)) continue;
        for (int a = 0; a < A_; ++a) {
            const auto& r = rows[idx(s, a)];
            if (r.size() != 1 || r[0].next != s)
                throw std::invalid_argument("terminal state " + std::to_string(s) + " must self-loop");
        }
    }
    rows_ = std::make_shared<const std::vector<SparseRow>>(std::move(rows));
}

TabularMdp TabularMdp::from_dense(int num_states, int num_actions, int horizon, int start,
                                  const std::vector<double>& p, std::vector<double> rewards,
                                  std::vector<char> terminal) {
    const std::size_t n = static_cast<std::size_t>(num_states) * num_actions;
    if (num_states <= 0 || num_actions <= 0 || p.size() != n * num_states)
        throw std::invalid_argument("dense transition table has wrong size");
    std::vector<SparseRow> rows(n);
    for (std::size_t i = 0; i < n; ++i)
        for (int j = 0; j < num_states; ++j) {
            const double v = p[i * num_states + j];
            if (v != 0.0) rows[i].push_back({j, v});
            else if (std::signbit(v)) throw std::invalid_argument("negative transition probability");
        }
    return TabularMdp(num_states, num_actions, horizon, start, std::move(rows), std::move(rewards),
                      std::move(terminal));
}

void TabularMdp::check_state(int s, const char* what) const {
    if (s < 0 || s >= S_) throw std::invalid_argument(std::string(what) + " out of range");
}

double TabularMdp::prob(int s, int a, int next) const {
    for (const auto& t : row(s, a))
        if (t.next == next) return t.prob;
    return 0.0;
}

TabularMdp TabularMdp::with_horizon(int horizon) const {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (step_rows_) throw std::invalid_argument("cannot change horizon of a time-varying model");
    TabularMdp m = *this;
    m.H_ = horizon;
    return m;
}

TabularMdp TabularMdp::with_start(int start) const {
    check_state(start, "start state");
    TabularMdp m = *this;
    m.start_ = start;
    return m;
}

TabularMdp TabularMdp::with_rewards(std::vector<double> rewards) const {
    if (rewards.size() != rewards_.size()) throw std::invalid_argument("reward table has wrong size");
    for (double r : rewards)
        if (!(r >= 0.0 && r <= 1.0)) throw std::invalid_argument("reward outside [0,1]");
    TabularMdp m = *this;
    m.rewards_ = std::move(rewards);
    return m;
}

TabularMdp TabularMdp::with_row(int s, int a, SparseRow row) const {
    check_state(s, "state");
    if (a < 0 || a >= A_) throw std::invalid_argument("action out of range");
    normalize_row(row, S_);
    auto rows = *rows_;
    rows[idx(s, a)] = std::move(row);
    TabularMdp m = *this;
    m.rows_ = std::make_shared<const std::vector<SparseRow>>(std::move(rows));
    return m;
}

TabularMdp TabularMdp::with_step_rows(std::vector<std::vector<SparseRow>> step_rows) const {
    if (step_rows.size() != static_cast<std::size_t>(H_))
        throw std::invalid_argument("step rows must cover the horizon");
    for (auto& table : step_rows) {
        if (table.size() != rows_->size()) throw std::invalid_argument("step row table has wrong size");
        for (auto& row : table) normalize_row(row, S_);
    }
    TabularMdp m = *this;
    m.step_rows_ = std::make_shared<const std::vector<std::vector<SparseRow>>>(std::move(step_rows));
    return m;
}

bool TabularMdp::operator==(const TabularMdp& o) const {
    if (S_ != o.S_ || A_ != o.A_ || H_ != o.H_ || start_ != o.start_) return false;
    if (rewards_ != o.rewards_) return false;
    auto mask = [&](const std::vector<char>& m) {
        return m.empty() ? std::vector<char>(static_cast<std::size_t>(S_), 0) : m;
    };
    if (mask(terminal_) != mask(o.terminal_)) return false;
    if (*rows_ != *o.rows_) return false;
    if (static_cast<bool>(step_rows_) != static_cast<bool>(o.step_rows_)) return false;
    return !step_rows_ || *step_rows_ == *o.step_rows_;
}

MarkovPolicy MarkovPolicy::restricted(int num_states) const {
    if (num_states > S_) throw std::invalid_argument("cannot extend a policy");
    MarkovPolicy p(H_, num_states);
    for (int h = 0; h < H_; ++h)
        for (int s = 0; s < num_states; ++s) p.set(h, s, action(h, s));
    return p;
}

Policy Policy::mixture(std::vector<MarkovPolicy> members) {
    if (members.empty()) throw std::invalid_argument("empty policy mixture");
    for (const auto& m : members)
        if (m.horizon() != members.front().horizon() || m.num_states() != members.front().num_states())
            throw std::invalid_argument("mixture members disagree in shape");
    Policy p;
    p.members_ = std::move(members);
    return p;
}

double Trajectory::total_reward() const {
    double r = 0.0;
    for (const auto& s : steps) r += s.reward;
    return r;
}

bool Trajectory::contains(StateAction sa) const {
    return std::any_of(steps.begin(), steps.end(),
                       [&](const Step& s) { return s.state == sa.state && s.action == sa.action; });
}

double OccupancyMeasure::state(int h, int s) const {
    double m = 0.0;
    for (int a = 0; a < A_; ++a) m += at(h, s, a);
    return m;
}

double OccupancyMeasure::step_mass(int h) const {
    double m = 0.0;
    for (int s = 0; s < S_; ++s) m += state(h, s);
    return m;
}

}  // namespace hrl
