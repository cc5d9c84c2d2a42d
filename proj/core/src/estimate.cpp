#include "hrl/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hrl {

DynamicsEstimate DynamicsEstimate::from_mdp(const TabularMdp& mdp) {
    DynamicsEstimate d(mdp.num_states(), mdp.num_actions());
    for (int s = 0; s < mdp.num_states(); ++s)
        for (int a = 0; a < mdp.num_actions(); ++a) {
            auto r = mdp.row(s, a);
            d.rows_[static_cast<std::size_t>(s) * d.A_ + a].assign(r.begin(), r.end());
        }
    return d;
}

void DynamicsEstimate::set_row(int s, int a, SparseRow row) {
    if (s < 0 || s >= S_ || a < 0 || a >= A_) throw std::invalid_argument("set_row: pair out of range");
    if (!row.empty()) normalize_row(row, S_);
    rows_[static_cast<std::size_t>(s) * A_ + a] = std::move(row);
}

EmpiricalModel::EmpiricalModel(int num_states, int num_actions, int threshold)
    : S_(num_states), A_(num_actions), threshold_(threshold),
      counts_(static_cast<std::size_t>(num_states) * num_actions),
      totals_(static_cast<std::size_t>(num_states) * num_actions, 0) {
    if (threshold < 1) throw std::invalid_argument("threshold must be at least 1");
}

void EmpiricalModel::set_threshold(int n) {
    if (n < 1) throw std::invalid_argument("threshold must be at least 1");
    threshold_ = n;
}

void EmpiricalModel::add(int s, int a, int next, std::int64_t n) {
    if (s < 0 || s >= S_ || a < 0 || a >= A_ || next < 0 || next >= S_)
        throw std::invalid_argument("EmpiricalModel::add: index out of range");
    const std::size_t i = static_cast<std::size_t>(s) * A_ + a;
    auto& c = counts_[i];
    auto it = std::lower_bound(c.begin(), c.end(), next, [](const auto& p, int v) { return p.first < v; });
    if (it != c.end() && it->first == next)
        it->second += n;
    else
        c.insert(it, {next, n});
    totals_[i] += n;
}

void EmpiricalModel::add(const Trajectory& traj) {
    for (const auto& st : traj.steps) add(st.state, st.action, st.next_state);
}

void EmpiricalModel::merge(const EmpiricalModel& other) {
    if (other.S_ != S_ || other.A_ != A_) throw std::invalid_argument("merge: shape mismatch");
    for (int s = 0; s < S_; ++s)
        for (int a = 0; a < A_; ++a)
            for (const auto& [n, k] : other.counts(s, a)) add(s, a, n, k);
}

SparseRow EmpiricalModel::estimate(int s, int a) const {
    if (!known(s, a)) return {};
    SparseRow row;
    const double total = static_cast<double>(count(s, a));
    for (const auto& [n, k] : counts(s, a)) row.push_back({n, static_cast<double>(k) / total});
    return row;
}

DynamicsEstimate EmpiricalModel::estimate() const {
    DynamicsEstimate d(S_, A_);
    for (int s = 0; s < S_; ++s)
        for (int a = 0; a < A_; ++a) {
            auto r = estimate(s, a);
            if (!r.empty()) d.set_row(s, a, std::move(r));
        }
    return d;
}

EmpiricalModel merge_max_count(std::span<const EmpiricalModel> models) {
    if (models.empty()) throw std::invalid_argument("merge_max_count: no models");
    const auto& first = models.front();
    EmpiricalModel out(first.num_states(), first.num_actions(), first.threshold());
    for (int s = 0; s < first.num_states(); ++s)
        for (int a = 0; a < first.num_actions(); ++a) {
            std::size_t best = 0;
            for (std::size_t i = 1; i < models.size(); ++i)
                if (models[i].count(s, a) > models[best].count(s, a)) best = i;
            for (const auto& [n, k] : models[best].counts(s, a)) out.add(s, a, n, k);
        }
    return out;
}

double tv_distance(std::span<const Transition> p, std::span<const Transition> q) {
    if (p.empty() || q.empty()) throw std::invalid_argument("tv_distance: unknown (all-zero) row");
    double sum = 0.0;
    std::size_t i = 0, j = 0;
    while (i < p.size() || j < q.size()) {
        if (j == q.size() || (i < p.size() && p[i].next < q[j].next)) {
            sum += std::abs(p[i++].prob);
        } else if (i == p.size() || q[j].next < p[i].next) {
            sum += std::abs(q[j++].prob);
        } else {
            sum += std::abs(p[i++].prob - q[j++].prob);
        }
    }
    return 0.5 * sum;
}

int sample_next(const TabularMdp& mdp, int s, int a, int h, Rng& rng) {
    const auto row = mdp.row(s, a, h);
    const double u = rng.uniform();
    double acc = 0.0;
    for (const auto& t : row) {
        acc += t.prob;
        if (u < acc) return t.next;
    }
    return row.back().next;
}

Trajectory simulate_episode(const TabularMdp& mdp, const MarkovPolicy& policy, Rng& rng, QueryCounter* counter) {
    if (policy.horizon() < mdp.horizon() || policy.num_states() < mdp.num_states())
        throw std::invalid_argument("simulate_episode: policy does not cover the MDP");
    Trajectory traj;
    traj.steps.reserve(static_cast<std::size_t>(mdp.horizon()));
    int s = mdp.start_state();
    for (int h = 0; h < mdp.horizon(); ++h) {
        int a = policy.action(h, s);
        if (a == kUniformAction) a = rng.uniform_int(mdp.num_actions());
        if (a < 0 || a >= mdp.num_actions()) throw std::invalid_argument("simulate_episode: bad action");
        const int next = sample_next(mdp, s, a, h, rng);
        traj.steps.push_back({h, s, a, mdp.reward(s, a), next});
        s = next;
    }
    if (counter) counter->add(mdp.horizon());
    return traj;
}

Trajectory simulate_episode(const TabularMdp& mdp, const Policy& policy, Rng& rng, QueryCounter* counter) {
    const auto members = policy.members();
    if (members.empty()) throw std::invalid_argument("simulate_episode: empty policy");
    const auto& m = members.size() == 1 ? members[0] : members[static_cast<std::size_t>(rng.uniform_int(static_cast<int>(members.size())))];
    return simulate_episode(mdp, m, rng, counter);
}

EmpiricalModel estimate_dynamics(const TabularMdp& mdp, const Policy& policy, int episodes, int threshold,
                                 Rng& rng, QueryCounter* counter) {
    if (episodes < 0) throw std::invalid_argument("estimate_dynamics: negative episode count");
    EmpiricalModel model(mdp.num_states(), mdp.num_actions(), threshold);
    for (int e = 0; e < episodes; ++e) model.add(simulate_episode(mdp, policy, rng, counter));
    return model;
}

}  // namespace hrl
