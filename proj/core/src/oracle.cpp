#include "hrl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <deque>
#include <limits>
#include <stdexcept>

#include "hrl/meta_train.hpp"
#include "hrl/planning.hpp"

namespace hrl {

namespace {

std::uint64_t hash_rewards(const std::vector<double>& r) {
    std::uint64_t h = 1469598103934665603ULL;
    for (double x : r) {
        std::uint64_t bits = 0;
        std::memcpy(&bits, &x, sizeof bits);
        for (int i = 0; i < 8; ++i) {
            h ^= (bits >> (8 * i)) & 0xffU;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

}  // namespace

HierarchyOracle::HierarchyOracle(DynamicsEstimate reference, std::vector<StateAction> exits, std::vector<int> entrances,
                                 int horizon, double epsilon0)
    : S_(reference.num_states()), A_(reference.num_actions()), H_(horizon), reference_(std::move(reference)),
      exits_(std::move(exits)), entrances_(std::move(entrances)), epsilon0_(epsilon0) {
    if (S_ <= 0 || A_ <= 0 || H_ <= 0) throw std::invalid_argument("oracle: empty reference model");
    std::sort(exits_.begin(), exits_.end());
    exits_.erase(std::unique(exits_.begin(), exits_.end()), exits_.end());
    std::sort(entrances_.begin(), entrances_.end());
    entrances_.erase(std::unique(entrances_.begin(), entrances_.end()), entrances_.end());
    for (const auto& e : exits_)
        if (e.state < 0 || e.state >= S_ || e.action < 0 || e.action >= A_)
            throw std::invalid_argument("oracle: exit out of range");
    for (int s : entrances_)
        if (s < 0 || s >= S_) throw std::invalid_argument("oracle: entrance out of range");
    set_epsilon0(epsilon0);
}

HierarchyOracle HierarchyOracle::from_state(const MetaTrainState& state, double epsilon0, int horizon) {
    if (state.phase_completed < 3) throw std::invalid_argument("oracle needs a completed meta-train state");
    return HierarchyOracle(state.reference.estimate(), state.exits.pairs(), state.entrances(),
                           horizon > 0 ? horizon : state.horizon, epsilon0);
}

HierarchyOracle HierarchyOracle::exact(const TabularMdp& mdp, const LatentHierarchy& hierarchy, double epsilon0) {
    if (hierarchy.num_states() != mdp.num_states()) throw std::invalid_argument("oracle: hierarchy size mismatch");
    auto entrances = hierarchy.all_entrances();
    entrances.push_back(mdp.start_state());
    return HierarchyOracle(DynamicsEstimate::from_mdp(mdp), hierarchy.all_exits(), std::move(entrances), mdp.horizon(),
                           epsilon0);
}

void HierarchyOracle::set_epsilon0(double e) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw std::invalid_argument("oracle: epsilon0 must be finite and >= 0");
    std::lock_guard lock(mu_);
    epsilon0_ = e;
    available_cache_.clear();
}

bool HierarchyOracle::is_exit(StateAction sa) const { return exit_index(sa) >= 0; }

bool HierarchyOracle::is_entrance(int s) const { return std::binary_search(entrances_.begin(), entrances_.end(), s); }

int HierarchyOracle::exit_index(StateAction sa) const {
    const auto it = std::lower_bound(exits_.begin(), exits_.end(), sa);
    return it != exits_.end() && *it == sa ? static_cast<int>(it - exits_.begin()) : -1;
}

TabularMdp HierarchyOracle::sealed_model(const std::vector<ExitTarget>& exit_map, int horizon, int start) const {
    if (exit_map.size() != exits_.size()) throw std::invalid_argument("oracle: exit map must cover every flagged exit");
    const int M = model_states();
    std::vector<SparseRow> rows(static_cast<std::size_t>(M) * A_);
    for (int s = 0; s < S_; ++s)
        for (int a = 0; a < A_; ++a) {
            auto& row = rows[static_cast<std::size_t>(s) * A_ + a];
            const int e = exit_index({s, a});
            if (e >= 0)
                row = {{exit_map[static_cast<std::size_t>(e)] == ExitTarget::success ? success_state() : failure_state(),
                        1.0}};
            else if (reference_.known(s, a))
                row = reference_.row(s, a);
            else
                row = {{failure_state(), 1.0}};
        }
    for (int x : {success_state(), failure_state()})
        for (int a = 0; a < A_; ++a) rows[static_cast<std::size_t>(x) * A_ + a] = {{x, 1.0}};
    std::vector<char> terminal(static_cast<std::size_t>(M), 0);
    terminal[static_cast<std::size_t>(success_state())] = 1;
    terminal[static_cast<std::size_t>(failure_state())] = 1;
    return TabularMdp(M, A_, horizon, start, std::move(rows), std::vector<double>(static_cast<std::size_t>(M) * A_, 0.0),
                      std::move(terminal));
}

std::shared_ptr<const OracleResult> HierarchyOracle::solve(const OracleQuery& q) const {
    if (q.horizon <= 0 || q.horizon > H_) throw std::invalid_argument("oracle: query horizon outside [1, H]");
    if (q.start < 0 || q.start >= S_) throw std::invalid_argument("oracle: query start out of range");
    if (q.rewards.size() != static_cast<std::size_t>(model_states()) * A_)
        throw std::invalid_argument("oracle: reward table must have (S + 2) * A entries");
    if (q.exit_map.size() != exits_.size()) throw std::invalid_argument("oracle: exit map must cover every flagged exit");
    Key key{q.exit_map, hash_rewards(q.rewards), q.horizon};
    {
        std::lock_guard lock(mu_);
        if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    }
    const auto model = sealed_model(q.exit_map, q.horizon, q.start).with_rewards(q.rewards);
    auto plan = value_iteration(model);
    auto res = std::make_shared<const OracleResult>(OracleResult{std::move(plan.values), std::move(plan.policy)});
    std::lock_guard lock(mu_);
    return cache_.emplace(std::move(key), std::move(res)).first->second;
}

std::vector<ExitTarget> HierarchyOracle::only_success(StateAction g) const {
    const int e = exit_index(g);
    if (e < 0)
        throw std::invalid_argument("oracle: (" + std::to_string(g.state) + "," + std::to_string(g.action) +
                                    ") is not a flagged exit");
    auto m = all_fail();
    m[static_cast<std::size_t>(e)] = ExitTarget::success;
    return m;
}

std::vector<double> HierarchyOracle::success_reward() const {
    std::vector<double> r(static_cast<std::size_t>(model_states()) * A_, 0.0);
    for (int a = 0; a < A_; ++a) r[static_cast<std::size_t>(success_state()) * A_ + a] = 1.0;
    return r;
}

std::shared_ptr<const OracleResult> HierarchyOracle::goal_reaching(int z, StateAction g, int h) const {
    if (h < 0 || h >= H_) throw std::invalid_argument("oracle: time step outside [0, H)");
    const auto avail = available_exits(z);
    if (!std::binary_search(avail.begin(), avail.end(), g))
        throw std::invalid_argument("oracle: exit (" + std::to_string(g.state) + "," + std::to_string(g.action) +
                                    ") is not available from state " + std::to_string(z));
    return solve({z, only_success(g), success_reward(), H_ - h});
}

std::shared_ptr<const OracleResult> HierarchyOracle::within_cluster(int z, const std::vector<double>& base_rewards,
                                                                    int h) const {
    if (h < 0 || h >= H_) throw std::invalid_argument("oracle: time step outside [0, H)");
    if (!is_entrance(z)) throw std::invalid_argument("oracle: state " + std::to_string(z) + " is not an entrance");
    if (base_rewards.size() != static_cast<std::size_t>(S_) * A_)
        throw std::invalid_argument("oracle: base reward table must have S * A entries");
    std::vector<double> r(base_rewards);
    r.resize(static_cast<std::size_t>(model_states()) * A_, 0.0);
    return solve({z, all_fail(), std::move(r), H_ - h});
}

double HierarchyOracle::exit_reach_value(int s, StateAction e) const {
    const int idx = exit_index(e);
    if (idx < 0) throw std::invalid_argument("oracle: not a flagged exit");
    std::vector<double> r(static_cast<std::size_t>(model_states()) * A_, 0.0);
    r[static_cast<std::size_t>(e.state) * A_ + e.action] = 1.0;
    return solve({s, all_fail(), std::move(r), H_})->value_at(s);
}

std::vector<StateAction> HierarchyOracle::available_exits(int s) const {
    if (!is_entrance(s)) throw std::invalid_argument("oracle: state " + std::to_string(s) + " is not an entrance");
    {
        std::lock_guard lock(mu_);
        if (auto it = available_cache_.find(s); it != available_cache_.end()) return it->second;
    }
    std::vector<StateAction> out;
    const double floor = 2.0 * epsilon0_ / 3.0;
    for (const auto& e : exits_) {
        const double v = exit_reach_value(s, e);
        if (v > 0.0 && v >= floor - 1e-12) out.push_back(e);
    }
    std::lock_guard lock(mu_);
    available_cache_[s] = out;
    return out;
}

std::size_t HierarchyOracle::cache_size() const {
    std::lock_guard lock(mu_);
    return cache_.size();
}

double reachability_floor(const HierarchyOracle& oracle, const LatentHierarchy& hierarchy) {
    double floor = std::numeric_limits<double>::infinity();
    for (int c = 0; c < hierarchy.num_clusters(); ++c)
        for (int x : hierarchy.entrances(c)) {
            if (!oracle.is_entrance(x)) continue;
            for (const auto& e : hierarchy.exits(c)) {
                if (!oracle.is_exit(e)) continue;
                const double v = oracle.exit_reach_value(x, e);
                if (v > 0.0) floor = std::min(floor, v);
            }
        }
    return std::isfinite(floor) ? floor : 0.0;
}

ReachingTimeStats reaching_times(const TabularMdp& mdp, const LatentHierarchy& hierarchy, int s, StateAction g,
                                 int horizon) {
    const int S = mdp.num_states(), A = mdp.num_actions();
    if (hierarchy.num_states() != S) throw std::invalid_argument("reaching_times: hierarchy size mismatch");
    if (horizon <= 0) throw std::invalid_argument("reaching_times: horizon must be positive");
    const int c = hierarchy.cluster_of(s);
    if (hierarchy.cluster_of(g.state) != c) throw std::invalid_argument("reaching_times: s and g lie in different clusters");
    auto inside = [&](int x) { return hierarchy.cluster_of(x) == c; };

    ReachingTimeStats out;
    // Breadth-first search over the support graph; the exit itself is the last edge.
    std::vector<int> dist(static_cast<std::size_t>(S), -1);
    std::deque<int> queue{s};
    dist[static_cast<std::size_t>(s)] = 0;
    while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        for (int a = 0; a < A; ++a) {
            if (StateAction{x, a} == g) continue;
            for (const auto& tr : mdp.row(x, a))
                if (tr.prob > 0.0 && inside(tr.next) && dist[static_cast<std::size_t>(tr.next)] < 0) {
                    dist[static_cast<std::size_t>(tr.next)] = dist[static_cast<std::size_t>(x)] + 1;
                    queue.push_back(tr.next);
                }
        }
    }
    const int d = dist[static_cast<std::size_t>(g.state)];
    out.t_min = d < 0 ? horizon : std::min(d + 1, horizon);

    // cost[h][x]: optimal expected clamped time still to go.
    std::vector<double> next(static_cast<std::size_t>(S), 0.0), cur(static_cast<std::size_t>(S), 0.0);
    for (int h = horizon - 1; h >= 0; --h) {
        for (int x = 0; x < S; ++x) {
            if (!inside(x)) {
                cur[static_cast<std::size_t>(x)] = horizon - h;
                continue;
            }
            double best = std::numeric_limits<double>::infinity();
            for (int a = 0; a < A; ++a) {
                double q = 1.0;
                if (StateAction{x, a} != g)
                    for (const auto& tr : mdp.row(x, a, h))
                        q += tr.prob * (inside(tr.next) ? next[static_cast<std::size_t>(tr.next)] : horizon - h - 1);
                best = std::min(best, q);
            }
            cur[static_cast<std::size_t>(x)] = best;
        }
        std::swap(cur, next);
    }
    out.t_star = next[static_cast<std::size_t>(s)];
    return out;
}

ReachingCertificate certify_reaching(const TabularMdp& mdp, const LatentHierarchy& hierarchy, int horizon) {
    ReachingCertificate cert;
    for (int c = 0; c < hierarchy.num_clusters(); ++c)
        for (int x : hierarchy.entrances(c))
            for (const auto& g : hierarchy.exits(c)) {
                ++cert.pairs;
                const auto st = reaching_times(mdp, hierarchy, x, g, horizon);
                if (st.t_min >= horizon) {
                    ++cert.unreachable;
                    continue;
                }
                cert.width = std::max(cert.width, st.t_min);
                cert.gamma = std::max(cert.gamma, st.t_star / st.t_min - 1.0);
            }
    return cert;
}

}  // namespace hrl
