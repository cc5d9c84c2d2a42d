#pragma once

// Independent reference computations for the tests. Nothing here calls the
// planners under test.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <vector>

#include "hrl/estimate.hpp"
#include "hrl/mdp.hpp"
#include "hrl/oracle.hpp"
#include "hrl/random.hpp"

namespace hrl::testing {

/// Dense random MDP; each row gets 1..S successors.
inline TabularMdp random_mdp(Rng& rng, int S, int A, int H) {
    std::vector<SparseRow> rows(static_cast<std::size_t>(S) * A);
    std::vector<double> rewards(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const int k = 1 + rng.uniform_int(S);
        std::vector<double> w(static_cast<std::size_t>(S), 0.0);
        for (int j = 0; j < k; ++j) w[static_cast<std::size_t>(rng.uniform_int(S))] += 0.05 + rng.uniform();
        double sum = 0.0;
        for (double x : w) sum += x;
        for (int s = 0; s < S; ++s)
            if (w[static_cast<std::size_t>(s)] > 0) rows[i].push_back({s, w[static_cast<std::size_t>(s)] / sum});
        rewards[i] = rng.uniform() < 0.3 ? 0.0 : rng.uniform();
    }
    return TabularMdp(S, A, H, rng.uniform_int(S), std::move(rows), std::move(rewards));
}

/// V^pi(0, s) for every s by plain backward sums over the rows.
inline std::vector<double> evaluate_markov(const TabularMdp& m, const std::vector<int>& table) {
    const int S = m.num_states(), H = m.horizon();
    std::vector<double> v(static_cast<std::size_t>(S), 0.0), nv(v.size());
    for (int h = H - 1; h >= 0; --h) {
        for (int s = 0; s < S; ++s) {
            const int a = table[static_cast<std::size_t>(h) * S + s];
            double q = m.reward(s, a);
            for (const auto& t : m.row(s, a, h)) q += t.prob * v[static_cast<std::size_t>(t.next)];
            nv[static_cast<std::size_t>(s)] = q;
        }
        std::swap(v, nv);
    }
    return v;
}

/// Best value per start state over every deterministic Markov policy.
inline std::vector<double> enumerate_best_values(const TabularMdp& m) {
    const int S = m.num_states(), A = m.num_actions(), H = m.horizon();
    const std::size_t n = static_cast<std::size_t>(S) * H;
    std::vector<int> table(n, 0);
    std::vector<double> best(static_cast<std::size_t>(S), -std::numeric_limits<double>::infinity());
    while (true) {
        const auto v = evaluate_markov(m, table);
        for (int s = 0; s < S; ++s) best[static_cast<std::size_t>(s)] = std::max(best[static_cast<std::size_t>(s)], v[static_cast<std::size_t>(s)]);
        std::size_t i = 0;
        while (i < n && ++table[i] == A) table[i++] = 0;
        if (i == n) break;
    }
    return best;
}

/// Expected return of a Markov policy by summing over every trajectory.
inline double path_sum_value(const TabularMdp& m, const MarkovPolicy& pi, int s, int h = 0) {
    if (h == m.horizon()) return 0.0;
    const int a = pi.action(h, s);
    double v = m.reward(s, a);
    for (const auto& t : m.row(s, a, h)) v += t.prob * path_sum_value(m, pi, t.next, h + 1);
    return v;
}

/// Probability that (s,a) occurs along a trajectory, by forward propagation of
/// the mass that has not yet hit it.
inline double forward_visit_probability(const TabularMdp& m, const MarkovPolicy& pi, StateAction sa) {
    const int S = m.num_states();
    std::vector<double> d(static_cast<std::size_t>(S), 0.0), nd(d.size());
    d[static_cast<std::size_t>(m.start_state())] = 1.0;
    double hit = 0.0;
    for (int h = 0; h < m.horizon(); ++h) {
        std::fill(nd.begin(), nd.end(), 0.0);
        for (int s = 0; s < S; ++s) {
            const double mass = d[static_cast<std::size_t>(s)];
            if (mass == 0.0) continue;
            const int a = pi.action(h, s);
            if (StateAction{s, a} == sa) {
                hit += mass;
                continue;
            }
            for (const auto& t : m.row(s, a, h)) nd[static_cast<std::size_t>(t.next)] += mass * t.prob;
        }
        std::swap(d, nd);
    }
    return hit;
}

/// BFS over positive-probability edges, counting the step that performs g.
/// Moves through pairs rejected by `allowed` are cut. Returns -1 if g is never performed.
inline int bfs_steps_to_exit(const TabularMdp& m, int from, StateAction g,
                             const std::function<bool(int s, int a)>& allowed) {
    const int S = m.num_states();
    std::vector<int> dist(static_cast<std::size_t>(S), -1);
    std::deque<int> q{from};
    dist[static_cast<std::size_t>(from)] = 0;
    while (!q.empty()) {
        const int s = q.front();
        q.pop_front();
        if (s == g.state) return dist[static_cast<std::size_t>(s)] + 1;
        for (int a = 0; a < m.num_actions(); ++a) {
            if (!allowed(s, a)) continue;
            for (const auto& t : m.row(s, a))
                if (t.prob > 0 && dist[static_cast<std::size_t>(t.next)] < 0) {
                    dist[static_cast<std::size_t>(t.next)] = dist[static_cast<std::size_t>(s)] + 1;
                    q.push_back(t.next);
                }
        }
    }
    return -1;
}

struct BoatInstance {
    DynamicsEstimate reference;
    std::vector<DynamicsEstimate> tasks;
    std::vector<double> rewards;
    std::vector<char> flagged;
    int horizon = 1;
};

/// Random estimates with unknown rows and a few flagged pairs.
inline BoatInstance random_boat_instance(Rng& rng, int S, int A, int T, int H) {
    auto random_estimate = [&](double unknown) {
        DynamicsEstimate d(S, A);
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                if (rng.uniform() < unknown) continue;
                SparseRow row;
                double sum = 0.0;
                std::vector<double> w(static_cast<std::size_t>(S));
                for (auto& x : w) sum += (x = rng.uniform() < 0.5 ? 0.0 : rng.uniform());
                if (sum == 0.0) w[static_cast<std::size_t>(rng.uniform_int(S))] = sum = 1.0;
                for (int y = 0; y < S; ++y)
                    if (w[static_cast<std::size_t>(y)] > 0) row.push_back({y, w[static_cast<std::size_t>(y)] / sum});
                d.set_row(s, a, row);
            }
        return d;
    };
    BoatInstance in;
    in.horizon = H;
    in.reference = random_estimate(0.3);
    for (int t = 0; t < T; ++t) in.tasks.push_back(random_estimate(0.3));
    for (int i = 0; i < S * A; ++i) {
        in.rewards.push_back(rng.uniform());
        in.flagged.push_back(rng.uniform() < 0.2 ? 1 : 0);
    }
    return in;
}

/// Candidate rows per pair as an index function may pick them: flagged pairs
/// take the reference (possibly unknown), others any known row. An empty
/// candidate stands for "unknown, contributes nothing".
inline std::vector<std::vector<const SparseRow*>> boat_candidates(const BoatInstance& in) {
    const int S = in.reference.num_states(), A = in.reference.num_actions();
    static const SparseRow kEmpty;
    std::vector<std::vector<const SparseRow*>> out(static_cast<std::size_t>(S) * A);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            auto& c = out[static_cast<std::size_t>(s) * A + a];
            if (in.flagged[static_cast<std::size_t>(s) * A + a]) {
                c.push_back(&in.reference.row(s, a));
                continue;
            }
            if (in.reference.known(s, a)) c.push_back(&in.reference.row(s, a));
            for (const auto& t : in.tasks)
                if (t.known(s, a)) c.push_back(&t.row(s, a));
            if (c.empty()) c.push_back(&kEmpty);
        }
    return out;
}

inline double boat_index_count(const BoatInstance& in) {
    double n = 1.0;
    for (const auto& c : boat_candidates(in)) n *= std::pow(static_cast<double>(c.size()), in.horizon);
    return n;
}

/// max over index functions of the optimal value, per state, by enumerating
/// every index function and running a separate backward pass for each.
inline std::vector<double> enumerate_index_functions(const BoatInstance& in) {
    const int S = in.reference.num_states(), A = in.reference.num_actions(), H = in.horizon;
    const auto cand = boat_candidates(in);
    const std::size_t P = cand.size(), n = P * static_cast<std::size_t>(H);
    std::vector<std::size_t> pick(n, 0);
    std::vector<double> best(static_cast<std::size_t>(S), -std::numeric_limits<double>::infinity());
    std::vector<double> v(static_cast<std::size_t>(S)), nv(v.size());
    while (true) {
        std::fill(v.begin(), v.end(), 0.0);
        for (int h = H - 1; h >= 0; --h) {
            for (int s = 0; s < S; ++s) {
                double q_best = -std::numeric_limits<double>::infinity();
                for (int a = 0; a < A; ++a) {
                    const std::size_t i = static_cast<std::size_t>(s) * A + a;
                    const SparseRow& row = *cand[i][pick[static_cast<std::size_t>(h) * P + i]];
                    double q = in.rewards[i];
                    for (const auto& t : row) q += t.prob * v[static_cast<std::size_t>(t.next)];
                    q_best = std::max(q_best, q);
                }
                nv[static_cast<std::size_t>(s)] = q_best;
            }
            std::swap(v, nv);
        }
        for (int s = 0; s < S; ++s) best[static_cast<std::size_t>(s)] = std::max(best[static_cast<std::size_t>(s)], v[static_cast<std::size_t>(s)]);
        std::size_t k = 0;
        while (k < n && ++pick[k] == cand[k % P].size()) pick[k++] = 0;
        if (k == n) break;
    }
    return best;
}

/// E[min(T, L)] for a goal-reaching policy started at (s, h), run in the true
/// MDP. Mass that performs another flagged exit never arrives.
inline double expected_reaching_time(const TabularMdp& m, const HierarchyOracle& o, const MarkovPolicy& pi, int s,
                                     int h, StateAction g) {
    const int S = m.num_states(), L = m.horizon() - h;
    std::vector<double> d(static_cast<std::size_t>(S), 0.0), nd(d.size());
    d[static_cast<std::size_t>(s)] = 1.0;
    double et = 0.0, arrived = 0.0;
    for (int k = 0; k < L; ++k) {
        std::fill(nd.begin(), nd.end(), 0.0);
        for (int x = 0; x < S; ++x) {
            const double mass = d[static_cast<std::size_t>(x)];
            if (mass == 0.0) continue;
            const int a = pi.action(k, x);
            if (StateAction{x, a} == g) {
                et += mass * (k + 1);
                arrived += mass;
                continue;
            }
            if (o.is_exit({x, a})) continue;
            for (const auto& t : m.row(x, a, h + k)) nd[static_cast<std::size_t>(t.next)] += mass * t.prob;
        }
        std::swap(d, nd);
    }
    return et + (1.0 - arrived) * L;
}

}  // namespace hrl::testing
