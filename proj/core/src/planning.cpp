#include "hrl/planning.hpp"

#include <stdexcept>

namespace hrl {

PlanResult value_iteration(const TabularMdp& mdp) {
    const int S = mdp.num_states(), A = mdp.num_actions(), H = mdp.horizon();
    PlanResult out{ValueTable(H, S, A), MarkovPolicy(H, S)};
    auto& vt = out.values;
    for (int h = H - 1; h >= 0; --h) {
        for (int s = 0; s < S; ++s) {
            int best_a = 0;
            double best = 0.0;
            for (int a = 0; a < A; ++a) {
                double q = mdp.reward(s, a);
                for (const auto& t : mdp.row(s, a, h)) q += t.prob * vt.v(h + 1, t.next);
                vt.q(h, s, a) = q;
                if (a == 0 || q > best) {
                    best = q;
                    best_a = a;
                }
            }
            vt.v(h, s) = best;
            out.policy.set(h, s, best_a);
        }
    }
    return out;
}

namespace {

void check_policy(const TabularMdp& mdp, const MarkovPolicy& p) {
    if (p.horizon() != mdp.horizon()) throw std::invalid_argument("policy horizon does not match MDP");
    if (p.num_states() < mdp.num_states()) throw std::invalid_argument("policy covers too few states");
    for (int h = 0; h < p.horizon(); ++h)
        for (int s = 0; s < mdp.num_states(); ++s) {
            const int a = p.action(h, s);
            if (a != kUniformAction && (a < 0 || a >= mdp.num_actions()))
                throw std::invalid_argument("policy action out of range");
        }
}

void accumulate_value(const TabularMdp& mdp, const MarkovPolicy& p, double weight, ValueTable& out) {
    const int S = mdp.num_states(), A = mdp.num_actions(), H = mdp.horizon();
    ValueTable vt(H, S, A);
    for (int h = H - 1; h >= 0; --h)
        for (int s = 0; s < S; ++s) {
            for (int a = 0; a < A; ++a) {
                double q = mdp.reward(s, a);
                for (const auto& t : mdp.row(s, a, h)) q += t.prob * vt.v(h + 1, t.next);
                vt.q(h, s, a) = q;
            }
            const int pa = p.action(h, s);
            if (pa == kUniformAction) {
                double v = 0.0;
                for (int a = 0; a < A; ++a) v += vt.q(h, s, a);
                vt.v(h, s) = v / A;
            } else {
                vt.v(h, s) = vt.q(h, s, pa);
            }
        }
    for (int h = 0; h <= H; ++h)
        for (int s = 0; s < S; ++s) {
            out.v(h, s) += weight * vt.v(h, s);
            if (h < H)
                for (int a = 0; a < A; ++a) out.q(h, s, a) += weight * vt.q(h, s, a);
        }
}

double action_prob(const MarkovPolicy& p, int h, int s, int a, int A) {
    const int pa = p.action(h, s);
    if (pa == kUniformAction) return 1.0 / A;
    return pa == a ? 1.0 : 0.0;
}

}  // namespace

ValueTable policy_value(const TabularMdp& mdp, const Policy& policy) {
    if (policy.members().empty()) throw std::invalid_argument("empty policy");
    ValueTable out(mdp.horizon(), mdp.num_states(), mdp.num_actions());
    const double w = 1.0 / static_cast<double>(policy.members().size());
    for (const auto& m : policy.members()) {
        check_policy(mdp, m);
        accumulate_value(mdp, m, w, out);
    }
    return out;
}

OccupancyMeasure occupancy(const TabularMdp& mdp, const Policy& policy) {
    if (policy.members().empty()) throw std::invalid_argument("empty policy");
    const int S = mdp.num_states(), A = mdp.num_actions(), H = mdp.horizon();
    OccupancyMeasure out(H, S, A);
    const double w = 1.0 / static_cast<double>(policy.members().size());
    std::vector<double> dist(S), next(S);
    for (const auto& p : policy.members()) {
        check_policy(mdp, p);
        std::fill(dist.begin(), dist.end(), 0.0);
        dist[mdp.start_state()] = 1.0;
        for (int h = 0; h < H; ++h) {
            std::fill(next.begin(), next.end(), 0.0);
            for (int s = 0; s < S; ++s) {
                if (dist[s] == 0.0) continue;
                for (int a = 0; a < A; ++a) {
                    const double m = dist[s] * action_prob(p, h, s, a, A);
                    if (m == 0.0) continue;
                    out.at(h, s, a) += w * m;
                    for (const auto& t : mdp.row(s, a, h)) next[t.next] += m * t.prob;
                }
            }
            dist.swap(next);
        }
    }
    return out;
}

double hit_probability(const TabularMdp& mdp, const Policy& policy,
                       const std::function<bool(int, int, int)>& hit) {
    if (policy.members().empty()) throw std::invalid_argument("empty policy");
    const int S = mdp.num_states(), A = mdp.num_actions(), H = mdp.horizon();
    const double w = 1.0 / static_cast<double>(policy.members().size());
    double total = 0.0;
    std::vector<double> dist(S), next(S);
    for (const auto& p : policy.members()) {
        check_policy(mdp, p);
        std::fill(dist.begin(), dist.end(), 0.0);
        dist[mdp.start_state()] = 1.0;
        double hit_mass = 0.0;
        for (int h = 0; h < H; ++h) {
            std::fill(next.begin(), next.end(), 0.0);
            for (int s = 0; s < S; ++s) {
                if (dist[s] == 0.0) continue;
                for (int a = 0; a < A; ++a) {
                    const double m = dist[s] * action_prob(p, h, s, a, A);
                    if (m == 0.0) continue;
                    if (hit(h, s, a)) {
                        hit_mass += m;
                        continue;
                    }
                    for (const auto& t : mdp.row(s, a, h)) next[t.next] += m * t.prob;
                }
            }
            dist.swap(next);
        }
        total += w * hit_mass;
    }
    return total;
}

double visit_probability(const TabularMdp& mdp, const Policy& policy, StateAction sa) {
    return hit_probability(mdp, policy,
                           [&](int, int s, int a) { return s == sa.state && a == sa.action; });
}

TabularMdp with_sink(const TabularMdp& mdp) {
    const int S = mdp.num_states(), A = mdp.num_actions();
    const int sink = S;
    auto copy_table = [&](auto&& row_of) {
        std::vector<SparseRow> rows(static_cast<std::size_t>(S + 1) * A);
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                auto r = row_of(s, a);
                rows[static_cast<std::size_t>(s) * A + a].assign(r.begin(), r.end());
            }
        for (int a = 0; a < A; ++a) rows[static_cast<std::size_t>(sink) * A + a] = {{sink, 1.0}};
        return rows;
    };
    std::vector<double> rewards(static_cast<std::size_t>(S + 1) * A, 0.0);
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) rewards[static_cast<std::size_t>(s) * A + a] = mdp.reward(s, a);
    std::vector<char> term(static_cast<std::size_t>(S + 1), 0);
    for (int s = 0; s < S; ++s) term[s] = mdp.is_terminal(s) ? 1 : 0;
    term[sink] = 1;
    TabularMdp out(S + 1, A, mdp.horizon(), mdp.start_state(),
                   copy_table([&](int s, int a) { return mdp.row(s, a); }), std::move(rewards), std::move(term));
    if (mdp.time_varying()) {
        std::vector<std::vector<SparseRow>> steps;
        for (int h = 0; h < mdp.horizon(); ++h)
            steps.push_back(copy_table([&](int s, int a) { return mdp.row(s, a, h); }));
        out = out.with_step_rows(std::move(steps));
    }
    return out;
}

namespace {

/// Redirects every row (static and per step) of the given pairs to `dest`.
TabularMdp redirect(const TabularMdp& mdp, const std::function<bool(int, int)>& pick, int dest) {
    const int S = mdp.num_states(), A = mdp.num_actions();
    auto table = [&](auto&& row_of) {
        std::vector<SparseRow> rows(static_cast<std::size_t>(S) * A);
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) {
                auto& r = rows[static_cast<std::size_t>(s) * A + a];
                if (pick(s, a)) {
                    r = {{dest, 1.0}};
                } else {
                    auto src = row_of(s, a);
                    r.assign(src.begin(), src.end());
                }
            }
        return rows;
    };
    std::vector<char> term(static_cast<std::size_t>(S), 0);
    for (int s = 0; s < S; ++s) {
        term[s] = mdp.is_terminal(s) ? 1 : 0;
        for (int a = 0; a < A; ++a)
            if (pick(s, a)) term[s] = 0;
    }
    std::vector<double> rewards(mdp.rewards().begin(), mdp.rewards().end());
    TabularMdp out(S, A, mdp.horizon(), mdp.start_state(), table([&](int s, int a) { return mdp.row(s, a); }),
                   std::move(rewards), std::move(term));
    if (mdp.time_varying()) {
        std::vector<std::vector<SparseRow>> steps;
        for (int h = 0; h < mdp.horizon(); ++h)
            steps.push_back(table([&](int s, int a) { return mdp.row(s, a, h); }));
        out = out.with_step_rows(std::move(steps));
    }
    return out;
}

}  // namespace

ImportanceResult importance_value(const TabularMdp& mdp, StateAction sa) {
    if (sa.state < 0 || sa.state >= mdp.num_states() || sa.action < 0 || sa.action >= mdp.num_actions())
        throw std::invalid_argument("importance_value: pair out of range");
    ImportanceResult res;
    res.value = value_iteration(mdp).values.v(0, mdp.start_state());
    const auto sunk = with_sink(mdp);
    const int sink = mdp.num_states();
    const auto removed = redirect(
        sunk, [&](int s, int a) { return s == sa.state && a == sa.action; }, sink);
    res.value_removed = value_iteration(removed).values.v(0, mdp.start_state());
    return res;
}

double significance(const TabularMdp& mdp, int target, int horizon) {
    if (target < 0 || target >= mdp.num_states()) throw std::invalid_argument("significance: target out of range");
    if (horizon == 0) horizon = mdp.horizon();
    if (horizon < 1) throw std::invalid_argument("significance: bad horizon");
    if (mdp.time_varying() && horizon != mdp.horizon())
        throw std::invalid_argument("significance: time-varying model needs its own horizon");
    // First visit absorbs into the sink and pays one unit.
    const auto sunk = with_sink(mdp);
    const int sink = mdp.num_states();
    auto absorbing = redirect(
        sunk, [&](int s, int) { return s == target; }, sink);
    std::vector<double> rewards(static_cast<std::size_t>(sunk.num_states()) * mdp.num_actions(), 0.0);
    for (int a = 0; a < mdp.num_actions(); ++a) rewards[static_cast<std::size_t>(target) * mdp.num_actions() + a] = 1.0;
    absorbing = absorbing.with_rewards(std::move(rewards));
    if (!absorbing.time_varying()) absorbing = absorbing.with_horizon(horizon);
    return value_iteration(absorbing).values.v(0, mdp.start_state());
}

}  // namespace hrl

namespace hrl {

TabularMdp restrict_to(const TabularMdp& mdp, const std::vector<char>& keep) {
    const int S = mdp.num_states(), A = mdp.num_actions();
    if (keep.size() != static_cast<std::size_t>(S)) throw std::invalid_argument("restrict_to: mask has wrong size");
    const auto sunk = with_sink(mdp);
    const int sink = S;
    auto remap = [&](std::span<const Transition> src) {
        SparseRow out;
        double lost = 0.0;
        for (const auto& t : src) {
            if (t.next == sink || !keep[static_cast<std::size_t>(t.next)]) lost += t.prob;
            else out.push_back(t);
        }
        if (lost > 0.0) out.push_back({sink, lost});
        return out;
    };
    std::vector<SparseRow> rows(static_cast<std::size_t>(S + 1) * A);
    std::vector<std::vector<SparseRow>> steps;
    for (int s = 0; s <= S; ++s)
        for (int a = 0; a < A; ++a) rows[static_cast<std::size_t>(s) * A + a] = remap(sunk.row(s, a));
    std::vector<double> rewards(sunk.rewards().begin(), sunk.rewards().end());
    std::vector<char> term(static_cast<std::size_t>(S + 1), 0);
    // A dropped terminal state now leaks into the sink, so it stops being terminal.
    for (int s = 0; s <= S; ++s)
        term[static_cast<std::size_t>(s)] = sunk.is_terminal(s) && (s == S || keep[static_cast<std::size_t>(s)]) ? 1 : 0;
    TabularMdp out(S + 1, A, mdp.horizon(), mdp.start_state(), std::move(rows), std::move(rewards), std::move(term));
    if (mdp.time_varying()) {
        for (int h = 0; h < mdp.horizon(); ++h) {
            std::vector<SparseRow> table(static_cast<std::size_t>(S + 1) * A);
            for (int s = 0; s <= S; ++s)
                for (int a = 0; a < A; ++a) table[static_cast<std::size_t>(s) * A + a] = remap(sunk.row(s, a, h));
            steps.push_back(std::move(table));
        }
        out = out.with_step_rows(std::move(steps));
    }
    return out;
}

}  // namespace hrl
