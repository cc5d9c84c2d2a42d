#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <string>

#include "hrl/envs.hpp"
#include "hrl/estimate.hpp"
#include "hrl/planning.hpp"
#include "hrl/random.hpp"

namespace hrl {

namespace {

std::string pair_str(int s, int a) { return "(" + std::to_string(s) + "," + std::to_string(a) + ")"; }

bool rows_equal(std::span<const Transition> x, std::span<const Transition> y) {
    return std::equal(x.begin(), x.end(), y.begin(), y.end());
}

}  // namespace

ValidationReport validate_family(const TaskFamily& family, const ValidationParams& params) {
    ValidationReport rep;
    family.check_shape();
    const auto& hier = family.hierarchy;
    const auto& f = family.task(0);
    const int S = f.num_states(), A = f.num_actions(), T = family.num_tasks();

    if (T == 1 && hier.K() > 0) rep.violations.push_back("single-task family: exits cannot vary across tasks");

    rep.beta_min = std::numeric_limits<double>::infinity();
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            const bool exit = hier.is_exit({s, a});
            bool varies = false;
            for (int t = 1; t < T; ++t) varies |= !rows_equal(f.row(s, a), family.task(t).row(s, a));
            if (!exit) {
                if (varies) rep.violations.push_back("non-exit pair " + pair_str(s, a) + " varies across tasks");
                for (const auto& tr : f.row(s, a))
                    if (hier.cluster_of(tr.next) != hier.cluster_of(s)) {
                        rep.violations.push_back("non-exit pair " + pair_str(s, a) + " leaves its cluster");
                        break;
                    }
                continue;
            }
            if (!varies) rep.violations.push_back("exit " + pair_str(s, a) + " never varies across tasks");
            for (int t = 0; t < T; ++t) {
                for (const auto& tr : family.task(t).row(s, a))
                    if (!hier.is_entrance(tr.next)) {
                        rep.violations.push_back("exit " + pair_str(s, a) + " reaches non-entrance state " +
                                                 std::to_string(tr.next) + " in task " + std::to_string(t));
                        break;
                    }
                for (int u = t + 1; u < T; ++u) {
                    const auto p = family.task(t).row(s, a), q = family.task(u).row(s, a);
                    if (rows_equal(p, q)) continue;
                    rep.beta_min = std::min(rep.beta_min, tv_distance(p, q));
                }
                const auto row = family.task(t).row(s, a);
                if (row.size() == 1 && row[0].next == s)
                    rep.notes.push_back("exit " + pair_str(s, a) + " bumps in task " + std::to_string(t) +
                                        "; its state is declared an entrance");
            }
        }
    if (!std::isfinite(rep.beta_min)) rep.beta_min = 0.0;
    if (hier.K() > 0 && rep.beta_min < params.beta)
        rep.violations.push_back("beta-separation " + std::to_string(rep.beta_min) + " below " + std::to_string(params.beta));

    // rho: every entrance is reachable in every task.
    rep.rho_min = 1.0;
    for (int e : hier.all_entrances())
        for (int t = 0; t < T; ++t) {
            const double sig = significance(family.task(t), e);
            rep.rho_min = std::min(rep.rho_min, sig);
            if (sig < params.rho)
                rep.violations.push_back("entrance " + std::to_string(e) + " has significance " + std::to_string(sig) +
                                         " in task " + std::to_string(t));
        }

    // delta: every exit is reachable from every entrance of its cluster inside the cluster.
    rep.delta_min = 1.0;
    for (int c = 0; c < hier.num_clusters(); ++c) {
        std::vector<char> keep(static_cast<std::size_t>(S), 0);
        for (int s : hier.members(c)) keep[static_cast<std::size_t>(s)] = 1;
        for (int t = 0; t < T; ++t) {
            const auto local = restrict_to(family.task(t), keep);
            for (int x : hier.entrances(c))
                for (auto e : hier.exits(c)) {
                    const double sig = significance(local.with_start(x), e.state);
                    rep.delta_min = std::min(rep.delta_min, sig);
                    if (sig < params.delta)
                        rep.violations.push_back("exit " + pair_str(e.state, e.action) + " has significance " +
                                                 std::to_string(sig) + " from entrance " + std::to_string(x) +
                                                 " in task " + std::to_string(t));
                }
        }
    }

    // C: sampled index functions against each task's reachability.
    std::vector<std::vector<double>> task_sig(static_cast<std::size_t>(T), std::vector<double>(static_cast<std::size_t>(S)));
    for (int t = 0; t < T; ++t)
        for (int s = 0; s < S; ++s) task_sig[t][s] = significance(family.task(t), s);
    Rng rng = make_stream(params.seed, 0, Phase::validation);
    const int H = f.horizon();
    rep.c_sampled = 1.0;
    for (int r = 0; r < params.index_samples; ++r) {
        std::vector<std::vector<SparseRow>> steps(static_cast<std::size_t>(H));
        for (int h = 0; h < H; ++h) {
            auto& table = steps[static_cast<std::size_t>(h)];
            table.resize(static_cast<std::size_t>(S) * A);
            for (int s = 0; s < S; ++s)
                for (int a = 0; a < A; ++a) {
                    const auto row = family.task(rng.uniform_int(T)).row(s, a);
                    table[static_cast<std::size_t>(s) * A + a].assign(row.begin(), row.end());
                }
        }
        const auto mixed = f.with_step_rows(std::move(steps));
        for (int s = 0; s < S; ++s) {
            const double num = significance(mixed, s);
            if (num <= 0.0) continue;
            for (int t = 0; t < T; ++t) {
                const double den = task_sig[t][s];
                const double ratio = den > 0.0 ? num / den : std::numeric_limits<double>::infinity();
                rep.c_sampled = std::max(rep.c_sampled, ratio);
            }
        }
    }
    if (!std::isfinite(rep.c_sampled))
        rep.notes.push_back("some exit configuration makes a state unreachable in a task (C is unbounded)");
    return rep;
}

CoverageReport check_coverage(const TaskFamily& family, int subset_cap) {
    family.check_shape();
    const auto exits = family.hierarchy.all_exits();
    const int K = static_cast<int>(exits.size()), T = family.num_tasks();
    if (subset_cap < 1) throw std::invalid_argument("check_coverage: subset cap must be positive");
    subset_cap = std::min(subset_cap, K);
    long long total = 0, binom = 1;
    for (int k = 1; k <= subset_cap; ++k) {
        binom = binom * (K - k + 1) / k;
        total += binom;
        if (total > 200000) throw std::invalid_argument("check_coverage: subset cap exceeded (too many subsets)");
    }
    CoverageReport rep;
    rep.important_task.assign(static_cast<std::size_t>(K), 0);
    rep.importance_gap.assign(static_cast<std::size_t>(K), -std::numeric_limits<double>::infinity());
    std::vector<double> vstar(static_cast<std::size_t>(T));
    for (int t = 0; t < T; ++t) vstar[t] = value_iteration(family.task(t)).values.v(0, family.task(t).start_state());
    for (int i = 0; i < K; ++i)
        for (int t = 0; t < T; ++t) {
            const double gap = importance_value(family.task(t), exits[i]).gap();
            if (gap > rep.importance_gap[i]) {
                rep.importance_gap[i] = gap;
                rep.important_task[i] = t;
            }
        }
    rep.alpha = K ? *std::min_element(rep.importance_gap.begin(), rep.importance_gap.end()) : 0.0;

    rep.zeta = std::numeric_limits<double>::infinity();
    std::vector<int> idx;
    auto visit = [&](auto&& self, int from) -> void {
        if (!idx.empty()) {
            double best = -std::numeric_limits<double>::infinity();
            for (int t = 0; t < T; ++t) {
                TabularMdp m = family.task(t);
                for (int i : idx) {
                    const auto row = family.task(rep.important_task[i]).row(exits[i].state, exits[i].action);
                    m = m.with_row(exits[i].state, exits[i].action, SparseRow(row.begin(), row.end()));
                }
                best = std::max(best, value_iteration(m).values.v(0, m.start_state()) - vstar[t]);
            }
            rep.zeta = std::min(rep.zeta, best);
            ++rep.subsets_checked;
        }
        if (static_cast<int>(idx.size()) == subset_cap) return;
        for (int i = from; i < K; ++i) {
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
        }
    };
    visit(visit, 0);
    if (!std::isfinite(rep.zeta)) rep.zeta = 0.0;
    return rep;
}

}  // namespace hrl
