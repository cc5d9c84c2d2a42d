#include "hrl/meta_train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hrl/parallel.hpp"
#include "hrl/planning.hpp"

namespace hrl {

void MetaTrainConfig::validate(int num_tasks) const {
    auto positive = [](int v, const char* name) {
        if (v < 1) throw std::invalid_argument(std::string("budget ") + name + " must be positive");
    };
    positive(n_ucbvi, "n_ucbvi");
    positive(n_ts, "n_ts");
    positive(thresh_ts, "thresh_ts");
    positive(n_euler_rf, "n_euler_rf");
    positive(n_rf, "n_rf");
    positive(thresh_rf, "thresh_rf");
    positive(n_ed, "n_ed");
    positive(thresh_ed, "thresh_ed");
    positive(n_euler_el, "n_euler_el");
    positive(n_el, "n_el");
    positive(thresh_el, "thresh_el");
    positive(n_euler_bf, "n_euler_bf");
    positive(n_bf, "n_bf");
    positive(thresh_bf, "thresh_bf");
    auto within = [](int thresh, int budget, const char* name) {
        if (thresh > budget) throw std::invalid_argument(std::string("threshold ") + name + " exceeds its budget");
    };
    within(thresh_ts, n_ts, "thresh_ts");
    within(thresh_rf, n_rf, "thresh_rf");
    within(thresh_ed, n_ed, "thresh_ed");
    within(thresh_el, n_el, "thresh_el");
    within(thresh_bf, n_bf, "thresh_bf");
    if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0,1]");
    if (!(zeta > 0.0)) throw std::invalid_argument("zeta must be positive");
    if (bonus_scale < 0.0) throw std::invalid_argument("bonus scale must be non-negative");
    if (!(failure_prob > 0.0 && failure_prob < 1.0)) throw std::invalid_argument("failure probability must lie in (0,1)");
    if (reference_tasks.empty()) throw std::invalid_argument("at least one reference task is required");
    for (int t : reference_tasks)
        if (t < 0 || t >= num_tasks) throw std::invalid_argument("reference task index out of range");
}

MetaTrainConfig scaled_budgets(const BudgetInputs& in, double scale, MetaTrainConfig out) {
    if (!(scale > 0.0)) throw std::invalid_argument("budget scale must be positive");
    const double S = in.S, A = in.A, H = in.H, T = in.T, K = in.K, L = in.L, C = in.C;
    const double al = in.alpha, be = in.beta, ze = in.zeta, p = in.p;
    auto lg = [](double x) { return std::log(std::max(x, std::exp(1.0))); };
    auto n = [&](double raw) {
        const double v = std::ceil(raw * scale);
        return v >= static_cast<double>(std::numeric_limits<int>::max()) ? std::numeric_limits<int>::max()
                                                                          : std::max(1, static_cast<int>(v));
    };
    const double mz = std::min(al, ze), mb = std::min(be, ze), me = std::min(in.epsilon, in.epsilon0);
    const double l_ts = lg(S * A * H * T / (p * al * mb));
    const double l_el = lg(C * S * A * H * T / (p * al * mb));
    const double l_ed = lg(S * A * H / (p * ze * be));
    out.n_ucbvi = n(H * H * S * A / (mz * mz) * std::pow(lg(H * S * A * T / p), 2));
    out.thresh_ts = n(S * std::max(std::pow(H, 4) / (ze * ze), 1.0 / (be * be)) * l_ts);
    out.n_ts = n(S * std::max(std::pow(H, 5) / (al * ze * ze), H / (al * be * be)) * l_ts +
                 H * H / (mz * mz) * lg(S * A * T / p));
    out.n_euler_rf = n(H * H * std::pow(S, 4) * A / std::min(in.rho * me, ze / C) * std::pow(lg(H * S * A / p), 3));
    out.n_rf = n(std::pow(H, 5) * S * S * A / std::min(in.rho * me * me, ze * ze / C) * lg(A / p));
    out.thresh_ed = n(S / (be * be) * l_ed);
    out.n_ed = n(H * K * S / (ze * be * be) * l_ed + H * H * K * K / (ze * ze) * lg(K / p));
    out.thresh_el = n(L * std::max(std::pow(H, 4) / (ze * ze), 1.0 / (be * be)) * l_el);
    out.n_euler_el = n(C * std::pow(H, 3) * S * S * A / al * std::pow(lg(H * S * A * T / p), 3));
    out.n_el = n(L * std::max(C * std::pow(H, 5) / (al * ze * ze), C * H / (al * be * be)) * l_el +
                 C * C * H * H / (al * al) * lg(S * A * T / p));
    out.thresh_ts = std::min(out.thresh_ts, out.n_ts);
    out.thresh_ed = std::min(out.thresh_ed, out.n_ed);
    out.thresh_el = std::min(out.thresh_el, out.n_el);
    out.n_euler_bf = out.n_euler_el;
    out.n_bf = out.n_el;
    out.thresh_bf = out.thresh_el;
    out.beta = be;
    out.zeta = ze;
    out.failure_prob = p;
    return out;
}

// ---- exit table ------------------------------------------------------------

ExitTable::ExitTable(int num_states, int num_actions, int num_tasks) : S_(num_states), A_(num_actions), T_(num_tasks) {}

std::vector<char> ExitTable::flag_mask() const {
    std::vector<char> m(static_cast<std::size_t>(S_) * A_, 0);
    for (const auto& [sa, rows] : flags_) m[static_cast<std::size_t>(sa.state) * A_ + sa.action] = 1;
    return m;
}

std::vector<StateAction> ExitTable::pairs() const {
    std::vector<StateAction> out;
    for (const auto& [sa, rows] : flags_) out.push_back(sa);
    return out;
}

void ExitTable::flag(StateAction sa) {
    if (sa.state < 0 || sa.state >= S_ || sa.action < 0 || sa.action >= A_)
        throw std::invalid_argument("exit table: pair out of range");
    flags_.try_emplace(sa, std::vector<SparseRow>(static_cast<std::size_t>(T_)));
}

const SparseRow& ExitTable::row(int task, StateAction sa) const {
    return flags_.at(sa).at(static_cast<std::size_t>(task));
}

void ExitTable::set_row(int task, StateAction sa, SparseRow row) {
    auto it = flags_.find(sa);
    if (it == flags_.end()) throw std::invalid_argument("exit table: pair is not flagged");
    if (!row.empty()) normalize_row(row, S_);
    it->second.at(static_cast<std::size_t>(task)) = std::move(row);
}

std::vector<int> MetaTrainState::entrances() const {
    std::vector<int> out{start};
    for (const auto& sa : exits.pairs())
        for (int t = 0; t < exits.num_tasks(); ++t)
            for (const auto& tr : exits.row(t, sa)) out.push_back(tr.next);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// ---- Phase I ---------------------------------------------------------------

Phase1Result task_learning(const TabularMdp& task, const MetaTrainConfig& cfg, std::uint64_t seed, int task_index) {
    QueryCounter counter;
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(task_index), Phase::task_learning);
    const LearnerBudget budget{cfg.n_ucbvi, cfg.bonus_scale, cfg.failure_prob};
    Rng learn_rng = rng.child(0);
    const auto set = run_ucbvi(task, budget, learn_rng, &counter);
    Rng sample_rng = rng.child(1);
    auto samples = sample_policy_returns(task, set.policies, cfg.n_ts, SampleMode::full, sample_rng, &counter);
    samples.model.set_threshold(cfg.thresh_ts);
    return {std::move(samples.model), samples.mean_return(), counter.count()};
}

void run_phase1(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed, MetaTrainState& state) {
    family.check_shape();
    cfg.validate(family.num_tasks());
    const auto& f = family.task(0);
    state = MetaTrainState{};
    state.num_states = f.num_states();
    state.num_actions = f.num_actions();
    state.horizon = f.horizon();
    state.num_tasks = family.num_tasks();
    state.start = f.start_state();
    state.exits = ExitTable(f.num_states(), f.num_actions(), family.num_tasks());
    state.reference = EmpiricalModel(f.num_states(), f.num_actions(), cfg.thresh_rf);
    std::vector<Phase1Result> results(static_cast<std::size_t>(family.num_tasks()));
    parallel_for(family.num_tasks(), [&](int t) { results[static_cast<std::size_t>(t)] = task_learning(family.task(t), cfg, seed, t); });
    for (auto& r : results) {
        state.task_models.push_back(std::move(r.model));
        state.value_estimates.push_back(r.value_estimate);
        state.counters.phase1 += r.timesteps;
    }
    state.phase_completed = 1;
}

// ---- Phase II --------------------------------------------------------------

Phase2Result reward_free(const TabularMdp& task, const MetaTrainConfig& cfg, std::uint64_t seed, int task_index) {
    const int S = task.num_states(), A = task.num_actions(), H2 = 2 * task.horizon();
    const TabularMdp long_task = task.with_horizon(H2);
    const TabularMdp sunk = with_sink(long_task);
    const int sink = S;
    QueryCounter counter;
    std::vector<std::vector<MarkovPolicy>> per_goal(static_cast<std::size_t>(S));
    parallel_for(S, [&](int g) {
        TabularMdp m = sunk;
        for (int a = 0; a < A; ++a) m = m.with_row(g, a, {{sink, 1.0}});
        std::vector<double> rewards(static_cast<std::size_t>(S + 1) * A, 0.0);
        for (int a = 0; a < A; ++a) rewards[static_cast<std::size_t>(g) * A + a] = 1.0;
        Rng rng = make_stream(seed, static_cast<std::uint64_t>(task_index), Phase::reward_free,
                              static_cast<std::uint64_t>(g));
        const auto set = run_euler(m, rewards, {cfg.n_euler_rf, cfg.bonus_scale, cfg.failure_prob}, rng);
        auto& out = per_goal[static_cast<std::size_t>(g)];
        for (const auto& p : set.policies) {
            auto q = p.restricted(S);
            for (int h = 0; h < H2; ++h) q.set(h, g, kUniformAction);
            out.push_back(std::move(q));
        }
    });
    std::vector<MarkovPolicy> pool;
    for (auto& v : per_goal)
        for (auto& p : v) pool.push_back(std::move(p));
    // Goal-reaching episodes run in the environment too.
    counter.add(static_cast<std::int64_t>(S) * cfg.n_euler_rf * H2);
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(task_index), Phase::reward_free, static_cast<std::uint64_t>(S));
    auto samples = sample_policy_returns(long_task, pool, cfg.n_rf, SampleMode::one_step, rng, &counter);
    samples.model.set_threshold(cfg.thresh_rf);

    Phase2Result out;
    out.reference = std::move(samples.model);
    const auto occ = occupancy(long_task, Policy::mixture(std::move(pool)));
    out.mu.assign(static_cast<std::size_t>(S) * A, 0.0);
    for (int h = 0; h < H2; ++h)
        for (int s = 0; s < S; ++s)
            for (int a = 0; a < A; ++a) out.mu[static_cast<std::size_t>(s) * A + a] += occ.at(h, s, a) / H2;
    out.timesteps = counter.count();
    return out;
}

void run_phase2(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed, MetaTrainState& state) {
    if (state.phase_completed < 1) throw PhaseOrderError("phase order: phase 2 needs the phase 1 state");
    cfg.validate(family.num_tasks());
    std::vector<EmpiricalModel> models;
    std::vector<double> mu;
    for (int t : cfg.reference_tasks) {
        auto r = reward_free(family.task(t), cfg, seed, t);
        state.counters.phase2 += r.timesteps;
        models.push_back(std::move(r.reference));
        if (mu.empty()) mu = std::move(r.mu);
    }
    state.reference = models.size() == 1 ? std::move(models.front()) : merge_max_count(models);
    state.reference.set_threshold(cfg.thresh_rf);
    state.mu = std::move(mu);
    state.phase_completed = 2;
}

// ---- BOAT-VI ---------------------------------------------------------------

BoatResult boat_vi(const DynamicsEstimate& reference, std::span<const DynamicsEstimate> tasks,
                   std::span<const double> rewards, int horizon, const std::vector<char>& flagged) {
    const int S = reference.num_states(), A = reference.num_actions(), H = horizon;
    if (H < 1) throw std::invalid_argument("boat_vi: horizon must be positive");
    if (rewards.size() != static_cast<std::size_t>(S) * A) throw std::invalid_argument("boat_vi: reward table has wrong size");
    if (flagged.size() != static_cast<std::size_t>(S) * A) throw std::invalid_argument("boat_vi: flag table has wrong size");
    for (const auto& t : tasks)
        if (t.num_states() != S || t.num_actions() != A) throw std::invalid_argument("boat_vi: estimate shape mismatch");
    BoatResult out{ValueTable(H, S, A), MarkovPolicy(H, S), std::vector<int>(static_cast<std::size_t>(H) * S * A, 0)};
    auto dot = [&](const SparseRow& row, int h) {
        double v = 0.0;
        for (const auto& t : row) v += t.prob * out.values.v(h + 1, t.next);
        return v;
    };
    for (int h = H - 1; h >= 0; --h)
        for (int s = 0; s < S; ++s) {
            double best_q = 0.0;
            int best_a = 0;
            for (int a = 0; a < A; ++a) {
                const std::size_t i = static_cast<std::size_t>(s) * A + a;
                double cont = 0.0;
                int idx = 0;
                if (flagged[i]) {
                    cont = dot(reference.row(s, a), h);
                } else {
                    bool any = !reference.row(s, a).empty();
                    cont = any ? dot(reference.row(s, a), h) : 0.0;
                    for (std::size_t t = 0; t < tasks.size(); ++t) {
                        const auto& row = tasks[t].row(s, a);
                        if (row.empty()) continue;
                        const double v = dot(row, h);
                        if (!any || v > cont) {
                            cont = v;
                            idx = static_cast<int>(t) + 1;
                            any = true;
                        }
                    }
                }
                const double q = rewards[i] + cont;
                out.values.q(h, s, a) = q;
                out.index[(static_cast<std::size_t>(h) * S + s) * A + a] = idx;
                if (a == 0 || q > best_q) {
                    best_q = q;
                    best_a = a;
                }
            }
            out.values.v(h, s) = best_q;
            out.greedy.set(h, s, best_a);
        }
    return out;
}

// ---- Learn-Exit ------------------------------------------------------------

LearnExitResult learn_exit(const TabularMdp& task, StateAction sa, const MetaTrainConfig& cfg, Rng& rng) {
    const int S = task.num_states(), A = task.num_actions();
    if (sa.state < 0 || sa.state >= S || sa.action < 0 || sa.action >= A)
        throw std::invalid_argument("learn_exit: pair out of range");
    const int sink = S;
    TabularMdp m = with_sink(task).with_row(sa.state, sa.action, {{sink, 1.0}});
    std::vector<double> rewards(static_cast<std::size_t>(S + 1) * A, 0.0);
    rewards[static_cast<std::size_t>(sa.state) * A + sa.action] = 1.0;
    QueryCounter counter;
    Rng learn_rng = rng.child(0);
    const auto set = run_euler(m, rewards, {cfg.n_euler_el, cfg.bonus_scale, cfg.failure_prob}, learn_rng, &counter);
    std::vector<MarkovPolicy> pool;
    pool.reserve(set.policies.size());
    for (const auto& p : set.policies) pool.push_back(p.restricted(S));
    Rng sample_rng = rng.child(1);
    auto samples = sample_policy_returns(task, pool, cfg.n_el, SampleMode::full, sample_rng, &counter);
    LearnExitResult out;
    out.samples = samples.model.count(sa.state, sa.action);
    out.timesteps = counter.count();
    if (out.samples < cfg.thresh_el) {
        out.diagnostic = "exit (" + std::to_string(sa.state) + "," + std::to_string(sa.action) +
                         ") unreachable at budget: " + std::to_string(out.samples) + " samples";
        return out;
    }
    samples.model.set_threshold(cfg.thresh_el);
    out.row = samples.model.estimate(sa.state, sa.action);
    return out;
}

// ---- Phase III -------------------------------------------------------------

void run_phase3(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed, MetaTrainState& state) {
    if (state.phase_completed < 2) throw PhaseOrderError("phase order: phase 3 needs the phase 2 state");
    cfg.validate(family.num_tasks());
    const int T = family.num_tasks(), S = state.num_states, A = state.num_actions, H = state.horizon;
    if (T != state.num_tasks) throw std::invalid_argument("phase 3: state was built for a different family");

    std::vector<DynamicsEstimate> task_est;
    for (const auto& m : state.task_models) task_est.push_back(m.estimate());
    for (const auto& sa : state.exits.pairs())
        for (int t = 0; t < T; ++t) task_est[t].set_row(sa.state, sa.action, state.exits.row(t, sa));
    const DynamicsEstimate reference = state.reference.estimate();

    int since_last = 0, t = 0;
    std::uint64_t round = 0;
    while (since_last < T) {
        const auto& task = family.task(t);
        DynamicsEstimate working = reference;
        // An exit this task never reached keeps the reference row.
        for (const auto& sa : state.exits.pairs())
            if (!state.exits.row(t, sa).empty()) working.set_row(sa.state, sa.action, state.exits.row(t, sa));
        const auto boat = boat_vi(working, task_est, task.rewards(), H, state.exits.flag_mask());
        bool found = false;
        const double gap = boat.values.v(0, task.start_state()) - state.value_estimates[static_cast<std::size_t>(t)];
        if (gap > 2.0 * cfg.zeta / 3.0) {
            QueryCounter counter;
            Rng rng = make_stream(seed, static_cast<std::uint64_t>(t), Phase::exit_detection, round);
            EmpiricalModel seen(S, A, cfg.thresh_ed);
            for (int e = 0; e < cfg.n_ed; ++e) {
                Rng ep = rng.child(static_cast<std::uint64_t>(e));
                seen.add(simulate_episode(task, boat.greedy, ep, &counter));
            }
            state.counters.phase3 += counter.count();
            std::vector<StateAction> fresh;
            for (int s = 0; s < S; ++s)
                for (int a = 0; a < A; ++a) {
                    if (state.exits.flagged({s, a}) || !seen.known(s, a)) continue;
                    const auto row = seen.estimate(s, a);
                    for (int u = 0; u < T; ++u) {
                        const auto& other = task_est[static_cast<std::size_t>(u)].row(s, a);
                        if (!other.empty() && tv_distance(row, other) > cfg.beta / 2.0) {
                            fresh.push_back({s, a});
                            break;
                        }
                    }
                }
            for (const auto& sa : fresh) {
                state.exits.flag(sa);
                if (static_cast<int>(state.exits.size()) > S * A)
                    throw std::runtime_error("phase 3 aborted: more exits flagged than state-action pairs");
                for (int u = 0; u < T; ++u) {
                    Rng rng_el = make_stream(seed, static_cast<std::uint64_t>(u), Phase::learn_exit,
                                             static_cast<std::uint64_t>(sa.state) * A + sa.action);
                    auto res = learn_exit(family.task(u), sa, cfg, rng_el);
                    state.counters.learn_exit += res.timesteps;
                    if (!res.diagnostic.empty())
                        state.diagnostics.push_back("task " + std::to_string(u) + ": " + res.diagnostic);
                    state.exits.set_row(u, sa, res.row);
                    task_est[static_cast<std::size_t>(u)].set_row(sa.state, sa.action, res.row);
                }
                found = true;
            }
        }
        since_last = found ? 0 : since_last + 1;
        t = (t + 1) % T;
        ++round;
    }
    state.phase_completed = 3;
}

MetaTrainState meta_train(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed) {
    MetaTrainState state;
    run_phase1(family, cfg, seed, state);
    run_phase2(family, cfg, seed, state);
    run_phase3(family, cfg, seed, state);
    return state;
}

// ---- brute force -----------------------------------------------------------

BruteForceResult brute_force_hierarchy(const TaskFamily& family, const MetaTrainConfig& cfg, std::uint64_t seed) {
    family.check_shape();
    cfg.validate(family.num_tasks());
    const int T = family.num_tasks();
    const auto& f = family.task(0);
    const int S = f.num_states(), A = f.num_actions();
    std::vector<EmpiricalModel> models(static_cast<std::size_t>(T));
    std::vector<std::int64_t> steps(static_cast<std::size_t>(T), 0);
    parallel_for(T, [&](int t) {
        const auto& task = family.task(t);
        const auto sunk = with_sink(task);
        const int sink = S;
        EmpiricalModel model(S, A, cfg.thresh_bf);
        QueryCounter counter;
        for (int s = 0; s < S; ++s) {
            TabularMdp m = sunk;
            for (int a = 0; a < A; ++a) m = m.with_row(s, a, {{sink, 1.0}});
            std::vector<double> rewards(static_cast<std::size_t>(S + 1) * A, 0.0);
            for (int a = 0; a < A; ++a) rewards[static_cast<std::size_t>(s) * A + a] = 1.0;
            Rng rng = make_stream(seed, static_cast<std::uint64_t>(t), Phase::brute_force, static_cast<std::uint64_t>(s));
            Rng learn_rng = rng.child(0);
            const auto set = run_euler(m, rewards, {cfg.n_euler_bf, cfg.bonus_scale, cfg.failure_prob}, learn_rng, &counter);
            for (int a = 0; a < A; ++a) {
                std::vector<MarkovPolicy> pool;
                pool.reserve(set.policies.size());
                for (const auto& p : set.policies) {
                    auto q = p.restricted(S);
                    for (int h = 0; h < q.horizon(); ++h) q.set(h, s, a);
                    pool.push_back(std::move(q));
                }
                Rng sample_rng = rng.child(static_cast<std::uint64_t>(a) + 1);
                const auto samples = sample_policy_returns(task, pool, cfg.n_bf, SampleMode::full, sample_rng, &counter);
                for (const auto& [next, k] : samples.model.counts(s, a)) model.add(s, a, next, k);
            }
        }
        models[static_cast<std::size_t>(t)] = std::move(model);
        steps[static_cast<std::size_t>(t)] = counter.count();
    });
    BruteForceResult out;
    for (auto v : steps) out.timesteps += v;
    for (int s = 0; s < S; ++s)
        for (int a = 0; a < A; ++a) {
            bool hit = false;
            for (int t = 0; t < T && !hit; ++t)
                for (int u = t + 1; u < T && !hit; ++u) {
                    if (!models[t].known(s, a) || !models[u].known(s, a)) continue;
                    hit = tv_distance(models[t].estimate(s, a), models[u].estimate(s, a)) > cfg.beta / 2.0;
                }
            if (hit) out.exits.push_back({s, a});
        }
    return out;
}

}  // namespace hrl
