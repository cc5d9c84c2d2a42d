#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include <json.hpp>

#include "app.hpp"
#include "hrl/envs.hpp"
#include "hrl/io.hpp"
#include "hrl/oracle.hpp"
#include "hrl/parallel.hpp"

namespace hrl::app {

namespace fs = std::filesystem;

namespace {

struct Context {
    Config cfg;
    std::string dir;
    std::uint64_t seed = 0;
    bool plot = true;
    std::string path(const std::string& name) const { return (fs::path(dir) / name).string(); }
};

using Body = int (*)(Context&, RunRecord&, const CommandOptions&, std::ostream&, std::ostream&);

int guarded(const char* name, const CommandOptions& opt, std::ostream& out, std::ostream& err, Body body) {
    RunRecord rec;
    rec.command = name;
    rec.phase = opt.phase;
    std::string dir = opt.out.value_or("out");
    const auto t0 = std::chrono::steady_clock::now();
    int code = 0;
    try {
        Context ctx;
        ctx.cfg = opt.config_path.empty() ? Config::parse("", "<defaults>") : Config::load(opt.config_path);
        if (opt.out) ctx.cfg.set("out", *opt.out);
        dir = ctx.cfg.get_string("out", "out");
        ctx.dir = dir;
        ctx.seed = opt.seed ? *opt.seed : ctx.cfg.get_u64("seed", 0);
        ctx.cfg.set("seed", std::to_string(ctx.seed));
        ctx.plot = opt.plot.value_or(ctx.cfg.get_bool("plot", true));
        rec.seed = ctx.seed;
        rec.config_hash = ctx.cfg.hash();
        fs::create_directories(dir);
        code = body(ctx, rec, opt, out, err);
    } catch (const ConfigError& e) {
        rec.status = "failed";
        rec.failure_cause = std::string("config: ") + e.what();
        err << "error: " << e.what() << '\n';
        code = 2;
    } catch (const PhaseOrderError& e) {
        rec.status = "failed";
        rec.failure_cause = e.what();
        err << "error: " << e.what() << '\n';
        code = 3;
    } catch (const std::exception& e) {
        rec.status = "failed";
        rec.failure_cause = e.what();
        err << "error: " << e.what() << '\n';
        code = 1;
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    try {
        append_run_record(dir, rec);
    } catch (const std::exception& e) {
        err << "error: run record not written: " << e.what() << '\n';
        if (code == 0) code = 1;
    }
    return code;
}

/// Console numbers; the CSVs keep full precision.
std::string brief(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

void check_state_shape(const MetaTrainState& st, const TaskFamily& fam) {
    const auto& f = fam.task(0);
    if (st.num_states != f.num_states() || st.num_actions != f.num_actions() || st.num_tasks != fam.num_tasks())
        throw std::invalid_argument("saved state does not match the configured family");
}

struct Recovery {
    int found = 0, truth = 0;
    bool exact = false;
};

Recovery compare_exits(const std::vector<StateAction>& found, const LatentHierarchy& h) {
    const auto truth = h.all_exits();
    return {static_cast<int>(found.size()), static_cast<int>(truth.size()), found == truth};
}

void write_exits_csv(const std::string& path, const std::vector<StateAction>& found, const LatentHierarchy& h) {
    std::set<StateAction> all(found.begin(), found.end());
    const auto truth = h.all_exits();
    all.insert(truth.begin(), truth.end());
    const std::set<StateAction> f(found.begin(), found.end()), t(truth.begin(), truth.end());
    CsvWriter w(path, {"state", "action", "recovered", "ground_truth"});
    for (const auto& sa : all) w.cell(sa.state).cell(sa.action).cell(f.count(sa) ? 1 : 0).cell(t.count(sa) ? 1 : 0).end_row();
}

// ---- meta-train -----------------------------------------------------------

int meta_train_body(Context& ctx, RunRecord& rec, const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    const auto& cfg = ctx.cfg;
    const auto fam = family_from_config(cfg);
    const auto mt = meta_train_config(cfg);
    const bool brute = cfg.get_bool("meta_train.brute_force", false);
    const std::string state_path = cfg.get_string("meta_train.state", ctx.path("state.txt"));
    cfg.reject_unknown({"", "family", "meta_train"});
    mt.validate(fam.num_tasks());
    if (opt.phase < 0 || opt.phase > 3) throw ConfigError("--phase must be 1, 2 or 3");

    MetaTrainState st;
    if (opt.phase == 0) {
        st = meta_train(fam, mt, ctx.seed);
    } else if (opt.phase == 1) {
        run_phase1(fam, mt, ctx.seed, st);
    } else {
        if (!fs::exists(state_path))
            throw PhaseOrderError("phase order: phase " + std::to_string(opt.phase) + " needs " + state_path);
        st = load_state(state_path);
        check_state_shape(st, fam);
        if (opt.phase == 2)
            run_phase2(fam, mt, ctx.seed, st);
        else
            run_phase3(fam, mt, ctx.seed, st);
    }
    save_state(state_path, st);
    rec.counters = st.counters;
    for (const auto& d : st.diagnostics) err << "note: " << d << '\n';
    out << "meta-train: phase " << st.phase_completed << " complete, state at " << state_path << '\n';
    out << "  steps: phase1 " << st.counters.phase1 << ", phase2 " << st.counters.phase2 << ", phase3 "
        << st.counters.phase3 << ", learn-exit " << st.counters.learn_exit << '\n';

    if (st.phase_completed == 3) {
        const auto found = st.exits.pairs();
        write_exits_csv(ctx.path("exits.csv"), found, fam.hierarchy);
        const auto r = compare_exits(found, fam.hierarchy);
        rec.exits_found = r.found;
        rec.exits_true = r.truth;
        rec.exact_recovery = r.exact ? 1 : 0;
        out << "  exits: " << r.found << " recovered, " << r.truth << " in ground truth, "
            << (r.exact ? "exact" : "MISMATCH") << '\n';
    }
    if (brute) {
        const auto bf = brute_force_hierarchy(fam, mt, ctx.seed);
        rec.counters.brute_force = bf.timesteps;
        write_exits_csv(ctx.path("brute_force_exits.csv"), bf.exits, fam.hierarchy);
        const auto r = compare_exits(bf.exits, fam.hierarchy);
        out << "  brute force: " << bf.timesteps << " steps, " << r.found << " exits, "
            << (r.exact ? "exact" : "MISMATCH") << '\n';
    }
    return 0;
}

// ---- meta-test ------------------------------------------------------------

std::vector<int> resolve_cluster(const Config& cfg, const TabularMdp& target, const LatentHierarchy& h) {
    const std::string key = cfg.get_string("meta_test.cluster", "auto");
    int c = -1;
    if (key == "auto") {
        std::set<int> clusters;
        for (int s = 0; s < target.num_states(); ++s)
            for (int a = 0; a < target.num_actions(); ++a)
                if (target.reward(s, a) > 0.0 && !h.is_exit({s, a})) clusters.insert(h.cluster_of(s));
        if (clusters.size() != 1)
            throw ConfigError("meta_test.cluster=auto needs rewards in exactly one cluster, found " +
                              std::to_string(clusters.size()));
        c = *clusters.begin();
    } else {
        c = cfg.get_int("meta_test.cluster", 0);
        if (c < 0 || c >= h.num_clusters()) throw ConfigError("meta_test.cluster out of range");
    }
    return h.members(c);
}

/// At most `limit` evenly spaced points, always keeping the last one.
PlotSeries thin(std::string label, const std::vector<double>& y, std::size_t limit = 400) {
    PlotSeries s;
    s.label = std::move(label);
    const std::size_t n = y.size();
    const std::size_t stride = std::max<std::size_t>(1, (n + limit - 1) / limit);
    for (std::size_t i = 0; i < n; i += stride) {
        s.x.push_back(static_cast<double>(i + 1));
        s.y.push_back(y[i]);
    }
    if (n && s.x.back() != static_cast<double>(n)) {
        s.x.push_back(static_cast<double>(n));
        s.y.push_back(y.back());
    }
    return s;
}

int meta_test_body(Context& ctx, RunRecord& rec, const CommandOptions&, std::ostream& out, std::ostream&) {
    const auto& cfg = ctx.cfg;
    const auto fam = family_from_config(cfg);
    const auto mtc = meta_test_config(cfg);
    const int task = cfg.get_int("meta_test.task", 0);
    if (task < 0 || task >= fam.num_tasks()) throw ConfigError("meta_test.task out of range");
    const int horizon = cfg.get_int("meta_test.horizon", fam.task(task).horizon());
    const auto target = fam.task(task).with_horizon(horizon);
    const std::string kind = cfg.get_string("meta_test.oracle", "learned");
    const std::string state_path = cfg.get_string("meta_test.state", ctx.path("state.txt"));
    const std::string eps_key = cfg.get_string("meta_test.epsilon0", "auto");
    const int seeds = cfg.get_int("meta_test.seeds", 10);
    const auto zstar = resolve_cluster(cfg, target, fam.hierarchy);
    cfg.reject_unknown({"", "family", "meta_test"});
    if (seeds < 1) throw ConfigError("meta_test.seeds must be positive");
    if (kind != "learned" && kind != "exact") throw ConfigError("meta_test.oracle must be learned or exact");
    mtc.validate(horizon);

    auto exact = HierarchyOracle::exact(target, fam.hierarchy);
    const double eps0 = eps_key == "auto" ? reachability_floor(exact, fam.hierarchy)
                                          : cfg.get_double("meta_test.epsilon0", 0.0);
    std::vector<HierarchyRun> runs(static_cast<std::size_t>(seeds));
    auto run_all = [&](const HierarchyOracle& oracle) {
        parallel_for(seeds, [&](int i) {
            Rng rng = make_stream(ctx.seed, static_cast<std::uint64_t>(i), Phase::meta_test);
            runs[static_cast<std::size_t>(i)] = run_hierarchy_learner(target, oracle, zstar, mtc, rng);
        });
    };
    if (kind == "learned") {
        if (!fs::exists(state_path)) throw std::runtime_error("missing oracle state: " + state_path);
        const auto st = load_state(state_path);
        check_state_shape(st, fam);
        const auto learned = HierarchyOracle::from_state(st, eps0, horizon);
        run_all(learned);
    } else {
        exact.set_epsilon0(eps0);
        run_all(exact);
    }

    const int N = mtc.episodes;
    std::vector<double> mean_regret(static_cast<std::size_t>(N)), mean_cum(static_cast<std::size_t>(N));
    {
        CsvWriter w(ctx.path("regret.csv"), {"seed", "episode", "regret", "cumulative", "timesteps"});
        for (int i = 0; i < seeds; ++i) {
            const auto& r = runs[static_cast<std::size_t>(i)];
            for (int k = 0; k < N; ++k) {
                const auto K = static_cast<std::size_t>(k);
                w.cell(i).cell(k + 1).cell(r.regret[K]).cell(r.cumulative[K]).cell(r.timesteps[K]).end_row();
                mean_regret[K] += r.regret[K] / seeds;
                mean_cum[K] += r.cumulative[K] / seeds;
            }
        }
    }
    {
        CsvWriter w(ctx.path("regret_mean.csv"), {"episode", "mean_regret", "mean_cumulative"});
        for (int k = 0; k < N; ++k)
            w.cell(k + 1).cell(mean_regret[static_cast<std::size_t>(k)]).cell(mean_cum[static_cast<std::size_t>(k)]).end_row();
    }
    const int tail = std::min(N, 100);
    double final_mean = 0.0;
    {
        CsvWriter w(ctx.path("regret_summary.csv"),
                    {"seed", "v_star", "v_hierarchy", "cumulative_regret", "final_regret"});
        for (int i = 0; i < seeds; ++i) {
            const auto& r = runs[static_cast<std::size_t>(i)];
            double f = 0.0;
            for (int k = N - tail; k < N; ++k) f += r.regret[static_cast<std::size_t>(k)];
            f /= tail;
            final_mean += f / seeds;
            w.cell(i).cell(r.v_star).cell(r.v_hierarchy).cell(r.cumulative.back()).cell(f).end_row();
        }
    }
    rec.mean_cumulative_regret = mean_cum.back();
    rec.mean_final_regret = final_mean;
    if (ctx.plot) {
        std::vector<PlotSeries> series;
        for (int i = 0; i < seeds; ++i) series.push_back(thin("seed " + std::to_string(i), runs[static_cast<std::size_t>(i)].cumulative));
        series.push_back(thin("mean", mean_cum));
        write_svg_plot(ctx.path("regret.svg"), "Hierarchy learner, cumulative regret", "episode", "cumulative regret",
                       series);
    }
    out << "meta-test: " << seeds << " seeds x " << N << " episodes, V* " << brief(runs[0].v_star)
        << ", best meta-policy value " << brief(runs[0].v_hierarchy) << '\n';
    out << "  mean cumulative regret " << brief(mean_cum.back()) << ", final-" << tail << " mean regret "
        << brief(final_mean) << '\n';
    return 0;
}

// ---- separation -----------------------------------------------------------

int separation_body(Context& ctx, RunRecord& rec, const CommandOptions&, std::ostream& out, std::ostream&) {
    const auto& cfg = ctx.cfg;
    auto sc = separation_config(cfg);
    sc.root_seed = ctx.seed;
    cfg.reject_unknown({"", "separation"});
    const auto rows = run_separation(sc);

    std::vector<std::string> learners{"flat", "hierarchy"};
    if (sc.reduction) learners.push_back("reduction");
    std::map<std::pair<int, std::string>, double> mean;
    std::map<std::pair<int, std::string>, std::vector<double>> curve;
    {
        CsvWriter w(ctx.path("separation.csv"), {"depth", "horizon", "learner", "seed", "cumulative_regret", "final_regret"});
        for (const auto& r : rows) {
            w.cell(r.depth)
                .cell(sc.horizon_slope * r.depth + sc.horizon_offset)
                .cell(r.learner)
                .cell(r.seed)
                .cell(r.cumulative_regret)
                .cell(r.final_regret)
                .end_row();
            mean[{r.depth, r.learner}] += r.cumulative_regret / sc.seeds;
            auto& c = curve[{r.depth, r.learner}];
            c.resize(r.curve.size(), 0.0);
            for (std::size_t k = 0; k < r.curve.size(); ++k) c[k] += r.curve[k] / sc.seeds;
        }
    }
    {
        std::vector<std::string> header{"depth", "horizon"};
        for (const auto& l : learners) header.push_back(l);
        header.push_back("flat_hierarchy_ratio");
        CsvWriter w(ctx.path("separation_summary.csv"), header);
        for (const int d : sc.depths) {
            w.cell(d).cell(sc.horizon_slope * d + sc.horizon_offset);
            for (const auto& l : learners) w.cell(mean[{d, l}]);
            const double h = mean[{d, "hierarchy"}];
            w.cell(h > 0.0 ? format_double(mean[{d, "flat"}] / h) : std::string("inf"));
            w.end_row();
            out << "W=" << d;
            for (const auto& l : learners) out << "  " << l << " " << brief(mean[{d, l}]);
            out << '\n';
        }
    }
    {
        CsvWriter w(ctx.path("separation_curves.csv"), {"depth", "learner", "episode", "mean_cumulative"});
        for (const int d : sc.depths)
            for (const auto& l : learners) {
                const auto& c = curve[{d, l}];
                for (std::size_t k = 0; k < c.size(); ++k) w.cell(d).cell(l).cell(static_cast<int>(k + 1)).cell(c[k]).end_row();
            }
    }
    if (ctx.plot) {
        std::vector<PlotSeries> series;
        for (const auto& l : learners) {
            PlotSeries s;
            s.label = l;
            for (const int d : sc.depths) {
                s.x.push_back(d);
                s.y.push_back(mean[{d, l}]);
            }
            series.push_back(std::move(s));
        }
        write_svg_plot(ctx.path("separation.svg"), "Mean cumulative regret after " + std::to_string(sc.episodes) + " episodes",
                       "tree depth W", "cumulative regret", series);
    }
    rec.mean_cumulative_regret = mean[{sc.depths.back(), "hierarchy"}];
    return 0;
}

// ---- validate -------------------------------------------------------------

nlohmann::json finite_or_null(double v) { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); }

int validate_body(Context& ctx, RunRecord& rec, const CommandOptions& opt, std::ostream& out, std::ostream&) {
    const auto& cfg = ctx.cfg;
    TaskFamily fam;
    try {
        fam = family_from_config(cfg);
    } catch (const std::invalid_argument& e) {
        // A family that cannot even be assembled is reported like any other violation.
        cfg.reject_unknown({"", "family"});
        const std::string what = std::string("family: ") + e.what();
        if (opt.json)
            out << nlohmann::json{{"ok", false}, {"violations", {what}}}.dump(2) << '\n';
        else
            out << "  VIOLATION: " << what << "\nassumptions violated\n";
        rec.status = "violation";
        rec.failure_cause = what;
        return 1;
    }
    ValidationParams vp;
    vp.beta = cfg.get_double("validation.beta", 0.0);
    vp.rho = cfg.get_double("validation.rho", 0.0);
    vp.delta = cfg.get_double("validation.delta", 0.0);
    vp.index_samples = cfg.get_int("validation.index_samples", vp.index_samples);
    vp.seed = ctx.seed;
    const int cap = cfg.get_int("validation.subset_cap", 2);
    cfg.reject_unknown({"", "family", "validation"});

    const auto rep = validate_family(fam, vp);
    std::vector<std::string> violations = rep.violations;
    CoverageReport cov;
    bool have_cov = false;
    if (fam.hierarchy.K() > 0 && fam.num_tasks() > 1) {
        cov = check_coverage(fam, cap);
        have_cov = true;
    }
    ReachingCertificate reach;
    for (int t = 0; t < fam.num_tasks(); ++t) {
        const auto c = certify_reaching(fam.task(t), fam.hierarchy, fam.task(t).horizon());
        reach.gamma = std::max(reach.gamma, c.gamma);
        reach.width = std::max(reach.width, c.width);
        reach.pairs = c.pairs;
        reach.unreachable = std::max(reach.unreachable, c.unreachable);
    }

    if (opt.json) {
        nlohmann::json j;
        j["family"] = fam.name;
        j["tasks"] = fam.num_tasks();
        j["states"] = fam.task(0).num_states();
        j["ok"] = violations.empty();
        j["violations"] = violations;
        j["notes"] = rep.notes;
        j["beta"] = finite_or_null(rep.beta_min);
        j["rho"] = finite_or_null(rep.rho_min);
        j["delta"] = finite_or_null(rep.delta_min);
        j["c_sampled"] = finite_or_null(rep.c_sampled);
        j["exits"] = fam.hierarchy.K();
        j["entrances"] = fam.hierarchy.L();
        if (have_cov) {
            j["alpha"] = finite_or_null(cov.alpha);
            j["zeta"] = finite_or_null(cov.zeta);
            j["subset_cap"] = cap;
        }
        j["gamma"] = finite_or_null(reach.gamma);
        j["width"] = reach.width;
        out << j.dump(2) << '\n';
    } else {
        out << "family " << fam.name << ": " << fam.num_tasks() << " tasks, " << fam.task(0).num_states()
            << " states, " << fam.hierarchy.K() << " exits, " << fam.hierarchy.L() << " entrances\n";
        out << "  beta " << brief(rep.beta_min) << ", rho " << brief(rep.rho_min) << ", delta "
            << brief(rep.delta_min) << ", sampled C " << brief(rep.c_sampled) << '\n';
        if (have_cov)
            out << "  certified alpha " << brief(cov.alpha) << ", zeta " << brief(cov.zeta)
                << " (subsets up to " << cap << ")\n";
        out << "  reaching: gamma " << brief(reach.gamma) << ", W " << reach.width << '\n';
        for (const auto& n : rep.notes) out << "  note: " << n << '\n';
        for (const auto& v : violations) out << "  VIOLATION: " << v << '\n';
        out << (violations.empty() ? "ok\n" : "assumptions violated\n");
    }
    if (!violations.empty()) {
        rec.status = "violation";
        rec.failure_cause = violations.front();
        return 1;
    }
    return 0;
}

// ---- bench ----------------------------------------------------------------

int bench_body(Context& ctx, RunRecord& rec, const CommandOptions&, std::ostream& out, std::ostream&) {
    const auto& cfg = ctx.cfg;
    const auto fam = family_from_config(cfg);
    const auto mt = meta_train_config(cfg);
    const int seeds = cfg.get_int("bench.seeds", 20);
    cfg.reject_unknown({"", "family", "meta_train", "bench"});
    if (seeds < 1) throw ConfigError("bench.seeds must be positive");
    mt.validate(fam.num_tasks());

    int exact3 = 0, exactbf = 0, cheaper = 0;
    std::int64_t sum3 = 0, sumbf = 0;
    CsvWriter w(ctx.path("bench.csv"), {"seed", "method", "timesteps", "exits_found", "exact"});
    for (int i = 0; i < seeds; ++i) {
        const std::uint64_t seed = ctx.seed + static_cast<std::uint64_t>(i);
        const auto st = meta_train(fam, mt, seed);
        const auto bf = brute_force_hierarchy(fam, mt, seed);
        const auto r3 = compare_exits(st.exits.pairs(), fam.hierarchy);
        const auto rb = compare_exits(bf.exits, fam.hierarchy);
        const auto t3 = st.counters.three_phase_total();
        w.cell(std::to_string(seed)).cell("three_phase").cell(t3).cell(r3.found).cell(r3.exact ? 1 : 0).end_row();
        w.cell(std::to_string(seed)).cell("brute_force").cell(bf.timesteps).cell(rb.found).cell(rb.exact ? 1 : 0).end_row();
        exact3 += r3.exact;
        exactbf += rb.exact;
        cheaper += t3 < bf.timesteps;
        sum3 += t3;
        sumbf += bf.timesteps;
        rec.counters.phase1 += st.counters.phase1;
        rec.counters.phase2 += st.counters.phase2;
        rec.counters.phase3 += st.counters.phase3;
        rec.counters.learn_exit += st.counters.learn_exit;
        rec.counters.brute_force += bf.timesteps;
    }
    out << "bench: " << seeds << " seeds\n";
    out << "  three-phase exact " << exact3 << "/" << seeds << ", mean steps " << sum3 / seeds << '\n';
    out << "  brute force exact " << exactbf << "/" << seeds << ", mean steps " << sumbf / seeds << '\n';
    out << "  three-phase cheaper in " << cheaper << "/" << seeds << " seeds\n";
    rec.exact_recovery = exact3;
    return 0;
}

}  // namespace

int cmd_meta_train(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("meta-train", opt, out, err, meta_train_body);
}
int cmd_meta_test(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("meta-test", opt, out, err, meta_test_body);
}
int cmd_separation(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("separation", opt, out, err, separation_body);
}
int cmd_validate(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("validate", opt, out, err, validate_body);
}
int cmd_bench(const CommandOptions& opt, std::ostream& out, std::ostream& err) {
    return guarded("bench", opt, out, err, bench_body);
}

const char* csv_columns_help() {
    return R"(Output files (under --out):
  run_record.csv        one appended row per run: command, config_hash, seed, phase, status,
                        failure_cause, phase1_steps, phase2_steps, phase3_steps, learn_exit_steps,
                        brute_force_steps, exits_found, exits_true, exact_recovery,
                        mean_cumulative_regret, mean_final_regret
  timing.log            wall time per run (kept out of the CSVs)
  meta-train:
    state.txt           persisted meta-train state, read by later phases and meta-test
    exits.csv           state, action, recovered, ground_truth
    brute_force_exits.csv  same columns, when meta_train.brute_force = true
  meta-test:
    regret.csv          seed, episode, regret, cumulative, timesteps
    regret_mean.csv     episode, mean_regret, mean_cumulative
    regret_summary.csv  seed, v_star, v_hierarchy, cumulative_regret, final_regret
    regret.svg          cumulative regret per seed and mean (unless plotting is off)
  separation:
    separation.csv      depth, horizon, learner, seed, cumulative_regret, final_regret
    separation_summary.csv  depth, horizon, flat, hierarchy[, reduction], flat_hierarchy_ratio
    separation_curves.csv   depth, learner, episode, mean_cumulative
    separation.svg      mean cumulative regret against W, one curve per learner
  bench:
    bench.csv           seed, method, timesteps, exits_found, exact
)";
}

}  // namespace hrl::app
