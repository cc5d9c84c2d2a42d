#include <iostream>

#include <CLI11.hpp>

#include "app.hpp"

int main(int argc, char** argv) {
    using namespace hrl::app;
    CLI::App app{"Hierarchical meta-RL experiments"};
    app.require_subcommand(1);
    app.footer(std::string("\nHRL_THREADS caps the worker threads.\n\n") + csv_columns_help());

    CommandOptions opt;
    std::uint64_t seed = 0;
    std::string out;
    bool plot = false, no_plot = false;

    auto common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", opt.config_path, "config file (sectioned key=value)")->check(CLI::ExistingFile);
        sub->add_option("--seed", seed, "root seed, overrides the config");
        sub->add_option("-o,--out", out, "output directory, overrides the config");
        sub->add_flag("--plot", plot, "write SVG plots");
        sub->add_flag("--no-plot", no_plot, "skip SVG plots");
    };

    auto* mtrain = app.add_subcommand("meta-train", "recover the exits of a task family");
    common(mtrain);
    mtrain->add_option("--phase", opt.phase, "run a single phase (1, 2 or 3) against the saved state")
        ->check(CLI::Range(1, 3));
    auto* mtest = app.add_subcommand("meta-test", "run the hierarchy learner on a target task");
    common(mtest);
    auto* sep = app.add_subcommand("separation", "flat versus hierarchy regret on binary trees");
    common(sep);
    auto* val = app.add_subcommand("validate", "check the family against the structural assumptions");
    common(val);
    val->add_flag("--json", opt.json, "machine readable report");
    auto* bench = app.add_subcommand("bench", "three-phase versus brute-force exit recovery over seeds");
    common(bench);

    CLI11_PARSE(app, argc, argv);

    for (auto* sub : app.get_subcommands()) {
        if (sub->count("--seed")) opt.seed = seed;
        if (sub->count("--out")) opt.out = out;
    }
    if (plot && no_plot) {
        std::cerr << "error: --plot and --no-plot are exclusive\n";
        return 2;
    }
    if (plot) opt.plot = true;
    if (no_plot) opt.plot = false;

    if (mtrain->parsed()) return cmd_meta_train(opt, std::cout, std::cerr);
    if (mtest->parsed()) return cmd_meta_test(opt, std::cout, std::cerr);
    if (sep->parsed()) return cmd_separation(opt, std::cout, std::cerr);
    if (val->parsed()) return cmd_validate(opt, std::cout, std::cerr);
    return cmd_bench(opt, std::cout, std::cerr);
}
