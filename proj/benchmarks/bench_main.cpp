#include <benchmark/benchmark.h>

#include "hrl/envs.hpp"
#include "hrl/learners.hpp"
#include "hrl/meta_test.hpp"
#include "hrl/meta_train.hpp"
#include "hrl/oracle.hpp"
#include "hrl/planning.hpp"

using namespace hrl;

namespace {

const TaskFamily& four_room(int H) {
    static const TaskFamily f20 = make_four_room_family(six_task_four_room_specs(20));
    static const TaskFamily f45 = make_four_room_family(six_task_four_room_specs(45));
    return H == 20 ? f20 : f45;
}

}  // namespace

static void BM_ValueIterationFourRoom(benchmark::State& state) {
    const auto& m = four_room(static_cast<int>(state.range(0))).task(0);
    for (auto _ : state) benchmark::DoNotOptimize(value_iteration(m).values.v(0, 0));
}
BENCHMARK(BM_ValueIterationFourRoom)->Arg(20)->Arg(45);

static void BM_ValueIterationTree(benchmark::State& state) {
    BinaryTreeSpec spec;
    spec.depth = static_cast<int>(state.range(0));
    spec.horizon = 3 * spec.depth + 3;
    const auto env = make_binary_tree(spec, TreeVariant::full);
    for (auto _ : state) benchmark::DoNotOptimize(value_iteration(env.mdp).values.v(0, 0));
    state.counters["states"] = env.mdp.num_states();
}
BENCHMARK(BM_ValueIterationTree)->DenseRange(4, 10, 2);

static void BM_BoatVi(benchmark::State& state) {
    const auto& fam = four_room(20);
    std::vector<DynamicsEstimate> tasks;
    for (const auto& m : fam.tasks) tasks.push_back(DynamicsEstimate::from_mdp(m));
    const auto& ref = tasks.front();
    const std::vector<double> rewards(fam.task(0).rewards().begin(), fam.task(0).rewards().end());
    std::vector<char> flagged(rewards.size(), 0);
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::span<const DynamicsEstimate> use(tasks.data(), n);
    for (auto _ : state) benchmark::DoNotOptimize(boat_vi(ref, use, rewards, 20, flagged).values.v(0, 0));
}
BENCHMARK(BM_BoatVi)->Arg(1)->Arg(3)->Arg(6);

static void BM_UcbviEpisodes(benchmark::State& state) {
    const auto& m = four_room(20).task(0);
    const int episodes = static_cast<int>(state.range(0));
    std::uint64_t seed = 0;
    for (auto _ : state) {
        Rng rng(seed++);
        benchmark::DoNotOptimize(run_ucbvi(m, {episodes, 0.02, 0.05}, rng).timesteps);
    }
    state.SetItemsProcessed(state.iterations() * episodes);
}
BENCHMARK(BM_UcbviEpisodes)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

static void BM_OracleGoalReaching(benchmark::State& state) {
    const auto& fam = four_room(45);
    for (auto _ : state) {
        // Fresh oracle each time so the cache does not answer.
        const auto o = HierarchyOracle::exact(fam.task(0), fam.hierarchy);
        benchmark::DoNotOptimize(o.goal_reaching(0, {11, 1}, 0)->value_at(0));
    }
}
BENCHMARK(BM_OracleGoalReaching);

static void BM_SurrogateBuild(benchmark::State& state) {
    const auto& fam = four_room(45);
    const auto o = HierarchyOracle::exact(fam.task(0), fam.hierarchy);
    MetaTestConfig cfg;
    cfg.h_eff = 3;
    cfg.width = 5;
    const auto cluster = fam.hierarchy.members(3);
    for (auto _ : state) {
        const SurrogateMdp sur(fam.task(0), o, cluster, cfg);
        benchmark::DoNotOptimize(sur.exact_model().num_states());
    }
}
BENCHMARK(BM_SurrogateBuild)->Unit(benchmark::kMillisecond);

static void BM_MetaTrain(benchmark::State& state) {
    const auto& fam = four_room(20);
    std::uint64_t seed = 0;
    for (auto _ : state) benchmark::DoNotOptimize(meta_train(fam, MetaTrainConfig{}, seed++).exits.size());
}
BENCHMARK(BM_MetaTrain)->Unit(benchmark::kSecond)->Iterations(1);

BENCHMARK_MAIN();
