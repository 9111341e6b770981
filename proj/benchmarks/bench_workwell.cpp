#include <benchmark/benchmark.h>

#include "workwell/evalstats.hpp"
#include "workwell/rng.hpp"
#include "workwell/scheduler.hpp"
#include "workwell/simengine.hpp"
#include "workwell/synthgen.hpp"

using namespace workwell;

static void BM_RngUniform(benchmark::State& state) {
    Rng rng(42);
    double acc = 0.0;
    for (auto _ : state) {
        acc += rng.uniform();
        benchmark::DoNotOptimize(acc);
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_RngUniform);

static void BM_GenerateCohort(benchmark::State& state) {
    CohortSpec spec;
    for (const auto& ref : group_reference_table()) {
        spec.groups.push_back(GroupCohortSpec{ref.group, static_cast<int>(state.range(0)), -1.0, 0.3});
    }
    for (auto _ : state) {
        auto cohort = generate_cohort(spec, RngState{7});
        benchmark::DoNotOptimize(cohort.data());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 10);
}
BENCHMARK(BM_GenerateCohort)->Arg(100)->Arg(1000);

static void BM_QUpdate(benchmark::State& state) {
    QTable table(9, 8);
    LearningParams params{0.1, 0.9, 0.1, 1.0};
    Rng rng(3);
    int s = 0;
    for (auto _ : state) {
        int a = rng.uniform_int(8);
        int s2 = rng.uniform_int(9);
        q_update(table, s, a, rng.uniform(-1.0, 1.0), s2, params);
        s = s2;
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QUpdate);

static void BM_TrainPolicy(benchmark::State& state) {
    TabularMdp mdp;
    mdp.state_count = 5;
    mdp.action_count = 3;
    mdp.transition = [](int s, int a) { return (s + a + 1) % 5; };
    mdp.reward = [](int s, int a) { return 0.1 * s - 0.05 * a; };
    mdp.episode_length = 20;
    LearningParams params{0.1, 0.9, 0.1, 1.0};
    for (auto _ : state) {
        auto table = train_policy(mdp, params, static_cast<int>(state.range(0)), RngState{11});
        benchmark::DoNotOptimize(table.at(0, 0));
    }
}
BENCHMARK(BM_TrainPolicy)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

static void BM_ScheduleExact(benchmark::State& state) {
    Rng rng(5);
    AssignmentInstance inst(4, static_cast<int>(state.range(0)), 2, 1);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < state.range(0); ++j) {
            for (int k = 0; k < 2; ++k) inst.set_weight(i, j, k, rng.uniform(0.0, 3.0));
        }
    }
    for (auto _ : state) {
        auto result = schedule_assignments(inst);
        benchmark::DoNotOptimize(result.objective);
    }
}
BENCHMARK(BM_ScheduleExact)->Arg(6)->Arg(10)->Arg(12);

static void BM_ScheduleGreedy(benchmark::State& state) {
    Rng rng(5);
    AssignmentInstance inst(200, static_cast<int>(state.range(0)), 1, 1);
    for (int i = 0; i < 200; ++i) {
        for (int j = 0; j < state.range(0); ++j) inst.set_weight(i, j, 0, rng.uniform(0.0, 3.0));
    }
    for (auto _ : state) {
        auto result = schedule_assignments(inst);
        benchmark::DoNotOptimize(result.objective);
    }
}
BENCHMARK(BM_ScheduleGreedy)->Arg(20)->Arg(48);

static void BM_AnovaOneway(benchmark::State& state) {
    Rng rng(9);
    std::vector<std::vector<double>> groups(4);
    for (auto& g : groups) {
        g.resize(static_cast<std::size_t>(state.range(0)));
        for (auto& v : g) v = rng.uniform(-5.0, 5.0);
    }
    for (auto _ : state) {
        auto result = anova_oneway(groups);
        benchmark::DoNotOptimize(result.f_statistic);
    }
}
BENCHMARK(BM_AnovaOneway)->Arg(100)->Arg(10000);

static void BM_OlsFit(benchmark::State& state) {
    Rng rng(13);
    std::vector<RegressionRow> rows(static_cast<std::size_t>(state.range(0)));
    for (auto& row : rows) {
        row.productivity = rng.uniform(-10.0, 10.0);
        row.satisfaction = rng.uniform(1.0, 5.0);
        row.outcome = 2.0 + 0.5 * row.productivity + 1.5 * row.satisfaction + 0.1 * rng.gaussian();
    }
    for (auto _ : state) {
        auto fit = ols_fit(rows);
        benchmark::DoNotOptimize(fit.alpha_hat);
    }
}
BENCHMARK(BM_OlsFit)->Arg(1000)->Arg(10000);

static void BM_RunScenario(benchmark::State& state) {
    ScenarioConfig config = default_scenario();
    config.ticks = state.range(0);
    config.health.mode = HealthWeightMode::Fixed;
    config.objective.calibrate = false;
    for (auto _ : state) {
        auto artifacts = run_scenario(config);
        benchmark::DoNotOptimize(artifacts.log.size());
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * 20 * 2);
}
BENCHMARK(BM_RunScenario)->Arg(20)->Arg(100)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
