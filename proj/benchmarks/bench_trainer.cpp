#include <benchmark/benchmark.h>

#include "ehh/lasso.hpp"
#include "ehh/narendra_li.hpp"
#include "ehh/narx.hpp"
#include "ehh/trainer.hpp"

namespace {

struct BenchmarkProblem {
    Eigen::MatrixXd phi;
    Eigen::VectorXd target;
};

const BenchmarkProblem& benchmark_problem() {
    static const BenchmarkProblem problem = [] {
        ehh::NarendraLiOptions options;
        ehh::Rng rng(4);
        const auto data = ehh::narendra_li_generate(options, rng);
        auto [phi, target] =
            ehh::build_regressors(data.train, ehh::narendra_li_spec());
        return BenchmarkProblem{std::move(phi), std::move(target)};
    }();
    return problem;
}

void BM_LassoSolve(benchmark::State& state) {
    const auto& p = benchmark_problem();
    ehh::TrainConfig cfg;
    cfg.q = 5;
    cfg.total_neurons = 70;
    cfg.seed = 9;
    ehh::Rng rng(cfg.seed);
    const ehh::TrainState st =
        ehh::generate_initial(cfg, rng, p.phi, p.target);
    const Eigen::MatrixXd z = st.network.data_matrix(p.phi);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            ehh::lasso_admm(z, p.target, st.lambda));
    }
}
BENCHMARK(BM_LassoSolve)->Unit(benchmark::kMillisecond);

void BM_StructureColumn(benchmark::State& state) {
    const auto& p = benchmark_problem();
    ehh::TrainConfig cfg;
    cfg.q = 5;
    cfg.total_neurons = 70;
    cfg.seed = 9;
    ehh::Rng rng(cfg.seed);
    const ehh::TrainState initial =
        ehh::generate_initial(cfg, rng, p.phi, p.target);
    const int node = static_cast<int>(state.range(0));
    for (auto _ : state) {
        ehh::TrainState st = initial;
        ehh::structure_step_column(st, node, p.phi, p.target);
        benchmark::DoNotOptimize(st.cost);
    }
}
BENCHMARK(BM_StructureColumn)->Arg(35)->Arg(55)->Arg(69)
    ->Unit(benchmark::kMillisecond);

void BM_TrainCycle(benchmark::State& state) {
    const auto& p = benchmark_problem();
    ehh::TrainConfig cfg;
    cfg.q = 5;
    cfg.total_neurons = 70;
    cfg.max_cycles = 1;
    cfg.seed = 9;
    for (auto _ : state) {
        benchmark::DoNotOptimize(ehh::train(cfg, p.phi, p.target));
    }
}
BENCHMARK(BM_TrainCycle)->Unit(benchmark::kMillisecond);

}  // namespace
