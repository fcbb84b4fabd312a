#include <benchmark/benchmark.h>

#include "ehh/network.hpp"
#include "ehh/rng.hpp"
#include "ehh/trainer.hpp"

namespace {

ehh::EhhNetwork benchmark_network(int n, int q, int total) {
    ehh::Rng rng(1);
    std::vector<std::vector<double>> offsets(n);
    for (auto& dim : offsets) {
        dim.clear();
        for (int j = 0; j < q; ++j) {
            dim.push_back(static_cast<double>(j) / q);
        }
    }
    ehh::EhhNetwork net = ehh::generate_network(
        ehh::NormalizationParams::identity(n), offsets, total, rng);
    Eigen::VectorXd w(net.node_count() + 1);
    for (int i = 0; i < w.size(); ++i) w(i) = rng.uniform(-1.0, 1.0);
    return net.with_weights(w);
}

Eigen::MatrixXd random_samples(int rows, int cols) {
    ehh::Rng rng(2);
    Eigen::MatrixXd x(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) x(i, j) = rng.uniform();
    }
    return x;
}

void BM_Forward(benchmark::State& state) {
    const auto net = benchmark_network(6, 5, static_cast<int>(state.range(0)));
    ehh::Rng rng(3);
    Eigen::VectorXd x(6);
    for (int i = 0; i < 6; ++i) x(i) = rng.uniform();
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.evaluate(x));
    }
}
BENCHMARK(BM_Forward)->Arg(40)->Arg(70)->Arg(130);

void BM_DataMatrix(benchmark::State& state) {
    const auto net = benchmark_network(6, 5, 70);
    const auto samples = random_samples(static_cast<int>(state.range(0)), 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.data_matrix(samples));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_DataMatrix)->Arg(500)->Arg(2000);

void BM_Prune(benchmark::State& state) {
    auto net = benchmark_network(6, 5, 70);
    Eigen::VectorXd w = net.weights();
    for (int k = 1; k < w.size(); k += 3) w(k) = 0.0;
    net = net.with_weights(w);
    for (auto _ : state) {
        benchmark::DoNotOptimize(net.pruned());
    }
}
BENCHMARK(BM_Prune);

}  // namespace
