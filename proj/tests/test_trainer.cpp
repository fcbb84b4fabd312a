#include <doctest.h>

#include <cmath>

#include "ehh/serialization.hpp"
#include "ehh/trainer.hpp"
#include "support/oracles.hpp"

using ehh::EhhNetwork;
using ehh::generate_initial;
using ehh::generate_network;
using ehh::quantile_offsets;
using ehh::Rng;
using ehh::TrainConfig;
using ehh::TrainState;

namespace {

// Small planted problem: the targets come from a hand-built network, so a
// zero training cost is attainable. Corner samples pin the fitted
// normalizer to the identity, keeping the planted hinges representable.
struct PlantedProblem {
    EhhNetwork truth;
    Eigen::MatrixXd samples;
    Eigen::VectorXd targets;
};

PlantedProblem planted_problem(Rng& rng, int samples, double noise = 0.0) {
    std::vector<ehh::SourceNodeSpec> sources = {{0, 0.0}, {1, 0.0}, {2, 0.0}};
    std::vector<ehh::IntermediateNodeSpec> inters = {{0, 1}, {3, 2}};
    Eigen::VectorXd w(6);
    w << 0.3, 1.0, -2.0, 0.5, 2.0, -1.5;
    PlantedProblem p{EhhNetwork(ehh::NormalizationParams::identity(3),
                                sources, inters, w),
                     oracle::random_matrix(rng, samples, 3),
                     Eigen::VectorXd()};
    p.samples.row(0).setZero();
    p.samples.row(1).setOnes();
    p.targets.resize(samples);
    for (int i = 0; i < samples; ++i) {
        p.targets(i) = p.truth.evaluate(p.samples.row(i).transpose());
        if (noise > 0.0) p.targets(i) += rng.normal(noise);
    }
    return p;
}

TrainConfig planted_config(std::uint64_t seed) {
    TrainConfig cfg;
    cfg.q = 1;
    cfg.total_neurons = 6;
    cfg.zeta_grid = {0.0};  // plain least squares; the cost is then the RSS
    cfg.zeta_scale_by_std = false;
    cfg.max_cycles = 10;
    cfg.cost_tolerance = 1e-12;
    cfg.seed = seed;
    return cfg;
}

TrainState state_for(const EhhNetwork& net, const Eigen::VectorXd& weights,
                     const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                     double lambda) {
    TrainState st{net.with_weights(weights), lambda, 0.0, 0, {}};
    st.cost = ehh::cost(st.network, weights, x, y, lambda);
    return st;
}

}  // namespace

TEST_CASE("uniform samples give evenly spaced quantile offsets") {
    Rng rng(71);
    const Eigen::MatrixXd samples = oracle::random_matrix(rng, 100000, 1);
    const auto result = quantile_offsets(samples, 4);
    REQUIRE(result.offsets.size() == 1);
    REQUIRE(result.offsets[0].size() == 4);
    const std::vector<double> expected = {0.0, 0.25, 0.5, 0.75};
    for (int j = 1; j < 4; ++j) {
        CHECK(result.offsets[0][j] ==
              doctest::Approx(expected[j]).epsilon(0.02 / expected[j]));
    }
    CHECK(result.offsets[0][0] == 0.0);
}

TEST_CASE("q=1 keeps only the zero offset") {
    Rng rng(72);
    const auto result =
        quantile_offsets(oracle::random_matrix(rng, 50, 3), 1);
    for (const auto& dim : result.offsets) {
        CHECK(dim == std::vector<double>{0.0});
    }
}

TEST_CASE("a constant dimension degenerates") {
    Eigen::MatrixXd samples(20, 2);
    samples.col(0).setLinSpaced(20, 0.0, 1.0);
    samples.col(1).setConstant(0.4);
    CHECK_THROWS_AS(quantile_offsets(samples, 4), ehh::DegenerateQuantiles);
    const auto relaxed = quantile_offsets(samples, 4, true);
    CHECK(relaxed.offsets[1] == std::vector<double>{0.0, 0.4});
    CHECK_FALSE(relaxed.warnings.empty());
}

TEST_CASE("benchmark-sized generation") {
    Rng rng(73);
    std::vector<std::vector<double>> offsets(6);
    for (auto& dim : offsets) {
        dim = {0.0, 0.2, 0.4, 0.6, 0.8};
    }
    const EhhNetwork net = generate_network(
        ehh::NormalizationParams::identity(6), offsets, 70, rng);
    CHECK(net.source_count() == 30);
    CHECK(net.intermediates().size() == 40);
    CHECK(net.validate().ok());
    CHECK(net.validate().warnings.empty());  // no duplicate min-sets
}

TEST_CASE("budget equal to the source count generates trivially") {
    Rng rng(74);
    const EhhNetwork net = generate_network(
        ehh::NormalizationParams::identity(2), {{0.0}, {0.0}}, 2, rng);
    CHECK(net.intermediates().empty());
}

TEST_CASE("one input variable stalls on any intermediate") {
    Rng rng(75);
    CHECK_THROWS_AS(
        generate_network(ehh::NormalizationParams::identity(1),
                         {{0.0, 0.3, 0.6}}, 4, rng),
        ehh::GenerationStall);
}

TEST_CASE("initial state carries lasso weights over a valid structure") {
    Rng data_rng(76);
    const PlantedProblem p = planted_problem(data_rng, 200, 0.05);
    TrainConfig cfg;
    cfg.q = 2;
    cfg.total_neurons = 10;
    cfg.seed = 5;
    Rng rng(cfg.seed);
    const TrainState st = generate_initial(cfg, rng, p.samples, p.targets);
    CHECK(st.network.node_count() == 10);
    CHECK(st.network.has_weights());
    CHECK(st.network.validate().ok());
    CHECK(st.history.size() == 1);
    CHECK(st.cost == ehh::cost(st.network, st.network.weights(), p.samples,
                               p.targets, st.lambda));
}

TEST_CASE("cost reduces to y'y at zero weights") {
    Rng rng(77);
    const EhhNetwork net = oracle::random_network(rng, 3, 1, 2);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 50, 3);
    const Eigen::VectorXd y = oracle::random_vector(rng, 50);
    const Eigen::VectorXd zero =
        Eigen::VectorXd::Zero(net.node_count() + 1);
    CHECK(ehh::cost(net, zero, x, y, 2.0) == y.squaredNorm());
}

TEST_CASE("cost at lambda zero equals the least-squares residual") {
    Rng rng(78);
    const EhhNetwork net = oracle::random_network(rng, 3, 2, 4);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 120, 3);
    const Eigen::VectorXd y = oracle::random_vector(rng, 120);
    const Eigen::MatrixXd z = net.data_matrix(x);
    const Eigen::VectorXd ls =
        (z.transpose() * z).ldlt().solve(z.transpose() * y);
    const double rss = (y - z * ls).squaredNorm();
    CHECK(ehh::cost(net, ls, x, y, 0.0) ==
          doctest::Approx(rss).epsilon(1e-12));
}

TEST_CASE("cost agrees with the lasso objective on its own solution") {
    Rng rng(79);
    const EhhNetwork net = oracle::random_network(rng, 4, 2, 6);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 150, 4);
    const Eigen::VectorXd y = oracle::random_vector(rng, 150);
    const double lambda = 0.75;
    const auto sol = ehh::lasso_admm(net.data_matrix(x), y, lambda);
    const double j = ehh::cost(net, sol.weights, x, y, lambda);
    CHECK(std::abs(j - sol.objective) <= 1e-10 * (1.0 + sol.objective));
}

TEST_CASE("only one valid pair exists in a three-node network") {
    std::vector<ehh::SourceNodeSpec> sources = {{0, 0.0}, {1, 0.0}};
    std::vector<ehh::IntermediateNodeSpec> inters = {{0, 1}};
    const EhhNetwork net(ehh::NormalizationParams::identity(2), sources,
                         inters);
    Rng rng(80);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 60, 2);
    const Eigen::VectorXd y = oracle::random_vector(rng, 60);
    Eigen::VectorXd w(4);
    w << 0.1, 1.0, 1.0, 1.0;
    TrainState st = state_for(net, w, x, y, 0.0);
    ehh::structure_step_column(st, 2, x, y);
    CHECK(st.network.intermediates()[0].parent1 == 0);
    CHECK(st.network.intermediates()[0].parent2 == 1);
}

TEST_CASE("an optimal incumbent is kept with its cost") {
    // Targets generated by the network itself: the incumbent pair already
    // has zero residual, so nothing may move.
    Rng rng(81);
    const EhhNetwork base = oracle::random_network(rng, 4, 1, 4);
    const Eigen::VectorXd w =
        oracle::random_weights(rng, base.node_count() + 1);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 100, 4);
    const EhhNetwork net = base.with_weights(w);
    Eigen::VectorXd y(100);
    for (int i = 0; i < 100; ++i) y(i) = net.evaluate(x.row(i).transpose());

    for (int j = net.source_count(); j < net.node_count(); ++j) {
        TrainState st = state_for(base, w, x, y, 0.0);
        const auto before = st.network.intermediates()[j - 4];
        const double cost_before = st.cost;
        ehh::structure_step_column(st, j, x, y);
        const auto after = st.network.intermediates()[j - 4];
        CHECK(before.parent1 == after.parent1);
        CHECK(before.parent2 == after.parent2);
        CHECK(st.cost == cost_before);
    }
}

TEST_CASE("column step matches the exhaustive argmin") {
    Rng rng(82);
    for (int trial = 0; trial < 25; ++trial) {
        const int n = 3 + rng.uniform_int(2);
        const EhhNetwork base =
            oracle::random_network(rng, n, 2, 3 + rng.uniform_int(4));
        const Eigen::VectorXd w =
            oracle::random_weights(rng, base.node_count() + 1, 0.2);
        const Eigen::MatrixXd x = oracle::random_matrix(rng, 80, n);
        const Eigen::VectorXd y = oracle::random_vector(rng, 80, -2.0, 2.0);
        const double lambda = rng.uniform(0.0, 0.5);
        const int node =
            base.source_count() +
            rng.uniform_int(static_cast<int>(base.intermediates().size()));

        const auto expected = oracle::exhaustive_best_pair(
            base.with_weights(w), node, x, y, lambda);
        REQUIRE(expected.parent1 >= 0);
        TrainState st = state_for(base, w, x, y, lambda);
        ehh::structure_step_column(st, node, x, y);
        const auto got = st.network.intermediates()[node - base.source_count()];
        CHECK(got.parent1 == expected.parent1);
        CHECK(got.parent2 == expected.parent2);
    }
}

TEST_CASE("element step never beats the column step") {
    Rng rng(83);
    for (int trial = 0; trial < 50; ++trial) {
        const int n = 3 + rng.uniform_int(2);
        const EhhNetwork base =
            oracle::random_network(rng, n, 2, 3 + rng.uniform_int(3));
        const Eigen::VectorXd w =
            oracle::random_weights(rng, base.node_count() + 1, 0.2);
        const Eigen::MatrixXd x = oracle::random_matrix(rng, 70, n);
        const Eigen::VectorXd y = oracle::random_vector(rng, 70, -2.0, 2.0);
        const int node =
            base.source_count() +
            rng.uniform_int(static_cast<int>(base.intermediates().size()));

        TrainState col = state_for(base, w, x, y, 0.1);
        TrainState elem = col;
        ehh::structure_step_column(col, node, x, y);
        ehh::structure_step_element(elem, node, x, y);
        CHECK(col.cost <= elem.cost * (1.0 + 1e-12) + 1e-12);
    }
}

TEST_CASE("element step keeps a unique valid pair") {
    std::vector<ehh::SourceNodeSpec> sources = {{0, 0.0}, {1, 0.0}};
    std::vector<ehh::IntermediateNodeSpec> inters = {{0, 1}};
    const EhhNetwork net(ehh::NormalizationParams::identity(2), sources,
                         inters);
    Rng rng(84);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 40, 2);
    const Eigen::VectorXd y = oracle::random_vector(rng, 40);
    Eigen::VectorXd w(4);
    w << 0.0, 0.5, 0.5, 0.5;
    TrainState st = state_for(net, w, x, y, 0.0);
    ehh::structure_step_element(st, 2, x, y);
    CHECK(st.network.intermediates()[0].parent1 == 0);
    CHECK(st.network.intermediates()[0].parent2 == 1);
}

TEST_CASE("two element sweeps never increase the cost") {
    Rng rng(85);
    const EhhNetwork base = oracle::random_network(rng, 4, 2, 5);
    const Eigen::VectorXd w =
        oracle::random_weights(rng, base.node_count() + 1);
    const Eigen::MatrixXd x = oracle::random_matrix(rng, 90, 4);
    const Eigen::VectorXd y = oracle::random_vector(rng, 90, -2.0, 2.0);
    TrainState st = state_for(base, w, x, y, 0.05);
    double prev = st.cost;
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (int j = base.source_count(); j < base.node_count(); ++j) {
            ehh::structure_step_element(st, j, x, y);
        }
        CHECK(st.cost <= prev);
        prev = st.cost;
    }
}

TEST_CASE("training drives a planted problem to zero cost") {
    Rng data_rng(86);
    const PlantedProblem p = planted_problem(data_rng, 400);
    double best = std::numeric_limits<double>::infinity();
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const TrainState st =
            ehh::train(planted_config(seed), p.samples, p.targets);
        best = std::min(best, st.cost);
    }
    CHECK(best <= 1e-6);
}

TEST_CASE("zero cycles returns the initial state") {
    Rng data_rng(87);
    const PlantedProblem p = planted_problem(data_rng, 150, 0.1);
    TrainConfig cfg = planted_config(3);
    cfg.max_cycles = 0;
    const TrainState st = ehh::train(cfg, p.samples, p.targets);
    CHECK(st.cycles_completed == 0);
    CHECK(st.history.size() == 1);
    CHECK(st.network.node_count() == cfg.total_neurons);
}

TEST_CASE("cost history is non-increasing cycle over cycle") {
    Rng data_rng(88);
    for (int seed = 0; seed < 5; ++seed) {
        const PlantedProblem p = planted_problem(data_rng, 250, 0.1);
        TrainConfig cfg;
        cfg.q = 2;
        cfg.total_neurons = 12;
        cfg.max_cycles = 6;
        cfg.seed = 100 + seed;
        const TrainState st = ehh::train(cfg, p.samples, p.targets);
        for (std::size_t i = 1; i < st.history.size(); ++i) {
            CHECK(st.history[i].cost <= st.history[i - 1].cost);
        }
    }
}

TEST_CASE("termination is a local optimum over single-column changes") {
    // With a fixed penalty, a stagnated run must admit no parent-pair swap
    // that still lowers the cost (up to solver noise).
    Rng data_rng(91);
    const PlantedProblem p = planted_problem(data_rng, 300, 0.05);
    TrainConfig cfg;
    cfg.q = 2;
    cfg.total_neurons = 10;
    cfg.zeta_grid = {0.0};
    cfg.zeta_scale_by_std = false;
    cfg.max_cycles = 50;
    cfg.cost_tolerance = 1e-13;
    cfg.seed = 21;
    const TrainState st = ehh::train(cfg, p.samples, p.targets);
    REQUIRE(st.cycles_completed < cfg.max_cycles);  // stagnated, not capped

    const double j_final = st.cost;
    for (int node = st.network.source_count();
         node < st.network.node_count(); ++node) {
        const auto best = oracle::exhaustive_best_pair(
            st.network, node, p.samples, p.targets, st.lambda);
        if (best.parent1 < 0) continue;
        std::vector<ehh::IntermediateNodeSpec> inters =
            st.network.intermediates();
        inters[node - st.network.source_count()] = best;
        const EhhNetwork swapped(st.network.normalization(),
                                 st.network.sources(), inters,
                                 st.network.weights());
        const double j_swapped = ehh::cost(swapped, st.network.weights(),
                                           p.samples, p.targets, st.lambda);
        CHECK(j_swapped >= j_final - 1e-9 * (1.0 + j_final));
    }

    // And the weight block is at its least-squares optimum.
    const Eigen::MatrixXd z = st.network.data_matrix(p.samples);
    const Eigen::VectorXd ls =
        (z.transpose() * z).ldlt().solve(z.transpose() * p.targets);
    const double j_ls = ehh::cost(st.network, ls, p.samples, p.targets, 0.0);
    CHECK(j_final <= j_ls + 1e-6 * (1.0 + j_ls));
}

TEST_CASE("identical seeds produce bit-identical models") {
    Rng data_rng(89);
    const PlantedProblem p = planted_problem(data_rng, 200, 0.1);
    TrainConfig cfg;
    cfg.q = 2;
    cfg.total_neurons = 10;
    cfg.max_cycles = 4;
    cfg.seed = 11;
    const TrainState a = ehh::train(cfg, p.samples, p.targets);
    const TrainState b = ehh::train(cfg, p.samples, p.targets);
    CHECK(ehh::model_to_string(a.network) == ehh::model_to_string(b.network));
    CHECK(a.cost == b.cost);
}

TEST_CASE("element mode trains end to end") {
    Rng data_rng(90);
    const PlantedProblem p = planted_problem(data_rng, 200, 0.1);
    TrainConfig cfg;
    cfg.q = 2;
    cfg.total_neurons = 10;
    cfg.max_cycles = 4;
    cfg.mode = TrainConfig::Mode::kElement;
    cfg.seed = 12;
    const TrainState st = ehh::train(cfg, p.samples, p.targets);
    for (std::size_t i = 1; i < st.history.size(); ++i) {
        CHECK(st.history[i].cost <= st.history[i - 1].cost);
    }
}

TEST_CASE("config validation catches bad budgets") {
    TrainConfig cfg;
    cfg.q = 2;
    cfg.total_neurons = 3;  // below n * q for n = 2
    CHECK_THROWS_AS(cfg.validate(2), ehh::InvalidConfig);
    cfg.total_neurons = 4;
    CHECK_NOTHROW(cfg.validate(2));
    cfg.zeta_grid.clear();
    CHECK_THROWS_AS(cfg.validate(2), ehh::InvalidConfig);
}
