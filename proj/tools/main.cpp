#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehh/anova.hpp"
#include "ehh/csv.hpp"
#include "ehh/metrics.hpp"
#include "ehh/model_selection.hpp"
#include "ehh/narendra_li.hpp"
#include "ehh/narx.hpp"
#include "ehh/serialization.hpp"
#include "ehh/trainer.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes, one per error class.
constexpr int kExitInternal = 1;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitSpec = 4;
constexpr int kExitTrain = 5;
constexpr int kExitIo = 6;
constexpr int kExitNumeric = 7;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const ehh::IoError*>(&e)) return kExitIo;
    if (dynamic_cast<const ehh::NumericOverflow*>(&e)) return kExitNumeric;
    if (dynamic_cast<const ehh::TrainError*>(&e)) return kExitTrain;
    if (dynamic_cast<const ehh::DimensionMismatch*>(&e)) return kExitSpec;
    if (dynamic_cast<const ehh::DataError*>(&e)) return kExitData;
    return kExitInternal;
}

std::uint64_t fnv1a64_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ehh::IoError("cannot open '" + path + "'");
    std::uint64_t h = 1469598103934665603ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<unsigned char>(buf[i]);
            h *= 1099511628211ULL;
        }
        if (!in) break;
    }
    return h;
}

std::string hex64(std::uint64_t v) {
    char buf[19];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(v));
    return buf;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ehh::IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw ehh::IoError("write to '" + path + "' failed");
}

// ---------------------------------------------------------------------------
// Run settings: config file defaults, command-line flags win.
// ---------------------------------------------------------------------------

struct GridItem {
    int q = 0;
    int extra = 0;  // M = n * q + extra
};

struct RunSettings {
    ehh::NarxSpec narx{3, 3, false};
    ehh::TrainConfig train;
    int restarts = 10;
    std::vector<GridItem> grid;

    RunSettings() {
        train.q = 5;
        train.max_cycles = 20;
    }
    int extra_neurons = 40;
};

GridItem parse_grid_item(const std::string& text) {
    const auto plus = text.find('+');
    if (plus == std::string::npos) {
        throw ehh::InvalidConfig("grid item '" + text +
                                 "' is not of the form q+extra, e.g. 5+40");
    }
    try {
        return {std::stoi(text.substr(0, plus)),
                std::stoi(text.substr(plus + 1))};
    } catch (const std::exception&) {
        throw ehh::InvalidConfig("grid item '" + text + "' is not numeric");
    }
}

void apply_config_file(RunSettings& s, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ehh::IoError("cannot open config '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ehh::DataError(std::string("config is not valid JSON: ") +
                             e.what());
    }
    if (doc.contains("narx")) {
        const auto& nx = doc["narx"];
        s.narx.output_lags = nx.value("output_lags", s.narx.output_lags);
        s.narx.input_lags = nx.value("input_lags", s.narx.input_lags);
        s.narx.include_current_input =
            nx.value("include_current_input", s.narx.include_current_input);
    }
    s.train.q = doc.value("q", s.train.q);
    s.extra_neurons = doc.value("extra_neurons", s.extra_neurons);
    if (doc.contains("zeta_grid")) {
        s.train.zeta_grid = doc["zeta_grid"].get<std::vector<double>>();
    }
    s.train.zeta_scale_by_std =
        doc.value("zeta_scale_by_std", s.train.zeta_scale_by_std);
    s.train.neuron_cost = doc.value("neuron_cost", s.train.neuron_cost);
    if (doc.contains("admm")) {
        const auto& a = doc["admm"];
        s.train.admm.rho = a.value("rho", s.train.admm.rho);
        s.train.admm.abs_tol = a.value("abs_tol", s.train.admm.abs_tol);
        s.train.admm.rel_tol = a.value("rel_tol", s.train.admm.rel_tol);
        s.train.admm.max_iter = a.value("max_iter", s.train.admm.max_iter);
        s.train.admm.over_relaxation =
            a.value("over_relaxation", s.train.admm.over_relaxation);
    }
    s.train.max_cycles = doc.value("max_cycles", s.train.max_cycles);
    s.train.cost_tolerance =
        doc.value("cost_tolerance", s.train.cost_tolerance);
    if (doc.contains("mode")) {
        const std::string mode = doc["mode"].get<std::string>();
        if (mode == "column") {
            s.train.mode = ehh::TrainConfig::Mode::kColumn;
        } else if (mode == "element") {
            s.train.mode = ehh::TrainConfig::Mode::kElement;
        } else {
            throw ehh::InvalidConfig("mode must be 'column' or 'element'");
        }
    }
    s.train.seed = doc.value("seed", s.train.seed);
    s.restarts = doc.value("restarts", s.restarts);
    if (doc.contains("grid")) {
        s.grid.clear();
        for (const auto& item : doc["grid"]) {
            s.grid.push_back(parse_grid_item(item.get<std::string>()));
        }
    }
}

json settings_to_json(const RunSettings& s) {
    json out;
    out["narx"] = {{"output_lags", s.narx.output_lags},
                   {"input_lags", s.narx.input_lags},
                   {"include_current_input", s.narx.include_current_input}};
    out["q"] = s.train.q;
    out["extra_neurons"] = s.extra_neurons;
    out["zeta_grid"] = s.train.zeta_grid;
    out["zeta_scale_by_std"] = s.train.zeta_scale_by_std;
    out["neuron_cost"] = s.train.neuron_cost;
    out["admm"] = {{"rho", s.train.admm.rho},
                   {"abs_tol", s.train.admm.abs_tol},
                   {"rel_tol", s.train.admm.rel_tol},
                   {"max_iter", s.train.admm.max_iter},
                   {"over_relaxation", s.train.admm.over_relaxation}};
    out["max_cycles"] = s.train.max_cycles;
    out["cost_tolerance"] = s.train.cost_tolerance;
    out["mode"] = s.train.mode == ehh::TrainConfig::Mode::kColumn
                      ? "column"
                      : "element";
    out["seed"] = s.train.seed;
    out["restarts"] = s.restarts;
    json grid = json::array();
    for (const auto& g : s.grid) {
        grid.push_back(std::to_string(g.q) + "+" + std::to_string(g.extra));
    }
    out["grid"] = std::move(grid);
    return out;
}

std::string regressor_name(const ehh::NarxSpec& spec, int index) {
    if (index < spec.output_lags) {
        return "y(k-" + std::to_string(index + 1) + ")";
    }
    int c = index - spec.output_lags;
    if (spec.include_current_input) {
        if (c == 0) return "u(k)";
        --c;
    }
    return "u(k-" + std::to_string(c + 1) + ")";
}

struct ParameterCounts {
    int nonzero_weights = 0;
    int with_offsets = 0;
    int with_structure = 0;
};

ParameterCounts count_parameters(const ehh::EhhNetwork& net) {
    ParameterCounts c;
    for (Eigen::Index k = 0; k < net.weights().size(); ++k) {
        if (net.weights()(k) != 0.0) ++c.nonzero_weights;
    }
    c.with_offsets = c.nonzero_weights + net.source_count();
    c.with_structure =
        c.with_offsets +
        2 * static_cast<int>(net.intermediates().size());
    return c;
}

// ---------------------------------------------------------------------------
// gen-benchmark
// ---------------------------------------------------------------------------

int cmd_gen_benchmark(const std::string& out_dir, std::uint64_t seed,
                      int train_length, int test_length,
                      double noise_variance, bool noisy_test) {
    ehh::NarendraLiOptions options;
    options.train_length = train_length;
    options.test_length = test_length;
    options.noise_variance = noise_variance;
    options.noisy_test = noisy_test;
    ehh::Rng rng(seed);
    const ehh::BenchmarkData data = ehh::narendra_li_generate(options, rng);

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::string train_path =
        (fs::path(out_dir) / "narendra_li_train.csv").string();
    const std::string test_path =
        (fs::path(out_dir) / "narendra_li_test.csv").string();
    ehh::save_csv(train_path, data.train);
    ehh::save_csv(test_path, data.test);

    json manifest;
    manifest["command"] = "gen-benchmark";
    manifest["seed"] = seed;
    manifest["train_length"] = train_length;
    manifest["test_length"] = test_length;
    manifest["noise_variance"] = noise_variance;
    manifest["noisy_test"] = noisy_test;
    manifest["files"] = {
        {{"path", train_path}, {"fnv1a64", hex64(fnv1a64_file(train_path))}},
        {{"path", test_path}, {"fnv1a64", hex64(fnv1a64_file(test_path))}}};
    write_text((fs::path(out_dir) / "manifest.json").string(),
               manifest.dump(2) + "\n");

    std::cout << "wrote " << train_length << "-row train and " << test_length
              << "-row test records to " << out_dir << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// train
// ---------------------------------------------------------------------------

struct RestartOutcome {
    int restart = 0;
    std::uint64_t seed = 0;
    ehh::TrainState state;
    double selection_score = 0.0;  // free-run VAF (higher wins) or -GCV
    bool simulated = false;
    std::string note;
};

double training_gcv(const ehh::TrainState& state, const Eigen::MatrixXd& phi,
                    const Eigen::VectorXd& target, double neuron_cost) {
    return ehh::gcv(state.network, state.network.weights(), phi, target,
                    neuron_cost);
}

int cmd_train(const RunSettings& settings, const std::string& data_path,
              const std::string& test_path, const std::string& out_dir) {
    const auto t0 = std::chrono::steady_clock::now();
    const ehh::IoData data = ehh::load_csv(data_path);
    const auto [phi, target] = ehh::build_regressors(data, settings.narx);
    const int n = settings.narx.regressor_dim();

    std::optional<ehh::IoData> test;
    if (!test_path.empty()) test = ehh::load_csv(test_path);

    std::vector<GridItem> grid = settings.grid;
    if (grid.empty()) grid.push_back({settings.train.q, settings.extra_neurons});

    json sweep_log = json::array();
    GridItem chosen = grid.front();
    if (grid.size() > 1) {
        double best_gcv = 0.0;
        bool have = false;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            ehh::TrainConfig cfg = settings.train;
            cfg.q = grid[g].q;
            cfg.total_neurons = n * grid[g].q + grid[g].extra;
            cfg.seed = ehh::derive_seed(settings.train.seed, 1000 + g);
            json row = {{"q", grid[g].q}, {"extra", grid[g].extra}};
            try {
                const ehh::TrainState st = ehh::train(cfg, phi, target);
                const double score =
                    training_gcv(st, phi, target, cfg.neuron_cost);
                row["gcv"] = score;
                if (!have || score < best_gcv) {
                    best_gcv = score;
                    chosen = grid[g];
                    have = true;
                }
            } catch (const ehh::Error& e) {
                row["error"] = e.what();
            }
            sweep_log.push_back(std::move(row));
        }
        if (!have) throw ehh::TrainError("every grid setting failed");
        std::cout << "grid sweep selected q=" << chosen.q
                  << " extra=" << chosen.extra << "\n";
    }

    ehh::TrainConfig cfg = settings.train;
    cfg.q = chosen.q;
    cfg.total_neurons = n * chosen.q + chosen.extra;

    json restart_log = json::array();
    std::optional<RestartOutcome> best;
    for (int r = 0; r < settings.restarts; ++r) {
        RestartOutcome outcome;
        outcome.restart = r;
        outcome.seed = settings.restarts == 1
                           ? settings.train.seed
                           : ehh::derive_seed(settings.train.seed, r);
        ehh::TrainConfig run_cfg = cfg;
        run_cfg.seed = outcome.seed;
        try {
            outcome.state = ehh::train(run_cfg, phi, target);
        } catch (const ehh::Error& e) {
            restart_log.push_back({{"restart", r},
                                   {"seed", outcome.seed},
                                   {"error", e.what()}});
            continue;  // keep whatever other restarts produce
        }

        json row = {{"restart", r},
                    {"seed", outcome.seed},
                    {"cycles", outcome.state.cycles_completed},
                    {"cost", outcome.state.cost},
                    {"active_neurons", outcome.state.network.node_count()}};
        if (test) {
            try {
                const int lag = settings.narx.max_lag();
                const ehh::SimResult sim = ehh::simulate_free_run(
                    outcome.state.network, test->u, test->y.head(lag),
                    settings.narx);
                outcome.selection_score = ehh::vaf(
                    sim.simulated.tail(sim.simulated.size() - lag),
                    test->y.tail(test->y.size() - lag));
                outcome.simulated = true;
                row["free_run_vaf"] = outcome.selection_score;
            } catch (const ehh::Error& e) {
                outcome.selection_score = -1.0;
                outcome.note = e.what();
                row["simulation_error"] = e.what();
            }
        } else {
            outcome.selection_score =
                -training_gcv(outcome.state, phi, target, cfg.neuron_cost);
            row["gcv"] = -outcome.selection_score;
        }
        restart_log.push_back(std::move(row));
        if (!best || outcome.selection_score > best->selection_score) {
            best = std::move(outcome);
        }
    }
    if (!best) throw ehh::TrainError("every restart failed");

    std::error_code ec;
    fs::create_directories(out_dir, ec);
    const std::string model_path = (fs::path(out_dir) / "model.json").string();
    ehh::save_model(model_path, best->state.network, settings.narx);

    std::ostringstream cycles;
    for (const auto& rec : best->state.history) {
        json line = {{"cycle", rec.cycle},
                     {"cost", rec.cost},
                     {"active_neurons", rec.active_neurons},
                     {"lambda", rec.lambda},
                     {"wall_seconds", rec.wall_seconds}};
        cycles << line.dump() << "\n";
    }
    const std::string cycles_path =
        (fs::path(out_dir) / "cycles.jsonl").string();
    write_text(cycles_path, cycles.str());

    RunSettings resolved = settings;
    resolved.train = cfg;
    json manifest;
    manifest["command"] = "train";
    manifest["seed"] = settings.train.seed;
    manifest["config"] = settings_to_json(resolved);
    manifest["data"] = {{"path", data_path},
                        {"fnv1a64", hex64(fnv1a64_file(data_path))}};
    if (!test_path.empty()) {
        manifest["test_data"] = {{"path", test_path},
                                 {"fnv1a64", hex64(fnv1a64_file(test_path))}};
    }
    if (!sweep_log.empty()) manifest["grid_sweep"] = sweep_log;
    manifest["restarts"] = restart_log;
    manifest["selected_restart"] = best->restart;
    manifest["model"] = {{"path", model_path},
                         {"fnv1a64", hex64(fnv1a64_file(model_path))}};
    manifest["cycle_log"] = cycles_path;
    json metrics;
    metrics["final_cost"] = best->state.cost;
    metrics["cycles"] = best->state.cycles_completed;
    metrics["active_neurons"] = best->state.network.node_count();
    if (best->simulated) metrics["free_run_vaf"] = best->selection_score;
    {
        const Eigen::VectorXd fit =
            best->state.network.data_matrix(phi) *
            best->state.network.weights();
        metrics["training_one_step_vaf"] = ehh::vaf(fit, target);
    }
    manifest["metrics"] = std::move(metrics);
    manifest["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    write_text((fs::path(out_dir) / "manifest.json").string(),
               manifest.dump(2) + "\n");

    std::cout << "selected restart " << best->restart << " of "
              << settings.restarts << ": cost " << best->state.cost
              << ", neurons " << best->state.network.node_count();
    if (best->simulated) {
        std::cout << ", free-run VAF " << best->selection_score;
    }
    std::cout << "\nmodel written to " << model_path << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// eval
// ---------------------------------------------------------------------------

ehh::NarxSpec resolve_narx(const std::optional<ehh::NarxSpec>& from_model,
                           const RunSettings& settings, bool config_given) {
    if (from_model) return *from_model;
    if (config_given) return settings.narx;
    throw ehh::SpecMismatch(
        "the model carries no lag metadata; pass --config with a narx block");
}

int cmd_eval(const RunSettings& settings, bool config_given,
             const std::string& model_path, const std::string& data_path,
             const std::string& out_path) {
    std::optional<ehh::NarxSpec> model_narx;
    const ehh::EhhNetwork net = ehh::load_model(model_path, &model_narx);
    const ehh::NarxSpec narx = resolve_narx(model_narx, settings, config_given);
    const ehh::IoData data = ehh::load_csv(data_path);

    const auto [phi, target] = ehh::build_regressors(data, narx);
    const Eigen::VectorXd one_step = ehh::predict_one_step(net, data, narx);
    const double one_step_vaf = ehh::vaf(one_step, target);
    const ehh::RmseResult one_step_rmse = ehh::rmse(one_step, target);

    const int lag = narx.max_lag();
    ehh::SimResult sim = ehh::simulate_free_run(net, data.u,
                                                data.y.head(lag), narx);
    const Eigen::VectorXd sim_tail =
        sim.simulated.tail(sim.simulated.size() - lag);
    const Eigen::VectorXd y_tail = data.y.tail(data.y.size() - lag);
    sim.vaf = ehh::vaf(sim_tail, y_tail);
    const ehh::RmseResult sim_rmse = ehh::rmse(sim_tail, y_tail);
    sim.rmse = sim_rmse.linear;
    sim.rmse_db = sim_rmse.db;

    const ParameterCounts params = count_parameters(net);

    json report;
    report["model"] = model_path;
    report["data"] = data_path;
    report["one_step"] = {{"vaf", one_step_vaf},
                          {"rmse", one_step_rmse.linear},
                          {"rmse_db", one_step_rmse.db}};
    report["free_run"] = {{"vaf", sim.vaf},
                          {"rmse", sim.rmse},
                          {"rmse_db", sim.rmse_db}};
    report["parameters"] = {{"nonzero_weights", params.nonzero_weights},
                            {"with_offsets", params.with_offsets},
                            {"with_structure", params.with_structure}};
    report["active_neurons"] = net.node_count();

    std::cout << "one-step : VAF " << one_step_vaf << ", RMSE "
              << one_step_rmse.linear << " (" << one_step_rmse.db << " dB)\n"
              << "free-run : VAF " << sim.vaf << ", RMSE " << sim.rmse << " ("
              << sim.rmse_db << " dB)\n"
              << "parameters: " << params.nonzero_weights
              << " nonzero weights; " << params.with_offsets
              << " with offsets; " << params.with_structure
              << " with structure indices\n";
    if (!out_path.empty()) write_text(out_path, report.dump(2) + "\n");
    return 0;
}

// ---------------------------------------------------------------------------
// anova
// ---------------------------------------------------------------------------

int cmd_anova(const RunSettings& settings, bool config_given,
              const std::string& model_path, const std::string& data_path,
              int top_k, const std::string& out_path) {
    std::optional<ehh::NarxSpec> model_narx;
    const ehh::EhhNetwork net = ehh::load_model(model_path, &model_narx);
    const ehh::NarxSpec narx = resolve_narx(model_narx, settings, config_given);
    const ehh::IoData data = ehh::load_csv(data_path);
    const auto [phi, target] = ehh::build_regressors(data, narx);

    const ehh::AnovaReport report =
        ehh::anova_importance(net, phi, target, settings.train.neuron_cost);
    const auto ranked = report.by_sigma();
    const int limit = top_k > 0
                          ? std::min<int>(top_k, ranked.size())
                          : static_cast<int>(ranked.size());

    std::ostringstream table;
    table << "rank,regressors,sigma,gcv_without\n";
    std::cout << "  # | regressors                         | sigma      | "
                 "\\GCV\n";
    for (int i = 0; i < limit; ++i) {
        const auto& entry = ranked[i];
        std::string names;
        for (std::size_t v = 0; v < entry.variables.size(); ++v) {
            if (v) names += ", ";
            names += regressor_name(narx, entry.variables[v]);
        }
        std::printf("%3d | %-34s | %-10.5g | %-10.5g%s\n", i + 1,
                    names.c_str(), entry.sigma, entry.gcv_without,
                    entry.singular_refit ? " (singular refit)" : "");
        table << i + 1 << ",\"" << names << "\"," << entry.sigma << ','
              << entry.gcv_without << "\n";
    }
    if (!out_path.empty()) write_text(out_path, table.str());
    return 0;
}

// ---------------------------------------------------------------------------
// export
// ---------------------------------------------------------------------------

int cmd_export(const RunSettings& settings, bool config_given,
               const std::string& model_path, const std::string& data_path,
               const std::string& out_path, long window) {
    std::optional<ehh::NarxSpec> model_narx;
    const ehh::EhhNetwork net = ehh::load_model(model_path, &model_narx);
    const ehh::NarxSpec narx = resolve_narx(model_narx, settings, config_given);
    const ehh::IoData data = ehh::load_csv(data_path);

    std::ofstream out(out_path);
    if (!out) throw ehh::IoError("cannot open '" + out_path + "' for writing");
    out.precision(17);
    out << "k,y,y_s\n";
    if (data.y.size() > 0) {
        const int lag = narx.max_lag();
        const ehh::SimResult sim =
            ehh::simulate_free_run(net, data.u, data.y.head(lag), narx);
        long first = 0;
        if (window > 0 && window < sim.simulated.size()) {
            first = sim.simulated.size() - window;
        }
        for (long k = first; k < sim.simulated.size(); ++k) {
            out << (k + 1) << ',' << data.y(k) << ',' << sim.simulated(k)
                << '\n';
        }
    }
    if (!out) throw ehh::IoError("write to '" + out_path + "' failed");
    std::cout << "wrote " << out_path << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Hinging-hyperplane DAG networks for nonlinear system "
                 "identification"};
    app.require_subcommand(1);

    RunSettings settings;
    std::string config_path, data_path, test_path, model_path, out_path;
    std::string mode_flag, grid_flag;
    std::int64_t seed_flag = -1;
    int restarts_flag = -1, cycles_flag = -1, top_k = 5;
    long window = 0;

    // gen-benchmark
    auto* gen = app.add_subcommand("gen-benchmark",
                                   "Generate the two-state benchmark record");
    std::string gen_out = "bench";
    std::uint64_t gen_seed = 1;
    int train_length = 2000, test_length = 200;
    double noise_variance = 0.1;
    bool noisy_test = false;
    gen->add_option("--out", gen_out, "output directory");
    gen->add_option("--seed", gen_seed, "generator seed");
    gen->add_option("--train-length", train_length, "training record length");
    gen->add_option("--test-length", test_length, "test record length");
    gen->add_option("--noise-variance", noise_variance,
                    "training output noise variance");
    gen->add_flag("--noisy-test", noisy_test, "add noise to the test output");

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON settings file");
        cmd->add_option("--data", data_path, "input/output CSV")->required();
    };

    // train
    auto* train_cmd = app.add_subcommand("train", "Fit a model to a record");
    add_common(train_cmd);
    train_cmd->add_option("--test-data", test_path,
                          "validation CSV; restarts are ranked by free-run "
                          "VAF on it");
    train_cmd->add_option("--out", out_path, "output directory")->required();
    train_cmd->add_option("--seed", seed_flag, "master seed");
    train_cmd->add_option("--restarts", restarts_flag, "number of restarts");
    train_cmd->add_option("--cycles", cycles_flag, "maximum training cycles");
    train_cmd->add_option("--mode", mode_flag,
                          "structure search: column or element");
    train_cmd->add_option("--grid", grid_flag,
                          "comma-separated q+extra settings, e.g. "
                          "5+30,5+40,10+30; least-GCV wins");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "Score a model on a record");
    add_common(eval_cmd);
    eval_cmd->add_option("--model", model_path, "model file")->required();
    eval_cmd->add_option("--out", out_path, "JSON report path");

    // anova
    auto* anova_cmd = app.add_subcommand(
        "anova", "Rank the model's additive components");
    add_common(anova_cmd);
    anova_cmd->add_option("--model", model_path, "model file")->required();
    anova_cmd->add_option("--top-k", top_k, "rows to print (0 = all)");
    anova_cmd->add_option("--out", out_path, "CSV table path");

    // export
    auto* export_cmd = app.add_subcommand(
        "export", "Write (k, y, y_s) simulation traces as CSV");
    add_common(export_cmd);
    export_cmd->add_option("--model", model_path, "model file")->required();
    export_cmd->add_option("--out", out_path, "CSV path")->required();
    export_cmd->add_option("--window", window, "keep only the last N rows");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitUsage;
    }

    try {
        if (!config_path.empty()) apply_config_file(settings, config_path);
        if (seed_flag >= 0) {
            settings.train.seed = static_cast<std::uint64_t>(seed_flag);
        }
        if (restarts_flag >= 0) settings.restarts = restarts_flag;
        if (cycles_flag >= 0) settings.train.max_cycles = cycles_flag;
        if (!mode_flag.empty()) {
            if (mode_flag == "column") {
                settings.train.mode = ehh::TrainConfig::Mode::kColumn;
            } else if (mode_flag == "element") {
                settings.train.mode = ehh::TrainConfig::Mode::kElement;
            } else {
                throw ehh::InvalidConfig("mode must be 'column' or 'element'");
            }
        }
        if (!grid_flag.empty()) {
            settings.grid.clear();
            std::istringstream items(grid_flag);
            std::string item;
            while (std::getline(items, item, ',')) {
                settings.grid.push_back(parse_grid_item(item));
            }
        }

        if (gen->parsed()) {
            return cmd_gen_benchmark(gen_out, gen_seed, train_length,
                                     test_length, noise_variance, noisy_test);
        }
        if (train_cmd->parsed()) {
            return cmd_train(settings, data_path, test_path, out_path);
        }
        if (eval_cmd->parsed()) {
            return cmd_eval(settings, !config_path.empty(), model_path,
                            data_path, out_path);
        }
        if (anova_cmd->parsed()) {
            return cmd_anova(settings, !config_path.empty(), model_path,
                             data_path, top_k, out_path);
        }
        if (export_cmd->parsed()) {
            return cmd_export(settings, !config_path.empty(), model_path,
                              data_path, out_path, window);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return kExitInternal;
}
