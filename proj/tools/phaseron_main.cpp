// phaseron CLI: seeded, re-runnable drivers for the inner-product
// discrepancy studies, the binary perceptron run and the sigmoid training
// run. Every run writes CSV artifacts plus a run.meta sidecar into --out.
// Exit codes: 0 success, 2 configuration error, 3 I/O error.

#include <cstdio>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"

#include "phaseron/experiments.hpp"
#include "phaseron/version.hpp"

namespace {

using phaseron::BackendChoice;
using phaseron::EvalMode;
using phaseron::ExperimentConfig;
using phaseron::ExperimentKind;

struct CliOptions {
    ExperimentConfig config;
    int repeats = 1;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("--qubits", opts.config.n_qubits, "Register qubits N (inputs have m = 2^N)")
        ->capture_default_str();
    cmd->add_option("--shots", opts.config.shots, "Shots per measured probability (sampled mode)")
        ->capture_default_str();
    const std::map<std::string, BackendChoice> backends{
        {"rotation", BackendChoice::Rotation},
        {"hsgs", BackendChoice::Hsgs},
        {"both", BackendChoice::Both}};
    cmd->add_option("--backend", opts.config.backend, "Circuit synthesis backend")
        ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case))
        ->capture_default_str();
    const std::map<std::string, EvalMode::Kind> modes{
        {"analytic", EvalMode::Kind::Analytic},
        {"statevector", EvalMode::Kind::Statevector},
        {"sampled", EvalMode::Kind::Sampled}};
    cmd->add_option("--mode", opts.config.mode, "How neuron outputs are evaluated")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->capture_default_str();
    cmd->add_option("--seed", opts.config.seed, "RNG seed recorded in every output")
        ->capture_default_str();
    cmd->add_option("--out", opts.config.out_dir, "Output directory")->required();
    cmd->add_option("--repeats", opts.repeats, "Independent repetitions (seed, seed+1, ...)")
        ->capture_default_str();
    cmd->add_flag("--dump-circuit", opts.config.dump_circuit,
                  "Print the first evaluated neuron circuit, one gate per line");
}

int run_one(const CliOptions& opts) {
    const ExperimentConfig& config = opts.config;
    switch (config.experiment) {
    case ExperimentKind::InnerProductContinuous:
    case ExperimentKind::InnerProductBinary: {
        const auto result = phaseron::run_inner_product_experiment(config);
        std::cout << phaseron::to_string(config.experiment) << ": n=" << result.report.n;
        if (result.report.rotation_discrepancy) {
            std::cout << " D(rotation)=" << *result.report.rotation_discrepancy;
        }
        if (result.report.hsgs_discrepancy) {
            std::cout << " D(hsgs)=" << *result.report.hsgs_discrepancy;
        }
        std::cout << " -> " << config.out_dir.string() << "\n";
        return 0;
    }
    case ExperimentKind::BinaryPerceptron: {
        const auto result = phaseron::run_binary_perceptron_experiment(config);
        std::cout << "binary-perceptron: restarts=" << result.restarts.size()
                  << " mean_affinity(start)=" << result.mean_affinity.front()
                  << " mean_affinity(end)=" << result.mean_affinity.back() << " -> "
                  << config.out_dir.string() << "\n";
        return 0;
    }
    case ExperimentKind::SigmoidTraining: {
        const auto result = phaseron::run_sigmoid_experiment(config);
        std::cout << "sigmoid-training: stop=" << phaseron::to_string(result.record.stop_reason)
                  << " steps=" << result.record.final_step()
                  << " final_cost=" << result.record.final_cost() << " -> "
                  << config.out_dir.string() << "\n";
        return 0;
    }
    }
    return 2;
}

int run(const CliOptions& opts) {
    if (opts.repeats < 1) {
        throw phaseron::ConfigError("repeats must be >= 1");
    }
    if (opts.repeats == 1) {
        return run_one(opts);
    }
    for (int r = 0; r < opts.repeats; ++r) {
        CliOptions repeat = opts;
        repeat.repeats = 1;
        repeat.config.seed = opts.config.seed + static_cast<std::uint64_t>(r);
        char label[32];
        std::snprintf(label, sizeof(label), "repeat_%03d", r);
        repeat.config.out_dir = opts.config.out_dir / label;
        if (const int rc = run_one(repeat); rc != 0) {
            return rc;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string("phaseron ") + phaseron::kVersion +
                 " - phase-encoded quantum neuron experiments"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Load options from a key=value file (CLI flags win)");

    CliOptions inner_continuous;
    inner_continuous.config.experiment = ExperimentKind::InnerProductContinuous;
    auto* cont = app.add_subcommand("inner-product-continuous",
                                    "Discrepancy study over random continuous vectors");
    add_common_options(cont, inner_continuous);
    cont->add_option("--vectors", inner_continuous.config.vector_count,
                     "Pool size; all ordered pairs are evaluated")
        ->capture_default_str();

    CliOptions inner_binary;
    inner_binary.config.experiment = ExperimentKind::InnerProductBinary;
    inner_binary.config.vector_count = 16;
    auto* bin = app.add_subcommand("inner-product-binary",
                                   "Discrepancy study over distinct +/-1 vectors");
    add_common_options(bin, inner_binary);
    bin->add_option("--vectors", inner_binary.config.vector_count,
                    "Pool size; all ordered pairs are evaluated")
        ->capture_default_str();

    CliOptions perceptron;
    perceptron.config.experiment = ExperimentKind::BinaryPerceptron;
    perceptron.config.backend = BackendChoice::Rotation;
    perceptron.config.mode = EvalMode::Kind::Statevector;
    perceptron.config.max_steps = 50;
    auto* per = app.add_subcommand("binary-perceptron",
                                   "Restarted binary perceptron training with affinity tracking");
    add_common_options(per, perceptron);
    per->add_option("--restarts", perceptron.config.restart_count, "Training restarts")
        ->capture_default_str();
    per->add_option("--positives", perceptron.config.positive_count,
                    "Positive samples in the generated set")
        ->capture_default_str();
    per->add_option("--negatives", perceptron.config.negative_count,
                    "Negative samples in the generated set")
        ->capture_default_str();
    per->add_option("--max-steps", perceptron.config.max_steps, "Step cap per restart")
        ->capture_default_str();

    CliOptions sigmoid;
    sigmoid.config.experiment = ExperimentKind::SigmoidTraining;
    sigmoid.config.backend = BackendChoice::Rotation;
    sigmoid.config.mode = EvalMode::Kind::Analytic;
    auto* sig = app.add_subcommand("sigmoid-training",
                                   "Gradient-descent training of the continuous neuron");
    add_common_options(sig, sigmoid);
    sig->add_option("--samples", sigmoid.config.sample_count, "Training set size")
        ->capture_default_str();
    sig->add_option("--eta", sigmoid.config.eta, "Learning rate")->capture_default_str();
    sig->add_option("--max-steps", sigmoid.config.max_steps, "Step cap")->capture_default_str();
    sig->add_option("--threshold", sigmoid.config.cost_threshold, "Stop when cost falls below")
        ->capture_default_str();
    sig->add_flag("--stop-on-increase,!--no-stop-on-increase",
                  sigmoid.config.stop_on_cost_increase,
                  "Stop when the cost rises between steps")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    CliOptions* selected = nullptr;
    if (cont->parsed()) {
        selected = &inner_continuous;
    } else if (bin->parsed()) {
        selected = &inner_binary;
    } else if (per->parsed()) {
        selected = &perceptron;
    } else if (sig->parsed()) {
        selected = &sigmoid;
    }
    if (selected == nullptr) {
        std::cerr << "no experiment selected\n";
        return 2;
    }

    try {
        return run(*selected);
    } catch (const phaseron::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const phaseron::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
