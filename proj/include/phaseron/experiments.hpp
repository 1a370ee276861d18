// experiments.hpp
// Seeded, re-runnable experiment drivers: inner-product discrepancy studies
// over continuous and binary vector pools, the 59-restart binary perceptron
// run, and the sigmoid training run. Every experiment is a pure function of
// (config, seed); repeated runs produce byte-identical CSV artifacts. Each
// run writes RFC 4180 CSV files plus one `run.meta` key-value sidecar.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "phaseron/training.hpp"

namespace phaseron {

enum class ExperimentKind {
    InnerProductContinuous,
    InnerProductBinary,
    BinaryPerceptron,
    SigmoidTraining,
};

const char* to_string(ExperimentKind kind);

// Which synthesis backend(s) an experiment evaluates. Training experiments
// use exactly one backend; the inner-product studies may compare both.
enum class BackendChoice { Rotation, Hsgs, Both };

const char* to_string(BackendChoice choice);

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::InnerProductContinuous;
    int n_qubits = 2;
    long long shots = 8192;
    BackendChoice backend = BackendChoice::Both;
    EvalMode::Kind mode = EvalMode::Kind::Sampled;
    std::uint64_t seed = 1;
    std::filesystem::path out_dir;
    bool dump_circuit = false;

    // inner-product studies
    std::size_t vector_count = 8;
    // sigmoid training
    std::size_t sample_count = 200;
    double eta = 0.1;
    long long max_steps = 10000;
    double cost_threshold = 1e-3;
    bool stop_on_cost_increase = true;
    // binary perceptron
    std::size_t restart_count = 59;
    std::size_t positive_count = 5;
    std::size_t negative_count = 50;

    void validate() const; // throws ConfigError
    EvalMode eval_mode() const;
    Metadata describe() const;
};

// D = (1/n) sum_k |measured_k - ideal_k|.
double discrepancy(const std::vector<double>& ideal, const std::vector<double>& measured);

struct PairResult {
    std::size_t x_index = 0;
    std::size_t w_index = 0;
    double ideal = 0.0;
    std::optional<double> measured_rotation;
    std::optional<double> measured_hsgs;
};

struct DiscrepancyReport {
    std::size_t n = 0;
    std::optional<double> rotation_discrepancy;
    std::optional<double> hsgs_discrepancy;
    std::vector<PairResult> pairs;
    Metadata meta;
};

struct InnerProductResult {
    DiscrepancyReport report;
    std::vector<std::filesystem::path> files;
};

struct PerceptronResult {
    std::vector<int> objective;
    std::vector<RunRecord> restarts;
    std::vector<double> mean_affinity; // index = step, restarts padded with their final value
    std::vector<std::filesystem::path> files;
};

struct SigmoidResult {
    PhaseVector objective;
    RunRecord record;
    std::vector<std::filesystem::path> files;
};

// Generates the vector pool from the seed, evaluates every ordered pair for
// the selected backend(s), computes D against the analytic activation and
// writes pairs.csv + run.meta into config.out_dir.
InnerProductResult run_inner_product_experiment(const ExperimentConfig& config);

// Builds the positive/negative dataset by rejection sampling (a bounded
// budget; exhaustion suggests trying another seed), then trains
// restart_count independently initialized perceptrons. Writes
// affinity_steps.csv, mean_affinity.csv and run.meta.
PerceptronResult run_binary_perceptron_experiment(const ExperimentConfig& config);

// Generates objective weights, sample_count labeled inputs and the initial
// weights from the seed, trains in the configured mode, and writes
// training_run.csv, cost_plot.csv (+ sidecar) and run.meta.
SigmoidResult run_sigmoid_experiment(const ExperimentConfig& config);

// Two-column (x, y) plot CSV plus a `<path>.meta` sidecar echoing the source
// configuration, seed and library version. For a RunRecord the columns are
// (step, cost); for a DiscrepancyReport, (pair index, |measured - ideal|) of
// the first backend present.
std::vector<std::filesystem::path> emit_plot_data(const RunRecord& record,
                                                  const std::filesystem::path& path);
std::vector<std::filesystem::path> emit_plot_data(const DiscrepancyReport& report,
                                                  const std::filesystem::path& path);

// `key = value` lines; used for all sidecars.
void write_metadata(const std::filesystem::path& path, const Metadata& metadata);

} // namespace phaseron
