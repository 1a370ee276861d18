#include "phaseron/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <set>

#include "phaseron/format.hpp"
#include "phaseron/version.hpp"

namespace phaseron {

namespace {

constexpr std::size_t kRejectionBudget = 1u << 20;

std::ofstream open_output(const std::filesystem::path& path) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) {
            throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                          ec.message());
        }
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    return out;
}

void finish_output(std::ofstream& out, const std::filesystem::path& path) {
    out.flush();
    if (!out) {
        throw IoError("write failed for " + path.string());
    }
}

PhaseVector random_phase_vector(Rng& rng, std::size_t m) {
    std::vector<double> phases(m);
    for (double& phi : phases) {
        phi = rng.uniform_angle();
    }
    return PhaseVector(std::move(phases));
}

std::vector<int> random_sign_vector(Rng& rng, std::size_t m) {
    std::vector<int> signs(m);
    for (int& s : signs) {
        s = rng.sign();
    }
    return signs;
}

void maybe_dump_circuit(const ExperimentConfig& config, const PhaseVector& x,
                        const PhaseVector& w) {
    if (!config.dump_circuit) {
        return;
    }
    if (config.backend != BackendChoice::Hsgs) {
        std::cout << "backend: rotation\n"
                  << format_circuit(build_neuron_circuit(x, w, Backend::RotationBlocks));
    }
    if (config.backend != BackendChoice::Rotation) {
        std::cout << "backend: hsgs\n"
                  << format_circuit(build_neuron_circuit(x, w, Backend::Hsgs));
    }
}

double measure_pair(const PhaseVector& x, const PhaseVector& w, Backend backend,
                    const ExperimentConfig& config, Rng& rng) {
    switch (config.mode) {
    case EvalMode::Kind::Analytic:
        return activation(x, w).output;
    case EvalMode::Kind::Statevector:
        return neuron_output_statevector(x, w, backend);
    case EvalMode::Kind::Sampled: {
        Rng sampler(rng.next_u64());
        return neuron_output(x, w, EvalMode::sampled(config.shots), backend, &sampler);
    }
    }
    throw std::logic_error("unknown evaluation mode");
}

} // namespace

const char* to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::InnerProductContinuous:
        return "inner-product-continuous";
    case ExperimentKind::InnerProductBinary:
        return "inner-product-binary";
    case ExperimentKind::BinaryPerceptron:
        return "binary-perceptron";
    case ExperimentKind::SigmoidTraining:
        return "sigmoid-training";
    }
    return "?";
}

const char* to_string(BackendChoice choice) {
    switch (choice) {
    case BackendChoice::Rotation:
        return "rotation";
    case BackendChoice::Hsgs:
        return "hsgs";
    case BackendChoice::Both:
        return "both";
    }
    return "?";
}

void ExperimentConfig::validate() const {
    if (n_qubits < 1 || n_qubits > 12) {
        throw ConfigError("qubit count must be in [1, 12]");
    }
    if (mode == EvalMode::Kind::Sampled && shots < 1) {
        throw ConfigError("sampled mode needs shots >= 1");
    }
    if (out_dir.empty()) {
        throw ConfigError("output directory is required");
    }
    switch (experiment) {
    case ExperimentKind::InnerProductContinuous:
    case ExperimentKind::InnerProductBinary: {
        if (vector_count < 1) {
            throw ConfigError("vector count must be >= 1");
        }
        const std::size_t m = std::size_t{1} << n_qubits;
        if (experiment == ExperimentKind::InnerProductBinary && m <= 20 &&
            vector_count > (std::size_t{1} << m)) {
            throw ConfigError("more distinct binary vectors requested than exist");
        }
        break;
    }
    case ExperimentKind::BinaryPerceptron:
        if (restart_count < 1 || positive_count < 1 || negative_count < 1) {
            throw ConfigError("perceptron counts must be >= 1");
        }
        if (max_steps < 1) {
            throw ConfigError("max_steps must be >= 1");
        }
        if (backend == BackendChoice::Both) {
            throw ConfigError("training experiments use a single backend");
        }
        break;
    case ExperimentKind::SigmoidTraining:
        if (sample_count < 1) {
            throw ConfigError("sample count must be >= 1");
        }
        if (max_steps < 1) {
            throw ConfigError("max_steps must be >= 1");
        }
        if (!(eta > 0.0)) {
            throw ConfigError("eta must be positive");
        }
        if (backend == BackendChoice::Both) {
            throw ConfigError("training experiments use a single backend");
        }
        break;
    }
}

EvalMode ExperimentConfig::eval_mode() const {
    switch (mode) {
    case EvalMode::Kind::Analytic:
        return EvalMode::analytic();
    case EvalMode::Kind::Statevector:
        return EvalMode::statevector();
    case EvalMode::Kind::Sampled:
        return EvalMode::sampled(shots);
    }
    throw std::logic_error("unknown evaluation mode");
}

Metadata ExperimentConfig::describe() const {
    Metadata meta;
    meta.emplace_back("experiment", to_string(experiment));
    meta.emplace_back("qubits", std::to_string(n_qubits));
    meta.emplace_back("mode", to_string(mode));
    if (mode == EvalMode::Kind::Sampled) {
        meta.emplace_back("shots", std::to_string(shots));
    }
    meta.emplace_back("backend", to_string(backend));
    meta.emplace_back("seed", std::to_string(seed));
    switch (experiment) {
    case ExperimentKind::InnerProductContinuous:
    case ExperimentKind::InnerProductBinary:
        meta.emplace_back("vectors", std::to_string(vector_count));
        break;
    case ExperimentKind::BinaryPerceptron:
        meta.emplace_back("restarts", std::to_string(restart_count));
        meta.emplace_back("positives", std::to_string(positive_count));
        meta.emplace_back("negatives", std::to_string(negative_count));
        meta.emplace_back("max_steps", std::to_string(max_steps));
        break;
    case ExperimentKind::SigmoidTraining:
        meta.emplace_back("samples", std::to_string(sample_count));
        meta.emplace_back("eta", format_double(eta));
        meta.emplace_back("max_steps", std::to_string(max_steps));
        meta.emplace_back("cost_threshold", format_double(cost_threshold));
        meta.emplace_back("stop_on_cost_increase", stop_on_cost_increase ? "true" : "false");
        break;
    }
    meta.emplace_back("rng", Rng::algorithm());
    meta.emplace_back("version", kVersion);
    return meta;
}

double discrepancy(const std::vector<double>& ideal, const std::vector<double>& measured) {
    if (ideal.size() != measured.size()) {
        throw std::invalid_argument("ideal and measured series differ in length");
    }
    if (ideal.empty()) {
        throw std::invalid_argument("discrepancy needs at least one output pair");
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < ideal.size(); ++k) {
        sum += std::abs(measured[k] - ideal[k]);
    }
    return sum / static_cast<double>(ideal.size());
}

void write_metadata(const std::filesystem::path& path, const Metadata& metadata) {
    std::ofstream out = open_output(path);
    for (const auto& [key, value] : metadata) {
        out << key << " = " << value << "\n";
    }
    finish_output(out, path);
}

InnerProductResult run_inner_product_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.experiment != ExperimentKind::InnerProductContinuous &&
        config.experiment != ExperimentKind::InnerProductBinary) {
        throw ConfigError("config does not describe an inner-product experiment");
    }
    const std::size_t m = std::size_t{1} << config.n_qubits;
    const bool binary = config.experiment == ExperimentKind::InnerProductBinary;
    Rng rng(config.seed);

    // Vector pool. Binary pools contain distinct sign patterns.
    std::vector<PhaseVector> pool;
    pool.reserve(config.vector_count);
    if (binary) {
        std::set<std::vector<int>> seen;
        std::size_t attempts = 0;
        while (pool.size() < config.vector_count) {
            if (++attempts > kRejectionBudget) {
                throw ConfigError("could not collect distinct binary vectors; try another seed");
            }
            std::vector<int> signs = random_sign_vector(rng, m);
            if (seen.insert(signs).second) {
                pool.push_back(binary_specialize(signs));
            }
        }
    } else {
        for (std::size_t v = 0; v < config.vector_count; ++v) {
            pool.push_back(random_phase_vector(rng, m));
        }
    }

    maybe_dump_circuit(config, pool[0], pool[0]);

    const bool use_rotation = config.backend != BackendChoice::Hsgs;
    const bool use_hsgs = config.backend != BackendChoice::Rotation;

    DiscrepancyReport report;
    report.meta = config.describe();
    std::vector<double> ideal_series;
    std::vector<double> rotation_series;
    std::vector<double> hsgs_series;
    for (std::size_t xi = 0; xi < pool.size(); ++xi) {
        for (std::size_t wi = 0; wi < pool.size(); ++wi) {
            PairResult pair;
            pair.x_index = xi;
            pair.w_index = wi;
            pair.ideal = activation(pool[xi], pool[wi]).output;
            ideal_series.push_back(pair.ideal);
            if (use_rotation) {
                pair.measured_rotation =
                    measure_pair(pool[xi], pool[wi], Backend::RotationBlocks, config, rng);
                rotation_series.push_back(*pair.measured_rotation);
            }
            if (use_hsgs) {
                pair.measured_hsgs =
                    measure_pair(pool[xi], pool[wi], Backend::Hsgs, config, rng);
                hsgs_series.push_back(*pair.measured_hsgs);
            }
            report.pairs.push_back(pair);
        }
    }
    report.n = report.pairs.size();
    if (use_rotation) {
        report.rotation_discrepancy = discrepancy(ideal_series, rotation_series);
        report.meta.emplace_back("discrepancy_rotation",
                                 format_double(*report.rotation_discrepancy));
    }
    if (use_hsgs) {
        report.hsgs_discrepancy = discrepancy(ideal_series, hsgs_series);
        report.meta.emplace_back("discrepancy_hsgs", format_double(*report.hsgs_discrepancy));
    }
    report.meta.emplace_back("pairs", std::to_string(report.n));

    InnerProductResult result;
    result.report = report;

    const std::filesystem::path csv_path = config.out_dir / "pairs.csv";
    std::ofstream csv = open_output(csv_path);
    csv << "pair,x_index,w_index,ideal";
    if (use_rotation) {
        csv << ",measured_rotation,abs_diff_rotation";
    }
    if (use_hsgs) {
        csv << ",measured_hsgs,abs_diff_hsgs";
    }
    csv << "\n";
    for (std::size_t k = 0; k < report.pairs.size(); ++k) {
        const PairResult& pair = report.pairs[k];
        csv << k << ',' << pair.x_index << ',' << pair.w_index << ','
            << format_double(pair.ideal);
        if (use_rotation) {
            csv << ',' << format_double(*pair.measured_rotation) << ','
                << format_double(std::abs(*pair.measured_rotation - pair.ideal));
        }
        if (use_hsgs) {
            csv << ',' << format_double(*pair.measured_hsgs) << ','
                << format_double(std::abs(*pair.measured_hsgs - pair.ideal));
        }
        csv << "\n";
    }
    finish_output(csv, csv_path);
    result.files.push_back(csv_path);

    for (const std::filesystem::path& written :
         emit_plot_data(report, config.out_dir / "diff_plot.csv")) {
        result.files.push_back(written);
    }

    const std::filesystem::path meta_path = config.out_dir / "run.meta";
    write_metadata(meta_path, report.meta);
    result.files.push_back(meta_path);
    return result;
}

PerceptronResult run_binary_perceptron_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.experiment != ExperimentKind::BinaryPerceptron) {
        throw ConfigError("config does not describe the binary perceptron experiment");
    }
    const std::size_t m = std::size_t{1} << config.n_qubits;
    Rng rng(config.seed);

    PerceptronResult result;
    result.objective = random_sign_vector(rng, m);
    const PhaseVector objective_phases = binary_specialize(result.objective);

    // Positive output means activation against the objective >= 0.5.
    std::vector<TrainingSample> data;
    std::size_t positives = 0;
    std::size_t negatives = 0;
    std::size_t attempts = 0;
    while (positives < config.positive_count || negatives < config.negative_count) {
        if (++attempts > kRejectionBudget) {
            throw ConfigError("dataset rejection budget exhausted; try another seed");
        }
        const std::vector<int> candidate = random_sign_vector(rng, m);
        const PhaseVector phases = binary_specialize(candidate);
        const bool positive = activation(phases, objective_phases).output >= 0.5;
        if (positive && positives < config.positive_count) {
            data.push_back({phases, 1.0});
            ++positives;
        } else if (!positive && negatives < config.negative_count) {
            data.push_back({phases, 0.0});
            ++negatives;
        }
    }

    maybe_dump_circuit(config, data[0].input, objective_phases);

    TrainingConfig tc;
    tc.learning_rate = config.eta;
    tc.max_steps = config.max_steps;
    tc.mode = config.eval_mode();
    tc.backend = config.backend == BackendChoice::Hsgs ? Backend::Hsgs : Backend::RotationBlocks;
    for (std::size_t r = 0; r < config.restart_count; ++r) {
        const std::vector<int> w0 = random_sign_vector(rng, m);
        tc.seed = rng.next_u64();
        result.restarts.push_back(train_binary_perceptron(tc, data, result.objective, w0));
    }

    // Mean affinity per step; finished restarts hold their final value.
    const std::size_t horizon = static_cast<std::size_t>(config.max_steps) + 1;
    result.mean_affinity.assign(horizon, 0.0);
    for (const RunRecord& record : result.restarts) {
        for (std::size_t t = 0; t < horizon; ++t) {
            const std::size_t idx = std::min(t, record.steps.size() - 1);
            result.mean_affinity[t] += record.steps[idx].affinity.value_or(0.0);
        }
    }
    for (double& value : result.mean_affinity) {
        value /= static_cast<double>(result.restarts.size());
    }

    const std::filesystem::path steps_path = config.out_dir / "affinity_steps.csv";
    std::ofstream steps = open_output(steps_path);
    steps << "restart,step,cost,affinity\n";
    for (std::size_t r = 0; r < result.restarts.size(); ++r) {
        for (const StepRecord& step : result.restarts[r].steps) {
            steps << r << ',' << step.step << ',' << format_double(step.cost) << ','
                  << format_double(step.affinity.value_or(0.0)) << "\n";
        }
    }
    finish_output(steps, steps_path);
    result.files.push_back(steps_path);

    const std::filesystem::path mean_path = config.out_dir / "mean_affinity.csv";
    std::ofstream mean = open_output(mean_path);
    mean << "step,mean_affinity\n";
    for (std::size_t t = 0; t < result.mean_affinity.size(); ++t) {
        mean << t << ',' << format_double(result.mean_affinity[t]) << "\n";
    }
    finish_output(mean, mean_path);
    result.files.push_back(mean_path);

    // Per-restart data visit order, one quoted space-separated permutation.
    const std::filesystem::path shuffle_path = config.out_dir / "shuffles.csv";
    std::ofstream shuffles = open_output(shuffle_path);
    shuffles << "restart,permutation\n";
    for (std::size_t r = 0; r < result.restarts.size(); ++r) {
        std::string joined;
        for (std::size_t index : result.restarts[r].shuffle_permutation.value()) {
            if (!joined.empty()) {
                joined += ' ';
            }
            joined += std::to_string(index);
        }
        shuffles << r << ',' << csv_field(joined) << "\n";
    }
    finish_output(shuffles, shuffle_path);
    result.files.push_back(shuffle_path);

    Metadata meta = config.describe();
    meta.emplace_back("final_mean_affinity", format_double(result.mean_affinity.back()));
    const std::filesystem::path meta_path = config.out_dir / "run.meta";
    write_metadata(meta_path, meta);
    result.files.push_back(meta_path);
    return result;
}

SigmoidResult run_sigmoid_experiment(const ExperimentConfig& config) {
    config.validate();
    if (config.experiment != ExperimentKind::SigmoidTraining) {
        throw ConfigError("config does not describe the sigmoid experiment");
    }
    const std::size_t m = std::size_t{1} << config.n_qubits;
    Rng rng(config.seed);

    // Objective weights, labeled samples, then fresh initial weights; the
    // objective is "forgotten" once the targets are computed.
    const PhaseVector objective = random_phase_vector(rng, m);
    std::vector<TrainingSample> data;
    data.reserve(config.sample_count);
    for (std::size_t k = 0; k < config.sample_count; ++k) {
        PhaseVector input = random_phase_vector(rng, m);
        const double target = activation(input, objective).output;
        data.push_back({std::move(input), target});
    }
    const PhaseVector w0 = random_phase_vector(rng, m);

    maybe_dump_circuit(config, data[0].input, w0);

    TrainingConfig tc;
    tc.learning_rate = config.eta;
    tc.max_steps = config.max_steps;
    tc.cost_threshold = config.cost_threshold;
    tc.stop_on_cost_increase = config.stop_on_cost_increase;
    tc.mode = config.eval_mode();
    tc.backend = config.backend == BackendChoice::Hsgs ? Backend::Hsgs : Backend::RotationBlocks;
    tc.seed = rng.next_u64();

    SigmoidResult result{objective, train(tc, data, w0), {}};

    const std::filesystem::path run_path = config.out_dir / "training_run.csv";
    std::ofstream run_csv = open_output(run_path);
    result.record.write_csv(run_csv);
    finish_output(run_csv, run_path);
    result.files.push_back(run_path);

    for (const std::filesystem::path& written :
         emit_plot_data(result.record, config.out_dir / "cost_plot.csv")) {
        result.files.push_back(written);
    }

    Metadata meta = config.describe();
    meta.emplace_back("stop_reason", to_string(result.record.stop_reason));
    meta.emplace_back("steps", std::to_string(result.record.final_step()));
    meta.emplace_back("final_cost", format_double(result.record.final_cost()));
    const std::filesystem::path meta_path = config.out_dir / "run.meta";
    write_metadata(meta_path, meta);
    result.files.push_back(meta_path);
    return result;
}

std::vector<std::filesystem::path> emit_plot_data(const RunRecord& record,
                                                  const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "x,y\n";
    for (const StepRecord& step : record.steps) {
        out << step.step << ',' << format_double(step.cost) << "\n";
    }
    finish_output(out, path);

    Metadata meta;
    meta.emplace_back("source", "run_record");
    meta.emplace_back("config", record.config.describe());
    meta.emplace_back("seed", std::to_string(record.config.seed));
    meta.emplace_back("rng", record.rng_algorithm);
    meta.emplace_back("rows", std::to_string(record.steps.size()));
    meta.emplace_back("version", kVersion);
    const std::filesystem::path meta_path = path.string() + ".meta";
    write_metadata(meta_path, meta);
    return {path, meta_path};
}

std::vector<std::filesystem::path> emit_plot_data(const DiscrepancyReport& report,
                                                  const std::filesystem::path& path) {
    std::ofstream out = open_output(path);
    out << "x,y\n";
    for (std::size_t k = 0; k < report.pairs.size(); ++k) {
        const PairResult& pair = report.pairs[k];
        const std::optional<double>& measured =
            pair.measured_rotation ? pair.measured_rotation : pair.measured_hsgs;
        if (!measured) {
            continue;
        }
        out << k << ',' << format_double(std::abs(*measured - pair.ideal)) << "\n";
    }
    finish_output(out, path);

    Metadata meta;
    meta.emplace_back("source", "discrepancy_report");
    for (const auto& entry : report.meta) {
        meta.push_back(entry);
    }
    meta.emplace_back("rows", std::to_string(report.pairs.size()));
    meta.emplace_back("version", kVersion);
    const std::filesystem::path meta_path = path.string() + ".meta";
    write_metadata(meta_path, meta);
    return {path, meta_path};
}

} // namespace phaseron
