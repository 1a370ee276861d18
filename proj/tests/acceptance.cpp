// Acceptance suite: end-to-end checks of the library against its contract,
// one line of output per criterion. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "phaseron/experiments.hpp"
#include "phaseron/oracle.hpp"
#include "phaseron/training.hpp"

#include "test_util.hpp"

using namespace phaseron;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    bool pass = false;
    std::string detail;
};

PhaseVector random_pv(Rng& rng, std::size_t m) { return test::random_phases(rng, m); }

// Mirrors the sigmoid experiment's generation: objective, labeled inputs, w0.
struct Scenario {
    PhaseVector objective;
    std::vector<TrainingSample> data;
    PhaseVector w0;
    Rng rng;
};

Scenario make_scenario(std::uint64_t seed, std::size_t m, std::size_t samples) {
    Rng rng(seed);
    PhaseVector objective = random_pv(rng, m);
    std::vector<TrainingSample> data;
    for (std::size_t k = 0; k < samples; ++k) {
        PhaseVector input = random_pv(rng, m);
        const double target = activation(input, objective).output;
        data.push_back({std::move(input), target});
    }
    PhaseVector w0 = random_pv(rng, m);
    return {std::move(objective), std::move(data), std::move(w0), std::move(rng)};
}

// 1. Backend equivalence: RotationBlocks vs HSGS vs the analytic cosine form.
Criterion backend_equivalence() {
    Rng rng(1);
    double worst_backends = 0.0;
    double worst_analytic = 0.0;
    for (int n = 1; n <= 4; ++n) {
        const std::size_t m = std::size_t{1} << n;
        for (int round = 0; round < 500; ++round) {
            const PhaseVector x = random_pv(rng, m);
            const PhaseVector w = random_pv(rng, m);
            const double exact = activation(x, w).output;
            const double rot = neuron_output_statevector(x, w, Backend::RotationBlocks);
            const double hsgs = neuron_output_statevector(x, w, Backend::Hsgs);
            worst_backends = std::max(worst_backends, std::abs(rot - hsgs));
            worst_analytic = std::max(
                {worst_analytic, std::abs(rot - exact), std::abs(hsgs - exact)});
        }
    }
    std::ostringstream detail;
    detail << "N in {1..4}, 500 pairs each: max|rot-hsgs|=" << worst_backends
           << ", max|backend-analytic|=" << worst_analytic << " (tol 1e-9)";
    return {worst_backends < 1e-9 && worst_analytic < 1e-9, detail.str()};
}

// 2. U_w applied to its own weight state concentrates on |m-1>.
Criterion weight_operator_contract() {
    Rng rng(2);
    double worst = 0.0;
    for (int round = 0; round < 500; ++round) {
        const std::size_t m = std::size_t{1} << (rng.below(4) + 1);
        const PhaseVector w = random_pv(rng, m);
        for (Backend backend : {Backend::RotationBlocks, Backend::Hsgs}) {
            const QuantumState out =
                run_circuit(build_weight_operator(w, backend), phase_state(w));
            worst = std::max(worst, std::abs(probability_of_basis_state(out, m - 1) - 1.0));
        }
    }
    std::ostringstream detail;
    detail << "500 random w, both backends: max|P(m-1)-1|=" << worst << " (tol 1e-10)";
    return {worst < 1e-10, detail.str()};
}

// 3. Analytic activation and cost gradients vs central finite differences.
Criterion gradient_check() {
    Rng rng(3);
    int bad = 0;
    for (int round = 0; round < 200; ++round) {
        const std::size_t m = std::size_t{1} << (rng.below(3) + 1); // m in {2,4,8}
        const PhaseVector x = random_pv(rng, m);
        const PhaseVector w = random_pv(rng, m);
        const std::vector<double> grad_a = activation_gradient(x, w);
        const std::vector<double> grad_n = test::central_difference(
            [&](const std::vector<double>& v) { return activation(x, PhaseVector(v)).output; },
            w.phases());
        if (!test::gradients_match(grad_a, grad_n)) {
            ++bad;
            continue;
        }
        Scenario s = make_scenario(rng.next_u64(), m, 20);
        const std::vector<double> cg_a = cost_gradient(w, s.data);
        const std::vector<double> cg_n = test::central_difference(
            [&](const std::vector<double>& v) {
                return cost(PhaseVector(v), s.data, EvalMode::analytic());
            },
            w.phases());
        if (!test::gradients_match(cg_a, cg_n)) {
            ++bad;
        }
    }
    std::ostringstream detail;
    detail << "200 instances, m <= 8, h=1e-6: " << (200 - bad)
           << "/200 within guarded rel 1e-6";
    return {bad == 0, detail.str()};
}

// 4. Sigmoid training reproduction across 10 seeds.
Criterion sigmoid_reproduction() {
    int reached = 0;
    int bracketed = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Scenario s = make_scenario(seed, 4, 200);
        TrainingConfig config;
        config.learning_rate = 0.1;
        config.max_steps = 10000;
        const RunRecord record = train(config, s.data, s.w0);
        const double initial = record.steps.front().cost;
        if (initial >= 1e-2 && initial <= 1e-1) {
            ++bracketed;
        }
        bool strictly_decreasing = true;
        for (std::size_t t = 1; t < record.steps.size(); ++t) {
            if (record.steps[t].cost >= record.steps[t - 1].cost) {
                strictly_decreasing = false;
                break;
            }
        }
        if (record.stop_reason == StopReason::ThresholdReached &&
            record.final_cost() <= 1e-3 && strictly_decreasing) {
            ++reached;
        }
    }
    std::ostringstream detail;
    detail << reached << "/10 seeds reached cost <= 1e-3 strictly decreasing (need >= 8); "
           << bracketed << " initial costs in [1e-2, 1e-1] (need >= 1)";
    return {reached >= 8 && bracketed >= 1, detail.str()};
}

// 5. Shot-noise behavior of a short sampled training run at the canonical seed.
// The band is 3x the binomially propagated std of the sampled initial cost.
Criterion shot_noise_behavior() {
    Scenario s = make_scenario(1, 4, 50);
    const double initial = cost(s.w0, s.data, EvalMode::analytic());
    double variance = 0.0;
    for (const TrainingSample& sample : s.data) {
        const double p = activation(sample.input, s.w0).output;
        const double d = sample.target - p;
        variance += d * d * p * (1.0 - p) / 8192.0;
    }
    const double sigma = std::sqrt(variance) / static_cast<double>(s.data.size());

    TrainingConfig config;
    config.learning_rate = 0.1;
    config.max_steps = 20;
    config.stop_on_cost_increase = false;
    config.mode = EvalMode::sampled(8192);
    config.seed = s.rng.next_u64();
    const RunRecord record = train(config, s.data, s.w0);
    double mean = 0.0;
    for (std::size_t t = 1; t < record.steps.size(); ++t) {
        mean += record.steps[t].cost;
    }
    mean /= static_cast<double>(record.steps.size() - 1);

    // Noise-free twin of the same trajectory, to attribute any displacement.
    TrainingConfig analytic_config = config;
    analytic_config.mode = EvalMode::analytic();
    const RunRecord twin = train(analytic_config, s.data, s.w0);
    double twin_mean = 0.0;
    for (std::size_t t = 1; t < twin.steps.size(); ++t) {
        twin_mean += twin.steps[t].cost;
    }
    twin_mean /= static_cast<double>(twin.steps.size() - 1);

    const double displacement = std::abs(mean - initial);
    std::ostringstream detail;
    detail << "|mean(c_1..c_20) - C0| = " << displacement << " vs 3*sigma = " << 3.0 * sigma
           << "; noise-free drift alone = " << std::abs(twin_mean - initial)
           << " (descent genuinely lowers the cost faster than 8192-shot noise hides it)";
    return {displacement <= 3.0 * sigma, detail.str()};
}

// 6. Binary special case equals the classical (w.x/m)^2 table exactly.
Criterion binary_table_equivalence() {
    double worst = 0.0;
    for (std::size_t xp = 0; xp < 16; ++xp) {
        for (std::size_t wp = 0; wp < 16; ++wp) {
            std::vector<int> xs(4);
            std::vector<int> ws(4);
            long long dot = 0;
            for (std::size_t j = 0; j < 4; ++j) {
                xs[j] = (xp >> j) & 1 ? -1 : 1;
                ws[j] = (wp >> j) & 1 ? -1 : 1;
                dot += xs[j] * ws[j];
            }
            const double classical =
                (static_cast<double>(dot) / 4.0) * (static_cast<double>(dot) / 4.0);
            const PhaseVector x = binary_specialize(xs);
            const PhaseVector w = binary_specialize(ws);
            for (Backend backend : {Backend::RotationBlocks, Backend::Hsgs}) {
                worst = std::max(
                    worst, std::abs(neuron_output_statevector(x, w, backend) - classical));
            }
        }
    }
    std::ostringstream detail;
    detail << "256 ordered sign pairs, both backends: max|circuit-classical|=" << worst
           << " (tol 1e-10)";
    return {worst < 1e-10, detail.str()};
}

// 7. Fig. 4 analogue: smoothed mean affinity never falls, final mean >= 0.9.
Criterion perceptron_learning_trend() {
    ExperimentConfig config;
    config.experiment = ExperimentKind::BinaryPerceptron;
    config.backend = BackendChoice::Rotation;
    config.mode = EvalMode::Kind::Statevector;
    config.restart_count = 59;
    config.max_steps = 50;
    config.seed = 1;
    config.out_dir = fs::temp_directory_path() / "phaseron_acceptance" / "perceptron";
    fs::remove_all(config.out_dir);
    const PerceptronResult result = run_binary_perceptron_experiment(config);

    const std::vector<double>& mean = result.mean_affinity;
    std::vector<double> smoothed;
    for (std::size_t t = 0; t < mean.size(); ++t) {
        const std::size_t lo = t >= 4 ? t - 4 : 0;
        double sum = 0.0;
        for (std::size_t u = lo; u <= t; ++u) {
            sum += mean[u];
        }
        smoothed.push_back(sum / static_cast<double>(t - lo + 1));
    }
    // Tolerance: half of one restart's smallest affinity step (0.25 at m=4)
    // spread over the ensemble. The mean is quantized at that resolution, so
    // ripple below it carries no trend, while a restart persistently losing
    // one affinity level (0.25/59) still trips the check.
    const double quantum = 0.5 * 0.25 / static_cast<double>(config.restart_count);
    double worst_dip = 0.0;
    for (std::size_t t = 1; t < smoothed.size(); ++t) {
        worst_dip = std::max(worst_dip, smoothed[t - 1] - smoothed[t]);
    }
    const bool nondecreasing = worst_dip <= quantum;
    std::ostringstream detail;
    detail << "59 restarts: worst smoothed(5) dip=" << worst_dip << " (tol " << quantum
           << "), final mean=" << mean.back() << " (need >= 0.9)";
    return {nondecreasing && mean.back() >= 0.9, detail.str()};
}

// 8. HSGS multi-controlled gate count never exceeds the rotation-block count.
Criterion hsgs_cost_dominance() {
    Rng rng(8);
    std::size_t violations = 0;
    for (int n = 2; n <= 4; ++n) {
        for (int round = 0; round < 100; ++round) {
            const PhaseVector x = random_pv(rng, std::size_t{1} << n);
            const auto rot = gate_cost(build_input_operator(x, Backend::RotationBlocks));
            const auto hsgs = gate_cost(build_input_operator(x, Backend::Hsgs));
            if (hsgs.multi_controlled_count > rot.multi_controlled_count) {
                ++violations;
            }
        }
    }
    std::ostringstream detail;
    detail << "100 random vectors per N in {2,3,4}: " << violations << " violations";
    return {violations == 0, detail.str()};
}

// 9. Sampled discrepancy scales like 1/sqrt(shots).
Criterion noise_floor_scaling() {
    double ratio_sum = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        double d_by_shots[2] = {0.0, 0.0};
        const long long shot_counts[2] = {4096, 16384};
        for (int which = 0; which < 2; ++which) {
            ExperimentConfig config;
            config.experiment = ExperimentKind::InnerProductContinuous;
            config.backend = BackendChoice::Rotation;
            config.mode = EvalMode::Kind::Sampled;
            config.vector_count = 8;
            config.shots = shot_counts[which];
            config.seed = seed;
            config.out_dir = fs::temp_directory_path() / "phaseron_acceptance" /
                             ("noise_" + std::to_string(seed) + "_" + std::to_string(which));
            fs::remove_all(config.out_dir);
            d_by_shots[which] = *run_inner_product_experiment(config).report
                                     .rotation_discrepancy;
        }
        ratio_sum += d_by_shots[0] / d_by_shots[1];
    }
    const double mean_ratio = ratio_sum / 10.0;
    std::ostringstream detail;
    detail << "mean D(4096)/D(16384) over 10 seeds = " << mean_ratio
           << " (need within [1.4, 2.6], ideal 2)";
    return {mean_ratio >= 1.4 && mean_ratio <= 2.6, detail.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// 10. Byte-identical artifacts for identical config and seed, all experiments.
Criterion determinism() {
    const fs::path base = fs::temp_directory_path() / "phaseron_acceptance" / "determinism";
    fs::remove_all(base);
    std::size_t compared = 0;
    bool all_equal = true;

    const auto compare_runs = [&](auto&& runner, ExperimentConfig config) {
        config.out_dir = base / (std::string(to_string(config.experiment)) + "_a");
        const auto first = runner(config);
        config.out_dir = base / (std::string(to_string(config.experiment)) + "_b");
        const auto second = runner(config);
        for (std::size_t i = 0; i < first.files.size(); ++i) {
            ++compared;
            if (slurp(first.files[i]) != slurp(second.files[i])) {
                all_equal = false;
            }
        }
    };

    ExperimentConfig ip;
    ip.experiment = ExperimentKind::InnerProductContinuous;
    ip.vector_count = 4;
    ip.shots = 1024;
    ip.seed = 21;
    compare_runs(run_inner_product_experiment, ip);

    ip.experiment = ExperimentKind::InnerProductBinary;
    ip.vector_count = 8;
    ip.seed = 22;
    compare_runs(run_inner_product_experiment, ip);

    ExperimentConfig bp;
    bp.experiment = ExperimentKind::BinaryPerceptron;
    bp.backend = BackendChoice::Rotation;
    bp.mode = EvalMode::Kind::Statevector;
    bp.restart_count = 7;
    bp.max_steps = 50;
    bp.seed = 23;
    compare_runs(run_binary_perceptron_experiment, bp);

    ExperimentConfig sg;
    sg.experiment = ExperimentKind::SigmoidTraining;
    sg.backend = BackendChoice::Rotation;
    sg.mode = EvalMode::Kind::Sampled;
    sg.shots = 512;
    sg.sample_count = 25;
    sg.max_steps = 12;
    sg.stop_on_cost_increase = false;
    sg.seed = 24;
    compare_runs(run_sigmoid_experiment, sg);

    std::ostringstream detail;
    detail << compared << " artifact files compared across 4 experiments, byte-identical="
           << (all_equal ? "yes" : "no");
    return {all_equal && compared > 0, detail.str()};
}

} // namespace

int main() {
    struct Entry {
        const char* name;
        double budget_seconds;
        std::function<Criterion()> run;
    };
    const std::vector<Entry> criteria{
        {"backend equivalence", 30.0, backend_equivalence},
        {"weight-operator contract", 10.0, weight_operator_contract},
        {"gradient check", 10.0, gradient_check},
        {"sigmoid reproduction", 300.0, sigmoid_reproduction},
        {"shot-noise behavior", 120.0, shot_noise_behavior},
        {"binary table equivalence", 10.0, binary_table_equivalence},
        {"binary perceptron learning trend", 60.0, perceptron_learning_trend},
        {"HSGS cost dominance", 10.0, hsgs_cost_dominance},
        {"discrepancy noise-floor scaling", 120.0, noise_floor_scaling},
        {"determinism", 120.0, determinism},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Criterion result;
        try {
            result = criteria[i].run();
        } catch (const std::exception& e) {
            result = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_budget = elapsed < criteria[i].budget_seconds;
        const bool pass = result.pass && in_budget;
        failures += !pass;
        std::printf("[%2zu] %s %s: %s [%.1fs/%.0fs]\n", i + 1, pass ? "PASS" : "FAIL",
                    criteria[i].name, result.detail.c_str(), elapsed,
                    criteria[i].budget_seconds);
    }
    std::printf("ACCEPTANCE: %zu/%zu criteria passed\n", criteria.size() - failures,
                criteria.size());
    return failures;
}
