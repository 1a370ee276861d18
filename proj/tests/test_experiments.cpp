#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "phaseron/experiments.hpp"

#include "test_util.hpp"

using namespace phaseron;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "phaseron_tests" / name;
    fs::remove_all(dir);
    return dir;
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

} // namespace

TEST_CASE("discrepancy") {
    SUBCASE("identical series") {
        CHECK(discrepancy({0.1, 0.9}, {0.1, 0.9}) == 0.0);
    }
    SUBCASE("fully swapped binary outputs") {
        CHECK(discrepancy({0.0, 1.0}, {1.0, 0.0}) == doctest::Approx(1.0));
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(discrepancy({0.1}, {0.1, 0.2}), std::invalid_argument);
        CHECK_THROWS_AS(discrepancy({}, {}), std::invalid_argument);
    }
    SUBCASE("sampled outputs sit at the binomial noise floor") {
        Rng rng(42);
        const long long shots = 8192;
        std::vector<double> ideal;
        std::vector<double> measured;
        double floor = 0.0;
        for (int k = 0; k < 64; ++k) {
            const PhaseVector x = test::random_phases(rng, 4);
            const PhaseVector w = test::random_phases(rng, 4);
            const double p = activation(x, w).output;
            ideal.push_back(p);
            Rng sampler(rng.next_u64());
            measured.push_back(
                neuron_output(x, w, EvalMode::sampled(shots), Backend::RotationBlocks, &sampler));
            floor += std::sqrt(p * (1.0 - p) / static_cast<double>(shots));
        }
        floor /= 64.0;
        const double d = discrepancy(ideal, measured);
        // E[D] = sqrt(2/pi) * floor for Gaussian shot noise.
        CHECK(d > 0.4 * floor);
        CHECK(d < 1.2 * floor);
    }
}

TEST_CASE("experiment config validation") {
    ExperimentConfig config;
    config.out_dir = fresh_dir("cfg");
    CHECK_NOTHROW(config.validate());

    SUBCASE("missing output directory") {
        config.out_dir.clear();
        CHECK_THROWS_AS(config.validate(), ConfigError);
    }
    SUBCASE("zero or silly counts") {
        config.vector_count = 0;
        CHECK_THROWS_AS(config.validate(), ConfigError);
        config.vector_count = 8;
        config.n_qubits = 0;
        CHECK_THROWS_AS(config.validate(), ConfigError);
    }
    SUBCASE("sampled mode needs shots") {
        config.shots = 0;
        CHECK_THROWS_AS(config.validate(), ConfigError);
    }
    SUBCASE("more distinct binary vectors than patterns") {
        config.experiment = ExperimentKind::InnerProductBinary;
        config.vector_count = 17; // only 16 exist at m = 4
        CHECK_THROWS_AS(config.validate(), ConfigError);
    }
    SUBCASE("training experiments reject backend=both and max_steps=0") {
        config.experiment = ExperimentKind::SigmoidTraining;
        config.backend = BackendChoice::Both;
        CHECK_THROWS_AS(config.validate(), ConfigError);
        config.backend = BackendChoice::Rotation;
        config.max_steps = 0;
        CHECK_THROWS_AS(config.validate(), ConfigError);
    }
}

TEST_CASE("inner-product experiment") {
    SUBCASE("statevector mode is exact for both backends") {
        ExperimentConfig config;
        config.experiment = ExperimentKind::InnerProductContinuous;
        config.mode = EvalMode::Kind::Statevector;
        config.vector_count = 4;
        config.seed = 5;
        config.out_dir = fresh_dir("ip_exact");
        const InnerProductResult result = run_inner_product_experiment(config);
        CHECK(result.report.n == 16);
        CHECK(*result.report.rotation_discrepancy < 1e-9);
        CHECK(*result.report.hsgs_discrepancy < 1e-9);
        for (const fs::path& file : result.files) {
            CHECK(fs::exists(file));
        }
        // one |diff| plot row per pair, plus the x,y header
        const std::string plot = read_bytes(config.out_dir / "diff_plot.csv");
        std::size_t lines = 0;
        for (char c : plot) {
            lines += c == '\n';
        }
        CHECK(lines == 17);
    }
    SUBCASE("sampled continuous study has a shot-noise-sized discrepancy") {
        ExperimentConfig config;
        config.experiment = ExperimentKind::InnerProductContinuous;
        config.vector_count = 8;
        config.shots = 8192;
        config.seed = 6;
        config.out_dir = fresh_dir("ip_sampled");
        const InnerProductResult result = run_inner_product_experiment(config);
        CHECK(result.report.n == 64);
        CHECK(*result.report.rotation_discrepancy > 0.0);
        CHECK(*result.report.rotation_discrepancy < 0.01); // far below device-scale 0.1
        CHECK(*result.report.hsgs_discrepancy > 0.0);
        CHECK(*result.report.hsgs_discrepancy < 0.01);
    }
    SUBCASE("binary study reproduces the classical dot-product table") {
        ExperimentConfig config;
        config.experiment = ExperimentKind::InnerProductBinary;
        config.mode = EvalMode::Kind::Statevector;
        config.vector_count = 16;
        config.seed = 7;
        config.out_dir = fresh_dir("ip_binary");
        const InnerProductResult result = run_inner_product_experiment(config);
        CHECK(result.report.n == 256);
        for (const PairResult& pair : result.report.pairs) {
            // m = 4 sign vectors: (dot/4)^2 with even dot, so {0, 1/4, 1}.
            const bool known = std::abs(pair.ideal) < 1e-12 ||
                               std::abs(pair.ideal - 0.25) < 1e-12 ||
                               std::abs(pair.ideal - 1.0) < 1e-12;
            CHECK(known);
            CHECK(std::abs(*pair.measured_rotation - pair.ideal) < 1e-10);
            if (pair.x_index == pair.w_index) {
                CHECK(pair.ideal == doctest::Approx(1.0));
            }
        }
    }
    SUBCASE("rejects a non-inner-product config") {
        ExperimentConfig config;
        config.experiment = ExperimentKind::SigmoidTraining;
        config.backend = BackendChoice::Rotation;
        config.out_dir = fresh_dir("ip_bad");
        CHECK_THROWS_AS(run_inner_product_experiment(config), ConfigError);
    }
}

TEST_CASE("binary perceptron experiment learns on average") {
    ExperimentConfig config;
    config.experiment = ExperimentKind::BinaryPerceptron;
    config.backend = BackendChoice::Rotation;
    config.mode = EvalMode::Kind::Statevector;
    config.restart_count = 8;
    config.max_steps = 50;
    config.seed = 8;
    config.out_dir = fresh_dir("perceptron");
    const PerceptronResult result = run_binary_perceptron_experiment(config);
    REQUIRE(result.restarts.size() == 8);
    CHECK(result.mean_affinity.size() == 51);
    CHECK(result.mean_affinity.back() >= result.mean_affinity.front());
    CHECK(result.mean_affinity.back() > 0.9);
    // 5 positive and 50 negative samples by construction.
    CHECK(fs::exists(config.out_dir / "affinity_steps.csv"));
    CHECK(fs::exists(config.out_dir / "mean_affinity.csv"));
    CHECK(fs::exists(config.out_dir / "run.meta"));
    // each restart logs its full data visit order
    const std::string shuffles = read_bytes(config.out_dir / "shuffles.csv");
    std::size_t lines = 0;
    for (char c : shuffles) {
        lines += c == '\n';
    }
    CHECK(lines == 9); // header + 8 restarts
}

TEST_CASE("sigmoid experiment") {
    SUBCASE("analytic mode converges below the threshold") {
        ExperimentConfig config;
        config.experiment = ExperimentKind::SigmoidTraining;
        config.backend = BackendChoice::Rotation;
        config.mode = EvalMode::Kind::Analytic;
        config.sample_count = 200;
        config.eta = 0.1;
        config.max_steps = 10000;
        config.seed = 1;
        config.out_dir = fresh_dir("sigmoid_analytic");
        const SigmoidResult result = run_sigmoid_experiment(config);
        CHECK(result.record.stop_reason == StopReason::ThresholdReached);
        CHECK(result.record.final_cost() <= 1e-3);
        CHECK(fs::exists(config.out_dir / "training_run.csv"));
        CHECK(fs::exists(config.out_dir / "cost_plot.csv"));
        CHECK(fs::exists(config.out_dir / "cost_plot.csv.meta"));
        CHECK(fs::exists(config.out_dir / "run.meta"));
    }
    SUBCASE("sampled mode oscillates around the exact trajectory") {
        ExperimentConfig config;
        config.experiment = ExperimentKind::SigmoidTraining;
        config.backend = BackendChoice::Rotation;
        config.mode = EvalMode::Kind::Sampled;
        config.shots = 8192;
        config.sample_count = 50;
        config.max_steps = 20;
        config.stop_on_cost_increase = false;
        config.seed = 3;
        config.out_dir = fresh_dir("sigmoid_sampled");
        const SigmoidResult sampled = run_sigmoid_experiment(config);
        CHECK(sampled.record.stop_reason == StopReason::MaxSteps);
        REQUIRE(sampled.record.steps.size() == 21);

        bool increased = false;
        for (std::size_t t = 1; t < sampled.record.steps.size(); ++t) {
            increased =
                increased || sampled.record.steps[t].cost > sampled.record.steps[t - 1].cost;
        }
        CHECK(increased); // shot noise breaks monotonicity

        // The same config in statevector mode follows the identical weight
        // trajectory; the sampled costs scatter around it without bias.
        config.mode = EvalMode::Kind::Statevector;
        config.out_dir = fresh_dir("sigmoid_exact_twin");
        const SigmoidResult exact = run_sigmoid_experiment(config);
        REQUIRE(exact.record.steps.size() == 21);
        double sampled_mean = 0.0;
        double exact_mean = 0.0;
        double band = 0.0; // 3 sigma of the mean of 20 sampled costs
        for (std::size_t t = 1; t <= 20; ++t) {
            sampled_mean += sampled.record.steps[t].cost / 20.0;
            exact_mean += exact.record.steps[t].cost / 20.0;
            CHECK(sampled.record.steps[t].weights[1] ==
                  doctest::Approx(exact.record.steps[t].weights[1]).epsilon(1e-12));
        }
        const double sigma_single = 2e-4; // conservative scale at m=4, n=50, 8192 shots
        band = 3.0 * sigma_single / std::sqrt(20.0);
        CHECK(std::abs(sampled_mean - exact_mean) < band + 1e-4);
    }
    SUBCASE("max_steps = 0 is rejected") {
        ExperimentConfig config;
        config.experiment = ExperimentKind::SigmoidTraining;
        config.backend = BackendChoice::Rotation;
        config.max_steps = 0;
        config.out_dir = fresh_dir("sigmoid_bad");
        CHECK_THROWS_AS(run_sigmoid_experiment(config), ConfigError);
    }
}

TEST_CASE("experiments are byte-deterministic for a fixed seed") {
    ExperimentConfig config;
    config.experiment = ExperimentKind::InnerProductBinary;
    config.vector_count = 8;
    config.shots = 1024;
    config.seed = 11;

    config.out_dir = fresh_dir("det_a");
    const InnerProductResult first = run_inner_product_experiment(config);
    config.out_dir = fresh_dir("det_b");
    const InnerProductResult second = run_inner_product_experiment(config);
    CHECK(read_bytes(first.files[0]) == read_bytes(second.files[0]));
    CHECK(read_bytes(first.files[1]) == read_bytes(second.files[1]));

    ExperimentConfig sig;
    sig.experiment = ExperimentKind::SigmoidTraining;
    sig.backend = BackendChoice::Rotation;
    sig.mode = EvalMode::Kind::Sampled;
    sig.shots = 512;
    sig.sample_count = 20;
    sig.max_steps = 10;
    sig.stop_on_cost_increase = false;
    sig.seed = 12;
    sig.out_dir = fresh_dir("det_c");
    const SigmoidResult sig_a = run_sigmoid_experiment(sig);
    sig.out_dir = fresh_dir("det_d");
    const SigmoidResult sig_b = run_sigmoid_experiment(sig);
    for (std::size_t i = 0; i < sig_a.files.size(); ++i) {
        CHECK(read_bytes(sig_a.files[i]) == read_bytes(sig_b.files[i]));
    }
}

TEST_CASE("emit_plot_data") {
    SUBCASE("run record rows and sidecar") {
        RunRecord record;
        record.config = TrainingConfig{};
        record.rng_algorithm = Rng::algorithm();
        for (long long t = 0; t <= 5; ++t) {
            record.steps.push_back({t, 0.5 / static_cast<double>(t + 1), {0.0, 1.0}, 0.1, {}});
        }
        const fs::path path = fresh_dir("plot") / "curve.csv";
        const auto files = emit_plot_data(record, path);
        REQUIRE(files.size() == 2);
        const std::string text = read_bytes(files[0]);
        CHECK(text.rfind("x,y\n", 0) == 0);
        std::size_t lines = 0;
        for (char c : text) {
            lines += c == '\n';
        }
        CHECK(lines == 7); // header + 6 rows
        const std::string meta = read_bytes(files[1]);
        CHECK(meta.find("source = run_record") != std::string::npos);
        CHECK(meta.find("seed = ") != std::string::npos);
        CHECK(meta.find("version = ") != std::string::npos);
    }
    SUBCASE("empty record writes a header-only file") {
        RunRecord record;
        record.config = TrainingConfig{};
        const fs::path path = fresh_dir("plot_empty") / "curve.csv";
        const auto files = emit_plot_data(record, path);
        CHECK(read_bytes(files[0]) == "x,y\n");
    }
    SUBCASE("same input twice gives identical bytes") {
        RunRecord record;
        record.config = TrainingConfig{};
        record.steps.push_back({0, 0.25, {0.0}, 0.0, {}});
        const fs::path a = fresh_dir("plot_det") / "a.csv";
        const fs::path b = fresh_dir("plot_det2") / "b.csv";
        emit_plot_data(record, a);
        emit_plot_data(record, b);
        CHECK(read_bytes(a) == read_bytes(b));
    }
}

TEST_CASE("I/O failures carry path context") {
    ExperimentConfig config;
    config.experiment = ExperimentKind::InnerProductContinuous;
    config.mode = EvalMode::Kind::Statevector;
    config.vector_count = 2;
    // A directory cannot be created underneath a regular file.
    config.out_dir = fs::path("/proc/self/cmdline") / "nested";
    CHECK_THROWS_AS(run_inner_product_experiment(config), IoError);
}
