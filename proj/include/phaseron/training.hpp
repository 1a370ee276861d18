// training.hpp
// Hybrid training loop: mean halved squared-error cost over a labeled sample
// set, full-batch gradient descent on the weight phases, stopping rules, and
// the binary perceptron variant with per-step affinity tracking.
//
// The activation depends only on phase differences, so one weight component
// is redundant; train() pins component 0 (shifts it to zero at the start and
// zeroes its gradient entry), leaving m-1 trainable parameters.

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "phaseron/builders.hpp"
#include "phaseron/oracle.hpp"
#include "phaseron/rng.hpp"

namespace phaseron {

struct TrainingSample {
    PhaseVector input;
    double target = 0.0; // desired output s_k, in [0, 1]
};

// How neuron outputs are produced during cost evaluation:
//   Analytic    - closed-form activation,
//   Statevector - exact circuit simulation, P(ancilla = 1),
//   Sampled     - finite-shot estimate of the same probability.
struct EvalMode {
    enum class Kind { Analytic, Statevector, Sampled };

    Kind kind = Kind::Analytic;
    long long shots = 0;

    static EvalMode analytic() { return {Kind::Analytic, 0}; }
    static EvalMode statevector() { return {Kind::Statevector, 0}; }
    static EvalMode sampled(long long shots) { return {Kind::Sampled, shots}; }
};

const char* to_string(EvalMode::Kind kind);

struct TrainingConfig {
    double learning_rate = 0.1;
    long long max_steps = 10000;
    double cost_threshold = 1e-3;
    bool stop_on_cost_increase = true;
    EvalMode mode = EvalMode::analytic();
    Backend backend = Backend::RotationBlocks;
    std::uint64_t seed = 1;

    void validate() const; // throws ConfigError
    std::string describe() const;
};

enum class StopReason { ThresholdReached, CostIncreased, MaxSteps };

const char* to_string(StopReason reason);

struct StepRecord {
    long long step = 0;
    double cost = 0.0;
    std::vector<double> weights;
    double grad_norm = 0.0;
    std::optional<double> affinity;
};

struct RunRecord {
    TrainingConfig config;
    std::string rng_algorithm;
    std::vector<StepRecord> steps;
    StopReason stop_reason = StopReason::MaxSteps;
    // Logged order in which binary-perceptron training visits the data.
    std::optional<std::vector<std::size_t>> shuffle_permutation;

    long long final_step() const { return steps.empty() ? 0 : steps.back().step; }
    double final_cost() const { return steps.empty() ? 0.0 : steps.back().cost; }

    // `step,cost,grad_norm[,affinity],w_0..w_{m-1}` behind a # comment line
    // carrying the full configuration and seed.
    void write_csv(std::ostream& out) const;
};

// One neuron output under the configured mode. `rng` supplies measurement
// seeds and is required in Sampled mode.
double neuron_output(const PhaseVector& x, const PhaseVector& w, const EvalMode& mode,
                     Backend backend, Rng* rng = nullptr);

// C = (1/2n) sum_k (s_k - activation_k)^2. Throws std::invalid_argument for
// an empty sample set.
double cost(const PhaseVector& w, const std::vector<TrainingSample>& data, const EvalMode& mode,
            Backend backend = Backend::RotationBlocks, Rng* rng = nullptr);

// Exact gradient of the analytic cost: -(1/n) sum_k error_k * grad activation_k.
std::vector<double> cost_gradient(const PhaseVector& w, const std::vector<TrainingSample>& data);

// w' = w - eta * grad C, re-canonicalized to [0, 2*pi). Plain update with no
// component pinning.
PhaseVector gradient_descent_step(const PhaseVector& w, const std::vector<TrainingSample>& data,
                                  double learning_rate);

// Gradient-descent loop with per-step cost/weight/gradient records. Stops on
// cost < cost_threshold, on a raw cost increase when stop_on_cost_increase is
// set, or at max_steps. The update direction is always the analytic
// cost_gradient; the evaluation mode decides what the recorded (and
// stop-checked) cost observes. Deterministic in Analytic and Statevector
// modes, and for a fixed seed in Sampled mode.
RunRecord train(const TrainingConfig& config, const std::vector<TrainingSample>& data,
                const PhaseVector& w0);

// Squared inner product between the two weight states; 1 exactly when they
// agree up to a global phase shift.
double affinity(const PhaseVector& w, const PhaseVector& objective);

// Binary perceptron variant over +/-1 vectors (phases in {0, pi}). One step
// is one weight update: the data is shuffled once per run with the seeded
// RNG, scanned cyclically, and on the next misclassified sample the weight
// component whose sign flip most reduces that sample's error is flipped (ties
// to the lowest index). A full scan with no misclassification ends the run
// with ThresholdReached. Affinity to `objective` is recorded at every step.
RunRecord train_binary_perceptron(const TrainingConfig& config,
                                  const std::vector<TrainingSample>& data,
                                  const std::vector<int>& objective,
                                  const std::vector<int>& w0);

} // namespace phaseron
