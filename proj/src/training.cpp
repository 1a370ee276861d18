#include "phaseron/training.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "phaseron/format.hpp"

namespace phaseron {

namespace {

void check_dataset(const PhaseVector& w, const std::vector<TrainingSample>& data) {
    if (data.empty()) {
        throw std::invalid_argument("training set is empty");
    }
    for (const TrainingSample& sample : data) {
        if (sample.input.size() != w.size()) {
            throw std::invalid_argument("sample dimension differs from weight dimension");
        }
        if (!std::isfinite(sample.target) || sample.target < 0.0 || sample.target > 1.0) {
            throw std::invalid_argument("sample target must lie in [0, 1]");
        }
    }
}

double norm2(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) {
        sum += x * x;
    }
    return std::sqrt(sum);
}

struct Evaluation {
    double cost = 0.0;              // under the configured mode
    std::vector<double> gradient;   // always the exact analytic gradient
};

// Recorded cost under the configured mode plus the analytic update direction.
// Mode only affects what the loop observes; the weight update itself is the
// closed-form gradient, as in gradient_descent_step. Fixed summation order
// keeps results bit-reproducible.
Evaluation evaluate(const PhaseVector& w, const std::vector<TrainingSample>& data,
                    const EvalMode& mode, Backend backend, Rng* rng) {
    const std::size_t n = data.size();
    Evaluation eval;
    eval.gradient.assign(w.size(), 0.0);
    for (const TrainingSample& sample : data) {
        const double exact = activation(sample.input, w).output;
        const double out = mode.kind == EvalMode::Kind::Analytic
                               ? exact
                               : neuron_output(sample.input, w, mode, backend, rng);
        const double observed_error = sample.target - out;
        eval.cost += observed_error * observed_error;
        const double exact_error = sample.target - exact;
        const std::vector<double> grad_f = activation_gradient(sample.input, w);
        for (std::size_t j = 0; j < w.size(); ++j) {
            eval.gradient[j] -= exact_error * grad_f[j];
        }
    }
    eval.cost /= 2.0 * static_cast<double>(n);
    for (double& g : eval.gradient) {
        g /= static_cast<double>(n);
    }
    return eval;
}

PhaseVector apply_update(const PhaseVector& w, const std::vector<double>& gradient,
                         double learning_rate) {
    std::vector<double> next(w.size());
    for (std::size_t j = 0; j < w.size(); ++j) {
        next[j] = w[j] - learning_rate * gradient[j];
    }
    return PhaseVector(std::move(next)); // re-canonicalizes to [0, 2*pi)
}

} // namespace

const char* to_string(EvalMode::Kind kind) {
    switch (kind) {
    case EvalMode::Kind::Analytic:
        return "analytic";
    case EvalMode::Kind::Statevector:
        return "statevector";
    case EvalMode::Kind::Sampled:
        return "sampled";
    }
    return "?";
}

const char* to_string(StopReason reason) {
    switch (reason) {
    case StopReason::ThresholdReached:
        return "threshold_reached";
    case StopReason::CostIncreased:
        return "cost_increased";
    case StopReason::MaxSteps:
        return "max_steps";
    }
    return "?";
}

void TrainingConfig::validate() const {
    if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
        throw ConfigError("learning rate must be positive");
    }
    if (max_steps < 1) {
        throw ConfigError("max_steps must be >= 1");
    }
    if (!std::isfinite(cost_threshold) || cost_threshold < 0.0) {
        throw ConfigError("cost threshold must be non-negative");
    }
    if (mode.kind == EvalMode::Kind::Sampled && mode.shots < 1) {
        throw ConfigError("sampled mode needs shots >= 1");
    }
}

std::string TrainingConfig::describe() const {
    std::ostringstream out;
    out << "eta=" << format_double(learning_rate) << " max_steps=" << max_steps
        << " cost_threshold=" << format_double(cost_threshold)
        << " stop_on_cost_increase=" << (stop_on_cost_increase ? "true" : "false")
        << " mode=" << to_string(mode.kind);
    if (mode.kind == EvalMode::Kind::Sampled) {
        out << " shots=" << mode.shots;
    }
    out << " backend=" << to_string(backend) << " seed=" << seed;
    return out.str();
}

void RunRecord::write_csv(std::ostream& out) const {
    const bool with_affinity = !steps.empty() && steps.front().affinity.has_value();
    out << "# " << config.describe() << " rng=" << rng_algorithm
        << " stop_reason=" << to_string(stop_reason) << "\n";
    out << "step,cost,grad_norm";
    if (with_affinity) {
        out << ",affinity";
    }
    const std::size_t m = steps.empty() ? 0 : steps.front().weights.size();
    for (std::size_t j = 0; j < m; ++j) {
        out << ",w_" << j;
    }
    out << "\n";
    for (const StepRecord& step : steps) {
        out << step.step << ',' << format_double(step.cost) << ','
            << format_double(step.grad_norm);
        if (with_affinity) {
            out << ',' << format_double(step.affinity.value_or(0.0));
        }
        for (double wj : step.weights) {
            out << ',' << format_double(wj);
        }
        out << "\n";
    }
}

double neuron_output(const PhaseVector& x, const PhaseVector& w, const EvalMode& mode,
                     Backend backend, Rng* rng) {
    switch (mode.kind) {
    case EvalMode::Kind::Analytic:
        return activation(x, w).output;
    case EvalMode::Kind::Statevector:
        return neuron_output_statevector(x, w, backend);
    case EvalMode::Kind::Sampled: {
        if (rng == nullptr) {
            throw std::invalid_argument("sampled mode requires an RNG");
        }
        if (mode.shots < 1) {
            throw std::invalid_argument("sampled mode needs shots >= 1");
        }
        const Circuit circuit = build_neuron_circuit(x, w, backend);
        const QuantumState state = run_circuit(circuit, QuantumState(circuit.num_qubits));
        const ShotCounts counts =
            sample_measurements(state, x.num_qubits(), mode.shots, rng->next_u64());
        return static_cast<double>(counts.count1) / static_cast<double>(mode.shots);
    }
    }
    throw std::logic_error("unknown evaluation mode");
}

double cost(const PhaseVector& w, const std::vector<TrainingSample>& data, const EvalMode& mode,
            Backend backend, Rng* rng) {
    check_dataset(w, data);
    double sum = 0.0;
    for (const TrainingSample& sample : data) {
        const double error = sample.target - neuron_output(sample.input, w, mode, backend, rng);
        sum += error * error;
    }
    return sum / (2.0 * static_cast<double>(data.size()));
}

std::vector<double> cost_gradient(const PhaseVector& w, const std::vector<TrainingSample>& data) {
    check_dataset(w, data);
    return evaluate(w, data, EvalMode::analytic(), Backend::RotationBlocks, nullptr).gradient;
}

PhaseVector gradient_descent_step(const PhaseVector& w, const std::vector<TrainingSample>& data,
                                  double learning_rate) {
    if (!(learning_rate > 0.0)) {
        throw std::invalid_argument("learning rate must be positive");
    }
    return apply_update(w, cost_gradient(w, data), learning_rate);
}

RunRecord train(const TrainingConfig& config, const std::vector<TrainingSample>& data,
                const PhaseVector& w0) {
    config.validate();
    check_dataset(w0, data);

    Rng rng(config.seed);
    Rng* rng_ptr = config.mode.kind == EvalMode::Kind::Sampled ? &rng : nullptr;

    // Pin the redundant global-shift direction: start with component 0 at
    // zero (an activation-preserving shift) and keep it there.
    std::vector<double> shifted(w0.phases());
    const double shift = shifted[0];
    for (double& phi : shifted) {
        phi = normalize_angle(phi - shift);
    }
    PhaseVector w(std::move(shifted));

    RunRecord record;
    record.config = config;
    record.rng_algorithm = Rng::algorithm();

    Evaluation eval = evaluate(w, data, config.mode, config.backend, rng_ptr);
    eval.gradient[0] = 0.0;
    record.steps.push_back({0, eval.cost, w.phases(), norm2(eval.gradient), std::nullopt});
    if (eval.cost < config.cost_threshold) {
        record.stop_reason = StopReason::ThresholdReached;
        return record;
    }

    double previous_cost = eval.cost;
    for (long long t = 1; t <= config.max_steps; ++t) {
        w = apply_update(w, eval.gradient, config.learning_rate);
        eval = evaluate(w, data, config.mode, config.backend, rng_ptr);
        eval.gradient[0] = 0.0;
        record.steps.push_back({t, eval.cost, w.phases(), norm2(eval.gradient), std::nullopt});
        if (eval.cost < config.cost_threshold) {
            record.stop_reason = StopReason::ThresholdReached;
            return record;
        }
        if (config.stop_on_cost_increase && eval.cost > previous_cost) {
            record.stop_reason = StopReason::CostIncreased;
            return record;
        }
        previous_cost = eval.cost;
    }
    record.stop_reason = StopReason::MaxSteps;
    return record;
}

double affinity(const PhaseVector& w, const PhaseVector& objective) {
    return activation(w, objective).output;
}

namespace {

int sign_from_phase(double phase) {
    if (is_zero_angle(phase, 1e-9)) {
        return 1;
    }
    if (std::abs(normalize_angle(phase) - kPi) <= 1e-9) {
        return -1;
    }
    throw std::invalid_argument("binary training requires phases in {0, pi}");
}

// Exact classical activation of +/-1 vectors: (dot/m)^2.
double binary_activation(const std::vector<int>& x, const std::vector<int>& w) {
    long long dot = 0;
    for (std::size_t j = 0; j < x.size(); ++j) {
        dot += x[j] * w[j];
    }
    const double ratio = static_cast<double>(dot) / static_cast<double>(x.size());
    return ratio * ratio;
}

void check_sign_vector(const std::vector<int>& v) {
    if (v.empty()) {
        throw std::invalid_argument("sign vector is empty");
    }
    for (int b : v) {
        if (b != 1 && b != -1) {
            throw std::invalid_argument("binary vector entries must be +1 or -1");
        }
    }
}

} // namespace

RunRecord train_binary_perceptron(const TrainingConfig& config,
                                  const std::vector<TrainingSample>& data,
                                  const std::vector<int>& objective,
                                  const std::vector<int>& w0) {
    config.validate();
    check_sign_vector(objective);
    check_sign_vector(w0);
    if (objective.size() != w0.size()) {
        throw std::invalid_argument("objective and initial weights differ in dimension");
    }
    if (data.empty()) {
        throw std::invalid_argument("training set is empty");
    }

    const std::size_t m = w0.size();
    std::vector<std::vector<int>> inputs;
    std::vector<double> targets;
    inputs.reserve(data.size());
    for (const TrainingSample& sample : data) {
        if (sample.input.size() != m) {
            throw std::invalid_argument("sample dimension differs from weight dimension");
        }
        std::vector<int> signs(m);
        for (std::size_t j = 0; j < m; ++j) {
            signs[j] = sign_from_phase(sample.input[j]);
        }
        inputs.push_back(std::move(signs));
        targets.push_back(sample.target);
    }

    Rng rng(config.seed);
    std::vector<std::size_t> order(data.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        order[i] = i;
    }
    rng.shuffle(order);

    std::vector<int> w = w0;
    const auto record_step = [&](RunRecord& record, long long step) {
        double cost_sum = 0.0;
        for (std::size_t k = 0; k < inputs.size(); ++k) {
            const double err = targets[k] - binary_activation(inputs[k], w);
            cost_sum += err * err;
        }
        StepRecord entry;
        entry.step = step;
        entry.cost = cost_sum / (2.0 * static_cast<double>(inputs.size()));
        entry.weights = binary_specialize(w).phases();
        entry.grad_norm = 0.0; // flip rule, no gradient
        entry.affinity = binary_activation(w, objective);
        record.steps.push_back(std::move(entry));
    };

    RunRecord record;
    record.config = config;
    record.rng_algorithm = Rng::algorithm();
    record.shuffle_permutation = order;
    record_step(record, 0);

    const auto misclassified = [&](std::size_t k) {
        const bool predicted = binary_activation(inputs[k], w) >= 0.5;
        const bool wanted = targets[k] >= 0.5;
        return predicted != wanted;
    };

    std::size_t cursor = 0;
    for (long long step = 1; step <= config.max_steps; ++step) {
        // Next misclassified sample in cyclic shuffled order.
        std::size_t scanned = 0;
        while (scanned < order.size() && !misclassified(order[cursor])) {
            cursor = (cursor + 1) % order.size();
            ++scanned;
        }
        if (scanned == order.size()) {
            record.stop_reason = StopReason::ThresholdReached; // clean pass, nothing to fix
            return record;
        }
        const std::size_t k = order[cursor];
        cursor = (cursor + 1) % order.size();

        // Flip the component whose sign change most reduces this sample's
        // error; ties break to the lowest index.
        std::size_t best = 0;
        double best_error = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < m; ++j) {
            w[j] = -w[j];
            const double err = targets[k] - binary_activation(inputs[k], w);
            w[j] = -w[j];
            if (err * err < best_error) {
                best_error = err * err;
                best = j;
            }
        }
        w[best] = -w[best];
        record_step(record, step);
    }
    record.stop_reason = StopReason::MaxSteps;
    return record;
}

} // namespace phaseron
