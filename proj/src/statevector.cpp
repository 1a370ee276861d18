#include "phaseron/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "phaseron/rng.hpp"

namespace phaseron {

namespace {

constexpr double kNormTolerance = 1e-6;

void check_distinct_indices(const Gate& gate) {
    std::vector<int> all(gate.controls);
    all.push_back(gate.target);
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw InvalidGateError("gate qubit indices must be distinct");
    }
    if (!all.empty() && all.front() < 0) {
        throw InvalidGateError("gate qubit index is negative");
    }
}

std::size_t bit_mask(const std::vector<int>& qubits) {
    std::size_t mask = 0;
    for (int q : qubits) {
        mask |= std::size_t{1} << q;
    }
    return mask;
}

} // namespace

Gate Gate::hadamard(int target) {
    Gate g{GateKind::Hadamard, target, {}, 0.0};
    check_distinct_indices(g);
    return g;
}

Gate Gate::pauli_x(int target) {
    Gate g{GateKind::PauliX, target, {}, 0.0};
    check_distinct_indices(g);
    return g;
}

Gate Gate::controlled_phase(double angle, std::vector<int> controls, int target) {
    Gate g{GateKind::ControlledPhase, target, std::move(controls), normalize_angle(angle)};
    check_distinct_indices(g);
    return g;
}

Gate Gate::multi_controlled_x(std::vector<int> controls, int target) {
    if (controls.empty()) {
        throw InvalidGateError("multi-controlled X requires at least one control");
    }
    Gate g{GateKind::MultiControlledX, target, std::move(controls), 0.0};
    check_distinct_indices(g);
    return g;
}

int Gate::max_qubit_index() const {
    int highest = target;
    for (int q : controls) {
        highest = std::max(highest, q);
    }
    return highest;
}

void Circuit::append(Gate gate) {
    if (gate.max_qubit_index() >= num_qubits) {
        throw InvalidGateError("gate acts on qubit " + std::to_string(gate.max_qubit_index()) +
                               " but the circuit has " + std::to_string(num_qubits) + " qubits");
    }
    gates.push_back(std::move(gate));
}

QuantumState::QuantumState(int num_qubits) : QuantumState(num_qubits, std::size_t{0}) {}

QuantumState::QuantumState(int num_qubits, std::size_t basis_index) : num_qubits_(num_qubits) {
    if (num_qubits < 1) {
        throw std::invalid_argument("state needs at least one qubit");
    }
    const std::size_t dim = std::size_t{1} << num_qubits;
    if (basis_index >= dim) {
        throw std::out_of_range("basis index out of range");
    }
    amplitudes_.assign(dim, Amplitude{0.0, 0.0});
    amplitudes_[basis_index] = Amplitude{1.0, 0.0};
}

QuantumState::QuantumState(int num_qubits, std::vector<Amplitude> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
    if (num_qubits < 1) {
        throw std::invalid_argument("state needs at least one qubit");
    }
    if (amplitudes_.size() != (std::size_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^num_qubits");
    }
    // Ingestion is more lenient than gate application (1e-6) so that a
    // hand-built slightly-off state still triggers the corrupted-state check.
    if (std::abs(norm_squared() - 1.0) > 1e-4) {
        throw CorruptedStateError("amplitude vector is not normalized");
    }
}

Amplitude QuantumState::amplitude(std::size_t index) const {
    if (index >= amplitudes_.size()) {
        throw std::out_of_range("basis index out of range");
    }
    return amplitudes_[index];
}

double QuantumState::norm_squared() const {
    double total = 0.0;
    for (const Amplitude& a : amplitudes_) {
        total += std::norm(a);
    }
    return total;
}

void apply_gate_in_place(QuantumState& state, const Gate& gate) {
    if (gate.max_qubit_index() >= state.num_qubits()) {
        throw InvalidGateError("gate index out of range for this register");
    }
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        throw CorruptedStateError("state norm deviates from 1 beyond 1e-6");
    }

    std::vector<Amplitude>& amps = state.amplitudes_;
    const std::size_t dim = amps.size();
    const std::size_t target_bit = std::size_t{1} << gate.target;
    const std::size_t control_mask = bit_mask(gate.controls);

    switch (gate.kind) {
    case GateKind::Hadamard: {
        const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
        for (std::size_t j = 0; j < dim; ++j) {
            if (j & target_bit) {
                continue;
            }
            const Amplitude low = amps[j];
            const Amplitude high = amps[j | target_bit];
            amps[j] = (low + high) * inv_sqrt2;
            amps[j | target_bit] = (low - high) * inv_sqrt2;
        }
        break;
    }
    case GateKind::PauliX: {
        for (std::size_t j = 0; j < dim; ++j) {
            if (!(j & target_bit)) {
                std::swap(amps[j], amps[j | target_bit]);
            }
        }
        break;
    }
    case GateKind::ControlledPhase: {
        // Phase applies only where the controls AND the target read 1.
        const Amplitude phase = std::polar(1.0, gate.angle);
        const std::size_t full_mask = control_mask | target_bit;
        for (std::size_t j = 0; j < dim; ++j) {
            if ((j & full_mask) == full_mask) {
                amps[j] *= phase;
            }
        }
        break;
    }
    case GateKind::MultiControlledX: {
        for (std::size_t j = 0; j < dim; ++j) {
            if ((j & control_mask) == control_mask && !(j & target_bit)) {
                std::swap(amps[j], amps[j | target_bit]);
            }
        }
        break;
    }
    }
}

QuantumState apply_gate(QuantumState state, const Gate& gate) {
    apply_gate_in_place(state, gate);
    return state;
}

QuantumState run_circuit(const Circuit& circuit, QuantumState initial) {
    if (circuit.num_qubits != initial.num_qubits()) {
        throw std::invalid_argument("circuit and state have different register widths");
    }
    for (const Gate& gate : circuit.gates) {
        apply_gate_in_place(initial, gate);
    }
    return initial;
}

double probability_of_basis_state(const QuantumState& state, std::size_t index) {
    return std::norm(state.amplitude(index));
}

double marginal_one_probability(const QuantumState& state, int qubit) {
    if (qubit < 0 || qubit >= state.num_qubits()) {
        throw std::out_of_range("qubit index out of range");
    }
    const std::size_t bit = std::size_t{1} << qubit;
    double p1 = 0.0;
    const std::vector<Amplitude>& amps = state.amplitudes();
    for (std::size_t j = 0; j < amps.size(); ++j) {
        if (j & bit) {
            p1 += std::norm(amps[j]);
        }
    }
    return p1;
}

ShotCounts sample_measurements(const QuantumState& state, int qubit, long long shots,
                               std::uint64_t seed) {
    if (shots < 1) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const double p1 = marginal_one_probability(state, qubit);
    Rng rng(seed);
    ShotCounts counts;
    for (long long s = 0; s < shots; ++s) {
        if (rng.bernoulli(p1)) {
            ++counts.count1;
        } else {
            ++counts.count0;
        }
    }
    return counts;
}

} // namespace phaseron
