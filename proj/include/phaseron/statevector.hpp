// statevector.hpp
// Dense statevector simulation of a small qubit register. Basis index j has
// qubit 0 as its LEAST significant bit: the ket |q_{N-1} ... q_1 q_0> maps to
// the integer j = sum_l q_l 2^l. Every other module inherits this convention.

#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "phaseron/angle.hpp"
#include "phaseron/errors.hpp"

namespace phaseron {

using Amplitude = std::complex<double>;

enum class GateKind { Hadamard, PauliX, ControlledPhase, MultiControlledX };

// Symbolic gate. The supported set is {H, X, multi-controlled phase,
// multi-controlled X}; multi-controlled gates act directly on the statevector
// with no decomposition. ControlledPhase with zero controls is the plain u1
// phase gate; its angle is kept canonical in [0, 2*pi).
struct Gate {
    GateKind kind;
    int target = 0;
    std::vector<int> controls;
    double angle = 0.0; // ControlledPhase only

    static Gate hadamard(int target);
    static Gate pauli_x(int target);
    static Gate controlled_phase(double angle, std::vector<int> controls, int target);
    static Gate multi_controlled_x(std::vector<int> controls, int target);

    // Highest qubit index referenced, for register-width validation.
    int max_qubit_index() const;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int num_qubits_) : num_qubits(num_qubits_) {}

    // Appends after validating the gate against num_qubits.
    void append(Gate gate);
    std::size_t size() const { return gates.size(); }
};

class QuantumState {
public:
    // |00...0> on num_qubits qubits.
    explicit QuantumState(int num_qubits);
    // A single computational basis state.
    QuantumState(int num_qubits, std::size_t basis_index);
    // Arbitrary amplitudes; the vector must have length 2^num_qubits and unit
    // norm within 1e-4.
    QuantumState(int num_qubits, std::vector<Amplitude> amplitudes);

    int num_qubits() const { return num_qubits_; }
    std::size_t dimension() const { return amplitudes_.size(); }
    const std::vector<Amplitude>& amplitudes() const { return amplitudes_; }
    Amplitude amplitude(std::size_t index) const;
    double norm_squared() const;

private:
    int num_qubits_;
    std::vector<Amplitude> amplitudes_;

    friend void apply_gate_in_place(QuantumState& state, const Gate& gate);
};

// Applies one gate. Throws InvalidGateError when the gate references qubits
// outside the register, CorruptedStateError when the input norm deviates from
// 1 by more than 1e-6.
void apply_gate_in_place(QuantumState& state, const Gate& gate);
QuantumState apply_gate(QuantumState state, const Gate& gate);

// Applies the circuit's gates in list order.
QuantumState run_circuit(const Circuit& circuit, QuantumState initial);

// |amplitudes[index]|^2. Throws std::out_of_range for a bad index.
double probability_of_basis_state(const QuantumState& state, std::size_t index);

// Marginal probability of reading |1> on one qubit.
double marginal_one_probability(const QuantumState& state, int qubit);

struct ShotCounts {
    long long count0 = 0;
    long long count1 = 0;
};

// Draws `shots` projective measurements of one qubit from its marginal
// distribution. Deterministic for a given seed; shots must be >= 1.
ShotCounts sample_measurements(const QuantumState& state, int qubit, long long shots,
                               std::uint64_t seed);

} // namespace phaseron
