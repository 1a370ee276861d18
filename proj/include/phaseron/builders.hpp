// builders.hpp
// Circuit synthesis for the phase-encoded neuron. Two interchangeable
// backends prepare the input state (1/sqrt(m)) sum_j e^{i x_j} |j> and invert
// the weight state onto |m-1>:
//
//   RotationBlocks - one block B_{N,j}(lambda) per nonzero phase; each block
//     conjugates a multi-controlled phase gate with X gates so that exactly
//     basis amplitude j picks up e^{i lambda}.
//   Hsgs - hypergraph-state generation: single-qubit phases first, then
//     multi-controlled corrections by increasing control count, which needs
//     far fewer multi-controlled gates on generic inputs.
//
// Builders fix the state only up to one global phase; every downstream
// quantity is a probability, which is invariant.

#pragma once

#include <string>
#include <vector>

#include "phaseron/statevector.hpp"

namespace phaseron {

enum class Backend { RotationBlocks, Hsgs };

const char* to_string(Backend backend);

// The m = 2^N real phases (radians, canonical in [0, 2*pi)) defining an input
// or weight vector: entry j is the phase of coefficient j.
class PhaseVector {
public:
    explicit PhaseVector(std::vector<double> phases);
    static PhaseVector zeros(std::size_t size);

    std::size_t size() const { return phases_.size(); }
    int num_qubits() const { return num_qubits_; }
    double operator[](std::size_t j) const { return phases_[j]; }
    const std::vector<double>& phases() const { return phases_; }

private:
    std::vector<double> phases_;
    int num_qubits_;
};

struct GateCostReport {
    std::size_t total_gates = 0;
    std::size_t multi_controlled_count = 0; // gates with at least one control
    std::size_t max_control_arity = 0;
};

// B_{N,j}(lambda): multiplies basis amplitude j by e^{i lambda} and leaves all
// others untouched. Built as O_j, then a phase gate controlled on qubits
// 0..N-2 targeting qubit N-1, then O_j again, where O_j applies X to every
// qubit whose bit of j is 0.
Circuit rotation_block(int n_qubits, std::size_t j, double angle);

// U_i: running the result on |0>^N yields (1/sqrt(m)) e^{i x_j} amplitudes,
// up to one global phase.
Circuit build_input_operator(const PhaseVector& x, Backend backend);

// U_w: phase uncomputation with negated weights, then H on all qubits, then X
// on all qubits. Applying it to the weight state yields |m-1> up to global
// phase, i.e. the conjugated weights form the last row of the unitary.
Circuit build_weight_operator(const PhaseVector& w, Backend backend);

// HSGS core shared by both builders: starting from the uniform superposition,
// applies e^{i sign phi_j} per basis state (up to global phase) with
// parity-ordered corrections. Phases are first shifted so entry 0 is zero,
// which spares index 0 any correction; at parity level p the applied angle on
// an index set is the remaining phase after subtracting the corrections
// already applied on all proper nonempty subsets. sign must be +1 or -1.
Circuit hsgs_phase_stage(const PhaseVector& phases, int sign);

// Full neuron over N register qubits plus one ancilla (highest index):
// U_i, U_w, then a multi-controlled X from all register qubits onto the
// ancilla. P(ancilla = 1) equals |<psi_w|psi_i>|^2.
Circuit build_neuron_circuit(const PhaseVector& x, const PhaseVector& w, Backend backend);

// Binary special case: +1 -> phase 0, -1 -> phase pi (u1 replaced by Z).
PhaseVector binary_specialize(const std::vector<int>& bits);

GateCostReport gate_cost(const Circuit& circuit);

// Direct construction of (1/sqrt(m)) e^{i phi_j} |j>, the state the input
// operator prepares. Used as an oracle and to feed the weight operator.
QuantumState phase_state(const PhaseVector& phases);

// P(ancilla = 1) of the neuron circuit run on |0>^{N+1}, exact statevector.
double neuron_output_statevector(const PhaseVector& x, const PhaseVector& w, Backend backend);

// One gate per line: `GATE target [controls] [angle]`, e.g.
//   H 0
//   X 1
//   CPHASE 1 [0] 3.141592653589793
//   MCX 2 [0 1]
// Controls are printed for CPHASE and MCX (possibly `[]`), the angle only for
// CPHASE. The format is stable; the CLI --dump-circuit flag emits it.
std::string format_circuit(const Circuit& circuit);

} // namespace phaseron
