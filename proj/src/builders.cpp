#include "phaseron/builders.hpp"

#include <bit>
#include <cmath>
#include <sstream>

#include "phaseron/format.hpp"

namespace phaseron {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// X on every qubit whose bit of j is 0, taking |j> to |m-1>.
void append_basis_alignment(Circuit& circuit, int n_qubits, std::size_t j) {
    for (int l = 0; l < n_qubits; ++l) {
        if (!(j & (std::size_t{1} << l))) {
            circuit.append(Gate::pauli_x(l));
        }
    }
}

void append_phase_on_all_ones(Circuit& circuit, int n_qubits, double angle) {
    std::vector<int> controls;
    for (int l = 0; l + 1 < n_qubits; ++l) {
        controls.push_back(l);
    }
    circuit.append(Gate::controlled_phase(angle, std::move(controls), n_qubits - 1));
}

void append_hadamard_layer(Circuit& circuit, int n_qubits) {
    for (int l = 0; l < n_qubits; ++l) {
        circuit.append(Gate::hadamard(l));
    }
}

void append_not_layer(Circuit& circuit, int n_qubits) {
    for (int l = 0; l < n_qubits; ++l) {
        circuit.append(Gate::pauli_x(l));
    }
}

// Phase stage of U_i / U_w for the chosen backend, appended onto `circuit`.
void append_phase_stage(Circuit& circuit, const PhaseVector& phases, int sign, Backend backend) {
    if (backend == Backend::Hsgs) {
        const Circuit stage = hsgs_phase_stage(phases, sign);
        for (const Gate& gate : stage.gates) {
            circuit.append(gate);
        }
        return;
    }
    const int n = phases.num_qubits();
    for (std::size_t j = 0; j < phases.size(); ++j) {
        const double angle = normalize_angle(sign * phases[j]);
        if (is_zero_angle(angle)) {
            continue; // identity block
        }
        const Circuit block = rotation_block(n, j, angle);
        for (const Gate& gate : block.gates) {
            circuit.append(gate);
        }
    }
}

} // namespace

const char* to_string(Backend backend) {
    return backend == Backend::RotationBlocks ? "rotation" : "hsgs";
}

PhaseVector::PhaseVector(std::vector<double> phases) : phases_(std::move(phases)) {
    if (phases_.size() < 2 || !is_power_of_two(phases_.size())) {
        throw std::invalid_argument("phase vector length must be a power of two >= 2");
    }
    for (double& phi : phases_) {
        if (!std::isfinite(phi)) {
            throw std::invalid_argument("phase vector entries must be finite");
        }
        phi = normalize_angle(phi);
    }
    num_qubits_ = std::countr_zero(phases_.size());
}

PhaseVector PhaseVector::zeros(std::size_t size) {
    return PhaseVector(std::vector<double>(size, 0.0));
}

Circuit rotation_block(int n_qubits, std::size_t j, double angle) {
    if (j >= (std::size_t{1} << n_qubits)) {
        throw std::out_of_range("rotation block basis index out of range");
    }
    Circuit circuit(n_qubits);
    append_basis_alignment(circuit, n_qubits, j);
    append_phase_on_all_ones(circuit, n_qubits, angle);
    append_basis_alignment(circuit, n_qubits, j);
    return circuit;
}

Circuit build_input_operator(const PhaseVector& x, Backend backend) {
    Circuit circuit(x.num_qubits());
    append_hadamard_layer(circuit, x.num_qubits());
    append_phase_stage(circuit, x, +1, backend);
    return circuit;
}

Circuit build_weight_operator(const PhaseVector& w, Backend backend) {
    Circuit circuit(w.num_qubits());
    append_phase_stage(circuit, w, -1, backend);
    append_hadamard_layer(circuit, w.num_qubits());
    append_not_layer(circuit, w.num_qubits());
    return circuit;
}

Circuit hsgs_phase_stage(const PhaseVector& phases, int sign) {
    if (sign != 1 && sign != -1) {
        throw std::invalid_argument("hsgs sign must be +1 or -1");
    }
    const int n = phases.num_qubits();
    const std::size_t m = phases.size();
    Circuit circuit(n);

    // Applied correction per index set (0 where skipped); index 0 stays the
    // reference after the shift by phase 0 and never needs a gate.
    std::vector<double> applied(m, 0.0);
    for (int parity = 1; parity <= n; ++parity) {
        for (std::size_t j = 1; j < m; ++j) {
            if (std::popcount(j) != parity) {
                continue;
            }
            double already = 0.0;
            for (std::size_t sub = (j - 1) & j; sub != 0; sub = (sub - 1) & j) {
                already += applied[sub];
            }
            const double wanted = sign * (phases[j] - phases[0]);
            const double correction = normalize_angle(wanted - already);
            if (is_zero_angle(correction)) {
                continue;
            }
            applied[j] = correction;
            // Gate on exactly the qubits of this index set: highest set bit
            // as target, the rest as controls (phase gates are
            // control-symmetric, so the split is cosmetic).
            std::vector<int> qubits;
            for (int l = 0; l < n; ++l) {
                if (j & (std::size_t{1} << l)) {
                    qubits.push_back(l);
                }
            }
            const int target = qubits.back();
            qubits.pop_back();
            circuit.append(Gate::controlled_phase(correction, std::move(qubits), target));
        }
    }
    return circuit;
}

Circuit build_neuron_circuit(const PhaseVector& x, const PhaseVector& w, Backend backend) {
    if (x.size() != w.size()) {
        throw std::invalid_argument("input and weight vectors differ in dimension");
    }
    const int n = x.num_qubits();
    Circuit circuit(n + 1);
    for (const Gate& gate : build_input_operator(x, backend).gates) {
        circuit.append(gate);
    }
    for (const Gate& gate : build_weight_operator(w, backend).gates) {
        circuit.append(gate);
    }
    std::vector<int> controls;
    for (int l = 0; l < n; ++l) {
        controls.push_back(l);
    }
    circuit.append(Gate::multi_controlled_x(std::move(controls), n));
    return circuit;
}

PhaseVector binary_specialize(const std::vector<int>& bits) {
    std::vector<double> phases;
    phases.reserve(bits.size());
    for (int b : bits) {
        if (b != 1 && b != -1) {
            throw std::invalid_argument("binary vector entries must be +1 or -1");
        }
        phases.push_back(b == 1 ? 0.0 : kPi);
    }
    return PhaseVector(std::move(phases));
}

GateCostReport gate_cost(const Circuit& circuit) {
    GateCostReport report;
    report.total_gates = circuit.gates.size();
    for (const Gate& gate : circuit.gates) {
        if (!gate.controls.empty()) {
            ++report.multi_controlled_count;
            report.max_control_arity = std::max(report.max_control_arity, gate.controls.size());
        }
    }
    return report;
}

QuantumState phase_state(const PhaseVector& phases) {
    const std::size_t m = phases.size();
    const double modulus = 1.0 / std::sqrt(static_cast<double>(m));
    std::vector<Amplitude> amps(m);
    for (std::size_t j = 0; j < m; ++j) {
        amps[j] = std::polar(modulus, phases[j]);
    }
    return QuantumState(phases.num_qubits(), std::move(amps));
}

double neuron_output_statevector(const PhaseVector& x, const PhaseVector& w, Backend backend) {
    const Circuit circuit = build_neuron_circuit(x, w, backend);
    const QuantumState final_state = run_circuit(circuit, QuantumState(circuit.num_qubits));
    return marginal_one_probability(final_state, x.num_qubits());
}

std::string format_circuit(const Circuit& circuit) {
    std::ostringstream out;
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
        case GateKind::Hadamard:
            out << "H " << gate.target << '\n';
            break;
        case GateKind::PauliX:
            out << "X " << gate.target << '\n';
            break;
        case GateKind::ControlledPhase:
            out << "CPHASE " << gate.target << " [";
            for (std::size_t i = 0; i < gate.controls.size(); ++i) {
                out << (i ? " " : "") << gate.controls[i];
            }
            out << "] " << format_double(gate.angle) << '\n';
            break;
        case GateKind::MultiControlledX:
            out << "MCX " << gate.target << " [";
            for (std::size_t i = 0; i < gate.controls.size(); ++i) {
                out << (i ? " " : "") << gate.controls[i];
            }
            out << "]\n";
            break;
        }
    }
    return out.str();
}

} // namespace phaseron
