// Python bindings for the phaseron core: statevector simulation, the two
// circuit-synthesis backends, the closed-form activation/gradient oracle,
// the training loop and the experiment drivers.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "phaseron/experiments.hpp"
#include "phaseron/oracle.hpp"
#include "phaseron/training.hpp"
#include "phaseron/version.hpp"

namespace py = pybind11;
using namespace phaseron;

namespace {

std::string run_record_csv(const RunRecord& record) {
    std::ostringstream out;
    record.write_csv(out);
    return out.str();
}

} // namespace

PYBIND11_MODULE(_phaseron, m) {
    m.doc() = "Phase-encoded quantum neuron simulator";
    m.attr("__version__") = kVersion;

    py::register_exception<InvalidGateError>(m, "InvalidGateError", PyExc_ValueError);
    py::register_exception<CorruptedStateError>(m, "CorruptedStateError", PyExc_ValueError);
    py::register_exception<CapacityError>(m, "CapacityError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<IoError>(m, "IoError", PyExc_OSError);

    // statevector core
    py::enum_<GateKind>(m, "GateKind")
        .value("Hadamard", GateKind::Hadamard)
        .value("PauliX", GateKind::PauliX)
        .value("ControlledPhase", GateKind::ControlledPhase)
        .value("MultiControlledX", GateKind::MultiControlledX);

    py::class_<Gate>(m, "Gate")
        .def_static("hadamard", &Gate::hadamard, py::arg("target"))
        .def_static("pauli_x", &Gate::pauli_x, py::arg("target"))
        .def_static("controlled_phase", &Gate::controlled_phase, py::arg("angle"),
                    py::arg("controls"), py::arg("target"))
        .def_static("multi_controlled_x", &Gate::multi_controlled_x, py::arg("controls"),
                    py::arg("target"))
        .def_readonly("kind", &Gate::kind)
        .def_readonly("target", &Gate::target)
        .def_readonly("controls", &Gate::controls)
        .def_readonly("angle", &Gate::angle);

    py::class_<Circuit>(m, "Circuit")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def_readonly("num_qubits", &Circuit::num_qubits)
        .def_readonly("gates", &Circuit::gates)
        .def("append", &Circuit::append)
        .def("__len__", &Circuit::size)
        .def("__str__", [](const Circuit& c) { return format_circuit(c); });

    py::class_<QuantumState>(m, "QuantumState")
        .def(py::init<int>(), py::arg("num_qubits"))
        .def(py::init<int, std::size_t>(), py::arg("num_qubits"), py::arg("basis_index"))
        .def(py::init<int, std::vector<Amplitude>>(), py::arg("num_qubits"),
             py::arg("amplitudes"))
        .def_property_readonly("num_qubits", &QuantumState::num_qubits)
        .def_property_readonly("dimension", &QuantumState::dimension)
        .def("amplitudes", &QuantumState::amplitudes)
        .def("amplitude", &QuantumState::amplitude, py::arg("index"))
        .def("norm_squared", &QuantumState::norm_squared);

    py::class_<ShotCounts>(m, "ShotCounts")
        .def_readonly("count0", &ShotCounts::count0)
        .def_readonly("count1", &ShotCounts::count1);

    m.def("apply_gate", &apply_gate, py::arg("state"), py::arg("gate"));
    m.def("run_circuit", &run_circuit, py::arg("circuit"), py::arg("initial"));
    m.def("probability_of_basis_state", &probability_of_basis_state, py::arg("state"),
          py::arg("index"));
    m.def("marginal_one_probability", &marginal_one_probability, py::arg("state"),
          py::arg("qubit"));
    m.def("sample_measurements", &sample_measurements, py::arg("state"), py::arg("qubit"),
          py::arg("shots"), py::arg("seed"));

    // circuit builders
    py::enum_<Backend>(m, "Backend")
        .value("RotationBlocks", Backend::RotationBlocks)
        .value("Hsgs", Backend::Hsgs);

    py::class_<PhaseVector>(m, "PhaseVector")
        .def(py::init<std::vector<double>>(), py::arg("phases"))
        .def_static("zeros", &PhaseVector::zeros, py::arg("size"))
        .def_property_readonly("num_qubits", &PhaseVector::num_qubits)
        .def("phases", &PhaseVector::phases)
        .def("__len__", &PhaseVector::size)
        .def("__getitem__", [](const PhaseVector& v, std::size_t j) {
            if (j >= v.size()) {
                throw py::index_error();
            }
            return v[j];
        });

    py::class_<GateCostReport>(m, "GateCostReport")
        .def_readonly("total_gates", &GateCostReport::total_gates)
        .def_readonly("multi_controlled_count", &GateCostReport::multi_controlled_count)
        .def_readonly("max_control_arity", &GateCostReport::max_control_arity);

    m.def("rotation_block", &rotation_block, py::arg("n_qubits"), py::arg("j"),
          py::arg("angle"));
    m.def("build_input_operator", &build_input_operator, py::arg("x"), py::arg("backend"));
    m.def("build_weight_operator", &build_weight_operator, py::arg("w"), py::arg("backend"));
    m.def("hsgs_phase_stage", &hsgs_phase_stage, py::arg("phases"), py::arg("sign"));
    m.def("build_neuron_circuit", &build_neuron_circuit, py::arg("x"), py::arg("w"),
          py::arg("backend"));
    m.def("binary_specialize", &binary_specialize, py::arg("bits"));
    m.def("gate_cost", &gate_cost, py::arg("circuit"));
    m.def("phase_state", &phase_state, py::arg("phases"));
    m.def("neuron_output_statevector", &neuron_output_statevector, py::arg("x"), py::arg("w"),
          py::arg("backend"));
    m.def("format_circuit", &format_circuit, py::arg("circuit"));

    // analytic oracle
    py::class_<ActivationValue>(m, "ActivationValue")
        .def_readonly("inner", &ActivationValue::inner)
        .def_readonly("output", &ActivationValue::output);

    m.def("inner_product", &inner_product, py::arg("x"), py::arg("w"));
    m.def("activation", &activation, py::arg("x"), py::arg("w"));
    m.def("activation_gradient", &activation_gradient, py::arg("x"), py::arg("w"));

    // training
    py::class_<TrainingSample>(m, "TrainingSample")
        .def(py::init([](PhaseVector input, double target) {
                 return TrainingSample{std::move(input), target};
             }),
             py::arg("input"), py::arg("target"))
        .def_readonly("input", &TrainingSample::input)
        .def_readonly("target", &TrainingSample::target);

    py::enum_<EvalMode::Kind>(m, "EvalKind")
        .value("Analytic", EvalMode::Kind::Analytic)
        .value("Statevector", EvalMode::Kind::Statevector)
        .value("Sampled", EvalMode::Kind::Sampled);

    py::class_<EvalMode>(m, "EvalMode")
        .def_static("analytic", &EvalMode::analytic)
        .def_static("statevector", &EvalMode::statevector)
        .def_static("sampled", &EvalMode::sampled, py::arg("shots"))
        .def_readonly("kind", &EvalMode::kind)
        .def_readonly("shots", &EvalMode::shots);

    py::class_<TrainingConfig>(m, "TrainingConfig")
        .def(py::init<>())
        .def_readwrite("learning_rate", &TrainingConfig::learning_rate)
        .def_readwrite("max_steps", &TrainingConfig::max_steps)
        .def_readwrite("cost_threshold", &TrainingConfig::cost_threshold)
        .def_readwrite("stop_on_cost_increase", &TrainingConfig::stop_on_cost_increase)
        .def_readwrite("mode", &TrainingConfig::mode)
        .def_readwrite("backend", &TrainingConfig::backend)
        .def_readwrite("seed", &TrainingConfig::seed);

    py::enum_<StopReason>(m, "StopReason")
        .value("ThresholdReached", StopReason::ThresholdReached)
        .value("CostIncreased", StopReason::CostIncreased)
        .value("MaxSteps", StopReason::MaxSteps);

    py::class_<StepRecord>(m, "StepRecord")
        .def_readonly("step", &StepRecord::step)
        .def_readonly("cost", &StepRecord::cost)
        .def_readonly("weights", &StepRecord::weights)
        .def_readonly("grad_norm", &StepRecord::grad_norm)
        .def_readonly("affinity", &StepRecord::affinity);

    py::class_<RunRecord>(m, "RunRecord")
        .def_readonly("steps", &RunRecord::steps)
        .def_readonly("stop_reason", &RunRecord::stop_reason)
        .def_readonly("rng_algorithm", &RunRecord::rng_algorithm)
        .def_readonly("shuffle_permutation", &RunRecord::shuffle_permutation)
        .def("final_step", &RunRecord::final_step)
        .def("final_cost", &RunRecord::final_cost)
        .def("to_csv", &run_record_csv);

    m.def(
        "cost",
        [](const PhaseVector& w, const std::vector<TrainingSample>& data, const EvalMode& mode,
           Backend backend, std::optional<std::uint64_t> seed) {
            if (seed) {
                Rng rng(*seed);
                return cost(w, data, mode, backend, &rng);
            }
            return cost(w, data, mode, backend, nullptr);
        },
        py::arg("w"), py::arg("data"), py::arg("mode") = EvalMode::analytic(),
        py::arg("backend") = Backend::RotationBlocks, py::arg("seed") = std::nullopt);
    m.def("cost_gradient", &cost_gradient, py::arg("w"), py::arg("data"));
    m.def("gradient_descent_step", &gradient_descent_step, py::arg("w"), py::arg("data"),
          py::arg("learning_rate"));
    m.def("train", &train, py::arg("config"), py::arg("data"), py::arg("w0"));
    m.def("affinity", &affinity, py::arg("w"), py::arg("objective"));
    m.def("train_binary_perceptron", &train_binary_perceptron, py::arg("config"),
          py::arg("data"), py::arg("objective"), py::arg("w0"));

    // experiments
    py::enum_<ExperimentKind>(m, "ExperimentKind")
        .value("InnerProductContinuous", ExperimentKind::InnerProductContinuous)
        .value("InnerProductBinary", ExperimentKind::InnerProductBinary)
        .value("BinaryPerceptron", ExperimentKind::BinaryPerceptron)
        .value("SigmoidTraining", ExperimentKind::SigmoidTraining);

    py::enum_<BackendChoice>(m, "BackendChoice")
        .value("Rotation", BackendChoice::Rotation)
        .value("Hsgs", BackendChoice::Hsgs)
        .value("Both", BackendChoice::Both);

    py::class_<ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("experiment", &ExperimentConfig::experiment)
        .def_readwrite("n_qubits", &ExperimentConfig::n_qubits)
        .def_readwrite("shots", &ExperimentConfig::shots)
        .def_readwrite("backend", &ExperimentConfig::backend)
        .def_readwrite("mode", &ExperimentConfig::mode)
        .def_readwrite("seed", &ExperimentConfig::seed)
        .def_readwrite("out_dir", &ExperimentConfig::out_dir)
        .def_readwrite("dump_circuit", &ExperimentConfig::dump_circuit)
        .def_readwrite("vector_count", &ExperimentConfig::vector_count)
        .def_readwrite("sample_count", &ExperimentConfig::sample_count)
        .def_readwrite("eta", &ExperimentConfig::eta)
        .def_readwrite("max_steps", &ExperimentConfig::max_steps)
        .def_readwrite("cost_threshold", &ExperimentConfig::cost_threshold)
        .def_readwrite("stop_on_cost_increase", &ExperimentConfig::stop_on_cost_increase)
        .def_readwrite("restart_count", &ExperimentConfig::restart_count)
        .def_readwrite("positive_count", &ExperimentConfig::positive_count)
        .def_readwrite("negative_count", &ExperimentConfig::negative_count);

    py::class_<PairResult>(m, "PairResult")
        .def_readonly("x_index", &PairResult::x_index)
        .def_readonly("w_index", &PairResult::w_index)
        .def_readonly("ideal", &PairResult::ideal)
        .def_readonly("measured_rotation", &PairResult::measured_rotation)
        .def_readonly("measured_hsgs", &PairResult::measured_hsgs);

    py::class_<DiscrepancyReport>(m, "DiscrepancyReport")
        .def_readonly("n", &DiscrepancyReport::n)
        .def_readonly("rotation_discrepancy", &DiscrepancyReport::rotation_discrepancy)
        .def_readonly("hsgs_discrepancy", &DiscrepancyReport::hsgs_discrepancy)
        .def_readonly("pairs", &DiscrepancyReport::pairs);

    py::class_<InnerProductResult>(m, "InnerProductResult")
        .def_readonly("report", &InnerProductResult::report)
        .def_readonly("files", &InnerProductResult::files);

    py::class_<PerceptronResult>(m, "PerceptronResult")
        .def_readonly("objective", &PerceptronResult::objective)
        .def_readonly("restarts", &PerceptronResult::restarts)
        .def_readonly("mean_affinity", &PerceptronResult::mean_affinity)
        .def_readonly("files", &PerceptronResult::files);

    py::class_<SigmoidResult>(m, "SigmoidResult")
        .def_readonly("objective", &SigmoidResult::objective)
        .def_readonly("record", &SigmoidResult::record)
        .def_readonly("files", &SigmoidResult::files);

    m.def("discrepancy", &discrepancy, py::arg("ideal"), py::arg("measured"));
    m.def("run_inner_product_experiment", &run_inner_product_experiment, py::arg("config"));
    m.def("run_binary_perceptron_experiment", &run_binary_perceptron_experiment,
          py::arg("config"));
    m.def("run_sigmoid_experiment", &run_sigmoid_experiment, py::arg("config"));
}
