#include "phaseron/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace phaseron {

namespace {

void check_same_dimension(const PhaseVector& x, const PhaseVector& w) {
    if (x.size() != w.size()) {
        throw std::invalid_argument("phase vectors differ in dimension");
    }
}

} // namespace

std::complex<double> inner_product(const PhaseVector& x, const PhaseVector& w) {
    check_same_dimension(x, w);
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < x.size(); ++j) {
        sum += std::polar(1.0, x[j] - w[j]);
    }
    return sum / static_cast<double>(x.size());
}

ActivationValue activation(const PhaseVector& x, const PhaseVector& w) {
    check_same_dimension(x, w);
    const std::size_t m = x.size();

    ActivationValue value;
    value.inner = inner_product(x, w);
    value.output = std::norm(value.inner);

    // Independent route: the cosine double sum over all component pairs.
    double double_sum = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        const double alpha_j = x[j] - w[j];
        for (std::size_t l = 0; l < m; ++l) {
            const double alpha_l = x[l] - w[l];
            double_sum += std::cos(alpha_j - alpha_l);
        }
    }
    double_sum /= static_cast<double>(m) * static_cast<double>(m);

    const double tolerance = std::max(1e-12, 1e-16 * static_cast<double>(m * m));
    if (std::abs(value.output - double_sum) > tolerance) {
        throw std::logic_error("activation self-check failed: |inner|^2 and the cosine "
                               "double sum disagree");
    }
    return value;
}

std::vector<double> activation_gradient(const PhaseVector& x, const PhaseVector& w) {
    check_same_dimension(x, w);
    const std::size_t m = x.size();
    std::vector<double> alpha(m);
    for (std::size_t j = 0; j < m; ++j) {
        alpha[j] = x[j] - w[j];
    }
    std::vector<double> gradient(m, 0.0);
    const double scale = 2.0 / (static_cast<double>(m) * static_cast<double>(m));
    for (std::size_t k = 0; k < m; ++k) {
        double sum = 0.0;
        for (std::size_t l = 0; l < m; ++l) {
            sum += std::sin(alpha[k] - alpha[l]);
        }
        gradient[k] = scale * sum;
    }
    return gradient;
}

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& rhs) const {
    if (dim_ != rhs.dim_) {
        throw std::invalid_argument("matrix dimensions differ");
    }
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t k = 0; k < dim_; ++k) {
            const std::complex<double> lhs_ik = at(i, k);
            if (lhs_ik == std::complex<double>{0.0, 0.0}) {
                continue;
            }
            for (std::size_t j = 0; j < dim_; ++j) {
                out.at(i, j) += lhs_ik * rhs.at(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out.at(i, j) = std::conj(at(j, i));
        }
    }
    return out;
}

std::vector<std::complex<double>> ComplexMatrix::apply(
    const std::vector<std::complex<double>>& vec) const {
    if (vec.size() != dim_) {
        throw std::invalid_argument("vector length does not match matrix dimension");
    }
    std::vector<std::complex<double>> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        std::complex<double> sum{0.0, 0.0};
        for (std::size_t j = 0; j < dim_; ++j) {
            sum += at(i, j) * vec[j];
        }
        out[i] = sum;
    }
    return out;
}

namespace {

// Per-gate unitary written down from the gate definition, column by column.
ComplexMatrix gate_matrix(const Gate& gate, int num_qubits) {
    const std::size_t dim = std::size_t{1} << num_qubits;
    const std::size_t target_bit = std::size_t{1} << gate.target;
    std::size_t control_mask = 0;
    for (int q : gate.controls) {
        control_mask |= std::size_t{1} << q;
    }

    ComplexMatrix m(dim);
    switch (gate.kind) {
    case GateKind::Hadamard: {
        const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
        for (std::size_t col = 0; col < dim; ++col) {
            const std::size_t low = col & ~target_bit;
            const std::size_t high = col | target_bit;
            m.at(low, col) = inv_sqrt2;
            m.at(high, col) = (col & target_bit) ? -inv_sqrt2 : inv_sqrt2;
        }
        break;
    }
    case GateKind::PauliX:
        for (std::size_t col = 0; col < dim; ++col) {
            m.at(col ^ target_bit, col) = 1.0;
        }
        break;
    case GateKind::ControlledPhase: {
        const std::size_t full_mask = control_mask | target_bit;
        for (std::size_t col = 0; col < dim; ++col) {
            m.at(col, col) =
                ((col & full_mask) == full_mask) ? std::polar(1.0, gate.angle) : 1.0;
        }
        break;
    }
    case GateKind::MultiControlledX:
        for (std::size_t col = 0; col < dim; ++col) {
            const std::size_t row =
                ((col & control_mask) == control_mask) ? (col ^ target_bit) : col;
            m.at(row, col) = 1.0;
        }
        break;
    }
    return m;
}

} // namespace

ComplexMatrix dense_unitary(const Circuit& circuit) {
    if (circuit.num_qubits > 6) {
        throw CapacityError("dense_unitary is guarded to 6 qubits");
    }
    if (circuit.num_qubits < 1) {
        throw std::invalid_argument("circuit has no qubits");
    }
    const std::size_t dim = std::size_t{1} << circuit.num_qubits;
    ComplexMatrix product = ComplexMatrix::identity(dim);
    for (const Gate& gate : circuit.gates) {
        product = gate_matrix(gate, circuit.num_qubits) * product;
    }
    return product;
}

} // namespace phaseron
