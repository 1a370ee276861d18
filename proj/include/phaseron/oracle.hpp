// oracle.hpp
// Closed-form references: the neuron activation and its exact gradient, plus
// a dense-matrix brute-force route used to validate gate application and the
// circuit builders. With alpha_j = x_j - w_j,
//
//   <psi_w|psi_i> = (1/m) sum_j e^{i alpha_j}
//   activation    = |<psi_w|psi_i>|^2 = (1/m^2) sum_j sum_l cos(alpha_j - alpha_l)
//   d/dw_k        = (2/m^2) sum_l sin(alpha_k - alpha_l)
//
// Sums run over all components j = 0..m-1. Only phase differences enter, so
// shifting every entry of x or of w by a constant leaves the activation
// unchanged.

#pragma once

#include <complex>
#include <vector>

#include "phaseron/builders.hpp"

namespace phaseron {

struct ActivationValue {
    std::complex<double> inner; // raw <psi_w|psi_i>
    double output = 0.0;        // |inner|^2, in [0, 1]
};

// (1/m) sum_j e^{i (x_j - w_j)}. Throws std::invalid_argument on dimension
// mismatch.
std::complex<double> inner_product(const PhaseVector& x, const PhaseVector& w);

// Activation computed as |inner|^2 and, independently, as the cosine double
// sum; the two routes are cross-checked internally before returning.
ActivationValue activation(const PhaseVector& x, const PhaseVector& w);

// Exact gradient of the activation with respect to each weight phase.
std::vector<double> activation_gradient(const PhaseVector& x, const PhaseVector& w);

// Small dense complex matrix, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(std::size_t dim);
    static ComplexMatrix identity(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::complex<double>& at(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const std::complex<double>& at(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }

    ComplexMatrix operator*(const ComplexMatrix& rhs) const;
    ComplexMatrix adjoint() const;
    std::vector<std::complex<double>> apply(const std::vector<std::complex<double>>& vec) const;

private:
    std::size_t dim_;
    std::vector<std::complex<double>> data_;
};

// Explicit 2^N x 2^N unitary of the circuit, built as the product of per-gate
// matrices constructed from the gate definitions (independent of the
// statevector gate kernels). Guarded to N <= 6; larger requests raise
// CapacityError.
ComplexMatrix dense_unitary(const Circuit& circuit);

} // namespace phaseron
