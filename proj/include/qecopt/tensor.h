// Copyright 2026 The qecopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECOPT_TENSOR_H
#define QECOPT_TENSOR_H

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string_view>

namespace qecopt {

using Complex = std::complex<double>;
using StateVector = Eigen::VectorXcd;
using Operator = Eigen::MatrixXcd;

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxQubits = 12;

/// Numerical thresholds. The defaults sit well above rounding noise at 2^9 dimensions.
struct Tolerances {
    double hermitian = 1e-12;
    double unitary = 1e-10;
    double normalization = 1e-12;
};

/// Number of qubits N for a dimension 2^N. Throws DimensionMismatch otherwise.
int qubit_count(Eigen::Index dim);

/// Value (0 or 1) of 1-based `qubit` in basis index `index`. Qubit 1 is the most significant bit.
inline int bit_of(std::uint64_t index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - qubit)) & 1u);
}

Operator kron(const Operator &a, const Operator &b);
StateVector kron(const StateVector &a, const StateVector &b);

/// Eigenpairs of a Hermitian operator, reusable for many angles.
struct HermitianEigen {
    Eigen::VectorXd values;
    Operator vectors;

    /// (-i h)^order exp(-i theta h).
    Operator exp(double theta, int order = 0) const;
};

HermitianEigen eigen_hermitian(const Operator &h, double tol = Tolerances{}.hermitian);

/// exp(-i theta h) for Hermitian h.
Operator expm_hermitian(const Operator &h, double theta, double tol = Tolerances{}.hermitian);

/// tr(a^dag b) for operators, <a|b> for vectors.
Complex inner(const Operator &a, const Operator &b);
Complex inner(const StateVector &a, const StateVector &b);

/// |<a|b>|^2 for unit vectors.
double fidelity_up_to_phase(const StateVector &a, const StateVector &b, double tol = Tolerances{}.normalization);

double unitarity_defect(const Operator &u);
bool is_unitary(const Operator &u, double tol = Tolerances{}.unitary);

Operator pauli_matrix(char p);
Operator embed(const Operator &single, int qubit, int n_qubits);
Operator pauli_operator(std::string_view pauli);

/// Applies the Pauli string to the leading qubits of `psi` in place.
void apply_pauli(std::string_view pauli, StateVector &psi);

/// Computational basis state from a bit string such as "0110".
StateVector basis_state(std::string_view bits);
StateVector basis_state(std::uint64_t index, int n_qubits);

}  // namespace qecopt

#endif
