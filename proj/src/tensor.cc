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

#include "qecopt/tensor.h"

#include <bit>
#include <cmath>
#include <string>

#include "qecopt/error.h"

namespace qecopt {

int qubit_count(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw Error(ErrorKind::DimensionMismatch, "dimension " + std::to_string(dim) + " is not a power of two");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < dim) {
        n++;
    }
    if (n > kMaxQubits) {
        throw Error(ErrorKind::DimensionMismatch, std::to_string(n) + " qubits exceeds the dense limit");
    }
    return n;
}

Operator kron(const Operator &a, const Operator &b) {
    Operator out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

StateVector kron(const StateVector &a, const StateVector &b) {
    StateVector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); i++) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

Operator HermitianEigen::exp(double theta, int order) const {
    Eigen::VectorXcd d(values.size());
    for (Eigen::Index k = 0; k < values.size(); k++) {
        Complex f = std::exp(-kI * theta * values(k));
        for (int o = 0; o < order; o++) {
            f *= -kI * values(k);
        }
        d(k) = f;
    }
    return vectors * d.asDiagonal() * vectors.adjoint();
}

HermitianEigen eigen_hermitian(const Operator &h, double tol) {
    if (h.rows() != h.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "operator is not square");
    }
    double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw Error(ErrorKind::NonHermitian, "max |h - h^dag| = " + std::to_string(defect));
    }
    Eigen::SelfAdjointEigenSolver<Operator> solver(h);
    return HermitianEigen{solver.eigenvalues(), solver.eigenvectors()};
}

Operator expm_hermitian(const Operator &h, double theta, double tol) {
    return eigen_hermitian(h, tol).exp(theta);
}

Complex inner(const Operator &a, const Operator &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "inner product of differently shaped operators");
    }
    return (a.conjugate().cwiseProduct(b)).sum();
}

Complex inner(const StateVector &a, const StateVector &b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "inner product of differently sized vectors");
    }
    return a.dot(b);
}

double fidelity_up_to_phase(const StateVector &a, const StateVector &b, double tol) {
    for (const StateVector *v : {&a, &b}) {
        if (std::abs(v->norm() - 1.0) > tol) {
            throw Error(ErrorKind::NotNormalized, "norm " + std::to_string(v->norm()));
        }
    }
    return std::norm(inner(a, b));
}

double unitarity_defect(const Operator &u) {
    Operator d = u.adjoint() * u - Operator::Identity(u.rows(), u.cols());
    return d.cwiseAbs().maxCoeff();
}

bool is_unitary(const Operator &u, double tol) {
    return u.rows() == u.cols() && unitarity_defect(u) < tol;
}

Operator pauli_matrix(char p) {
    Operator m = Operator::Zero(2, 2);
    switch (p) {
        case 'I':
            m(0, 0) = m(1, 1) = 1;
            break;
        case 'X':
            m(0, 1) = m(1, 0) = 1;
            break;
        case 'Y':
            m(0, 1) = -kI;
            m(1, 0) = kI;
            break;
        case 'Z':
            m(0, 0) = 1;
            m(1, 1) = -1;
            break;
        default:
            throw Error(ErrorKind::ParseError, std::string("unknown Pauli '") + p + "'");
    }
    return m;
}

Operator embed(const Operator &single, int qubit, int n_qubits) {
    if (qubit < 1 || qubit > n_qubits) {
        throw Error(ErrorKind::IndexOutOfRange, "qubit " + std::to_string(qubit));
    }
    Operator out = Operator::Identity(1, 1);
    for (int q = 1; q <= n_qubits; q++) {
        out = kron(out, q == qubit ? single : pauli_matrix('I'));
    }
    return out;
}

Operator pauli_operator(std::string_view pauli) {
    Operator out = Operator::Identity(1, 1);
    for (char c : pauli) {
        out = kron(out, pauli_matrix(c));
    }
    return out;
}

void apply_pauli(std::string_view pauli, StateVector &psi) {
    int n = qubit_count(psi.size());
    if (static_cast<int>(pauli.size()) > n) {
        throw Error(ErrorKind::DimensionMismatch, "Pauli string longer than register");
    }
    std::uint64_t xmask = 0;
    std::uint64_t zmask = 0;
    int ycount = 0;
    for (int q = 1; q <= static_cast<int>(pauli.size()); q++) {
        std::uint64_t bit = std::uint64_t{1} << (n - q);
        switch (pauli[q - 1]) {
            case 'I':
                break;
            case 'X':
                xmask |= bit;
                break;
            case 'Z':
                zmask |= bit;
                break;
            case 'Y':
                xmask |= bit;
                zmask |= bit;
                ycount++;
                break;
            default:
                throw Error(ErrorKind::ParseError, std::string("unknown Pauli '") + pauli[q - 1] + "'");
        }
    }
    // Y = i X Z, so the string equals i^ycount X(xmask) Z(zmask).
    Complex global = std::pow(kI, ycount);
    StateVector out(psi.size());
    for (std::uint64_t k = 0; k < static_cast<std::uint64_t>(psi.size()); k++) {
        double sign = (std::popcount(k & zmask) & 1) ? -1.0 : 1.0;
        out(static_cast<Eigen::Index>(k ^ xmask)) = global * sign * psi(static_cast<Eigen::Index>(k));
    }
    psi = std::move(out);
}

StateVector basis_state(std::string_view bits) {
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw Error(ErrorKind::ParseError, "bad bit string");
        }
        index = (index << 1) | static_cast<std::uint64_t>(c - '0');
    }
    return basis_state(index, static_cast<int>(bits.size()));
}

StateVector basis_state(std::uint64_t index, int n_qubits) {
    StateVector v = StateVector::Zero(Eigen::Index{1} << n_qubits);
    v(static_cast<Eigen::Index>(index)) = 1;
    return v;
}

}  // namespace qecopt
