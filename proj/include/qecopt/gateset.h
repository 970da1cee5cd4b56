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

#ifndef QECOPT_GATESET_H
#define QECOPT_GATESET_H

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "qecopt/tensor.h"

namespace qecopt {

enum class PulseKind {
    GlobalX,
    GlobalY,
    MSXX,
    MSYY,
    LocalZ,
    SubsetMSYY,
    Measure,
    Reset,
};

std::string_view kind_name(PulseKind kind);

/// One elementary operation. `qubit` is used by LocalZ/Measure/Reset, `subset` by SubsetMSYY.
/// Qubits are 1-based.
struct Pulse {
    PulseKind kind = PulseKind::GlobalX;
    int qubit = 0;
    std::vector<int> subset;
    double theta = 0.0;

    static Pulse x(double theta);
    static Pulse y(double theta);
    static Pulse xx(double theta);
    static Pulse yy(double theta);
    static Pulse z(int qubit, double theta);
    static Pulse subset_yy(std::vector<int> qubits, double theta);
    static Pulse measure(int qubit);
    static Pulse reset(int qubit);

    bool is_unitary() const;
    bool is_entangling() const;
    bool operator==(const Pulse &other) const = default;
};

struct PulseSequence {
    int n_qubits = 0;
    std::vector<Pulse> pulses;

    std::size_t unitary_count() const;
    std::size_t entangling_count() const;
    double entangling_angle_sum() const;
    std::size_t measure_count() const;
    std::size_t reset_count() const;
    bool has_measurement_or_reset() const;

    /// Throws IndexOutOfRange for qubit references outside [1, n_qubits] or malformed subsets.
    void validate() const;
};

void validate_pulse(const Pulse &p, int n_qubits);

Operator hamiltonian(const Pulse &p, int n_qubits);
Operator pulse_unitary(const Pulse &p, int n_qubits);

/// (-i H)^order exp(-i theta H); order 1 is dU/dtheta.
Operator pulse_derivative(const Pulse &p, int n_qubits, int order = 1);

/// True when both pulses produce the same unitary within `tol`.
bool same_action(const Pulse &a, const Pulse &b, int n_qubits, double tol = 1e-12);

/// A unitary pulse resolved onto concrete (1-based) qubits of an n-qubit register.
/// Global kinds act on every listed qubit. LocalZ lists exactly one.
struct Generator {
    PulseKind kind = PulseKind::GlobalX;
    std::vector<int> qubits;
};

Generator resolve(const Pulse &p, int n_qubits);

/// Eigenvalues of the generator on each basis index of its diagonalizing frame.
std::vector<double> generator_spectrum(const Generator &g, int n_qubits);

/// Rotates columns of `m` into (inverse = false) or out of (inverse = true) the frame that
/// diagonalizes the generator.
void to_eigenframe(const Generator &g, int n_qubits, Eigen::Ref<Operator> m, bool inverse);

/// Replaces each column v of `m` with (-i H)^order exp(-i theta H) v.
void apply_generator(const Generator &g, double theta, int order, Eigen::Ref<Operator> m);
void apply_generator(const Generator &g, double theta, int order, StateVector &v);

}  // namespace qecopt

#endif
