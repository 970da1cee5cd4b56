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

#ifndef QECOPT_CIRCUIT_H
#define QECOPT_CIRCUIT_H

#include <cstddef>
#include <vector>

#include "qecopt/gateset.h"

namespace qecopt {

struct CircuitPulse {
    Pulse pulse;
    int segment = 0;
    bool fixed = false;
};

/// A measurement-free circuit on virtual qubits.
///
/// Physical qubit p acts on virtual qubit layouts[s][p - 1] during segment s. Global pulses
/// touch only the currently mapped virtual qubits, so a retired auxiliary qubit keeps its
/// state untouched until the end. Segment indices of consecutive pulses never decrease.
struct UnitaryCircuit {
    int n_physical = 0;
    int n_qubits = 0;
    std::vector<std::vector<int>> layouts;
    std::vector<CircuitPulse> pulses;

    std::size_t size() const {
        return pulses.size();
    }
    Generator generator(std::size_t k) const;
    std::size_t entangling_count() const;

    /// Angles of the non-fixed pulses in order.
    std::vector<double> free_angles() const;

    /// Throws ContractMismatch on inconsistent layouts or segment ordering.
    void validate() const;
};

/// One segment, identity layout. Throws MeasurementInUnitarySegment if `seq` has M or R.
UnitaryCircuit plain_circuit(const PulseSequence &seq);

/// Trivial segmented circuit with empty pulse list.
UnitaryCircuit segmented_circuit(int n_physical, int n_code, int n_segments);

/// Swap-trick conversion. Every reset that precedes further unitaries retires the physical
/// qubit's virtual copy and maps it to a fresh one. Trailing measurements/resets are dropped.
/// A measurement must be followed by a reset before the qubit is used again.
UnitaryCircuit to_unitary_circuit(const PulseSequence &seq);

enum class ReadoutStyle {
    Measured,  // M j R j at every remap, then M on every auxiliary qubit.
    Coherent,  // R j at every remap.
};

/// Inverse of to_unitary_circuit. Qubits n_code+1..n_physical are auxiliary.
PulseSequence to_pulse_sequence(const UnitaryCircuit &circuit, int n_code, ReadoutStyle style);

void apply_circuit(const UnitaryCircuit &circuit, Eigen::Ref<Operator> states);
StateVector evolve(const UnitaryCircuit &circuit, StateVector state);
Operator circuit_unitary(const UnitaryCircuit &circuit);

}  // namespace qecopt

#endif
