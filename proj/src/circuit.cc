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

#include "qecopt/circuit.h"

#include <algorithm>
#include <string>

#include "qecopt/error.h"

namespace qecopt {

Generator UnitaryCircuit::generator(std::size_t k) const {
    const CircuitPulse &cp = pulses.at(k);
    const std::vector<int> &layout = layouts.at(static_cast<std::size_t>(cp.segment));
    Generator phys = resolve(cp.pulse, n_physical);
    for (int &q : phys.qubits) {
        q = layout[static_cast<std::size_t>(q - 1)];
    }
    if (phys.kind == PulseKind::SubsetMSYY) {
        std::sort(phys.qubits.begin(), phys.qubits.end());
    }
    return phys;
}

std::size_t UnitaryCircuit::entangling_count() const {
    return std::count_if(pulses.begin(), pulses.end(), [](const CircuitPulse &p) { return p.pulse.is_entangling(); });
}

std::vector<double> UnitaryCircuit::free_angles() const {
    std::vector<double> out;
    for (const auto &p : pulses) {
        if (!p.fixed) {
            out.push_back(p.pulse.theta);
        }
    }
    return out;
}

void UnitaryCircuit::validate() const {
    if (layouts.empty()) {
        throw Error(ErrorKind::ContractMismatch, "circuit has no layout");
    }
    for (const auto &layout : layouts) {
        if (static_cast<int>(layout.size()) != n_physical) {
            throw Error(ErrorKind::ContractMismatch, "layout size differs from physical qubit count");
        }
        std::vector<int> sorted = layout;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end() || sorted.front() < 1 ||
            sorted.back() > n_qubits) {
            throw Error(ErrorKind::ContractMismatch, "layout is not injective into the virtual register");
        }
    }
    int last = 0;
    for (const auto &p : pulses) {
        if (!p.pulse.is_unitary()) {
            throw Error(ErrorKind::MeasurementInUnitarySegment, "measurement or reset inside a unitary circuit");
        }
        if (p.segment < last || p.segment >= static_cast<int>(layouts.size())) {
            throw Error(ErrorKind::ContractMismatch, "pulse segments out of order");
        }
        last = p.segment;
        validate_pulse(p.pulse, n_physical);
    }
}

UnitaryCircuit plain_circuit(const PulseSequence &seq) {
    UnitaryCircuit c;
    c.n_physical = seq.n_qubits;
    c.n_qubits = seq.n_qubits;
    std::vector<int> layout(static_cast<std::size_t>(seq.n_qubits));
    for (int q = 1; q <= seq.n_qubits; q++) {
        layout[static_cast<std::size_t>(q - 1)] = q;
    }
    c.layouts.push_back(layout);
    for (const auto &p : seq.pulses) {
        if (!p.is_unitary()) {
            throw Error(ErrorKind::MeasurementInUnitarySegment, "sequence contains measurement or reset");
        }
        c.pulses.push_back(CircuitPulse{p, 0, false});
    }
    return c;
}

UnitaryCircuit segmented_circuit(int n_physical, int n_code, int n_segments) {
    if (n_segments < 1 || n_code < 0 || n_code > n_physical) {
        throw Error(ErrorKind::ConfigInvalid, "bad segmented circuit shape");
    }
    int n_aux = n_physical - n_code;
    if (n_segments > 1 && n_aux != 1) {
        throw Error(ErrorKind::ConfigInvalid, "segmented circuits need exactly one physical auxiliary qubit");
    }
    UnitaryCircuit c;
    c.n_physical = n_physical;
    c.n_qubits = n_physical + (n_segments - 1);
    for (int s = 0; s < n_segments; s++) {
        std::vector<int> layout;
        for (int q = 1; q <= n_code; q++) {
            layout.push_back(q);
        }
        for (int q = n_code + 1; q <= n_physical; q++) {
            layout.push_back(q + s);
        }
        c.layouts.push_back(layout);
    }
    return c;
}

UnitaryCircuit to_unitary_circuit(const PulseSequence &seq) {
    seq.validate();
    UnitaryCircuit c;
    c.n_physical = seq.n_qubits;
    c.n_qubits = seq.n_qubits;
    std::vector<int> layout(static_cast<std::size_t>(seq.n_qubits));
    for (int q = 1; q <= seq.n_qubits; q++) {
        layout[static_cast<std::size_t>(q - 1)] = q;
    }
    c.layouts.push_back(layout);

    std::size_t last_unitary = 0;
    bool any_unitary = false;
    for (std::size_t k = 0; k < seq.pulses.size(); k++) {
        if (seq.pulses[k].is_unitary()) {
            last_unitary = k;
            any_unitary = true;
        }
    }
    std::vector<bool> measured(static_cast<std::size_t>(seq.n_qubits) + 1, false);
    for (std::size_t k = 0; any_unitary && k <= last_unitary; k++) {
        const Pulse &p = seq.pulses[k];
        if (p.kind == PulseKind::Measure) {
            measured[static_cast<std::size_t>(p.qubit)] = true;
            continue;
        }
        if (p.kind == PulseKind::Reset) {
            measured[static_cast<std::size_t>(p.qubit)] = false;
            c.n_qubits++;
            if (c.n_qubits > kMaxQubits) {
                throw Error(ErrorKind::ContractMismatch, "too many virtual qubits for the swap trick");
            }
            std::vector<int> next = c.layouts.back();
            next[static_cast<std::size_t>(p.qubit - 1)] = c.n_qubits;
            c.layouts.push_back(next);
            continue;
        }
        Generator g = resolve(p, seq.n_qubits);
        for (int q : g.qubits) {
            if (measured[static_cast<std::size_t>(q)]) {
                throw Error(ErrorKind::ContractMismatch,
                            "qubit " + std::to_string(q) + " is used after measurement without reset");
            }
        }
        c.pulses.push_back(CircuitPulse{p, static_cast<int>(c.layouts.size()) - 1, false});
    }
    return c;
}

PulseSequence to_pulse_sequence(const UnitaryCircuit &circuit, int n_code, ReadoutStyle style) {
    PulseSequence seq;
    seq.n_qubits = circuit.n_physical;
    std::size_t k = 0;
    for (std::size_t s = 0; s < circuit.layouts.size(); s++) {
        if (s > 0) {
            for (int q = 1; q <= circuit.n_physical; q++) {
                std::size_t i = static_cast<std::size_t>(q - 1);
                if (circuit.layouts[s][i] != circuit.layouts[s - 1][i]) {
                    if (style == ReadoutStyle::Measured) {
                        seq.pulses.push_back(Pulse::measure(q));
                    }
                    seq.pulses.push_back(Pulse::reset(q));
                }
            }
        }
        while (k < circuit.pulses.size() && circuit.pulses[k].segment == static_cast<int>(s)) {
            seq.pulses.push_back(circuit.pulses[k].pulse);
            k++;
        }
    }
    if (style == ReadoutStyle::Measured) {
        for (int q = n_code + 1; q <= circuit.n_physical; q++) {
            seq.pulses.push_back(Pulse::measure(q));
        }
    }
    return seq;
}

void apply_circuit(const UnitaryCircuit &circuit, Eigen::Ref<Operator> states) {
    for (std::size_t k = 0; k < circuit.pulses.size(); k++) {
        apply_generator(circuit.generator(k), circuit.pulses[k].pulse.theta, 0, states);
    }
}

StateVector evolve(const UnitaryCircuit &circuit, StateVector state) {
    Eigen::Map<Operator> view(state.data(), state.size(), 1);
    apply_circuit(circuit, view);
    return state;
}

Operator circuit_unitary(const UnitaryCircuit &circuit) {
    Operator u = Operator::Identity(Eigen::Index{1} << circuit.n_qubits, Eigen::Index{1} << circuit.n_qubits);
    apply_circuit(circuit, u);
    return u;
}

}  // namespace qecopt
