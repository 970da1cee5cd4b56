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

#include "qecopt/corpus.h"

#include <algorithm>
#include <cmath>

#include "qecopt/error.h"
#include "qecopt/sequence_io.h"

namespace qecopt {

namespace {

PulseSequence seq_from(int n_qubits, std::string body) {
    std::replace(body.begin(), body.end(), ';', '\n');
    return parse_sequence("qubits " + std::to_string(n_qubits) + "\n" + body);
}

std::string replace_all(std::string s, const std::string &from, const std::string &to) {
    for (std::size_t pos = s.find(from); pos != std::string::npos; pos = s.find(from, pos + to.size())) {
        s.replace(pos, from.size(), to);
    }
    return s;
}

const char *kBitFlipSyndrome =
    "Y -pi/2; z 4 -pi/2; X -pi/4; z 3 pi; X 3/4 pi; X2 pi/4; z 1 pi; X2 pi/4; M 4; R 4;"
    "X2 pi/4; z 2 pi; X2 pi/4; Y -3/4 pi; z 4 pi; Y pi/4; M 4";
const char *kPhaseFlipSyndrome =
    "X pi/4; z 4 pi; z 3 pi; X -pi/4; X2 pi/4; z 1 pi; X2 pi/4; X pi/2; M 4; R 4;"
    "X2 pi/4; z 2 pi; X2 pi/4; Y pi; M 4";
const char *kCoherent =
    "z 2 pi/2; X2 pi/2; z 2 pi/2; z 1 pi/2; X pi/2; z 4 pi/2; X2 pi/2; z 2 pi; Y -pi/4; z 4 pi/2; z 1 -pi/2;"
    "X2 pi/2; z 2 pi/2; z 1 pi/2; R 4; X2 pi/2; z 3 pi/2; X pi/2; z 2 pi/2; X2 pi/2; z 1 pi/4; z 4 pi/2;"
    "z 3 -pi/2; X2 pi/2; z 1 pi/2; X pi/2; R 4";
const char *kFiveZero =
    "X pi/2; z 5 pi/2; X2 pi/4; X -pi/4; z 1 pi; z 3 pi; X2 pi/4; X 3/4 pi; z 5 pi/2; X -pi/2; X2 pi/4;"
    "z 1 pi; z 4 pi; X2 pi/4; z 5 pi/2";
const char *kFiveOne =
    "X -pi/2; z 5 pi/2; X2 pi/4; X pi/4; z 1 pi; z 3 pi; X2 pi/4; X -3/4 pi; z 5 pi/2; X -pi/2; X2 pi/4;"
    "z 1 pi; z 4 pi; X2 pi/4; z 5 -pi/2";
const char *kFiveSuperposition =
    "Y {first}; z 3 -pi/2; z 5 pi/2; Y2 pi/2; z 4 pi/2; X pi/2; z 1 pi/2; Y2 pi/2; z 3 pi/2; z 2 pi/2;"
    "Y pi/2; z 1 {angle}; Y -pi/2; Y2 pi/2; z 1 pi/2";
const char *kFiveStabilizer =
    "X -pi/2; z 2 pi/2; z 3 pi/2; X pi/4; X2 pi/4; z 5 pi; X2 pi/4; z 6 pi; X pi/4; z 2 pi/2; z 3 pi/2;"
    "X -pi/2; z 5 pi; M 6";
const char *kFiveAllStabilizers =
    "z 3 pi/2; X pi/2; z 3 pi/2; z 2 pi/2; X2 pi/4; z 5 pi; X2 pi/4; z 2 pi/2; X -pi/2; z 2 pi/2; z 4 pi/2;"
    "M 6; R 6; X2 pi/4; z 1 pi; X2 pi/4; z 3 pi/2; M 6; R 6; z 5 pi/2; X2 pi/4; z 2 pi; X2 pi/4; z 4 pi/2;"
    "z 1 pi/2; M 6; R 6; X -pi/2; z 1 pi/2; X2 pi/4; z 3 pi; X2 pi/4; z 1 pi/2; z 5 pi/2; X pi/2; z 5 pi/2;"
    "M 6";
const char *kSteaneSuperposition =
    "Y pi/2; z 7 pi/2; Y2 pi/2; z 7 {angle}; X -pi/2; z 1 pi/2; z 4 pi/2; Y2 pi/2; z 7 pi/2; z 5 pi/2;"
    "Y2 pi/2; z 3 -pi/2; z 4 pi/2; Y2 pi/2; z 2 pi/2; z 7 pi/2; Y2 pi/2; z 6 pi/2; z 4 pi/2; X pi/2; Y pi/2;"
    "z 7 pi/2; z 1 pi/2";
const char *kSteane22 =
    "Y {first}; z 3 pi/2; z 4 pi/2; X -pi/2; z 5 pi/2; X2 pi/2; z 7 pi/2; z 6 pi/2; z 3 -pi/2; X2 pi/2;"
    "z 5 pi/2; X pi/2; z 7 pi/2; z 3 pi/2; z 1 pi/2; X2 pi/2; z 2 pi/2; z 3 pi/2; X2 pi/2; z 5 pi/2;"
    "z 7 pi/2; X -pi/2";
const char *kSteaneThreeMs =
    "Y -pi/2; z 6 pi/2; z 7 pi/2; z 1 pi/2; Y2 pi/2; X pi/4; z 5 pi; z 2 pi; z 7 pi; X pi/4; Y2 pi/2;"
    "z 4 pi/2; z 3 pi/2; z 7 pi/2; X pi/4; Y -pi/2; z 5 pi/2; MSY2 1,3,5,7 pi/2; z 7 -pi/2";
const char *kSteaneStabilizerX =
    "X pi/4; z 2 pi; z 8 pi; X2 pi/8; z 3 pi; z 1 pi; X pi/4; X2 pi/8; z 1 pi; z 2 pi; X2 pi/8; z 3 pi;"
    "z 1 pi; X2 pi/8; z 1 pi; M 8";
const char *kSteaneStabilizerZ =
    "Y pi/2; X -pi/4; z 8 pi/2; X2 pi/8; z 3 pi; z 2 pi; X2 pi/8; z 2 pi; z 1 pi; X2 pi/8; z 2 pi; z 3 pi;"
    "X2 pi/8; z 3 pi; z 8 pi/2; X 3/4 pi; Y pi/2; M 8";
const char *kFiveHadamard =
    "z 3 pi/2; z 4 pi/2; X pi/2; z 3 pi/2; Y2 pi/2; z 4 pi/2; z 1 pi/2; X pi/2; z 1 -pi/2; Y2 pi/2; z 1 pi/2;"
    "z 2 pi/2; X pi/2; Y2 pi/2; z 4 pi/2; z 1 pi/2; Y2 pi/2; z 4 pi/2; z 2 pi/2";
const char *kSteanePi8 =
    "X pi/2; z 5 pi/2; Y2 pi/2; z 5 -pi/2; X pi/2; z 5 3/4 pi; Y2 pi/2; X -pi/4; z 5 pi/2; Y2 pi/2; X pi/2;"
    "Y2 pi/2; z 5 pi/4; Y pi/2; z 5 pi/4; Y2 pi/2; X pi/2; Y2 pi/2; z 5 pi/2; X -pi/4; Y2 pi/2";

Contract syndrome(const std::string &code) {
    return Contract{ContractKind::Syndrome, code, {}, {}, {}};
}

Contract stabilizers(const std::string &code, std::vector<int> indices) {
    return Contract{ContractKind::Stabilizer, code, std::move(indices), {}, {}};
}

Contract prep(StateVector target) {
    return Contract{ContractKind::StatePrep, {}, {}, {}, std::move(target)};
}

Contract gate(const std::string &code, const std::string &name) {
    return Contract{ContractKind::LogicalGate, code, {}, name, {}};
}

std::vector<int> cyclic_map(int shift) {
    std::vector<int> m(5);
    for (int q = 1; q <= 5; q++) {
        m[static_cast<std::size_t>(q - 1)] = (q - 1 + shift) % 5 + 1;
    }
    return m;
}

}  // namespace

PulseSequence relabel_z(const PulseSequence &seq, const std::vector<int> &map) {
    PulseSequence out = seq;
    for (auto &p : out.pulses) {
        if (p.kind == PulseKind::LocalZ && p.qubit >= 1 && p.qubit <= static_cast<int>(map.size())) {
            p.qubit = map[static_cast<std::size_t>(p.qubit - 1)];
        }
    }
    out.validate();
    return out;
}

VerificationReport verify_contract(const PulseSequence &seq, const Contract &c, double tol) {
    switch (c.kind) {
        case ContractKind::Syndrome:
            return verify_syndrome(seq, builtin_code(c.code), tol);
        case ContractKind::Stabilizer:
            return verify_stabilizers(seq, builtin_code(c.code), c.stabilizers, tol);
        case ContractKind::Coherent:
            return verify_coherent(seq, builtin_code(c.code), tol);
        case ContractKind::StatePrep:
            return verify_state_prep(seq, c.target, tol);
        case ContractKind::LogicalGate:
            return verify_logical_gate(seq, builtin_code(c.code), named_gate(c.gate), tol);
    }
    throw Error(ErrorKind::ConfigInvalid, "unknown contract");
}

Fixture five_qubit_superposition(double alpha, bool negative_first) {
    CodeSpec code = builtin_code("five_qubit");
    std::string body = replace_all(kFiveSuperposition, "{first}", negative_first ? "-pi/2" : "pi/2");
    body = replace_all(body, "{angle}", format_angle(2.0 * alpha));
    StateVector target = negative_first
                             ? StateVector(std::cos(alpha) * code.codewords[0] - std::sin(alpha) * code.codewords[1])
                             : StateVector(std::sin(alpha) * code.codewords[0] + std::cos(alpha) * code.codewords[1]);
    return Fixture{"five_qubit_superposition", seq_from(5, body), prep(target)};
}

Fixture steane_superposition(double alpha) {
    CodeSpec code = builtin_code("steane");
    std::string body = replace_all(kSteaneSuperposition, "{angle}", format_angle(2.0 * alpha - kPi / 2.0));
    StateVector target = std::cos(alpha) * code.codewords[0] + std::sin(alpha) * code.codewords[1];
    return Fixture{"steane_superposition", seq_from(7, body), prep(target)};
}

PulseSequence assembled_five_qubit_stabilizers() {
    PulseSequence base = seq_from(6, kFiveStabilizer);
    PulseSequence out;
    out.n_qubits = 6;
    for (int s = 0; s < 4; s++) {
        PulseSequence part = relabel_z(base, cyclic_map(s));
        if (s > 0) {
            out.pulses.push_back(Pulse::reset(6));
        }
        out.pulses.insert(out.pulses.end(), part.pulses.begin(), part.pulses.end());
    }
    return out;
}

std::vector<Fixture> regression_corpus() {
    CodeSpec five = builtin_code("five_qubit");
    CodeSpec steane = builtin_code("steane");
    std::vector<Fixture> c;
    c.push_back({"three_bitflip_syndrome", seq_from(4, kBitFlipSyndrome), syndrome("three_bitflip")});
    c.push_back({"three_phaseflip_syndrome", seq_from(4, kPhaseFlipSyndrome), syndrome("three_phaseflip")});
    c.push_back({"three_bitflip_coherent", seq_from(4, kCoherent),
                 Contract{ContractKind::Coherent, "three_bitflip", {}, {}, {}}});
    c.push_back({"five_qubit_zero", seq_from(5, kFiveZero), prep(five.codewords[0])});
    c.push_back({"five_qubit_one", seq_from(5, kFiveOne), prep(five.codewords[1])});
    c.push_back(five_qubit_superposition(kPi / 5.0));
    PulseSequence stab = seq_from(6, kFiveStabilizer);
    for (int s = 0; s < 4; s++) {
        c.push_back({"five_qubit_stabilizer_" + std::to_string(s + 1), relabel_z(stab, cyclic_map(s)),
                     stabilizers("five_qubit", {s + 1})});
    }
    c.push_back({"five_qubit_all_stabilizers", seq_from(6, kFiveAllStabilizers),
                 stabilizers("five_qubit", {1, 2, 3, 4})});
    c.push_back(steane_superposition(kPi / 5.0));
    c.push_back({"steane_zero_22", seq_from(7, replace_all(kSteane22, "{first}", "-pi/2")), prep(steane.codewords[0])});
    c.push_back({"steane_one_22", seq_from(7, replace_all(kSteane22, "{first}", "pi/2")), prep(steane.codewords[1])});
    c.push_back({"steane_zero_subset_ms", seq_from(7, kSteaneThreeMs), prep(steane.codewords[0])});
    const std::vector<std::vector<int>> rearrangements = {{1, 2, 3}, {1, 4, 5}, {2, 4, 6}};
    for (int family = 0; family < 2; family++) {
        PulseSequence base = seq_from(8, family == 0 ? kSteaneStabilizerX : kSteaneStabilizerZ);
        for (std::size_t r = 0; r < rearrangements.size(); r++) {
            int index = family * 3 + static_cast<int>(r) + 1;
            c.push_back({"steane_stabilizer_" + std::to_string(index), relabel_z(base, rearrangements[r]),
                         stabilizers("steane", {index})});
        }
    }
    c.push_back({"five_qubit_hadamard", seq_from(5, kFiveHadamard), gate("five_qubit", "H")});
    c.push_back({"steane_pi8", seq_from(7, kSteanePi8), gate("steane", "pi8")});
    return c;
}

}  // namespace qecopt
