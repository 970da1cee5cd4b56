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

#ifndef QECOPT_CORPUS_H
#define QECOPT_CORPUS_H

#include <string>
#include <vector>

#include "qecopt/verifier.h"

namespace qecopt {

/// What a sequence promises. `code` names a builtin code; `target` is used by StatePrep,
/// `gate` by LogicalGate and `stabilizers` (1-based) by Stabilizer.
struct Contract {
    ContractKind kind = ContractKind::StatePrep;
    std::string code;
    std::vector<int> stabilizers;
    std::string gate;
    StateVector target;
};

struct Fixture {
    std::string name;
    PulseSequence sequence;
    Contract contract;
};

VerificationReport verify_contract(const PulseSequence &seq, const Contract &contract, double tol = 1e-9);

/// Every published sequence with its contract, including the cyclic and rearranged stabilizer
/// variants.
std::vector<Fixture> regression_corpus();

/// Five-qubit superposition preparation. With `negative_first` the leading Y(pi/2) becomes
/// Y(-pi/2) and the result is cos(a)|0_L> - sin(a)|1_L> instead of sin(a)|0_L> + cos(a)|1_L>.
Fixture five_qubit_superposition(double alpha, bool negative_first = false);

/// Steane superposition preparation giving cos(a)|0_L> + sin(a)|1_L>.
Fixture steane_superposition(double alpha);

/// The four single-stabilizer five-qubit sequences chained with measure/reset of the shared
/// auxiliary qubit (52 unitaries).
PulseSequence assembled_five_qubit_stabilizers();

/// Replaces code-qubit indices in z pulses: qubit q becomes map(q). Auxiliary qubits keep theirs.
PulseSequence relabel_z(const PulseSequence &seq, const std::vector<int> &map);

}  // namespace qecopt

#endif
