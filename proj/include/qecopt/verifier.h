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

#ifndef QECOPT_VERIFIER_H
#define QECOPT_VERIFIER_H

#include <string>
#include <utility>
#include <vector>

#include "qecopt/codes.h"
#include "qecopt/gateset.h"

namespace qecopt {

/// One measurement history. `state` is unnormalized; `weight` is its squared norm.
struct Branch {
    StateVector state;
    std::vector<std::pair<int, int>> outcomes;
    double weight = 1.0;
};

/// Applies `seq` to `input`, splitting on measurements. Branches below 1e-14 are dropped.
/// Reset needs the qubit pure within the branch; throws ResetOnEntangledQubit otherwise.
std::vector<Branch> simulate(const PulseSequence &seq, const StateVector &input);

enum class ContractKind { Syndrome, Stabilizer, Coherent, StatePrep, LogicalGate };

std::string_view contract_kind_name(ContractKind kind);

struct ErrorResult {
    std::string label;
    std::string outcome;
    double weight = 0.0;
    double fidelity = 0.0;
    double phase = 0.0;
};

struct VerificationReport {
    ContractKind contract = ContractKind::StatePrep;
    std::string subject;
    bool pass = false;
    double worst_fidelity = 1.0;
    std::vector<ErrorResult> errors;
    /// Discovered error label -> outcome bits, in error order.
    std::vector<std::pair<std::string, std::string>> outcome_map;
    std::vector<std::string> failures;
    /// Logical gate checks.
    double gate_deviation = 0.0;
    double gate_phase = 0.0;
    double objective_value = 0.0;
    double objective_max = 0.0;
    double leakage = 0.0;
};

/// Floor on the determinism check; a looser verification tolerance also loosens it.
constexpr double kDeterminismTol = 1e-9;

/// Deterministic, injective error -> outcome map that leaves E_j|l_L> intact for l in {0, 1, +}.
VerificationReport verify_syndrome(const PulseSequence &seq, const CodeSpec &code, double tol = 1e-9);

/// As verify_syndrome, but errors with equal eigenvalues under the listed stabilizers (1-based)
/// must share an outcome and the classes must be told apart.
VerificationReport verify_stabilizers(const PulseSequence &seq, const CodeSpec &code, const std::vector<int> &indices,
                                      double tol = 1e-9);

VerificationReport verify_coherent(const PulseSequence &seq, const CodeSpec &code, double tol = 1e-9);

/// Starts from |1...1>. Throws ContractMismatch when the target dimension differs.
VerificationReport verify_state_prep(const PulseSequence &seq, const StateVector &target, double tol = 1e-9);

/// Throws NonUnitarySequence for sequences with M or R and ContractMismatch on size mismatch.
VerificationReport verify_logical_gate(const PulseSequence &seq, const CodeSpec &code, const Operator &gate,
                                       double tol = 1e-9);

/// key=value records separated by blank lines: a summary record, then one per error.
std::string format_report(const VerificationReport &report);

}  // namespace qecopt

#endif
