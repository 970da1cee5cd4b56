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

#ifndef QECOPT_OBJECTIVE_H
#define QECOPT_OBJECTIVE_H

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "qecopt/circuit.h"
#include "qecopt/codes.h"

namespace qecopt {

enum class ObjectiveKind {
    FixedUnitaryRe,
    FixedUnitaryAbs,
    Syndrome,
    CoherentQEC,
    LogicalGate,
    StatePrep,
};

std::string_view objective_kind_name(ObjectiveKind kind);

/// <costates[costate]| U |inputs[input]>.
struct Bracket {
    int costate = 0;
    int input = 0;
};

/// weight * Re(A * conj(B)) with A, B sums of brackets; weight * Re(A) when `b` is empty.
struct Term {
    std::vector<int> a;
    std::vector<int> b;
    double weight = 1.0;
};

/// A performance function in bracket form. Every supported kind is a weighted sum of products
/// of at most two bracket sums.
struct Objective {
    ObjectiveKind kind = ObjectiveKind::StatePrep;
    int n_qubits = 0;
    std::vector<StateVector> inputs;
    std::vector<StateVector> costates;
    std::vector<Bracket> brackets;
    std::vector<Term> terms;
    double max_value = 0.0;
    bool phase_sensitive = false;
    /// Syndrome objectives: aux basis index per error and the number of distinct outcomes.
    std::vector<std::uint64_t> outcomes;
    std::size_t outcome_classes = 0;

    /// Value from bracket values.
    double combine(const std::vector<Complex> &bracket_values) const;
};

using OutcomeMap = std::vector<std::uint64_t>;

/// Error i (in list order) goes to aux basis index i. The first aux qubit is the most significant bit.
OutcomeMap lexicographic_outcomes(const CodeSpec &code);

/// Aux bit k is 1 when the error commutes with stabilizer `indices[k]` (1-based), else 0.
OutcomeMap stabilizer_outcomes(const CodeSpec &code, const std::vector<int> &indices);

Objective fixed_unitary_objective(const Operator &target, bool absolute);
Objective syndrome_objective(const CodeSpec &code, const OutcomeMap &outcomes);

/// Syndrome objective for a subset of stabilizers, one aux qubit each. Errors sharing an outcome
/// are weighted 1/|class| so each outcome class contributes at most one.
Objective stabilizer_objective(const CodeSpec &code, const std::vector<int> &indices);
Objective coherent_objective(const CodeSpec &code);
Objective logical_gate_objective(const CodeSpec &code, const Operator &gate);
Objective state_prep_objective(const StateVector &target, const StateVector &init);

double evaluate(const Objective &objective, const UnitaryCircuit &circuit);

/// Throws MeasurementInUnitarySegment for sequences with M or R.
double evaluate(const Objective &objective, const PulseSequence &sequence);

struct LocalQuadratic {
    double value = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
};

class EvalContext;

/// The objective as an exact function of one pulse angle, all others held fixed.
/// phi(theta) = sum_w Re(A(theta) conj B(theta)) with A(theta) = sum_lambda a_lambda exp(-i theta lambda).
class LocalModel {
   public:
    double value(double theta) const;
    LocalQuadratic at(double theta) const;
    double current_theta() const {
        return theta_;
    }

   private:
    friend class EvalContext;
    void check() const;

    const EvalContext *owner_ = nullptr;
    std::uint64_t generation_ = 0;
    double theta_ = 0.0;
    std::vector<double> lambdas_;
    std::vector<double> weights_;
    std::vector<bool> has_b_;
    std::vector<std::vector<Complex>> alpha_;
    std::vector<std::vector<Complex>> beta_;
};

/// Prefix states and suffix costates around each pulse, extended incrementally as pulses change.
class EvalContext {
   public:
    EvalContext(std::shared_ptr<const Objective> objective, UnitaryCircuit circuit);
    EvalContext(const Objective &objective, UnitaryCircuit circuit);

    const Objective &objective() const {
        return *objective_;
    }
    const UnitaryCircuit &circuit() const {
        return circuit_;
    }
    std::size_t size() const {
        return circuit_.size();
    }

    double value();
    std::vector<double> gradient();
    LocalQuadratic local_quadratic(std::size_t k);
    double importance(std::size_t k);
    LocalModel model(std::size_t k);

    void set_angle(std::size_t k, double theta);
    void erase(std::size_t k);
    void insert(std::size_t k, CircuitPulse pulse);
    void replace_circuit(UnitaryCircuit circuit);

    /// Vector-level generator applications and frame rotations performed so far.
    std::uint64_t op_count() const {
        return ops_;
    }
    void reset_op_count() {
        ops_ = 0;
    }
    std::uint64_t generation() const {
        return generation_;
    }

   private:
    void check_index(std::size_t k) const;
    void ensure(std::size_t k);

    std::shared_ptr<const Objective> objective_;
    UnitaryCircuit circuit_;
    Operator input_block_;
    Operator costate_block_;
    std::vector<Operator> forward_;
    std::vector<Operator> backward_;
    std::size_t forward_valid_ = 0;
    std::size_t backward_valid_ = 0;
    std::uint64_t generation_ = 1;
    std::uint64_t ops_ = 0;
};

/// Reference derivative that rebuilds the full product for each pulse (quadratic cost).
std::vector<double> gradient_naive(const Objective &objective, const UnitaryCircuit &circuit,
                                   std::uint64_t *ops = nullptr);

}  // namespace qecopt

#endif
