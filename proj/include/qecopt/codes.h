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

#ifndef QECOPT_CODES_H
#define QECOPT_CODES_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "qecopt/tensor.h"

namespace qecopt {

/// An elementary error as a Pauli string over the code qubits. Level 0 holds the identity only.
struct CodeError {
    int level = 0;
    std::string label;
    std::string pauli;
};

struct CodeSpec {
    std::string name;
    int n_code = 0;
    int n_aux = 0;
    StateVector aux_init;
    std::array<StateVector, 2> codewords;
    std::vector<CodeError> errors;
    std::vector<std::string> stabilizers;

    int n_total() const {
        return n_code + n_aux;
    }

    /// l = 0, 1 give the codewords, l = 2 gives (|0_L> + |1_L>)/sqrt(2).
    StateVector logical(int l) const;

    /// E_j |code> on the code register.
    StateVector apply_error(std::size_t j, const StateVector &code) const;

    /// (E_j |code>) tensor aux_init.
    StateVector encoded_input(std::size_t j, const StateVector &code) const;

    /// Same code with a different auxiliary register size (aux_init = |1...1>).
    CodeSpec with_aux(int n_aux) const;
};

/// three_bitflip, three_phaseflip, five_qubit, steane. Throws UnknownCode.
CodeSpec builtin_code(std::string_view name);
std::vector<std::string> builtin_code_names();

std::vector<std::string> stabilizer_list(const CodeSpec &code);

bool paulis_commute(std::string_view a, std::string_view b);

/// C(i, j) = <a_L| E_i^dag E_j |b_L>.
Operator knill_laflamme_matrix(const CodeSpec &code, int a, int b);

/// Named single-qubit logical gates: I, X, Y, Z, H, S, pi8. Throws ConfigInvalid.
Operator named_gate(std::string_view name);

}  // namespace qecopt

#endif
