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

#include "qecopt/codes.h"

#include <cmath>

#include "qecopt/error.h"

namespace qecopt {

namespace {

struct Amplitude {
    const char *bits;
    int sign;
};

StateVector superposition(std::initializer_list<Amplitude> terms) {
    StateVector v;
    for (const auto &t : terms) {
        StateVector b = basis_state(t.bits);
        v = v.size() == 0 ? StateVector(static_cast<double>(t.sign) * b) : StateVector(v + t.sign * b);
    }
    return v / v.norm();
}

StateVector inverted(const StateVector &v) {
    return v.reverse();
}

StateVector all_ones(int n) {
    if (n == 0) {
        return StateVector::Ones(1);
    }
    return basis_state((std::uint64_t{1} << n) - 1, n);
}

std::vector<CodeError> single_qubit_errors(int n, std::string_view kinds) {
    std::vector<CodeError> out{{0, "I", std::string(static_cast<std::size_t>(n), 'I')}};
    for (int q = 1; q <= n; q++) {
        for (char k : kinds) {
            std::string p(static_cast<std::size_t>(n), 'I');
            p[static_cast<std::size_t>(q - 1)] = k;
            out.push_back({1, std::string(1, k) + std::to_string(q), p});
        }
    }
    return out;
}

}  // namespace

StateVector CodeSpec::logical(int l) const {
    if (l == 0 || l == 1) {
        return codewords[static_cast<std::size_t>(l)];
    }
    return (codewords[0] + codewords[1]) / std::sqrt(2.0);
}

StateVector CodeSpec::apply_error(std::size_t j, const StateVector &code) const {
    StateVector v = code;
    apply_pauli(errors.at(j).pauli, v);
    return v;
}

StateVector CodeSpec::encoded_input(std::size_t j, const StateVector &code) const {
    return kron(apply_error(j, code), aux_init);
}

CodeSpec CodeSpec::with_aux(int aux) const {
    if (aux < 0 || n_code + aux > kMaxQubits) {
        throw Error(ErrorKind::ConfigInvalid, "auxiliary register size " + std::to_string(aux));
    }
    CodeSpec c = *this;
    c.n_aux = aux;
    c.aux_init = all_ones(aux);
    return c;
}

std::vector<std::string> builtin_code_names() {
    return {"three_bitflip", "three_phaseflip", "five_qubit", "steane"};
}

CodeSpec builtin_code(std::string_view name) {
    CodeSpec c;
    c.name = std::string(name);
    if (name == "three_bitflip") {
        c.n_code = 3;
        c.codewords = {basis_state("000"), basis_state("111")};
        c.errors = single_qubit_errors(3, "X");
        c.stabilizers = {"ZZI", "IZZ"};
        return c.with_aux(2);
    }
    if (name == "three_phaseflip") {
        c.n_code = 3;
        StateVector plus = StateVector::Constant(2, 1.0 / std::sqrt(2.0));
        StateVector minus = plus;
        minus(1) = -minus(1);
        c.codewords = {kron(kron(plus, plus), plus), kron(kron(minus, minus), minus)};
        c.errors = single_qubit_errors(3, "Z");
        c.stabilizers = {"XXI", "IXX"};
        return c.with_aux(2);
    }
    if (name == "five_qubit") {
        c.n_code = 5;
        StateVector zero = superposition({
            {"00000", +1}, {"10010", +1}, {"01001", +1}, {"10100", +1},
            {"01010", +1}, {"11011", -1}, {"00110", -1}, {"11000", -1},
            {"11101", -1}, {"00011", -1}, {"11110", -1}, {"01111", -1},
            {"10001", -1}, {"01100", -1}, {"10111", -1}, {"00101", +1},
        });
        c.codewords = {zero, inverted(zero)};
        c.errors = single_qubit_errors(5, "XYZ");
        c.stabilizers = {"XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"};
        return c.with_aux(1);
    }
    if (name == "steane") {
        c.n_code = 7;
        StateVector zero = superposition({
            {"0000000", +1}, {"1010101", +1}, {"0110011", +1}, {"1100110", +1},
            {"0001111", +1}, {"1011010", +1}, {"0111100", +1}, {"1101001", +1},
        });
        c.codewords = {zero, inverted(zero)};
        c.errors = single_qubit_errors(7, "XYZ");
        c.stabilizers = {"IIIXXXX", "IXXIIXX", "XIXIXIX", "IIIZZZZ", "IZZIIZZ", "ZIZIZIZ"};
        return c.with_aux(1);
    }
    throw Error(ErrorKind::UnknownCode, "unknown code '" + std::string(name) + "'");
}

std::vector<std::string> stabilizer_list(const CodeSpec &code) {
    return code.stabilizers;
}

bool paulis_commute(std::string_view a, std::string_view b) {
    if (a.size() != b.size()) {
        throw Error(ErrorKind::DimensionMismatch, "Pauli strings of different length");
    }
    int anti = 0;
    for (std::size_t k = 0; k < a.size(); k++) {
        if (a[k] != 'I' && b[k] != 'I' && a[k] != b[k]) {
            anti++;
        }
    }
    return anti % 2 == 0;
}

Operator knill_laflamme_matrix(const CodeSpec &code, int a, int b) {
    std::size_t n = code.errors.size();
    std::vector<StateVector> ea(n);
    std::vector<StateVector> eb(n);
    for (std::size_t j = 0; j < n; j++) {
        ea[j] = code.apply_error(j, code.codewords[static_cast<std::size_t>(a)]);
        eb[j] = code.apply_error(j, code.codewords[static_cast<std::size_t>(b)]);
    }
    Operator c(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; i++) {
        for (std::size_t j = 0; j < n; j++) {
            c(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = ea[i].dot(eb[j]);
        }
    }
    return c;
}

Operator named_gate(std::string_view name) {
    Operator g = Operator::Identity(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    if (name == "I") {
        return g;
    }
    if (name == "X" || name == "Y" || name == "Z") {
        return pauli_matrix(name[0]);
    }
    if (name == "H") {
        g << s, s, s, -s;
        return g;
    }
    if (name == "S") {
        g(1, 1) = kI;
        return g;
    }
    if (name == "pi8" || name == "T") {
        g(1, 1) = std::exp(kI * kPi / 4.0);
        return g;
    }
    throw Error(ErrorKind::ConfigInvalid, "unknown gate '" + std::string(name) + "'");
}

}  // namespace qecopt
