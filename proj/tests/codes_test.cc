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

#include <gtest/gtest.h>

#include "oracles.h"
#include "qecopt/error.h"

namespace qecopt {
namespace {

Operator pauli_string(const std::string &s) {
    Operator out = Operator::Identity(1, 1);
    for (char c : s) out = oracle::kron(out, oracle::pauli(c));
    return out;
}

double amplitude(const StateVector &v, const std::string &bits) {
    return v.dot(oracle::ket(bits)).real();
}

TEST(BuiltinCode, FiveQubitZeroAmplitudes) {
    CodeSpec c = builtin_code("five_qubit");
    EXPECT_NEAR(amplitude(c.codewords[0], "00000"), 0.25, 1e-15);
    EXPECT_NEAR(amplitude(c.codewords[0], "11011"), -0.25, 1e-15);
    EXPECT_EQ(c.errors.size(), 16u);
}

TEST(BuiltinCode, SteaneZeroAmplitude) {
    CodeSpec c = builtin_code("steane");
    EXPECT_NEAR(amplitude(c.codewords[0], "1010101"), 1 / std::sqrt(8.0), 1e-15);
    EXPECT_EQ(c.errors.size(), 22u);
}

TEST(BuiltinCode, ErrorBasesAndLevels) {
    CodeSpec bf = builtin_code("three_bitflip");
    ASSERT_EQ(bf.errors.size(), 4u);
    EXPECT_EQ(bf.errors[0].pauli, "III");
    EXPECT_EQ(bf.errors[0].level, 0);
    EXPECT_EQ(bf.errors[2].pauli, "IXI");
    EXPECT_EQ(bf.errors[2].level, 1);
    EXPECT_EQ(builtin_code("three_phaseflip").errors[3].pauli, "IIZ");
    for (const auto &name : builtin_code_names()) {
        CodeSpec c = builtin_code(name);
        int identities = 0;
        for (const auto &e : c.errors) identities += e.level == 0;
        EXPECT_EQ(identities, 1) << name;
    }
}

TEST(BuiltinCode, UnknownName) {
    try {
        builtin_code("shor");
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::UnknownCode);
    }
}

TEST(BuiltinCode, CodewordsOrthonormal) {
    for (const auto &name : builtin_code_names()) {
        CodeSpec c = builtin_code(name);
        EXPECT_NEAR(c.codewords[0].norm(), 1.0, 1e-12) << name;
        EXPECT_NEAR(c.codewords[1].norm(), 1.0, 1e-12) << name;
        EXPECT_LT(std::abs(c.codewords[0].dot(c.codewords[1])), 1e-12) << name;
        EXPECT_EQ(c.aux_init, basis_state(std::string(static_cast<std::size_t>(c.n_aux), '1'))) << name;
    }
}

TEST(KnillLaflamme, BitFlipMatrixIsIdentity) {
    CodeSpec c = builtin_code("three_bitflip");
    EXPECT_LT(oracle::max_abs(knill_laflamme_matrix(c, 0, 0) - Operator::Identity(4, 4)), 1e-14);
}

TEST(KnillLaflamme, FiveQubitAndSteaneAgainstKronOracle) {
    for (const char *name : {"five_qubit", "steane"}) {
        CodeSpec c = builtin_code(name);
        const std::size_t n = c.errors.size();
        std::vector<Operator> e;
        for (const auto &err : c.errors) e.push_back(pauli_string(err.pauli));
        Operator c00(n, n);
        for (int a = 0; a < 2; a++) {
            for (int b = 0; b < 2; b++) {
                Operator cab(n, n);
                for (std::size_t i = 0; i < n; i++)
                    for (std::size_t j = 0; j < n; j++)
                        cab(i, j) = c.codewords[a].dot(e[i].adjoint() * e[j] * c.codewords[b]);
                EXPECT_LT(oracle::max_abs(cab - knill_laflamme_matrix(c, a, b)), 1e-10) << name;
                if (a == 0 && b == 0) c00 = cab;
                if (a != b) {
                    EXPECT_LT(oracle::max_abs(cab), 1e-10) << name;
                } else {
                    EXPECT_LT(oracle::max_abs(cab - c00), 1e-10) << name;
                }
            }
        }
    }
}

TEST(Stabilizers, ListsMatchTables) {
    auto five = stabilizer_list(builtin_code("five_qubit"));
    ASSERT_EQ(five.size(), 4u);
    EXPECT_EQ(five[2], "XIXZZ");
    for (std::size_t k = 1; k < 4; k++) {
        // Each row is the previous one shifted right by one position.
        EXPECT_EQ(five[k], five[k - 1].back() + five[k - 1].substr(0, 4));
    }
    auto steane = stabilizer_list(builtin_code("steane"));
    ASSERT_EQ(steane.size(), 6u);
    EXPECT_EQ(steane[4], "IZZIIZZ");
}

TEST(Stabilizers, CommuteAndFixCodewords) {
    for (const auto &name : builtin_code_names()) {
        CodeSpec c = builtin_code(name);
        for (const auto &s : c.stabilizers) {
            Operator m = pauli_string(s);
            for (const auto &t : c.stabilizers) {
                Operator n = pauli_string(t);
                EXPECT_LT(oracle::max_abs(m * n - n * m), 1e-12) << s << " " << t;
                EXPECT_TRUE(paulis_commute(s, t));
            }
            for (int l = 0; l < 2; l++) {
                EXPECT_LT((m * c.codewords[l] - c.codewords[l]).norm(), 1e-12) << name << " " << s;
            }
        }
    }
}

TEST(Paulis, CommutationAgreesWithMatrices) {
    const char *strings[] = {"XZZXI", "ZIIII", "YYIII", "IXZZX", "XIIIZ", "IIYII"};
    for (const char *a : strings) {
        for (const char *b : strings) {
            Operator ma = pauli_string(a), mb = pauli_string(b);
            bool commute = oracle::max_abs(ma * mb - mb * ma) < 1e-12;
            EXPECT_EQ(paulis_commute(a, b), commute) << a << " " << b;
        }
    }
}

TEST(CodeSpec, ErrorApplicationAndAux) {
    CodeSpec c = builtin_code("three_bitflip");
    EXPECT_EQ(c.apply_error(1, c.codewords[0]), basis_state("100"));
    EXPECT_EQ(c.encoded_input(3, c.codewords[1]), basis_state("11011"));
    EXPECT_LT((c.logical(2) - (basis_state("000") + basis_state("111")) / std::sqrt(2.0)).norm(), 1e-15);
    EXPECT_EQ(c.with_aux(3).aux_init, basis_state("111"));
    EXPECT_THROW(c.with_aux(-1), Error);
}

TEST(NamedGates, UnitaryAndKnown) {
    for (const char *g : {"I", "X", "Y", "Z", "H", "S", "pi8"}) {
        EXPECT_TRUE(is_unitary(named_gate(g))) << g;
    }
    Operator t = named_gate("pi8");
    EXPECT_LT(std::abs(t(1, 1) - std::polar(1.0, kPi / 4)), 1e-15);
    EXPECT_THROW(named_gate("CNOT"), Error);
}

}  // namespace
}  // namespace qecopt
