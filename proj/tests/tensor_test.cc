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

#include "qecopt/tensor.h"

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "qecopt/error.h"

namespace qecopt {
namespace {

TEST(Kron, IdentityTimesIdentity) {
    EXPECT_TRUE(kron(Operator(Operator::Identity(2, 2)), Operator(Operator::Identity(2, 2))).isApprox(Operator::Identity(4, 4)));
}

TEST(Kron, XTensorZEntries) {
    Operator k = kron(oracle::pauli('X'), oracle::pauli('Z'));
    Operator expected = Operator::Zero(4, 4);
    expected(0, 2) = 1;
    expected(1, 3) = -1;
    expected(2, 0) = 1;
    expected(3, 1) = -1;
    EXPECT_LT(oracle::max_abs(k - expected), 1e-15);
}

TEST(Kron, ZZOnBasisState) {
    StateVector v = kron(oracle::pauli('Z'), oracle::pauli('Z')) * basis_state("01");
    EXPECT_LT((v + basis_state("01")).norm(), 1e-15);
}

TEST(Kron, MatchesEntrywiseOracleOnRandomBlocks) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; t++) {
        Operator a = oracle::random_hermitian(2 + t % 2, rng);
        Operator b = oracle::random_hermitian(3, rng);
        EXPECT_LT(oracle::max_abs(kron(a, b) - oracle::kron(a, b)), 1e-14);
    }
}

TEST(Kron, VectorsFollowQubitOneFirst) {
    StateVector v = kron(StateVector(basis_state("1")), StateVector(basis_state("0")));
    EXPECT_EQ(v, basis_state("10"));
}

TEST(ExpmHermitian, ZeroAngleIsIdentity) {
    std::mt19937_64 rng(1);
    Operator h = oracle::random_hermitian(4, rng);
    EXPECT_LT(oracle::max_abs(expm_hermitian(h, 0.0) - Operator::Identity(4, 4)), 1e-13);
}

TEST(ExpmHermitian, HalfSigmaXAtPi) {
    Operator u = expm_hermitian(0.5 * oracle::pauli('X'), kPi);
    EXPECT_LT(oracle::max_abs(u - Complex(0, -1) * oracle::pauli('X')), 1e-14);
}

TEST(ExpmHermitian, SquaredSpinMatchesTaylorSeries) {
    Operator sx = oracle::spin('X', {1, 2}, 2);
    Operator h = sx * sx;
    EXPECT_LT(oracle::max_abs(expm_hermitian(h, kPi / 4) - oracle::expm(h, kPi / 4)), 1e-10);
}

TEST(ExpmHermitian, RejectsNonHermitian) {
    Operator h = Operator::Zero(2, 2);
    h(0, 1) = 1.0;
    try {
        expm_hermitian(h, 1.0);
        FAIL() << "expected NonHermitian";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NonHermitian);
    }
}

TEST(ExpmHermitian, GroupPropertyOnRandomHermitian) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> angle(-2 * kPi, 2 * kPi);
    for (int t = 0; t < 20; t++) {
        Operator h = oracle::random_hermitian(8, rng);
        double a = angle(rng), b = angle(rng);
        Operator lhs = expm_hermitian(h, a) * expm_hermitian(h, b);
        EXPECT_LT(oracle::max_abs(lhs - expm_hermitian(h, a + b)), 1e-10);
    }
}

TEST(ExpmHermitian, UnitaryForLargeAngles) {
    std::mt19937_64 rng(5);
    Operator sx = oracle::spin('X', oracle::all_qubits(5), 5);
    for (double theta : {-4 * kPi, -1.0, 3.3, 4 * kPi}) {
        EXPECT_LT(unitarity_defect(expm_hermitian(sx * sx, theta)), 1e-10);
        EXPECT_LT(unitarity_defect(expm_hermitian(oracle::random_hermitian(16, rng), theta)), 1e-10);
    }
}

TEST(EigenHermitian, DerivativeOrderMatchesFiniteDifference) {
    std::mt19937_64 rng(7);
    Operator h = oracle::random_hermitian(4, rng);
    HermitianEigen e = eigen_hermitian(h);
    const double theta = 0.7, step = 1e-5;
    Operator fd = (e.exp(theta + step) - e.exp(theta - step)) / (2 * step);
    EXPECT_LT(oracle::max_abs(fd - e.exp(theta, 1)), 1e-8);
    Operator fd2 = (e.exp(theta + step, 1) - e.exp(theta - step, 1)) / (2 * step);
    EXPECT_LT(oracle::max_abs(fd2 - e.exp(theta, 2)), 1e-8);
}

TEST(Inner, TraceOfIdentity) {
    EXPECT_NEAR(std::abs(inner(Operator(Operator::Identity(4, 4)), Operator(Operator::Identity(4, 4))) - Complex(4, 0)), 0.0, 1e-15);
}

TEST(Inner, PaulisAreOrthogonal) {
    EXPECT_EQ(inner(oracle::pauli('X'), oracle::pauli('Y')), Complex(0, 0));
}

TEST(Inner, PhaseFactorOfVectors) {
    std::mt19937_64 rng(2);
    StateVector psi = oracle::random_state(8, rng);
    Complex phase = std::polar(1.0, 0.9);
    EXPECT_LT(std::abs(inner(psi, StateVector(phase * psi)) - phase), 1e-14);
}

TEST(Inner, ConjugateSymmetry) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 10; t++) {
        StateVector a = oracle::random_state(8, rng), b = oracle::random_state(8, rng);
        EXPECT_LT(std::abs(inner(a, b) - std::conj(inner(b, a))), 1e-15);
        Operator x = oracle::random_hermitian(4, rng) * Complex(0.3, 1.1);
        Operator y = oracle::random_hermitian(4, rng);
        EXPECT_LT(std::abs(inner(x, y) - std::conj(inner(y, x))), 1e-13);
    }
}

TEST(Inner, DimensionMismatch) {
    EXPECT_THROW(inner(StateVector(StateVector::Zero(2)), StateVector(StateVector::Zero(4))), Error);
}

TEST(Fidelity, SelfOrthogonalAndPhase) {
    std::mt19937_64 rng(9);
    StateVector psi = oracle::random_state(4, rng);
    EXPECT_NEAR(fidelity_up_to_phase(psi, psi), 1.0, 1e-14);
    EXPECT_NEAR(fidelity_up_to_phase(basis_state("0"), basis_state("1")), 0.0, 0.0);
    EXPECT_NEAR(fidelity_up_to_phase(psi, StateVector(std::polar(1.0, kPi / 7) * psi)), 1.0, 1e-14);
}

TEST(Fidelity, RejectsUnnormalized) {
    StateVector v = 2.0 * basis_state("0");
    try {
        fidelity_up_to_phase(v, basis_state("0"));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), ErrorKind::NotNormalized);
    }
}

TEST(Paulis, EmbedMatchesKronChain) {
    for (int q = 1; q <= 3; q++) {
        for (char p : {'X', 'Y', 'Z'}) {
            EXPECT_LT(oracle::max_abs(embed(pauli_matrix(p), q, 3) - oracle::on_qubit(oracle::pauli(p), q, 3)), 1e-15);
        }
    }
}

TEST(Paulis, ApplyPauliMatchesOperator) {
    std::mt19937_64 rng(12);
    for (const char *s : {"XIZ", "YYI", "IZX", "XYZ"}) {
        StateVector psi = oracle::random_state(8, rng);
        StateVector expected = pauli_operator(s) * psi;
        apply_pauli(s, psi);
        EXPECT_LT((psi - expected).norm(), 1e-14) << s;
    }
}

TEST(BasisState, BitStringAndIndexAgree) {
    EXPECT_EQ(basis_state("101"), basis_state(5, 3));
    EXPECT_EQ(basis_state("101"), oracle::ket("101"));
}

TEST(QubitCount, PowersOfTwoOnly) {
    EXPECT_EQ(qubit_count(8), 3);
    EXPECT_THROW(qubit_count(6), Error);
    EXPECT_THROW(qubit_count(Eigen::Index{1} << 13), Error);
}

}  // namespace
}  // namespace qecopt
