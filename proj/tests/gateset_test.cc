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

#include "qecopt/gateset.h"

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "qecopt/error.h"

namespace qecopt {
namespace {

/// Reference Hamiltonian from explicit Kronecker chains.
Operator reference_hamiltonian(const Pulse &p, int n) {
    auto all = oracle::all_qubits(n);
    switch (p.kind) {
        case PulseKind::GlobalX:
            return oracle::spin('X', all, n);
        case PulseKind::GlobalY:
            return oracle::spin('Y', all, n);
        case PulseKind::MSXX: {
            Operator s = oracle::spin('X', all, n);
            return s * s;
        }
        case PulseKind::MSYY: {
            Operator s = oracle::spin('Y', all, n);
            return s * s;
        }
        case PulseKind::SubsetMSYY: {
            Operator s = oracle::spin('Y', p.subset, n);
            return s * s;
        }
        default:
            return 0.5 * oracle::on_qubit(oracle::pauli('Z'), p.qubit, n);
    }
}

std::vector<Pulse> sample_pulses(double theta, int n) {
    std::vector<Pulse> ps = {Pulse::x(theta), Pulse::y(theta), Pulse::xx(theta), Pulse::yy(theta)};
    for (int q = 1; q <= n; q++) ps.push_back(Pulse::z(q, theta));
    if (n >= 3) ps.push_back(Pulse::subset_yy({1, 3}, theta));
    return ps;
}

TEST(Hamiltonian, GlobalXOnOneQubit) {
    EXPECT_LT(oracle::max_abs(hamiltonian(Pulse::x(1), 1) - 0.5 * oracle::pauli('X')), 1e-15);
}

TEST(Hamiltonian, SquaredSpinEigenvalues) {
    Eigen::SelfAdjointEigenSolver<Operator> es(hamiltonian(Pulse::xx(1), 2));
    Eigen::VectorXd ev = es.eigenvalues();
    std::vector<double> expected = {0, 0, 1, 1};
    for (int i = 0; i < 4; i++) EXPECT_NEAR(ev(i), expected[static_cast<std::size_t>(i)], 1e-12);
}

TEST(Hamiltonian, LocalZOnSecondQubit) {
    Operator h = hamiltonian(Pulse::z(2, 1), 2);
    Operator expected = Operator::Zero(4, 4);
    expected.diagonal() << 0.5, -0.5, 0.5, -0.5;
    EXPECT_LT(oracle::max_abs(h - expected), 1e-15);
}

TEST(Hamiltonian, MatchesKronReferenceForAllKinds) {
    for (int n = 1; n <= 4; n++) {
        for (const Pulse &p : sample_pulses(1.0, n)) {
            EXPECT_LT(oracle::max_abs(hamiltonian(p, n) - reference_hamiltonian(p, n)), 1e-14)
                << kind_name(p.kind) << " n=" << n;
        }
    }
}

TEST(Hamiltonian, MeasureAndResetAreNotUnitaryKinds) {
    for (const Pulse &p : {Pulse::measure(1), Pulse::reset(1)}) {
        try {
            hamiltonian(p, 2);
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::NotUnitaryKind);
        }
    }
}

TEST(PulseUnitary, XAtPi) {
    EXPECT_LT(oracle::max_abs(pulse_unitary(Pulse::x(kPi), 1) - Complex(0, -1) * oracle::pauli('X')), 1e-14);
}

TEST(PulseUnitary, ZOnZero) {
    StateVector v = pulse_unitary(Pulse::z(1, kPi), 1) * basis_state("0");
    EXPECT_LT(std::abs(v(0) - std::exp(Complex(0, -kPi / 2))), 1e-15);
    EXPECT_LT(std::abs(v(1)), 1e-15);
}

TEST(PulseUnitary, MatchesTaylorOracle) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi);
    EXPECT_LT(oracle::max_abs(pulse_unitary(Pulse::xx(kPi / 2), 2) - oracle::expm(hamiltonian(Pulse::xx(1), 2), kPi / 2)),
              1e-10);
    for (int n = 1; n <= 4; n++) {
        for (const Pulse &p : sample_pulses(angle(rng), n)) {
            Operator ref = oracle::expm(reference_hamiltonian(p, n), p.theta);
            EXPECT_LT(oracle::max_abs(pulse_unitary(p, n) - ref), 1e-10) << kind_name(p.kind);
        }
    }
}

TEST(PulseUnitary, AdjointIsNegativeAngle) {
    std::mt19937_64 rng(22);
    std::uniform_real_distribution<double> angle(-4 * kPi, 4 * kPi);
    for (const Pulse &p : sample_pulses(angle(rng), 3)) {
        Pulse q = p;
        q.theta = -p.theta;
        EXPECT_LT(oracle::max_abs(pulse_unitary(p, 3).adjoint() - pulse_unitary(q, 3)), 1e-10);
        EXPECT_LT(unitarity_defect(pulse_unitary(p, 3)), 1e-10);
    }
}

TEST(PulseUnitary, GlobalRotationFactors) {
    const double theta = 0.83;
    Operator single = oracle::expm(0.5 * oracle::pauli('X'), theta);
    Operator product = Operator::Identity(1, 1);
    for (int q = 0; q < 4; q++) product = oracle::kron(product, single);
    EXPECT_LT(oracle::max_abs(pulse_unitary(Pulse::x(theta), 4) - product), 1e-10);
}

TEST(PulseUnitary, MolmerSorensenHasOperatorSchmidtRankAboveOne) {
    // Reshuffle U (4x4) into R with R[(i,k),(j,l)] = U[(i,j),(k,l)]; a product A x B gives rank 1.
    Operator u = pulse_unitary(Pulse::xx(kPi / 2), 2);
    Operator r(4, 4);
    for (int i = 0; i < 2; i++)
        for (int j = 0; j < 2; j++)
            for (int k = 0; k < 2; k++)
                for (int l = 0; l < 2; l++) r(2 * i + k, 2 * j + l) = u(2 * i + j, 2 * k + l);
    Eigen::JacobiSVD<Operator> svd(r);
    EXPECT_GT(svd.singularValues()(1), 0.1);
}

TEST(PulseDerivative, AtZeroAngle) {
    EXPECT_LT(oracle::max_abs(pulse_derivative(Pulse::z(1, 0), 1) - Complex(0, -0.5) * oracle::pauli('Z')), 1e-15);
    Operator sx = oracle::spin('X', {1, 2, 3}, 3);
    EXPECT_LT(oracle::max_abs(pulse_derivative(Pulse::xx(0), 3) - Complex(0, -1) * sx * sx), 1e-13);
}

TEST(PulseDerivative, FiniteDifference) {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const double h = 1e-5;
    for (const Pulse &p : sample_pulses(angle(rng), 3)) {
        Pulse a = p, b = p;
        a.theta += h;
        b.theta -= h;
        Operator fd = (pulse_unitary(a, 3) - pulse_unitary(b, 3)) / (2 * h);
        EXPECT_LT(oracle::max_abs(fd - pulse_derivative(p, 3)), 1e-6) << kind_name(p.kind);
    }
}

TEST(SameAction, ZPeriodIsFourPi) {
    EXPECT_TRUE(same_action(Pulse::z(1, -kPi / 2), Pulse::z(1, 7 * kPi / 2), 2));
    // 2 pi flips the sign; equal only up to global phase, so not the same action.
    EXPECT_FALSE(same_action(Pulse::z(1, -kPi / 2), Pulse::z(1, 3 * kPi / 2), 2));
}

TEST(Generators, FastPathMatchesDenseUnitary) {
    std::mt19937_64 rng(24);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const int n = 4;
    for (const Pulse &p : sample_pulses(angle(rng), n)) {
        Operator m = oracle::random_hermitian(16, rng).leftCols(3);
        Operator expected = pulse_unitary(p, n) * m;
        apply_generator(resolve(p, n), p.theta, 0, m);
        EXPECT_LT(oracle::max_abs(m - expected), 1e-12) << kind_name(p.kind);
    }
}

TEST(Generators, SpectrumMatchesEigenframe) {
    for (const Pulse &p : sample_pulses(1.0, 3)) {
        Generator g = resolve(p, 3);
        std::vector<double> lambda = generator_spectrum(g, 3);
        Operator h = hamiltonian(p, 3);
        Operator m = h;
        to_eigenframe(g, 3, m, false);  // V^dag H
        Operator hv = m.adjoint();      // H V
        to_eigenframe(g, 3, hv, false); // V^dag H V
        for (int k = 0; k < 8; k++) {
            EXPECT_NEAR(hv(k, k).real(), lambda[static_cast<std::size_t>(k)], 1e-12);
        }
        Operator off = hv;
        off.diagonal().setZero();
        EXPECT_LT(oracle::max_abs(off), 1e-12) << kind_name(p.kind);
    }
}

TEST(Sequence, CountsAndValidation) {
    PulseSequence s;
    s.n_qubits = 3;
    s.pulses = {Pulse::x(1), Pulse::xx(kPi / 4), Pulse::subset_yy({1, 3}, kPi / 8), Pulse::measure(3),
                Pulse::reset(3)};
    EXPECT_EQ(s.unitary_count(), 3u);
    EXPECT_EQ(s.entangling_count(), 2u);
    EXPECT_NEAR(s.entangling_angle_sum(), 3 * kPi / 8, 1e-15);
    EXPECT_EQ(s.measure_count(), 1u);
    EXPECT_EQ(s.reset_count(), 1u);
    EXPECT_TRUE(s.has_measurement_or_reset());
    s.validate();
    s.pulses.push_back(Pulse::z(4, 1));
    EXPECT_THROW(s.validate(), Error);
    s.pulses.back() = Pulse::subset_yy({3, 1}, 1);
    EXPECT_THROW(s.validate(), Error);
}

}  // namespace
}  // namespace qecopt
