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

#include "qecopt/verifier.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>
#include <set>

#include "oracles.h"
#include "qecopt/corpus.h"
#include "qecopt/error.h"
#include "qecopt/sequence_io.h"

namespace qecopt {
namespace {

Fixture fixture(const std::string &name) {
    for (const Fixture &f : regression_corpus()) {
        if (f.name == name) return f;
    }
    throw std::runtime_error("no fixture " + name);
}

void expect_kind(ErrorKind kind, const std::function<void()> &f) {
    try {
        f();
        ADD_FAILURE() << "expected " << error_kind_name(kind);
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

/// Inserts `p` before the trailing measurements and resets.
PulseSequence before_readout(PulseSequence seq, const Pulse &p) {
    auto it = seq.pulses.end();
    while (it != seq.pulses.begin() && !std::prev(it)->is_unitary()) --it;
    seq.pulses.insert(it, p);
    return seq;
}

// ------------------------------------------------------------------ simulation

TEST(Simulate, SingleRotation) {
    std::vector<Branch> b = simulate(parse_sequence("qubits 1\nX pi\n"), basis_state("1"));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_NEAR(std::abs(b[0].state(0) - Complex(0, -1)), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(b[0].state(1)), 0.0, 1e-12);
}

TEST(Simulate, MeasurementSplitsSuperposition) {
    std::vector<Branch> b = simulate(parse_sequence("qubits 2\nY pi/2\nM 2\n"), basis_state("11"));
    ASSERT_EQ(b.size(), 2u);
    for (const Branch &br : b) {
        EXPECT_NEAR(br.weight, 0.5, 1e-12);
        ASSERT_EQ(br.outcomes.size(), 1u);
        EXPECT_EQ(br.outcomes[0].first, 2);
    }
    EXPECT_NE(b[0].outcomes[0].second, b[1].outcomes[0].second);
}

TEST(Simulate, ZeroWeightBranchesDropped) {
    std::vector<Branch> b = simulate(parse_sequence("qubits 2\nM 1\nM 2\n"), basis_state("10"));
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].outcomes, (std::vector<std::pair<int, int>>{{1, 1}, {2, 0}}));
}

TEST(Simulate, ResetReturnsQubitToOne) {
    std::vector<Branch> b = simulate(parse_sequence("qubits 2\nY pi/2\nM 2\nR 2\n"), basis_state("11"));
    for (const Branch &br : b) {
        for (Eigen::Index i = 0; i < 4; i++) {
            if ((i & 1) == 0) EXPECT_NEAR(std::abs(br.state(i)), 0.0, 1e-12);
        }
        EXPECT_NEAR(br.state.squaredNorm(), 0.5, 1e-12);
    }
}

TEST(Simulate, ResetOnEntangledQubit) {
    expect_kind(ErrorKind::ResetOnEntangledQubit,
                [] { simulate(parse_sequence("qubits 2\nX2 pi/4\nR 2\n"), basis_state("11")); });
}

TEST(Simulate, DimensionMismatch) {
    expect_kind(ErrorKind::DimensionMismatch, [] { simulate(parse_sequence("qubits 2\n"), basis_state("1")); });
}

TEST(Simulate, BranchWeightsSumToInputNorm) {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_int_distribution<int> kind(0, 6);
    std::uniform_int_distribution<int> qubit(1, 4);
    for (int trial = 0; trial < 20; trial++) {
        PulseSequence seq{4, {}};
        for (int k = 0; k < 25; k++) {
            switch (kind(rng)) {
                case 0: seq.pulses.push_back(Pulse::x(angle(rng))); break;
                case 1: seq.pulses.push_back(Pulse::y(angle(rng))); break;
                case 2: seq.pulses.push_back(Pulse::xx(angle(rng))); break;
                case 3: seq.pulses.push_back(Pulse::yy(angle(rng))); break;
                case 4: seq.pulses.push_back(Pulse::z(qubit(rng), angle(rng))); break;
                default: seq.pulses.push_back(Pulse::measure(qubit(rng)));
            }
        }
        StateVector in = oracle::random_state(16, rng);
        double total = 0;
        for (const Branch &b : simulate(seq, in)) {
            EXPECT_NEAR(b.weight, b.state.squaredNorm(), 1e-12);
            total += b.weight;
        }
        EXPECT_NEAR(total, 1.0, 1e-10);
    }
}

// ------------------------------------------------------------------ contracts

TEST(VerifyContract, WholeCorpusPasses) {
    for (const Fixture &f : regression_corpus()) {
        VerificationReport r = verify_contract(f.sequence, f.contract);
        EXPECT_TRUE(r.pass) << f.name << "\n" << format_report(r);
        EXPECT_GT(r.worst_fidelity, 1.0 - 1e-9) << f.name;
    }
}

TEST(VerifyContract, SuperpositionFamilies) {
    for (double a : {0.0, 0.3, kPi / 3, 1.4}) {
        for (bool negative : {false, true}) {
            Fixture f = five_qubit_superposition(a, negative);
            EXPECT_TRUE(verify_contract(f.sequence, f.contract).pass) << a << " " << negative;
        }
        Fixture s = steane_superposition(a);
        EXPECT_TRUE(verify_contract(s.sequence, s.contract).pass) << a;
    }
}

TEST(VerifyContract, AssembledStabilizersPass) {
    PulseSequence seq = assembled_five_qubit_stabilizers();
    EXPECT_EQ(seq.unitary_count(), 52u);
    EXPECT_TRUE(verify_stabilizers(seq, builtin_code("five_qubit"), {1, 2, 3, 4}).pass);
}

TEST(VerifySyndrome, EmptySequenceFails) {
    VerificationReport r = verify_syndrome(parse_sequence("qubits 4\nM 4\n"), builtin_code("three_bitflip"));
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.failures.empty());
}

TEST(VerifySyndrome, TruncatedSequenceFails) {
    Fixture f = fixture("three_bitflip_syndrome");
    PulseSequence cut = f.sequence;
    auto last = std::find_if(cut.pulses.rbegin(), cut.pulses.rend(), [](const Pulse &p) { return p.is_unitary(); });
    cut.pulses.erase(std::next(last).base());
    EXPECT_FALSE(verify_contract(cut, f.contract).pass);
}

TEST(VerifySyndrome, AuxPhaseIsGauge) {
    Fixture f = fixture("three_bitflip_syndrome");
    EXPECT_TRUE(verify_contract(before_readout(f.sequence, Pulse::z(4, 0.77)), f.contract).pass);
}

TEST(VerifySyndrome, LogicalPhaseIsNot) {
    Fixture f = fixture("three_bitflip_syndrome");
    VerificationReport r = verify_contract(before_readout(f.sequence, Pulse::z(1, kPi)), f.contract);
    EXPECT_FALSE(r.pass);
    EXPECT_LT(r.worst_fidelity, 0.5);
}

TEST(VerifySyndrome, OutcomeMapIsInjective) {
    Fixture f = fixture("three_bitflip_syndrome");
    VerificationReport r = verify_contract(f.sequence, f.contract);
    ASSERT_EQ(r.outcome_map.size(), 4u);
    std::set<std::string> outcomes;
    for (const auto &[label, outcome] : r.outcome_map) outcomes.insert(outcome);
    EXPECT_EQ(outcomes.size(), 4u);
}

TEST(VerifyStabilizers, WrongStabilizerFails) {
    Fixture f = fixture("five_qubit_stabilizer_1");
    EXPECT_FALSE(verify_stabilizers(f.sequence, builtin_code("five_qubit"), {2}).pass);
    EXPECT_TRUE(verify_stabilizers(f.sequence, builtin_code("five_qubit"), {1}).pass);
}

TEST(VerifyCoherent, AuxPhaseIsGauge) {
    Fixture f = fixture("three_bitflip_coherent");
    EXPECT_TRUE(verify_contract(before_readout(f.sequence, Pulse::z(4, -1.3)), f.contract).pass);
}

TEST(VerifyCoherent, SyndromeSequenceIsNotCoherent) {
    // Measuring the auxiliary qubit splits the branches, so the correction is not coherent.
    Fixture f = fixture("three_bitflip_syndrome");
    EXPECT_FALSE(verify_coherent(f.sequence, builtin_code("three_bitflip")).pass);
}

TEST(VerifyStatePrep, MismatchedTarget) {
    Fixture f = fixture("five_qubit_zero");
    EXPECT_FALSE(verify_state_prep(f.sequence, builtin_code("five_qubit").codewords[1]).pass);
    expect_kind(ErrorKind::ContractMismatch, [&] { verify_state_prep(f.sequence, basis_state("111")); });
}

TEST(VerifyStatePrep, ToleranceControlsVerdict) {
    Fixture f = fixture("five_qubit_zero");
    PulseSequence nudged = f.sequence;
    nudged.pulses.front().theta += 1e-4;
    EXPECT_FALSE(verify_contract(nudged, f.contract).pass);
    EXPECT_TRUE(verify_contract(nudged, f.contract, 1e-6).pass);
}

TEST(VerifyLogicalGate, TransversalSteaneX) {
    PulseSequence seq = parse_sequence("qubits 7\nX pi\n");
    VerificationReport r = verify_logical_gate(seq, builtin_code("steane"), named_gate("X"));
    EXPECT_TRUE(r.pass) << format_report(r);
    EXPECT_NEAR(r.objective_value, r.objective_max, 1e-9);
    EXPECT_LT(r.leakage, 1e-9);
    EXPECT_FALSE(verify_logical_gate(seq, builtin_code("steane"), named_gate("Z")).pass);
}

TEST(VerifyLogicalGate, IdentityOnEmptySequence) {
    VerificationReport r = verify_logical_gate(PulseSequence{5, {}}, builtin_code("five_qubit"), named_gate("I"));
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.objective_value, 16.0, 1e-10);
    EXPECT_FALSE(verify_logical_gate(PulseSequence{5, {}}, builtin_code("five_qubit"), named_gate("H")).pass);
}

TEST(VerifyLogicalGate, RejectsMeasurementsAndWrongSize) {
    expect_kind(ErrorKind::NonUnitarySequence, [] {
        verify_logical_gate(parse_sequence("qubits 5\nM 1\n"), builtin_code("five_qubit"), named_gate("X"));
    });
    expect_kind(ErrorKind::ContractMismatch,
                [] { verify_logical_gate(PulseSequence{6, {}}, builtin_code("five_qubit"), named_gate("X")); });
}

TEST(FormatReport, KeyValueRecords) {
    Fixture f = fixture("three_bitflip_syndrome");
    std::string text = format_report(verify_contract(f.sequence, f.contract));
    EXPECT_EQ(text.rfind("contract=syndrome\nsubject=three_bitflip\npass=true\n", 0), 0u) << text;
    EXPECT_NE(text.find("outcome_map="), std::string::npos);
    EXPECT_NE(text.find("\nerror=I\n"), std::string::npos);
}

}  // namespace
}  // namespace qecopt
