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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "qecopt/circuit.h"
#include "qecopt/error.h"
#include "qecopt/objective.h"

namespace qecopt {

namespace {

constexpr double kBranchCutoff = 1e-14;
constexpr double kLeakageTol = 1e-6;

void reset_qubit(Branch &b, int qubit, int n) {
    const std::uint64_t mask = std::uint64_t{1} << (n - qubit);
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    const auto dim = static_cast<std::uint64_t>(b.state.size());
    for (std::uint64_t i = 0; i < dim; i++) {
        if (i & mask) {
            continue;
        }
        Complex a0 = b.state(static_cast<Eigen::Index>(i));
        Complex a1 = b.state(static_cast<Eigen::Index>(i | mask));
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    double trace = rho.trace().real();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(rho);
    double top = eig.eigenvalues()(1);
    if (top < (1.0 - 1e-9) * trace) {
        throw Error(ErrorKind::ResetOnEntangledQubit, "qubit " + std::to_string(qubit) + " has purity eigenvalue " +
                                                          std::to_string(top / trace) + " at reset");
    }
    Eigen::Vector2cd v = eig.eigenvectors().col(1);
    for (std::uint64_t i = 0; i < dim; i++) {
        if (i & mask) {
            continue;
        }
        auto i0 = static_cast<Eigen::Index>(i);
        auto i1 = static_cast<Eigen::Index>(i | mask);
        Complex rest = std::conj(v(0)) * b.state(i0) + std::conj(v(1)) * b.state(i1);
        b.state(i0) = 0.0;
        b.state(i1) = rest;
    }
    b.weight = b.state.squaredNorm();
}

/// Weight, outcome string and final state of the single surviving branch, or a failure message.
struct Deterministic {
    bool ok = false;
    std::string failure;
    Branch branch;
    std::string outcome;
};

Deterministic run_deterministic(const PulseSequence &seq, const StateVector &input, double tol) {
    Deterministic d;
    std::vector<Branch> branches;
    try {
        branches = simulate(seq, input);
    } catch (const Error &e) {
        d.failure = e.what();
        return d;
    }
    auto best = std::max_element(branches.begin(), branches.end(),
                                 [](const Branch &a, const Branch &b) { return a.weight < b.weight; });
    d.branch = *best;
    for (const auto &[q, bit] : best->outcomes) {
        d.outcome += static_cast<char>('0' + bit);
    }
    if (best->weight < 1.0 - std::max(tol, kDeterminismTol)) {
        d.failure = "outcome is not deterministic (largest branch weight " + std::to_string(best->weight) + ")";
        return d;
    }
    d.ok = true;
    return d;
}

/// (<target| x I) psi for a code register that leads the state vector.
StateVector code_overlap(const StateVector &psi, const StateVector &target) {
    const Eigen::Index aux_dim = psi.size() / target.size();
    Eigen::Map<const Operator> m(psi.data(), aux_dim, target.size());
    return m * target.conjugate();
}

double largest_phase(const StateVector &v) {
    Eigen::Index k = 0;
    v.cwiseAbs().maxCoeff(&k);
    return std::arg(v(k));
}

CodeSpec code_for(const PulseSequence &seq, const CodeSpec &code, bool need_aux) {
    int aux = seq.n_qubits - code.n_code;
    if (aux < (need_aux ? 1 : 0)) {
        throw Error(ErrorKind::ContractMismatch, "sequence has " + std::to_string(seq.n_qubits) +
                                                     " qubits but code " + code.name + " needs " +
                                                     std::to_string(code.n_code) + " plus auxiliary qubits");
    }
    return code.with_aux(aux);
}

void note(VerificationReport &r, const std::string &msg) {
    r.failures.push_back(msg);
}

void check_fidelity(VerificationReport &r, const std::string &what, double f, double tol) {
    r.worst_fidelity = std::min(r.worst_fidelity, f);
    if (f < 1.0 - tol) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.12g", f);
        note(r, what + ": fidelity " + buf);
    }
}

/// Shared syndrome run; `expected_classes` (may be empty) groups errors that must share an outcome.
VerificationReport syndrome_common(const PulseSequence &seq, const CodeSpec &base, const OutcomeMap &classes,
                                   ContractKind kind, double tol) {
    CodeSpec code = code_for(seq, base, true);
    VerificationReport r;
    r.contract = kind;
    r.subject = code.name;
    for (std::size_t j = 0; j < code.errors.size(); j++) {
        const std::string &label = code.errors[j].label;
        ErrorResult er;
        er.label = label;
        er.weight = 1.0;
        er.fidelity = 1.0;
        bool consistent = true;
        for (int l = 0; l < 3; l++) {
            StateVector target = code.apply_error(j, code.logical(l));
            Deterministic d = run_deterministic(seq, kron(target, code.aux_init), tol);
            er.weight = std::min(er.weight, d.branch.weight);
            if (!d.ok) {
                note(r, label + ": " + d.failure);
                er.fidelity = 0.0;
                consistent = false;
                break;
            }
            if (l == 0) {
                er.outcome = d.outcome;
            } else if (d.outcome != er.outcome) {
                note(r, label + ": outcome depends on the logical state");
                consistent = false;
            }
            StateVector ov = code_overlap(d.branch.state, target);
            double f = ov.squaredNorm() / d.branch.weight;
            er.fidelity = std::min(er.fidelity, f);
            if (l == 0) {
                er.phase = largest_phase(ov);
            }
        }
        check_fidelity(r, label, er.fidelity, tol);
        if (consistent) {
            r.outcome_map.emplace_back(label, er.outcome);
        }
        r.errors.push_back(er);
    }
    if (r.outcome_map.size() == code.errors.size()) {
        std::map<std::string, std::set<std::uint64_t>> seen;
        for (std::size_t j = 0; j < code.errors.size(); j++) {
            seen[r.outcome_map[j].second].insert(classes.empty() ? j : classes[j]);
        }
        std::map<std::uint64_t, std::set<std::string>> per_class;
        for (std::size_t j = 0; j < code.errors.size(); j++) {
            per_class[classes.empty() ? j : classes[j]].insert(r.outcome_map[j].second);
        }
        for (const auto &[outcome, cls] : seen) {
            if (cls.size() > 1) {
                note(r, "outcome " + outcome + " is shared by errors that must be told apart");
            }
        }
        for (const auto &[cls, outs] : per_class) {
            if (outs.size() > 1) {
                note(r, "errors with equal stabilizer eigenvalues give different outcomes");
            }
        }
    }
    r.pass = r.failures.empty();
    return r;
}

}  // namespace

std::vector<Branch> simulate(const PulseSequence &seq, const StateVector &input) {
    seq.validate();
    const int n = seq.n_qubits;
    if (input.size() != (Eigen::Index{1} << n)) {
        throw Error(ErrorKind::DimensionMismatch, "input has dimension " + std::to_string(input.size()) +
                                                      " for a " + std::to_string(n) + "-qubit sequence");
    }
    std::vector<Branch> branches{Branch{input, {}, input.squaredNorm()}};
    for (const Pulse &p : seq.pulses) {
        if (p.is_unitary()) {
            Generator g = resolve(p, n);
            for (auto &b : branches) {
                apply_generator(g, p.theta, 0, b.state);
            }
            continue;
        }
        if (p.kind == PulseKind::Reset) {
            for (auto &b : branches) {
                reset_qubit(b, p.qubit, n);
            }
            continue;
        }
        const std::uint64_t mask = std::uint64_t{1} << (n - p.qubit);
        std::vector<Branch> next;
        for (const auto &b : branches) {
            for (int bit = 0; bit < 2; bit++) {
                Branch child = b;
                for (Eigen::Index i = 0; i < child.state.size(); i++) {
                    bool set = (static_cast<std::uint64_t>(i) & mask) != 0;
                    if (set != (bit == 1)) {
                        child.state(i) = 0.0;
                    }
                }
                child.weight = child.state.squaredNorm();
                if (child.weight < kBranchCutoff) {
                    continue;
                }
                child.outcomes.emplace_back(p.qubit, bit);
                next.push_back(std::move(child));
            }
        }
        branches = std::move(next);
    }
    return branches;
}

std::string_view contract_kind_name(ContractKind kind) {
    switch (kind) {
        case ContractKind::Syndrome:
            return "syndrome";
        case ContractKind::Stabilizer:
            return "stabilizer";
        case ContractKind::Coherent:
            return "coherent";
        case ContractKind::StatePrep:
            return "state_prep";
        case ContractKind::LogicalGate:
            return "logical_gate";
    }
    return "unknown";
}

VerificationReport verify_syndrome(const PulseSequence &seq, const CodeSpec &code, double tol) {
    return syndrome_common(seq, code, {}, ContractKind::Syndrome, tol);
}

VerificationReport verify_stabilizers(const PulseSequence &seq, const CodeSpec &code, const std::vector<int> &indices,
                                      double tol) {
    VerificationReport r = syndrome_common(seq, code, stabilizer_outcomes(code, indices), ContractKind::Stabilizer, tol);
    std::string names;
    for (int s : indices) {
        names += (names.empty() ? "" : ",") + std::to_string(s);
    }
    r.subject = code.name + " stabilizer " + names;
    return r;
}

VerificationReport verify_coherent(const PulseSequence &seq, const CodeSpec &base, double tol) {
    CodeSpec code = code_for(seq, base, true);
    VerificationReport r;
    r.contract = ContractKind::Coherent;
    r.subject = code.name;
    for (std::size_t j = 0; j < code.errors.size(); j++) {
        const std::string &label = code.errors[j].label;
        ErrorResult er;
        er.label = label;
        er.weight = 1.0;
        er.fidelity = 1.0;
        std::array<StateVector, 3> aux;
        bool ok = true;
        for (int l = 0; l < 3; l++) {
            Deterministic d = run_deterministic(seq, code.encoded_input(j, code.logical(l)), tol);
            er.weight = std::min(er.weight, d.branch.weight);
            if (!d.ok) {
                note(r, label + ": " + d.failure);
                er.fidelity = 0.0;
                ok = false;
                break;
            }
            er.outcome = d.outcome;
            StateVector a = code_overlap(d.branch.state, code.logical(l));
            er.fidelity = std::min(er.fidelity, a.squaredNorm() / d.branch.weight);
            if (l == 0) {
                er.phase = largest_phase(a);
            }
            aux[static_cast<std::size_t>(l)] = a.normalized();
        }
        if (ok) {
            double same = std::norm(aux[0].dot(aux[1]));
            er.fidelity = std::min(er.fidelity, same);
        }
        check_fidelity(r, label, er.fidelity, tol);
        r.errors.push_back(er);
    }
    r.pass = r.failures.empty();
    return r;
}

VerificationReport verify_state_prep(const PulseSequence &seq, const StateVector &target, double tol) {
    if (target.size() != (Eigen::Index{1} << seq.n_qubits)) {
        throw Error(ErrorKind::ContractMismatch, "target dimension " + std::to_string(target.size()) +
                                                     " does not match a " + std::to_string(seq.n_qubits) +
                                                     "-qubit sequence");
    }
    VerificationReport r;
    r.contract = ContractKind::StatePrep;
    r.subject = "state";
    StateVector init = basis_state((std::uint64_t{1} << seq.n_qubits) - 1, seq.n_qubits);
    Deterministic d = run_deterministic(seq, init, tol);
    ErrorResult er;
    er.label = "I";
    er.outcome = d.outcome;
    er.weight = d.branch.weight;
    if (!d.ok) {
        note(r, d.failure);
        er.fidelity = 0.0;
    } else {
        Complex ov = target.normalized().dot(d.branch.state) / std::sqrt(d.branch.weight);
        er.fidelity = std::norm(ov);
        er.phase = std::arg(ov);
    }
    check_fidelity(r, "state", er.fidelity, tol);
    r.errors.push_back(er);
    r.pass = r.failures.empty();
    return r;
}

VerificationReport verify_logical_gate(const PulseSequence &seq, const CodeSpec &base, const Operator &gate,
                                       double tol) {
    if (seq.has_measurement_or_reset()) {
        throw Error(ErrorKind::NonUnitarySequence, "logical gate sequences must be unitary");
    }
    if (seq.n_qubits != base.n_code) {
        throw Error(ErrorKind::ContractMismatch, "sequence has " + std::to_string(seq.n_qubits) + " qubits but code " +
                                                     base.name + " has " + std::to_string(base.n_code));
    }
    CodeSpec code = base.with_aux(0);
    VerificationReport r;
    r.contract = ContractKind::LogicalGate;
    r.subject = code.name;
    Objective obj = logical_gate_objective(code, gate);

    UnitaryCircuit circuit = plain_circuit(seq);
    Operator u = circuit_unitary(circuit);
    Operator c(u.rows(), 2);
    c.col(0) = code.codewords[0];
    c.col(1) = code.codewords[1];
    Operator logical = c.adjoint() * u * c;
    Complex fit = (gate.conjugate().cwiseProduct(logical)).sum();
    r.gate_phase = std::arg(fit);
    r.gate_deviation = (logical - std::polar(1.0, r.gate_phase) * gate).cwiseAbs().maxCoeff();
    if (r.gate_deviation > tol) {
        note(r, "logical action deviates from the gate by " + std::to_string(r.gate_deviation));
    }
    Operator mapped = c * gate;
    for (int l = 0; l < 2; l++) {
        ErrorResult er;
        er.label = l == 0 ? "0_L" : "1_L";
        er.weight = 1.0;
        Complex ov = mapped.col(l).dot(u * c.col(l));
        er.fidelity = std::norm(ov);
        er.phase = std::arg(ov);
        check_fidelity(r, er.label, er.fidelity, tol);
        r.errors.push_back(er);
    }

    r.objective_value = evaluate(obj, circuit);
    r.objective_max = obj.max_value;
    if (r.objective_value < obj.max_value - tol) {
        note(r, "hierarchy objective " + std::to_string(r.objective_value) + " below " +
                    std::to_string(obj.max_value));
    }

    Operator uc = u * c;
    Operator span(u.rows(), static_cast<Eigen::Index>(2 * code.errors.size()));
    for (std::size_t k = 0; k < code.errors.size(); k++) {
        for (int m = 0; m < 2; m++) {
            span.col(static_cast<Eigen::Index>(2 * k) + m) = code.apply_error(k, uc.col(m));
        }
    }
    Eigen::ColPivHouseholderQR<Operator> qr(span);
    qr.setThreshold(1e-10);
    Operator q = Operator(qr.householderQ()).leftCols(qr.rank());
    for (std::size_t j = 0; j < code.errors.size(); j++) {
        if (code.errors[j].level != 1) {
            continue;
        }
        for (int l = 0; l < 2; l++) {
            StateVector v = u * code.apply_error(j, code.codewords[static_cast<std::size_t>(l)]);
            double outside = (v - q * (q.adjoint() * v)).norm();
            double level0 = (uc.adjoint() * v).norm();
            r.leakage = std::max({r.leakage, outside, level0});
        }
    }
    if (r.leakage >= kLeakageTol) {
        note(r, "errors leave their hierarchy level (leakage " + std::to_string(r.leakage) + ")");
    }
    r.pass = r.failures.empty();
    return r;
}

std::string format_report(const VerificationReport &r) {
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.15g", v);
        return std::string(buf);
    };
    std::string out;
    out += "contract=" + std::string(contract_kind_name(r.contract)) + "\n";
    out += "subject=" + r.subject + "\n";
    out += std::string("pass=") + (r.pass ? "true" : "false") + "\n";
    out += "worst_fidelity=" + num(r.worst_fidelity) + "\n";
    if (r.contract == ContractKind::LogicalGate) {
        out += "gate_deviation=" + num(r.gate_deviation) + "\n";
        out += "gate_phase=" + num(r.gate_phase) + "\n";
        out += "objective=" + num(r.objective_value) + "\n";
        out += "objective_max=" + num(r.objective_max) + "\n";
        out += "leakage=" + num(r.leakage) + "\n";
    }
    if (!r.outcome_map.empty()) {
        std::string map;
        for (const auto &[label, outcome] : r.outcome_map) {
            map += (map.empty() ? "" : ",") + label + ":" + outcome;
        }
        out += "outcome_map=" + map + "\n";
    }
    for (const auto &f : r.failures) {
        out += "failure=" + f + "\n";
    }
    for (const auto &e : r.errors) {
        out += "\nerror=" + e.label + "\n";
        if (!e.outcome.empty()) {
            out += "outcome=" + e.outcome + "\n";
        }
        out += "weight=" + num(e.weight) + "\n";
        out += "fidelity=" + num(e.fidelity) + "\n";
        out += "phase=" + num(e.phase) + "\n";
    }
    return out;
}

}  // namespace qecopt
