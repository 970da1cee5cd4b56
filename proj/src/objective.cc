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

#include "qecopt/objective.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "qecopt/error.h"

namespace qecopt {

std::string_view objective_kind_name(ObjectiveKind kind) {
    switch (kind) {
        case ObjectiveKind::FixedUnitaryRe:
            return "fixed_unitary_re";
        case ObjectiveKind::FixedUnitaryAbs:
            return "fixed_unitary_abs";
        case ObjectiveKind::Syndrome:
            return "syndrome";
        case ObjectiveKind::CoherentQEC:
            return "coherent";
        case ObjectiveKind::LogicalGate:
            return "logical_gate";
        case ObjectiveKind::StatePrep:
            return "state_prep";
    }
    return "unknown";
}

double Objective::combine(const std::vector<Complex> &values) const {
    double total = 0.0;
    for (const auto &t : terms) {
        Complex a = 0.0;
        for (int i : t.a) {
            a += values[static_cast<std::size_t>(i)];
        }
        if (t.b.empty()) {
            total += t.weight * a.real();
            continue;
        }
        Complex b = 0.0;
        for (int i : t.b) {
            b += values[static_cast<std::size_t>(i)];
        }
        total += t.weight * (a * std::conj(b)).real();
    }
    return total;
}

namespace {

int add_bracket(Objective &o, int costate, int input) {
    o.brackets.push_back(Bracket{costate, input});
    return static_cast<int>(o.brackets.size()) - 1;
}

int add_vector(std::vector<StateVector> &list, StateVector v) {
    list.push_back(std::move(v));
    return static_cast<int>(list.size()) - 1;
}

/// Inputs E_j|l_L> x aux_init for l = 0, 1; returns indices [l][j].
std::array<std::vector<int>, 2> add_error_inputs(Objective &o, const CodeSpec &code) {
    std::array<std::vector<int>, 2> idx;
    for (int l = 0; l < 2; l++) {
        for (std::size_t j = 0; j < code.errors.size(); j++) {
            idx[static_cast<std::size_t>(l)].push_back(add_vector(o.inputs, code.encoded_input(j, code.logical(l))));
        }
    }
    return idx;
}

Objective syndrome_objective_impl(const CodeSpec &code, const OutcomeMap &outcomes, bool shared_classes) {
    const std::uint64_t aux_dim = std::uint64_t{1} << code.n_aux;
    if (outcomes.size() != code.errors.size()) {
        throw Error(ErrorKind::NonInjectiveOutcomeMap, "outcome map size differs from error count");
    }
    if (!shared_classes && aux_dim < code.errors.size()) {
        throw Error(ErrorKind::AuxTooSmall, std::to_string(code.errors.size()) + " errors need more than " +
                                                std::to_string(code.n_aux) + " auxiliary qubits");
    }
    std::map<std::uint64_t, int> class_size;
    for (std::uint64_t e : outcomes) {
        if (e >= aux_dim) {
            throw Error(ErrorKind::AuxTooSmall, "outcome index outside the auxiliary register");
        }
        class_size[e]++;
    }
    if (!shared_classes && class_size.size() != outcomes.size()) {
        throw Error(ErrorKind::NonInjectiveOutcomeMap, "two errors share an outcome");
    }
    Objective o;
    o.kind = ObjectiveKind::Syndrome;
    o.n_qubits = code.n_total();
    o.outcomes = outcomes;
    o.outcome_classes = class_size.size();
    auto in = add_error_inputs(o, code);
    for (std::size_t j = 0; j < code.errors.size(); j++) {
        StateVector e = basis_state(outcomes[j], code.n_aux);
        int f0 = add_vector(o.costates, kron(code.apply_error(j, code.logical(0)), e));
        int f1 = add_vector(o.costates, kron(code.apply_error(j, code.logical(1)), e));
        Term t;
        t.a = {add_bracket(o, f0, in[0][j])};
        t.b = {add_bracket(o, f1, in[1][j])};
        t.weight = 1.0 / class_size[outcomes[j]];
        o.terms.push_back(t);
    }
    o.max_value = static_cast<double>(class_size.size());
    return o;
}

}  // namespace

OutcomeMap lexicographic_outcomes(const CodeSpec &code) {
    OutcomeMap m(code.errors.size());
    for (std::size_t j = 0; j < m.size(); j++) {
        m[j] = j;
    }
    return m;
}

OutcomeMap stabilizer_outcomes(const CodeSpec &code, const std::vector<int> &indices) {
    OutcomeMap m(code.errors.size(), 0);
    for (std::size_t j = 0; j < code.errors.size(); j++) {
        for (int s : indices) {
            if (s < 1 || s > static_cast<int>(code.stabilizers.size())) {
                throw Error(ErrorKind::IndexOutOfRange, "stabilizer " + std::to_string(s));
            }
            bool commutes = paulis_commute(code.errors[j].pauli, code.stabilizers[static_cast<std::size_t>(s - 1)]);
            m[j] = (m[j] << 1) | (commutes ? 1u : 0u);
        }
    }
    return m;
}

Objective fixed_unitary_objective(const Operator &target, bool absolute) {
    if (!is_unitary(target)) {
        throw Error(ErrorKind::NonUnitaryGate, "target is not unitary");
    }
    Objective o;
    o.kind = absolute ? ObjectiveKind::FixedUnitaryAbs : ObjectiveKind::FixedUnitaryRe;
    o.n_qubits = qubit_count(target.rows());
    o.phase_sensitive = !absolute;
    const Eigen::Index d = target.rows();
    Term t;
    for (Eigen::Index i = 0; i < d; i++) {
        int in = add_vector(o.inputs, basis_state(static_cast<std::uint64_t>(i), o.n_qubits));
        int out = add_vector(o.costates, target.col(i));
        t.a.push_back(add_bracket(o, out, in));
    }
    if (absolute) {
        t.b = t.a;
        t.weight = 1.0 / static_cast<double>(d * d);
        o.max_value = 1.0;
    } else {
        o.max_value = static_cast<double>(d);
    }
    o.terms.push_back(t);
    return o;
}

Objective syndrome_objective(const CodeSpec &code, const OutcomeMap &outcomes) {
    return syndrome_objective_impl(code, outcomes, false);
}

Objective stabilizer_objective(const CodeSpec &code, const std::vector<int> &indices) {
    if (static_cast<int>(indices.size()) != code.n_aux) {
        throw Error(ErrorKind::ContractMismatch, "one auxiliary qubit per stabilizer is required");
    }
    return syndrome_objective_impl(code, stabilizer_outcomes(code, indices), true);
}

Objective coherent_objective(const CodeSpec &code) {
    Objective o;
    o.kind = ObjectiveKind::CoherentQEC;
    o.n_qubits = code.n_total();
    auto in = add_error_inputs(o, code);
    const std::uint64_t aux_dim = std::uint64_t{1} << code.n_aux;
    std::array<std::vector<int>, 2> out;
    for (int l = 0; l < 2; l++) {
        for (std::uint64_t m = 0; m < aux_dim; m++) {
            out[static_cast<std::size_t>(l)].push_back(
                add_vector(o.costates, kron(code.logical(l), basis_state(m, code.n_aux))));
        }
    }
    for (std::size_t j = 0; j < code.errors.size(); j++) {
        for (std::uint64_t m = 0; m < aux_dim; m++) {
            Term t;
            t.a = {add_bracket(o, out[1][m], in[1][j])};
            t.b = {add_bracket(o, out[0][m], in[0][j])};
            o.terms.push_back(t);
        }
    }
    o.max_value = static_cast<double>(code.errors.size());
    return o;
}

Objective logical_gate_objective(const CodeSpec &code, const Operator &gate) {
    if (gate.rows() != 2 || gate.cols() != 2 || !is_unitary(gate)) {
        throw Error(ErrorKind::NonUnitaryGate, "logical gate must be a 2x2 unitary");
    }
    CodeSpec bare = code.with_aux(0);
    Objective o;
    o.kind = ObjectiveKind::LogicalGate;
    o.n_qubits = bare.n_code;
    auto in = add_error_inputs(o, bare);
    std::array<StateVector, 2> mapped;
    for (int l = 0; l < 2; l++) {
        mapped[static_cast<std::size_t>(l)] = gate(0, l) * bare.codewords[0] + gate(1, l) * bare.codewords[1];
    }
    std::array<std::vector<int>, 2> out;
    for (int l = 0; l < 2; l++) {
        for (std::size_t k = 0; k < bare.errors.size(); k++) {
            out[static_cast<std::size_t>(l)].push_back(
                add_vector(o.costates, bare.apply_error(k, mapped[static_cast<std::size_t>(l)])));
        }
    }
    for (std::size_t j = 0; j < bare.errors.size(); j++) {
        for (std::size_t k = 0; k < bare.errors.size(); k++) {
            if (bare.errors[j].level != bare.errors[k].level) {
                continue;
            }
            Term t;
            t.a = {add_bracket(o, out[0][k], in[0][j])};
            t.b = {add_bracket(o, out[1][k], in[1][j])};
            o.terms.push_back(t);
        }
    }
    o.max_value = static_cast<double>(bare.errors.size());
    return o;
}

Objective state_prep_objective(const StateVector &target, const StateVector &init) {
    if (target.size() != init.size()) {
        throw Error(ErrorKind::DimensionMismatch, "target and initial state differ in size");
    }
    for (const StateVector *v : {&target, &init}) {
        if (std::abs(v->norm() - 1.0) > 1e-12) {
            throw Error(ErrorKind::NotNormalized, "state preparation vectors must be unit norm");
        }
    }
    Objective o;
    o.kind = ObjectiveKind::StatePrep;
    o.n_qubits = qubit_count(target.size());
    o.inputs.push_back(init);
    o.costates.push_back(target);
    int b = add_bracket(o, 0, 0);
    o.terms.push_back(Term{{b}, {b}, 1.0});
    o.max_value = 1.0;
    return o;
}

namespace {

Operator stack(const std::vector<StateVector> &vs, int n_qubits) {
    Operator m(Eigen::Index{1} << n_qubits, static_cast<Eigen::Index>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); i++) {
        m.col(static_cast<Eigen::Index>(i)) = vs[i];
    }
    return m;
}

void check_shape(const Objective &o, const UnitaryCircuit &c) {
    if (o.n_qubits != c.n_qubits) {
        throw Error(ErrorKind::ContractMismatch, "objective acts on " + std::to_string(o.n_qubits) +
                                                     " qubits but the circuit has " + std::to_string(c.n_qubits));
    }
}

std::vector<Complex> bracket_values(const Objective &o, const Operator &costates, const Operator &finals) {
    std::vector<Complex> v(o.brackets.size());
    for (std::size_t b = 0; b < o.brackets.size(); b++) {
        v[b] = costates.col(o.brackets[b].costate).dot(finals.col(o.brackets[b].input));
    }
    return v;
}

}  // namespace

double evaluate(const Objective &objective, const UnitaryCircuit &circuit) {
    check_shape(objective, circuit);
    Operator states = stack(objective.inputs, objective.n_qubits);
    apply_circuit(circuit, states);
    return objective.combine(bracket_values(objective, stack(objective.costates, objective.n_qubits), states));
}

double evaluate(const Objective &objective, const PulseSequence &sequence) {
    return evaluate(objective, plain_circuit(sequence));
}

void LocalModel::check() const {
    if (owner_ == nullptr || owner_->generation() != generation_) {
        throw Error(ErrorKind::StaleCache, "local model outlived a change to its sequence");
    }
}

double LocalModel::value(double theta) const {
    return at(theta).value;
}

LocalQuadratic LocalModel::at(double theta) const {
    check();
    const std::size_t n = lambdas_.size();
    std::vector<Complex> e0(n);
    std::vector<Complex> e1(n);
    std::vector<Complex> e2(n);
    for (std::size_t c = 0; c < n; c++) {
        e0[c] = std::exp(-kI * theta * lambdas_[c]);
        e1[c] = -kI * lambdas_[c] * e0[c];
        e2[c] = -kI * lambdas_[c] * e1[c];
    }
    auto eval = [&](const std::vector<Complex> &coef, const std::vector<Complex> &e) {
        Complex s = 0.0;
        for (std::size_t c = 0; c < n; c++) {
            s += coef[c] * e[c];
        }
        return s;
    };
    LocalQuadratic q;
    for (std::size_t t = 0; t < weights_.size(); t++) {
        Complex a0 = eval(alpha_[t], e0);
        Complex a1 = eval(alpha_[t], e1);
        Complex a2 = eval(alpha_[t], e2);
        if (!has_b_[t]) {
            q.value += weights_[t] * a0.real();
            q.d1 += weights_[t] * a1.real();
            q.d2 += weights_[t] * a2.real();
            continue;
        }
        Complex b0 = std::conj(eval(beta_[t], e0));
        Complex b1 = std::conj(eval(beta_[t], e1));
        Complex b2 = std::conj(eval(beta_[t], e2));
        q.value += weights_[t] * (a0 * b0).real();
        q.d1 += weights_[t] * (a1 * b0 + a0 * b1).real();
        q.d2 += weights_[t] * (a2 * b0 + 2.0 * a1 * b1 + a0 * b2).real();
    }
    return q;
}

EvalContext::EvalContext(std::shared_ptr<const Objective> objective, UnitaryCircuit circuit)
    : objective_(std::move(objective)) {
    input_block_ = stack(objective_->inputs, objective_->n_qubits);
    costate_block_ = stack(objective_->costates, objective_->n_qubits);
    replace_circuit(std::move(circuit));
}

EvalContext::EvalContext(const Objective &objective, UnitaryCircuit circuit)
    : EvalContext(std::make_shared<const Objective>(objective), std::move(circuit)) {
}

void EvalContext::replace_circuit(UnitaryCircuit circuit) {
    circuit.validate();
    check_shape(*objective_, circuit);
    circuit_ = std::move(circuit);
    const std::size_t t = circuit_.size();
    forward_.assign(t + 1, Operator());
    forward_[0] = input_block_;
    forward_valid_ = 0;
    backward_.assign(t, Operator());
    backward_valid_ = t;
    generation_++;
}

void EvalContext::check_index(std::size_t k) const {
    if (k >= circuit_.size()) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "pulse " + std::to_string(k) + " of " + std::to_string(circuit_.size()));
    }
}

void EvalContext::ensure(std::size_t k) {
    const std::size_t t = circuit_.size();
    while (forward_valid_ < k) {
        Operator next = forward_[forward_valid_];
        apply_generator(circuit_.generator(forward_valid_), circuit_.pulses[forward_valid_].pulse.theta, 0, next);
        ops_ += static_cast<std::uint64_t>(next.cols());
        forward_[++forward_valid_] = std::move(next);
    }
    if (k >= t) {
        return;
    }
    if (backward_valid_ >= t) {
        backward_[t - 1] = costate_block_;
        backward_valid_ = t - 1;
    }
    while (backward_valid_ > k) {
        std::size_t j = backward_valid_;
        Operator prev = backward_[j];
        apply_generator(circuit_.generator(j), -circuit_.pulses[j].pulse.theta, 0, prev);
        ops_ += static_cast<std::uint64_t>(prev.cols());
        backward_[j - 1] = std::move(prev);
        backward_valid_ = j - 1;
    }
}

double EvalContext::value() {
    ensure(circuit_.size());
    return objective_->combine(bracket_values(*objective_, costate_block_, forward_[circuit_.size()]));
}

LocalModel EvalContext::model(std::size_t k) {
    check_index(k);
    ensure(k);
    const Generator g = circuit_.generator(k);
    const int n = circuit_.n_qubits;
    Operator psi = forward_[k];
    Operator chi = backward_[k];
    to_eigenframe(g, n, psi, false);
    to_eigenframe(g, n, chi, false);
    ops_ += static_cast<std::uint64_t>(psi.cols() + chi.cols());

    LocalModel m;
    m.owner_ = this;
    m.generation_ = generation_;
    m.theta_ = circuit_.pulses[k].pulse.theta;
    std::vector<double> spectrum = generator_spectrum(g, n);
    std::map<long long, std::size_t> classes;
    std::vector<std::size_t> class_of(spectrum.size());
    for (std::size_t x = 0; x < spectrum.size(); x++) {
        long long key = std::llround(4.0 * spectrum[x]);
        auto it = classes.find(key);
        if (it == classes.end()) {
            it = classes.emplace(key, m.lambdas_.size()).first;
            m.lambdas_.push_back(spectrum[x]);
        }
        class_of[x] = it->second;
    }
    const std::size_t nc = m.lambdas_.size();
    const Objective &o = *objective_;
    std::vector<std::vector<Complex>> coef(o.brackets.size(), std::vector<Complex>(nc, 0.0));
    for (std::size_t b = 0; b < o.brackets.size(); b++) {
        const Complex *f = chi.col(o.brackets[b].costate).data();
        const Complex *i = psi.col(o.brackets[b].input).data();
        std::vector<Complex> &c = coef[b];
        for (std::size_t x = 0; x < spectrum.size(); x++) {
            c[class_of[x]] += std::conj(f[x]) * i[x];
        }
    }
    for (const auto &t : o.terms) {
        std::vector<Complex> a(nc, 0.0);
        std::vector<Complex> b(nc, 0.0);
        for (int i : t.a) {
            for (std::size_t c = 0; c < nc; c++) {
                a[c] += coef[static_cast<std::size_t>(i)][c];
            }
        }
        for (int i : t.b) {
            for (std::size_t c = 0; c < nc; c++) {
                b[c] += coef[static_cast<std::size_t>(i)][c];
            }
        }
        m.weights_.push_back(t.weight);
        m.has_b_.push_back(!t.b.empty());
        m.alpha_.push_back(std::move(a));
        m.beta_.push_back(std::move(b));
    }
    return m;
}

LocalQuadratic EvalContext::local_quadratic(std::size_t k) {
    LocalModel m = model(k);
    return m.at(m.current_theta());
}

double EvalContext::importance(std::size_t k) {
    LocalModel m = model(k);
    return m.value(m.current_theta()) - m.value(0.0);
}

std::vector<double> EvalContext::gradient() {
    std::vector<double> g(circuit_.size());
    for (std::size_t k = 0; k < circuit_.size(); k++) {
        g[k] = local_quadratic(k).d1;
    }
    return g;
}

void EvalContext::set_angle(std::size_t k, double theta) {
    check_index(k);
    circuit_.pulses[k].pulse.theta = theta;
    forward_valid_ = std::min(forward_valid_, k);
    backward_valid_ = std::max(backward_valid_, k);
    generation_++;
}

void EvalContext::erase(std::size_t k) {
    check_index(k);
    circuit_.pulses.erase(circuit_.pulses.begin() + static_cast<std::ptrdiff_t>(k));
    forward_.erase(forward_.begin() + static_cast<std::ptrdiff_t>(k) + 1);
    backward_.erase(backward_.begin() + static_cast<std::ptrdiff_t>(k));
    forward_valid_ = std::min(forward_valid_, k);
    backward_valid_ = std::max(k, backward_valid_ == 0 ? 0 : backward_valid_ - 1);
    backward_valid_ = std::min(backward_valid_, circuit_.size());
    generation_++;
}

void EvalContext::insert(std::size_t k, CircuitPulse pulse) {
    if (k > circuit_.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "insert position " + std::to_string(k));
    }
    std::size_t old_size = circuit_.size();
    circuit_.pulses.insert(circuit_.pulses.begin() + static_cast<std::ptrdiff_t>(k), std::move(pulse));
    try {
        circuit_.validate();
    } catch (...) {
        circuit_.pulses.erase(circuit_.pulses.begin() + static_cast<std::ptrdiff_t>(k));
        throw;
    }
    forward_.insert(forward_.begin() + static_cast<std::ptrdiff_t>(k) + 1, Operator());
    backward_.insert(backward_.begin() + static_cast<std::ptrdiff_t>(k), Operator());
    forward_valid_ = std::min(forward_valid_, k);
    backward_valid_ = backward_valid_ >= old_size ? circuit_.size() : std::max(backward_valid_ + 1, k + 1);
    generation_++;
}

std::vector<double> gradient_naive(const Objective &objective, const UnitaryCircuit &circuit, std::uint64_t *ops) {
    check_shape(objective, circuit);
    const Operator inputs = stack(objective.inputs, objective.n_qubits);
    const Operator costates = stack(objective.costates, objective.n_qubits);
    std::uint64_t count = 0;
    Operator finals = inputs;
    apply_circuit(circuit, finals);
    count += circuit.size() * static_cast<std::uint64_t>(inputs.cols());
    std::vector<Complex> v = bracket_values(objective, costates, finals);
    std::vector<double> grad(circuit.size());
    for (std::size_t k = 0; k < circuit.size(); k++) {
        Operator s = inputs;
        for (std::size_t t = 0; t < circuit.size(); t++) {
            apply_generator(circuit.generator(t), circuit.pulses[t].pulse.theta, t == k ? 1 : 0, s);
            count += static_cast<std::uint64_t>(s.cols());
        }
        std::vector<Complex> dv = bracket_values(objective, costates, s);
        double g = 0.0;
        for (const auto &term : objective.terms) {
            Complex a = 0.0;
            Complex da = 0.0;
            for (int i : term.a) {
                a += v[static_cast<std::size_t>(i)];
                da += dv[static_cast<std::size_t>(i)];
            }
            if (term.b.empty()) {
                g += term.weight * da.real();
                continue;
            }
            Complex b = 0.0;
            Complex db = 0.0;
            for (int i : term.b) {
                b += v[static_cast<std::size_t>(i)];
                db += dv[static_cast<std::size_t>(i)];
            }
            g += term.weight * (da * std::conj(b) + a * std::conj(db)).real();
        }
        grad[k] = g;
    }
    if (ops != nullptr) {
        *ops = count;
    }
    return grad;
}

}  // namespace qecopt
