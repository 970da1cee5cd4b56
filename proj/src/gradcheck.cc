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

#include "qecopt/gradcheck.h"

#include <algorithm>
#include <cmath>

#include "qecopt/error.h"

namespace qecopt {

Operator random_unitary(Eigen::Index dim, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Operator m(dim, dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            m(i, j) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Operator> qr(m);
    Operator q = qr.householderQ();
    // Fix the phases of R's diagonal so the distribution is Haar.
    Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < dim; j++) {
        Complex d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

UnitaryCircuit random_circuit(int n_qubits, std::size_t length, std::mt19937_64 &rng) {
    PulseSequence seq;
    seq.n_qubits = n_qubits;
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_int_distribution<int> qubit(1, n_qubits);
    std::uniform_int_distribution<int> kind(0, n_qubits >= 2 ? 5 : 4);
    for (std::size_t t = 0; t < length; t++) {
        double theta = angle(rng);
        switch (kind(rng)) {
            case 0:
                seq.pulses.push_back(Pulse::x(theta));
                break;
            case 1:
                seq.pulses.push_back(Pulse::y(theta));
                break;
            case 2:
                seq.pulses.push_back(Pulse::xx(theta));
                break;
            case 3:
                seq.pulses.push_back(Pulse::yy(theta));
                break;
            case 4:
                seq.pulses.push_back(Pulse::z(qubit(rng), theta));
                break;
            default: {
                int a = qubit(rng);
                int b = qubit(rng);
                while (b == a) {
                    b = qubit(rng);
                }
                seq.pulses.push_back(Pulse::subset_yy({std::min(a, b), std::max(a, b)}, theta));
            }
        }
    }
    return plain_circuit(seq);
}

double central_difference(const Objective &objective, const UnitaryCircuit &circuit, std::size_t k, double h) {
    if (k >= circuit.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "pulse " + std::to_string(k));
    }
    UnitaryCircuit c = circuit;
    const double theta = c.pulses[k].pulse.theta;
    auto at = [&](double t) {
        c.pulses[k].pulse.theta = t;
        return evaluate(objective, c);
    };
    return (-at(theta + 2 * h) + 8 * at(theta + h) - 8 * at(theta - h) + at(theta - 2 * h)) / (12 * h);
}

double relative_error(double analytic, double numeric) {
    return std::abs(analytic - numeric) / std::max({std::abs(analytic), std::abs(numeric), 1e-3});
}

GradCheckResult gradient_check(const GradCheckConfig &cfg) {
    if (cfg.qubits < 1 || cfg.qubits > 6 || cfg.trials < 0) {
        throw Error(ErrorKind::ConfigInvalid, "gradcheck needs 1..6 qubits and a non-negative trial count");
    }
    GradCheckResult out;
    std::mt19937_64 rng(cfg.seed);
    const Eigen::Index dim = Eigen::Index{1} << cfg.qubits;
    for (int trial = 0; trial < cfg.trials; trial++) {
        UnitaryCircuit circuit = random_circuit(cfg.qubits, cfg.length, rng);
        Objective objective;
        switch (trial % 3) {
            case 0:
                objective = fixed_unitary_objective(random_unitary(dim, rng), true);
                break;
            case 1:
                objective = fixed_unitary_objective(random_unitary(dim, rng), false);
                break;
            default:
                objective = state_prep_objective(random_unitary(dim, rng).col(0),
                                                 basis_state(static_cast<std::uint64_t>(dim - 1), cfg.qubits));
        }
        EvalContext ctx(objective, circuit);
        std::vector<double> g = ctx.gradient();
        if (cfg.inject_sign_bug && !g.empty()) {
            g[static_cast<std::size_t>(trial) % g.size()] *= -1.0;
        }
        for (std::size_t k = 0; k < g.size(); k++) {
            double e = relative_error(g[k], central_difference(objective, circuit, k));
            out.max_relative_error = std::max(out.max_relative_error, e);
            out.derivatives++;
        }
        out.trials++;
    }
    out.pass = out.max_relative_error < cfg.tol;
    return out;
}

}  // namespace qecopt
