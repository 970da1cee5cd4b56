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

#ifndef QECOPT_GRADCHECK_H
#define QECOPT_GRADCHECK_H

#include <cstddef>
#include <cstdint>
#include <random>

#include "qecopt/objective.h"

namespace qecopt {

struct GradCheckConfig {
    int qubits = 3;
    std::size_t length = 8;
    int trials = 20;
    std::uint64_t seed = 1;
    double tol = 1e-6;
    /// Mutation check: flips the sign of one analytic derivative per trial.
    bool inject_sign_bug = false;
};

struct GradCheckResult {
    int trials = 0;
    std::size_t derivatives = 0;
    double max_relative_error = 0.0;
    bool pass = true;
};

/// Haar-random unitary from the QR decomposition of a complex Gaussian matrix.
Operator random_unitary(Eigen::Index dim, std::mt19937_64 &rng);

/// Single-segment circuit of unitary pulses with random kinds (subset MS included for n >= 2)
/// and angles uniform in [-pi, pi].
UnitaryCircuit random_circuit(int n_qubits, std::size_t length, std::mt19937_64 &rng);

/// Fourth-order central difference of the objective in the angle of pulse k.
double central_difference(const Objective &objective, const UnitaryCircuit &circuit, std::size_t k,
                          double h = 1e-3);

/// |analytic - numeric| / max(|analytic|, |numeric|, 1e-3). The floor keeps vanishing
/// derivatives from turning rounding noise into a large ratio.
double relative_error(double analytic, double numeric);

/// Random fixed-unitary (Re and Abs) and state-preparation objectives, one per trial in turn.
/// Every pulse's analytic derivative is compared with central_difference.
GradCheckResult gradient_check(const GradCheckConfig &config);

}  // namespace qecopt

#endif
