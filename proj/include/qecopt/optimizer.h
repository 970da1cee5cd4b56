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

#ifndef QECOPT_OPTIMIZER_H
#define QECOPT_OPTIMIZER_H

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "qecopt/circuit.h"
#include "qecopt/objective.h"

namespace qecopt {

/// Settings for the sweep-based optimizer. Angles quantize toward m/2^n pi with n <= n_max.
/// Random draws kinds per slot. Layered uses global X, Y and a z on every qubit as layers, with only
/// z layers between consecutive fixed pulses; free-kind choices then come from pruning instead of luck.
enum class InitLayout { Random, Layered };

struct OptimizerConfig {
    /// Register shape. n_physical = 0 uses the objective's qubit count with one segment.
    /// Several segments need exactly one physical auxiliary qubit (the swap trick).
    int n_physical = 0;
    int n_code = 0;
    int segments = 1;

    InitLayout layout = InitLayout::Random;
    /// Pulses per segment in the initial sequence, fixed slots included. Random layout only.
    std::size_t initial_length = 20;
    /// Layers before the first and after the last fixed pulse. Layered layout only.
    int outer_layers = 2;
    /// Entangling pulses placed in every segment. Never changed or removed.
    std::vector<Pulse> fixed_pulses;
    /// Kinds drawn for the free pulses; LocalZ picks a uniform physical qubit.
    std::vector<PulseKind> kinds = {PulseKind::GlobalX, PulseKind::GlobalY, PulseKind::LocalZ};
    /// Qubit subsets offered as SubsetMSYY pulses. Empty means none.
    std::vector<std::vector<int>> subsets;

    double gamma0_start = 1e-8;
    double gamma0_growth = 1.15;
    double gamma0_cap = 1e-2;
    /// Pruning pressure starts growing once phi exceeds this fraction of the maximum.
    double gamma0_trigger = 0.8;
    double importance_scale = 0.25;
    double importance_exponent = 5.0;

    double gamma_quant = 1e-3;
    int n_max = 3;
    /// Sweep fraction after which quantization pressure applies.
    double quant_start = 0.6;

    double temperature = 0.0;
    double temperature_decay = 0.97;

    /// Final fraction of sweeps with every coupling at zero.
    double polish_fraction = 0.1;

    /// A run still improving at max_sweeps gets up to this many more polish sweeps.
    int polish_extra = 300;

    int max_sweeps = 300;
    int restarts = 1;
    double eps_conv = 1e-6;
    std::uint64_t seed = 1;
    /// 0 reads QECOPT_THREADS, then falls back to the hardware concurrency.
    int threads = 0;
    bool record_trace = true;

    /// Disturb-and-reoptimize budget: total attempts and the largest disturbance set.
    int disturb_attempts = 16;
    int disturb_depth = 3;
    /// Fresh pulses added when the disturbance set is exhausted. 0 uses the sequence length.
    std::size_t fill_count = 0;

    /// Throws ConfigInvalid.
    void validate() const;
};

enum class Phase : char { Free = 'A', Prune = 'B', Quantize = 'C', Polish = 'D' };

struct TraceRecord {
    int restart = 0;
    int sweep = 0;
    Phase phase = Phase::Free;
    double phi = 0.0;
    std::size_t pulses = 0;
    double gamma0 = 0.0;
    double gamma_quant = 0.0;
    double temperature = 0.0;
};

/// Mutable optimizer state for one run.
struct OptimizerState {
    OptimizerState(const OptimizerConfig &config, std::shared_ptr<const Objective> objective, UnitaryCircuit circuit,
                   std::uint64_t seed);

    OptimizerConfig config;
    EvalContext context;
    double gamma0 = 0.0;
    double gamma_quant = 0.0;
    double temperature = 0.0;
    int sweep_count = 0;
    double best_phi = -1e300;
    UnitaryCircuit best;
    std::mt19937_64 rng;
    bool wrap_angles = true;

    /// Records the current circuit if it beats the best so far under the total order.
    void consider_current(double phi);
};

struct OptimizationReport {
    bool converged = false;
    double phi = 0.0;
    double max_value = 0.0;
    UnitaryCircuit circuit;
    std::size_t unitary_count = 0;
    int best_restart = -1;
    int converged_restarts = 0;
    int sweeps = 0;
    std::vector<TraceRecord> trace;
};

/// Delta[0] phi = gamma0 * ((scale / importance)^exponent + 1); infinite for importance <= 0.
double tolerated_loss(double gamma0, double importance, double scale = 0.25, double exponent = 5.0);

/// Displacement from a parabola vertex that costs `loss`: sqrt(2 loss / |curvature|).
double displacement_for_loss(double loss, double curvature);

/// Nearest angle m pi / 2^n_max.
double nearest_grid_angle(double alpha, int n_max);

/// gamma_quant * (1 - 2 dist / step)_+ with dist the distance to the nearest grid angle.
double quantization_loss(double alpha, double gamma_quant, int n_max);

/// Wraps to (-pi, pi].
double wrap_angle(double theta);

/// True when `a` ranks above `b`: converged first, then higher phi, fewer pulses, smaller
/// sum of |theta| over non-entangling pulses, and finally kind order.
bool ranks_above(double phi_a, const UnitaryCircuit &a, double phi_b, const UnitaryCircuit &b, double max_value,
                 double eps_conv);

/// Register layout and fixed slots of the configured shape, without free pulses.
UnitaryCircuit empty_circuit(const OptimizerConfig &config, const Objective &objective);

UnitaryCircuit init_circuit(const OptimizerConfig &config, const Objective &objective, std::mt19937_64 &rng);

/// Initial sequence for cfg.seed in physical form (measure/reset at segment boundaries).
PulseSequence init_sequence(const OptimizerConfig &config, const Objective &objective);

enum class UpdateResult { Updated, Deleted };

/// Parabola step on pulse k with pruning, quantization and annealing displacements.
/// Throws FixedSlot for fixed pulses and IndexOutOfRange.
UpdateResult displaced_update(OptimizerState &state, std::size_t k);

/// One pass over all free pulses. Returns phi afterwards.
double sweep(OptimizerState &state);

/// Inserts `count` random pulses with |theta| <= max_angle at random positions.
void pad(OptimizerState &state, std::size_t count, double max_angle = 1e-3);

OptimizationReport optimize(const OptimizerConfig &config, const Objective &objective);

/// Restarts from `start` (padded with `pad_count` fresh pulses per restart) and runs the
/// pruning, quantization and polish phases.
OptimizationReport refine(const OptimizerConfig &config, const Objective &objective, const UnitaryCircuit &start,
                          std::size_t pad_count);

/// Flips or zeroes randomly chosen pulses of an optimal circuit and reoptimizes, growing the
/// disturbance when nothing shorter turns up. Entangling pulses stay fixed. Throws
/// InputNotOptimal when `optimal` is not within eps_conv of the maximum.
OptimizationReport disturb_and_reoptimize(const UnitaryCircuit &optimal, const Objective &objective,
                                          const OptimizerConfig &config);

/// One line per record: `restart=.. sweep=.. phase=.. phi=.. pulses=.. gamma0=.. gamma_quant=.. temperature=..`.
std::string format_trace(const std::vector<TraceRecord> &trace);

/// Worker count for restart parallelism.
int resolve_threads(int requested);

}  // namespace qecopt

#endif
