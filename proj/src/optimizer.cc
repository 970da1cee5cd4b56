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

#include "qecopt/optimizer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <thread>

#include "qecopt/error.h"

namespace qecopt {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream) {
    return splitmix(splitmix(seed) ^ (stream * 0xd1b54a32d192ed03ULL + 1));
}

bool converged(double phi, double max_value, double eps) {
    return max_value - phi < eps;
}

double free_angle_sum(const UnitaryCircuit &c) {
    double s = 0.0;
    for (const auto &p : c.pulses) {
        if (!p.pulse.is_entangling()) {
            s += std::abs(p.pulse.theta);
        }
    }
    return s;
}

Pulse random_pulse(const OptimizerConfig &cfg, int n_physical, std::mt19937_64 &rng, double max_angle) {
    std::uniform_int_distribution<std::size_t> pick(0, cfg.kinds.size() + cfg.subsets.size() - 1);
    std::uniform_real_distribution<double> angle(-max_angle, max_angle);
    std::size_t i = pick(rng);
    if (i >= cfg.kinds.size()) {
        return Pulse::subset_yy(cfg.subsets[i - cfg.kinds.size()], angle(rng));
    }
    Pulse p;
    p.kind = cfg.kinds[i];
    if (p.kind == PulseKind::LocalZ) {
        std::uniform_int_distribution<int> q(1, n_physical);
        p.qubit = q(rng);
    }
    p.theta = angle(rng);
    return p;
}

struct RunResult {
    double phi = 0.0;
    UnitaryCircuit circuit;
    int sweeps = 0;
    std::vector<TraceRecord> trace;
};

/// The phase machine. `pruning` starts phase B immediately.
RunResult run_phases(OptimizerState &state, bool pruning, int restart) {
    const OptimizerConfig &cfg = state.config;
    const double max_value = state.context.objective().max_value;
    const int total = cfg.max_sweeps;
    const int quant_from = static_cast<int>(std::floor(cfg.quant_start * total));
    const int polish_from = static_cast<int>(std::floor((1.0 - cfg.polish_fraction) * total));
    RunResult out;
    double phi = state.context.value();
    state.consider_current(phi);
    state.gamma0 = cfg.gamma0_start;
    state.temperature = cfg.temperature;
    int stable = 0;
    int limit = total;
    for (int s = 0; s < limit; s++) {
        Phase phase = Phase::Polish;
        double gamma0 = 0.0;
        if (s < polish_from) {
            if (!pruning && phi >= cfg.gamma0_trigger * max_value) {
                pruning = true;
            }
            phase = s >= quant_from ? Phase::Quantize : pruning ? Phase::Prune : Phase::Free;
            gamma0 = state.gamma0;
            state.gamma_quant = s >= quant_from ? cfg.gamma_quant : 0.0;
        } else {
            state.gamma_quant = 0.0;
            state.temperature = 0.0;
        }
        double saved_gamma0 = state.gamma0;
        state.gamma0 = gamma0;
        double before = phi;
        phi = sweep(state);
        state.gamma0 = saved_gamma0;
        state.consider_current(phi);
        out.sweeps++;
        if (cfg.record_trace) {
            out.trace.push_back(TraceRecord{restart, s, phase, phi, state.context.size(), gamma0, state.gamma_quant,
                                            state.temperature});
        }
        if (pruning) {
            state.gamma0 = std::min(state.gamma0 * cfg.gamma0_growth, cfg.gamma0_cap);
        }
        state.temperature *= cfg.temperature_decay;
        if (phase == Phase::Polish) {
            stable = std::abs(phi - before) < 1e-13 ? stable + 1 : 0;
            if (stable >= 2) {
                break;
            }
            // Coordinate ascent converges linearly; a run still climbing gets extra polish sweeps.
            if (s == limit - 1 && limit == total && stable == 0) {
                limit += cfg.polish_extra;
            }
        }
    }
    out.phi = state.best_phi;
    out.circuit = state.best;
    return out;
}

template <typename Job>
void run_parallel(int count, int threads, Job job) {
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next++; i < count; i = next++) {
            job(i);
        }
    };
    int n = std::max(1, std::min(threads, count));
    std::vector<std::thread> pool;
    for (int t = 1; t < n; t++) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto &t : pool) {
        t.join();
    }
}

OptimizationReport merge(const std::vector<RunResult> &runs, double max_value, double eps) {
    OptimizationReport report;
    report.max_value = max_value;
    for (std::size_t r = 0; r < runs.size(); r++) {
        const RunResult &run = runs[r];
        report.sweeps += run.sweeps;
        if (converged(run.phi, max_value, eps)) {
            report.converged_restarts++;
        }
        if (report.best_restart < 0 ||
            ranks_above(run.phi, run.circuit, report.phi, report.circuit, max_value, eps)) {
            report.best_restart = static_cast<int>(r);
            report.phi = run.phi;
            report.circuit = run.circuit;
        }
        report.trace.insert(report.trace.end(), run.trace.begin(), run.trace.end());
    }
    report.converged = converged(report.phi, max_value, eps);
    report.unitary_count = report.circuit.size();
    return report;
}

}  // namespace

void OptimizerConfig::validate() const {
    auto fail = [](const std::string &msg) { throw Error(ErrorKind::ConfigInvalid, msg); };
    if (initial_length < fixed_pulses.size()) {
        fail("initial length is smaller than the number of fixed slots");
    }
    if (!(eps_conv > 0.0)) {
        fail("eps_conv must be positive");
    }
    if (n_max < 0 || n_max > 6) {
        fail("n_max must lie in 0..6");
    }
    if (segments < 1 || restarts < 1 || max_sweeps < 0) {
        fail("segments and restarts must be positive, max_sweeps non-negative");
    }
    if (gamma0_start < 0.0 || gamma0_growth < 1.0 || gamma0_cap < 0.0 || gamma_quant < 0.0 || temperature < 0.0) {
        fail("coupling schedule parameters out of range");
    }
    for (double f : {quant_start, polish_fraction, gamma0_trigger, temperature_decay}) {
        if (f < 0.0 || f > 1.0) {
            fail("schedule fractions must lie in [0, 1]");
        }
    }
    if (kinds.empty() && subsets.empty()) {
        fail("no pulse kinds to draw from");
    }
    for (PulseKind k : kinds) {
        if (k == PulseKind::Measure || k == PulseKind::Reset || k == PulseKind::SubsetMSYY) {
            fail("free pulse kinds must be X, Y, X2, Y2 or z (subset gates go through 'subsets')");
        }
    }
    for (const Pulse &p : fixed_pulses) {
        if (!p.is_entangling()) {
            fail("fixed slots must be entangling pulses");
        }
    }
    if (polish_extra < 0) {
        fail("polish extension parameters must be non-negative");
    }
    if (layout == InitLayout::Layered && outer_layers < 0) {
        fail("outer_layers must be non-negative");
    }
    if (disturb_attempts < 0 || disturb_depth < 1) {
        fail("disturbance budget out of range");
    }
}

OptimizerState::OptimizerState(const OptimizerConfig &cfg, std::shared_ptr<const Objective> objective,
                               UnitaryCircuit circuit, std::uint64_t seed)
    : config(cfg),
      context(std::move(objective), std::move(circuit)),
      gamma0(cfg.gamma0_start),
      temperature(cfg.temperature),
      rng(seed),
      wrap_angles(context.objective().kind != ObjectiveKind::FixedUnitaryRe) {
}

void OptimizerState::consider_current(double phi) {
    const Objective &obj = context.objective();
    if (best.layouts.empty() || ranks_above(phi, context.circuit(), best_phi, best, obj.max_value, config.eps_conv)) {
        best_phi = phi;
        best = context.circuit();
    }
}

double tolerated_loss(double gamma0, double importance, double scale, double exponent) {
    if (gamma0 <= 0.0) {
        return 0.0;
    }
    if (importance <= 0.0) {
        return kInf;
    }
    return gamma0 * (std::pow(scale / importance, exponent) + 1.0);
}

double displacement_for_loss(double loss, double curvature) {
    if (loss <= 0.0) {
        return 0.0;
    }
    if (curvature == 0.0) {
        return kInf;
    }
    return std::sqrt(2.0 * loss / std::abs(curvature));
}

double nearest_grid_angle(double alpha, int n_max) {
    const double step = kPi / std::ldexp(1.0, n_max);
    return std::round(alpha / step) * step;
}

double quantization_loss(double alpha, double gamma_quant, int n_max) {
    const double step = kPi / std::ldexp(1.0, n_max);
    const double dist = std::abs(alpha - nearest_grid_angle(alpha, n_max));
    return gamma_quant * std::max(0.0, 1.0 - 2.0 * dist / step);
}

double wrap_angle(double theta) {
    double r = std::remainder(theta, 2.0 * kPi);
    return r <= -kPi ? r + 2.0 * kPi : r;
}

bool ranks_above(double phi_a, const UnitaryCircuit &a, double phi_b, const UnitaryCircuit &b, double max_value,
                 double eps_conv) {
    const bool ca = converged(phi_a, max_value, eps_conv);
    const bool cb = converged(phi_b, max_value, eps_conv);
    if (ca != cb) {
        return ca;
    }
    if (!ca && phi_a != phi_b) {
        return phi_a > phi_b;
    }
    if (a.size() != b.size()) {
        return a.size() < b.size();
    }
    const double sa = free_angle_sum(a);
    const double sb = free_angle_sum(b);
    if (std::abs(sa - sb) > 1e-12) {
        return sa < sb;
    }
    for (std::size_t k = 0; k < a.size(); k++) {
        if (a.pulses[k].pulse.kind != b.pulses[k].pulse.kind) {
            return a.pulses[k].pulse.kind < b.pulses[k].pulse.kind;
        }
    }
    return false;
}

UnitaryCircuit empty_circuit(const OptimizerConfig &cfg, const Objective &objective) {
    cfg.validate();
    const int n_physical = cfg.n_physical > 0 ? cfg.n_physical : objective.n_qubits;
    UnitaryCircuit c = segmented_circuit(n_physical, cfg.segments > 1 ? cfg.n_code : n_physical, cfg.segments);
    if (c.n_qubits != objective.n_qubits) {
        throw Error(ErrorKind::ConfigInvalid, "configured register has " + std::to_string(c.n_qubits) +
                                                  " virtual qubits but the objective acts on " +
                                                  std::to_string(objective.n_qubits));
    }
    for (int s = 0; s < cfg.segments; s++) {
        for (const Pulse &p : cfg.fixed_pulses) {
            c.pulses.push_back(CircuitPulse{p, s, true});
        }
    }
    c.validate();
    return c;
}

UnitaryCircuit init_circuit(const OptimizerConfig &cfg, const Objective &objective, std::mt19937_64 &rng) {
    UnitaryCircuit c = empty_circuit(cfg, objective);
    c.pulses.clear();
    if (cfg.layout == InitLayout::Layered) {
        std::uniform_real_distribution<double> angle(-kPi, kPi);
        auto z_layer = [&](int s) {
            for (int q = 1; q <= c.n_physical; q++) {
                c.pulses.push_back(CircuitPulse{Pulse::z(q, angle(rng)), s, false});
            }
        };
        auto outer = [&](int s) {
            for (int l = 0; l < cfg.outer_layers; l++) {
                c.pulses.push_back(CircuitPulse{Pulse::x(angle(rng)), s, false});
                c.pulses.push_back(CircuitPulse{Pulse::y(angle(rng)), s, false});
                z_layer(s);
            }
        };
        for (int s = 0; s < cfg.segments; s++) {
            outer(s);
            for (std::size_t i = 0; i < cfg.fixed_pulses.size(); i++) {
                if (i > 0) {
                    z_layer(s);
                }
                c.pulses.push_back(CircuitPulse{cfg.fixed_pulses[i], s, true});
            }
            outer(s);
        }
        c.validate();
        return c;
    }
    const std::size_t length = cfg.initial_length;
    const std::size_t n_fixed = cfg.fixed_pulses.size();
    std::vector<int> slot(length, -1);
    for (std::size_t i = 0; i < n_fixed; i++) {
        auto pos = static_cast<std::size_t>(std::floor((static_cast<double>(i) + 0.5) * static_cast<double>(length) /
                                                       static_cast<double>(n_fixed)));
        slot[std::min(pos, length - 1)] = static_cast<int>(i);
    }
    for (int s = 0; s < cfg.segments; s++) {
        for (std::size_t t = 0; t < length; t++) {
            if (slot[t] >= 0) {
                c.pulses.push_back(CircuitPulse{cfg.fixed_pulses[static_cast<std::size_t>(slot[t])], s, true});
            } else {
                c.pulses.push_back(CircuitPulse{random_pulse(cfg, c.n_physical, rng, kPi), s, false});
            }
        }
    }
    c.validate();
    return c;
}

PulseSequence init_sequence(const OptimizerConfig &cfg, const Objective &objective) {
    std::mt19937_64 rng(stream_seed(cfg.seed, 0));
    UnitaryCircuit c = init_circuit(cfg, objective, rng);
    return to_pulse_sequence(c, cfg.segments > 1 ? cfg.n_code : c.n_physical, ReadoutStyle::Measured);
}

UpdateResult displaced_update(OptimizerState &state, std::size_t k) {
    EvalContext &ctx = state.context;
    if (k >= ctx.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "pulse " + std::to_string(k));
    }
    if (ctx.circuit().pulses[k].fixed) {
        throw Error(ErrorKind::FixedSlot, "pulse " + std::to_string(k) + " is a fixed slot");
    }
    const OptimizerConfig &cfg = state.config;
    LocalModel m = ctx.model(k);
    const double theta = m.current_theta();
    const LocalQuadratic here = m.at(theta);

    double alpha = theta;
    double best = here.value;
    bool trusted = false;
    if (here.d2 < 0.0) {
        double vertex = theta - here.d1 / here.d2;
        double predicted = -0.5 * here.d1 * here.d1 / here.d2;
        double actual = m.value(vertex) - here.value;
        if (std::abs(actual - predicted) <= 0.1 * std::abs(predicted) && actual >= 0.0) {
            alpha = vertex;
            best = here.value + actual;
            trusted = true;
        }
    }
    if (!trusted) {
        for (int j = 0; j < 8; j++) {
            double t = theta + (j - 3.5) / 3.5 * (kPi / 2.0);
            double v = m.value(t);
            if (v > best + 1e-15) {
                best = v;
                alpha = t;
            }
        }
    }
    if (state.wrap_angles) {
        alpha = wrap_angle(alpha);
    }

    const double curvature = m.at(alpha).d2;
    const bool flat = std::abs(curvature) < 1e-12;
    const double importance = best - m.value(0.0);
    const double loss = tolerated_loss(state.gamma0, importance, cfg.importance_scale, cfg.importance_exponent);
    double d0 = 0.0;
    if (state.gamma0 > 0.0) {
        if (flat) {
            if (importance <= loss) {
                ctx.erase(k);
                return UpdateResult::Deleted;
            }
        } else {
            d0 = displacement_for_loss(loss, curvature);
            if (d0 >= std::abs(alpha)) {
                ctx.erase(k);
                return UpdateResult::Deleted;
            }
        }
    }
    double next = alpha - std::copysign(d0, alpha);

    if (state.gamma_quant > 0.0) {
        double grid = nearest_grid_angle(alpha, cfg.n_max);
        double dist = grid - alpha;
        double dq = flat ? std::abs(dist)
                         : displacement_for_loss(quantization_loss(alpha, state.gamma_quant, cfg.n_max), curvature);
        next += std::copysign(std::min(dq, std::abs(dist)), dist);
    }
    if (state.temperature > 0.0) {
        std::exponential_distribution<double> energy(1.0 / state.temperature);
        std::bernoulli_distribution sign(0.5);
        double da = std::min(displacement_for_loss(energy(state.rng), flat ? 1.0 : curvature), kPi / 2.0);
        next += sign(state.rng) ? da : -da;
    }
    if (state.wrap_angles) {
        next = wrap_angle(next);
    }
    ctx.set_angle(k, next);
    return UpdateResult::Updated;
}

double sweep(OptimizerState &state) {
    EvalContext &ctx = state.context;
    std::size_t k = 0;
    while (k < ctx.size()) {
        if (ctx.circuit().pulses[k].fixed || displaced_update(state, k) == UpdateResult::Updated) {
            k++;
        }
    }
    state.sweep_count++;
    return ctx.value();
}

void pad(OptimizerState &state, std::size_t count, double max_angle) {
    EvalContext &ctx = state.context;
    const int segments = static_cast<int>(ctx.circuit().layouts.size());
    for (std::size_t i = 0; i < count; i++) {
        const auto &pulses = ctx.circuit().pulses;
        std::uniform_int_distribution<std::size_t> where(0, pulses.size());
        std::size_t k = where(state.rng);
        int lo = k > 0 ? pulses[k - 1].segment : 0;
        int hi = k < pulses.size() ? pulses[k].segment : segments - 1;
        std::uniform_int_distribution<int> seg(lo, hi);
        int s = seg(state.rng);
        Pulse p = random_pulse(state.config, ctx.circuit().n_physical, state.rng, max_angle);
        ctx.insert(k, CircuitPulse{p, s, false});
    }
}

OptimizationReport optimize(const OptimizerConfig &cfg, const Objective &objective) {
    cfg.validate();
    auto obj = std::make_shared<const Objective>(objective);
    UnitaryCircuit base = empty_circuit(cfg, objective);
    double phi0 = evaluate(objective, base);
    if (converged(phi0, objective.max_value, cfg.eps_conv)) {
        return merge({RunResult{phi0, base, 0, {}}}, objective.max_value, cfg.eps_conv);
    }
    std::vector<RunResult> runs(static_cast<std::size_t>(cfg.restarts));
    run_parallel(cfg.restarts, resolve_threads(cfg.threads), [&](int r) {
        std::uint64_t seed = stream_seed(cfg.seed, static_cast<std::uint64_t>(r));
        std::mt19937_64 rng(seed);
        UnitaryCircuit start = init_circuit(cfg, objective, rng);
        OptimizerState state(cfg, obj, std::move(start), splitmix(seed));
        runs[static_cast<std::size_t>(r)] = run_phases(state, false, r);
    });
    return merge(runs, objective.max_value, cfg.eps_conv);
}

OptimizationReport refine(const OptimizerConfig &cfg, const Objective &objective, const UnitaryCircuit &start,
                          std::size_t pad_count) {
    cfg.validate();
    auto obj = std::make_shared<const Objective>(objective);
    std::vector<RunResult> runs(static_cast<std::size_t>(cfg.restarts));
    run_parallel(cfg.restarts, resolve_threads(cfg.threads), [&](int r) {
        OptimizerState state(cfg, obj, start, stream_seed(cfg.seed, static_cast<std::uint64_t>(r)));
        pad(state, pad_count);
        state.best = UnitaryCircuit{};
        runs[static_cast<std::size_t>(r)] = run_phases(state, true, r);
    });
    return merge(runs, objective.max_value, cfg.eps_conv);
}

OptimizationReport disturb_and_reoptimize(const UnitaryCircuit &optimal, const Objective &objective,
                                          const OptimizerConfig &cfg) {
    cfg.validate();
    const double max_value = objective.max_value;
    const double phi_in = evaluate(objective, optimal);
    if (!converged(phi_in, max_value, cfg.eps_conv)) {
        throw Error(ErrorKind::InputNotOptimal, "input reaches " + std::to_string(phi_in) + " of " +
                                                    std::to_string(max_value));
    }
    auto obj = std::make_shared<const Objective>(objective);
    UnitaryCircuit best = optimal;
    for (auto &p : best.pulses) {
        p.fixed = p.fixed || p.pulse.is_entangling();
    }
    double best_phi = phi_in;
    std::mt19937_64 rng(stream_seed(cfg.seed, 0x5eed));

    OptimizationReport report;
    report.max_value = max_value;
    report.trace.push_back(TraceRecord{-1, 0, Phase::Polish, best_phi, best.size(), 0.0, 0.0, 0.0});

    struct Disturbance {
        std::size_t index;
        bool zero;
    };
    std::vector<Disturbance> disturbances;
    for (int attempt = 0; attempt < cfg.disturb_attempts; attempt++) {
        std::vector<std::size_t> free;
        for (std::size_t k = 0; k < best.size(); k++) {
            if (!best.pulses[k].fixed) {
                free.push_back(k);
            }
        }
        if (free.empty()) {
            break;
        }
        const std::size_t depth = std::min<std::size_t>(static_cast<std::size_t>(cfg.disturb_depth), free.size());
        bool fill = disturbances.size() >= depth;
        UnitaryCircuit candidate = best;
        if (fill) {
            disturbances.clear();
        } else {
            std::vector<std::size_t> open;
            for (std::size_t k : free) {
                bool used = std::any_of(disturbances.begin(), disturbances.end(),
                                        [&](const Disturbance &d) { return d.index == k; });
                if (!used) {
                    open.push_back(k);
                }
            }
            std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
            std::bernoulli_distribution zero(0.5);
            std::size_t chosen = open[pick(rng)];
            disturbances.push_back(Disturbance{chosen, zero(rng)});
            for (const auto &d : disturbances) {
                double &theta = candidate.pulses[d.index].pulse.theta;
                theta = d.zero ? 0.0 : -theta;
            }
        }
        OptimizerState state(cfg, obj, candidate, stream_seed(cfg.seed, static_cast<std::uint64_t>(attempt) + 1));
        if (fill) {
            pad(state, cfg.fill_count > 0 ? cfg.fill_count : best.size(), kPi);
            state.best = UnitaryCircuit{};
        }
        RunResult run = run_phases(state, true, attempt);
        report.sweeps += run.sweeps;
        if (converged(run.phi, max_value, cfg.eps_conv) && run.circuit.size() < best.size()) {
            best = run.circuit;
            best_phi = run.phi;
            disturbances.clear();
            report.converged_restarts++;
        }
        report.trace.push_back(TraceRecord{attempt, run.sweeps, Phase::Polish, best_phi, best.size(), 0.0, 0.0, 0.0});
    }
    report.phi = best_phi;
    report.circuit = best;
    report.unitary_count = best.size();
    report.converged = converged(best_phi, max_value, cfg.eps_conv);
    report.best_restart = 0;
    return report;
}

std::string format_trace(const std::vector<TraceRecord> &trace) {
    std::string out;
    char buf[256];
    for (const auto &t : trace) {
        std::snprintf(buf, sizeof buf,
                      "restart=%d sweep=%d phase=%c phi=%.15g pulses=%zu gamma0=%.6g gamma_quant=%.6g "
                      "temperature=%.6g\n",
                      t.restart, t.sweep, static_cast<char>(t.phase), t.phi, t.pulses, t.gamma0, t.gamma_quant,
                      t.temperature);
        out += buf;
    }
    return out;
}

int resolve_threads(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char *env = std::getenv("QECOPT_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) {
            return n;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace qecopt
