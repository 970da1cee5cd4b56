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

// qecopt command-line entry point: verify, optimize, render, count, gradcheck, export.
//
// Exit codes are stable: 0 success, 1 contract or convergence failure, 2 usage or parse error.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qecopt/corpus.h"
#include "qecopt/error.h"
#include "qecopt/gradcheck.h"
#include "qecopt/objective.h"
#include "qecopt/optimizer.h"
#include "qecopt/render.h"
#include "qecopt/sequence_io.h"
#include "qecopt/verifier.h"

namespace fs = std::filesystem;
using namespace qecopt;

namespace {

constexpr int kSuccess = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

[[noreturn]] void invalid(const std::string &msg) {
    throw Error(ErrorKind::ConfigInvalid, msg);
}

std::string read_text(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        invalid("cannot open " + path);
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        invalid("cannot write " + path);
    }
    out << text;
}

std::string trim(std::string s) {
    const char *ws = " \t\r\n";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
}

std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) {
            out.push_back(item);
        }
    }
    return out;
}

/// `key = value` lines with `#` comments. Every key must be known and is read at most once;
/// the whole file is checked before any computation starts.
class KeyValues {
   public:
    KeyValues(const std::string &path, const std::vector<std::string> &known) : dir_(fs::path(path).parent_path()) {
        std::istringstream in(read_text(path));
        std::string line;
        int number = 0;
        while (std::getline(in, line)) {
            number++;
            line = trim(line.substr(0, line.find('#')));
            if (line.empty()) {
                continue;
            }
            auto eq = line.find('=');
            if (eq == std::string::npos) {
                invalid(path + ":" + std::to_string(number) + ": expected key = value");
            }
            std::string key = trim(line.substr(0, eq));
            if (std::find(known.begin(), known.end(), key) == known.end()) {
                invalid(path + ":" + std::to_string(number) + ": unknown key '" + key + "'");
            }
            if (!values_.emplace(key, trim(line.substr(eq + 1))).second) {
                invalid(path + ":" + std::to_string(number) + ": duplicate key '" + key + "'");
            }
        }
    }

    std::optional<std::string> get(const std::string &key) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::string str(const std::string &key, const std::string &fallback) const {
        return get(key).value_or(fallback);
    }

    template <typename T>
    void number(const std::string &key, T &target) const {
        auto v = get(key);
        if (!v) {
            return;
        }
        std::istringstream in(*v);
        T parsed{};
        in >> parsed;
        if (!in || !(in >> std::ws).eof()) {
            invalid("key '" + key + "': cannot parse '" + *v + "'");
        }
        target = parsed;
    }

    void flag(const std::string &key, bool &target) const {
        auto v = get(key);
        if (!v) {
            return;
        }
        if (*v == "1" || *v == "true" || *v == "yes") {
            target = true;
        } else if (*v == "0" || *v == "false" || *v == "no") {
            target = false;
        } else {
            invalid("key '" + key + "': expected true or false");
        }
    }

    /// Input paths are relative to the config file.
    std::string input_path(const std::string &p) const {
        fs::path path(p);
        return path.is_absolute() || dir_.empty() ? p : (dir_ / path).string();
    }

   private:
    fs::path dir_;
    std::map<std::string, std::string> values_;
};

std::vector<int> int_list(const std::string &s, char sep = ',') {
    std::vector<int> out;
    for (const auto &item : split(s, sep)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
        } catch (const std::exception &) {
            invalid("expected an integer, got '" + item + "'");
        }
    }
    return out;
}

std::vector<double> numbers_in(const std::string &text) {
    std::vector<double> out;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::istringstream in(line.substr(0, line.find('#')));
        std::string tok;
        while (in >> tok) {
            out.push_back(parse_angle(tok));
        }
    }
    return out;
}

ContractKind contract_from_name(const std::string &name) {
    if (name == "syndrome") return ContractKind::Syndrome;
    if (name == "stabilizer") return ContractKind::Stabilizer;
    if (name == "coherent") return ContractKind::Coherent;
    if (name == "state_prep" || name == "prep") return ContractKind::StatePrep;
    if (name == "logical_gate" || name == "gate") return ContractKind::LogicalGate;
    invalid("unknown contract '" + name + "' (syndrome, stabilizer, coherent, state_prep, logical_gate)");
}

/// zero / one / plus name a codeword of `code`. Anything else is a file: one bit string, or one
/// amplitude per line as `re [im]`.
StateVector load_state(const std::string &spec, const std::optional<CodeSpec> &code) {
    if (spec == "zero" || spec == "one" || spec == "plus") {
        if (!code) {
            invalid("target '" + spec + "' needs --code");
        }
        return code->logical(spec == "zero" ? 0 : spec == "one" ? 1 : 2);
    }
    std::string text = read_text(spec);
    std::string first = trim(text.substr(0, text.find('\n')));
    if (!first.empty() && first.find_first_not_of("01") == std::string::npos && first.size() > 1) {
        return basis_state(first);
    }
    std::vector<Complex> amps;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        std::vector<double> v = numbers_in(line);
        if (v.empty()) {
            continue;
        }
        if (v.size() > 2) {
            invalid(spec + ": expected 're [im]' per line");
        }
        amps.emplace_back(v[0], v.size() == 2 ? v[1] : 0.0);
    }
    StateVector s(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); i++) {
        s(static_cast<Eigen::Index>(i)) = amps[i];
    }
    qubit_count(s.size());
    return s;
}

/// A named gate, or a file with the 2x2 matrix row-major: four reals or four `re im` pairs.
Operator load_gate(const std::string &spec) {
    if (!fs::exists(spec)) {
        return named_gate(spec);
    }
    std::vector<double> v = numbers_in(read_text(spec));
    Operator g(2, 2);
    if (v.size() == 4) {
        g << v[0], v[1], v[2], v[3];
    } else if (v.size() == 8) {
        g << Complex(v[0], v[1]), Complex(v[2], v[3]), Complex(v[4], v[5]), Complex(v[6], v[7]);
    } else {
        invalid(spec + ": expected 4 or 8 numbers");
    }
    return g;
}

void write_state(const std::string &path, const StateVector &s) {
    std::string out;
    char buf[96];
    for (Eigen::Index i = 0; i < s.size(); i++) {
        std::snprintf(buf, sizeof buf, "%.17g %.17g\n", s(i).real(), s(i).imag());
        out += buf;
    }
    write_text(path, out);
}

std::string num(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// ---------------------------------------------------------------- verify

struct VerifyArgs {
    std::string sequence;
    std::string code;
    std::string contract;
    std::vector<int> stabilizers;
    std::string gate;
    std::string target;
    double tol = 1e-9;
};

int cmd_verify(const VerifyArgs &a) {
    PulseSequence seq = read_sequence_file(a.sequence);
    std::optional<CodeSpec> code;
    if (!a.code.empty()) {
        code = builtin_code(a.code);
    }
    ContractKind kind;
    if (!a.contract.empty()) {
        kind = contract_from_name(a.contract);
    } else if (!a.stabilizers.empty()) {
        kind = ContractKind::Stabilizer;
    } else if (!a.gate.empty()) {
        kind = ContractKind::LogicalGate;
    } else if (!a.target.empty()) {
        kind = ContractKind::StatePrep;
    } else {
        kind = ContractKind::Syndrome;
    }
    if (kind != ContractKind::StatePrep && !code) {
        invalid("contract " + std::string(contract_kind_name(kind)) + " needs --code");
    }
    VerificationReport r;
    switch (kind) {
        case ContractKind::Syndrome:
            r = verify_syndrome(seq, *code, a.tol);
            break;
        case ContractKind::Stabilizer:
            if (a.stabilizers.empty()) {
                invalid("stabilizer contract needs --stabilizer");
            }
            r = verify_stabilizers(seq, *code, a.stabilizers, a.tol);
            break;
        case ContractKind::Coherent:
            r = verify_coherent(seq, *code, a.tol);
            break;
        case ContractKind::StatePrep:
            if (a.target.empty()) {
                invalid("state_prep contract needs --target");
            }
            r = verify_state_prep(seq, load_state(a.target, code), a.tol);
            break;
        case ContractKind::LogicalGate:
            if (a.gate.empty()) {
                invalid("logical_gate contract needs --gate");
            }
            r = verify_logical_gate(seq, *code, load_gate(a.gate), a.tol);
            break;
    }
    std::printf("%s %s %s: worst fidelity %.12f, %zu unitaries\n\n", r.pass ? "PASS" : "FAIL",
                std::string(contract_kind_name(r.contract)).c_str(), r.subject.c_str(), r.worst_fidelity,
                seq.unitary_count());
    std::fputs(format_report(r).c_str(), stdout);
    return r.pass ? kSuccess : kFailure;
}

// ---------------------------------------------------------------- optimize

const std::vector<std::string> kOptimizeKeys = {
    "code", "contract", "stabilizers", "outcomes", "gate", "target", "qubits", "segments", "fixed", "kinds",
    "subsets", "layout", "outer_layers", "initial_length", "gamma0_start", "gamma0_growth", "gamma0_cap",
    "gamma0_trigger", "importance_scale", "importance_exponent", "gamma_quant", "n_max", "quant_start",
    "temperature", "temperature_decay", "polish_fraction", "polish_extra", "max_sweeps", "restarts", "eps_conv",
    "seed", "threads", "trace", "out"};

std::vector<PulseKind> kinds_from(const std::string &s) {
    std::vector<PulseKind> out;
    for (const auto &k : split(s, ' ')) {
        if (k == "X") out.push_back(PulseKind::GlobalX);
        else if (k == "Y") out.push_back(PulseKind::GlobalY);
        else if (k == "X2") out.push_back(PulseKind::MSXX);
        else if (k == "Y2") out.push_back(PulseKind::MSYY);
        else if (k == "z") out.push_back(PulseKind::LocalZ);
        else invalid("unknown pulse kind '" + k + "' (X, Y, X2, Y2, z)");
    }
    return out;
}

struct Problem {
    Objective objective;
    OptimizerConfig config;
    ContractKind contract = ContractKind::Syndrome;
    int n_code = 0;
};

Problem build_problem(const KeyValues &kv) {
    Problem p;
    OptimizerConfig &cfg = p.config;
    p.contract = contract_from_name(kv.str("contract", "syndrome"));
    std::optional<CodeSpec> code;
    if (auto name = kv.get("code")) {
        code = builtin_code(*name);
    } else if (p.contract != ContractKind::StatePrep) {
        invalid("key 'code' is required for this contract");
    }
    kv.number("segments", cfg.segments);
    const bool syndrome_like = p.contract == ContractKind::Syndrome || p.contract == ContractKind::Stabilizer ||
                               p.contract == ContractKind::Coherent;
    if (cfg.segments > 1 && !syndrome_like) {
        invalid("several segments only make sense for syndrome, stabilizer and coherent contracts");
    }
    int qubits = 0;
    if (syndrome_like) {
        qubits = code->n_code + (cfg.segments > 1 ? 1 : code->n_aux);
    } else if (code) {
        qubits = code->n_code;
    }
    kv.number("qubits", qubits);

    if (syndrome_like) {
        const int aux = cfg.segments > 1 ? cfg.segments : qubits - code->n_code;
        CodeSpec c = code->with_aux(aux);
        if (p.contract == ContractKind::Syndrome) {
            OutcomeMap map = lexicographic_outcomes(c);
            if (auto o = kv.get("outcomes")) {
                map.clear();
                for (int v : int_list(*o)) {
                    if (v < 0) {
                        invalid("outcomes must be non-negative");
                    }
                    map.push_back(static_cast<std::uint64_t>(v));
                }
            }
            p.objective = syndrome_objective(c, map);
        } else if (p.contract == ContractKind::Stabilizer) {
            auto s = kv.get("stabilizers");
            if (!s) {
                invalid("key 'stabilizers' is required for the stabilizer contract");
            }
            p.objective = stabilizer_objective(c, int_list(*s));
        } else {
            p.objective = coherent_objective(c);
        }
        p.n_code = code->n_code;
    } else if (p.contract == ContractKind::StatePrep) {
        auto t = kv.get("target");
        if (!t) {
            invalid("key 'target' is required for the state_prep contract");
        }
        bool named = *t == "zero" || *t == "one" || *t == "plus";
        StateVector target = load_state(named ? *t : kv.input_path(*t), code);
        int n = qubit_count(target.size());
        p.objective = state_prep_objective(target, basis_state((std::uint64_t{1} << n) - 1, n));
        qubits = n;
        p.n_code = n;
    } else {
        auto g = kv.get("gate");
        if (!g) {
            invalid("key 'gate' is required for the logical_gate contract");
        }
        std::string spec = fs::exists(kv.input_path(*g)) ? kv.input_path(*g) : *g;
        p.objective = logical_gate_objective(*code, load_gate(spec));
        p.n_code = qubits;
    }
    cfg.n_physical = qubits;
    cfg.n_code = p.n_code;

    if (auto f = kv.get("fixed")) {
        for (const auto &line : split(*f, ';')) {
            PulseSequence one = parse_sequence("qubits " + std::to_string(qubits) + "\n" + line + "\n");
            cfg.fixed_pulses.insert(cfg.fixed_pulses.end(), one.pulses.begin(), one.pulses.end());
        }
    }
    if (auto k = kv.get("kinds")) {
        cfg.kinds = kinds_from(*k);
    }
    if (auto s = kv.get("subsets")) {
        for (const auto &group : split(*s, ';')) {
            cfg.subsets.push_back(int_list(group));
        }
    }
    std::string layout = kv.str("layout", "random");
    if (layout == "random") {
        cfg.layout = InitLayout::Random;
    } else if (layout == "layered") {
        cfg.layout = InitLayout::Layered;
    } else {
        invalid("layout must be random or layered");
    }
    kv.number("outer_layers", cfg.outer_layers);
    kv.number("initial_length", cfg.initial_length);
    kv.number("gamma0_start", cfg.gamma0_start);
    kv.number("gamma0_growth", cfg.gamma0_growth);
    kv.number("gamma0_cap", cfg.gamma0_cap);
    kv.number("gamma0_trigger", cfg.gamma0_trigger);
    kv.number("importance_scale", cfg.importance_scale);
    kv.number("importance_exponent", cfg.importance_exponent);
    kv.number("gamma_quant", cfg.gamma_quant);
    kv.number("n_max", cfg.n_max);
    kv.number("quant_start", cfg.quant_start);
    kv.number("temperature", cfg.temperature);
    kv.number("temperature_decay", cfg.temperature_decay);
    kv.number("polish_fraction", cfg.polish_fraction);
    kv.number("polish_extra", cfg.polish_extra);
    kv.number("max_sweeps", cfg.max_sweeps);
    kv.number("restarts", cfg.restarts);
    kv.number("eps_conv", cfg.eps_conv);
    kv.number("seed", cfg.seed);
    kv.number("threads", cfg.threads);
    cfg.validate();
    empty_circuit(cfg, p.objective);
    return p;
}

int cmd_optimize(const std::string &config_path, std::optional<std::uint64_t> seed, std::string out) {
    KeyValues kv(config_path, kOptimizeKeys);
    Problem p = build_problem(kv);
    if (seed) {
        p.config.seed = *seed;
    }
    if (out.empty()) {
        out = kv.str("out", "best.seq");
    }
    std::string trace_path = kv.str("trace", out + ".trace");

    OptimizationReport r = optimize(p.config, p.objective);
    ReadoutStyle style = p.contract == ContractKind::Coherent ? ReadoutStyle::Coherent : ReadoutStyle::Measured;
    PulseSequence seq = to_pulse_sequence(r.circuit, p.n_code, style);
    write_sequence_file(out, seq);
    write_text(trace_path, format_trace(r.trace));

    std::printf("%s phi=%.12f of %s, %zu unitaries\n\n", r.converged ? "CONVERGED" : "NOT CONVERGED", r.phi,
                num(r.max_value).c_str(), r.unitary_count);
    std::printf("converged=%s\nphi=%s\nmax_value=%s\nunitaries=%zu\nentangling=%zu\nconverged_restarts=%d\n"
                "best_restart=%d\nsweeps=%d\nsequence=%s\ntrace=%s\n",
                r.converged ? "true" : "false", num(r.phi).c_str(), num(r.max_value).c_str(), r.unitary_count,
                r.circuit.entangling_count(), r.converged_restarts, r.best_restart, r.sweeps, out.c_str(),
                trace_path.c_str());
    return r.converged ? kSuccess : kFailure;
}

// ---------------------------------------------------------------- render, count

int cmd_render(const std::string &path, int cells) {
    if (cells < 1) {
        invalid("--cells must be positive");
    }
    std::fputs(render_ascii(read_sequence_file(path), RenderOptions{cells}).c_str(), stdout);
    return kSuccess;
}

int cmd_count(const std::string &path) {
    SequenceCounts c = count_pulses(read_sequence_file(path));
    std::printf("unitaries=%zu\nentangling=%zu\nentangling_angle_sum=%s\nentangling_angle_sum_exact=%s\n"
                "measurements=%zu\nresets=%zu\n",
                c.unitaries, c.entangling, num(c.entangling_angle_sum).c_str(),
                format_angle(c.entangling_angle_sum).c_str(), c.measurements, c.resets);
    return kSuccess;
}

// ---------------------------------------------------------------- gradcheck

int cmd_gradcheck(const std::string &config_path, std::optional<std::uint64_t> seed) {
    GradCheckConfig cfg;
    if (!config_path.empty()) {
        KeyValues kv(config_path, {"qubits", "length", "trials", "seed", "tol", "inject_sign_bug"});
        kv.number("qubits", cfg.qubits);
        kv.number("length", cfg.length);
        kv.number("trials", cfg.trials);
        kv.number("seed", cfg.seed);
        kv.number("tol", cfg.tol);
        kv.flag("inject_sign_bug", cfg.inject_sign_bug);
    }
    if (seed) {
        cfg.seed = *seed;
    }
    GradCheckResult r = gradient_check(cfg);
    std::printf("%s max relative error %.3g over %zu derivatives\n\n", r.pass ? "PASS" : "FAIL",
                r.max_relative_error, r.derivatives);
    std::printf("pass=%s\ntrials=%d\nderivatives=%zu\nmax_relative_error=%s\ntol=%s\n", r.pass ? "true" : "false",
                r.trials, r.derivatives, num(r.max_relative_error).c_str(), num(cfg.tol).c_str());
    return r.pass ? kSuccess : kFailure;
}

// ---------------------------------------------------------------- export

/// Writes every corpus fixture as <name>.seq plus a contracts.txt line with matching verify flags.
int cmd_export(const std::string &dir) {
    fs::create_directories(dir);
    std::string index;
    for (const Fixture &f : regression_corpus()) {
        fs::path seq = fs::path(dir) / (f.name + ".seq");
        write_sequence_file(seq.string(), f.sequence);
        const Contract &c = f.contract;
        std::string args = "--contract " + std::string(contract_kind_name(c.kind));
        if (!c.code.empty()) {
            args += " --code " + c.code;
        }
        for (int s : c.stabilizers) {
            args += " --stabilizer " + std::to_string(s);
        }
        if (!c.gate.empty()) {
            args += " --gate " + c.gate;
        }
        if (c.kind == ContractKind::StatePrep) {
            fs::path target = fs::path(dir) / (f.name + ".target");
            write_state(target.string(), c.target);
            args += " --target " + target.filename().string();
        }
        index += f.name + ".seq " + args + "\n";
    }
    write_text((fs::path(dir) / "contracts.txt").string(), index);
    std::printf("wrote %zu fixtures to %s\n", regression_corpus().size(), dir.c_str());
    return kSuccess;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qecopt: compile QEC tasks into trapped-ion pulse sequences and verify them"};
    app.require_subcommand(1);

    VerifyArgs va;
    auto *verify = app.add_subcommand("verify", "check a sequence file against a contract");
    verify->add_option("sequence", va.sequence, "sequence file")->required();
    verify->add_option("--code", va.code, "builtin code: three_bitflip, three_phaseflip, five_qubit, steane");
    verify->add_option("--contract", va.contract, "syndrome, stabilizer, coherent, state_prep, logical_gate");
    verify->add_option("--stabilizer", va.stabilizers, "1-based stabilizer index (repeatable)");
    verify->add_option("--gate", va.gate, "gate name (I X Y Z H S pi8) or 2x2 matrix file");
    verify->add_option("--target", va.target, "zero, one, plus, or a state file");
    verify->add_option("--tol", va.tol, "fidelity tolerance")->capture_default_str();

    std::string config;
    std::optional<std::uint64_t> seed;
    std::string out;
    auto *opt = app.add_subcommand("optimize", "search for a sequence that maximizes a performance function");
    opt->add_option("config", config, "key = value config file")->required();
    opt->add_option("--seed", seed, "override the config seed");
    opt->add_option("--out", out, "best-sequence file (default: config 'out' or best.seq)");

    std::string seq_path;
    int cells = 8;
    auto *render = app.add_subcommand("render", "ASCII circuit diagram");
    render->add_option("sequence", seq_path, "sequence file")->required();
    render->add_option("--cells", cells, "character cells per pi")->capture_default_str();

    auto *count = app.add_subcommand("count", "pulse and entangling-angle counts");
    count->add_option("sequence", seq_path, "sequence file")->required();

    std::string grad_config;
    auto *grad = app.add_subcommand("gradcheck", "analytic gradient against finite differences");
    grad->add_option("config", grad_config, "optional key = value config file");
    grad->add_option("--seed", seed, "override the seed");

    std::string dir;
    auto *exp = app.add_subcommand("export", "write the regression corpus as sequence files");
    exp->add_option("dir", dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kSuccess : kUsage;
    }

    try {
        if (*verify) return cmd_verify(va);
        if (*opt) return cmd_optimize(config, seed, out);
        if (*render) return cmd_render(seq_path, cells);
        if (*count) return cmd_count(seq_path);
        if (*grad) return cmd_gradcheck(grad_config, seed);
        if (*exp) return cmd_export(dir);
    } catch (const Error &e) {
        std::fprintf(stderr, "error: %s: %s\n", std::string(error_kind_name(e.kind())).c_str(), e.what());
        return kUsage;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    }
    return kUsage;
}
