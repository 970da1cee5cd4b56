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

#include "qecopt/sequence_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "qecopt/error.h"

namespace qecopt {

namespace {

std::string strip(std::string_view s) {
    std::string out;
    for (char c : s) {
        if (c != ' ' && c != '\t' && c != '\r') {
            out.push_back(c);
        }
    }
    return out;
}

bool parse_int(std::string_view s, long long &out) {
    if (s.empty()) {
        return false;
    }
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> split_words(std::string_view line) {
    std::vector<std::string> words;
    std::istringstream in{std::string(line)};
    std::string w;
    while (in >> w) {
        words.push_back(w);
    }
    return words;
}

[[noreturn]] void fail_line(std::size_t line, const std::string &msg) {
    throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + msg);
}

int parse_qubit(const std::string &token, int n_qubits, std::size_t line) {
    long long q = 0;
    if (!parse_int(token, q)) {
        fail_line(line, "bad qubit index '" + token + "'");
    }
    if (q < 1 || q > n_qubits) {
        fail_line(line, "qubit " + token + " outside 1.." + std::to_string(n_qubits));
    }
    return static_cast<int>(q);
}

}  // namespace

double parse_angle(std::string_view token) {
    std::string s = strip(token);
    if (s.empty()) {
        throw Error(ErrorKind::ParseError, "empty angle");
    }
    auto bad = [&]() { return Error(ErrorKind::ParseError, "bad angle '" + std::string(token) + "'"); };
    std::size_t pi = s.find("pi");
    if (pi == std::string::npos) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
            throw bad();
        }
        return v;
    }
    std::string head = s.substr(0, pi);
    std::string tail = s.substr(pi + 2);
    double sign = 1.0;
    if (!head.empty() && (head[0] == '-' || head[0] == '+')) {
        sign = head[0] == '-' ? -1.0 : 1.0;
        head.erase(0, 1);
    }
    if (!head.empty() && head.back() == '*') {
        head.pop_back();
    }
    long long num = 1;
    long long den = 1;
    if (!head.empty()) {
        std::size_t slash = head.find('/');
        if (slash == std::string::npos) {
            if (!parse_int(head, num)) {
                throw bad();
            }
        } else if (!parse_int(std::string_view(head).substr(0, slash), num) ||
                   !parse_int(std::string_view(head).substr(slash + 1), den)) {
            throw bad();
        }
    }
    if (!tail.empty()) {
        long long d2 = 0;
        if (tail[0] != '/' || !parse_int(std::string_view(tail).substr(1), d2)) {
            throw bad();
        }
        den *= d2;
    }
    if (den <= 0 || num < 0) {
        throw bad();
    }
    return sign * static_cast<double>(num) * kPi / static_cast<double>(den);
}

std::string format_angle(double theta) {
    if (theta == 0.0) {
        return "0";
    }
    for (long long n = 1; n <= 64; n++) {
        double m = std::round(theta * static_cast<double>(n) / kPi);
        if (m != 0.0 && std::abs(theta - m * kPi / static_cast<double>(n)) < 1e-12) {
            long long mi = static_cast<long long>(m);
            if (n == 1) {
                if (mi == 1) {
                    return "pi";
                }
                if (mi == -1) {
                    return "-pi";
                }
                return std::to_string(mi) + " pi";
            }
            return std::to_string(mi) + "/" + std::to_string(n) + " pi";
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", theta);
    return buf;
}

std::string format_pulse(const Pulse &p) {
    std::string name(kind_name(p.kind));
    switch (p.kind) {
        case PulseKind::LocalZ:
            return name + " " + std::to_string(p.qubit) + " " + format_angle(p.theta);
        case PulseKind::SubsetMSYY: {
            std::string qs;
            for (std::size_t i = 0; i < p.subset.size(); i++) {
                qs += (i ? "," : "") + std::to_string(p.subset[i]);
            }
            return name + " " + qs + " " + format_angle(p.theta);
        }
        case PulseKind::Measure:
        case PulseKind::Reset:
            return name + " " + std::to_string(p.qubit);
        default:
            return name + " " + format_angle(p.theta);
    }
}

PulseSequence parse_sequence(std::string_view text) {
    PulseSequence seq;
    bool have_header = false;
    std::istringstream in{std::string(text)};
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        line++;
        if (auto hash = raw.find('#'); hash != std::string::npos) {
            raw.erase(hash);
        }
        std::vector<std::string> w = split_words(raw);
        if (w.empty()) {
            continue;
        }
        if (!have_header) {
            long long n = 0;
            if (w.size() != 2 || w[0] != "qubits" || !parse_int(w[1], n)) {
                fail_line(line, "expected header 'qubits <N>'");
            }
            if (n < 1 || n > kMaxQubits) {
                fail_line(line, "qubit count " + w[1] + " outside 1.." + std::to_string(kMaxQubits));
            }
            seq.n_qubits = static_cast<int>(n);
            have_header = true;
            continue;
        }
        const std::string &op = w[0];
        auto angle_from = [&](std::size_t first) {
            if (w.size() <= first) {
                fail_line(line, "missing angle");
            }
            std::string a;
            for (std::size_t i = first; i < w.size(); i++) {
                a += w[i];
            }
            try {
                return parse_angle(a);
            } catch (const Error &e) {
                fail_line(line, e.what());
            }
        };
        if (op == "X" || op == "Y" || op == "X2" || op == "Y2") {
            double a = angle_from(1);
            seq.pulses.push_back(op == "X"    ? Pulse::x(a)
                                 : op == "Y"  ? Pulse::y(a)
                                 : op == "X2" ? Pulse::xx(a)
                                              : Pulse::yy(a));
        } else if (op == "z") {
            if (w.size() < 3) {
                fail_line(line, "expected 'z <qubit> <angle>'");
            }
            int q = parse_qubit(w[1], seq.n_qubits, line);
            seq.pulses.push_back(Pulse::z(q, angle_from(2)));
        } else if (op == "MSY2") {
            if (w.size() < 3) {
                fail_line(line, "expected 'MSY2 <q1,q2,...> <angle>'");
            }
            std::vector<int> qs;
            std::string list = w[1];
            std::size_t start = 0;
            while (start <= list.size()) {
                std::size_t comma = list.find(',', start);
                std::string item = list.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
                qs.push_back(parse_qubit(item, seq.n_qubits, line));
                if (comma == std::string::npos) {
                    break;
                }
                start = comma + 1;
            }
            Pulse p = Pulse::subset_yy(qs, angle_from(2));
            try {
                validate_pulse(p, seq.n_qubits);
            } catch (const Error &e) {
                fail_line(line, e.what());
            }
            seq.pulses.push_back(std::move(p));
        } else if (op == "M" || op == "R") {
            if (w.size() != 2) {
                fail_line(line, "expected '" + op + " <qubit>'");
            }
            int q = parse_qubit(w[1], seq.n_qubits, line);
            seq.pulses.push_back(op == "M" ? Pulse::measure(q) : Pulse::reset(q));
        } else {
            fail_line(line, "unknown operation '" + op + "'");
        }
    }
    if (!have_header) {
        throw Error(ErrorKind::ParseError, "missing header 'qubits <N>'");
    }
    return seq;
}

PulseSequence read_sequence_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::ParseError, "cannot open " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_sequence(buf.str());
}

std::string serialize_sequence(const PulseSequence &seq) {
    std::string out = "qubits " + std::to_string(seq.n_qubits) + "\n";
    for (const auto &p : seq.pulses) {
        out += format_pulse(p) + "\n";
    }
    return out;
}

void write_sequence_file(const std::string &path, const PulseSequence &seq) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorKind::ConfigInvalid, "cannot write " + path);
    }
    out << serialize_sequence(seq);
}

SequenceCounts count_pulses(const PulseSequence &seq) {
    SequenceCounts c;
    c.unitaries = seq.unitary_count();
    c.entangling = seq.entangling_count();
    c.entangling_angle_sum = seq.entangling_angle_sum();
    c.measurements = seq.measure_count();
    c.resets = seq.reset_count();
    return c;
}

}  // namespace qecopt
