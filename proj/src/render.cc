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

#include "qecopt/render.h"

#include <algorithm>
#include <cmath>
#include <vector>

namespace qecopt {

int symbol_width(const Pulse &p, const RenderOptions &options) {
    double a = std::abs(p.theta);
    if (p.kind == PulseKind::LocalZ && p.theta < 0.0) {
        a = 2.0 * kPi - a;
    }
    return std::max(1, static_cast<int>(std::lround(a / kPi * options.cells_per_pi)));
}

std::string render_ascii(const PulseSequence &seq, const RenderOptions &options) {
    const int n = seq.n_qubits;
    std::vector<std::string> rows(static_cast<std::size_t>(n));
    for (int q = 1; q <= n; q++) {
        std::string label = "q" + std::to_string(q);
        label.resize(4, ' ');
        rows[static_cast<std::size_t>(q - 1)] = label + "-";
    }
    for (const Pulse &p : seq.pulses) {
        std::vector<bool> on(static_cast<std::size_t>(n), false);
        std::string symbol;
        switch (p.kind) {
            case PulseKind::Measure:
                symbol = "[M]";
                on[static_cast<std::size_t>(p.qubit - 1)] = true;
                break;
            case PulseKind::Reset:
                symbol = "[R~]";
                on[static_cast<std::size_t>(p.qubit - 1)] = true;
                break;
            default: {
                std::string name(kind_name(p.kind));
                if (p.kind == PulseKind::SubsetMSYY) {
                    name = "Y2";
                }
                char fill = p.is_entangling() ? '~' : '=';
                int width = std::max(symbol_width(p, options), static_cast<int>(name.size()));
                symbol = "[" + name + std::string(static_cast<std::size_t>(width) - name.size(), fill) + "]";
                if (p.kind == PulseKind::LocalZ) {
                    on[static_cast<std::size_t>(p.qubit - 1)] = true;
                } else if (p.kind == PulseKind::SubsetMSYY) {
                    for (int q : p.subset) {
                        on[static_cast<std::size_t>(q - 1)] = true;
                    }
                } else {
                    std::fill(on.begin(), on.end(), true);
                }
            }
        }
        for (int q = 0; q < n; q++) {
            auto &row = rows[static_cast<std::size_t>(q)];
            row += on[static_cast<std::size_t>(q)] ? symbol : std::string(symbol.size(), '-');
            row += "-";
        }
    }
    std::string out;
    for (const auto &row : rows) {
        out += row + "\n";
    }
    return out;
}

}  // namespace qecopt
