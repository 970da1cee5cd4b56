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

#ifndef QECOPT_SEQUENCE_IO_H
#define QECOPT_SEQUENCE_IO_H

#include <cstddef>
#include <string>
#include <string_view>

#include "qecopt/gateset.h"

namespace qecopt {

/// Text form of a pulse sequence:
///
///     qubits 4
///     Y -1/2 pi      # comment
///     z 4 -pi/2
///     MSY2 1,3 pi/2
///     M 4
///
/// Angles are `[-]m/n pi` (also `pi/n`, `3pi/4`, `3*pi/4`) or decimal radians.
PulseSequence parse_sequence(std::string_view text);
PulseSequence read_sequence_file(const std::string &path);

double parse_angle(std::string_view token);

/// `m/n pi` when within 1e-12 of such a value with n <= 64, otherwise 17 significant digits.
std::string format_angle(double theta);

std::string format_pulse(const Pulse &p);
std::string serialize_sequence(const PulseSequence &seq);
void write_sequence_file(const std::string &path, const PulseSequence &seq);

struct SequenceCounts {
    std::size_t unitaries = 0;
    std::size_t entangling = 0;
    double entangling_angle_sum = 0.0;
    std::size_t measurements = 0;
    std::size_t resets = 0;
};

SequenceCounts count_pulses(const PulseSequence &seq);

}  // namespace qecopt

#endif
