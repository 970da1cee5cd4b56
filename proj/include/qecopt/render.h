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

#ifndef QECOPT_RENDER_H
#define QECOPT_RENDER_H

#include <string>

#include "qecopt/gateset.h"

namespace qecopt {

struct RenderOptions {
    /// Character cells for |theta| = pi.
    int cells_per_pi = 8;
};

/// ASCII circuit diagram, one row per qubit, time running left to right. Symbol width is
/// proportional to |theta|; negative z angles are drawn at 2 pi - |theta|.
std::string render_ascii(const PulseSequence &seq, const RenderOptions &options = {});

/// Symbol width in cells for a unitary pulse.
int symbol_width(const Pulse &p, const RenderOptions &options = {});

}  // namespace qecopt

#endif
