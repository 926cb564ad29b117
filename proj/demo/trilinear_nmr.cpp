// Copyright 2026 The qsynth Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Compiles the trilinear pulse used in the three-spin NMR experiment,
// prints its segment durations at J = 88 Hz and the predicted final states.

#include <cstdio>

#include "qsynth/qsynth.hpp"

int main() {
    using namespace qsynth;
    const double j_hz = 88.0;

    CompiledGate gate = compile_trilinear(-kPi / 2);
    std::printf("e^{-pi/2 S1}: %zu segments, residual %.2e\n", gate.sequence.segments.size(), gate.residual);
    std::vector<double> units;
    for (const auto& s : gate.sequence.segments) units.push_back(s.duration);
    PhysicalTiming t = to_physical(units, j_hz);
    for (std::size_t k = 0; k < units.size(); ++k) {
        const auto& s = gate.sequence.segments[k];
        std::printf("  %s  %+.6f units  %.3f ms\n", s.label.c_str(), s.signed_duration(), t.durations_ms[k]);
    }
    std::printf("  total %.3f ms (conjugation route: %.3f ms)\n",
                to_physical({gate.total_time}, j_hz).durations_ms[0],
                to_physical({bch_time(kPi / 2)}, j_hz).durations_ms[0]);

    for (const char* label : {"I1x", "I1y", "I3x", "I3y", "I1z", "I3z"}) {
        auto p = nmr_expected_state(parse_product_operator(label));
        std::printf("  %s -> %s\n", label, p.final_state ? to_string(*p.final_state).c_str() : "?");
    }

    CompiledGate xy = compile_xx_yy(0.4, true);
    std::printf("XX+YY at 0.4: time %.4f units, residual %.2e\n", xy.total_time, xy.residual);
    return 0;
}
