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

#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qsynth/spin_algebra.hpp"

namespace qsynth {

/// Tensor product of Pauli matrices (full convention), one character per spin
/// from {0, X, Y, Z}; spin 1 first.
struct PauliString {
    std::string ops;

    static bool valid_char(char c) { return c == '0' || c == 'X' || c == 'Y' || c == 'Z'; }

    static bool looks_like(const std::string& s) {
        if (s.empty()) return false;
        for (char c : s) {
            if (!valid_char(c)) return false;
        }
        return s.find_first_not_of('0') != std::string::npos;
    }

    explicit PauliString(std::string s) : ops(std::move(s)) {
        if (!looks_like(ops)) throw std::invalid_argument("invalid Pauli string '" + ops + "'");
    }

    int spins() const { return static_cast<int>(ops.size()); }

    /// 1-based indices of the non-identity sites.
    std::vector<int> support() const {
        std::vector<int> out;
        for (std::size_t k = 0; k < ops.size(); ++k) {
            if (ops[k] != '0') out.push_back(static_cast<int>(k) + 1);
        }
        return out;
    }

    int weight() const { return static_cast<int>(support().size()); }

    ComplexMatrix matrix() const {
        ProductOperator p{1.0, {}, Convention::Full};
        for (char c : ops) p.factors.push_back(*axis_from_char(c));
        return embed_product(p);
    }

    bool operator==(const PauliString&) const = default;
};

/// a * b = phase * c, with c returned as a raw site string (may be all '0').
inline std::pair<Complex, std::string> multiply(const PauliString& a, const PauliString& b) {
    if (a.ops.size() != b.ops.size()) throw std::invalid_argument("Pauli strings differ in length");
    Complex phase{1.0, 0.0};
    std::string out(a.ops.size(), '0');
    auto idx = [](char c) { return c == '0' ? 0 : c - 'X' + 1; };
    const char names[4] = {'0', 'X', 'Y', 'Z'};
    for (std::size_t k = 0; k < a.ops.size(); ++k) {
        int x = idx(a.ops[k]), y = idx(b.ops[k]);
        if (x == 0 || y == 0) {
            out[k] = names[x + y];
        } else if (x == y) {
            out[k] = '0';
        } else {
            int z = 6 - x - y;
            out[k] = names[z];
            // XY = iZ, YZ = iX, ZX = iY; reversed order picks up -i.
            bool cyclic = (y - x + 3) % 3 == 1;
            phase *= cyclic ? kI : -kI;
        }
    }
    return {phase, out};
}

inline bool anticommute(const PauliString& a, const PauliString& b) {
    int clashes = 0;
    for (std::size_t k = 0; k < a.ops.size(); ++k) {
        if (a.ops[k] != '0' && b.ops[k] != '0' && a.ops[k] != b.ops[k]) ++clashes;
    }
    return clashes % 2 == 1;
}

}  // namespace qsynth
