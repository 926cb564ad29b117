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

#include <gtest/gtest.h>

#include "qsynth/pauli_string.hpp"

namespace qsynth {
namespace {

TEST(PauliString, ValidatesInput) {
    EXPECT_THROW(PauliString("0000"), std::invalid_argument);
    EXPECT_THROW(PauliString("ZQ"), std::invalid_argument);
    EXPECT_THROW(PauliString(""), std::invalid_argument);
    EXPECT_TRUE(PauliString::looks_like("ZZY0"));
    EXPECT_FALSE(PauliString::looks_like("S1"));
}

TEST(PauliString, SupportAndWeight) {
    PauliString p("ZZY0");
    EXPECT_EQ(p.spins(), 4);
    EXPECT_EQ(p.weight(), 3);
    EXPECT_EQ(p.support(), (std::vector<int>{1, 2, 3}));
}

TEST(PauliString, MultiplyMatchesMatrices) {
    const char* strings[] = {"ZZY0", "00XZ", "ZY00", "0XY0", "XYZ0", "Y00X", "ZZZZ"};
    for (const char* a : strings) {
        for (const char* b : strings) {
            auto [phase, ops] = multiply(PauliString(a), PauliString(b));
            ComplexMatrix want = PauliString(a).matrix() * PauliString(b).matrix();
            ComplexMatrix got = identity(16);
            if (ops != "0000") got = PauliString(ops).matrix();
            EXPECT_LT((phase * got - want).norm(), 1e-14) << a << " * " << b;
        }
    }
}

TEST(PauliString, PlaquetteSplitProducts) {
    auto [phase, ops] = multiply(PauliString("ZZY0"), PauliString("00XZ"));
    EXPECT_EQ(ops, "ZZZZ");
    EXPECT_EQ(phase, Complex(0, -1));
    auto [phase2, ops2] = multiply(PauliString("ZY00"), PauliString("0XY0"));
    EXPECT_EQ(ops2, "ZZY0");
    EXPECT_EQ(phase2, Complex(0, -1));
}

TEST(PauliString, Anticommute) {
    EXPECT_TRUE(anticommute(PauliString("ZZY0"), PauliString("00XZ")));
    EXPECT_FALSE(anticommute(PauliString("ZZ00"), PauliString("XX00")));
    EXPECT_FALSE(anticommute(PauliString("Z000"), PauliString("0X00")));
}

}  // namespace
}  // namespace qsynth
