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

#include <random>

#include <gtest/gtest.h>

#include "qsynth/so3_optimal.hpp"

namespace qsynth {
namespace {

TEST(So3, OmegaMatricesCloseAsSo3) {
    auto om = omega_matrices();
    EXPECT_TRUE(check_so3_triple(om.x, om.y, om.z).closed);
    EXPECT_EQ(omega(Axis::X)(2, 1), 1.0);
    EXPECT_EQ(omega(Axis::X)(1, 2), -1.0);
}

TEST(So3, FourRotationTimesAtQuarterTurn) {
    auto t = four_rotation_times(kPi / 2);
    EXPECT_NEAR(t.t1, kPi / 4, 1e-15);
    EXPECT_NEAR(t.t2, kPi / 4, 1e-15);
    EXPECT_NEAR(t.delta_t, kPi / 2, 1e-15);
    EXPECT_NEAR(t.f_alpha, 1.5 * kPi, 1e-15);
}

TEST(So3, TimesVanishAtZero) {
    auto t = four_rotation_times(0);
    EXPECT_EQ(t.f_alpha, 0);
    EXPECT_TRUE(synthesize_x_rotation(0).sequence.empty());
}

TEST(So3, HandComputedTimeAtPointSix) {
    // sin 0.3 + cos 0.3 = 1.25086..., cos 0.3 - sin 0.3 = 0.65981...
    double t1 = std::acos(1 / (std::sin(0.3) + std::cos(0.3)));
    double dt = std::acos(std::cos(0.3) - std::sin(0.3));
    EXPECT_NEAR(min_time_f(0.6), 2 * (t1 + dt), 1e-15);
    EXPECT_NEAR(min_time_f(0.6), 2.98927, 1e-5);
}

TEST(So3, TimeIsEvenInAlpha) {
    for (double a : {0.1, 0.7, 1.5}) EXPECT_EQ(min_time_f(a), min_time_f(-a));
}

TEST(So3, RandomAnglesReproduceTarget) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-kPi / 2, kPi / 2);
    for (int k = 0; k < 200; ++k) {
        double a = u(rng);
        auto s = synthesize_x_rotation(a);
        EXPECT_LT(unitary_distance(realize(s.sequence), x_rotation_target(a)), 1e-12) << a;
        Rotation3 r = realize_rotation(s.sequence);
        Rotation3 want = Eigen::AngleAxisd(a, Eigen::Vector3d::UnitX()).toRotationMatrix();
        EXPECT_LT((r - want).norm(), 1e-12);
    }
}

TEST(So3, SequenceShape) {
    auto s = synthesize_x_rotation(0.8).sequence;
    ASSERT_EQ(s.segments.size(), 4u);
    EXPECT_EQ(s.segments[0].label, RotationLabel::Y);
    EXPECT_EQ(s.segments[1].label, RotationLabel::Z);
    EXPECT_EQ(s.segments[0].sign, 1);
    EXPECT_EQ(s.segments[1].sign, -1);
    EXPECT_EQ(s.segments[2].sign, -1);
    EXPECT_EQ(s.segments[3].sign, 1);
    auto n = synthesize_x_rotation(-0.8).sequence;
    EXPECT_EQ(n.segments[0].sign, -1);
    EXPECT_EQ(n.segments[2].sign, 1);
}

TEST(So3, DomainErrors) {
    EXPECT_THROW(synthesize_x_rotation(1.6), DomainError);
    EXPECT_THROW(min_time_f(-2.0), DomainError);
    EXPECT_THROW(synthesize_x_rotation(std::nan("")), DomainError);
    EXPECT_NO_THROW(synthesize_x_rotation(kPi / 2));
}

TEST(So3, DominatesConjugationBaseline) {
    for (int k = 1; k < 200; ++k) {
        double a = kPi / 2 * k / 200;
        EXPECT_LT(min_time_f(a), kPi + a - 1e-6);
    }
}

TEST(So3, ConjugationBaseline) {
    for (double a : {0.0, 0.4, -1.2, 2.8}) {
        auto b = bch_baseline(a);
        EXPECT_NEAR(b.total_time, kPi + std::abs(a), 1e-15);
        EXPECT_LT(unitary_distance(realize(b.sequence), x_rotation_target(a)), 1e-12);
    }
}

TEST(So3, PlanFallsBackOutsideDomain) {
    EXPECT_FALSE(plan_x_rotation(1.0).bch_fallback);
    auto p = plan_x_rotation(2.0);
    EXPECT_TRUE(p.bch_fallback);
    EXPECT_LT(unitary_distance(realize(p.sequence), x_rotation_target(2.0)), 1e-12);
}

TEST(So3, PushMergesAndDrops) {
    RotationSequence s;
    s.push(RotationLabel::Y, 0.5);
    s.push(RotationLabel::Y, -0.2);
    s.push(RotationLabel::Z, 0.0);
    ASSERT_EQ(s.segments.size(), 1u);
    EXPECT_NEAR(s.segments[0].signed_duration(), 0.3, 1e-15);
    s.push(RotationLabel::Y, -0.3);
    EXPECT_TRUE(s.empty());
}

TEST(So3, SingularArcRealizations) {
    RotationSequence s;
    s.push(RotationLabel::YPlusZ, 0.9);
    s.push(RotationLabel::Z, 0.3);
    s.push(RotationLabel::YMinusZ, -0.5);
    Rotation3 exact = realize_rotation(s, SingularRealization::Exact);
    Rotation3 trotter = realize_rotation(s, SingularRealization::Trotter, 4096);
    EXPECT_LT((exact - trotter).norm(), 1e-3);
    EXPECT_NEAR(s.total_time(), 1.7, 1e-15);
}

TEST(So3, FiveRotationIdentities) {
    auto r = five_rotation_identities_check();
    EXPECT_TRUE(r.pass);
    EXPECT_LT(r.conjugation_residual, 1e-10);
    EXPECT_LT(r.corrected_chain_residual, 1e-10);
    EXPECT_GT(r.printed_chain_residual, 1.0);
}

}  // namespace
}  // namespace qsynth
