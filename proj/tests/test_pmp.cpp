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

#include "qsynth/pmp.hpp"

namespace qsynth::pmp {
namespace {

void expect_state(const AdjointState& got, double x, double y, double z) {
    EXPECT_DOUBLE_EQ(got.mx, x);
    EXPECT_DOUBLE_EQ(got.my, y);
    EXPECT_DOUBLE_EQ(got.mz, z);
}

TEST(Pmp, AdjointRhsExamples) {
    expect_state(adjoint_rhs({0, 0, 1}, 1, 0), 0, 0, 0);
    expect_state(adjoint_rhs({1, 0, 0}, 1, 0), 0, 1, 0);
    expect_state(adjoint_rhs({1, 2, 3}, 0, -1), -3, 0, 1);
}

TEST(Pmp, ControlsFollowSwitchingRule) {
    auto a = pmp_controls({0.5, 0.2, 0.9});
    ASSERT_TRUE(a);
    EXPECT_EQ(*a, (Control{-1, 0}));
    auto b = pmp_controls({0.5, -0.9, 0.2});
    ASSERT_TRUE(b);
    EXPECT_EQ(*b, (Control{0, 1}));
    EXPECT_FALSE(pmp_controls({1, 0.7, 0.7}));
}

TEST(Pmp, ControlsMaximizeHamiltonian) {
    AdjointState m{0.3, -0.4, 0.8};
    auto c = pmp_controls(m);
    ASSERT_TRUE(c);
    for (Control other : {Control{1, 0}, Control{-1, 0}, Control{0, 1}, Control{0, -1}}) {
        EXPECT_GE(hamiltonian(m, *c), hamiltonian(m, other));
    }
}

TEST(Pmp, ClassifyExamples) {
    EXPECT_EQ(classify_initial_case({0.1, 0.1, 2}), InitialCase::I);
    EXPECT_EQ(classify_initial_case({1, 0.8, 1}), InitialCase::II);
    EXPECT_EQ(classify_initial_case({0.6, 0.8, 1}), InitialCase::III);
    EXPECT_THROW(classify_initial_case({0, 0, 0}), std::invalid_argument);
}

TEST(Pmp, ConstantUKeepsMzAndNorm) {
    ControlSchedule s{{{Control{-1, 0}, 3.0, std::nullopt}}};
    AdjointState m0{0.4, -0.2, 0.7};
    for (const auto& smp : integrate_adjoint(m0, s, 1e-3)) {
        EXPECT_NEAR(smp.state.mz, 0.7, 1e-12);
        EXPECT_NEAR(smp.state.norm(), m0.norm(), 1e-12);
    }
}

TEST(Pmp, IntegrationMatchesSmallStepEuler) {
    ControlSchedule s{{{Control{0, 1}, 0.7, std::nullopt}, {Control{1, 0}, 0.4, std::nullopt}}};
    AdjointState m{0.2, 0.5, -0.3};
    AdjointState closed = integrate_adjoint(m, s, 0.1).back().state;
    // midpoint rule with a fine step
    for (const auto& p : s.pieces) {
        int n = 20000;
        double h = p.duration / n;
        for (int k = 0; k < n; ++k) {
            AdjointState d1 = adjoint_rhs(m, p.control.u, p.control.v);
            AdjointState mid{m.mx + 0.5 * h * d1.mx, m.my + 0.5 * h * d1.my, m.mz + 0.5 * h * d1.mz};
            AdjointState d2 = adjoint_rhs(mid, p.control.u, p.control.v);
            m = {m.mx + h * d2.mx, m.my + h * d2.my, m.mz + h * d2.mz};
        }
    }
    EXPECT_NEAR(closed.mx, m.mx, 1e-8);
    EXPECT_NEAR(closed.my, m.my, 1e-8);
    EXPECT_NEAR(closed.mz, m.mz, 1e-8);
}

TEST(Pmp, IntegrateRejectsBadInput) {
    ControlSchedule s{{{Control{0, 1}, 1.0, std::nullopt}}};
    EXPECT_THROW(integrate_adjoint({1, 0, 0}, s, 0), std::invalid_argument);
    ControlSchedule bad{{{Control{1, 1}, 1.0, std::nullopt}}};
    EXPECT_THROW(integrate_adjoint({1, 0, 0}, bad, 0.1), std::invalid_argument);
    ControlSchedule neg{{{Control{1, 0}, -1.0, std::nullopt}}};
    EXPECT_THROW(neg.validate(), std::invalid_argument);
}

TEST(Pmp, CaseTwoFirstSwitchAtMinusMz) {
    // |m_z| > |m_y| but m_x^2 + m_y^2 > m_z^2: u = -1 arc until m_y = -m_z(0)
    AdjointState m0{0.8, 0.1, 0.5};
    ASSERT_EQ(classify_initial_case(m0), InitialCase::II);
    Extremal e = generate_extremal(m0, 10.0);
    ASSERT_FALSE(e.switch_states.empty());
    EXPECT_NEAR(e.switch_states[0].my, -m0.mz, 1e-9);
    EXPECT_EQ(e.schedule.pieces[0].control, (Control{-1, 0}));
}

TEST(Pmp, CaseTwoExtremalsAlternateWithEqualInterior) {
    for (AdjointState m0 : {AdjointState{0.8, 0.1, 0.5}, AdjointState{-0.7, 0.3, -0.4}, AdjointState{0.9, -0.35, 0.2}}) {
        Extremal e = generate_extremal(m0, 12.0);
        const auto& p = e.schedule.pieces;
        ASSERT_GE(p.size(), 4u);
        for (std::size_t k = 1; k < p.size(); ++k) {
            EXPECT_NE(p[k].control.u == 0, p[k - 1].control.u == 0);
        }
        for (std::size_t k = 2; k + 1 < p.size(); ++k) EXPECT_NEAR(p[k].duration, p[1].duration, 1e-6);
    }
}

TEST(Pmp, HamiltonianConstantAlongExtremal) {
    AdjointState m0{0.8, 0.1, 0.5};
    Extremal e = generate_extremal(m0, 10.0);
    auto samples = integrate_adjoint(m0, e.schedule, 1e-3);
    double h0 = hamiltonian(samples.front().state, samples.front().control);
    for (const auto& s : samples) EXPECT_NEAR(hamiltonian(s.state, s.control), h0, 1e-6);
}

TEST(Pmp, CaseThreeReachesSingularWithZeroMx) {
    double mz = 0.6, my = 0.2;
    AdjointState m0{std::sqrt(mz * mz - my * my), my, mz};
    ASSERT_EQ(classify_initial_case(m0), InitialCase::III);
    Extremal e = generate_extremal(m0, 10.0);
    ASSERT_TRUE(e.reached_singular);
    EXPECT_NEAR(e.singular_state.mx, 0, 1e-6);
    EXPECT_NEAR(std::abs(e.singular_state.my), std::abs(e.singular_state.mz), 1e-6);
}

TEST(Pmp, FourRotationScheduleIsExtremal) {
    auto s = schedule_from_sequence(synthesize_x_rotation(0.4).sequence);
    auto v = verify_schedule_extremal(s);
    EXPECT_TRUE(v.is_extremal) << v.reason;
    ASSERT_TRUE(v.witness);
    EXPECT_NEAR(v.witness->norm(), 1.0, 1e-12);
    EXPECT_LT(v.switch_error, 1e-3);
    EXPECT_TRUE(v.structure.pass());
}

TEST(Pmp, ConjugationScheduleFailsStructure) {
    auto s = schedule_from_sequence(bch_baseline(0.1).sequence);
    auto v = verify_schedule_extremal(s);
    EXPECT_FALSE(v.structure.pass());
    EXPECT_FALSE(v.is_extremal);
    EXPECT_GT(s.total_time(), min_time_f(0.1));
}

TEST(Pmp, SinglePieceIsCaseOneExtremal) {
    ControlSchedule s{{{Control{-1, 0}, 1.3, std::nullopt}}};
    auto v = verify_schedule_extremal(s);
    EXPECT_TRUE(v.is_extremal) << v.reason;
    ASSERT_TRUE(v.witness);
    EXPECT_EQ(classify_initial_case(*v.witness), InitialCase::I);
}

TEST(Pmp, SingularScheduleNotClaimed) {
    RotationSequence seq;
    seq.push(RotationLabel::YPlusZ, 0.5);
    auto v = verify_schedule_extremal(schedule_from_sequence(seq));
    EXPECT_FALSE(v.is_extremal);
    EXPECT_FALSE(v.reason.empty());
}

}  // namespace
}  // namespace qsynth::pmp
