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

// Invariant suites run by `qsynth verify`. Each check reports a measured
// value against a threshold; a check passes when value < threshold.

#include <random>
#include <string>
#include <vector>

#include "qsynth/gate_compiler.hpp"
#include "qsynth/pmp.hpp"
#include "qsynth/so3_optimal.hpp"
#include "qsynth/spin_algebra.hpp"

namespace qsynth {

struct Check {
    std::string suite;
    std::string name;
    double value = 0;
    double threshold = 0;
    bool pass = false;
};

struct SuiteReport {
    std::vector<Check> checks;

    bool pass() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    void add(const std::string& suite, const std::string& name, double value, double threshold) {
        checks.push_back({suite, name, value, threshold, value < threshold});
    }
    void append(const SuiteReport& o) { checks.insert(checks.end(), o.checks.begin(), o.checks.end()); }
};

inline std::string short_number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

inline ComplexMatrix global_rotation(Axis axis, double angle) {
    ComplexMatrix g = ComplexMatrix::Zero(8, 8);
    for (int s = 1; s <= 3; ++s) g += single_spin(axis, s, 3, Convention::Half);
    return matrix_exp(-kI * angle * g);
}

inline SuiteReport algebra_suite() {
    SuiteReport r;
    const std::string s = "algebra";
    auto om = omega_matrices();
    r.add(s, "so3 closure (Ox, Oy, Oz)", check_so3_triple(om.x, om.y, om.z).max_residual(), kTol.algebraic);
    ComplexMatrix s1 = spin_generator(SpinGeneratorName::S1), s2 = spin_generator(SpinGeneratorName::S2),
                  s3 = spin_generator(SpinGeneratorName::S3), s4 = spin_generator(SpinGeneratorName::S4),
                  s5 = spin_generator(SpinGeneratorName::S5), hd = spin_generator(SpinGeneratorName::Hd);
    r.add(s, "so3 closure (S1, S2, S3)", check_so3_triple(s1, s2, s3).max_residual(), kTol.algebraic);
    r.add(s, "so3 closure (S5/2, S4/2, -S1/2)", check_so3_triple(0.5 * s5, 0.5 * s4, -0.5 * s1).max_residual(),
          kTol.algebraic);
    r.add(s, "[S1, S4] = 2 S5", (commutator(s1, s4) - 2.0 * s5).norm(), kTol.algebraic);
    r.add(s, "S4 = -i Hd", (s4 + kI * hd).norm(), kTol.algebraic);
    ComplexMatrix ry = global_rotation(Axis::Y, kPi / 2), rx = global_rotation(Axis::X, -kPi / 2);
    r.add(s, "S2 = Ry(pi/2) (-i Hd) Ry(pi/2)^dag", (ry * (-kI * hd) * ry.adjoint() - s2).norm(), kTol.algebraic);
    r.add(s, "S3 = Rx(-pi/2) (-i Hd) Rx(-pi/2)^dag", (rx * (-kI * hd) * rx.adjoint() - s3).norm(), kTol.algebraic);
    for (auto n : {SpinGeneratorName::S1, SpinGeneratorName::S2, SpinGeneratorName::S3, SpinGeneratorName::S4,
                   SpinGeneratorName::S5}) {
        ComplexMatrix g = spin_generator(n);
        r.add(s, to_string(n) + " skew-Hermitian", (g + g.adjoint()).norm(), kTol.algebraic);
    }
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    double exp_err = 0;
    for (int k = 0; k < 20; ++k) {
        double a = angle(rng);
        exp_err = std::max(exp_err, (matrix_exp(a * s1) * matrix_exp(-a * s1) - identity(8)).norm());
        exp_err = std::max(exp_err, unitarity_defect(matrix_exp(a * s5)));
    }
    r.add(s, "matrix_exp unitarity and inverse", exp_err, kTol.unitary);
    return r;
}

inline SuiteReport so3_suite(int samples = 100, unsigned seed = 2026) {
    SuiteReport r;
    const std::string s = "so3";
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> angle(-kPi / 2, kPi / 2);
    double so3_err = 0, lift_err = 0, time_err = 0;
    for (int k = 0; k < samples; ++k) {
        double a = angle(rng);
        auto syn = synthesize_x_rotation(a);
        so3_err = std::max(so3_err, unitary_distance(realize(syn.sequence), x_rotation_target(a)));
        time_err = std::max(time_err, std::abs(syn.sequence.total_time() - min_time_f(a)));
        auto lifted = lift_so3_sequence(syn.sequence, trilinear_lift());
        lift_err = std::max(lift_err, unitary_distance(realize(lifted), matrix_exp(a * spin_generator(SpinGeneratorName::S1))));
    }
    r.add(s, "four-rotation product = exp(a Ox), " + std::to_string(samples) + " random a", so3_err, kTol.unitary);
    r.add(s, "lifted product = exp(a S1), " + std::to_string(samples) + " random a", lift_err, kTol.unitary);
    r.add(s, "sequence time = f(a)", time_err, kTol.algebraic);
    double worst_margin = kPi;
    for (int k = 1; k < 1000; ++k) {
        double a = kPi / 2 * k / 1000;
        worst_margin = std::min(worst_margin, kPi + a - min_time_f(a));
    }
    r.add(s, "f(a) < pi + a on (0, pi/2), margin >= 1e-6 (value = -margin)", -worst_margin, -1e-6);
    r.add(s, "f(pi/2) = 3 pi/2", std::abs(min_time_f(kPi / 2) - 1.5 * kPi), kTol.algebraic);
    double bch_err = 0;
    for (double a : {0.2, 1.0, 2.5, -0.7}) {
        bch_err = std::max(bch_err, unitary_distance(realize(bch_baseline(a).sequence), x_rotation_target(a)));
    }
    r.add(s, "conjugation baseline product = exp(a Ox)", bch_err, kTol.unitary);
    auto five = five_rotation_identities_check();
    r.add(s, "five-rotation conjugation identity", five.conjugation_residual, kTol.unitary);
    r.add(s, "five-rotation chain identity (sign-corrected)", five.corrected_chain_residual, kTol.unitary);
    return r;
}

inline SuiteReport pmp_suite(unsigned seed = 11) {
    using namespace pmp;
    SuiteReport r;
    const std::string s = "pmp";
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    std::uniform_int_distribution<int> pick(0, 3);
    std::uniform_real_distribution<double> dur(0.01, 2.0);
    const Control controls[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
    double norm_err = 0;
    for (int trial = 0; trial < 50; ++trial) {
        AdjointState m0{gauss(rng), gauss(rng), gauss(rng)};
        ControlSchedule sch;
        for (int k = 0; k < 6; ++k) sch.pieces.push_back({controls[pick(rng)], dur(rng), std::nullopt});
        for (const auto& smp : integrate_adjoint(m0, sch, 1e-3 * sch.total_time())) {
            norm_err = std::max(norm_err, std::abs(smp.state.norm() - m0.norm()));
        }
    }
    r.add(s, "costate norm conserved (50 random schedules)", norm_err, kTol.singular);

    int wrong_case = 0;
    wrong_case += classify_initial_case({0.1, 0.1, 2}) != InitialCase::I;
    wrong_case += classify_initial_case({1, 0.8, 1}) != InitialCase::II;
    wrong_case += classify_initial_case({0.6, 0.8, 1}) != InitialCase::III;
    r.add(s, "case I/II/III classification (misclassified count)", wrong_case, 0.5);

    double h_err = 0;
    int extremals = 0;
    for (int trial = 0; trial < 40; ++trial) {
        AdjointState m0 = AdjointState{gauss(rng), gauss(rng), gauss(rng)};
        m0 = AdjointState::from(m0.vec() / m0.norm());
        Extremal e = generate_extremal(m0, 8.0);
        if (e.schedule.pieces.empty()) continue;
        ++extremals;
        auto samples = integrate_adjoint(m0, e.schedule, 1e-3 * e.schedule.total_time());
        double h0 = hamiltonian(samples.front().state, samples.front().control);
        for (const auto& smp : samples) h_err = std::max(h_err, std::abs(hamiltonian(smp.state, smp.control) - h0));
    }
    r.add(s, "Hamiltonian constant along " + std::to_string(extremals) + " extremals", h_err, 1e-6);

    double mx_err = 0;
    int reached = 0;
    for (double phi : {0.3, 1.1, 2.0, 4.0}) {
        // m_x^2 + m_y^2 = m_z^2 with |m_z| > |m_y| so the opening arc is u-driven
        double mz = 1.0 / std::sqrt(2.0);
        AdjointState m0{mz * std::cos(phi), 0.5 * mz * std::sin(phi), mz};
        m0.mx = std::copysign(std::sqrt(mz * mz - m0.my * m0.my), m0.mx);
        if (classify_initial_case(m0) != InitialCase::III) continue;
        Extremal e = generate_extremal(m0, 2 * kPi);
        if (!e.reached_singular) continue;
        ++reached;
        mx_err = std::max(mx_err, std::abs(e.singular_state.mx));
    }
    r.add(s, "case III singular points have m_x = 0 (" + std::to_string(reached) + " reached)",
          reached == 0 ? 1.0 : mx_err, 1e-6);

    auto v = verify_schedule_extremal(schedule_from_sequence(synthesize_x_rotation(0.4).sequence));
    r.add(s, "four-rotation schedule at a = 0.4 has a witness costate (switch error)",
          v.is_extremal ? v.switch_error : 1.0, kTol.switch_time);
    auto bch = structural_check(schedule_from_sequence(bch_baseline(0.1).sequence));
    r.add(s, "conjugation schedule at a = 0.1 fails the optimal-pattern constraints", bch.pass() ? 1.0 : 0.0, 0.5);
    return r;
}

inline SuiteReport gates_suite() {
    SuiteReport r;
    const std::string s = "gates";
    for (double th : {kPi / 2, kPi, 2 * kPi}) {
        r.add(s, "geodesic propagator = exp(-i theta I1zI2zI3z), theta = " + short_number(th),
              geodesic_propagator(th, 88.0).residual, 1e-8);
    }
    double j = 88.0;
    r.add(s, "t*(2 pi) = sqrt(3)/(2J) (relative)",
          std::abs(geodesic_time_seconds(2 * kPi, j) / (std::sqrt(3.0) / (2 * j)) - 1), 1e-12);
    auto tri = compile_trilinear(-kPi / 2);
    r.add(s, "trilinear at -pi/2", tri.residual, kTol.unitary);
    auto ms = to_physical({total_time(tri.sequence)}, j).durations_ms[0];
    r.add(s, "trilinear at -pi/2 lasts 17.05 ms at J = 88 Hz (|diff| ms)", std::abs(ms - 17.045), 0.01);
    r.add(s, "xx_minus_yy at 0.4", compile_xx_yy(0.4, false).residual, kTol.nested);
    r.add(s, "xx_plus_yy at 0.4", compile_xx_yy(0.4, true).residual, kTol.nested);
    auto h = compile_heisenberg(0.3);
    r.add(s, "heisenberg at 0.3", h.residual, kTol.nested);
    auto terms = heisenberg_terms();
    ComplexMatrix a = matrix_exp(-0.6 * kI * terms[0]), b = matrix_exp(-0.6 * kI * terms[1]),
                  c = matrix_exp(-0.6 * kI * terms[2]);
    r.add(s, "heisenberg factor order irrelevant", (a * b * c - c * b * a).norm(), kTol.unitary);
    for (double th : {0.2, 0.5, 1.0}) {
        auto g = toric_plaquette(th);
        auto b = toric_plaquette(th, PlaquetteStrategy::Bch);
        r.add(s, "toric plaquette at " + short_number(th), unitary_distance(realize(flatten(g.sequence)), g.target),
              kTol.nested);
        r.add(s, "toric time below conjugation expansion at " + short_number(th) + " (time - bch)",
              g.total_time - b.total_time, 0.0);
    }
    struct Case {
        const char* in;
        const char* out;
    };
    int mismatched = 0;
    for (Case c : {Case{"I1x", "4*I1zI2zI3x"}, Case{"I1y", "-4*I1zI2zI3y"}, Case{"I3x", "4*I1xI2zI3z"},
                   Case{"I3y", "-4*I1yI2zI3z"}, Case{"I1z", "-I3z"}, Case{"I3z", "-I1z"}}) {
        auto p = nmr_expected_state(parse_product_operator(c.in));
        mismatched += !p.final_state || to_string(*p.final_state) != c.out;
    }
    r.add(s, "NMR initial -> final mappings (mismatch count)", mismatched, 0.5);
    return r;
}

inline SuiteReport run_suite(const std::string& name) {
    if (name == "algebra") return algebra_suite();
    if (name == "so3") return so3_suite();
    if (name == "pmp") return pmp_suite();
    if (name == "gates") return gates_suite();
    if (name == "all") {
        SuiteReport r = algebra_suite();
        r.append(so3_suite());
        r.append(pmp_suite());
        r.append(gates_suite());
        return r;
    }
    throw std::invalid_argument("unknown suite '" + name + "' (algebra, so3, pmp, gates, all)");
}

}  // namespace qsynth
