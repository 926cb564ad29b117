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

// Time-optimal bang-bang synthesis of x-rotations on SO(3) from y/z
// generators, with the conjugation (BCH) baseline for comparison.
//
// Sequences are stored in time order: segments[0] acts first, so the realized
// matrix is exp(g_n) ... exp(g_1).

#include <Eigen/Dense>

#include <cmath>
#include <string>
#include <vector>

#include "qsynth/spin_algebra.hpp"

namespace qsynth {

using Rotation3 = Eigen::Matrix3d;

/// The three so(3) generators; omega(X) generates rotation about x.
inline Rotation3 omega(Axis a) {
    Rotation3 m = Rotation3::Zero();
    switch (a) {
        case Axis::X: m(1, 2) = -1; m(2, 1) = 1; break;
        case Axis::Y: m(0, 2) = 1; m(2, 0) = -1; break;
        case Axis::Z: m(0, 1) = -1; m(1, 0) = 1; break;
        case Axis::I: break;
    }
    return m;
}

struct OmegaTriple {
    ComplexMatrix x, y, z;
};

inline OmegaTriple omega_matrices() {
    return {omega(Axis::X).cast<Complex>(), omega(Axis::Y).cast<Complex>(),
            omega(Axis::Z).cast<Complex>()};
}

/// Generator alphabet. The diagonal labels are singular arcs: equal-duty
/// chattering between the two bang controls, i.e. (Omega_y +- Omega_z) / 2 per
/// unit time.
enum class RotationLabel { Y, Z, YPlusZ, YMinusZ };

inline std::string to_string(RotationLabel l) {
    switch (l) {
        case RotationLabel::Y: return "Oy";
        case RotationLabel::Z: return "Oz";
        case RotationLabel::YPlusZ: return "Oy+Oz";
        case RotationLabel::YMinusZ: return "Oy-Oz";
    }
    return "?";
}

inline bool is_singular(RotationLabel l) {
    return l == RotationLabel::YPlusZ || l == RotationLabel::YMinusZ;
}

/// Unit-time generator for a label.
inline Rotation3 generator(RotationLabel l) {
    switch (l) {
        case RotationLabel::Y: return omega(Axis::Y);
        case RotationLabel::Z: return omega(Axis::Z);
        case RotationLabel::YPlusZ: return 0.5 * (omega(Axis::Y) + omega(Axis::Z));
        case RotationLabel::YMinusZ: return 0.5 * (omega(Axis::Y) - omega(Axis::Z));
    }
    return Rotation3::Zero();
}

/// Closed-form exp(t * generator(l)).
inline Rotation3 rotation(RotationLabel l, double t) {
    Eigen::Vector3d axis;
    double rate = 1.0;
    switch (l) {
        case RotationLabel::Y: axis = {0, 1, 0}; break;
        case RotationLabel::Z: axis = {0, 0, 1}; break;
        case RotationLabel::YPlusZ: axis = Eigen::Vector3d(0, 1, 1).normalized(); rate = std::sqrt(0.5); break;
        case RotationLabel::YMinusZ: axis = Eigen::Vector3d(0, 1, -1).normalized(); rate = std::sqrt(0.5); break;
    }
    return Eigen::AngleAxisd(rate * t, axis).toRotationMatrix();
}

struct RotationSegment {
    RotationLabel label = RotationLabel::Y;
    double duration = 0.0;  ///< >= 0, in 1/(pi J)
    int sign = 1;           ///< +1 or -1

    double signed_duration() const { return sign * duration; }
};

struct RotationSequence {
    std::vector<RotationSegment> segments;

    double total_time() const {
        double t = 0;
        for (const auto& s : segments) t += s.duration;
        return t;
    }

    bool empty() const { return segments.empty(); }

    /// Appends a segment given as a signed duration; zero durations are dropped
    /// and a segment with the same label as the previous one is merged into it.
    void push(RotationLabel label, double signed_duration) {
        if (signed_duration == 0.0) return;
        if (!segments.empty() && segments.back().label == label) {
            double merged = segments.back().signed_duration() + signed_duration;
            segments.pop_back();
            push(label, merged);
            return;
        }
        segments.push_back({label, std::abs(signed_duration), signed_duration < 0 ? -1 : 1});
    }
};

/// How singular-arc segments are realized.
enum class SingularRealization {
    Exact,    ///< exp(d (Oy +- Oz) / 2)
    Trotter,  ///< n-step alternation of the two bang controls, each for d / (2n)
};

inline constexpr int kTrotterSteps = 512;

inline Rotation3 realize_rotation(const RotationSequence& seq,
                                  SingularRealization mode = SingularRealization::Exact,
                                  int trotter_steps = kTrotterSteps) {
    Rotation3 out = Rotation3::Identity();
    for (const auto& s : seq.segments) {
        double t = s.signed_duration();
        Rotation3 step;
        if (is_singular(s.label) && mode == SingularRealization::Trotter) {
            // Oy + Oz chatters between v and u, Oy - Oz between v and -u.
            double zsign = s.label == RotationLabel::YPlusZ ? 1.0 : -1.0;
            double h = t / (2.0 * trotter_steps);
            Rotation3 pair = rotation(RotationLabel::Z, zsign * h) * rotation(RotationLabel::Y, h);
            step = Rotation3::Identity();
            for (int k = 0; k < trotter_steps; ++k) step = pair * step;
        } else {
            step = rotation(s.label, t);
        }
        out = step * out;
    }
    return out;
}

/// Same product routed through the general complex matrix exponential.
inline ComplexMatrix realize(const RotationSequence& seq) {
    ComplexMatrix out = identity(3);
    for (const auto& s : seq.segments) {
        ComplexMatrix g = generator(s.label).cast<Complex>();
        out = matrix_exp(s.signed_duration() * g) * out;
    }
    return out;
}

inline ComplexMatrix x_rotation_target(double alpha) {
    return matrix_exp(alpha * omega(Axis::X).cast<Complex>());
}

// ---------------------------------------------------------------------------
// Four-rotation optimal sequence.

struct SynthesisTimes {
    double t1 = 0;
    double t2 = 0;
    double delta_t = 0;
    double f_alpha = 0;
};

inline void require_x_domain(double alpha, const char* where) {
    if (!std::isfinite(alpha) || std::abs(alpha) > kPi / 2 + 1e-15) {
        throw DomainError(std::string(where) + ": |alpha| = " + std::to_string(std::abs(alpha)) +
                          " exceeds pi/2; use the BCH construction (bch_baseline / plan_x_rotation)");
    }
}

inline SynthesisTimes four_rotation_times(double alpha) {
    require_x_domain(alpha, "four_rotation_times");
    double h = std::min(std::abs(alpha), kPi / 2) / 2;
    double s = std::sin(h), c = std::cos(h);
    SynthesisTimes out;
    out.t1 = std::acos(std::min(1.0, 1.0 / (s + c)));
    out.t2 = out.t1;
    out.delta_t = std::acos(std::clamp(c - s, -1.0, 1.0));
    out.f_alpha = 2 * (out.t1 + out.delta_t);
    return out;
}

/// Minimum time to reach exp(alpha Omega_x), |alpha| <= pi/2.
inline double min_time_f(double alpha) { return four_rotation_times(alpha).f_alpha; }

struct XRotationSynthesis {
    RotationSequence sequence;
    SynthesisTimes times;
};

/// exp(alpha Ox) = exp(t2 Oz) exp(-dt Oy) exp(-dt Oz) exp(t1 Oy); for alpha < 0
/// both Oy segments change sign.
inline XRotationSynthesis synthesize_x_rotation(double alpha) {
    require_x_domain(alpha, "synthesize_x_rotation");
    XRotationSynthesis out;
    out.times = four_rotation_times(alpha);
    double ysign = alpha < 0 ? -1.0 : 1.0;
    const auto& t = out.times;
    out.sequence.push(RotationLabel::Y, ysign * t.t1);
    out.sequence.push(RotationLabel::Z, -t.delta_t);
    out.sequence.push(RotationLabel::Y, -ysign * t.delta_t);
    out.sequence.push(RotationLabel::Z, t.t2);
    return out;
}

struct TimedSequence {
    RotationSequence sequence;
    double total_time = 0;
};

/// exp(alpha Ox) = exp(pi/2 Oy) exp(alpha Oz) exp(-pi/2 Oy), time pi + |alpha|.
inline TimedSequence bch_baseline(double alpha) {
    TimedSequence out;
    out.sequence.segments = {{RotationLabel::Y, kPi / 2, -1},
                             {RotationLabel::Z, std::abs(alpha), alpha < 0 ? -1 : 1},
                             {RotationLabel::Y, kPi / 2, 1}};
    out.total_time = kPi + std::abs(alpha);
    return out;
}

struct XRotationPlan {
    RotationSequence sequence;
    double total_time = 0;
    bool bch_fallback = false;  ///< |alpha| > pi/2: conjugation construction used
};

/// Four-rotation sequence inside [-pi/2, pi/2], BCH construction (flagged) outside.
inline XRotationPlan plan_x_rotation(double alpha) {
    if (std::abs(alpha) <= kPi / 2) {
        auto s = synthesize_x_rotation(alpha);
        return {s.sequence, s.times.f_alpha, false};
    }
    auto b = bch_baseline(alpha);
    return {b.sequence, b.total_time, true};
}

// ---------------------------------------------------------------------------
// Identities used to rule out five-rotation sequences.

struct FiveRotationReport {
    /// max over s of || e^{s Oz} e^{-s Oy} e^{-s Oz} - e^{-(pi-s) Oz} e^{s Oy} e^{(pi-s) Oz} ||
    double conjugation_residual = 0;
    /// The s = pi/2 chain with the intermediate e^{-pi/2 Ox} as written; this
    /// does not hold (the three-factor product is e^{+pi/2 Ox}).
    double printed_chain_residual = 0;
    /// e^{t Oy} e^{pi/2 Oz} e^{-pi/2 Oy} e^{-pi/2 Oz} = e^{(t-pi/2) Oy} e^{-pi/2 Oz} e^{pi/2 Oy}
    double corrected_chain_residual = 0;
    bool pass = false;
};

inline FiveRotationReport five_rotation_identities_check(int samples = 64) {
    auto e = [](Axis a, double t) { return matrix_exp(t * omega(a).cast<Complex>()); };
    FiveRotationReport r;
    for (int k = 0; k <= samples; ++k) {
        // open interval (0, pi), endpoints approached to 1e-9
        double s = 1e-9 + (kPi - 2e-9) * k / samples;
        ComplexMatrix lhs = e(Axis::Z, s) * e(Axis::Y, -s) * e(Axis::Z, -s);
        ComplexMatrix rhs = e(Axis::Z, -(kPi - s)) * e(Axis::Y, s) * e(Axis::Z, kPi - s);
        r.conjugation_residual = std::max(r.conjugation_residual, (lhs - rhs).norm());
        double t = 2.0 * kPi * k / samples - kPi;
        ComplexMatrix chain =
            e(Axis::Y, t) * e(Axis::Z, kPi / 2) * e(Axis::Y, -kPi / 2) * e(Axis::Z, -kPi / 2);
        ComplexMatrix printed = e(Axis::Y, t - kPi / 2) * e(Axis::Z, kPi / 2) * e(Axis::Y, kPi / 2);
        ComplexMatrix corrected = e(Axis::Y, t - kPi / 2) * e(Axis::Z, -kPi / 2) * e(Axis::Y, kPi / 2);
        ComplexMatrix via_x = e(Axis::Y, t) * e(Axis::X, -kPi / 2);
        r.printed_chain_residual = std::max({r.printed_chain_residual, (chain - printed).norm(),
                                             (chain - via_x).norm()});
        r.corrected_chain_residual = std::max(r.corrected_chain_residual, (chain - corrected).norm());
    }
    r.pass = r.conjugation_residual < kTol.unitary && r.corrected_chain_residual < kTol.unitary;
    return r;
}

}  // namespace qsynth
