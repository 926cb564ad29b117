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

// Maximum-principle machinery for dOmega/dt = (u Oz + v Oy) Omega with
// u, v in {-1, 0, 1}, |u| + |v| = 1: costate dynamics, the switching rule,
// extremal generation from an initial costate, and extremality checks of
// candidate schedules.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsynth/so3_optimal.hpp"

namespace qsynth::pmp {

/// Costate M = m_x Ox + m_y Oy + m_z Oz.
struct AdjointState {
    double mx = 0, my = 0, mz = 0;

    double norm() const { return std::sqrt(mx * mx + my * my + mz * mz); }
    Eigen::Vector3d vec() const { return {mx, my, mz}; }
    static AdjointState from(const Eigen::Vector3d& v) { return {v.x(), v.y(), v.z()}; }
};

/// Piecewise-constant control value. Regular values satisfy |u| + |v| = 1;
/// chatter arcs carry the time-averaged values (e.g. u = -1/2, v = 1/2).
struct Control {
    double u = 0, v = 0;
    bool operator==(const Control&) const = default;
};

/// Direction of a singular (chattering) arc.
enum class Chatter { YPlusZ, YMinusZ, MinusYPlusZ, MinusYMinusZ };

inline Control chatter_average(Chatter c) {
    switch (c) {
        case Chatter::YPlusZ: return {0.5, 0.5};
        case Chatter::YMinusZ: return {-0.5, 0.5};
        case Chatter::MinusYPlusZ: return {0.5, -0.5};
        case Chatter::MinusYMinusZ: return {-0.5, -0.5};
    }
    return {};
}

struct Piece {
    Control control;
    double duration = 0;
    std::optional<Chatter> chatter;

    bool regular() const { return !chatter; }
    Control effective() const { return chatter ? chatter_average(*chatter) : control; }
};

struct ControlSchedule {
    std::vector<Piece> pieces;

    double total_time() const {
        double t = 0;
        for (const auto& p : pieces) t += p.duration;
        return t;
    }

    /// Throws std::invalid_argument on a constraint violation.
    void validate() const {
        for (const auto& p : pieces) {
            if (!(p.duration > 0) || !std::isfinite(p.duration)) {
                throw std::invalid_argument("control schedule: durations must be positive and finite");
            }
            if (p.regular()) {
                const auto& c = p.control;
                bool admissible = (c.u == 0 || std::abs(c.u) == 1) && (c.v == 0 || std::abs(c.v) == 1);
                if (!admissible || std::abs(c.u) + std::abs(c.v) != 1) {
                    throw std::invalid_argument("control schedule: need u, v in {-1, 0, 1} with |u| + |v| = 1");
                }
            }
        }
    }
};

/// Schedule that drives a (regular) rotation sequence: Oz segments are u
/// pieces, Oy segments v pieces, diagonals chatter arcs.
inline ControlSchedule schedule_from_sequence(const RotationSequence& seq) {
    ControlSchedule out;
    for (const auto& s : seq.segments) {
        Piece p;
        p.duration = s.duration;
        switch (s.label) {
            case RotationLabel::Z: p.control = {double(s.sign), 0}; break;
            case RotationLabel::Y: p.control = {0, double(s.sign)}; break;
            case RotationLabel::YPlusZ:
                p.chatter = s.sign > 0 ? Chatter::YPlusZ : Chatter::MinusYMinusZ;
                break;
            case RotationLabel::YMinusZ:
                p.chatter = s.sign > 0 ? Chatter::YMinusZ : Chatter::MinusYPlusZ;
                break;
        }
        out.pieces.push_back(p);
    }
    return out;
}

/// dM/dt for fixed controls.
inline AdjointState adjoint_rhs(const AdjointState& m, double u, double v) {
    return {-u * m.my + v * m.mz, u * m.mx, -v * m.mx};
}

/// Control Hamiltonian H = -1 - 2 u m_z - 2 v m_y.
inline double hamiltonian(const AdjointState& m, const Control& c) {
    return -1.0 - 2.0 * c.u * m.mz - 2.0 * c.v * m.my;
}

inline double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }

/// Maximizer of H; nullopt on the singular surface |m_z| = |m_y|.
inline std::optional<Control> pmp_controls(const AdjointState& m, double tol = kTol.singular) {
    double az = std::abs(m.mz), ay = std::abs(m.my);
    if (std::abs(az - ay) <= tol) return std::nullopt;
    if (az > ay) return Control{-sgn(m.mz), 0};
    return Control{0, -sgn(m.my)};
}

/// The adjoint flow for fixed controls is a rotation about (0, v, u).
inline AdjointState advance(const AdjointState& m, const Control& c, double t) {
    Eigen::Vector3d w(0, c.v, c.u);
    double rate = w.norm();
    if (rate == 0 || t == 0) return m;
    Eigen::AngleAxisd r(rate * t, w / rate);
    return AdjointState::from(r * m.vec());
}

struct Sample {
    double time = 0;
    AdjointState state;
    Control control;
};

/// Samples the costate every `step` along the schedule; piece boundaries are
/// always included. Each piece is integrated in closed form.
inline std::vector<Sample> integrate_adjoint(const AdjointState& m0, const ControlSchedule& schedule,
                                             double step) {
    if (!(step > 0)) throw std::invalid_argument("integrate_adjoint: step must be positive");
    schedule.validate();
    std::vector<Sample> out;
    AdjointState m = m0;
    double t0 = 0;
    Control first = schedule.pieces.empty() ? Control{} : schedule.pieces.front().effective();
    out.push_back({0, m, first});
    for (const auto& p : schedule.pieces) {
        Control c = p.effective();
        auto n = static_cast<long>(std::ceil(p.duration / step - 1e-12));
        for (long k = 1; k <= n; ++k) {
            double dt = std::min(p.duration, k * step);
            out.push_back({t0 + dt, advance(m, c, dt), c});
        }
        m = advance(m, c, p.duration);
        t0 += p.duration;
        out.back().state = m;
        out.back().time = t0;
    }
    return out;
}

enum class InitialCase { I, II, III };

inline const char* to_string(InitialCase c) {
    switch (c) {
        case InitialCase::I: return "I";
        case InitialCase::II: return "II";
        case InitialCase::III: return "III";
    }
    return "?";
}

/// Compares m_x^2 + m_y^2 with m_z^2 (the m_z-constant opening arc).
inline InitialCase classify_initial_case(const AdjointState& m0, double tol = kTol.singular) {
    if (m0.norm() == 0) throw std::invalid_argument("classify_initial_case: zero costate");
    double lhs = m0.mx * m0.mx + m0.my * m0.my, rhs = m0.mz * m0.mz;
    if (std::abs(lhs - rhs) <= tol) return InitialCase::III;
    return lhs < rhs ? InitialCase::I : InitialCase::II;
}

// ---------------------------------------------------------------------------
// Extremal generation.

/// An extremal: regular pieces generated by the switching rule, optionally
/// ending on a singular point where the rule stops deciding.
struct Extremal {
    ControlSchedule schedule;
    std::vector<double> switch_times;
    std::vector<AdjointState> switch_states;
    bool reached_singular = false;
    double singular_time = 0;
    AdjointState singular_state;
};

namespace detail {

/// On a regular piece one of (m_y, m_z) rotates with m_x while the other stays
/// constant. Returns the first t > 0 at which the rotating component's
/// magnitude climbs through the constant one, or +inf if it never does.
/// `tangent` reports a touching (non-transversal) crossing.
inline double next_switch(const AdjointState& m, const Control& c, bool* tangent) {
    *tangent = false;
    double w0, x0, level, omega_rate;
    if (c.u != 0) {  // m_z constant; (m_x, m_y) rotate at rate u
        w0 = m.my; x0 = m.mx; level = std::abs(m.mz); omega_rate = c.u;
    } else {         // m_y constant; (m_x, m_z) rotate at rate -v
        w0 = m.mz; x0 = m.mx; level = std::abs(m.my); omega_rate = -c.v;
    }
    // rotating component = R sin(phi + omega t)
    double r = std::hypot(w0, x0);
    double phi = std::atan2(w0, x0);
    if (r < level - kTol.singular) return std::numeric_limits<double>::infinity();
    double ratio = std::min(1.0, level / r);
    double a = std::asin(ratio);
    if (r <= level + kTol.singular) *tangent = true;
    // |sin psi| increasing through `ratio`: psi = a or pi + a when moving
    // forward, pi - a or 2 pi - a when moving backward.
    double roots[2];
    if (omega_rate > 0) {
        roots[0] = a;
        roots[1] = kPi + a;
    } else {
        roots[0] = kPi - a;
        roots[1] = 2 * kPi - a;
    }
    double best = std::numeric_limits<double>::infinity();
    for (double psi : roots) {
        double t = std::fmod((psi - phi) / omega_rate, 2 * kPi);
        if (t < 0) t += 2 * kPi;
        if (t < 1e-12) t += 2 * kPi;
        best = std::min(best, t);
    }
    return best;
}

}  // namespace detail

/// Follows the switching rule from `m0` for `horizon` time units.
inline Extremal generate_extremal(const AdjointState& m0, double horizon) {
    Extremal out;
    AdjointState m = m0;
    auto c0 = pmp_controls(m);
    if (!c0) {
        out.reached_singular = true;
        out.singular_state = m;
        return out;
    }
    Control c = *c0;
    double t = 0;
    while (t < horizon) {
        bool tangent = false;
        double dt = detail::next_switch(m, c, &tangent);
        if (t + dt >= horizon) {
            out.schedule.pieces.push_back({c, horizon - t, std::nullopt});
            break;
        }
        out.schedule.pieces.push_back({c, dt, std::nullopt});
        m = advance(m, c, dt);
        t += dt;
        if (tangent) {
            out.reached_singular = true;
            out.singular_time = t;
            out.singular_state = m;
            break;
        }
        out.switch_times.push_back(t);
        out.switch_states.push_back(m);
        // Past the crossing the other axis dominates.
        c = c.u != 0 ? Control{0, -sgn(m.my)} : Control{-sgn(m.mz), 0};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Extremality check of a given schedule.

struct StructuralCheck {
    bool applicable = false;  ///< >= 3 regular pieces alternating axes
    bool alternates = false;
    bool interior_equal = false;
    bool ends_within_interior = false;  ///< t_first, t_last <= dt < pi
    bool pass() const { return !applicable || (alternates && interior_equal && ends_within_interior); }
};

inline StructuralCheck structural_check(const ControlSchedule& s, double tol = kTol.switch_time) {
    StructuralCheck out;
    const auto& p = s.pieces;
    bool all_regular = std::all_of(p.begin(), p.end(), [](const Piece& q) { return q.regular(); });
    if (p.size() < 3 || !all_regular) return out;
    out.applicable = true;
    out.alternates = true;
    for (std::size_t i = 1; i < p.size(); ++i) {
        out.alternates &= (p[i].control.u != 0) != (p[i - 1].control.u != 0);
    }
    double dt = p[1].duration;
    out.interior_equal = true;
    for (std::size_t i = 1; i + 1 < p.size(); ++i) {
        out.interior_equal &= std::abs(p[i].duration - dt) <= tol;
    }
    out.ends_within_interior = p.front().duration <= dt + tol && p.back().duration <= dt + tol && dt < kPi;
    return out;
}

struct ExtremalVerdict {
    bool is_extremal = false;
    std::optional<AdjointState> witness;  ///< unit costate reproducing the schedule
    double switch_error = std::numeric_limits<double>::infinity();
    StructuralCheck structure;
    std::string reason;
};

namespace detail {

/// Max switch-time mismatch between the schedule and the extremal from m0, or
/// +inf when the control pattern differs.
inline double pattern_mismatch(const ControlSchedule& s, const AdjointState& m0) {
    double horizon = s.total_time();
    Extremal e = generate_extremal(m0, horizon);
    if (e.reached_singular) return std::numeric_limits<double>::infinity();
    const auto& got = e.schedule.pieces;
    if (got.size() != s.pieces.size()) return std::numeric_limits<double>::infinity();
    double err = 0, t_want = 0, t_got = 0;
    for (std::size_t i = 0; i < got.size(); ++i) {
        if (!(got[i].control == s.pieces[i].control)) return std::numeric_limits<double>::infinity();
        t_want += s.pieces[i].duration;
        t_got += got[i].duration;
        err = std::max(err, std::abs(t_want - t_got));
    }
    return err;
}

inline AdjointState from_spherical(double polar, double azimuth) {
    return {std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar)};
}

/// Nelder-Mead on (polar, azimuth).
inline std::pair<AdjointState, double> refine_witness(const ControlSchedule& s, const AdjointState& start,
                                                      double scale) {
    auto to_angles = [](const AdjointState& m) {
        return Eigen::Vector2d(std::acos(std::clamp(m.mz / m.norm(), -1.0, 1.0)), std::atan2(m.my, m.mx));
    };
    auto f = [&](const Eigen::Vector2d& x) { return pattern_mismatch(s, from_spherical(x[0], x[1])); };
    std::array<Eigen::Vector2d, 3> pts;
    pts[0] = to_angles(start);
    pts[1] = pts[0] + Eigen::Vector2d(scale, 0);
    pts[2] = pts[0] + Eigen::Vector2d(0, scale);
    std::array<double, 3> val{f(pts[0]), f(pts[1]), f(pts[2])};
    for (int it = 0; it < 400; ++it) {
        std::array<int, 3> idx{0, 1, 2};
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return val[a] < val[b]; });
        auto best = pts[idx[0]], mid = pts[idx[1]], worst = pts[idx[2]];
        double fb = val[idx[0]], fm = val[idx[1]], fw = val[idx[2]];
        if (fb < 1e-12 || (mid - best).norm() + (worst - best).norm() < 1e-13) break;
        Eigen::Vector2d centroid = 0.5 * (best + mid);
        Eigen::Vector2d refl = centroid + (centroid - worst);
        double fr = f(refl);
        if (fr < fb) {
            Eigen::Vector2d exp = centroid + 2.0 * (centroid - worst);
            double fe = f(exp);
            if (fe < fr) { worst = exp; fw = fe; } else { worst = refl; fw = fr; }
        } else if (fr < fm) {
            worst = refl; fw = fr;
        } else {
            Eigen::Vector2d con = centroid + 0.5 * (worst - centroid);
            double fc = f(con);
            if (fc < fw) {
                worst = con; fw = fc;
            } else {
                mid = best + 0.5 * (mid - best);
                fm = f(mid);
                worst = best + 0.5 * (worst - best);
                fw = f(worst);
            }
        }
        pts = {best, mid, worst};
        val = {fb, fm, fw};
    }
    int bi = static_cast<int>(std::min_element(val.begin(), val.end()) - val.begin());
    return {from_spherical(pts[bi][0], pts[bi][1]), val[bi]};
}

}  // namespace detail

/// Fibonacci-sphere search (`grid_points` unit costates) for an initial
/// costate whose extremal reproduces the schedule's control pattern and switch
/// times, refined locally. Also runs the structural checks.
inline ExtremalVerdict verify_schedule_extremal(const ControlSchedule& s, int grid_points = 10000) {
    s.validate();
    ExtremalVerdict out;
    out.structure = structural_check(s);
    if (s.pieces.empty()) {
        out.reason = "empty schedule";
        return out;
    }
    bool all_regular = std::all_of(s.pieces.begin(), s.pieces.end(), [](const Piece& q) { return q.regular(); });
    if (!all_regular) {
        out.reason = "schedule contains singular arcs; witness search covers regular extremals only";
        return out;
    }
    struct Seed {
        double err;
        int index;
        AdjointState m;
    };
    std::vector<Seed> seeds;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < grid_points; ++i) {
        double z = 1.0 - 2.0 * (i + 0.5) / grid_points;
        double r = std::sqrt(std::max(0.0, 1.0 - z * z));
        AdjointState m{r * std::cos(golden * i), r * std::sin(golden * i), z};
        double err = detail::pattern_mismatch(s, m);
        if (std::isfinite(err)) seeds.push_back({err, i, m});
    }
    std::sort(seeds.begin(), seeds.end(), [](const Seed& a, const Seed& b) {
        return a.err != b.err ? a.err < b.err : a.index < b.index;
    });
    const double scale = std::sqrt(4.0 * kPi / grid_points);
    for (std::size_t k = 0; k < std::min<std::size_t>(seeds.size(), 8); ++k) {
        auto [m, err] = detail::refine_witness(s, seeds[k].m, scale);
        if (err < out.switch_error) {
            out.switch_error = err;
            out.witness = m;
        }
    }
    bool matched = out.switch_error <= kTol.switch_time;
    out.is_extremal = matched && out.structure.pass();
    if (!matched) {
        out.reason = seeds.empty() ? "no costate reproduces the control pattern"
                                   : "switch times not reproduced within tolerance";
        out.witness.reset();
    } else if (!out.structure.pass()) {
        out.reason = "pattern reproduced but violates t1, t2 <= dt < pi / equal interior durations";
    }
    return out;
}

}  // namespace qsynth::pmp
