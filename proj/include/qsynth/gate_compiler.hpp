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

// Lifts SO(3) sequences onto spin registers and compiles the gate family:
// trilinear e^{theta S1}, the Ising-geodesic propagator, XX -+ YY and
// Heisenberg couplings between the indirectly coupled end spins, and the
// four-body toric-code plaquette term from two-body Ising couplings.
//
// Time is measured in units of the native coupling: 1/(pi J) for the
// three-spin chain, and t for exp(-i t sigma_z sigma_z) on the plaquette.
// Single-spin operations are free.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qsynth/pauli_string.hpp"
#include "qsynth/so3_optimal.hpp"
#include "qsynth/spin_algebra.hpp"

namespace qsynth {

// ---------------------------------------------------------------------------
// Three-spin generators.

enum class SpinGeneratorName { S1, S2, S3, S4, S5, Hd };

inline std::string to_string(SpinGeneratorName n) {
    switch (n) {
        case SpinGeneratorName::S1: return "S1";
        case SpinGeneratorName::S2: return "S2";
        case SpinGeneratorName::S3: return "S3";
        case SpinGeneratorName::S4: return "S4";
        case SpinGeneratorName::S5: return "S5";
        case SpinGeneratorName::Hd: return "Hd";
    }
    return "?";
}

inline std::optional<SpinGeneratorName> parse_spin_generator(const std::string& s) {
    for (auto n : {SpinGeneratorName::S1, SpinGeneratorName::S2, SpinGeneratorName::S3,
                   SpinGeneratorName::S4, SpinGeneratorName::S5, SpinGeneratorName::Hd}) {
        if (to_string(n) == s) return n;
    }
    return std::nullopt;
}

/// Half-convention product operator on three spins from a label like "xzy".
inline ComplexMatrix op3(const char* axes) {
    ProductOperator p{1.0, {}, Convention::Half};
    for (const char* c = axes; *c; ++c) p.factors.push_back(*axis_from_char(*c));
    return embed_product(p);
}

/// S1..S5 are skew-Hermitian unit-time generators. Hd is the (Hermitian)
/// chain coupling 2 pi J (I1z I2z + I2z I3z) expressed per 1/(pi J), so that
/// -i Hd = S4.
inline ComplexMatrix spin_generator(SpinGeneratorName n) {
    switch (n) {
        case SpinGeneratorName::S1: return -4.0 * kI * (op3("xzy") + op3("yzx"));
        case SpinGeneratorName::S2: return -2.0 * kI * (op3("xx0") + op3("0xx"));
        case SpinGeneratorName::S3: return -2.0 * kI * (op3("yy0") + op3("0yy"));
        case SpinGeneratorName::S4: return -2.0 * kI * (op3("zz0") + op3("0zz"));
        case SpinGeneratorName::S5: return -2.0 * kI * (op3("x0x") - op3("y0y"));
        case SpinGeneratorName::Hd: return 2.0 * (op3("zz0") + op3("0zz"));
    }
    throw std::invalid_argument("unknown spin generator");
}

// ---------------------------------------------------------------------------
// Spin sequences.

enum class SegmentKind { Evolution, Local };

/// One pulse-sequence element. Evolution segments realize
/// exp(sign * duration * generator); local segments carry a single-spin
/// unitary and take no time. A composite evolution segment has a non-empty
/// `expansion` that realizes it from simpler pieces.
struct SpinSegment {
    SegmentKind kind = SegmentKind::Evolution;
    std::string label;
    double duration = 0;
    int sign = 1;
    ComplexMatrix matrix;  ///< generator (evolution) or unitary (local)
    std::vector<SpinSegment> expansion;

    bool composite() const { return !expansion.empty(); }
    double signed_duration() const { return sign * duration; }
};

/// Ordered in time: segments.front() acts first.
struct SpinSequence {
    int spins = 3;
    std::vector<SpinSegment> segments;

    Eigen::Index dim() const { return Eigen::Index{1} << spins; }

    void append(const SpinSequence& other) {
        segments.insert(segments.end(), other.segments.begin(), other.segments.end());
    }
};

inline void flatten_into(const SpinSegment& s, std::vector<SpinSegment>& out) {
    if (s.composite()) {
        for (const auto& c : s.expansion) flatten_into(c, out);
    } else {
        out.push_back(s);
    }
}

/// All composites replaced by their leaves.
inline SpinSequence flatten(const SpinSequence& seq) {
    SpinSequence out{seq.spins, {}};
    for (const auto& s : seq.segments) flatten_into(s, out.segments);
    return out;
}

/// Sum of leaf evolution times; local segments contribute nothing.
inline double total_time(const SpinSequence& seq) {
    double t = 0;
    for (const auto& s : flatten(seq).segments) {
        if (s.kind == SegmentKind::Evolution) t += s.duration;
    }
    return t;
}

inline ComplexMatrix segment_unitary(const SpinSegment& s) {
    if (s.kind == SegmentKind::Local) return s.matrix;
    return matrix_exp(s.signed_duration() * s.matrix);
}

/// Product of the leaves (composites expanded).
inline ComplexMatrix realize(const SpinSequence& seq) {
    ComplexMatrix out = identity(seq.dim());
    for (const auto& s : flatten(seq).segments) out = segment_unitary(s) * out;
    return out;
}

/// Product with every top-level segment taken as its ideal exponential.
inline ComplexMatrix realize_nominal(const SpinSequence& seq) {
    ComplexMatrix out = identity(seq.dim());
    for (const auto& s : seq.segments) out = segment_unitary(s) * out;
    return out;
}

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Local segment exp(-i angle I_{spin,axis}), labeled "rot(<axis><spin>,<angle>)".
inline SpinSegment local_rotation(Axis axis, int spin, double angle, int spins) {
    SpinSegment s;
    s.kind = SegmentKind::Local;
    s.label = std::string("rot(") + axis_char(axis) + std::to_string(spin) + "," + format_number(angle) + ")";
    s.matrix = spin_rotation(axis, spin, angle, spins);
    return s;
}

/// Drive-plus-coupling generator S4 + i omega I2x used by the geodesic
/// propagator.
inline ComplexMatrix drive_generator(double omega) {
    return spin_generator(SpinGeneratorName::S4) + kI * omega * op3("0x0");
}

inline std::string drive_label(double omega) { return "S4+drive(x2," + format_number(omega) + ")"; }

struct ResolvedLabel {
    SegmentKind kind;
    ComplexMatrix matrix;
};

/// Maps a segment label back to its generator or local unitary. Accepted:
/// S1..S5, Pauli strings over {0,X,Y,Z} (generator -i P),
/// "S4+drive(x2,<omega>)" and "rot(<axis><spin>,<angle>)".
inline ResolvedLabel resolve_label(const std::string& label, int spins) {
    auto need_three = [&] {
        if (spins != 3) throw std::invalid_argument("label '" + label + "' needs a 3-spin register");
    };
    if (auto n = parse_spin_generator(label); n && *n != SpinGeneratorName::Hd) {
        need_three();
        return {SegmentKind::Evolution, spin_generator(*n)};
    }
    if (PauliString::looks_like(label)) {
        PauliString p(label);
        if (p.spins() != spins) throw std::invalid_argument("Pauli label '" + label + "' has wrong length");
        return {SegmentKind::Evolution, -kI * p.matrix()};
    }
    auto inside = [&](const std::string& prefix) -> std::optional<std::string> {
        if (label.rfind(prefix, 0) != 0 || label.back() != ')') return std::nullopt;
        return label.substr(prefix.size(), label.size() - prefix.size() - 1);
    };
    if (auto body = inside("S4+drive(x2,")) {
        need_three();
        return {SegmentKind::Evolution, drive_generator(std::stod(*body))};
    }
    if (auto body = inside("rot(")) {
        auto comma = body->find(',');
        if (comma == std::string::npos || comma < 2) throw std::invalid_argument("bad local label '" + label + "'");
        auto axis = axis_from_char((*body)[0]);
        int spin = std::stoi(body->substr(1, comma - 1));
        if (!axis || *axis == Axis::I || spin < 1 || spin > spins) {
            throw std::invalid_argument("bad local label '" + label + "'");
        }
        double angle = std::stod(body->substr(comma + 1));
        return {SegmentKind::Local, spin_rotation(*axis, spin, angle, spins)};
    }
    throw std::invalid_argument("unknown generator label '" + label + "'");
}

/// Evolution segment exp(signed_duration * G(label)).
inline SpinSegment evolution(const std::string& label, double signed_duration, int spins) {
    SpinSegment s;
    s.kind = SegmentKind::Evolution;
    s.label = label;
    s.duration = std::abs(signed_duration);
    s.sign = signed_duration < 0 ? -1 : 1;
    s.matrix = resolve_label(label, spins).matrix;
    return s;
}

// ---------------------------------------------------------------------------
// Lifting.

/// Image of one SO(3) generator: sign * scale * G(label).
struct LiftTarget {
    std::string label;
    double scale = 1.0;
    int sign = 1;
};

struct LiftMap {
    int spins = 3;
    ComplexMatrix x_image;  ///< image of Omega_x, used for the closure check
    LiftTarget y, z;
};

inline ComplexMatrix image(const LiftTarget& t, int spins) {
    return t.sign * t.scale * resolve_label(t.label, spins).matrix;
}

/// Replaces Omega_y / Omega_z segments by the mapped spin generators. The
/// mapped triple must close as so(3) with the same structure constants.
inline SpinSequence lift_so3_sequence(const RotationSequence& seq, const LiftMap& map) {
    auto check = check_so3_triple(map.x_image, image(map.y, map.spins), image(map.z, map.spins));
    if (!check.closed) {
        throw std::invalid_argument("lift_so3_sequence: generator triple does not close as so(3) (residual " +
                                    std::to_string(check.max_residual()) + ")");
    }
    SpinSequence out{map.spins, {}};
    for (const auto& s : seq.segments) {
        if (is_singular(s.label)) {
            throw std::invalid_argument("lift_so3_sequence: singular-arc segments cannot be lifted");
        }
        const LiftTarget& t = s.label == RotationLabel::Y ? map.y : map.z;
        out.segments.push_back(evolution(t.label, t.sign * t.scale * s.signed_duration(), map.spins));
    }
    return out;
}

inline LiftMap trilinear_lift() {
    return {3, spin_generator(SpinGeneratorName::S1), {"S2", 1.0, 1}, {"S3", 1.0, 1}};
}

/// (S1, S4, S5) close only after halving: Omega_x -> S5/2, Omega_y -> S4/2,
/// Omega_z -> -S1/2.
inline LiftMap xx_minus_yy_lift() {
    return {3, 0.5 * spin_generator(SpinGeneratorName::S5), {"S4", 0.5, 1}, {"S1", 0.5, -1}};
}

// ---------------------------------------------------------------------------
// Gate specifications and results.

enum class GateKind { Trilinear, Geodesic, XxMinusYy, XxPlusYy, Heisenberg, Toric };

inline std::string to_string(GateKind k) {
    switch (k) {
        case GateKind::Trilinear: return "trilinear";
        case GateKind::Geodesic: return "geodesic";
        case GateKind::XxMinusYy: return "xx_minus_yy";
        case GateKind::XxPlusYy: return "xx_plus_yy";
        case GateKind::Heisenberg: return "heisenberg";
        case GateKind::Toric: return "toric";
    }
    return "?";
}

inline std::optional<GateKind> parse_gate_kind(const std::string& s) {
    for (auto k : {GateKind::Trilinear, GateKind::Geodesic, GateKind::XxMinusYy, GateKind::XxPlusYy,
                   GateKind::Heisenberg, GateKind::Toric}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

struct GateSpec {
    GateKind kind = GateKind::Trilinear;
    double angle = 0;

    int spin_count() const { return kind == GateKind::Toric ? 4 : 3; }
};

struct CompiledGate {
    GateSpec spec;
    SpinSequence sequence;
    double total_time = 0;  ///< sum of leaf evolution times
    ComplexMatrix target;
    double residual = 0;    ///< unitary_distance(realized, target)
    bool bch_fallback = false;
    std::vector<std::string> notes;
};

inline ComplexMatrix plaquette_operator() { return PauliString("ZZZZ").matrix(); }

/// Closed-form target unitary of a gate.
inline ComplexMatrix target_unitary(const GateSpec& g) {
    const double th = g.angle;
    switch (g.kind) {
        case GateKind::Trilinear: return matrix_exp(th * spin_generator(SpinGeneratorName::S1));
        case GateKind::Geodesic: return matrix_exp(-kI * th * op3("zzz"));
        case GateKind::XxMinusYy: return matrix_exp(th * spin_generator(SpinGeneratorName::S5));
        case GateKind::XxPlusYy: return matrix_exp(-2.0 * kI * th * (op3("x0x") + op3("y0y")));
        case GateKind::Heisenberg:
            return matrix_exp(-2.0 * kI * th * (op3("x0x") + op3("y0y") + op3("z0z")));
        case GateKind::Toric: return matrix_exp(-kI * th * plaquette_operator());
    }
    throw std::invalid_argument("unknown gate kind");
}

inline void require_domain(bool ok, const std::string& what) {
    if (!ok) throw DomainError(what);
}

/// Guard for angles handed to a nested four-rotation compilation.
inline void check_inner_angle(const std::string& name, double value) {
    if (!(std::abs(value) <= kPi / 2 + 1e-12)) {
        throw DomainError("nested angle " + name + " = " + format_number(value) + " outside [-pi/2, pi/2]");
    }
}

inline void finish(CompiledGate& g, double tolerance) {
    g.total_time = total_time(g.sequence);
    g.target = target_unitary(g.spec);
    g.residual = unitary_distance(realize(g.sequence), g.target);
    if (!(g.residual < tolerance)) {
        throw VerificationError(to_string(g.spec.kind) + " at angle " + format_number(g.spec.angle) +
                                ": realized product misses target by " + format_number(g.residual));
    }
}

// ---------------------------------------------------------------------------
// Trilinear term.

/// e^{theta S1} = e^{t2 S3} e^{-dt S2} e^{-dt S3} e^{t1 S2}, |theta| <= pi/2.
inline CompiledGate compile_trilinear(double theta) {
    require_domain(std::isfinite(theta) && std::abs(theta) <= kPi / 2 + 1e-15,
                   "trilinear: |angle| must be <= pi/2 (got " + format_number(theta) + ")");
    CompiledGate g;
    g.spec = {GateKind::Trilinear, theta};
    g.sequence = lift_so3_sequence(synthesize_x_rotation(theta).sequence, trilinear_lift());
    finish(g, kTol.unitary);
    return g;
}

/// Composite "S1" segment realizing e^{signed_duration * S1}.
inline SpinSegment trilinear_segment(double signed_duration, const std::string& inner_name) {
    check_inner_angle(inner_name, signed_duration);
    SpinSegment s = evolution("S1", signed_duration, 3);
    auto inner = compile_trilinear(signed_duration);
    s.expansion = inner.sequence.segments;
    if (s.expansion.empty()) s.duration = 0;  // identity: nothing to run
    return s;
}

// ---------------------------------------------------------------------------
// XX -+ YY and Heisenberg couplings between spins 1 and 3.

/// e^{theta S5} = e^{-2i theta (I1x I3x - I1y I3y)} (variant minus) or
/// e^{-2i theta (I1x I3x + I1y I3y)} (plus, via e^{i pi I3x} conjugation),
/// theta in [0, pi/2]. Runs the x-rotation at alpha = 2 theta on the halved
/// triple; alpha > pi/2 falls back to the conjugation construction.
inline CompiledGate compile_xx_yy(double theta, bool plus) {
    require_domain(std::isfinite(theta) && theta >= 0 && theta <= kPi / 2 + 1e-15,
                   std::string(plus ? "xx_plus_yy" : "xx_minus_yy") +
                       ": angle must lie in [0, pi/2] (got " + format_number(theta) + ")");
    CompiledGate g;
    g.spec = {plus ? GateKind::XxPlusYy : GateKind::XxMinusYy, theta};
    XRotationPlan plan = plan_x_rotation(2 * theta);
    g.bch_fallback = plan.bch_fallback;
    if (plan.bch_fallback) g.notes.push_back("alpha = 2 theta > pi/2: conjugation (BCH) construction used");
    SpinSequence top = lift_so3_sequence(plan.sequence, xx_minus_yy_lift());
    const char* names[] = {"t1/2", "dt/2", "dt/2", "t2/2"};
    std::size_t k = 0;
    for (auto& s : top.segments) {
        if (s.label == "S1") s = trilinear_segment(s.signed_duration(), plan.bch_fallback ? "theta" : names[k % 4]);
        ++k;
    }
    if (plus) {
        g.sequence.spins = 3;
        g.sequence.segments.push_back(local_rotation(Axis::X, 3, kPi, 3));
        g.sequence.append(top);
        g.sequence.segments.push_back(local_rotation(Axis::X, 3, -kPi, 3));
    } else {
        g.sequence = std::move(top);
    }
    finish(g, kTol.nested);
    return g;
}

/// Closed form of compile_xx_yy's total time.
inline double xx_yy_time(double theta) {
    require_domain(theta >= 0 && theta <= kPi / 2 + 1e-15, "xx_yy_time: angle must lie in [0, pi/2]");
    double alpha = 2 * theta;
    if (alpha <= kPi / 2) {
        auto t = four_rotation_times(alpha);
        return 0.5 * (t.t1 + t.delta_t) + min_time_f(t.t1 / 2) + min_time_f(t.delta_t / 2);
    }
    return kPi / 2 + min_time_f(theta);
}

/// Wraps `inner` as frame * inner * frame^dag, frame given as local segments
/// in time order.
inline SpinSequence conjugate(const SpinSequence& inner, const std::vector<SpinSegment>& frame) {
    SpinSequence out{inner.spins, {}};
    for (auto it = frame.rbegin(); it != frame.rend(); ++it) {
        SpinSegment inv = *it;
        inv.matrix = it->matrix.adjoint();
        // rot(a, x) -> rot(a, -x)
        auto comma = inv.label.find(',');
        double angle = std::stod(inv.label.substr(comma + 1, inv.label.size() - comma - 2));
        inv.label = inv.label.substr(0, comma + 1) + format_number(-angle) + ")";
        out.segments.push_back(inv);
    }
    out.append(inner);
    for (const auto& f : frame) out.segments.push_back(f);
    return out;
}

/// The two-axis bilinear generators on spins 1 and 3 that make up the
/// Heisenberg coupling, as Hermitian operators.
inline std::array<ComplexMatrix, 3> heisenberg_terms() {
    return {op3("x0x") + op3("y0y"), op3("x0x") + op3("z0z"), op3("y0y") + op3("z0z")};
}

/// e^{-2i theta (I1x I3x + I1y I3y + I1z I3z)}, theta in [0, pi]. The three
/// pairwise sums commute, and each factor runs at theta / 2:
/// XX+YY directly, XX+ZZ via y->z (x rotations), YY+ZZ via x->z (y rotations).
inline CompiledGate compile_heisenberg(double theta) {
    require_domain(std::isfinite(theta) && theta >= 0 && theta <= kPi + 1e-15,
                   "heisenberg: angle must lie in [0, pi] (got " + format_number(theta) + ")");
    auto terms = heisenberg_terms();
    for (int a = 0; a < 3; ++a) {
        for (int b = a + 1; b < 3; ++b) {
            if (commutator(terms[a], terms[b]).norm() >= kTol.algebraic) {
                throw VerificationError("heisenberg: two-axis terms do not commute");
            }
        }
    }
    CompiledGate g;
    g.spec = {GateKind::Heisenberg, theta};
    CompiledGate base = compile_xx_yy(theta / 2, true);
    g.bch_fallback = base.bch_fallback;
    g.notes = base.notes;
    g.sequence.spins = 3;
    g.sequence.append(base.sequence);
    g.sequence.append(conjugate(base.sequence, {local_rotation(Axis::X, 1, kPi / 2, 3),
                                                local_rotation(Axis::X, 3, kPi / 2, 3)}));
    g.sequence.append(conjugate(base.sequence, {local_rotation(Axis::Y, 1, -kPi / 2, 3),
                                                local_rotation(Axis::Y, 3, -kPi / 2, 3)}));
    finish(g, kTol.nested);
    return g;
}

// ---------------------------------------------------------------------------
// Ising-geodesic propagator exp(-i theta I1z I2z I3z).

/// Minimum time in seconds, theta in [0, 4 pi].
inline double geodesic_time_seconds(double theta, double j_hz) {
    require_domain(theta >= 0 && theta <= 4 * kPi + 1e-12, "geodesic: angle must lie in [0, 4 pi]");
    require_domain(j_hz > 0, "geodesic: J must be positive");
    double kappa = std::min(theta / (2 * kPi), 2.0);
    return std::sqrt(kappa * (4 - kappa)) / (2 * j_hz);
}

/// Same in 1/(pi J) units (J-independent).
inline double geodesic_time_units(double theta) { return geodesic_time_seconds(theta, 1.0) * kPi; }

struct GeodesicPropagator {
    ComplexMatrix propagator;
    double t_star = 0;        ///< seconds
    double t_star_units = 0;  ///< 1/(pi J)
    double beta = 0;
    SpinSequence sequence;
    double residual = 0;      ///< phase-invariant distance to exp(-i theta I1z I2z I3z)
    double strict_residual = 0;
};

/// U = e^{-i pi/2 I2y} e^{-i (pi + beta/2) I2x} e^{T [-i 2 pi J (I1z I2z + I2z I3z) + i (beta/T) I2x]} e^{i pi/2 I2y},
/// beta = 2 pi - theta / 2, T = t*.
inline GeodesicPropagator geodesic_propagator(double theta, double j_hz) {
    GeodesicPropagator out;
    out.t_star = geodesic_time_seconds(theta, j_hz);
    out.t_star_units = out.t_star * kPi * j_hz;
    out.beta = 2 * kPi - theta / 2;
    auto& seq = out.sequence;
    seq.spins = 3;
    seq.segments.push_back(local_rotation(Axis::Y, 2, -kPi / 2, 3));
    if (out.t_star_units > 0) {
        double omega = out.beta / out.t_star_units;
        seq.segments.push_back(evolution(drive_label(omega), out.t_star_units, 3));
    } else {
        seq.segments.push_back(local_rotation(Axis::X, 2, -out.beta, 3));
    }
    seq.segments.push_back(local_rotation(Axis::X, 2, kPi + out.beta / 2, 3));
    seq.segments.push_back(local_rotation(Axis::Y, 2, kPi / 2, 3));
    out.propagator = realize(seq);
    ComplexMatrix target = target_unitary({GateKind::Geodesic, theta});
    out.residual = unitary_distance(out.propagator, target);
    out.strict_residual = strict_distance(out.propagator, target);
    return out;
}

inline CompiledGate compile_geodesic(double theta) {
    require_domain(std::isfinite(theta) && theta >= 0 && theta <= 4 * kPi + 1e-12,
                   "geodesic: angle must lie in [0, 4 pi] (got " + format_number(theta) + ")");
    CompiledGate g;
    g.spec = {GateKind::Geodesic, theta};
    g.sequence = geodesic_propagator(theta, 1.0).sequence;
    finish(g, 1e-8);
    return g;
}

// ---------------------------------------------------------------------------
// Toric-code plaquette on a four-spin ring with nearest-neighbour Ising
// couplings (1,2), (2,3), (3,4), (4,1).

inline bool ring_adjacent(int a, int b) {
    int d = std::abs(a - b);
    return d == 1 || d == 3;
}

/// Local frame (time order) taking sigma_z sigma_z on the support of a
/// two-body string to that string: z->x by a y rotation, z->y by an x rotation.
inline std::vector<SpinSegment> ising_frame(const PauliString& p) {
    std::vector<SpinSegment> frame;
    for (int site : p.support()) {
        char c = p.ops[static_cast<std::size_t>(site - 1)];
        if (c == 'X') frame.push_back(local_rotation(Axis::Y, site, kPi / 2, p.spins()));
        if (c == 'Y') frame.push_back(local_rotation(Axis::X, site, -kPi / 2, p.spins()));
    }
    return frame;
}

/// Nested: four-pulse sequence at every level. Bch: conjugation by pi/2
/// pulses at every level. Optimal: per level, whichever of the two gives the
/// shorter expanded sequence.
enum class PlaquetteStrategy { Optimal, Nested, Bch };

/// Decomposition exp(-i phi C) from an anticommuting pair (P, Q) with PQ = -+ iC.
struct PauliSplit {
    std::string target, p, q;
};

inline const std::vector<PauliSplit>& plaquette_splits() {
    static const std::vector<PauliSplit> splits = {
        {"ZZZZ", "ZZY0", "00XZ"},
        {"ZZY0", "ZY00", "0XY0"},
    };
    return splits;
}

/// Segment realizing exp(-i phi C) on the ring. Two-body strings are Ising
/// pieces in a local frame; heavier strings recurse through the split table.
inline SpinSegment pauli_rotation_segment(const PauliString& c, double phi, PlaquetteStrategy strategy,
                                          const std::string& name) {
    const int n = c.spins();
    SpinSegment seg = evolution(c.ops, phi, n);
    if (phi == 0) return seg;
    if (c.weight() == 2) {
        auto sup = c.support();
        if (!ring_adjacent(sup[0], sup[1])) {
            throw std::logic_error("pauli_rotation_segment: no coupling between spins " + std::to_string(sup[0]) +
                                   " and " + std::to_string(sup[1]));
        }
        std::string zz(static_cast<std::size_t>(n), '0');
        zz[static_cast<std::size_t>(sup[0] - 1)] = 'Z';
        zz[static_cast<std::size_t>(sup[1] - 1)] = 'Z';
        if (zz == c.ops) return seg;
        SpinSequence core{n, {evolution(zz, phi, n)}};
        seg.expansion = conjugate(core, ising_frame(c)).segments;
        return seg;
    }
    auto it = std::find_if(plaquette_splits().begin(), plaquette_splits().end(),
                           [&](const PauliSplit& s) { return s.target == c.ops; });
    if (it == plaquette_splits().end()) {
        throw std::logic_error("pauli_rotation_segment: no decomposition for " + c.ops);
    }
    PauliString p(it->p), q(it->q);
    auto [phase, prod] = multiply(p, q);
    if (prod != c.ops || std::abs(phase.real()) > 1e-12) {
        throw std::logic_error("pauli_rotation_segment: split does not generate " + c.ops);
    }
    // Oz -> -iP/2, Oy -> -iQ/2 gives Ox -> PQ/2 = -+ iC/2.
    double alpha = (phase.imag() < 0 ? 2.0 : -2.0) * phi;
    auto expand = [&](bool four_pulse) {
        RotationSequence rs;
        if (four_pulse) {
            check_inner_angle(name, alpha);
            rs = synthesize_x_rotation(alpha).sequence;
        } else {
            rs = bch_baseline(alpha).sequence;
        }
        const char* inner_names[] = {"t1'", "t2'", "t2'", "t1'"};
        std::vector<SpinSegment> out;
        std::size_t k = 0;
        for (const auto& s : rs.segments) {
            const PauliString& g = s.label == RotationLabel::Z ? p : q;
            out.push_back(pauli_rotation_segment(g, 0.5 * s.signed_duration(), strategy, inner_names[k++ % 4]));
        }
        return out;
    };
    if (strategy == PlaquetteStrategy::Optimal && std::abs(alpha) <= kPi / 2) {
        auto a = expand(true);
        auto b = expand(false);
        double ta = total_time(SpinSequence{n, a});
        double tb = total_time(SpinSequence{n, b});
        seg.expansion = ta <= tb ? std::move(a) : std::move(b);
    } else {
        seg.expansion = expand(strategy != PlaquetteStrategy::Bch);
    }
    return seg;
}

/// exp(-i theta B_p), B_p = Z1 Z2 Z3 Z4. theta is first reduced to
/// [-pi/4, pi/4] using exp(-i pi/2 B_p) = -i Z1 Z2 Z3 Z4, a layer of
/// single-spin pi rotations.
inline CompiledGate toric_plaquette(double theta, PlaquetteStrategy strategy = PlaquetteStrategy::Optimal) {
    require_domain(std::isfinite(theta), "toric: angle must be finite");
    CompiledGate g;
    g.spec = {GateKind::Toric, theta};
    g.sequence.spins = 4;
    double quarter_turns = std::round(theta / (kPi / 2));
    double folded = theta - quarter_turns * (kPi / 2);
    if (std::fmod(std::abs(quarter_turns), 2.0) == 1.0) {
        for (int s = 1; s <= 4; ++s) g.sequence.segments.push_back(local_rotation(Axis::Z, s, kPi, 4));
        g.notes.push_back("angle folded by pi/2 with a local Z layer");
    }
    g.sequence.segments.push_back(pauli_rotation_segment(PauliString("ZZZZ"), folded, strategy, "2 theta"));
    finish(g, kTol.nested);
    return g;
}

/// Plaquette time if the three-body factor were native: f(2 |theta_f|) / 2.
inline double toric_single_level_bound(double theta) {
    double folded = theta - std::round(theta / (kPi / 2)) * (kPi / 2);
    return 0.5 * min_time_f(2 * folded);
}

// ---------------------------------------------------------------------------
// Dispatcher, timing and NMR predictions.

inline CompiledGate compile(const GateSpec& spec) {
    switch (spec.kind) {
        case GateKind::Trilinear: return compile_trilinear(spec.angle);
        case GateKind::Geodesic: return compile_geodesic(spec.angle);
        case GateKind::XxMinusYy: return compile_xx_yy(spec.angle, false);
        case GateKind::XxPlusYy: return compile_xx_yy(spec.angle, true);
        case GateKind::Heisenberg: return compile_heisenberg(spec.angle);
        case GateKind::Toric: return toric_plaquette(spec.angle);
    }
    throw std::invalid_argument("unknown gate kind");
}

struct PhysicalTiming {
    double j_hz = 0;
    double unit_seconds = 0;  ///< 1 / (pi J)
    std::vector<double> durations_ms;
};

inline PhysicalTiming to_physical(const std::vector<double>& units, double j_hz) {
    require_domain(std::isfinite(j_hz) && j_hz > 0, "to_physical: J must be positive");
    PhysicalTiming out{j_hz, 1.0 / (kPi * j_hz), {}};
    for (double u : units) out.durations_ms.push_back(u * out.unit_seconds * 1000.0);
    return out;
}

struct NmrPrediction {
    ProductOperator initial;
    std::optional<ProductOperator> final_state;  ///< nullopt: not a single product operator
    ComplexMatrix final_matrix;
    double propagator_check = 0;  ///< distance of the compiled pulse to exp(-pi/2 S1)
};

/// The compiled pulse e^{2 pi i (I1x I2z I3y + I1y I2z I3x)} (= e^{-pi/2 S1}).
inline const ComplexMatrix& nmr_pulse() {
    static const ComplexMatrix u = realize(compile_trilinear(-kPi / 2).sequence);
    return u;
}

/// Final state U rho U^dag for a three-spin product-operator initial state.
inline NmrPrediction nmr_expected_state(const ProductOperator& initial) {
    if (initial.spins() != 3) throw std::invalid_argument("nmr_expected_state: need a 3-spin operator");
    NmrPrediction out;
    out.initial = initial;
    const ComplexMatrix& u = nmr_pulse();
    out.propagator_check = unitary_distance(u, matrix_exp(-kPi / 2 * spin_generator(SpinGeneratorName::S1)));
    out.final_matrix = u * embed_product(initial) * u.adjoint();
    out.final_state = match_product_operator(out.final_matrix, 3, initial.convention);
    if (out.final_state) {
        // snap coefficients that are integers to within round-off
        double r = std::round(out.final_state->coefficient);
        if (std::abs(out.final_state->coefficient - r) < 1e-9) out.final_state->coefficient = r;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Timing curves (1/(pi J) units).

inline double bch_time(double angle) { return kPi + std::abs(angle); }

/// Time of the Ising-geodesic route for e^{theta S1}: the two commuting terms of
/// S1 are each locally equivalent to exp(-i 4 theta I1z I2z I3z).
inline double geodesic2x_time(double theta) { return 2 * geodesic_time_units(4 * std::abs(theta)); }

}  // namespace qsynth
