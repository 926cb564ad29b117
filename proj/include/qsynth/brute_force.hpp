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

// Independent optimality oracle for exp(alpha Omega_x).
//
// Every candidate is an alternating sequence of at most `max_segments`
// segments. Up to two "free" segments (before and/or after the core) take
// grid-valued signed durations; the remaining three-segment core
// e1-e2-e1 (e1, e2 in {y, z}) is solved exactly by Euler-angle decomposition,
// both branches. The cheapest grid candidate of every structure is refined by
// golden-section coordinate descent. Nothing here uses the closed-form
// four-rotation times.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "qsynth/so3_optimal.hpp"

namespace qsynth {

struct BruteForceOptions {
    int max_segments = 5;
    double grid_step = 1e-2;
    double target_tolerance = 2e-2;
    bool include_singular = true;  ///< allow (Oy +- Oz)/2 chatter arcs in free slots
    unsigned threads = 0;          ///< 0 = hardware concurrency
};

struct BruteForceResult {
    bool feasible = false;  ///< false: nothing reached the target at this resolution
    double best_time = std::numeric_limits<double>::infinity();
    RotationSequence best_sequence;
    double distance = std::numeric_limits<double>::infinity();
    std::string structure;
    std::size_t candidates = 0;
};

namespace detail {

struct EulerSolution {
    std::array<double, 3> angles{};  // R = R_e1(a) R_e2(b) R_e1(c), stored {a, b, c}
    double cost() const { return std::abs(angles[0]) + std::abs(angles[1]) + std::abs(angles[2]); }
};

inline double wrap_angle(double a) {
    a = std::remainder(a, 2 * kPi);
    if (a <= -kPi) a += 2 * kPi;
    return a;
}

inline Eigen::Vector3d unit(Axis a) {
    return a == Axis::Y ? Eigen::Vector3d(0, 1, 0) : Eigen::Vector3d(0, 0, 1);
}

inline Rotation3 axis_rotation(Axis a, double t) {
    return Eigen::AngleAxisd(t, unit(a)).toRotationMatrix();
}

/// Cheapest decomposition R = R_outer(a) R_middle(b) R_outer(c) for orthogonal
/// axes, or nullopt if reconstruction fails.
inline std::optional<EulerSolution> euler_decompose(const Rotation3& r, Axis outer, Axis middle) {
    const Eigen::Vector3d e1 = unit(outer), e2 = unit(middle);
    const Eigen::Vector3d f = e2.cross(e1);
    double cb = std::clamp(e1.dot(r * e1), -1.0, 1.0);
    double b = std::acos(cb);
    double a = 0, c = 0;
    if (std::sin(b) > 1e-7) {
        Eigen::Vector3d re1 = r * e1;
        Eigen::Vector3d rte1 = r.transpose() * e1;
        a = std::atan2(e2.dot(re1), f.dot(re1));
        c = std::atan2(e2.dot(rte1), -f.dot(rte1));
    } else {
        Rotation3 m = cb > 0 ? r : Rotation3(r * axis_rotation(middle, -kPi));
        b = cb > 0 ? 0.0 : kPi;
        Eigen::Vector3d mf = m * f;
        a = std::atan2(e2.dot(mf), f.dot(mf));
    }
    EulerSolution s1{{wrap_angle(a), b, wrap_angle(c)}};
    EulerSolution s2{{wrap_angle(a + kPi), -b, wrap_angle(c + kPi)}};
    auto rebuild = [&](const EulerSolution& s) {
        return axis_rotation(outer, s.angles[0]) * axis_rotation(middle, s.angles[1]) *
               axis_rotation(outer, s.angles[2]);
    };
    const EulerSolution& first = s1.cost() <= s2.cost() ? s1 : s2;
    const EulerSolution& second = s1.cost() <= s2.cost() ? s2 : s1;
    if ((rebuild(first) - r).norm() <= 1e-9) return first;
    if ((rebuild(second) - r).norm() <= 1e-9) return second;
    return std::nullopt;
}

/// One search structure: labels of the free segments before and after the core.
struct Structure {
    std::vector<RotationLabel> prefix;
    std::vector<RotationLabel> suffix;
    std::size_t free_count() const { return prefix.size() + suffix.size(); }
};

inline std::optional<Axis> pure_axis(RotationLabel l) {
    if (l == RotationLabel::Y) return Axis::Y;
    if (l == RotationLabel::Z) return Axis::Z;
    return std::nullopt;
}

inline std::string describe(const Structure& s) {
    std::string out;
    for (auto l : s.prefix) out += to_string(l) + " ";
    out += "[core]";
    for (auto l : s.suffix) out += " " + to_string(l);
    return out;
}

struct Candidate {
    double time = std::numeric_limits<double>::infinity();
    std::vector<double> free;  // signed durations, prefix then suffix
    Axis outer = Axis::Z;
    EulerSolution core;
};

class Evaluator {
  public:
    Evaluator(const Rotation3& target, const Structure& s, int max_segments)
        : target_(target), s_(s), max_segments_(max_segments) {
        // Core outer axis must differ from any adjacent pure free label;
        // otherwise the structure merges into a smaller one.
        for (Axis outer : {Axis::Z, Axis::Y}) {
            auto before = s.prefix.empty() ? std::nullopt : pure_axis(s.prefix.back());
            auto after = s.suffix.empty() ? std::nullopt : pure_axis(s.suffix.front());
            if (before == outer || after == outer) continue;
            outers_.push_back(outer);
        }
    }

    bool viable() const { return !outers_.empty(); }

    /// Total time for given free durations; fills `out` when it improves on it.
    double evaluate(const std::vector<double>& free, Candidate* out) const {
        Rotation3 pre = Rotation3::Identity();
        std::size_t k = 0;
        double free_time = 0;
        for (auto l : s_.prefix) {
            pre = rotation(l, free[k]) * pre;
            free_time += std::abs(free[k++]);
        }
        Rotation3 post = Rotation3::Identity();
        for (auto l : s_.suffix) {
            post = rotation(l, free[k]) * post;
            free_time += std::abs(free[k++]);
        }
        return evaluate(pre, post, free_time, free, out);
    }

    /// Same with the free-segment products already formed.
    double evaluate(const Rotation3& pre, const Rotation3& post, double free_time,
                    const std::vector<double>& free, Candidate* out) const {
        // target = post * core * pre
        Rotation3 core = post.transpose() * target_ * pre.transpose();
        int free_nonzero = 0;
        for (double f : free) free_nonzero += f != 0.0;
        double best = std::numeric_limits<double>::infinity();
        for (Axis outer : outers_) {
            Axis middle = outer == Axis::Z ? Axis::Y : Axis::Z;
            auto sol = euler_decompose(core, outer, middle);
            if (!sol) continue;
            int nonzero = free_nonzero;
            for (double a : sol->angles) nonzero += std::abs(a) > 1e-12;
            if (nonzero > max_segments_) continue;
            double t = free_time + sol->cost();
            if (t < best) {
                best = t;
                if (out && t < out->time) {
                    out->time = t;
                    out->free = free;
                    out->outer = outer;
                    out->core = *sol;
                }
            }
        }
        return best;
    }

    RotationSequence sequence(const Candidate& c) const {
        RotationSequence seq;
        std::size_t k = 0;
        for (auto l : s_.prefix) seq.push(l, c.free[k++]);
        auto label = [](Axis a) { return a == Axis::Y ? RotationLabel::Y : RotationLabel::Z; };
        Axis middle = c.outer == Axis::Z ? Axis::Y : Axis::Z;
        seq.push(label(c.outer), c.core.angles[2]);
        seq.push(label(middle), c.core.angles[1]);
        seq.push(label(c.outer), c.core.angles[0]);
        for (auto l : s_.suffix) seq.push(l, c.free[k++]);
        return seq;
    }

  private:
    Rotation3 target_;
    Structure s_;
    int max_segments_;
    std::vector<Axis> outers_;
};

inline double label_range(RotationLabel l) {
    // a full turn about the label's axis
    return is_singular(l) ? kPi * std::sqrt(2.0) : kPi;
}

inline std::vector<double> grid(RotationLabel l, double step) {
    std::vector<double> g;
    int n = static_cast<int>(std::floor(label_range(l) / step));
    for (int k = -n; k <= n; ++k) {
        if (k != 0) g.push_back(k * step);
    }
    return g;
}

/// Golden-section coordinate descent around the grid optimum.
inline void refine(const Evaluator& ev, Candidate& c, double step) {
    if (c.free.empty()) return;
    constexpr double kGolden = 0.6180339887498949;
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (std::size_t i = 0; i < c.free.size(); ++i) {
            std::vector<double> x = c.free;
            double lo = x[i] - step, hi = x[i] + step;
            auto f = [&](double v) {
                x[i] = v;
                return ev.evaluate(x, nullptr);
            };
            double a = hi - kGolden * (hi - lo), b = lo + kGolden * (hi - lo);
            double fa = f(a), fb = f(b);
            for (int it = 0; it < 80 && hi - lo > 1e-12; ++it) {
                if (fa < fb) {
                    hi = b; b = a; fb = fa;
                    a = hi - kGolden * (hi - lo); fa = f(a);
                } else {
                    lo = a; a = b; fa = fb;
                    b = lo + kGolden * (hi - lo); fb = f(b);
                }
            }
            x[i] = 0.5 * (lo + hi);
            ev.evaluate(x, &c);
        }
    }
}

inline std::vector<Structure> enumerate_structures(int max_segments, bool include_singular) {
    std::vector<RotationLabel> alphabet = {RotationLabel::Y, RotationLabel::Z};
    if (include_singular) {
        alphabet.push_back(RotationLabel::YPlusZ);
        alphabet.push_back(RotationLabel::YMinusZ);
    }
    std::vector<Structure> out;
    out.push_back({});
    int max_free = std::clamp(max_segments - 3, 0, 2);
    for (int m = 1; m <= max_free; ++m) {
        for (int p = m; p >= 0; --p) {  // p labels before the core, m - p after
            std::size_t combos = 1;
            for (int i = 0; i < m; ++i) combos *= alphabet.size();
            for (std::size_t code = 0; code < combos; ++code) {
                std::vector<RotationLabel> labels;
                std::size_t rest = code;
                for (int i = 0; i < m; ++i) {
                    labels.push_back(alphabet[rest % alphabet.size()]);
                    rest /= alphabet.size();
                }
                Structure s{{labels.begin(), labels.begin() + p}, {labels.begin() + p, labels.end()}};
                bool adjacent_repeat = false;
                for (std::size_t i = 1; i < s.prefix.size(); ++i)
                    adjacent_repeat |= s.prefix[i] == s.prefix[i - 1];
                for (std::size_t i = 1; i < s.suffix.size(); ++i)
                    adjacent_repeat |= s.suffix[i] == s.suffix[i - 1];
                if (!adjacent_repeat) out.push_back(std::move(s));
            }
        }
    }
    return out;
}

struct StructureResult {
    Candidate best;
    std::size_t evaluated = 0;
};

inline StructureResult search_structure(const Rotation3& target, const Structure& s,
                                        const BruteForceOptions& opt, double time_bound) {
    StructureResult r;
    Evaluator ev(target, s, opt.max_segments);
    if (!ev.viable()) return r;
    const std::size_t m = s.free_count();
    std::vector<RotationLabel> labels = s.prefix;
    labels.insert(labels.end(), s.suffix.begin(), s.suffix.end());
    if (m == 0) {
        ev.evaluate({}, &r.best);
        r.evaluated = 1;
        return r;
    }
    std::vector<std::vector<double>> grids;
    std::vector<std::vector<Rotation3>> mats;
    for (auto l : labels) {
        grids.push_back(grid(l, opt.grid_step));
        auto& ms = mats.emplace_back();
        for (double a : grids.back()) ms.push_back(rotation(l, a));
    }
    const Rotation3 id = Rotation3::Identity();
    const std::size_t p = s.prefix.size();
    std::vector<double> x(m);
    if (m == 1) {
        for (std::size_t i = 0; i < grids[0].size(); ++i) {
            x[0] = grids[0][i];
            if (std::abs(x[0]) > time_bound) continue;
            const Rotation3& g = mats[0][i];
            ev.evaluate(p == 1 ? g : id, p == 1 ? id : g, std::abs(x[0]), x, &r.best);
            ++r.evaluated;
        }
    } else {
        for (std::size_t i = 0; i < grids[0].size(); ++i) {
            x[0] = grids[0][i];
            if (std::abs(x[0]) > time_bound) continue;
            for (std::size_t j = 0; j < grids[1].size(); ++j) {
                x[1] = grids[1][j];
                double ft = std::abs(x[0]) + std::abs(x[1]);
                if (ft > time_bound) continue;
                const Rotation3& g0 = mats[0][i];
                const Rotation3& g1 = mats[1][j];
                if (p == 2) {
                    ev.evaluate(g1 * g0, id, ft, x, &r.best);
                } else if (p == 1) {
                    ev.evaluate(g0, g1, ft, x, &r.best);
                } else {
                    ev.evaluate(id, g1 * g0, ft, x, &r.best);
                }
                ++r.evaluated;
            }
        }
    }
    if (std::isfinite(r.best.time)) refine(ev, r.best, opt.grid_step);
    return r;
}

}  // namespace detail

inline BruteForceResult brute_force_min_time(double alpha, const BruteForceOptions& opt = {}) {
    if (!(alpha >= 0.0 && alpha <= kPi / 2 + 1e-15)) {
        throw DomainError("brute_force_min_time: alpha must lie in [0, pi/2]");
    }
    if (opt.max_segments < 1 || opt.max_segments > 5) {
        throw DomainError("brute_force_min_time: max_segments must lie in [1, 5]");
    }
    if (!(opt.grid_step >= 1e-3)) {
        throw DomainError("brute_force_min_time: grid_step must be >= 1e-3");
    }
    const Rotation3 target = Eigen::AngleAxisd(alpha, Eigen::Vector3d::UnitX()).toRotationMatrix();
    const auto structures = detail::enumerate_structures(opt.max_segments, opt.include_singular);
    // The conjugation construction (a pure core) already costs pi + alpha, so
    // free segments beyond that budget cannot win.
    const double time_bound = kPi + alpha + 1e-9;

    std::vector<detail::StructureResult> results(structures.size());
    unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, static_cast<unsigned>(structures.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < threads; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < structures.size(); i += threads) {
                    results[i] = detail::search_structure(target, structures[i], opt, time_bound);
                }
            });
        }
    }

    BruteForceResult out;
    const ComplexMatrix target_c = x_rotation_target(alpha);
    for (std::size_t i = 0; i < structures.size(); ++i) {
        out.candidates += results[i].evaluated;
        const auto& c = results[i].best;
        if (!std::isfinite(c.time) || c.time >= out.best_time) continue;
        detail::Evaluator ev(target, structures[i], opt.max_segments);
        RotationSequence seq = ev.sequence(c);
        double d = unitary_distance(realize(seq), target_c);
        if (d >= opt.target_tolerance) continue;
        out.feasible = true;
        out.best_time = seq.total_time();
        out.best_sequence = std::move(seq);
        out.distance = d;
        out.structure = detail::describe(structures[i]);
    }
    return out;
}

}  // namespace qsynth
