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

// Dense spin-operator algebra: Pauli building blocks, product operators,
// commutators, matrix exponentials and phase-invariant unitary comparison.

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qsynth/tolerances.hpp"

namespace qsynth {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr Complex kI{0.0, 1.0};

/// Single-spin factor label. `I` is the 2x2 identity.
enum class Axis { I, X, Y, Z };

/// `Half` realizes factors as I_nu = sigma_nu / 2, `Full` as sigma_nu.
/// The identity factor is the 2x2 identity in both conventions.
enum class Convention { Half, Full };

inline char axis_char(Axis a) {
    switch (a) {
        case Axis::I: return '0';
        case Axis::X: return 'x';
        case Axis::Y: return 'y';
        case Axis::Z: return 'z';
    }
    return '?';
}

inline std::optional<Axis> axis_from_char(char c) {
    switch (std::tolower(static_cast<unsigned char>(c))) {
        case '0': case 'i': case 'e': return Axis::I;
        case 'x': return Axis::X;
        case 'y': return Axis::Y;
        case 'z': return Axis::Z;
        default: return std::nullopt;
    }
}

/// Pauli matrix sigma_a (identity for Axis::I).
inline ComplexMatrix pauli_full(Axis a) {
    ComplexMatrix m = ComplexMatrix::Zero(2, 2);
    switch (a) {
        case Axis::I: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case Axis::X: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case Axis::Y: m(0, 1) = -kI; m(1, 0) = kI; break;
        case Axis::Z: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
    }
    return m;
}

/// Spin-1/2 operator I_a = sigma_a / 2, or the 2x2 identity for Axis::I.
inline ComplexMatrix pauli_half(Axis a) {
    if (a == Axis::I) return pauli_full(a);
    return 0.5 * pauli_full(a);
}

inline ComplexMatrix pauli(Axis a, Convention c) {
    return c == Convention::Half ? pauli_half(a) : pauli_full(a);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// Symbolic tensor-product operator: coefficient * (x)_k factor_k, spin 1 is
/// the most significant tensor slot.
struct ProductOperator {
    double coefficient = 1.0;
    std::vector<Axis> factors;
    Convention convention = Convention::Half;

    std::size_t spins() const { return factors.size(); }

    /// Equality for identical factor lists and conventions compares coefficients.
    bool same_pattern(const ProductOperator& o) const {
        return factors == o.factors && convention == o.convention;
    }
    bool operator==(const ProductOperator& o) const {
        return same_pattern(o) && coefficient == o.coefficient;
    }
};

inline ComplexMatrix embed_product(const ProductOperator& op) {
    if (op.factors.empty()) {
        throw std::invalid_argument("embed_product: empty factor list");
    }
    ComplexMatrix m = pauli(op.factors.front(), op.convention);
    for (std::size_t k = 1; k < op.factors.size(); ++k) {
        m = kron(m, pauli(op.factors[k], op.convention));
    }
    return op.coefficient * m;
}

/// Operator acting as `axis` on spin `spin` (1-based) and identity elsewhere.
inline ComplexMatrix single_spin(Axis axis, int spin, int n_spins,
                                 Convention c = Convention::Half) {
    if (spin < 1 || spin > n_spins) {
        throw std::invalid_argument("single_spin: spin index out of range");
    }
    ProductOperator op{1.0, std::vector<Axis>(static_cast<std::size_t>(n_spins), Axis::I), c};
    op.factors[static_cast<std::size_t>(spin - 1)] = axis;
    return embed_product(op);
}

inline void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                             const char* where) {
    if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    }
}

inline ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "commutator");
    return a * b - b * a;
}

inline ComplexMatrix identity(Eigen::Index dim) {
    return ComplexMatrix::Identity(dim, dim);
}

inline bool is_skew_hermitian(const ComplexMatrix& m, double tol = 1e-14) {
    double scale = std::max(1.0, m.norm());
    return (m + m.adjoint()).norm() <= tol * scale;
}

inline double unitarity_defect(const ComplexMatrix& u) {
    return (u * u.adjoint() - identity(u.rows())).norm();
}

inline bool is_unitary(const ComplexMatrix& u, double tol = kTol.unitary) {
    return u.rows() == u.cols() && unitarity_defect(u) < tol;
}

/// exp(M). Skew-Hermitian input goes through the Hermitian eigendecomposition
/// of iM, which keeps the result unitary to machine precision; anything else
/// uses Pade scaling-and-squaring.
inline ComplexMatrix matrix_exp(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("matrix_exp: matrix is not square");
    }
    if (!m.allFinite()) {
        throw std::invalid_argument("matrix_exp: non-finite entries");
    }
    if (m.rows() == 0) return m;
    if (is_skew_hermitian(m)) {
        // M = -iH with H = iM Hermitian, so exp(M) = V exp(-i D) V^dag.
        ComplexMatrix h = kI * m;
        h = 0.5 * (h + h.adjoint());
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
        const auto& d = es.eigenvalues();
        const ComplexMatrix& v = es.eigenvectors();
        ComplexMatrix phases = ComplexMatrix::Zero(m.rows(), m.rows());
        for (Eigen::Index k = 0; k < d.size(); ++k) {
            phases(k, k) = std::exp(-kI * d(k));
        }
        return v * phases * v.adjoint();
    }
    return m.exp();
}

/// min over |phi| = 1 of ||U - phi V||_F.
inline double unitary_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
    require_same_dim(u, v, "unitary_distance");
    if (!is_unitary(u) || !is_unitary(v)) {
        throw std::invalid_argument("unitary_distance: input is not unitary within 1e-10");
    }
    Complex overlap = (v.adjoint() * u).trace();
    Complex phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : Complex{1.0, 0.0};
    return (u - phase * v).norm();
}

/// Same as unitary_distance but without the global-phase minimization.
inline double strict_distance(const ComplexMatrix& u, const ComplexMatrix& v) {
    require_same_dim(u, v, "strict_distance");
    return (u - v).norm();
}

struct So3Check {
    bool closed = false;
    /// ||[A,B]-C||, ||[B,C]-A||, ||[C,A]-B|| (Frobenius).
    std::array<double, 3> residuals{};
    double max_residual() const {
        return std::max({residuals[0], residuals[1], residuals[2]});
    }
};

inline So3Check check_so3_triple(const ComplexMatrix& a, const ComplexMatrix& b,
                                 const ComplexMatrix& c) {
    require_same_dim(a, b, "check_so3_triple");
    require_same_dim(a, c, "check_so3_triple");
    So3Check out;
    out.residuals = {(commutator(a, b) - c).norm(), (commutator(b, c) - a).norm(),
                     (commutator(c, a) - b).norm()};
    out.closed = out.max_residual() < kTol.algebraic;
    return out;
}

/// exp(-i angle I_{spin,axis}) on an n-spin register.
inline ComplexMatrix spin_rotation(Axis axis, int spin, double angle, int n_spins) {
    return matrix_exp(-kI * angle * single_spin(axis, spin, n_spins, Convention::Half));
}

// ---------------------------------------------------------------------------
// Text form of half-convention product operators, e.g. "-4*I1zI2zI3x", "I3y",
// "E" (identity). Spins not mentioned are identity factors.

inline std::string format_coefficient(double c) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", c);
    return buf;
}

inline std::string to_string(const ProductOperator& op) {
    std::string body;
    char sym = op.convention == Convention::Half ? 'I' : 's';
    for (std::size_t k = 0; k < op.factors.size(); ++k) {
        if (op.factors[k] == Axis::I) continue;
        body += sym;
        body += std::to_string(k + 1);
        body += axis_char(op.factors[k]);
    }
    if (body.empty()) body = "E";
    double c = op.coefficient;
    std::string prefix;
    if (c < 0) {
        prefix = "-";
        c = -c;
    }
    if (std::abs(c - 1.0) > 1e-12) prefix += format_coefficient(c) + "*";
    return prefix + body;
}

/// Parses labels produced by to_string. `n_spins` pads the factor list.
inline ProductOperator parse_product_operator(std::string_view text, int n_spins = 3) {
    auto fail = [&](const std::string& why) -> ProductOperator {
        throw std::invalid_argument("cannot parse product operator '" + std::string(text) +
                                    "': " + why);
    };
    ProductOperator op{1.0, std::vector<Axis>(static_cast<std::size_t>(n_spins), Axis::I),
                       Convention::Half};
    std::size_t pos = 0;
    auto at_end = [&] { return pos >= text.size(); };
    double sign = 1.0;
    if (!at_end() && (text[pos] == '-' || text[pos] == '+')) {
        sign = text[pos] == '-' ? -1.0 : 1.0;
        ++pos;
    }
    if (!at_end() && (std::isdigit(static_cast<unsigned char>(text[pos])) || text[pos] == '.')) {
        std::size_t star = text.find('*', pos);
        if (star == std::string_view::npos) return fail("coefficient must be followed by '*'");
        try {
            op.coefficient = std::stod(std::string(text.substr(pos, star - pos)));
        } catch (const std::exception&) {
            return fail("bad coefficient");
        }
        pos = star + 1;
    }
    op.coefficient *= sign;
    if (text.substr(pos) == "E") return op;
    if (at_end()) return fail("missing operator");
    while (!at_end()) {
        if (text[pos] != 'I') return fail("expected 'I'");
        ++pos;
        std::size_t start = pos;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos || at_end()) return fail("expected spin index and axis");
        int spin = std::stoi(std::string(text.substr(start, pos - start)));
        if (spin < 1 || spin > n_spins) return fail("spin index out of range");
        auto axis = axis_from_char(text[pos]);
        if (!axis || *axis == Axis::I) return fail("axis must be x, y or z");
        auto& slot = op.factors[static_cast<std::size_t>(spin - 1)];
        if (slot != Axis::I) return fail("spin listed twice");
        slot = *axis;
        ++pos;
    }
    return op;
}

/// Expands `m` in the product-operator basis of the given convention and
/// returns the single term if exactly one coefficient exceeds `tol`.
inline std::optional<ProductOperator> match_product_operator(const ComplexMatrix& m, int n_spins,
                                                             Convention c = Convention::Half,
                                                             double tol = 1e-9) {
    const std::size_t n = static_cast<std::size_t>(n_spins);
    std::optional<ProductOperator> found;
    std::vector<Axis> factors(n, Axis::I);
    std::size_t total = std::size_t{1} << (2 * n);
    for (std::size_t code = 0; code < total; ++code) {
        for (std::size_t k = 0; k < n; ++k) {
            factors[k] = static_cast<Axis>((code >> (2 * (n - 1 - k))) & 3u);
        }
        ComplexMatrix basis = embed_product({1.0, factors, c});
        Complex coeff = (basis.adjoint() * m).trace() / (basis.adjoint() * basis).trace();
        if (std::abs(coeff) <= tol) continue;
        if (found || std::abs(coeff.imag()) > tol) return std::nullopt;
        found = ProductOperator{coeff.real(), factors, c};
    }
    if (!found) return std::nullopt;
    if ((embed_product(*found) - m).norm() > tol * std::max(1.0, m.norm())) return std::nullopt;
    return found;
}

}  // namespace qsynth
