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

#include <stdexcept>
#include <string>

namespace qsynth {

/// Fixed numeric thresholds shared by every module.
struct Tolerances {
    double algebraic = 1e-12;     ///< commutator / closure residuals
    double unitary = 1e-10;       ///< unitarity and single-level gate equality
    double nested = 1e-9;         ///< equality after nested (concatenated) compilation
    double singular = 1e-9;       ///< |m_z| = |m_y| switching surface, norm-1 costates
    double switch_time = 1e-3;    ///< extremal witness switch-time agreement
};

inline constexpr Tolerances kTol{};

/// Input outside the documented domain of an operation.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// A numerical self-check failed (e.g. a compiled product missed its target).
class VerificationError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace qsynth
