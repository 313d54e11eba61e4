/*
 * Copyright 2026 qdsim developers
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef QDSIM_STATE_HPP
#define QDSIM_STATE_HPP

#include <array>
#include <string>

#include "qdsim/mat.hpp"

namespace qdsim {

/// Validation tolerances for two-qubit density matrices. A candidate is
/// rejected (not clipped) when it misses any of these.
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = -1e-8;

/// Basis labels in storage order.
inline constexpr std::array<const char*, 4> kBasisLabels = {"HH", "HV", "VH",
                                                            "VV"};

/// A physical two-qubit density matrix in the basis |HH>, |HV>, |VH>, |VV>.
/// Construction validates Hermiticity, unit trace and positivity; every
/// metric downstream can therefore assume a well-formed state.
class TwoQubitState {
public:
    /// Validates and wraps a candidate matrix. Throws std::invalid_argument
    /// when the candidate is not Hermitian / unit-trace / PSD within the
    /// module tolerances.
    static TwoQubitState from_matrix(const Mat4& m);

    static TwoQubitState singlet_state();
    static TwoQubitState maximally_mixed();

    const Mat4& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    /// JSON object {"basis": [...], "re": 4x4, "im": 4x4}, row-major.
    std::string to_json() const;
    static TwoQubitState from_json(const std::string& text);

private:
    explicit TwoQubitState(const Mat4& m) : m_(m) {}
    Mat4 m_;
};

} // namespace qdsim

#endif
