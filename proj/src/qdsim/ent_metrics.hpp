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

#ifndef QDSIM_ENT_METRICS_HPP
#define QDSIM_ENT_METRICS_HPP

#include "qdsim/mat.hpp"
#include "qdsim/state.hpp"

namespace qdsim::ent_metrics {

/// Unit Bloch vector defining a dichotomic observable n . sigma.
struct Bloch {
    double x = 0.0;
    double y = 0.0;
    double z = 1.0;

    /// Throws unless the norm is 1 within 1e-12.
    void validate() const;
};

/// The four measurement directions of a CHSH evaluation.
struct ObservablePair {
    Bloch a0, a1, b0, b1;
};

/// A0 = z, A1 = x, B0 = (z+x)/sqrt2, B1 = (z-x)/sqrt2 — the settings that
/// maximize |S| on the singlet (where S = -2 sqrt 2, signed).
ObservablePair canonical_chsh_settings();

/// E(a, b) = Tr[rho (a.sigma) x (b.sigma)], in [-1, 1].
double correlator(const TwoQubitState& rho, const Bloch& a, const Bloch& b);

/// Signed CHSH combination E(a0,b0) + E(a0,b1) + E(a1,b0) - E(a1,b1).
/// Callers comparing against the classical bound should take |S|.
double chsh_value(const TwoQubitState& rho, const ObservablePair& s);

/// <psi| rho |psi> for a pure target (the squared-fidelity convention).
double fidelity_pure(const TwoQubitState& rho, const Vec4& psi);

/// Uhlmann fidelity Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) — the root
/// convention; reduces to sqrt(fidelity_pure) for a pure argument.
double fidelity_general(const TwoQubitState& rho1, const TwoQubitState& rho2);

/// Square of fidelity_general.
double fidelity_general_squared(const TwoQubitState& rho1,
                                const TwoQubitState& rho2);

/// Wootters concurrence: with lambda_i the decreasing square roots of the
/// eigenvalues of rho rho~ (rho~ the spin-flipped conjugate), returns
/// max(0, l1 - l2 - l3 - l4). Eigenvalue real parts below -1e-8 raise a
/// numerical-instability error; smaller negatives are clamped to zero.
double concurrence(const TwoQubitState& rho);

/// Pauli correlation matrix T_ij = Tr[rho sigma_i x sigma_j].
Eigen::Matrix3d correlation_matrix(const TwoQubitState& rho);

/// Horodecki bound 2 sqrt(s1^2 + s2^2) over the two largest singular
/// values of the correlation matrix: the largest CHSH value attainable
/// over all measurement settings.
double horodecki_max(const TwoQubitState& rho);

/// (1/2) ||rho1 - rho2||_1 via the eigenvalues of the difference.
double trace_distance(const TwoQubitState& rho1, const TwoQubitState& rho2);

/// Tr[rho^2].
double purity(const TwoQubitState& rho);

} // namespace qdsim::ent_metrics

#endif
