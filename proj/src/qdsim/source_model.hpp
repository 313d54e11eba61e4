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

#ifndef QDSIM_SOURCE_MODEL_HPP
#define QDSIM_SOURCE_MODEL_HPP

#include "qdsim/mat.hpp"
#include "qdsim/photon_stats.hpp"
#include "qdsim/state.hpp"

namespace qdsim::source_model {

/// All physical knobs of the source noise model.
///
/// Conventions: t/r are amplitude coefficients (t^2 + r^2 = 1 per beam
/// splitter); chi = 0 prepares the singlet in the ideal limit; v_l
/// defaults to the theoretical same-laser overlap 1/2; LA excitation
/// pins q = 1.
struct SourceParams {
    double t1 = 0.7071067811865476;
    double r1 = 0.7071067811865476;
    double t2 = 0.7071067811865476;
    double r2 = 0.7071067811865476;
    double v = 1.0;
    double v_l = 0.5;
    double q = 1.0;
    double chi = 0.0;
    double eta = 0.01;
    double c_wn = 1.0;
    photon_stats::EmissionProbabilities probs{0.0, 1.0, 0.0};
    photon_stats::Scheme scheme = photon_stats::Scheme::LA;

    /// Throws std::invalid_argument when any field is out of range, a BS
    /// violates t^2 + r^2 = 1, or scheme LA is combined with q != 1.
    void validate() const;

    /// True when both beam splitters are balanced within 1e-12.
    bool balanced() const;
};

/// The four distinct unnormalized component matrices, with their q-power
/// prefactors (q^2, q, q and 1 respectively) already applied.
struct ComponentMatrices {
    Mat4 rho11;   ///< two-signal interference, off-diagonals -v e^{+-i chi}
    Mat4 rho12_2; ///< dephased diagonal pattern (overlap zero)
    Mat4 rho02;   ///< same-pulse pair, populates |HH> and |VV>
    Mat4 rho_l;   ///< two-laser interference, off-diagonals with v_l
};

/// Mixture weights of the four grouped components.
struct MixtureCoefficients {
    double c11 = 0.0;
    double c12 = 0.0;
    double c02 = 0.0;
    double c_l = 0.0;
};

ComponentMatrices component_matrices(const SourceParams& p);

/// c11 = p1^2 e^2 + p1 p2 e^2 (1-e) + p2^2 e^2 (1-e)^2, and companions,
/// with e the overall transmission eta.
MixtureCoefficients mixture_coefficients(const SourceParams& p);

/// Trace of the unnormalized mixture (the normalization constant).
double mixture_trace(const SourceParams& p);

/// Normalized model state (c11 rho11 + c12 rho12_2 + c02 rho02 + cl rho_l)
/// divided by its trace. Throws std::domain_error when the trace vanishes.
TwoQubitState build_rho_exp(const SourceParams& p);

/// c_wn rho + (1 - c_wn)/4 I.
TwoQubitState apply_werner(const TwoQubitState& rho, double c_wn);

/// Closed-form CHSH value of the model state under the canonical singlet
/// settings (A0 = z, A1 = x, B0 = (z+x)/sqrt2, B1 = (z-x)/sqrt2),
/// reported as a magnitude. Requires balanced beam splitters; use the
/// numeric path in ent_metrics otherwise.
double model_chsh(const SourceParams& p);

/// Closed-form fidelity <psi-|rho_exp|psi-> of the model state against the
/// singlet. Requires balanced beam splitters.
double model_fidelity(const SourceParams& p);

/// Werner-noise extensions: S scales linearly with c_wn; the fidelity
/// follows its own closed form.
double model_chsh_werner(const SourceParams& p);
double model_fidelity_werner(const SourceParams& p);

} // namespace qdsim::source_model

#endif
