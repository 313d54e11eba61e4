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

#ifndef QDSIM_PHOTON_STATS_HPP
#define QDSIM_PHOTON_STATS_HPP

namespace qdsim::photon_stats {

/// Absolute tolerance for all probability comparisons in this module.
inline constexpr double kProbTol = 1e-12;

/// Pump configuration of the quantum-dot source. Under LA the dot
/// brightness fixes p0 = 1 - B; under RF p0 = 0 and the emission is a
/// coherent superposition with the vacuum (amplitude-squared q).
enum class Scheme { LA, RF };

/// Per-pulse emission probabilities, p0 + p1 + p2 = 1.
struct EmissionProbabilities {
    double p0 = 0.0;
    double p1 = 1.0;
    double p2 = 0.0;

    /// Throws std::invalid_argument on range or normalization violations.
    void validate() const;
};

/// Inputs of a Hong-Ou-Mandel visibility measurement.
struct HomMeasurement {
    double v_m = 0.0;            ///< measured visibility, in [-1, 1]
    double g2 = 0.0;             ///< second-order correlation at zero delay
    double reflectivity = 0.5;   ///< BS intensity reflectivity R
    double transmissivity = 0.5; ///< BS intensity transmissivity T, R + T = 1
    double v_sn = 0.0;           ///< signal-noise overlap, in [0, 1]

    void validate() const;
};

/// Per-stage intensity transmissions and pump rate for the coincidence
/// rate budget.
struct RateBudget {
    double eta_qdsps = 1.0;
    double eta_fl = 1.0;
    double eta_mzi = 1.0;
    double eta_d = 1.0;
    double pump_rate_hz = 79e6;

    void validate() const;
};

/// g2(0) = 2 p2 / (p1 + 2 p2)^2. Throws std::domain_error when p1 = p2 = 0.
double g2_from_probabilities(const EmissionProbabilities& p);

/// Inverts g2(0) to emission probabilities under the scheme constraint:
/// LA uses p0 = 1 - brightness, RF forces p0 = 0 (brightness ignored).
/// Picks the low-noise root (p2 <= p1 branch of the quadratic).
EmissionProbabilities g2_to_probabilities(double g2, double brightness,
                                          Scheme scheme);

/// v = 1 - 2 P_cc for coincidence probability P_cc in [0, 1/2].
double hom_visibility_from_coincidence(double p_cc);

/// Measured visibility predicted from the true indistinguishability:
/// v_m = 4RT (1 + v - (1+v)/(1-v_sn) g2) - 1.
double measured_visibility_model(const HomMeasurement& m, double v_true);

/// Multiphoton-corrected visibility v = (v_m + g2) / (1 - g2); inverse of
/// measured_visibility_model at R = T = 1/2, v_sn = 0.
double corrected_visibility(double v_m, double g2);

/// R_cc = 1/8 eta_qdsps^2 eta_fl^2 eta_mzi^2 eta_d^2 R_qd.
double expected_coincidence_rate(const RateBudget& b);

/// p_dd = R_dd * dt_cw.
double dark_count_probability(double dark_rate_hz, double window_s);

} // namespace qdsim::photon_stats

#endif
