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

#include "qdsim/photon_stats.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdsim::photon_stats {

namespace {

void require_range(double x, double lo, double hi, const char* name) {
    if (!(x >= lo - kProbTol) || !(x <= hi + kProbTol)) {
        std::ostringstream os;
        os << name << " = " << x << " outside [" << lo << ", " << hi << "]";
        throw std::invalid_argument(os.str());
    }
}

} // namespace

void EmissionProbabilities::validate() const {
    require_range(p0, 0.0, 1.0, "p0");
    require_range(p1, 0.0, 1.0, "p1");
    require_range(p2, 0.0, 1.0, "p2");
    if (std::abs(p0 + p1 + p2 - 1.0) > kProbTol) {
        std::ostringstream os;
        os << "emission probabilities sum to " << (p0 + p1 + p2)
           << ", expected 1";
        throw std::invalid_argument(os.str());
    }
}

void HomMeasurement::validate() const {
    require_range(v_m, -1.0, 1.0, "v_m");
    if (!(g2 >= 0.0))
        throw std::invalid_argument("g2 must be nonnegative");
    require_range(reflectivity, 0.0, 1.0, "R");
    require_range(transmissivity, 0.0, 1.0, "T");
    if (std::abs(reflectivity + transmissivity - 1.0) > kProbTol)
        throw std::invalid_argument("R + T must equal 1");
    require_range(v_sn, 0.0, 1.0, "v_sn");
}

void RateBudget::validate() const {
    require_range(eta_qdsps, 0.0, 1.0, "eta_qdsps");
    require_range(eta_fl, 0.0, 1.0, "eta_fl");
    require_range(eta_mzi, 0.0, 1.0, "eta_mzi");
    require_range(eta_d, 0.0, 1.0, "eta_d");
    if (!(pump_rate_hz > 0.0))
        throw std::invalid_argument("pump rate must be positive");
}

double g2_from_probabilities(const EmissionProbabilities& p) {
    p.validate();
    const double denom = p.p1 + 2.0 * p.p2;
    if (!(denom > 0.0))
        throw std::domain_error(
            "g2 undefined for p1 = p2 = 0 (no photon component)");
    return 2.0 * p.p2 / (denom * denom);
}

EmissionProbabilities g2_to_probabilities(double g2, double brightness,
                                          Scheme scheme) {
    if (!(g2 >= 0.0) || !(g2 < 0.5))
        throw std::domain_error("g2 must lie in [0, 0.5) for the inversion");

    // Under both schemes the constraint p1 + p2 = B (with B = 1 for RF)
    // turns 2 p2 = g2 (p1 + 2 p2)^2 into a quadratic in p2. The low-noise
    // root, written with the conjugate to stay stable as g2 -> 0, is
    //   p2 = g2 B^2 / (1 - g2 B + sqrt(1 - 2 g2 B)).
    const double b = (scheme == Scheme::RF) ? 1.0 : brightness;
    if (!(b > 0.0) || !(b <= 1.0))
        throw std::invalid_argument("brightness must lie in (0, 1]");

    const double disc = 1.0 - 2.0 * g2 * b;
    if (disc < 0.0)
        throw std::domain_error("g2 inversion has no real root");

    EmissionProbabilities p;
    p.p2 = g2 * b * b / (1.0 - g2 * b + std::sqrt(disc));
    p.p1 = b - p.p2;
    p.p0 = 1.0 - b;
    if (p.p2 < 0.0 || p.p2 > 1.0 || p.p1 < 0.0)
        throw std::domain_error("g2 inversion root is outside [0, 1]");
    p.validate();
    return p;
}

double hom_visibility_from_coincidence(double p_cc) {
    if (!(p_cc >= 0.0) || !(p_cc <= 0.5))
        throw std::domain_error("coincidence probability must be in [0, 1/2]");
    return 1.0 - 2.0 * p_cc;
}

double measured_visibility_model(const HomMeasurement& m, double v_true) {
    m.validate();
    if (m.v_sn >= 1.0)
        throw std::domain_error("v_sn = 1 makes the noise correction singular");
    require_range(v_true, 0.0, 1.0, "v");
    const double rt = m.reflectivity * m.transmissivity;
    return 4.0 * rt *
               (1.0 + v_true - (1.0 + v_true) / (1.0 - m.v_sn) * m.g2) -
           1.0;
}

double corrected_visibility(double v_m, double g2) {
    if (g2 >= 1.0)
        throw std::domain_error("g2 >= 1 makes the correction singular");
    return (v_m + g2) / (1.0 - g2);
}

double expected_coincidence_rate(const RateBudget& b) {
    b.validate();
    const double eta2 = b.eta_qdsps * b.eta_qdsps * b.eta_fl * b.eta_fl *
                        b.eta_mzi * b.eta_mzi * b.eta_d * b.eta_d;
    return 0.125 * eta2 * b.pump_rate_hz;
}

double dark_count_probability(double dark_rate_hz, double window_s) {
    if (dark_rate_hz < 0.0 || window_s < 0.0)
        throw std::invalid_argument(
            "dark count rate and window must be nonnegative");
    return dark_rate_hz * window_s;
}

} // namespace qdsim::photon_stats
