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

#include "qdsim/source_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdsim::source_model {

namespace {

constexpr double kBsTol = 1e-12;

void require_unit_interval(double x, const char* name) {
    if (!(x >= 0.0 && x <= 1.0)) {
        std::ostringstream os;
        os << name << " = " << x << " outside [0, 1]";
        throw std::invalid_argument(os.str());
    }
}

} // namespace

void SourceParams::validate() const {
    if (std::abs(t1 * t1 + r1 * r1 - 1.0) > kBsTol)
        throw std::invalid_argument("first BS violates t^2 + r^2 = 1");
    if (std::abs(t2 * t2 + r2 * r2 - 1.0) > kBsTol)
        throw std::invalid_argument("second BS violates t^2 + r^2 = 1");
    require_unit_interval(v, "v");
    require_unit_interval(v_l, "v_l");
    require_unit_interval(q, "q");
    require_unit_interval(c_wn, "c_wn");
    if (!(eta > 0.0) || !(eta < 1.0))
        throw std::invalid_argument("eta must lie in (0, 1)");
    probs.validate();
    if (scheme == photon_stats::Scheme::LA && std::abs(q - 1.0) > kBsTol)
        throw std::invalid_argument("LA excitation requires q = 1");
    if (!std::isfinite(chi))
        throw std::invalid_argument("chi must be finite");
}

bool SourceParams::balanced() const {
    return std::abs(t1 - r1) < kBsTol && std::abs(t2 - r2) < kBsTol;
}

ComponentMatrices component_matrices(const SourceParams& p) {
    p.validate();
    const double t1_2 = p.t1 * p.t1;
    const double r1_2 = p.r1 * p.r1;
    const double t2_2 = p.t2 * p.t2;
    const double r2_2 = p.r2 * p.r2;
    const Complex off = std::polar(1.0, p.chi);

    ComponentMatrices m;

    // Two-signal interference: r1^2 t1^2 [diag(0, r2^4, t2^4, 0) with
    // off-diagonals -v e^{+-i chi} t2^2 r2^2], times q^2.
    Mat4 interference = Mat4::Zero();
    interference(1, 1) = r2_2 * r2_2;
    interference(2, 2) = t2_2 * t2_2;
    interference(1, 2) = -p.v * t2_2 * r2_2 * std::conj(off);
    interference(2, 1) = -p.v * t2_2 * r2_2 * off;
    m.rho11 = (p.q * p.q * r1_2 * t1_2) * interference;

    // Overlap-zero variant of the same pattern, times q.
    Mat4 dephased = Mat4::Zero();
    dephased(1, 1) = r2_2 * r2_2;
    dephased(2, 2) = t2_2 * t2_2;
    m.rho12_2 = (p.q * r1_2 * t1_2) * dephased;

    // Same-pulse pair: 2 t2^2 r2^2 diag(r1^4, 0, 0, t1^4), times q.
    Mat4 same_pulse = Mat4::Zero();
    same_pulse(0, 0) = r1_2 * r1_2;
    same_pulse(3, 3) = t1_2 * t1_2;
    m.rho02 = (p.q * 2.0 * t2_2 * r2_2) * same_pulse;

    // Two-laser interference: signal pattern with v_l, no q power.
    Mat4 laser = Mat4::Zero();
    laser(1, 1) = r2_2 * r2_2;
    laser(2, 2) = t2_2 * t2_2;
    laser(1, 2) = -p.v_l * t2_2 * r2_2 * std::conj(off);
    laser(2, 1) = -p.v_l * t2_2 * r2_2 * off;
    m.rho_l = (r1_2 * t1_2) * laser;

    return m;
}

MixtureCoefficients mixture_coefficients(const SourceParams& p) {
    p.validate();
    const double e2 = p.eta * p.eta;
    const double loss = 1.0 - p.eta;
    const double p0 = p.probs.p0;
    const double p1 = p.probs.p1;
    const double p2 = p.probs.p2;

    MixtureCoefficients c;
    c.c11 = p1 * p1 * e2 + p1 * p2 * e2 * loss + p2 * p2 * e2 * loss * loss;
    c.c12 = p1 * p2 * e2 * loss + p2 * p2 * e2 * loss * loss;
    c.c02 = p0 * p2 * e2 + p1 * p2 * e2 * loss + p2 * p2 * e2 * loss * loss;
    c.c_l = p2 * p2 * e2 * loss * loss;
    return c;
}

double mixture_trace(const SourceParams& p) {
    const ComponentMatrices m = component_matrices(p);
    const MixtureCoefficients c = mixture_coefficients(p);
    const Mat4 mix = c.c11 * m.rho11 + c.c12 * m.rho12_2 + c.c02 * m.rho02 +
                     c.c_l * m.rho_l;
    return mix.trace().real();
}

TwoQubitState build_rho_exp(const SourceParams& p) {
    const ComponentMatrices m = component_matrices(p);
    const MixtureCoefficients c = mixture_coefficients(p);
    Mat4 mix = c.c11 * m.rho11 + c.c12 * m.rho12_2 + c.c02 * m.rho02 +
               c.c_l * m.rho_l;
    const double tr = mix.trace().real();
    if (!(tr > 0.0))
        throw std::domain_error(
            "model mixture has zero trace; no coincidence events survive");
    mix /= tr;
    return TwoQubitState::from_matrix(mix);
}

TwoQubitState apply_werner(const TwoQubitState& rho, double c_wn) {
    if (c_wn < 0.0 || c_wn > 1.0)
        throw std::invalid_argument("c_wn must lie in [0, 1]");
    const Mat4 mixed =
        c_wn * rho.matrix() + (1.0 - c_wn) * 0.25 * Mat4::Identity();
    return TwoQubitState::from_matrix(mixed);
}

namespace {

struct ClosedFormTerms {
    double c11 = 0.0; // p1^2 + p1 p2 (1-eta) + p2^2 (1-eta)^2
    double c12 = 0.0;
    double c02 = 0.0;
    double c_l = 0.0;
    double denom = 0.0; // q^2 c11 + q c12 + 2 q c02 + c_l
};

// The eta^2-reduced mixture coefficients and the normalization
// denominator shared by the closed-form S and F expressions.
ClosedFormTerms closed_form_terms(const SourceParams& p) {
    const double loss = 1.0 - p.eta;
    const double p0 = p.probs.p0;
    const double p1 = p.probs.p1;
    const double p2 = p.probs.p2;

    ClosedFormTerms t;
    t.c11 = p1 * p1 + p1 * p2 * loss + p2 * p2 * loss * loss;
    t.c12 = p1 * p2 * loss + p2 * p2 * loss * loss;
    t.c02 = p0 * p2 + p1 * p2 * loss + p2 * p2 * loss * loss;
    t.c_l = p2 * p2 * loss * loss;
    t.denom = p.q * p.q * t.c11 + p.q * t.c12 + 2.0 * p.q * t.c02 + t.c_l;
    return t;
}

void require_balanced(const SourceParams& p, const char* what) {
    if (!p.balanced()) {
        std::ostringstream os;
        os << what
           << " closed form assumes balanced beam splitters; evaluate the "
              "built state with the numeric metrics instead";
        throw std::domain_error(os.str());
    }
}

} // namespace

double model_chsh(const SourceParams& p) {
    p.validate();
    require_balanced(p, "CHSH");
    const ClosedFormTerms t = closed_form_terms(p);
    if (!(t.denom > 0.0))
        throw std::domain_error("model mixture has zero trace");
    const double cos_chi = std::cos(p.chi);
    const double num = p.q * p.q * t.c11 * (1.0 + p.v * cos_chi) +
                       p.q * t.c12 - 2.0 * p.q * t.c02 +
                       t.c_l * (1.0 + p.v_l * cos_chi);
    return std::sqrt(2.0) * std::abs(num) / t.denom;
}

double model_fidelity(const SourceParams& p) {
    p.validate();
    require_balanced(p, "fidelity");
    const ClosedFormTerms t = closed_form_terms(p);
    if (!(t.denom > 0.0))
        throw std::domain_error("model mixture has zero trace");
    const double cos_chi = std::cos(p.chi);
    const double num = p.q * p.q * t.c11 * (1.0 + p.v * cos_chi) +
                       p.q * t.c12 + t.c_l * (1.0 + p.v_l * cos_chi);
    return 0.5 * num / t.denom;
}

double model_chsh_werner(const SourceParams& p) {
    return p.c_wn * model_chsh(p);
}

double model_fidelity_werner(const SourceParams& p) {
    p.validate();
    require_balanced(p, "fidelity");
    const ClosedFormTerms t = closed_form_terms(p);
    if (!(t.denom > 0.0))
        throw std::domain_error("model mixture has zero trace");
    const double cos_chi = std::cos(p.chi);
    const double c = p.c_wn;
    const double q = p.q;
    // Expanded (2 c_wn F_num + (1 - c_wn) denom) / (4 denom); algebraically
    // equal to c_wn F + (1 - c_wn)/4, which a unit test pins down.
    const double num = t.c11 * q * q * (1.0 + c * (1.0 + 2.0 * p.v * cos_chi)) +
                       t.c12 * q * (1.0 + c) + 2.0 * q * t.c02 * (1.0 - c) +
                       t.c_l * (1.0 + c * (1.0 + 2.0 * p.v_l * cos_chi));
    return 0.25 * num / t.denom;
}

} // namespace qdsim::source_model
