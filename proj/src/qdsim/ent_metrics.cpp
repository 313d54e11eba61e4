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

#include "qdsim/ent_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qdsim::ent_metrics {

namespace {

constexpr double kConcurrenceEigTol = -1e-8;

Mat4 spin_flip(const Mat4& rho) {
    // (sigma_y x sigma_y) rho* (sigma_y x sigma_y)
    static const Mat4 yy = kron(pauli(1), pauli(1));
    return yy * rho.conjugate() * yy;
}

} // namespace

void Bloch::validate() const {
    const double n = std::sqrt(x * x + y * y + z * z);
    if (std::abs(n - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "Bloch vector norm is " << n << ", expected 1";
        throw std::invalid_argument(os.str());
    }
}

ObservablePair canonical_chsh_settings() {
    const double s = 1.0 / std::sqrt(2.0);
    ObservablePair p;
    p.a0 = Bloch{0.0, 0.0, 1.0};
    p.a1 = Bloch{1.0, 0.0, 0.0};
    p.b0 = Bloch{s, 0.0, s};
    p.b1 = Bloch{-s, 0.0, s};
    return p;
}

double correlator(const TwoQubitState& rho, const Bloch& a, const Bloch& b) {
    a.validate();
    b.validate();
    const Mat4 obs = kron(bloch_observable(a.x, a.y, a.z),
                          bloch_observable(b.x, b.y, b.z));
    return (rho.matrix() * obs).trace().real();
}

double chsh_value(const TwoQubitState& rho, const ObservablePair& s) {
    return correlator(rho, s.a0, s.b0) + correlator(rho, s.a0, s.b1) +
           correlator(rho, s.a1, s.b0) - correlator(rho, s.a1, s.b1);
}

double fidelity_pure(const TwoQubitState& rho, const Vec4& psi) {
    const double n = psi.norm();
    if (std::abs(n - 1.0) > 1e-10)
        throw std::invalid_argument("pure target state must be normalized");
    return (psi.adjoint() * rho.matrix() * psi)(0, 0).real();
}

double fidelity_general(const TwoQubitState& rho1, const TwoQubitState& rho2) {
    // Tr sqrt(sqrt(rho1) rho2 sqrt(rho1)) equals the nuclear norm of
    // sqrt(rho1) sqrt(rho2); the SVD route avoids square-rooting the
    // eigenvalue noise of the nearly-singular inner matrix.
    const Mat4 product = sqrt_psd(rho1.matrix()) * sqrt_psd(rho2.matrix());
    Eigen::JacobiSVD<Mat4> svd(product);
    const double f = svd.singularValues().sum();
    return std::min(f, 1.0);
}

double fidelity_general_squared(const TwoQubitState& rho1,
                                const TwoQubitState& rho2) {
    const double f = fidelity_general(rho1, rho2);
    return f * f;
}

double concurrence(const TwoQubitState& rho) {
    const Mat4 product = rho.matrix() * spin_flip(rho.matrix());
    Eigen::ComplexEigenSolver<Mat4> es(product, false);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("concurrence eigenvalue solve failed");

    std::array<double, 4> lambdas{};
    for (int k = 0; k < 4; ++k) {
        double re = es.eigenvalues()(k).real();
        if (re < kConcurrenceEigTol) {
            std::ostringstream os;
            os << "concurrence eigenvalue " << re
               << " is negative beyond the stability tolerance";
            throw std::runtime_error(os.str());
        }
        lambdas[k] = std::sqrt(std::max(0.0, re));
    }
    std::sort(lambdas.begin(), lambdas.end(), std::greater<>{});
    return std::max(0.0, lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]);
}

Eigen::Matrix3d correlation_matrix(const TwoQubitState& rho) {
    Eigen::Matrix3d t;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            t(i, j) =
                (rho.matrix() * kron(pauli(i), pauli(j))).trace().real();
    return t;
}

double horodecki_max(const TwoQubitState& rho) {
    const Eigen::Matrix3d t = correlation_matrix(rho);
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(t);
    const auto& s = svd.singularValues(); // descending
    return 2.0 * std::sqrt(s(0) * s(0) + s(1) * s(1));
}

double trace_distance(const TwoQubitState& rho1, const TwoQubitState& rho2) {
    const Eigen::Vector4d ev =
        hermitian_eigenvalues(rho1.matrix() - rho2.matrix());
    return 0.5 * ev.cwiseAbs().sum();
}

double purity(const TwoQubitState& rho) {
    return (rho.matrix() * rho.matrix()).trace().real();
}

} // namespace qdsim::ent_metrics
