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

#include "qdsim/mat.hpp"

#include <cmath>
#include <stdexcept>

namespace qdsim {

Mat2 pauli(int axis) {
    Mat2 m = Mat2::Zero();
    const Complex i{0.0, 1.0};
    switch (axis) {
        case 0: m << 0, 1, 1, 0; break;
        case 1: m << 0, -i, i, 0; break;
        case 2: m << 1, 0, 0, -1; break;
        default: throw std::invalid_argument("pauli: axis must be 0, 1 or 2");
    }
    return m;
}

Mat2 bloch_observable(double nx, double ny, double nz) {
    Mat2 m;
    m << Complex{nz, 0.0}, Complex{nx, -ny},
         Complex{nx, ny}, Complex{-nz, 0.0};
    return m;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

Mat4 projector(const Vec4& psi) {
    return psi * psi.adjoint();
}

Vec4 singlet() {
    Vec4 psi = Vec4::Zero();
    const double s = 1.0 / std::sqrt(2.0);
    psi(1) = Complex{s, 0.0};
    psi(2) = Complex{-s, 0.0};
    return psi;
}

double hermiticity_defect(const Mat4& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::Vector4d hermitian_eigenvalues(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

Mat4 sqrt_psd(const Mat4& m) {
    Eigen::SelfAdjointEigenSolver<Mat4> es(m);
    Eigen::Vector4d ev = es.eigenvalues();
    // Eigenvalues at the rounding floor are noise; square-rooting them
    // would inject sqrt(eps)-sized artifacts into rank-deficient inputs.
    const double floor = 1e-13 * std::max(0.0, ev.maxCoeff());
    Mat4 d = Mat4::Zero();
    for (int k = 0; k < 4; ++k)
        d(k, k) = ev(k) > floor ? std::sqrt(ev(k)) : 0.0;
    return es.eigenvectors() * d * es.eigenvectors().adjoint();
}

double max_abs_diff(const Mat4& a, const Mat4& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

} // namespace qdsim
