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

#ifndef QDSIM_MAT_HPP
#define QDSIM_MAT_HPP

#include <Eigen/Dense>
#include <complex>

namespace qdsim {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using Mat4 = Eigen::Matrix4cd;
using Vec4 = Eigen::Vector4cd;

/// Pauli matrices, indexed 0 = x, 1 = y, 2 = z.
Mat2 pauli(int axis);

/// Single-qubit dichotomic observable n . sigma for a Bloch vector n.
Mat2 bloch_observable(double nx, double ny, double nz);

/// Kronecker product of two single-qubit operators, qubit A first.
Mat4 kron(const Mat2& a, const Mat2& b);

/// Outer product |psi><psi|.
Mat4 projector(const Vec4& psi);

/// Singlet |psi-> = (|HV> - |VH>)/sqrt(2) in the basis HH, HV, VH, VV.
Vec4 singlet();

/// Largest absolute deviation from Hermiticity, max_ij |M_ij - conj(M_ji)|.
double hermiticity_defect(const Mat4& m);

/// Eigenvalues of a Hermitian matrix, ascending.
Eigen::Vector4d hermitian_eigenvalues(const Mat4& m);

/// Principal square root of a Hermitian PSD matrix; small negative
/// eigenvalues are clamped to zero.
Mat4 sqrt_psd(const Mat4& m);

/// Max entrywise absolute difference between two matrices.
double max_abs_diff(const Mat4& a, const Mat4& b);

} // namespace qdsim

#endif
