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

#ifndef QDSIM_TOMOGRAPHY_HPP
#define QDSIM_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <string>

#include "qdsim/mat.hpp"
#include "qdsim/state.hpp"

namespace qdsim::tomography {

enum class PauliAxis { X = 0, Y = 1, Z = 2 };

/// One of the nine Pauli-pair measurement settings, with its four rank-1
/// projectors in the outcome order (+,+), (+,-), (-,+), (-,-).
struct TomographySetting {
    PauliAxis a = PauliAxis::Z;
    PauliAxis b = PauliAxis::Z;
    std::array<Mat4, 4> projectors;
};

inline constexpr int kNumSettings = 9;

/// The nine settings in row-major axis order XX, XY, XZ, YX, ..., ZZ.
const std::array<TomographySetting, kNumSettings>& all_settings();

/// p_k = Tr[rho Pi_k]; tiny negatives (>= -1e-12) are clamped to zero.
std::array<double, 4> outcome_probabilities(const TwoQubitState& rho,
                                            const TomographySetting& s);

/// Simulated coincidence counts. Counts are stored as doubles so the same
/// container carries both multinomial samples (integers) and noiseless
/// expected counts (reals).
struct TomographyDataset {
    long long shots = 0;
    std::uint64_t seed = 0;
    /// counts[s][k]: setting s in canonical order, outcome k.
    std::array<std::array<double, 4>, kNumSettings> counts{};

    double setting_total(int s) const;
};

/// Multinomial draw of `shots` outcomes per setting. The stream is
/// counter-based: a given seed produces the same dataset on any platform.
TomographyDataset sample_counts(const TwoQubitState& rho, long long shots,
                                std::uint64_t seed);

/// Noiseless dataset with counts equal to shots * p_k exactly.
TomographyDataset expected_counts(const TwoQubitState& rho, long long shots);

/// Line-oriented text format:
///   # shots=<N> seed=<seed>
///   <pauli_a> <pauli_b> <n1> <n2> <n3> <n4>
/// one line per setting; numeric fields round-trip bit-exactly.
std::string dataset_to_string(const TomographyDataset& ds);
TomographyDataset dataset_from_string(const std::string& text);
void dataset_save(const TomographyDataset& ds, const std::string& path);
TomographyDataset dataset_load(const std::string& path);

/// Direct Pauli-basis inversion of the empirical correlators. Hermitian
/// and unit-trace by construction, but possibly not PSD.
Mat4 linear_inversion(const TomographyDataset& ds);

/// 16 real parameters of a lower-triangular complex factor T, representing
/// the always-physical rho = T^dag T / Tr[T^dag T]. Layout: x[0..3] the
/// real diagonal, then (re, im) pairs for the strictly-lower entries
/// (1,0), (2,0), (2,1), (3,0), (3,1), (3,2).
struct CholeskyParams {
    std::array<double, 16> x{};

    Mat4 factor() const;
    Mat4 density() const;

    /// Factors a PSD matrix (plus a tiny ridge for rank-deficient input).
    static CholeskyParams from_density(const Mat4& rho);
};

struct MleOptions {
    long max_iterations = 100000;
    double tolerance = 1e-10; ///< stop when the log-likelihood gain drops below
    bool poisson = false;     ///< Poisson per-outcome likelihood instead of
                              ///< the per-setting multinomial (same maximizer)
};

struct MleDiagnostics {
    double log_likelihood = 0.0;
    long iterations = 0;
    bool converged = false;
    bool monotone = true; ///< accepted steps never decreased the likelihood
};

/// Log-likelihood of the dataset under rho(params).
double log_likelihood(const TomographyDataset& ds, const CholeskyParams& p,
                      bool poisson = false);

/// Log-likelihood and its analytic gradient with respect to the 16
/// parameters.
double log_likelihood_gradient(const TomographyDataset& ds,
                               const CholeskyParams& p,
                               std::array<double, 16>& grad,
                               bool poisson = false);

/// Maximum-likelihood reconstruction: gradient ascent with a backtracking
/// line search on the Cholesky parametrization, warm-started from the
/// PSD-projected linear inversion. The result satisfies all TwoQubitState
/// invariants by construction.
TwoQubitState mle_reconstruct(const TomographyDataset& ds,
                              const MleOptions& opts = {},
                              MleDiagnostics* diagnostics = nullptr);

} // namespace qdsim::tomography

#endif
