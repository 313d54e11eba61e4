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

#include "qdsim/tomography.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qdsim/rng.hpp"

namespace qdsim::tomography {

namespace {

const char* axis_name(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return "X";
        case PauliAxis::Y: return "Y";
        case PauliAxis::Z: return "Z";
    }
    throw std::logic_error("bad axis");
}

PauliAxis axis_from_name(const std::string& s) {
    if (s == "X") return PauliAxis::X;
    if (s == "Y") return PauliAxis::Y;
    if (s == "Z") return PauliAxis::Z;
    throw std::invalid_argument("unknown Pauli axis '" + s + "'");
}

// Eigenvectors of the single-qubit Paulis; column 0 -> +1, column 1 -> -1.
Eigen::Vector2cd pauli_eigenvector(PauliAxis a, int sign_index) {
    const double s = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    Eigen::Vector2cd v;
    switch (a) {
        case PauliAxis::X:
            v << Complex{s, 0.0}, (sign_index == 0 ? Complex{s, 0.0}
                                                   : Complex{-s, 0.0});
            break;
        case PauliAxis::Y:
            v << Complex{s, 0.0}, (sign_index == 0 ? i * s : -i * s);
            break;
        case PauliAxis::Z:
            if (sign_index == 0)
                v << Complex{1.0, 0.0}, Complex{0.0, 0.0};
            else
                v << Complex{0.0, 0.0}, Complex{1.0, 0.0};
            break;
    }
    return v;
}

std::array<TomographySetting, kNumSettings> build_settings() {
    std::array<TomographySetting, kNumSettings> out;
    const std::array<PauliAxis, 3> axes{PauliAxis::X, PauliAxis::Y,
                                        PauliAxis::Z};
    int idx = 0;
    for (PauliAxis a : axes) {
        for (PauliAxis b : axes) {
            TomographySetting s;
            s.a = a;
            s.b = b;
            int k = 0;
            for (int sa = 0; sa < 2; ++sa) {
                for (int sb = 0; sb < 2; ++sb) {
                    const Eigen::Vector2cd ea = pauli_eigenvector(a, sa);
                    const Eigen::Vector2cd eb = pauli_eigenvector(b, sb);
                    s.projectors[k++] = kron(ea * ea.adjoint(),
                                             eb * eb.adjoint());
                }
            }
            out[idx++] = s;
        }
    }
    return out;
}

// Outcome signs for the joint, first-qubit and second-qubit observables,
// in the (+,+), (+,-), (-,+), (-,-) outcome order.
constexpr std::array<double, 4> kSignAB{1.0, -1.0, -1.0, 1.0};
constexpr std::array<double, 4> kSignA{1.0, 1.0, -1.0, -1.0};
constexpr std::array<double, 4> kSignB{1.0, -1.0, 1.0, -1.0};

std::string format_count(double n) {
    char buf[40];
    if (n == std::floor(n) && std::abs(n) < 9.0e15) {
        std::snprintf(buf, sizeof buf, "%lld",
                      static_cast<long long>(std::llround(n)));
    } else {
        std::snprintf(buf, sizeof buf, "%.17g", n);
    }
    return buf;
}

} // namespace

const std::array<TomographySetting, kNumSettings>& all_settings() {
    static const std::array<TomographySetting, kNumSettings> settings =
        build_settings();
    return settings;
}

std::array<double, 4> outcome_probabilities(const TwoQubitState& rho,
                                            const TomographySetting& s) {
    std::array<double, 4> p{};
    for (int k = 0; k < 4; ++k) {
        double pk = (rho.matrix() * s.projectors[k]).trace().real();
        if (pk < 0.0) {
            if (pk < -1e-12)
                throw std::runtime_error(
                    "outcome probability below tolerance; state invalid");
            pk = 0.0;
        }
        p[k] = pk;
    }
    return p;
}

double TomographyDataset::setting_total(int s) const {
    const auto& c = counts[static_cast<std::size_t>(s)];
    return c[0] + c[1] + c[2] + c[3];
}

TomographyDataset sample_counts(const TwoQubitState& rho, long long shots,
                                std::uint64_t seed) {
    if (shots < 1)
        throw std::invalid_argument("shots per setting must be >= 1");
    TomographyDataset ds;
    ds.shots = shots;
    ds.seed = seed;
    SplitMix64 rng(seed);
    const auto& settings = all_settings();
    for (int s = 0; s < kNumSettings; ++s) {
        const auto p = outcome_probabilities(rho, settings[s]);
        auto& c = ds.counts[s];
        c = {0.0, 0.0, 0.0, 0.0};
        for (long long shot = 0; shot < shots; ++shot) {
            const double u = rng.uniform();
            double acc = 0.0;
            int k = 3; // absorb rounding into the last outcome
            for (int j = 0; j < 3; ++j) {
                acc += p[j];
                if (u < acc) {
                    k = j;
                    break;
                }
            }
            c[k] += 1.0;
        }
    }
    return ds;
}

TomographyDataset expected_counts(const TwoQubitState& rho, long long shots) {
    if (shots < 1)
        throw std::invalid_argument("shots per setting must be >= 1");
    TomographyDataset ds;
    ds.shots = shots;
    ds.seed = 0;
    const auto& settings = all_settings();
    for (int s = 0; s < kNumSettings; ++s) {
        const auto p = outcome_probabilities(rho, settings[s]);
        for (int k = 0; k < 4; ++k)
            ds.counts[s][k] = static_cast<double>(shots) * p[k];
    }
    return ds;
}

std::string dataset_to_string(const TomographyDataset& ds) {
    std::ostringstream os;
    os << "# shots=" << ds.shots << " seed=" << ds.seed << "\n";
    const auto& settings = all_settings();
    for (int s = 0; s < kNumSettings; ++s) {
        os << axis_name(settings[s].a) << " " << axis_name(settings[s].b);
        for (int k = 0; k < 4; ++k) os << " " << format_count(ds.counts[s][k]);
        os << "\n";
    }
    return os.str();
}

TomographyDataset dataset_from_string(const std::string& text) {
    TomographyDataset ds;
    std::array<bool, kNumSettings> seen{};
    std::istringstream is(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto shots_pos = line.find("shots=");
            const auto seed_pos = line.find("seed=");
            if (shots_pos == std::string::npos ||
                seed_pos == std::string::npos)
                throw std::invalid_argument(
                    "dataset header must carry shots= and seed=");
            ds.shots = std::stoll(line.substr(shots_pos + 6));
            ds.seed = std::stoull(line.substr(seed_pos + 5));
            header_seen = true;
            continue;
        }
        std::istringstream ls(line);
        std::string a_name, b_name;
        std::array<double, 4> c{};
        if (!(ls >> a_name >> b_name >> c[0] >> c[1] >> c[2] >> c[3]))
            throw std::invalid_argument("malformed dataset line: " + line);
        const PauliAxis a = axis_from_name(a_name);
        const PauliAxis b = axis_from_name(b_name);
        const int idx = static_cast<int>(a) * 3 + static_cast<int>(b);
        if (seen[idx])
            throw std::invalid_argument("duplicate setting in dataset: " +
                                        line);
        seen[idx] = true;
        ds.counts[idx] = c;
    }
    if (!header_seen)
        throw std::invalid_argument("dataset is missing its header line");
    for (bool s : seen)
        if (!s)
            throw std::invalid_argument(
                "dataset must contain all nine settings");
    return ds;
}

void dataset_save(const TomographyDataset& ds, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << dataset_to_string(ds);
    if (!f) throw std::runtime_error("failed writing " + path);
}

TomographyDataset dataset_load(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return dataset_from_string(os.str());
}

Mat4 linear_inversion(const TomographyDataset& ds) {
    // Empirical correlators.
    Eigen::Matrix3d e = Eigen::Matrix3d::Zero();
    std::array<double, 3> single_a{};
    std::array<double, 3> single_b{};
    for (int s = 0; s < kNumSettings; ++s) {
        const int a = s / 3;
        const int b = s % 3;
        const double total = ds.setting_total(s);
        if (!(total > 0.0))
            throw std::invalid_argument(
                "dataset has an empty setting; cannot invert");
        for (int k = 0; k < 4; ++k) {
            const double f = ds.counts[s][k] / total;
            e(a, b) += kSignAB[k] * f;
            single_a[a] += kSignA[k] * f / 3.0; // averaged over partner axes
            single_b[b] += kSignB[k] * f / 3.0;
        }
    }

    const std::array<int, 3> pauli_order{0, 1, 2}; // x, y, z
    Mat4 rho = 0.25 * Mat4::Identity();
    const Mat2 id = Mat2::Identity();
    for (int a : pauli_order)
        rho += 0.25 * single_a[a] * kron(pauli(a), id);
    for (int b : pauli_order)
        rho += 0.25 * single_b[b] * kron(id, pauli(b));
    for (int a : pauli_order)
        for (int b : pauli_order)
            rho += 0.25 * e(a, b) * kron(pauli(a), pauli(b));
    return rho;
}

Mat4 CholeskyParams::factor() const {
    Mat4 t = Mat4::Zero();
    for (int d = 0; d < 4; ++d) t(d, d) = Complex{x[d], 0.0};
    int idx = 4;
    for (int row = 1; row < 4; ++row) {
        for (int col = 0; col < row; ++col) {
            t(row, col) = Complex{x[idx], x[idx + 1]};
            idx += 2;
        }
    }
    return t;
}

Mat4 CholeskyParams::density() const {
    const Mat4 t = factor();
    Mat4 a = t.adjoint() * t;
    const double tr = a.trace().real();
    if (!(tr > 0.0))
        throw std::domain_error("Cholesky parameters are all zero");
    return a / tr;
}

CholeskyParams CholeskyParams::from_density(const Mat4& rho) {
    // Lower-triangular T with T^dag T = A: flip the matrix with the
    // exchange permutation, take the standard Cholesky, flip back.
    Mat4 a = 0.5 * (rho + rho.adjoint());
    a += 1e-12 * Mat4::Identity(); // ridge so rank-deficient states factor
    Mat4 j = Mat4::Zero();
    for (int i = 0; i < 4; ++i) j(i, 3 - i) = Complex{1.0, 0.0};
    const Mat4 flipped = j * a * j;
    Eigen::LLT<Mat4> llt(flipped);
    if (llt.info() != Eigen::Success)
        throw std::runtime_error("Cholesky factorization failed");
    const Mat4 lower = llt.matrixL();
    Mat4 t = (j * lower * j).adjoint();

    CholeskyParams p;
    for (int d = 0; d < 4; ++d) p.x[d] = t(d, d).real();
    int idx = 4;
    for (int row = 1; row < 4; ++row) {
        for (int col = 0; col < row; ++col) {
            p.x[idx] = t(row, col).real();
            p.x[idx + 1] = t(row, col).imag();
            idx += 2;
        }
    }
    return p;
}

namespace {

// Log-likelihood of the dataset at density matrix `rho`. The multinomial
// form keeps only the count-weighted log terms; the Poisson form adds the
// -mu terms (with mu_k = shots p_k), which shifts the value but not the
// maximizer.
double loglik_at(const TomographyDataset& ds, const Mat4& rho, bool poisson) {
    const auto& settings = all_settings();
    double ll = 0.0;
    for (int s = 0; s < kNumSettings; ++s) {
        const double total = ds.setting_total(s);
        for (int k = 0; k < 4; ++k) {
            const double n = ds.counts[s][k];
            const double pk =
                (rho * settings[s].projectors[k]).trace().real();
            if (n > 0.0) {
                if (!(pk > 0.0))
                    return -std::numeric_limits<double>::infinity();
                ll += n * std::log(pk);
            }
            if (poisson) ll -= total * pk;
        }
    }
    return ll;
}

} // namespace

double log_likelihood(const TomographyDataset& ds, const CholeskyParams& p,
                      bool poisson) {
    return loglik_at(ds, p.density(), poisson);
}

double log_likelihood_gradient(const TomographyDataset& ds,
                               const CholeskyParams& p,
                               std::array<double, 16>& grad, bool poisson) {
    const Mat4 t = p.factor();
    const Mat4 a = t.adjoint() * t;
    const double tau = a.trace().real();
    if (!(tau > 0.0))
        throw std::domain_error("Cholesky parameters are all zero");
    const Mat4 rho = a / tau;

    const auto& settings = all_settings();
    double ll = 0.0;
    double weighted_p = 0.0;
    Mat4 g = Mat4::Zero();
    for (int s = 0; s < kNumSettings; ++s) {
        const double total = ds.setting_total(s);
        for (int k = 0; k < 4; ++k) {
            const double n = ds.counts[s][k];
            const double pk =
                (rho * settings[s].projectors[k]).trace().real();
            if (n > 0.0) {
                if (!(pk > 0.0)) {
                    ll = -std::numeric_limits<double>::infinity();
                    grad.fill(0.0);
                    return ll;
                }
                ll += n * std::log(pk);
                const double w = n / pk;
                g += w * settings[s].projectors[k];
                weighted_p += w * pk;
            }
            if (poisson) {
                ll -= total * pk;
                g -= total * settings[s].projectors[k];
                weighted_p -= total * pk;
            }
        }
    }
    g -= weighted_p * Mat4::Identity();

    // d ll = (2 / tau) Re Tr[G T^dag dT]; see the parametrization notes.
    const Mat4 gt = g * t.adjoint();
    const double scale = 2.0 / tau;
    for (int d = 0; d < 4; ++d) grad[d] = scale * gt(d, d).real();
    int idx = 4;
    for (int row = 1; row < 4; ++row) {
        for (int col = 0; col < row; ++col) {
            grad[idx] = scale * gt(col, row).real();
            grad[idx + 1] = -scale * gt(col, row).imag();
            idx += 2;
        }
    }
    return ll;
}

TwoQubitState mle_reconstruct(const TomographyDataset& ds,
                              const MleOptions& opts,
                              MleDiagnostics* diagnostics) {
    double total = 0.0;
    for (int s = 0; s < kNumSettings; ++s) total += ds.setting_total(s);
    if (!(total > 0.0))
        throw std::invalid_argument("dataset has no counts");

    // Warm start: PSD projection (eigenvalue clamp + renormalize) of the
    // linear inversion.
    const Mat4 inverted = linear_inversion(ds);
    Eigen::SelfAdjointEigenSolver<Mat4> es(
        0.5 * (inverted + inverted.adjoint()));
    Eigen::Vector4d ev = es.eigenvalues().cwiseMax(0.0);
    const double norm = ev.sum();
    Mat4 start;
    if (norm > 0.0) {
        Mat4 d = Mat4::Zero();
        for (int k = 0; k < 4; ++k) d(k, k) = ev(k) / norm;
        start = es.eigenvectors() * d * es.eigenvectors().adjoint();
    } else {
        start = 0.25 * Mat4::Identity();
    }

    CholeskyParams theta = CholeskyParams::from_density(start);
    std::array<double, 16> grad{};
    double ll = log_likelihood_gradient(ds, theta, grad, opts.poisson);

    MleDiagnostics diag;
    diag.monotone = true;
    double step = 1.0;
    bool converged = false;
    bool have_prev = false;
    std::array<double, 16> prev_theta{};
    std::array<double, 16> prev_grad{};
    long iter = 0;
    for (; iter < opts.max_iterations; ++iter) {
        double gnorm2 = 0.0;
        for (double gi : grad) gnorm2 += gi * gi;
        if (gnorm2 < 1e-30) {
            converged = true;
            break;
        }

        // Barzilai-Borwein seed for the trial step: it adapts to the local
        // curvature and cuts through the slow tail near rank-deficient
        // optima, where a fixed step decays geometrically.
        if (have_prev) {
            double dd = 0.0;
            double dy = 0.0;
            for (int i = 0; i < 16; ++i) {
                const double d = theta.x[i] - prev_theta[i];
                const double y = grad[i] - prev_grad[i];
                dd += d * d;
                dy += d * y;
            }
            if (dy < 0.0 && dd > 0.0) {
                const double bb = -dd / dy;
                if (std::isfinite(bb) && bb > 0.0)
                    step = std::clamp(bb, 1e-12, 1e6);
            }
        }
        prev_theta = theta.x;
        prev_grad = grad;
        have_prev = true;

        // Backtracking line search along the gradient (Armijo condition).
        CholeskyParams trial = theta;
        double ll_new = -std::numeric_limits<double>::infinity();
        bool accepted = false;
        while (step > 1e-18) {
            for (int i = 0; i < 16; ++i)
                trial.x[i] = theta.x[i] + step * grad[i];
            ll_new = log_likelihood(ds, trial, opts.poisson);
            if (ll_new >= ll + 1e-4 * step * gnorm2) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            // No ascent possible at floating-point resolution.
            converged = true;
            break;
        }
        if (ll_new < ll) diag.monotone = false;
        const double gain = ll_new - ll;
        theta = trial;

        // Rescale so Tr[T^dag T] = 1; the state is invariant and the
        // parameters stay well conditioned.
        const double tau = (theta.factor().adjoint() * theta.factor())
                               .trace()
                               .real();
        if (tau > 0.0) {
            const double s = 1.0 / std::sqrt(tau);
            for (double& xi : theta.x) xi *= s;
        }

        ll = log_likelihood_gradient(ds, theta, grad, opts.poisson);
        step = std::min(step * 2.0, 1e6);
        if (gain < opts.tolerance) {
            converged = true;
            ++iter;
            break;
        }
    }

    diag.log_likelihood = ll;
    diag.iterations = iter;
    diag.converged = converged;
    if (diagnostics) *diagnostics = diag;
    return TwoQubitState::from_matrix(theta.density());
}

} // namespace qdsim::tomography
