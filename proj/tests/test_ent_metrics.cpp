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

#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qdsim/ent_metrics.hpp"
#include "qdsim/rng.hpp"
#include "qdsim/source_model.hpp"
#include "test_util.hpp"

using namespace qdsim;
using namespace qdsim::ent_metrics;

namespace {

const Bloch kZ{0.0, 0.0, 1.0};
const Bloch kX{1.0, 0.0, 0.0};

Vec4 bell_state(int which) {
    Vec4 v = Vec4::Zero();
    const double s = 1.0 / std::sqrt(2.0);
    switch (which) {
        case 0: v(0) = s; v(3) = s; break;   // phi+
        case 1: v(0) = s; v(3) = -s; break;  // phi-
        case 2: v(1) = s; v(2) = s; break;   // psi+
        default: v(1) = s; v(2) = -s; break; // psi-
    }
    return v;
}

} // namespace

TEST_CASE("correlators") {
    const auto psi_minus = TwoQubitState::singlet_state();
    const auto mixed = TwoQubitState::maximally_mixed();

    CHECK(correlator(psi_minus, kZ, kZ) == doctest::Approx(-1.0));
    CHECK(correlator(mixed, kZ, kX) == doctest::Approx(0.0));

    // Tilted setting, cross-checked by an explicit trace in this test.
    const double s = 1.0 / std::sqrt(2.0);
    const Bloch tilted{s, 0.0, s};
    const Mat4 obs = kron(bloch_observable(0, 0, 1),
                          bloch_observable(s, 0, s));
    const double direct =
        (psi_minus.matrix() * obs).trace().real();
    CHECK(direct == doctest::Approx(-s).epsilon(1e-14));
    CHECK(correlator(psi_minus, kZ, tilted) ==
          doctest::Approx(direct).epsilon(1e-14));

    CHECK_THROWS_AS((void)correlator(psi_minus, Bloch{0.5, 0.0, 0.0}, kZ),
                    std::invalid_argument);
}

TEST_CASE("CHSH value") {
    const auto psi_minus = TwoQubitState::singlet_state();
    const auto settings = canonical_chsh_settings();

    SUBCASE("singlet saturates the quantum bound with a negative sign") {
        const double s = chsh_value(psi_minus, settings);
        CHECK(s == doctest::Approx(-2.0 * std::sqrt(2.0)).epsilon(1e-14));
        CHECK(std::abs(s) ==
              doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    }

    SUBCASE("product states respect the local bound") {
        Mat4 hh = Mat4::Zero();
        hh(0, 0) = 1.0;
        const auto product = TwoQubitState::from_matrix(hh);
        SplitMix64 rng(61);
        for (int i = 0; i < 200; ++i) {
            ObservablePair p;
            double b[3];
            testutil::random_bloch(rng, b);
            p.a0 = {b[0], b[1], b[2]};
            testutil::random_bloch(rng, b);
            p.a1 = {b[0], b[1], b[2]};
            testutil::random_bloch(rng, b);
            p.b0 = {b[0], b[1], b[2]};
            testutil::random_bloch(rng, b);
            p.b1 = {b[0], b[1], b[2]};
            CHECK(std::abs(chsh_value(product, p)) <= 2.0 + 1e-12);
        }
    }

    SUBCASE("Werner states scale linearly") {
        const auto w = source_model::apply_werner(psi_minus, 0.95);
        CHECK(chsh_value(w, settings) ==
              doctest::Approx(-0.95 * 2.0 * std::sqrt(2.0)).epsilon(1e-13));
    }

    SUBCASE("linearity in the state") {
        SplitMix64 rng(67);
        for (int i = 0; i < 30; ++i) {
            const auto r1 = testutil::random_state(rng);
            const auto r2 = testutil::random_state(rng);
            const double alpha = rng.uniform();
            const auto blend = TwoQubitState::from_matrix(
                alpha * r1.matrix() + (1.0 - alpha) * r2.matrix());
            CHECK(chsh_value(blend, settings) ==
                  doctest::Approx(alpha * chsh_value(r1, settings) +
                                  (1.0 - alpha) * chsh_value(r2, settings))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("pure-target fidelity") {
    const auto psi_minus = TwoQubitState::singlet_state();
    CHECK(fidelity_pure(psi_minus, singlet()) == doctest::Approx(1.0));
    CHECK(fidelity_pure(TwoQubitState::maximally_mixed(), singlet()) ==
          doctest::Approx(0.25));

    SUBCASE("affine in the Werner weight") {
        SplitMix64 rng(71);
        for (int i = 0; i < 20; ++i) {
            const double c = rng.uniform();
            const auto w = source_model::apply_werner(psi_minus, c);
            CHECK(fidelity_pure(w, singlet()) ==
                  doctest::Approx((1.0 + 3.0 * c) / 4.0).epsilon(1e-13));
        }
    }

    CHECK_THROWS_AS((void)fidelity_pure(psi_minus, 0.5 * singlet()),
                    std::invalid_argument);
}

TEST_CASE("Uhlmann fidelity") {
    const auto psi_minus = TwoQubitState::singlet_state();
    const auto mixed = TwoQubitState::maximally_mixed();

    CHECK(fidelity_general(psi_minus, psi_minus) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const auto phi_plus =
        TwoQubitState::from_matrix(projector(bell_state(0)));
    CHECK(fidelity_general(psi_minus, phi_plus) ==
          doctest::Approx(0.0).epsilon(1e-7));

    SUBCASE("reduces to the square root of the pure-target overlap") {
        SplitMix64 rng(73);
        for (int i = 0; i < 20; ++i) {
            const auto rho = testutil::random_state(rng);
            const Vec4 psi = testutil::random_pure(rng);
            const auto pure = TwoQubitState::from_matrix(projector(psi));
            CHECK(fidelity_general(rho, pure) ==
                  doctest::Approx(std::sqrt(fidelity_pure(rho, psi)))
                      .epsilon(1e-9));
        }
    }

    SUBCASE("symmetric in its arguments") {
        SplitMix64 rng(79);
        for (int i = 0; i < 20; ++i) {
            const auto a = testutil::random_state(rng);
            const auto b = testutil::random_state(rng);
            CHECK(fidelity_general(a, b) ==
                  doctest::Approx(fidelity_general(b, a)).epsilon(1e-10));
        }
    }

    SUBCASE("known value against the maximally mixed state") {
        // F(rho, I/4) = sum_i sqrt(lambda_i / 4).
        SplitMix64 rng(83);
        const auto rho = testutil::random_state(rng);
        const auto ev = hermitian_eigenvalues(rho.matrix());
        double expected = 0.0;
        for (int i = 0; i < 4; ++i)
            expected += std::sqrt(std::max(0.0, ev(i)) / 4.0);
        CHECK(fidelity_general(rho, mixed) ==
              doctest::Approx(expected).epsilon(1e-12));
    }

    CHECK(fidelity_general_squared(mixed, psi_minus) ==
          doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("concurrence") {
    SUBCASE("Bell states are maximally entangled") {
        for (int which = 0; which < 4; ++which) {
            const auto bell =
                TwoQubitState::from_matrix(projector(bell_state(which)));
            CHECK(concurrence(bell) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("product pure states are separable") {
        SplitMix64 rng(89);
        for (int i = 0; i < 20; ++i) {
            Eigen::Vector2cd a, b;
            a << Complex{rng.normal(), rng.normal()},
                Complex{rng.normal(), rng.normal()};
            b << Complex{rng.normal(), rng.normal()},
                Complex{rng.normal(), rng.normal()};
            a.normalize();
            b.normalize();
            Vec4 prod;
            prod << a(0) * b(0), a(0) * b(1), a(1) * b(0), a(1) * b(1);
            const auto rho = TwoQubitState::from_matrix(projector(prod));
            CHECK(concurrence(rho) == doctest::Approx(0.0).epsilon(1e-7));
        }
    }
    SUBCASE("Werner value (3c - 1)/2") {
        const auto psi_minus = TwoQubitState::singlet_state();
        for (double c : {0.4, 0.6, 0.8, 0.95, 1.0}) {
            const auto w = source_model::apply_werner(psi_minus, c);
            CHECK(concurrence(w) ==
                  doctest::Approx((3.0 * c - 1.0) / 2.0).epsilon(1e-10));
        }
        // Below the separability threshold the concurrence clamps to zero.
        CHECK(concurrence(source_model::apply_werner(psi_minus, 0.2)) == 0.0);
    }
    SUBCASE("invariant under local unitaries") {
        SplitMix64 rng(97);
        for (int i = 0; i < 25; ++i) {
            const auto rho = testutil::random_state(rng);
            const double c0 = concurrence(rho);
            const Mat4 u = kron(testutil::random_su2(rng),
                                testutil::random_su2(rng));
            const auto rotated = TwoQubitState::from_matrix(
                u * rho.matrix() * u.adjoint());
            CHECK(concurrence(rotated) == doctest::Approx(c0).epsilon(1e-9));
        }
    }
}

TEST_CASE("Horodecki maximal violation") {
    const auto psi_minus = TwoQubitState::singlet_state();
    CHECK(horodecki_max(psi_minus) ==
          doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-13));

    Mat4 hh = Mat4::Zero();
    hh(0, 0) = 1.0;
    CHECK(horodecki_max(TwoQubitState::from_matrix(hh)) ==
          doctest::Approx(2.0).epsilon(1e-13));

    SUBCASE("Werner scaling") {
        for (double c : {0.3, 0.6, 0.9}) {
            const auto w = source_model::apply_werner(psi_minus, c);
            CHECK(horodecki_max(w) ==
                  doctest::Approx(2.0 * std::sqrt(2.0) * c).epsilon(1e-12));
        }
    }

    SUBCASE("correlation matrix of the singlet is minus the identity") {
        const Eigen::Matrix3d t = correlation_matrix(psi_minus);
        CHECK((t + Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <
              1e-13);
    }

    SUBCASE("dominates the CHSH value at any settings") {
        SplitMix64 rng(103);
        for (int i = 0; i < 10; ++i) {
            const auto rho = testutil::random_state(rng);
            const double bound = horodecki_max(rho);
            for (int k = 0; k < 100; ++k) {
                ObservablePair p;
                double b[3];
                testutil::random_bloch(rng, b);
                p.a0 = {b[0], b[1], b[2]};
                testutil::random_bloch(rng, b);
                p.a1 = {b[0], b[1], b[2]};
                testutil::random_bloch(rng, b);
                p.b0 = {b[0], b[1], b[2]};
                testutil::random_bloch(rng, b);
                p.b1 = {b[0], b[1], b[2]};
                CHECK(bound >= std::abs(chsh_value(rho, p)) - 1e-9);
            }
        }
    }
}

TEST_CASE("trace distance and purity") {
    const auto psi_minus = TwoQubitState::singlet_state();
    const auto mixed = TwoQubitState::maximally_mixed();

    CHECK(trace_distance(psi_minus, psi_minus) == 0.0);
    CHECK(purity(psi_minus) == doctest::Approx(1.0));
    CHECK(purity(mixed) == doctest::Approx(0.25));

    // Pure vs maximally mixed: eigenvalues {3/4, -1/4 x3}.
    CHECK(trace_distance(psi_minus, mixed) == doctest::Approx(0.75));

    // Orthogonal pure states are at distance one.
    const auto phi_plus = TwoQubitState::from_matrix(projector(bell_state(0)));
    CHECK(trace_distance(psi_minus, phi_plus) ==
          doctest::Approx(1.0).epsilon(1e-13));

    SUBCASE("diagonal states reduce to the classical statistical distance") {
        Mat4 da = Mat4::Zero();
        Mat4 db = Mat4::Zero();
        const double pa[4] = {0.4, 0.3, 0.2, 0.1};
        const double pb[4] = {0.1, 0.2, 0.3, 0.4};
        double classical = 0.0;
        for (int i = 0; i < 4; ++i) {
            da(i, i) = pa[i];
            db(i, i) = pb[i];
            classical += 0.5 * std::abs(pa[i] - pb[i]);
        }
        CHECK(trace_distance(TwoQubitState::from_matrix(da),
                             TwoQubitState::from_matrix(db)) ==
              doctest::Approx(classical).epsilon(1e-14));
    }
}

TEST_CASE("metrics reject states that violate positivity") {
    Mat4 bad = Mat4::Zero();
    bad(0, 0) = 0.5;
    bad(1, 1) = 0.5 + 2e-8;
    bad(2, 2) = -2e-8;
    CHECK_THROWS_AS((void)TwoQubitState::from_matrix(bad),
                    std::invalid_argument);

    // A tiny negative eigenvalue within tolerance is accepted and the
    // metrics still work.
    Mat4 borderline = Mat4::Zero();
    borderline(0, 0) = 0.5;
    borderline(1, 1) = 0.5 + 5e-10;
    borderline(2, 2) = -5e-10;
    const auto rho = TwoQubitState::from_matrix(borderline);
    CHECK(concurrence(rho) >= 0.0);
    CHECK(purity(rho) > 0.0);
}
