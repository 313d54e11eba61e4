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
#include <cstring>
#include <stdexcept>

#include "qdsim/ent_metrics.hpp"
#include "qdsim/fock.hpp"
#include "qdsim/photon_stats.hpp"
#include "qdsim/rng.hpp"
#include "qdsim/source_model.hpp"
#include "test_util.hpp"

using namespace qdsim;
using namespace qdsim::source_model;

namespace {

fock::ComponentParams oracle_params(const SourceParams& p) {
    return fock::ComponentParams{p.t1, p.r1,  p.t2, p.r2,
                                 p.v,  p.v_l, p.q,  p.chi};
}

SourceParams suppl_table_la() {
    SourceParams p;
    p.scheme = photon_stats::Scheme::LA;
    p.v = 0.927;
    p.eta = 0.00829;
    p.c_wn = 0.95;
    p.probs = photon_stats::g2_to_probabilities(0.012, 1.0,
                                                photon_stats::Scheme::LA);
    return p;
}

} // namespace

TEST_CASE("parameter validation") {
    SourceParams p;
    CHECK_NOTHROW(p.validate());
    CHECK(p.balanced());

    SUBCASE("beam splitter closure") {
        p.t1 = 0.9;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
    SUBCASE("LA pins q at one") {
        p.q = 0.9;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p.scheme = photon_stats::Scheme::RF;
        CHECK_NOTHROW(p.validate());
    }
    SUBCASE("eta is an open interval") {
        p.eta = 0.0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
        p.eta = 1.0;
        CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    }
}

TEST_CASE("component matrices") {
    SUBCASE("ideal parameters give the singlet pattern") {
        SourceParams p;
        const auto m = component_matrices(p);
        const Mat4 singlet_rho = projector(singlet());
        // rho11 at ideal parameters is (1/8) |psi-><psi-|.
        CHECK(max_abs_diff(m.rho11, 0.125 * singlet_rho) < 1e-15);
    }
    SUBCASE("zero overlap removes the coherences") {
        SourceParams p;
        p.v = 0.0;
        p.scheme = photon_stats::Scheme::RF;
        p.q = 0.8;
        const auto m = component_matrices(p);
        CHECK(std::abs(m.rho11(1, 2)) == 0.0);
        // rho11 carries q^2 against the q of rho12_2, same pattern.
        CHECK(max_abs_diff(m.rho11, p.q * m.rho12_2) < 1e-15);
    }
    SUBCASE("matches the brute-force engine on random draws") {
        SplitMix64 rng(101);
        for (int i = 0; i < 50; ++i) {
            const SourceParams p = testutil::random_params(rng, false);
            const auto m = component_matrices(p);
            const auto op = oracle_params(p);
            using fock::ComponentKind;
            CHECK(max_abs_diff(m.rho11, fock::derive_component(
                                            ComponentKind::Rho11, op)) <
                  1e-12);
            CHECK(max_abs_diff(m.rho12_2, fock::derive_component(
                                              ComponentKind::Rho12_2, op)) <
                  1e-12);
            CHECK(max_abs_diff(m.rho02, fock::derive_component(
                                            ComponentKind::Rho02, op)) <
                  1e-12);
            CHECK(max_abs_diff(m.rho_l, fock::derive_component(
                                            ComponentKind::Rho22_4, op)) <
                  1e-12);
        }
    }
}

TEST_CASE("mixture coefficients") {
    SUBCASE("noiseless source keeps only the signal weight") {
        SourceParams p;
        p.probs = {0.2, 0.8, 0.0};
        p.eta = 0.01;
        const auto c = mixture_coefficients(p);
        CHECK(c.c11 == doctest::Approx(0.64 * 1e-4).epsilon(1e-12));
        CHECK(c.c12 == 0.0);
        CHECK(c.c02 == 0.0);
        CHECK(c.c_l == 0.0);
    }
    SUBCASE("lossless limit removes the loss-gated terms") {
        SourceParams p;
        p.probs = {0.3, 0.6, 0.1};
        p.eta = 1.0 - 1e-13;
        const auto c = mixture_coefficients(p);
        CHECK(c.c11 == doctest::Approx(0.36).epsilon(1e-9));
        CHECK(c.c12 == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(c.c02 == doctest::Approx(0.03).epsilon(1e-9));
        CHECK(c.c_l == doctest::Approx(0.0).epsilon(1e-9));
    }
    SUBCASE("polynomial identity against an expanded evaluation") {
        SplitMix64 rng(7);
        for (int i = 0; i < 100; ++i) {
            const SourceParams p = testutil::random_params(rng, true);
            const auto c = mixture_coefficients(p);
            const double e = p.eta;
            const double l = 1.0 - e;
            const double p0 = p.probs.p0;
            const double p1 = p.probs.p1;
            const double p2 = p.probs.p2;
            // Expanded monomial-by-monomial evaluation.
            const double c11 = p1 * p1 * e * e + p1 * p2 * e * e -
                               p1 * p2 * e * e * e + p2 * p2 * e * e -
                               2.0 * p2 * p2 * e * e * e +
                               p2 * p2 * e * e * e * e;
            CHECK(c.c11 == doctest::Approx(c11).epsilon(1e-13));
            CHECK(c.c12 ==
                  doctest::Approx(p1 * p2 * e * e * l +
                                  p2 * p2 * e * e * l * l)
                      .epsilon(1e-13));
            CHECK(c.c02 ==
                  doctest::Approx(p0 * p2 * e * e + p1 * p2 * e * e * l +
                                  p2 * p2 * e * e * l * l)
                      .epsilon(1e-13));
            CHECK(c.c_l ==
                  doctest::Approx(p2 * p2 * e * e * l * l).epsilon(1e-13));
            CHECK(c.c11 >= 0.0);
            CHECK(c.c12 >= 0.0);
            CHECK(c.c02 >= 0.0);
            CHECK(c.c_l >= 0.0);
        }
    }
}

TEST_CASE("normalization constant at balanced splitters") {
    SplitMix64 rng(13);
    for (int i = 0; i < 100; ++i) {
        const SourceParams p = testutil::random_params(rng, true);
        const double e2 = p.eta * p.eta;
        const double l = 1.0 - p.eta;
        const double q = p.q;
        const double p0 = p.probs.p0;
        const double p1 = p.probs.p1;
        const double p2 = p.probs.p2;
        const double bracket =
            q * q * p1 * p1 + q * p2 * (2.0 * p0 + p1 * l * (3.0 + q)) +
            p2 * p2 * l * l * (1.0 + q * (3.0 + q));
        CHECK(mixture_trace(p) ==
              doctest::Approx(e2 / 8.0 * bracket).epsilon(1e-12));
    }
}

TEST_CASE("build_rho_exp") {
    SUBCASE("ideal parameters give the singlet exactly") {
        SourceParams p;
        const auto rho = build_rho_exp(p);
        CHECK(ent_metrics::trace_distance(rho, TwoQubitState::singlet_state()) <
              1e-12);
    }
    SUBCASE("table parameters give a physical state") {
        const auto rho = build_rho_exp(suppl_table_la());
        CHECK(std::abs(rho.matrix().trace().real() - 1.0) < 1e-12);
        CHECK(ent_metrics::purity(rho) > 0.8);
    }
    SUBCASE("state invariants hold for 1000 random draws") {
        SplitMix64 rng(19);
        for (int i = 0; i < 1000; ++i) {
            const SourceParams p = testutil::random_params(rng, i % 2 == 0);
            const auto rho = build_rho_exp(p); // construction validates
            CHECK(hermiticity_defect(rho.matrix()) < 1e-12);
        }
    }
    SUBCASE("matches the brute-force composition") {
        SplitMix64 rng(29);
        for (int i = 0; i < 25; ++i) {
            const SourceParams p = testutil::random_params(rng, false);
            const Mat4 oracle = fock::oracle_rho_exp(
                oracle_params(p), p.probs.p0, p.probs.p1, p.probs.p2, p.eta);
            CHECK(max_abs_diff(build_rho_exp(p).matrix(), oracle) < 1e-10);
        }
    }
    SUBCASE("RF at q = 1 is bitwise identical to LA") {
        SplitMix64 rng(31);
        for (int i = 0; i < 20; ++i) {
            SourceParams p = testutil::random_params(rng, i % 2 == 0);
            p.scheme = photon_stats::Scheme::LA;
            p.q = 1.0;
            const Mat4 la = build_rho_exp(p).matrix();
            p.scheme = photon_stats::Scheme::RF;
            const Mat4 rf = build_rho_exp(p).matrix();
            CHECK(std::memcmp(la.data(), rf.data(), sizeof(Complex) * 16) ==
                  0);
        }
    }
    SUBCASE("no multiphoton component means empty HH and VV populations") {
        SplitMix64 rng(37);
        for (int i = 0; i < 20; ++i) {
            SourceParams p = testutil::random_params(rng, false);
            p.probs.p0 = 1.0 - p.probs.p1;
            p.probs.p2 = 0.0;
            const auto rho = build_rho_exp(p);
            CHECK(std::abs(rho(0, 0)) == 0.0);
            CHECK(std::abs(rho(3, 3)) == 0.0);
        }
    }
    SUBCASE("degenerate probabilities are rejected") {
        SourceParams p;
        p.probs = {1.0, 0.0, 0.0};
        CHECK_THROWS_AS((void)build_rho_exp(p), std::domain_error);
    }
}

TEST_CASE("Werner extension") {
    const auto singlet_state = TwoQubitState::singlet_state();
    SUBCASE("identity and fully mixed limits") {
        CHECK(ent_metrics::trace_distance(apply_werner(singlet_state, 1.0),
                                          singlet_state) == 0.0);
        CHECK(ent_metrics::trace_distance(apply_werner(singlet_state, 0.0),
                                          TwoQubitState::maximally_mixed()) <
              1e-15);
    }
    SUBCASE("werner state of the singlet") {
        const auto w = apply_werner(singlet_state, 0.95);
        CHECK(ent_metrics::fidelity_pure(w, singlet()) ==
              doctest::Approx((1.0 + 3.0 * 0.95) / 4.0).epsilon(1e-14));
    }
}

TEST_CASE("closed-form CHSH") {
    SUBCASE("ideal parameters saturate the quantum bound") {
        SourceParams p;
        CHECK(model_chsh(p) ==
              doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
    }
    SUBCASE("pure-signal source scales with 1 + v") {
        SplitMix64 rng(41);
        for (int i = 0; i < 20; ++i) {
            SourceParams p;
            p.v = rng.uniform();
            p.probs = {0.3, 0.7, 0.0};
            CHECK(model_chsh(p) ==
                  doctest::Approx(std::sqrt(2.0) * (1.0 + p.v))
                      .epsilon(1e-13));
        }
    }
    SUBCASE("agrees with the trace-based evaluation") {
        SplitMix64 rng(43);
        const auto settings = ent_metrics::canonical_chsh_settings();
        for (int i = 0; i < 200; ++i) {
            const SourceParams p = testutil::random_params(rng, true);
            const double closed = model_chsh(p);
            const double numeric =
                std::abs(ent_metrics::chsh_value(build_rho_exp(p), settings));
            CHECK(closed == doctest::Approx(numeric).epsilon(1e-10));
        }
    }
    SUBCASE("unbalanced splitters are routed to the numeric path") {
        SourceParams p;
        p.t1 = 0.8;
        p.r1 = 0.6;
        CHECK_THROWS_AS((void)model_chsh(p), std::domain_error);
    }
}

TEST_CASE("closed-form fidelity") {
    SUBCASE("ideal parameters reach unity") {
        SourceParams p;
        CHECK(model_fidelity(p) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("dephased signal source gives one half") {
        SourceParams p;
        p.v = 0.0;
        p.probs = {0.0, 1.0, 0.0};
        CHECK(model_fidelity(p) == doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("agrees with the singlet overlap of the built state") {
        SplitMix64 rng(47);
        for (int i = 0; i < 200; ++i) {
            const SourceParams p = testutil::random_params(rng, true);
            const double closed = model_fidelity(p);
            const double numeric =
                ent_metrics::fidelity_pure(build_rho_exp(p), singlet());
            CHECK(closed == doctest::Approx(numeric).epsilon(1e-10));
        }
    }
}

TEST_CASE("Werner closed forms") {
    SUBCASE("c_wn = 1 reduces to the plain model") {
        SourceParams p = suppl_table_la();
        p.c_wn = 1.0;
        CHECK(model_chsh_werner(p) == model_chsh(p));
        CHECK(model_fidelity_werner(p) ==
              doctest::Approx(model_fidelity(p)).epsilon(1e-15));
    }
    SUBCASE("c_wn = 0 is white noise") {
        SourceParams p;
        p.c_wn = 0.0;
        CHECK(model_chsh_werner(p) == 0.0);
        CHECK(model_fidelity_werner(p) == doctest::Approx(0.25).epsilon(1e-14));
    }
    SUBCASE("expanded form equals the affine relation") {
        SplitMix64 rng(53);
        for (int i = 0; i < 200; ++i) {
            const SourceParams p = testutil::random_params(rng, true);
            const double affine =
                p.c_wn * model_fidelity(p) + (1.0 - p.c_wn) / 4.0;
            CHECK(model_fidelity_werner(p) ==
                  doctest::Approx(affine).epsilon(1e-14));
        }
    }
    SUBCASE("matches the numeric evaluation on the Werner state") {
        SplitMix64 rng(59);
        const auto settings = ent_metrics::canonical_chsh_settings();
        for (int i = 0; i < 100; ++i) {
            const SourceParams p = testutil::random_params(rng, true);
            const auto rho_wn = apply_werner(build_rho_exp(p), p.c_wn);
            CHECK(model_chsh_werner(p) ==
                  doctest::Approx(
                      std::abs(ent_metrics::chsh_value(rho_wn, settings)))
                      .epsilon(1e-10));
            CHECK(model_fidelity_werner(p) ==
                  doctest::Approx(
                      ent_metrics::fidelity_pure(rho_wn, singlet()))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("state JSON serialization") {
    const auto rho = build_rho_exp(suppl_table_la());
    const std::string text = rho.to_json();
    const auto back = TwoQubitState::from_json(text);
    CHECK(max_abs_diff(rho.matrix(), back.matrix()) == 0.0);

    CHECK_THROWS_AS((void)TwoQubitState::from_json("{"),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)TwoQubitState::from_json("{\"re\": []}"),
                    std::invalid_argument);
}

TEST_CASE("state validation rejects unphysical matrices") {
    Mat4 bad = 0.25 * Mat4::Identity();
    bad(0, 1) = Complex{0.1, 0.0};
    CHECK_THROWS_AS((void)TwoQubitState::from_matrix(bad),
                    std::invalid_argument);

    Mat4 wrong_trace = 0.3 * Mat4::Identity();
    CHECK_THROWS_AS((void)TwoQubitState::from_matrix(wrong_trace),
                    std::invalid_argument);

    Mat4 negative = Mat4::Zero();
    negative(0, 0) = 0.6;
    negative(1, 1) = 0.5;
    negative(2, 2) = -0.1;
    CHECK_THROWS_AS((void)TwoQubitState::from_matrix(negative),
                    std::invalid_argument);
}
