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

// Exercises the shared library through its public C surface only.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "qdsim.h"

namespace {

std::string take(char* s) {
    std::string out = s ? s : "";
    qdsim_string_free(s);
    return out;
}

struct Params {
    qdsim_params* p;
    Params() : p(qdsim_params_new()) {}
    ~Params() { qdsim_params_free(p); }
    void set(const char* key, const char* value) {
        REQUIRE(qdsim_params_set(p, key, value) == QDSIM_OK);
    }
};

struct State {
    qdsim_state* s = nullptr;
    ~State() { qdsim_state_free(s); }
};

struct Dataset {
    qdsim_dataset* d = nullptr;
    ~Dataset() { qdsim_dataset_free(d); }
};

} // namespace

TEST_CASE("version and status strings") {
    CHECK(std::string(qdsim_version()) == "0.1.0");
    CHECK(std::string(qdsim_status_name(QDSIM_OK)) == "ok");
    CHECK(std::string(qdsim_status_name(QDSIM_ERROR_DOMAIN)) ==
          "domain error");
}

TEST_CASE("photon statistics entry points") {
    double g2 = -1.0;
    CHECK(qdsim_g2_from_probabilities(0.0, 1.0, 0.0, &g2) == QDSIM_OK);
    CHECK(g2 == 0.0);

    CHECK(qdsim_g2_from_probabilities(1.0, 0.0, 0.0, &g2) ==
          QDSIM_ERROR_DOMAIN);

    double probs[3] = {0, 0, 0};
    CHECK(qdsim_g2_to_probabilities(0.016, 0.0, QDSIM_SCHEME_RF, probs) ==
          QDSIM_OK);
    CHECK(probs[0] == 0.0);
    CHECK(probs[2] == doctest::Approx(0.00813).epsilon(1e-3));

    double v = 0.0;
    CHECK(qdsim_corrected_visibility(0.904, 0.012, &v) == QDSIM_OK);
    CHECK(v == doctest::Approx(0.927).epsilon(1e-3));

    double rate = 0.0;
    CHECK(qdsim_expected_coincidence_rate(0.104, 0.57, 0.5, 0.35, 79e6,
                                          &rate) == QDSIM_OK);
    CHECK(std::abs(rate - 1000.0) < 100.0);

    CHECK(qdsim_hom_visibility_from_coincidence(0.25, &v) == QDSIM_OK);
    CHECK(v == doctest::Approx(0.5));

    double p = 0.0;
    CHECK(qdsim_dark_count_probability(1500.0, 1e-9, &p) == QDSIM_OK);
    CHECK(p == doctest::Approx(1.5e-6));

    CHECK(qdsim_g2_from_probabilities(0.0, 1.0, 0.0, nullptr) ==
          QDSIM_ERROR_INVALID_ARGUMENT);
}

TEST_CASE("parameter handles") {
    Params params;
    params.set("scheme", "RF");
    params.set("g2", "0.016");
    params.set("v", "0.949");
    params.set("eta", "0.00504");
    CHECK(qdsim_params_validate(params.p) == QDSIM_OK);

    SUBCASE("unknown keys name themselves in the error") {
        CHECK(qdsim_params_set(params.p, "bogus_key", "1") ==
              QDSIM_ERROR_INVALID_ARGUMENT);
        CHECK(std::string(qdsim_last_error()).find("bogus_key") !=
              std::string::npos);
    }

    SUBCASE("values can be read back") {
        char* text = nullptr;
        REQUIRE(qdsim_params_get(params.p, "v", &text) == QDSIM_OK);
        CHECK(std::stod(take(text)) == doctest::Approx(0.949));
    }

    SUBCASE("clones are independent") {
        qdsim_params* copy = qdsim_params_clone(params.p);
        REQUIRE(copy != nullptr);
        CHECK(qdsim_params_set(copy, "v", "0.5") == QDSIM_OK);
        char* text = nullptr;
        REQUIRE(qdsim_params_get(params.p, "v", &text) == QDSIM_OK);
        CHECK(std::stod(take(text)) == doctest::Approx(0.949));
        qdsim_params_free(copy);
    }

    SUBCASE("validation failures carry a diagnostic") {
        Params broken;
        broken.set("t1", "0.9"); // closure violated
        CHECK(qdsim_params_validate(broken.p) ==
              QDSIM_ERROR_INVALID_ARGUMENT);
    }
}

TEST_CASE("states and metrics through the C surface") {
    State singlet;
    REQUIRE(qdsim_state_singlet(&singlet.s) == QDSIM_OK);

    double s_signed = 0.0;
    CHECK(qdsim_chsh_canonical(singlet.s, &s_signed) == QDSIM_OK);
    CHECK(s_signed == doctest::Approx(-2.0 * std::sqrt(2.0)));

    double c = 0.0;
    CHECK(qdsim_concurrence(singlet.s, &c) == QDSIM_OK);
    CHECK(c == doctest::Approx(1.0));

    double b = 0.0;
    CHECK(qdsim_horodecki_max(singlet.s, &b) == QDSIM_OK);
    CHECK(b == doctest::Approx(2.0 * std::sqrt(2.0)));

    const double a0[3] = {0, 0, 1};
    const double a1[3] = {1, 0, 0};
    const double sq = 1.0 / std::sqrt(2.0);
    const double b0[3] = {sq, 0, sq};
    const double b1[3] = {-sq, 0, sq};
    double s_explicit = 0.0;
    CHECK(qdsim_chsh_value(singlet.s, a0, a1, b0, b1, &s_explicit) ==
          QDSIM_OK);
    CHECK(s_explicit == doctest::Approx(s_signed));

    double e = 0.0;
    CHECK(qdsim_correlator(singlet.s, a0, a0, &e) == QDSIM_OK);
    CHECK(e == doctest::Approx(-1.0));

    SUBCASE("JSON round trip") {
        char* json = nullptr;
        REQUIRE(qdsim_state_to_json(singlet.s, &json) == QDSIM_OK);
        const std::string text = take(json);
        State back;
        REQUIRE(qdsim_state_from_json(text.c_str(), &back.s) == QDSIM_OK);
        double re_a[16], im_a[16], re_b[16], im_b[16];
        REQUIRE(qdsim_state_elements(singlet.s, re_a, im_a) == QDSIM_OK);
        REQUIRE(qdsim_state_elements(back.s, re_b, im_b) == QDSIM_OK);
        CHECK(std::memcmp(re_a, re_b, sizeof re_a) == 0);
        CHECK(std::memcmp(im_a, im_b, sizeof im_a) == 0);
    }

    SUBCASE("raw element constructors validate") {
        double re[16] = {0};
        double im[16] = {0};
        re[0] = 0.7; // trace != 1
        State bad;
        CHECK(qdsim_state_from_elements(re, im, &bad.s) ==
              QDSIM_ERROR_INVALID_ARGUMENT);
    }

    SUBCASE("Werner mixing and fidelities") {
        State noisy;
        REQUIRE(qdsim_state_apply_werner(singlet.s, 0.95, &noisy.s) ==
                QDSIM_OK);
        double f = 0.0;
        const double psi_re[4] = {0, sq, -sq, 0};
        const double psi_im[4] = {0, 0, 0, 0};
        CHECK(qdsim_fidelity_pure(noisy.s, psi_re, psi_im, &f) == QDSIM_OK);
        CHECK(f == doctest::Approx((1.0 + 3.0 * 0.95) / 4.0));

        double froot = 0.0;
        double fsq = 0.0;
        CHECK(qdsim_fidelity(noisy.s, singlet.s, 0, &froot) == QDSIM_OK);
        CHECK(qdsim_fidelity(noisy.s, singlet.s, 1, &fsq) == QDSIM_OK);
        CHECK(fsq == doctest::Approx(froot * froot));

        double td = 0.0;
        CHECK(qdsim_trace_distance(noisy.s, singlet.s, &td) == QDSIM_OK);
        CHECK(td > 0.0);

        double purity = 0.0;
        CHECK(qdsim_purity(noisy.s, &purity) == QDSIM_OK);
        CHECK(purity < 1.0);
    }
}

TEST_CASE("model endpoints") {
    Params params;
    params.set("scheme", "LA");
    params.set("v", "0.927");
    params.set("g2", "0.012");
    params.set("brightness", "1");
    params.set("eta", "0.00829");
    params.set("c_wn", "0.95");

    State rho;
    REQUIRE(qdsim_model_build_state(params.p, &rho.s) == QDSIM_OK);

    double s_closed = 0.0;
    double s_numeric = 0.0;
    REQUIRE(qdsim_model_chsh(params.p, &s_closed) == QDSIM_OK);
    REQUIRE(qdsim_chsh_canonical(rho.s, &s_numeric) == QDSIM_OK);
    CHECK(s_closed == doctest::Approx(std::abs(s_numeric)).epsilon(1e-10));

    double f = 0.0;
    REQUIRE(qdsim_model_fidelity(params.p, &f) == QDSIM_OK);
    CHECK(f > 0.9);

    double s_wn = 0.0;
    REQUIRE(qdsim_model_chsh_werner(params.p, &s_wn) == QDSIM_OK);
    CHECK(s_wn == doctest::Approx(0.95 * s_closed));

    double f_wn = 0.0;
    REQUIRE(qdsim_model_fidelity_werner(params.p, &f_wn) == QDSIM_OK);
    CHECK(f_wn == doctest::Approx(0.95 * f + 0.05 / 4.0).epsilon(1e-12));

    SUBCASE("reports are deterministic") {
        char* a = nullptr;
        char* b = nullptr;
        REQUIRE(qdsim_model_report_json(params.p, &a) == QDSIM_OK);
        REQUIRE(qdsim_model_report_json(params.p, &b) == QDSIM_OK);
        CHECK(take(a) == take(b));
    }

    SUBCASE("closed forms require balanced beam splitters") {
        params.set("t1", "0.8");
        params.set("r1", "0.6");
        double out = 0.0;
        CHECK(qdsim_model_chsh(params.p, &out) == QDSIM_ERROR_DOMAIN);
    }

    SUBCASE("oracle comparison and its corruption hook") {
        int ok = -1;
        char* json = nullptr;
        REQUIRE(qdsim_oracle_compare_json(params.p, 1e-8, 0.0, &ok, &json) ==
                QDSIM_OK);
        CHECK(ok == 1);
        CHECK(take(json).find("delta_rho_exp") != std::string::npos);

        REQUIRE(qdsim_oracle_compare_json(params.p, 1e-8, 0.05, &ok,
                                          nullptr) == QDSIM_OK);
        CHECK(ok == 0);
    }

    SUBCASE("sweeps") {
        qdsim_sweep_axis axis{"g2", 0.001, 0.03, 4};
        char* csv = nullptr;
        REQUIRE(qdsim_sweep_csv(params.p, &axis, 1, 2, &csv) == QDSIM_OK);
        const std::string text = take(csv);
        CHECK(text.rfind("g2,", 0) == 0);
        CHECK(std::count(text.begin(), text.end(), '\n') == 5);

        qdsim_sweep_axis bad{"t1", 0.5, 0.9, 3};
        CHECK(qdsim_sweep_csv(params.p, &bad, 1, 1, &csv) ==
              QDSIM_ERROR_INVALID_ARGUMENT);
    }
}

TEST_CASE("tomography endpoints") {
    State singlet;
    REQUIRE(qdsim_state_singlet(&singlet.s) == QDSIM_OK);

    Dataset ds;
    REQUIRE(qdsim_tomo_sample(singlet.s, 2000, 7, &ds.d) == QDSIM_OK);

    SUBCASE("text round trip") {
        char* text = nullptr;
        REQUIRE(qdsim_dataset_to_string(ds.d, &text) == QDSIM_OK);
        const std::string payload = take(text);
        CHECK(payload.rfind("# shots=2000 seed=7", 0) == 0);

        Dataset back;
        REQUIRE(qdsim_dataset_from_string(payload.c_str(), &back.d) ==
                QDSIM_OK);
        char* text2 = nullptr;
        REQUIRE(qdsim_dataset_to_string(back.d, &text2) == QDSIM_OK);
        CHECK(take(text2) == payload);

        Dataset broken;
        CHECK(qdsim_dataset_from_string("garbage", &broken.d) ==
              QDSIM_ERROR_INVALID_ARGUMENT);
    }

    SUBCASE("linear inversion and MLE") {
        double re[16], im[16];
        REQUIRE(qdsim_linear_inversion(ds.d, re, im) == QDSIM_OK);
        double trace = re[0] + re[5] + re[10] + re[15];
        CHECK(trace == doctest::Approx(1.0).epsilon(1e-12));

        qdsim_mle_result diag{};
        State estimate;
        REQUIRE(qdsim_mle_reconstruct(ds.d, nullptr, &estimate.s, &diag) ==
                QDSIM_OK);
        CHECK(diag.monotone == 1);

        double td = 0.0;
        REQUIRE(qdsim_trace_distance(estimate.s, singlet.s, &td) == QDSIM_OK);
        CHECK(td < 0.1);

        qdsim_mle_options opts{50000, 1e-10, 1};
        State poisson_estimate;
        REQUIRE(qdsim_mle_reconstruct(ds.d, &opts, &poisson_estimate.s,
                                      nullptr) == QDSIM_OK);
        double td2 = 0.0;
        REQUIRE(qdsim_trace_distance(poisson_estimate.s, estimate.s, &td2) ==
                QDSIM_OK);
        CHECK(td2 < 0.01); // same maximizer up to optimizer wiggle
    }

    SUBCASE("noiseless expected counts") {
        Dataset exact;
        REQUIRE(qdsim_tomo_expected(singlet.s, 1000, &exact.d) == QDSIM_OK);
        State estimate;
        REQUIRE(qdsim_mle_reconstruct(exact.d, nullptr, &estimate.s,
                                      nullptr) == QDSIM_OK);
        double td = 0.0;
        REQUIRE(qdsim_trace_distance(estimate.s, singlet.s, &td) == QDSIM_OK);
        CHECK(td < 1e-3);
    }

    SUBCASE("file IO errors surface as IO status") {
        CHECK(qdsim_dataset_save(ds.d, "/nonexistent_dir/x.txt") ==
              QDSIM_ERROR_IO);
        Dataset missing;
        CHECK(qdsim_dataset_load("/nonexistent_dir/x.txt", &missing.d) ==
              QDSIM_ERROR_IO);
    }
}
