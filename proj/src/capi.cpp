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

#include "qdsim.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "qdsim/ent_metrics.hpp"
#include "qdsim/photon_stats.hpp"
#include "qdsim/report.hpp"
#include "qdsim/source_model.hpp"
#include "qdsim/state.hpp"
#include "qdsim/tomography.hpp"

using qdsim::Complex;
using qdsim::Mat4;
using qdsim::TwoQubitState;
using qdsim::Vec4;

struct qdsim_params {
    qdsim::report::ModelConfig config;
};

struct qdsim_state {
    TwoQubitState state;
};

struct qdsim_dataset {
    qdsim::tomography::TomographyDataset dataset;
};

namespace {

thread_local std::string t_last_error = "no error";

void set_error(const char* what) { t_last_error = what ? what : "error"; }

char* dup_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

// Runs a callable, translating C++ exceptions into status codes.
template <typename Fn>
qdsim_status guarded(Fn&& fn) {
    try {
        fn();
        return QDSIM_OK;
    } catch (const std::invalid_argument& e) {
        set_error(e.what());
        return QDSIM_ERROR_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        set_error(e.what());
        return QDSIM_ERROR_DOMAIN;
    } catch (const std::out_of_range& e) {
        set_error(e.what());
        return QDSIM_ERROR_INVALID_ARGUMENT;
    } catch (const std::runtime_error& e) {
        set_error(e.what());
        return QDSIM_ERROR_NUMERIC;
    } catch (const std::bad_alloc&) {
        set_error("out of memory");
        return QDSIM_ERROR_INTERNAL;
    } catch (const std::exception& e) {
        set_error(e.what());
        return QDSIM_ERROR_INTERNAL;
    }
}

qdsim_status require(bool ok, const char* message) {
    if (ok) return QDSIM_OK;
    set_error(message);
    return QDSIM_ERROR_INVALID_ARGUMENT;
}

Mat4 matrix_from_buffers(const double re[16], const double im[16]) {
    Mat4 m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = Complex{re[4 * i + j], im[4 * i + j]};
    return m;
}

void matrix_to_buffers(const Mat4& m, double re[16], double im[16]) {
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            re[4 * i + j] = m(i, j).real();
            im[4 * i + j] = m(i, j).imag();
        }
    }
}

} // namespace

extern "C" {

const char* qdsim_version(void) { return "0.1.0"; }

const char* qdsim_status_name(qdsim_status status) {
    switch (status) {
        case QDSIM_OK: return "ok";
        case QDSIM_ERROR_INVALID_ARGUMENT: return "invalid argument";
        case QDSIM_ERROR_DOMAIN: return "domain error";
        case QDSIM_ERROR_PARSE: return "parse error";
        case QDSIM_ERROR_IO: return "io error";
        case QDSIM_ERROR_NUMERIC: return "numeric error";
        case QDSIM_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qdsim_last_error(void) { return t_last_error.c_str(); }

void qdsim_string_free(char* s) { delete[] s; }

/* ---------------- photon-number statistics ---------------- */

qdsim_status qdsim_g2_from_probabilities(double p0, double p1, double p2,
                                         double* g2_out) {
    if (auto st = require(g2_out != nullptr, "g2_out is NULL")) return st;
    return guarded([&] {
        qdsim::photon_stats::EmissionProbabilities p{p0, p1, p2};
        *g2_out = qdsim::photon_stats::g2_from_probabilities(p);
    });
}

qdsim_status qdsim_g2_to_probabilities(double g2, double brightness,
                                       qdsim_scheme scheme,
                                       double probs_out[3]) {
    if (auto st = require(probs_out != nullptr, "probs_out is NULL"))
        return st;
    return guarded([&] {
        const auto s = scheme == QDSIM_SCHEME_RF
                           ? qdsim::photon_stats::Scheme::RF
                           : qdsim::photon_stats::Scheme::LA;
        const auto p =
            qdsim::photon_stats::g2_to_probabilities(g2, brightness, s);
        probs_out[0] = p.p0;
        probs_out[1] = p.p1;
        probs_out[2] = p.p2;
    });
}

qdsim_status qdsim_hom_visibility_from_coincidence(double p_cc,
                                                   double* v_out) {
    if (auto st = require(v_out != nullptr, "v_out is NULL")) return st;
    return guarded([&] {
        *v_out = qdsim::photon_stats::hom_visibility_from_coincidence(p_cc);
    });
}

qdsim_status qdsim_measured_visibility_model(double reflectivity,
                                             double transmissivity,
                                             double v_sn, double g2,
                                             double v_true, double* v_m_out) {
    if (auto st = require(v_m_out != nullptr, "v_m_out is NULL")) return st;
    return guarded([&] {
        qdsim::photon_stats::HomMeasurement m;
        m.reflectivity = reflectivity;
        m.transmissivity = transmissivity;
        m.v_sn = v_sn;
        m.g2 = g2;
        *v_m_out = qdsim::photon_stats::measured_visibility_model(m, v_true);
    });
}

qdsim_status qdsim_corrected_visibility(double v_m, double g2,
                                        double* v_out) {
    if (auto st = require(v_out != nullptr, "v_out is NULL")) return st;
    return guarded(
        [&] { *v_out = qdsim::photon_stats::corrected_visibility(v_m, g2); });
}

qdsim_status qdsim_expected_coincidence_rate(double eta_qdsps, double eta_fl,
                                             double eta_mzi, double eta_d,
                                             double pump_rate_hz,
                                             double* rate_hz_out) {
    if (auto st = require(rate_hz_out != nullptr, "rate_hz_out is NULL"))
        return st;
    return guarded([&] {
        qdsim::photon_stats::RateBudget b{eta_qdsps, eta_fl, eta_mzi, eta_d,
                                          pump_rate_hz};
        *rate_hz_out = qdsim::photon_stats::expected_coincidence_rate(b);
    });
}

qdsim_status qdsim_dark_count_probability(double dark_rate_hz,
                                          double window_s, double* p_out) {
    if (auto st = require(p_out != nullptr, "p_out is NULL")) return st;
    return guarded([&] {
        *p_out =
            qdsim::photon_stats::dark_count_probability(dark_rate_hz,
                                                        window_s);
    });
}

/* ---------------- model parameters ---------------- */

qdsim_params* qdsim_params_new(void) {
    return new (std::nothrow) qdsim_params{};
}

qdsim_params* qdsim_params_clone(const qdsim_params* params) {
    if (!params) return nullptr;
    return new (std::nothrow) qdsim_params{*params};
}

void qdsim_params_free(qdsim_params* params) { delete params; }

qdsim_status qdsim_params_set(qdsim_params* params, const char* key,
                              const char* value) {
    if (auto st = require(params && key && value,
                          "params, key and value must be non-NULL"))
        return st;
    return guarded([&] { params->config.set(key, value); });
}

qdsim_status qdsim_params_get(const qdsim_params* params, const char* key,
                              char** value_out) {
    if (auto st = require(params && key && value_out,
                          "params, key and value_out must be non-NULL"))
        return st;
    return guarded([&] { *value_out = dup_string(params->config.get(key)); });
}

qdsim_status qdsim_params_validate(const qdsim_params* params) {
    if (auto st = require(params != nullptr, "params is NULL")) return st;
    return guarded([&] { (void)params->config.materialize(); });
}

/* ---------------- two-qubit states ---------------- */

void qdsim_state_free(qdsim_state* state) { delete state; }

qdsim_state* qdsim_state_clone(const qdsim_state* state) {
    if (!state) return nullptr;
    return new (std::nothrow) qdsim_state{*state};
}

qdsim_status qdsim_state_singlet(qdsim_state** state_out) {
    if (auto st = require(state_out != nullptr, "state_out is NULL"))
        return st;
    return guarded(
        [&] { *state_out = new qdsim_state{TwoQubitState::singlet_state()}; });
}

qdsim_status qdsim_state_maximally_mixed(qdsim_state** state_out) {
    if (auto st = require(state_out != nullptr, "state_out is NULL"))
        return st;
    return guarded([&] {
        *state_out = new qdsim_state{TwoQubitState::maximally_mixed()};
    });
}

qdsim_status qdsim_state_from_elements(const double re[16],
                                       const double im[16],
                                       qdsim_state** state_out) {
    if (auto st = require(re && im && state_out,
                          "re, im and state_out must be non-NULL"))
        return st;
    return guarded([&] {
        *state_out = new qdsim_state{
            TwoQubitState::from_matrix(matrix_from_buffers(re, im))};
    });
}

qdsim_status qdsim_state_elements(const qdsim_state* state, double re[16],
                                  double im[16]) {
    if (auto st = require(state && re && im,
                          "state, re and im must be non-NULL"))
        return st;
    matrix_to_buffers(state->state.matrix(), re, im);
    return QDSIM_OK;
}

qdsim_status qdsim_state_to_json(const qdsim_state* state, char** json_out) {
    if (auto st = require(state && json_out,
                          "state and json_out must be non-NULL"))
        return st;
    return guarded([&] { *json_out = dup_string(state->state.to_json()); });
}

qdsim_status qdsim_state_from_json(const char* json,
                                   qdsim_state** state_out) {
    if (auto st = require(json && state_out,
                          "json and state_out must be non-NULL"))
        return st;
    return guarded([&] {
        *state_out = new qdsim_state{TwoQubitState::from_json(json)};
    });
}

qdsim_status qdsim_state_apply_werner(const qdsim_state* state, double c_wn,
                                      qdsim_state** state_out) {
    if (auto st = require(state && state_out,
                          "state and state_out must be non-NULL"))
        return st;
    return guarded([&] {
        *state_out = new qdsim_state{
            qdsim::source_model::apply_werner(state->state, c_wn)};
    });
}

/* ---------------- source model ---------------- */

qdsim_status qdsim_model_build_state(const qdsim_params* params,
                                     qdsim_state** state_out) {
    if (auto st = require(params && state_out,
                          "params and state_out must be non-NULL"))
        return st;
    return guarded([&] {
        const auto p = params->config.materialize();
        *state_out = new qdsim_state{qdsim::source_model::build_rho_exp(p)};
    });
}

qdsim_status qdsim_model_chsh(const qdsim_params* params, double* s_out) {
    if (auto st = require(params && s_out,
                          "params and s_out must be non-NULL"))
        return st;
    return guarded([&] {
        *s_out = qdsim::source_model::model_chsh(params->config.materialize());
    });
}

qdsim_status qdsim_model_fidelity(const qdsim_params* params, double* f_out) {
    if (auto st = require(params && f_out,
                          "params and f_out must be non-NULL"))
        return st;
    return guarded([&] {
        *f_out =
            qdsim::source_model::model_fidelity(params->config.materialize());
    });
}

qdsim_status qdsim_model_chsh_werner(const qdsim_params* params,
                                     double* s_out) {
    if (auto st = require(params && s_out,
                          "params and s_out must be non-NULL"))
        return st;
    return guarded([&] {
        *s_out = qdsim::source_model::model_chsh_werner(
            params->config.materialize());
    });
}

qdsim_status qdsim_model_fidelity_werner(const qdsim_params* params,
                                         double* f_out) {
    if (auto st = require(params && f_out,
                          "params and f_out must be non-NULL"))
        return st;
    return guarded([&] {
        *f_out = qdsim::source_model::model_fidelity_werner(
            params->config.materialize());
    });
}

qdsim_status qdsim_model_report_json(const qdsim_params* params,
                                     char** json_out) {
    if (auto st = require(params && json_out,
                          "params and json_out must be non-NULL"))
        return st;
    return guarded([&] {
        *json_out =
            dup_string(qdsim::report::model_report_json(params->config));
    });
}

qdsim_status qdsim_oracle_compare_json(const qdsim_params* params,
                                       double tolerance, double corrupt_v,
                                       int* ok_out, char** json_out) {
    if (auto st = require(params && ok_out,
                          "params and ok_out must be non-NULL"))
        return st;
    return guarded([&] {
        const auto r = qdsim::report::oracle_compare(params->config,
                                                     tolerance, corrupt_v);
        *ok_out = r.ok ? 1 : 0;
        if (json_out) *json_out = dup_string(r.to_json());
    });
}

/* ---------------- entanglement metrics ---------------- */

namespace {

qdsim::ent_metrics::Bloch to_bloch(const double b[3]) {
    return qdsim::ent_metrics::Bloch{b[0], b[1], b[2]};
}

} // namespace

qdsim_status qdsim_correlator(const qdsim_state* state,
                              const double bloch_a[3], const double bloch_b[3],
                              double* out) {
    if (auto st = require(state && bloch_a && bloch_b && out,
                          "state, bloch vectors and out must be non-NULL"))
        return st;
    return guarded([&] {
        *out = qdsim::ent_metrics::correlator(state->state, to_bloch(bloch_a),
                                              to_bloch(bloch_b));
    });
}

qdsim_status qdsim_chsh_value(const qdsim_state* state, const double a0[3],
                              const double a1[3], const double b0[3],
                              const double b1[3], double* s_out) {
    if (auto st = require(state && a0 && a1 && b0 && b1 && s_out,
                          "state, settings and s_out must be non-NULL"))
        return st;
    return guarded([&] {
        qdsim::ent_metrics::ObservablePair pair{to_bloch(a0), to_bloch(a1),
                                                to_bloch(b0), to_bloch(b1)};
        *s_out = qdsim::ent_metrics::chsh_value(state->state, pair);
    });
}

qdsim_status qdsim_chsh_canonical(const qdsim_state* state, double* s_out) {
    if (auto st = require(state && s_out,
                          "state and s_out must be non-NULL"))
        return st;
    return guarded([&] {
        *s_out = qdsim::ent_metrics::chsh_value(
            state->state, qdsim::ent_metrics::canonical_chsh_settings());
    });
}

qdsim_status qdsim_fidelity_pure(const qdsim_state* state,
                                 const double psi_re[4],
                                 const double psi_im[4], double* f_out) {
    if (auto st = require(state && psi_re && psi_im && f_out,
                          "state, psi buffers and f_out must be non-NULL"))
        return st;
    return guarded([&] {
        Vec4 psi;
        for (int i = 0; i < 4; ++i) psi(i) = Complex{psi_re[i], psi_im[i]};
        *f_out = qdsim::ent_metrics::fidelity_pure(state->state, psi);
    });
}

qdsim_status qdsim_fidelity(const qdsim_state* a, const qdsim_state* b,
                            int squared, double* f_out) {
    if (auto st = require(a && b && f_out,
                          "states and f_out must be non-NULL"))
        return st;
    return guarded([&] {
        *f_out = squared ? qdsim::ent_metrics::fidelity_general_squared(
                               a->state, b->state)
                         : qdsim::ent_metrics::fidelity_general(a->state,
                                                                b->state);
    });
}

qdsim_status qdsim_concurrence(const qdsim_state* state, double* c_out) {
    if (auto st = require(state && c_out,
                          "state and c_out must be non-NULL"))
        return st;
    return guarded(
        [&] { *c_out = qdsim::ent_metrics::concurrence(state->state); });
}

qdsim_status qdsim_horodecki_max(const qdsim_state* state, double* b_out) {
    if (auto st = require(state && b_out,
                          "state and b_out must be non-NULL"))
        return st;
    return guarded(
        [&] { *b_out = qdsim::ent_metrics::horodecki_max(state->state); });
}

qdsim_status qdsim_trace_distance(const qdsim_state* a, const qdsim_state* b,
                                  double* d_out) {
    if (auto st = require(a && b && d_out,
                          "states and d_out must be non-NULL"))
        return st;
    return guarded([&] {
        *d_out = qdsim::ent_metrics::trace_distance(a->state, b->state);
    });
}

qdsim_status qdsim_purity(const qdsim_state* state, double* p_out) {
    if (auto st = require(state && p_out,
                          "state and p_out must be non-NULL"))
        return st;
    return guarded([&] { *p_out = qdsim::ent_metrics::purity(state->state); });
}

/* ---------------- parameter sweeps ---------------- */

qdsim_status qdsim_sweep_csv(const qdsim_params* params,
                             const qdsim_sweep_axis* axes, int n_axes,
                             int threads, char** csv_out) {
    if (auto st = require(params && axes && csv_out,
                          "params, axes and csv_out must be non-NULL"))
        return st;
    if (auto st = require(n_axes >= 1, "at least one sweep axis is required"))
        return st;
    return guarded([&] {
        std::vector<qdsim::report::SweepAxis> ax;
        ax.reserve(static_cast<std::size_t>(n_axes));
        for (int i = 0; i < n_axes; ++i) {
            if (!axes[i].name)
                throw std::invalid_argument("sweep axis name is NULL");
            ax.push_back(qdsim::report::SweepAxis{
                axes[i].name, axes[i].start, axes[i].stop, axes[i].count});
        }
        *csv_out = dup_string(
            qdsim::report::sweep_csv(params->config, ax, threads));
    });
}

/* ---------------- tomography ---------------- */

void qdsim_dataset_free(qdsim_dataset* dataset) { delete dataset; }

qdsim_status qdsim_tomo_sample(const qdsim_state* state, long long shots,
                               uint64_t seed, qdsim_dataset** dataset_out) {
    if (auto st = require(state && dataset_out,
                          "state and dataset_out must be non-NULL"))
        return st;
    return guarded([&] {
        *dataset_out = new qdsim_dataset{
            qdsim::tomography::sample_counts(state->state, shots, seed)};
    });
}

qdsim_status qdsim_tomo_expected(const qdsim_state* state, long long shots,
                                 qdsim_dataset** dataset_out) {
    if (auto st = require(state && dataset_out,
                          "state and dataset_out must be non-NULL"))
        return st;
    return guarded([&] {
        *dataset_out = new qdsim_dataset{
            qdsim::tomography::expected_counts(state->state, shots)};
    });
}

qdsim_status qdsim_dataset_to_string(const qdsim_dataset* dataset,
                                     char** text_out) {
    if (auto st = require(dataset && text_out,
                          "dataset and text_out must be non-NULL"))
        return st;
    return guarded([&] {
        *text_out =
            dup_string(qdsim::tomography::dataset_to_string(dataset->dataset));
    });
}

qdsim_status qdsim_dataset_from_string(const char* text,
                                       qdsim_dataset** dataset_out) {
    if (auto st = require(text && dataset_out,
                          "text and dataset_out must be non-NULL"))
        return st;
    return guarded([&] {
        *dataset_out = new qdsim_dataset{
            qdsim::tomography::dataset_from_string(text)};
    });
}

qdsim_status qdsim_dataset_save(const qdsim_dataset* dataset,
                                const char* path) {
    if (auto st = require(dataset && path,
                          "dataset and path must be non-NULL"))
        return st;
    const qdsim_status st = guarded(
        [&] { qdsim::tomography::dataset_save(dataset->dataset, path); });
    return st == QDSIM_ERROR_NUMERIC ? QDSIM_ERROR_IO : st;
}

qdsim_status qdsim_dataset_load(const char* path,
                                qdsim_dataset** dataset_out) {
    if (auto st = require(path && dataset_out,
                          "path and dataset_out must be non-NULL"))
        return st;
    const qdsim_status st = guarded([&] {
        *dataset_out =
            new qdsim_dataset{qdsim::tomography::dataset_load(path)};
    });
    return st == QDSIM_ERROR_NUMERIC ? QDSIM_ERROR_IO : st;
}

qdsim_status qdsim_linear_inversion(const qdsim_dataset* dataset,
                                    double re[16], double im[16]) {
    if (auto st = require(dataset && re && im,
                          "dataset, re and im must be non-NULL"))
        return st;
    return guarded([&] {
        matrix_to_buffers(qdsim::tomography::linear_inversion(dataset->dataset),
                          re, im);
    });
}

qdsim_status qdsim_mle_reconstruct(const qdsim_dataset* dataset,
                                   const qdsim_mle_options* options,
                                   qdsim_state** state_out,
                                   qdsim_mle_result* result_out) {
    if (auto st = require(dataset && state_out,
                          "dataset and state_out must be non-NULL"))
        return st;
    return guarded([&] {
        qdsim::tomography::MleOptions opts;
        if (options) {
            if (options->max_iterations > 0)
                opts.max_iterations = options->max_iterations;
            if (options->tolerance > 0.0) opts.tolerance = options->tolerance;
            opts.poisson = options->poisson != 0;
        }
        qdsim::tomography::MleDiagnostics diag;
        auto state =
            qdsim::tomography::mle_reconstruct(dataset->dataset, opts, &diag);
        *state_out = new qdsim_state{state};
        if (result_out) {
            result_out->log_likelihood = diag.log_likelihood;
            result_out->iterations = diag.iterations;
            result_out->converged = diag.converged ? 1 : 0;
            result_out->monotone = diag.monotone ? 1 : 0;
        }
    });
}

} // extern "C"
