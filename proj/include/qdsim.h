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

/*
 * Public C interface of the qdsim shared library: a noise model for
 * quantum-dot based polarization-entangled photon sources built around an
 * unbalanced Mach-Zehnder interferometer, together with two-qubit
 * entanglement metrics, a brute-force second-quantization cross-check and
 * simulated maximum-likelihood state tomography.
 *
 * Conventions:
 *  - Every fallible function returns a qdsim_status; outputs are written
 *    through pointers only on QDSIM_OK.
 *  - qdsim_last_error() returns a thread-local message describing the most
 *    recent failure on the calling thread.
 *  - Objects returned through handle pointers are owned by the caller and
 *    released with the matching *_free function. Strings returned through
 *    char** are released with qdsim_string_free.
 *  - Density matrices use the basis |HH>, |HV>, |VH>, |VV>; 16-element
 *    buffers are row-major.
 */

#ifndef QDSIM_H
#define QDSIM_H

#include <stdint.h>

#if defined(_WIN32)
#define QDSIM_API __declspec(dllexport)
#else
#define QDSIM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdsim_status {
    QDSIM_OK = 0,
    QDSIM_ERROR_INVALID_ARGUMENT = 1,
    QDSIM_ERROR_DOMAIN = 2,
    QDSIM_ERROR_PARSE = 3,
    QDSIM_ERROR_IO = 4,
    QDSIM_ERROR_NUMERIC = 5,
    QDSIM_ERROR_INTERNAL = 6
} qdsim_status;

typedef enum qdsim_scheme {
    QDSIM_SCHEME_LA = 0,
    QDSIM_SCHEME_RF = 1
} qdsim_scheme;

QDSIM_API const char* qdsim_version(void);
QDSIM_API const char* qdsim_status_name(qdsim_status status);

/* Thread-local message for the last failure on this thread; never NULL. */
QDSIM_API const char* qdsim_last_error(void);

QDSIM_API void qdsim_string_free(char* s);

/* ---------------- photon-number statistics ---------------- */

QDSIM_API qdsim_status qdsim_g2_from_probabilities(double p0, double p1,
                                                   double p2, double* g2_out);

/* probs_out = {p0, p1, p2}. brightness is ignored under RF. */
QDSIM_API qdsim_status qdsim_g2_to_probabilities(double g2, double brightness,
                                                 qdsim_scheme scheme,
                                                 double probs_out[3]);

QDSIM_API qdsim_status qdsim_hom_visibility_from_coincidence(double p_cc,
                                                             double* v_out);

QDSIM_API qdsim_status qdsim_measured_visibility_model(
    double reflectivity, double transmissivity, double v_sn, double g2,
    double v_true, double* v_m_out);

QDSIM_API qdsim_status qdsim_corrected_visibility(double v_m, double g2,
                                                  double* v_out);

QDSIM_API qdsim_status qdsim_expected_coincidence_rate(
    double eta_qdsps, double eta_fl, double eta_mzi, double eta_d,
    double pump_rate_hz, double* rate_hz_out);

QDSIM_API qdsim_status qdsim_dark_count_probability(double dark_rate_hz,
                                                    double window_s,
                                                    double* p_out);

/* ---------------- model parameters ---------------- */

/*
 * Opaque bundle of source-model inputs. Keys (all set as text):
 *   scheme            LA | RF
 *   t1 r1 t2 r2       beam-splitter amplitudes (t^2 + r^2 = 1 per BS)
 *   v v_l q chi eta c_wn
 *   p0 p1 p2          explicit emission probabilities, or
 *   g2 [brightness]   photon statistics from g2(0) (brightness needed
 *                     under LA)
 *   eta_qdsps eta_fl eta_mzi eta_d r_qd   optional rate budget
 */
typedef struct qdsim_params qdsim_params;

QDSIM_API qdsim_params* qdsim_params_new(void);
QDSIM_API qdsim_params* qdsim_params_clone(const qdsim_params* params);
QDSIM_API void qdsim_params_free(qdsim_params* params);

/* Unknown keys and out-of-range values fail with a message naming the key. */
QDSIM_API qdsim_status qdsim_params_set(qdsim_params* params, const char* key,
                                        const char* value);

QDSIM_API qdsim_status qdsim_params_get(const qdsim_params* params,
                                        const char* key, char** value_out);

/* Cross-field validation (probability resolution, BS closure, ...). */
QDSIM_API qdsim_status qdsim_params_validate(const qdsim_params* params);

/* ---------------- two-qubit states ---------------- */

typedef struct qdsim_state qdsim_state;

QDSIM_API void qdsim_state_free(qdsim_state* state);
QDSIM_API qdsim_state* qdsim_state_clone(const qdsim_state* state);

QDSIM_API qdsim_status qdsim_state_singlet(qdsim_state** state_out);
QDSIM_API qdsim_status qdsim_state_maximally_mixed(qdsim_state** state_out);

/* Validates Hermiticity, unit trace and positivity before accepting. */
QDSIM_API qdsim_status qdsim_state_from_elements(const double re[16],
                                                 const double im[16],
                                                 qdsim_state** state_out);
QDSIM_API qdsim_status qdsim_state_elements(const qdsim_state* state,
                                            double re[16], double im[16]);

/* JSON object {"basis": ["HH","HV","VH","VV"], "re": 4x4, "im": 4x4}. */
QDSIM_API qdsim_status qdsim_state_to_json(const qdsim_state* state,
                                           char** json_out);
QDSIM_API qdsim_status qdsim_state_from_json(const char* json,
                                             qdsim_state** state_out);

/* c_wn rho + (1 - c_wn)/4 I */
QDSIM_API qdsim_status qdsim_state_apply_werner(const qdsim_state* state,
                                                double c_wn,
                                                qdsim_state** state_out);

/* ---------------- source model ---------------- */

/* Normalized model state rho_exp for the configured parameters. */
QDSIM_API qdsim_status qdsim_model_build_state(const qdsim_params* params,
                                               qdsim_state** state_out);

/* Closed forms (balanced beam splitters only; error otherwise). */
QDSIM_API qdsim_status qdsim_model_chsh(const qdsim_params* params,
                                        double* s_out);
QDSIM_API qdsim_status qdsim_model_fidelity(const qdsim_params* params,
                                            double* f_out);
QDSIM_API qdsim_status qdsim_model_chsh_werner(const qdsim_params* params,
                                               double* s_out);
QDSIM_API qdsim_status qdsim_model_fidelity_werner(const qdsim_params* params,
                                                   double* f_out);

/* Full report (state, metrics, Werner values, rate budget) as JSON. */
QDSIM_API qdsim_status qdsim_model_report_json(const qdsim_params* params,
                                               char** json_out);

/*
 * Compares every closed-form component matrix and the composed state
 * against the brute-force second-quantization engine. ok_out is 1 when
 * all max entrywise deviations are within `tolerance`. corrupt_v shifts v
 * on the closed-form side only (test hook; pass 0 for real checks).
 */
QDSIM_API qdsim_status qdsim_oracle_compare_json(const qdsim_params* params,
                                                 double tolerance,
                                                 double corrupt_v,
                                                 int* ok_out, char** json_out);

/* ---------------- entanglement metrics ---------------- */

/* Bloch vectors are {x, y, z} with unit norm. */
QDSIM_API qdsim_status qdsim_correlator(const qdsim_state* state,
                                        const double bloch_a[3],
                                        const double bloch_b[3], double* out);

QDSIM_API qdsim_status qdsim_chsh_value(const qdsim_state* state,
                                        const double a0[3], const double a1[3],
                                        const double b0[3], const double b1[3],
                                        double* s_out);

/* Signed CHSH value at the canonical singlet settings
 * (A0 = z, A1 = x, B0 = (z+x)/sqrt2, B1 = (z-x)/sqrt2). */
QDSIM_API qdsim_status qdsim_chsh_canonical(const qdsim_state* state,
                                            double* s_out);

/* <psi|rho|psi> for a normalized pure target. */
QDSIM_API qdsim_status qdsim_fidelity_pure(const qdsim_state* state,
                                           const double psi_re[4],
                                           const double psi_im[4],
                                           double* f_out);

/* Uhlmann fidelity; squared != 0 selects the squared convention. */
QDSIM_API qdsim_status qdsim_fidelity(const qdsim_state* a,
                                      const qdsim_state* b, int squared,
                                      double* f_out);

QDSIM_API qdsim_status qdsim_concurrence(const qdsim_state* state,
                                         double* c_out);
QDSIM_API qdsim_status qdsim_horodecki_max(const qdsim_state* state,
                                           double* b_out);
QDSIM_API qdsim_status qdsim_trace_distance(const qdsim_state* a,
                                            const qdsim_state* b,
                                            double* d_out);
QDSIM_API qdsim_status qdsim_purity(const qdsim_state* state, double* p_out);

/* ---------------- parameter sweeps ---------------- */

typedef struct qdsim_sweep_axis {
    const char* name; /* v, v_l, q, chi, eta, c_wn, g2, brightness, p2 */
    double start;
    double stop;
    int count;
} qdsim_sweep_axis;

/*
 * CSV over the row-major grid: axis columns, then s_model, s_werner,
 * f_model, f_werner, concurrence, horodecki. threads <= 0 uses the
 * hardware concurrency; output is deterministic either way.
 */
QDSIM_API qdsim_status qdsim_sweep_csv(const qdsim_params* params,
                                       const qdsim_sweep_axis* axes,
                                       int n_axes, int threads,
                                       char** csv_out);

/* ---------------- tomography ---------------- */

typedef struct qdsim_dataset qdsim_dataset;

QDSIM_API void qdsim_dataset_free(qdsim_dataset* dataset);

/* Multinomial counts over the 9 Pauli settings; seeded and reproducible. */
QDSIM_API qdsim_status qdsim_tomo_sample(const qdsim_state* state,
                                         long long shots, uint64_t seed,
                                         qdsim_dataset** dataset_out);

/* Noiseless dataset: counts equal shots * p exactly. */
QDSIM_API qdsim_status qdsim_tomo_expected(const qdsim_state* state,
                                           long long shots,
                                           qdsim_dataset** dataset_out);

QDSIM_API qdsim_status qdsim_dataset_to_string(const qdsim_dataset* dataset,
                                               char** text_out);
QDSIM_API qdsim_status qdsim_dataset_from_string(const char* text,
                                                 qdsim_dataset** dataset_out);
QDSIM_API qdsim_status qdsim_dataset_save(const qdsim_dataset* dataset,
                                          const char* path);
QDSIM_API qdsim_status qdsim_dataset_load(const char* path,
                                          qdsim_dataset** dataset_out);

/* Direct Pauli inversion; Hermitian, unit trace, possibly not PSD. */
QDSIM_API qdsim_status qdsim_linear_inversion(const qdsim_dataset* dataset,
                                              double re[16], double im[16]);

typedef struct qdsim_mle_options {
    long max_iterations; /* <= 0 selects the default 100000 */
    double tolerance;    /* <= 0 selects the default 1e-10 */
    int poisson;         /* nonzero: Poisson likelihood variant */
} qdsim_mle_options;

typedef struct qdsim_mle_result {
    double log_likelihood;
    long iterations;
    int converged;
    int monotone;
} qdsim_mle_result;

/* options and result may be NULL. */
QDSIM_API qdsim_status qdsim_mle_reconstruct(const qdsim_dataset* dataset,
                                             const qdsim_mle_options* options,
                                             qdsim_state** state_out,
                                             qdsim_mle_result* result_out);

#ifdef __cplusplus
}
#endif

#endif /* QDSIM_H */
