// Copyright 2026 The qfi-witness Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/*
 * qfi-witness C interface.
 *
 * Every fallible call returns a qfiw_status; on failure a human-readable
 * message is available from qfiw_last_error() on the calling thread until
 * the next failing call. Objects behind opaque handles are owned by the
 * caller and released with the matching *_free function (NULL is accepted).
 */
#ifndef QFIW_QFIW_H
#define QFIW_QFIW_H

#include <stddef.h>

#if defined(_WIN32)
#  if defined(QFIW_BUILDING)
#    define QFIW_API __declspec(dllexport)
#  else
#    define QFIW_API __declspec(dllimport)
#  endif
#else
#  define QFIW_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qfiw_status {
    QFIW_OK = 0,
    QFIW_ERR_NULL_ARGUMENT = 1,
    QFIW_ERR_INVALID_ARGUMENT = 2,
    QFIW_ERR_DOMAIN = 3,
    QFIW_ERR_DIMENSION = 4,
    QFIW_ERR_OUT_OF_RANGE = 5,
    QFIW_ERR_INTERNAL = 6
} qfiw_status;

QFIW_API const char *qfiw_last_error(void);
QFIW_API const char *qfiw_status_name(qfiw_status status);
QFIW_API const char *qfiw_version(void);

/* ---- spin states ------------------------------------------------------ */

typedef struct qfiw_state qfiw_state;

typedef enum qfiw_generator_kind { QFIW_GENERATOR_SZ = 0, QFIW_GENERATOR_SALPHA = 1 } qfiw_generator_kind;

typedef struct qfiw_generator {
    qfiw_generator_kind kind;
    double alpha; /* radians, used by QFIW_GENERATOR_SALPHA */
} qfiw_generator;

QFIW_API qfiw_status qfiw_state_coherent_x(int n_spins, qfiw_state **out);
/* re/im hold n_spins+1 amplitudes indexed by k = m + N/2; must be normalized. */
QFIW_API qfiw_status qfiw_state_from_amplitudes(int n_spins, const double *re, const double *im, size_t len,
                                                qfiw_state **out);
QFIW_API void qfiw_state_free(qfiw_state *state);
QFIW_API int qfiw_state_spins(const qfiw_state *state);
QFIW_API qfiw_status qfiw_state_amplitudes(const qfiw_state *state, double *re, double *im, size_t len);
QFIW_API qfiw_status qfiw_state_evolve(const qfiw_state *state, qfiw_generator generator, double t,
                                       qfiw_state **out);
QFIW_API qfiw_status qfiw_state_one_axis_twist(const qfiw_state *state, double mu, double nu, qfiw_state **out);
QFIW_API qfiw_status qfiw_state_qfi(const qfiw_state *state, qfiw_generator generator, double *out);
QFIW_API qfiw_status qfiw_state_fidelity(const qfiw_state *a, const qfiw_state *b, double *out);
/* len must be n_spins+1; weights ordered by ascending S_alpha eigenvalue. */
QFIW_API qfiw_status qfiw_state_projective_weights(const qfiw_state *state, double alpha, double *weights,
                                                   size_t len);

QFIW_API qfiw_status qfiw_optimal_nu(int n_spins, double mu, double *out);
QFIW_API qfiw_status qfiw_optimal_mu(int n_spins, double *out);
QFIW_API qfiw_status qfiw_heisenberg_spread(int n_spins, double m, double t, double *m1, double *m2,
                                            double *spread);

/* ---- scalar bounds ---------------------------------------------------- */

QFIW_API qfiw_status qfiw_bures_distance(double fidelity, double *out);
QFIW_API qfiw_status qfiw_qfi_lower_bound(double coefficient, double t, double *out);
/* *valid is set to 0 (and *out to -1) when |t| > pi / sqrt(qfi). */
QFIW_API qfiw_status qfiw_fidelity_bound(double qfi, double t, double *out, int *valid);
QFIW_API qfiw_status qfiw_min_time_for_error(double delta, double qfi, double *out);

/* ---- protocol --------------------------------------------------------- */

typedef enum qfiw_w_kind {
    QFIW_W_IDENTITY = 0,
    QFIW_W_ADJOINT = 1,
    QFIW_W_TWIST = 2,
    QFIW_W_OPTIMIZE = 3
} qfiw_w_kind;

typedef struct qfiw_protocol_config {
    int n_spins;
    int mu_auto; /* nonzero: twisting at the squeezing optimum */
    double mu;
    int nu_auto; /* nonzero: rotation from qfiw_optimal_nu */
    double nu;
    double t;
    double delta;
    qfiw_w_kind w_kind;
    double mu_prime; /* QFIW_W_TWIST only */
    double nu_prime;
    int axis_optimize; /* nonzero: optimize over [0, pi) */
    double axis;
    int jobs;
} qfiw_protocol_config;

typedef struct qfiw_bound_result {
    double b_omega;
    double bound;
    double qfi_exact;
    double mu_used;
    double nu_used;
    double axis_used;
    int has_w_params;
    double mu_prime;
    double nu_prime;
    int entanglement_witnessed;
    int validity_ok;
} qfiw_bound_result;

/* Defaults: mu/nu auto, identity W, optimized axis, one job. */
QFIW_API void qfiw_protocol_config_init(qfiw_protocol_config *cfg);
QFIW_API qfiw_status qfiw_run_protocol(const qfiw_protocol_config *cfg, qfiw_bound_result *out);

/* ---- sweeps ----------------------------------------------------------- */

typedef struct qfiw_table qfiw_table;

/*
 * Detector-resolution sweep. Group g uses n_spins[g], times[g] and mus[g] (NaN: auto).
 * Columns: n, delta, w_choice, alpha_star, b_omega, bound, bound_over_n, qfi,
 * qfi_over_n. w_choice cells hold a qfiw_w_kind code.
 */
QFIW_API qfiw_status qfiw_sweep_delta(const int *n_spins, const double *times, const double *mus, size_t groups,
                                      const double *deltas, size_t delta_count, const qfiw_w_kind *w_kinds,
                                      size_t w_count, int jobs, qfiw_table **out);

/*
 * Twisting-strength sweep comparing W choices. Columns: mu, nu, bound_identity, bound_adjoint,
 * bound_optimized, qfi, mu_prime, nu_prime.
 */
QFIW_API qfiw_status qfiw_sweep_mu(int n_spins, double delta, double t, const double *mus, size_t mu_count,
                                   int jobs, qfiw_table **out);

QFIW_API void qfiw_table_free(qfiw_table *table);
QFIW_API size_t qfiw_table_rows(const qfiw_table *table);
QFIW_API size_t qfiw_table_columns(const qfiw_table *table);
QFIW_API const char *qfiw_table_column_name(const qfiw_table *table, size_t column);
QFIW_API qfiw_status qfiw_table_value(const qfiw_table *table, size_t row, size_t column, double *out);
QFIW_API const char *qfiw_w_kind_name(qfiw_w_kind kind);

/* ---- photonic --------------------------------------------------------- */

QFIW_API qfiw_status qfiw_photonic_squeezed_variance(double xi, double delta, double *out);
QFIW_API qfiw_status qfiw_photonic_qfi(double xi, double *out);
QFIW_API qfiw_status qfiw_photonic_back_squeeze_resolution(double delta, double xi_prime, double *out);
QFIW_API qfiw_status qfiw_photonic_bound(double xi, double delta, double xi_prime, double t, double *out);

/* ---- no-signaling in time -------------------------------------------- */

typedef struct qfiw_nsit_config {
    int n_spins;
    int mu_auto;
    double mu;
    int nu_auto;
    double nu;
    double delta;
    int nodes;
    double k_eff; /* <= 0: 1 / (2 delta) */
} qfiw_nsit_config;

typedef struct qfiw_nsit_result {
    double mu;
    double nu;
    double b_pq;
    double nsit_bound;
    double k_eff;
    double averaged_fidelity;
    double qfi;
    double fidelity_floor;
    int floor_respected;
    double quadrature_drift; /* |F(nodes) - F(2 nodes)| */
} qfiw_nsit_result;

QFIW_API void qfiw_nsit_config_init(qfiw_nsit_config *cfg);
QFIW_API qfiw_status qfiw_nsit_evaluate(const qfiw_nsit_config *cfg, qfiw_nsit_result *out);
QFIW_API qfiw_status qfiw_dephased_fidelity_floor(double qfi, double delta, double *out);

#ifdef __cplusplus
}
#endif

#endif /* QFIW_QFIW_H */
