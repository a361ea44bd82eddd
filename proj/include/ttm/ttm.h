/*
 * Copyright 2026 The thermo-transfer Authors.
 * SPDX-License-Identifier: Apache-2.0
 *
 * C interface of the thermo-transfer library. Every call returns a ttm_status;
 * on failure a description of the most recent error on the calling thread is
 * available from ttm_last_error(). Handles are opaque and owned by the caller,
 * who releases them with the matching *_destroy function.
 */
#ifndef TTM_TTM_H
#define TTM_TTM_H

#include <stddef.h>

#if defined(TTM_BUILDING_LIBRARY)
#define TTM_API __attribute__((visibility("default")))
#else
#define TTM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ttm_status {
  TTM_OK = 0,
  TTM_ERR_DOMAIN = 1,
  TTM_ERR_CONVERGENCE = 2,
  TTM_ERR_RESOURCE = 3,
  TTM_ERR_ASSEMBLY = 4,
  TTM_ERR_NUMERIC = 5,
  TTM_ERR_INVALID_ARGUMENT = 6, /* null handle or output pointer */
  TTM_ERR_IO = 7,
  TTM_ERR_INTERNAL = 99
} ttm_status;

typedef struct ttm_model_s* ttm_model;
typedef struct ttm_rule_s* ttm_rule;
typedef struct ttm_sweep_s* ttm_sweep;
typedef struct ttm_convergence_s* ttm_convergence;

/* Observable columns for sweeps. */
enum {
  TTM_OBS_STRETCH_SQ = 1u << 0,
  TTM_OBS_ENERGY = 1u << 1,
  TTM_OBS_DENSITY = 1u << 2
};

/* Reference strategy for convergence studies. */
typedef enum ttm_reference {
  TTM_REF_AUTO = 0,     /* factorized value when available, else largest m */
  TTM_REF_ANALYTIC = 1, /* factorized value; error if unavailable */
  TTM_REF_LARGEST = 2   /* solve at m_ref (0: max of the m list) */
} ttm_reference;

enum { TTM_SELFTEST_INJECT_SPECFUN_FAULT = 1u << 0 };

TTM_API const char* ttm_version(void);
TTM_API const char* ttm_last_error(void);
TTM_API const char* ttm_status_string(ttm_status status);

/* ---- models ---- */
TTM_API ttm_status ttm_model_create_chain(double eta, double mu3, double lambda, double gamma,
                                          ttm_model* out);
TTM_API ttm_status ttm_model_create_dnls(double g, double mu, ttm_model* out);
TTM_API ttm_status ttm_model_create_cylinder(double eta, double ax, double ay, int ly, ttm_model* out);
TTM_API void ttm_model_destroy(ttm_model model);

/* Free energy density at inverse temperature beta with m quadrature points
 * (points per axis for the cylinder). lambda1 may be NULL. */
TTM_API ttm_status ttm_free_energy(ttm_model model, double beta, int m, double* free_energy,
                                   double* lambda1);
/* Factorized reference; *available is set to 0 when the parameters admit none. */
TTM_API ttm_status ttm_reference_free_energy(ttm_model model, double beta, double* free_energy,
                                             int* available);
/* Observables selected by mask; unselected or undefined outputs are left as NaN.
 * Step sizes <= 0 select the defaults. */
TTM_API ttm_status ttm_observables(ttm_model model, double beta, int m, unsigned mask, double h_param,
                                   double h_beta, double* stretch_sq, double* energy, double* density);

/* ---- quadrature ---- */
TTM_API ttm_status ttm_rule_gauss_hermite(int m, double a, ttm_rule* out);
TTM_API ttm_status ttm_rule_half_gaussian(double a, double b, int m, ttm_rule* out);
TTM_API size_t ttm_rule_size(ttm_rule rule);
/* Copies size() nodes and weights into caller buffers (either may be NULL). */
TTM_API ttm_status ttm_rule_copy(ttm_rule rule, double* nodes, double* weights);
TTM_API void ttm_rule_destroy(ttm_rule rule);

/* ---- sweeps ---- */
TTM_API ttm_status ttm_beta_grid(double start, double stop, int count, int log_spaced, double* out);
TTM_API ttm_status ttm_sweep_run(ttm_model model, const double* betas, size_t count, int m,
                                 unsigned observables, double h_param, double h_beta, int threads,
                                 ttm_sweep* out);
TTM_API size_t ttm_sweep_rows(ttm_sweep sweep);
TTM_API ttm_status ttm_sweep_row(ttm_sweep sweep, size_t row, double* beta, double* free_energy,
                                 double* stretch_sq, double* energy, double* density);
TTM_API ttm_status ttm_sweep_write_csv(ttm_sweep sweep, const char* path);
/* Writes the CSV text into buf (NUL-terminated, truncated to size). *needed
 * receives the full length excluding the terminator. */
TTM_API ttm_status ttm_sweep_csv(ttm_sweep sweep, char* buf, size_t size, size_t* needed);
TTM_API void ttm_sweep_destroy(ttm_sweep sweep);

/* ---- convergence studies ---- */
TTM_API ttm_status ttm_convergence_run(ttm_model model, double beta, const int* m_list, size_t count,
                                       ttm_reference reference, int m_ref, int threads,
                                       ttm_convergence* out);
TTM_API size_t ttm_convergence_rows(ttm_convergence study);
TTM_API ttm_status ttm_convergence_row(ttm_convergence study, size_t row, int* m, double* free_energy,
                                       double* rel_error);
TTM_API ttm_status ttm_convergence_reference(ttm_convergence study, double* value, int* analytic,
                                             int* m_ref);
TTM_API ttm_status ttm_convergence_write_csv(ttm_convergence study, const char* path);
TTM_API void ttm_convergence_destroy(ttm_convergence study);

/* ---- self test ---- */
/* Runs the module invariant suites. *passed is 1 on success. The report text
 * is copied like ttm_sweep_csv (buf may be NULL to query the length). */
TTM_API ttm_status ttm_selftest(unsigned flags, int* passed, char* buf, size_t size, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif /* TTM_TTM_H */
