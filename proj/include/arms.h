/*
 * Copyright 2026 The arms-bench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of the arms-bench shared library: score-function gradient
 * estimators for factorized Bernoulli distributions (REINFORCE, LOORF,
 * ARM, DisARM, ARMS with Dirichlet/Gaussian copulas), multi-sample
 * variational-bound estimators, copula correlation functions, exact
 * enumeration oracles, and the benchmark runner.
 *
 * All functions return arms_status; outputs go through pointers. Handles
 * are opaque and must be released with their destroy function.
 */

#ifndef ARMS_H
#define ARMS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum arms_status {
  ARMS_OK = 0,
  ARMS_ERR_INVALID_ARGUMENT = 1,
  ARMS_ERR_DOMAIN = 2,
  ARMS_ERR_IO = 3,
  ARMS_ERR_CHECK_FAILED = 4, /* a bench verification case failed */
  ARMS_ERR_INTERNAL = 5
} arms_status;

/* Static description of a status code. */
const char* arms_status_message(arms_status status);

/* ---- random streams ---------------------------------------------------- */

typedef struct arms_rng arms_rng;

arms_rng* arms_rng_create(uint64_t seed);
/* Independent stream derived from rng's master seed and a counter key. */
arms_rng* arms_rng_split(const arms_rng* rng, uint64_t key);
void arms_rng_destroy(arms_rng* rng);

/* ---- special functions ------------------------------------------------- */

double arms_std_normal_cdf(double x);
arms_status arms_std_normal_inv_cdf(double p, double* out);
arms_status arms_bivariate_normal_cdf(double h, double k, double rho,
                                      double* out);

/* ---- copula correlations ----------------------------------------------- */

/* Branch-selected closed-form Bernoulli correlation of the antithetic
 * Dirichlet copula thresholded at p, for an n-replicate block. */
arms_status arms_dirichlet_corr(double p, int n, double* rho_out);
/* Bernoulli correlation of the antithetic Gaussian copula. */
arms_status arms_gaussian_corr(double p, int n, double* rho_out);

/* ---- gradient estimation ----------------------------------------------- */

/* Black-box objective f : {0,1}^m -> double. bits has m entries in {0,1}. */
typedef double (*arms_objective_fn)(const uint8_t* bits, size_t m, void* ctx);

/* One gradient estimate of d/dphi E[f(b)], b ~ Bern(sigma(phi)) factorized.
 * estimator is one of: "reinforce", "loorf", "arm", "disarm",
 * "arms-dirichlet", "arms-gaussian". grad_out must hold m doubles;
 * f_evals_out (optional) receives the number of f evaluations. */
arms_status arms_estimate_gradient(const char* estimator,
                                   const double* logits, size_t m, int n,
                                   arms_objective_fn f, void* ctx,
                                   arms_rng* rng, double* grad_out,
                                   uint64_t* f_evals_out);

/* Exact gradient by enumerating all 2^m outcomes (m <= 20). */
arms_status arms_exact_gradient(const double* logits, size_t m,
                                arms_objective_fn f, void* ctx,
                                double* grad_out);

/* ---- multi-sample variational bound ------------------------------------ */

typedef struct arms_model arms_model;

/* Parses the toy latent model JSON:
 * {"prior_logits": [...], "posterior_logits": [...],
 *  "likelihood": {"010": value, ...}} with binary keys in dimension order. */
arms_status arms_model_from_json(const char* json_text, arms_model** out);
void arms_model_destroy(arms_model* model);
arms_status arms_model_dims(const arms_model* model, size_t* m_out);

/* Gradient of the n-sample bound w.r.t. the posterior logits. estimator is
 * one of "naive", "vimco", "arms-dirichlet", "arms-gaussian". grad_out
 * must hold m doubles; bound_out and r_evals_out are optional. */
arms_status arms_msb_gradient(const arms_model* model, const char* estimator,
                              int n, arms_rng* rng, double* grad_out,
                              double* bound_out, uint64_t* r_evals_out);

/* ---- benchmark runner -------------------------------------------------- */

/* Runs one bench experiment from a JSON config (see the CLI for the
 * schema) and writes its output file. ARMS_ERR_CHECK_FAILED is returned
 * when an unbiasedness case fails. */
arms_status arms_bench_run(const char* config_json);

#ifdef __cplusplus
}
#endif

#endif /* ARMS_H */
