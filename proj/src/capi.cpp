// Copyright 2026 The arms-bench Authors
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

#include "arms.h"

#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "arms/bench.hpp"
#include "arms/msbound.hpp"
#include "arms/oracle.hpp"

struct arms_rng {
  arms::RandomStream stream;
};

struct arms_model {
  arms::ToyLatentModel model;
};

namespace {

template <typename Fn>
arms_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error&) {
    return ARMS_ERR_DOMAIN;
  } catch (const std::invalid_argument&) {
    return ARMS_ERR_INVALID_ARGUMENT;
  } catch (const std::runtime_error&) {
    return ARMS_ERR_IO;
  } catch (...) {
    return ARMS_ERR_INTERNAL;
  }
}

arms::FunctionOracle wrap_objective(arms_objective_fn f, size_t m, void* ctx) {
  return arms::FunctionOracle([f, m, ctx](const arms::BitVec& b) {
    return f(b.data(), m, ctx);
  });
}

}  // namespace

extern "C" {

const char* arms_status_message(arms_status status) {
  switch (status) {
    case ARMS_OK: return "ok";
    case ARMS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case ARMS_ERR_DOMAIN: return "domain error";
    case ARMS_ERR_IO: return "i/o error";
    case ARMS_ERR_CHECK_FAILED: return "verification case failed";
    case ARMS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

arms_rng* arms_rng_create(uint64_t seed) {
  return new (std::nothrow) arms_rng{arms::RandomStream(seed)};
}

arms_rng* arms_rng_split(const arms_rng* rng, uint64_t key) {
  if (!rng) return nullptr;
  return new (std::nothrow) arms_rng{rng->stream.split(key)};
}

void arms_rng_destroy(arms_rng* rng) { delete rng; }

double arms_std_normal_cdf(double x) { return arms::std_normal_cdf(x); }

arms_status arms_std_normal_inv_cdf(double p, double* out) {
  if (!out) return ARMS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = arms::std_normal_inv_cdf(p);
    return ARMS_OK;
  });
}

arms_status arms_bivariate_normal_cdf(double h, double k, double rho,
                                      double* out) {
  if (!out) return ARMS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *out = arms::bivariate_normal_cdf(h, k, rho);
    return ARMS_OK;
  });
}

arms_status arms_dirichlet_corr(double p, int n, double* rho_out) {
  if (!rho_out) return ARMS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *rho_out = arms::dirichlet_bernoulli_corr(
        p, n, arms::dirichlet_branch_select(p));
    return ARMS_OK;
  });
}

arms_status arms_gaussian_corr(double p, int n, double* rho_out) {
  if (!rho_out) return ARMS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    *rho_out = arms::gaussian_bernoulli_corr(p, n);
    return ARMS_OK;
  });
}

arms_status arms_estimate_gradient(const char* estimator,
                                   const double* logits, size_t m, int n,
                                   arms_objective_fn f, void* ctx,
                                   arms_rng* rng, double* grad_out,
                                   uint64_t* f_evals_out) {
  if (!estimator || !logits || m == 0 || !f || !rng || !grad_out) {
    return ARMS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    arms::EstimatorConfig cfg = arms::EstimatorConfig::parse(estimator, n);
    arms::Vec phi(logits, logits + m);
    arms::FunctionOracle oracle = wrap_objective(f, m, ctx);
    arms::GradientEstimate est =
        arms::estimate(cfg, phi, oracle, rng->stream);
    std::memcpy(grad_out, est.grad.data(), m * sizeof(double));
    if (f_evals_out) *f_evals_out = est.f_evals;
    return ARMS_OK;
  });
}

arms_status arms_exact_gradient(const double* logits, size_t m,
                                arms_objective_fn f, void* ctx,
                                double* grad_out) {
  if (!logits || m == 0 || !f || !grad_out) {
    return ARMS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    arms::Vec phi(logits, logits + m);
    arms::FunctionOracle oracle = wrap_objective(f, m, ctx);
    arms::Vec grad = arms::exact_gradient(phi, oracle);
    std::memcpy(grad_out, grad.data(), m * sizeof(double));
    return ARMS_OK;
  });
}

arms_status arms_model_from_json(const char* json_text, arms_model** out) {
  if (!json_text || !out) return ARMS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    auto* handle = new arms_model{arms::ToyLatentModel::from_json(json_text)};
    *out = handle;
    return ARMS_OK;
  });
}

void arms_model_destroy(arms_model* model) { delete model; }

arms_status arms_model_dims(const arms_model* model, size_t* m_out) {
  if (!model || !m_out) return ARMS_ERR_INVALID_ARGUMENT;
  *m_out = static_cast<size_t>(model->model.dims());
  return ARMS_OK;
}

arms_status arms_msb_gradient(const arms_model* model, const char* estimator,
                              int n, arms_rng* rng, double* grad_out,
                              double* bound_out, uint64_t* r_evals_out) {
  if (!model || !estimator || !rng || !grad_out) {
    return ARMS_ERR_INVALID_ARGUMENT;
  }
  return guarded([&] {
    std::string name(estimator);
    arms::BoundEstimate est;
    if (name == "naive") {
      est = arms::naive_msb_grad(model->model, n, rng->stream);
    } else if (name == "vimco") {
      est = arms::vimco_grad(model->model, n, rng->stream);
    } else if (name == "arms-dirichlet") {
      est = arms::arms_msb_grad(model->model, n,
                                {arms::CopulaKind::Dirichlet, n}, rng->stream);
    } else if (name == "arms-gaussian") {
      est = arms::arms_msb_grad(model->model, n,
                                {arms::CopulaKind::Gaussian, n}, rng->stream);
    } else {
      return ARMS_ERR_INVALID_ARGUMENT;
    }
    std::memcpy(grad_out, est.grad_phi.data(),
                est.grad_phi.size() * sizeof(double));
    if (bound_out) *bound_out = est.value;
    if (r_evals_out) *r_evals_out = est.f_evals;
    return ARMS_OK;
  });
}

arms_status arms_bench_run(const char* config_json) {
  if (!config_json) return ARMS_ERR_INVALID_ARGUMENT;
  return guarded([&] {
    arms::BenchConfig cfg = arms::BenchConfig::from_json(config_json);
    int rc = arms::run_bench(cfg);
    return rc == 0 ? ARMS_OK : ARMS_ERR_CHECK_FAILED;
  });
}

}  // extern "C"
