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

#ifndef ARMS_ORACLE_HPP
#define ARMS_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "arms/estimators.hpp"

namespace arms {

struct VarianceReport {
  std::string estimator;
  Vec per_dim_variance;
  Vec mean;
  long replicates = 0;
  Vec std_error_of_mean;
};

struct CorrelationEstimate {
  double rho = 0.0;
  double std_error = 0.0;
};

/// Exact gradient of E_b[f(b)] by enumerating all 2^m outcomes:
/// per dimension, sum_b f(b) p(b) (b^d - sigma(phi^d)). Rejects m > 20.
Vec exact_gradient(const Vec& logits, FunctionOracle& f);

/// Expected value of E_b[f(b)] itself by enumeration (used by the
/// finite-difference cross-checks).
double exact_expectation(const Vec& logits, FunctionOracle& f);

/// Unbiased per-dimension sample variance (and mean, and its standard
/// error) over independent replicates of the configured estimator.
VarianceReport estimator_variance(const EstimatorConfig& cfg,
                                  const Vec& logits, FunctionOracle& f,
                                  long replicates, const RandomStream& rng);

/// Pooled sample correlation of the thresholded bits over all pairs (i, j),
/// i != j, estimated from `draws` independent copula columns. The standard
/// error comes from the per-draw pair-product statistic with the known p.
CorrelationEstimate empirical_correlation(const CopulaSpec& spec, double p,
                                          long draws, RandomStream& rng);

/// Exact expectation of a sampling estimator, obtained by summing
/// pmf(block) * estimator(block) over every sample-block outcome. Supports
/// the iid configurations (reinforce, loorf, loorf-biased) and
/// arms-dirichlet (via the closed-form block pmf); rejects the Gaussian
/// copula configurations and any enumeration beyond 1e7 outcomes.
Vec exact_estimator_expectation(const EstimatorConfig& cfg, const Vec& logits,
                                FunctionOracle& f);

/// Exact expectation of PoD over an iid pair.
Vec exact_pod_expectation(const Vec& logits, FunctionOracle& f);

/// Exact expectation of ARTS when each dimension's pair follows the
/// exchangeable bivariate Bernoulli with the given correlation.
Vec exact_arts_expectation(const Vec& logits, FunctionOracle& f,
                           const Vec& rho);

/// Exact variance of the univariate (m = 1) ARTS estimator over the four
/// joint outcomes of an exchangeable pair with correlation rho.
double exact_arts_variance_univariate(double p, double rho, double f0,
                                      double f1);

}  // namespace arms

#endif  // ARMS_ORACLE_HPP
