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

#ifndef ARMS_MSBOUND_HPP
#define ARMS_MSBOUND_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "arms/copulas.hpp"
#include "arms/rng.hpp"

namespace arms {

/// Tiny enumerable latent-variable model: factorized Bernoulli prior
/// p_theta(b), a fixed-observation likelihood table p(x|b), and a
/// factorized Bernoulli posterior q_phi(b|x). Everything about it (the
/// evidence, the multi-sample bound, every estimator expectation) can be
/// computed exactly, which is what makes it the verification backbone.
struct ToyLatentModel {
  Vec prior_logits;      // theta
  Vec posterior_logits;  // phi
  Vec likelihood;        // p(x|b), indexed by bit pattern (bit d of index)

  int dims() const { return static_cast<int>(prior_logits.size()); }

  /// Throws std::invalid_argument on inconsistent sizes, m > 6, or a
  /// non-positive likelihood entry.
  void validate() const;

  double log_prior(const BitVec& b) const;
  double log_posterior(const BitVec& b) const;
  double log_likelihood(const BitVec& b) const;

  /// ln r(b) = ln p_theta(b) + ln p(x|b) - ln q_phi(b|x).
  double log_ratio(const BitVec& b) const;

  /// JSON schema: {"prior_logits": [...], "posterior_logits": [...],
  /// "likelihood": {"010": value, ...}} with binary keys in dimension
  /// order (character d of the key is bit d).
  static ToyLatentModel from_json(const std::string& text);
  std::string to_json() const;
};

/// Counts importance-ratio evaluations; the 2n-vs-n budget accounting in
/// the multi-sample comparisons is based on this counter.
class RatioOracle {
 public:
  explicit RatioOracle(const ToyLatentModel& model) : model_(&model) {}

  double log_ratio(const BitVec& b) {
    ++evals_;
    return model_->log_ratio(b);
  }

  const ToyLatentModel& model() const { return *model_; }
  std::uint64_t evals() const { return evals_; }
  void reset_evals() { evals_ = 0; }

 private:
  const ToyLatentModel* model_;
  std::uint64_t evals_ = 0;
};

struct BoundEstimate {
  double value = 0.0;  // the L_n sample value
  Vec grad_phi;
  std::uint64_t f_evals = 0;
};

/// r(b), computed in log space then exponentiated.
double importance_ratio(const ToyLatentModel& model, const BitVec& b);

/// ln((1/n) sum_k exp(log_ratios_k)), log-sum-exp stabilized.
double multi_sample_bound_value(const Vec& log_ratios);

/// Plain REINFORCE on the bound: f(b) sum_k (b_k - sigma(phi)).
BoundEstimate naive_msb_grad(const ToyLatentModel& model, int n,
                             RandomStream& rng);

/// VIMCO: per-sample learning signal L^ - ln((1/n)(sum_{j!=k} r_j + r~_k))
/// with r~_k the geometric mean of the held-out ratios. Requires n >= 2.
BoundEstimate vimco_grad(const ToyLatentModel& model, int n,
                         RandomStream& rng);

/// ARMS for the multi-sample bound: n iid samples plus one correlated
/// block; all 2n ratios are precomputed, then each sample's inner
/// REINFORCE expectation is replaced by the ARMS estimator of
/// f_{b_{-k}} over the correlated block. Requires spec.n == n.
BoundEstimate arms_msb_grad(const ToyLatentModel& model, int n,
                            const CopulaSpec& spec, RandomStream& rng);

// Deterministic cores, shared by the Monte Carlo wrappers above and the
// enumeration referees below.
Vec naive_msb_core(const std::vector<BitVec>& samples, const Vec& log_ratios,
                   const Vec& probs);
Vec vimco_core(const std::vector<BitVec>& samples, const Vec& log_ratios,
               const Vec& probs);
Vec arms_msb_core(const Vec& log_ratios_iid,
                  const std::vector<BitVec>& corr_samples,
                  const Vec& log_ratios_corr, const Vec& probs,
                  const Vec& rho);

// Exact enumeration machinery.

/// ln p(x) by summing prior(b) * likelihood(b) over all 2^m patterns.
double enumerated_log_evidence(const ToyLatentModel& model);

/// Exact E[L_n] over all (2^m)^n sample tuples.
double enumerated_bound(const ToyLatentModel& model, int n);

/// Exact E[L_n] where the sampling weights come from `sampling_logits`
/// while the ratios stay those of the base model. Perturbing only the
/// sampling logits and differencing this recovers the score-form gradient
/// the estimators target (the usual convention of omitting the pathwise
/// term through the ratios).
double enumerated_bound_frozen_ratios(const ToyLatentModel& model,
                                      const Vec& sampling_logits, int n);

/// The exact score-form gradient sum_tuples q(tuple) f(tuple)
/// sum_k (b_k - sigma(phi)); the referee every bound estimator must match.
Vec exact_msb_gradient(const ToyLatentModel& model, int n);

/// Exact expectation of the VIMCO estimator by tuple enumeration.
Vec exact_vimco_expectation(const ToyLatentModel& model, int n);

/// Exact expectation of ARMS-MSB with the Dirichlet copula, enumerating
/// the iid tuples jointly with the correlated block outcomes.
Vec exact_arms_msb_expectation(const ToyLatentModel& model, int n);

}  // namespace arms

#endif  // ARMS_MSBOUND_HPP
