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

#ifndef ARMS_ESTIMATORS_HPP
#define ARMS_ESTIMATORS_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "arms/copulas.hpp"
#include "arms/rng.hpp"

namespace arms {

/// Black-box objective f : {0,1}^m -> R with an evaluation counter. Every
/// estimator charges exactly one count per call; the counter is the basis
/// of the evaluation-budget accounting in tests and the bench harness.
class FunctionOracle {
 public:
  explicit FunctionOracle(std::function<double(const BitVec&)> fn)
      : fn_(std::move(fn)) {}

  double operator()(const BitVec& b) {
    ++evals_;
    return fn_(b);
  }

  std::uint64_t evals() const { return evals_; }
  void reset_evals() { evals_ = 0; }

 private:
  std::function<double(const BitVec&)> fn_;
  std::uint64_t evals_ = 0;
};

struct GradientEstimate {
  Vec grad;
  std::string estimator;
  int n_samples = 0;
  std::uint64_t f_evals = 0;
};

// Monte Carlo estimators. All draw their own samples from the given stream
// and evaluate f exactly as many times as their contract states.

/// Plain REINFORCE: mean over n iid samples of f(b)(b - sigma(phi)).
GradientEstimate reinforce(const Vec& logits, FunctionOracle& f, int n,
                           RandomStream& rng);

/// Leave-one-out REINFORCE, precomputed-mean form:
/// (1/(n-1)) sum_i (f(b_i) - fbar)(b_i - sigma(phi)). Requires n >= 2.
GradientEstimate loorf(const Vec& logits, FunctionOracle& f, int n,
                       RandomStream& rng);

/// ARM: average of n/2 independent antithetic-uniform pairs, each
/// contributing (f(1_{u<p}) - f(1_{u>1-p})) (1/2 - u) per dimension.
/// Requires n even.
GradientEstimate arm(const Vec& logits, FunctionOracle& f, int n,
                     RandomStream& rng);

/// DisARM: average of n/2 thresholded antithetic pairs, each contributing
/// (1/2)(f(b) - f(b'))(b - b') max(p, 1-p) per dimension. Requires n even.
GradientEstimate disarm(const Vec& logits, FunctionOracle& f, int n,
                        RandomStream& rng);

/// ARMS: a correlated sample block from the given copula, with the
/// LOORF-shaped sum scaled per dimension by 1/(1 - rho^d). Exactly spec.n
/// evaluations of f regardless of the number of dimensions.
GradientEstimate arms(const Vec& logits, FunctionOracle& f,
                      const CopulaSpec& spec, RandomStream& rng);

// Deterministic two-sample estimators on caller-provided samples.

/// Product of differences: (1/2)(f(b) - f(b2))(b - b2) per dimension.
GradientEstimate pod(const BitVec& b, const BitVec& b2, FunctionOracle& f,
                     const Vec& logits);

/// ARTS: PoD debiased by 1/(1 - rho^d) for an exchangeable correlated pair.
/// Throws std::domain_error if any 1 - rho^d < 1e-12.
GradientEstimate arts(const BitVec& b, const BitVec& b2, const Vec& rho,
                      FunctionOracle& f, const Vec& logits);

// Deterministic cores operating on an already-drawn block. These carry the
// whole arithmetic of the estimators above and are what the enumeration
// oracle sums over.

/// LOORF core on given samples and their f values.
Vec loorf_core(const std::vector<BitVec>& samples, const Vec& fvals,
               const Vec& probs);

/// ARMS core: LOORF core with the per-dimension 1/(1 - rho) debiasing.
Vec arms_core(const std::vector<BitVec>& samples, const Vec& fvals,
              const Vec& probs, const Vec& rho);

/// First (leave-one-out mean) form of Eq-style LOORF, kept as the second
/// route of the two-form identity check.
Vec loorf_core_first_form(const std::vector<BitVec>& samples, const Vec& fvals,
                          const Vec& probs);

// Named configurations for the bench harness and the oracle referee.

enum class EstimatorKind {
  Reinforce,
  Loorf,
  Arm,
  Disarm,
  ArmsDirichlet,
  ArmsGaussian,
  Exact,        // oracle mode: exact enumeration gradient, zero variance
  LoorfBiased,  // negative control: LOORF missing the 1/(n-1) correction
};

struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::Loorf;
  int n = 2;

  static EstimatorConfig parse(const std::string& name, int n);
  std::string name() const;
  CopulaSpec copula() const;  // for the ARMS kinds
};

/// Dispatch one estimate for a named configuration.
GradientEstimate estimate(const EstimatorConfig& cfg, const Vec& logits,
                          FunctionOracle& f, RandomStream& rng);

}  // namespace arms

#endif  // ARMS_ESTIMATORS_HPP
