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

#include "arms/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "arms/oracle.hpp"

namespace arms {

namespace {

Vec sigmoid_vec(const Vec& logits) {
  Vec p(logits.size());
  for (std::size_t d = 0; d < logits.size(); ++d) p[d] = sigmoid(logits[d]);
  return p;
}

BitVec sample_iid(const Vec& probs, RandomStream& rng) {
  BitVec b(probs.size());
  for (std::size_t d = 0; d < probs.size(); ++d) {
    b[d] = rng.uniform() < probs[d] ? 1 : 0;
  }
  return b;
}

void check_even(int n, const char* who) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument(std::string(who) +
                                ": n must be even and >= 2");
  }
}

}  // namespace

GradientEstimate reinforce(const Vec& logits, FunctionOracle& f, int n,
                           RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("reinforce: n must be >= 1");
  const Vec probs = sigmoid_vec(logits);
  Vec grad(logits.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    BitVec b = sample_iid(probs, rng);
    double fv = f(b);
    for (std::size_t d = 0; d < grad.size(); ++d) {
      grad[d] += fv * (b[d] - probs[d]);
    }
  }
  for (auto& g : grad) g /= n;
  return {std::move(grad), "reinforce", n, static_cast<std::uint64_t>(n)};
}

Vec loorf_core(const std::vector<BitVec>& samples, const Vec& fvals,
               const Vec& probs) {
  const int n = static_cast<int>(samples.size());
  double fbar = 0.0;
  for (double v : fvals) fbar += v;
  fbar /= n;
  Vec grad(probs.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double w = fvals[i] - fbar;
    for (std::size_t d = 0; d < probs.size(); ++d) {
      grad[d] += w * (samples[i][d] - probs[d]);
    }
  }
  for (auto& g : grad) g /= (n - 1);
  return grad;
}

Vec loorf_core_first_form(const std::vector<BitVec>& samples, const Vec& fvals,
                          const Vec& probs) {
  const int n = static_cast<int>(samples.size());
  double total = 0.0;
  for (double v : fvals) total += v;
  Vec grad(probs.size(), 0.0);
  for (int i = 0; i < n; ++i) {
    double baseline = (total - fvals[i]) / (n - 1);
    double w = fvals[i] - baseline;
    for (std::size_t d = 0; d < probs.size(); ++d) {
      grad[d] += w * (samples[i][d] - probs[d]);
    }
  }
  for (auto& g : grad) g /= n;
  return grad;
}

Vec arms_core(const std::vector<BitVec>& samples, const Vec& fvals,
              const Vec& probs, const Vec& rho) {
  Vec grad = loorf_core(samples, fvals, probs);
  for (std::size_t d = 0; d < grad.size(); ++d) {
    double denom = 1.0 - rho[d];
    if (denom < 1e-12) {
      throw std::domain_error("arms_core: 1 - rho underflow");
    }
    grad[d] /= denom;
  }
  return grad;
}

GradientEstimate loorf(const Vec& logits, FunctionOracle& f, int n,
                       RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("loorf: n must be >= 2");
  const Vec probs = sigmoid_vec(logits);
  std::vector<BitVec> samples(n);
  Vec fvals(n);
  for (int i = 0; i < n; ++i) {
    samples[i] = sample_iid(probs, rng);
    fvals[i] = f(samples[i]);
  }
  return {loorf_core(samples, fvals, probs), "loorf", n,
          static_cast<std::uint64_t>(n)};
}

GradientEstimate arm(const Vec& logits, FunctionOracle& f, int n,
                     RandomStream& rng) {
  check_even(n, "arm");
  const Vec probs = sigmoid_vec(logits);
  const std::size_t m = logits.size();
  Vec grad(m, 0.0);
  const int pairs = n / 2;
  for (int k = 0; k < pairs; ++k) {
    Vec u(m);
    BitVec b(m), b2(m);
    for (std::size_t d = 0; d < m; ++d) {
      u[d] = rng.uniform();
      b[d] = u[d] < probs[d] ? 1 : 0;
      b2[d] = u[d] > 1.0 - probs[d] ? 1 : 0;
    }
    double df = f(b) - f(b2);
    for (std::size_t d = 0; d < m; ++d) {
      grad[d] += df * (0.5 - u[d]);
    }
  }
  for (auto& g : grad) g /= pairs;
  return {std::move(grad), "arm", n, static_cast<std::uint64_t>(n)};
}

GradientEstimate disarm(const Vec& logits, FunctionOracle& f, int n,
                        RandomStream& rng) {
  check_even(n, "disarm");
  const Vec probs = sigmoid_vec(logits);
  const std::size_t m = logits.size();
  Vec grad(m, 0.0);
  const int pairs = n / 2;
  for (int k = 0; k < pairs; ++k) {
    BitVec b(m), b2(m);
    for (std::size_t d = 0; d < m; ++d) {
      double u = rng.uniform();
      b[d] = u < probs[d] ? 1 : 0;
      b2[d] = 1.0 - u < probs[d] ? 1 : 0;
    }
    double df = f(b) - f(b2);
    for (std::size_t d = 0; d < m; ++d) {
      grad[d] += 0.5 * df * (static_cast<double>(b[d]) - b2[d]) *
                 std::max(probs[d], 1.0 - probs[d]);
    }
  }
  for (auto& g : grad) g /= pairs;
  return {std::move(grad), "disarm", n, static_cast<std::uint64_t>(n)};
}

GradientEstimate arms(const Vec& logits, FunctionOracle& f,
                      const CopulaSpec& spec, RandomStream& rng) {
  spec.validate();
  if (spec.n < 2) throw std::invalid_argument("arms: spec.n must be >= 2");
  SampleBlock block = sample_block(spec, logits, rng);
  Vec fvals(spec.n);
  for (int i = 0; i < spec.n; ++i) fvals[i] = f(block.bits[i]);
  return {arms_core(block.bits, fvals, block.probs, block.rho), "arms", spec.n,
          static_cast<std::uint64_t>(spec.n)};
}

GradientEstimate pod(const BitVec& b, const BitVec& b2, FunctionOracle& f,
                     const Vec& logits) {
  double df = f(b) - f(b2);
  Vec grad(logits.size());
  for (std::size_t d = 0; d < grad.size(); ++d) {
    grad[d] = 0.5 * df * (static_cast<double>(b[d]) - b2[d]);
  }
  return {std::move(grad), "pod", 2, 2};
}

GradientEstimate arts(const BitVec& b, const BitVec& b2, const Vec& rho,
                      FunctionOracle& f, const Vec& logits) {
  double df = f(b) - f(b2);
  Vec grad(logits.size());
  for (std::size_t d = 0; d < grad.size(); ++d) {
    double denom = 1.0 - rho[d];
    if (denom < 1e-12) throw std::domain_error("arts: 1 - rho underflow");
    grad[d] = df * (static_cast<double>(b[d]) - b2[d]) / (2.0 * denom);
  }
  return {std::move(grad), "arts", 2, 2};
}

EstimatorConfig EstimatorConfig::parse(const std::string& name, int n) {
  EstimatorConfig cfg;
  cfg.n = n;
  if (name == "reinforce") {
    cfg.kind = EstimatorKind::Reinforce;
  } else if (name == "loorf") {
    cfg.kind = EstimatorKind::Loorf;
  } else if (name == "arm") {
    cfg.kind = EstimatorKind::Arm;
  } else if (name == "disarm") {
    cfg.kind = EstimatorKind::Disarm;
  } else if (name == "arms-dirichlet") {
    cfg.kind = EstimatorKind::ArmsDirichlet;
  } else if (name == "arms-gaussian") {
    cfg.kind = EstimatorKind::ArmsGaussian;
  } else if (name == "exact") {
    cfg.kind = EstimatorKind::Exact;
  } else if (name == "loorf-biased") {
    cfg.kind = EstimatorKind::LoorfBiased;
  } else {
    throw std::invalid_argument("unknown estimator: " + name);
  }
  return cfg;
}

std::string EstimatorConfig::name() const {
  switch (kind) {
    case EstimatorKind::Reinforce: return "reinforce";
    case EstimatorKind::Loorf: return "loorf";
    case EstimatorKind::Arm: return "arm";
    case EstimatorKind::Disarm: return "disarm";
    case EstimatorKind::ArmsDirichlet: return "arms-dirichlet";
    case EstimatorKind::ArmsGaussian: return "arms-gaussian";
    case EstimatorKind::Exact: return "exact";
    case EstimatorKind::LoorfBiased: return "loorf-biased";
  }
  return "?";
}

CopulaSpec EstimatorConfig::copula() const {
  switch (kind) {
    case EstimatorKind::ArmsDirichlet:
      return {CopulaKind::Dirichlet, n};
    case EstimatorKind::ArmsGaussian:
      return {CopulaKind::Gaussian, n};
    default:
      throw std::logic_error("copula(): not an ARMS configuration");
  }
}

GradientEstimate estimate(const EstimatorConfig& cfg, const Vec& logits,
                          FunctionOracle& f, RandomStream& rng) {
  switch (cfg.kind) {
    case EstimatorKind::Reinforce:
      return reinforce(logits, f, cfg.n, rng);
    case EstimatorKind::Loorf:
      return loorf(logits, f, cfg.n, rng);
    case EstimatorKind::Arm:
      return arm(logits, f, cfg.n, rng);
    case EstimatorKind::Disarm:
      return disarm(logits, f, cfg.n, rng);
    case EstimatorKind::ArmsDirichlet:
    case EstimatorKind::ArmsGaussian:
      return arms(logits, f, cfg.copula(), rng);
    case EstimatorKind::Exact: {
      Vec g = exact_gradient(logits, f);
      return {std::move(g), "exact", cfg.n, f.evals()};
    }
    case EstimatorKind::LoorfBiased: {
      GradientEstimate est = loorf(logits, f, cfg.n, rng);
      // Deliberately wrong normalization: 1/n instead of 1/(n-1).
      for (auto& g : est.grad) g *= static_cast<double>(cfg.n - 1) / cfg.n;
      est.estimator = "loorf-biased";
      return est;
    }
  }
  throw std::logic_error("estimate: unreachable");
}

}  // namespace arms
