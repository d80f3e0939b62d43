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

#include "arms/oracle.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace arms {

namespace {

constexpr int kMaxEnumDims = 20;
constexpr double kMaxOutcomes = 1e7;

Vec sigmoid_vec(const Vec& logits) {
  Vec p(logits.size());
  for (std::size_t d = 0; d < logits.size(); ++d) p[d] = sigmoid(logits[d]);
  return p;
}

BitVec bits_of(std::uint32_t index, int m) {
  BitVec b(m);
  for (int d = 0; d < m; ++d) b[d] = (index >> d) & 1u;
  return b;
}

double pmf_of(const BitVec& b, const Vec& probs) {
  double w = 1.0;
  for (std::size_t d = 0; d < probs.size(); ++d) {
    w *= b[d] ? probs[d] : 1.0 - probs[d];
  }
  return w;
}

void check_dims(std::size_t m) {
  if (m == 0 || m > kMaxEnumDims) {
    throw std::invalid_argument("enumeration supports 1 <= m <= 20");
  }
}

// Exchangeable bivariate Bernoulli joint table for a dimension:
// index 2*b + b2 -> probability.
std::array<double, 4> pair_joint(double p, double rho) {
  double p11 = p * p + rho * p * (1.0 - p);
  double p10 = p * (1.0 - p) * (1.0 - rho);
  double p00 = 1.0 - p11 - 2.0 * p10;
  return {p00, p10, p10, p11};
}

}  // namespace

Vec exact_gradient(const Vec& logits, FunctionOracle& f) {
  check_dims(logits.size());
  const int m = static_cast<int>(logits.size());
  const Vec probs = sigmoid_vec(logits);
  Vec grad(m, 0.0);
  for (std::uint32_t idx = 0; idx < (1u << m); ++idx) {
    BitVec b = bits_of(idx, m);
    double w = pmf_of(b, probs) * f(b);
    for (int d = 0; d < m; ++d) {
      grad[d] += w * (b[d] - probs[d]);
    }
  }
  return grad;
}

double exact_expectation(const Vec& logits, FunctionOracle& f) {
  check_dims(logits.size());
  const int m = static_cast<int>(logits.size());
  const Vec probs = sigmoid_vec(logits);
  double total = 0.0;
  for (std::uint32_t idx = 0; idx < (1u << m); ++idx) {
    BitVec b = bits_of(idx, m);
    total += pmf_of(b, probs) * f(b);
  }
  return total;
}

VarianceReport estimator_variance(const EstimatorConfig& cfg,
                                  const Vec& logits, FunctionOracle& f,
                                  long replicates, const RandomStream& rng) {
  if (replicates < 2) {
    throw std::invalid_argument("estimator_variance: replicates must be >= 2");
  }
  const std::size_t m = logits.size();
  Vec mean(m, 0.0), m2(m, 0.0);
  for (long r = 0; r < replicates; ++r) {
    RandomStream stream = rng.split(static_cast<std::uint64_t>(r));
    GradientEstimate est = estimate(cfg, logits, f, stream);
    for (std::size_t d = 0; d < m; ++d) {
      double delta = est.grad[d] - mean[d];
      mean[d] += delta / (r + 1);
      m2[d] += delta * (est.grad[d] - mean[d]);
    }
  }
  VarianceReport report;
  report.estimator = cfg.name();
  report.replicates = replicates;
  report.mean = mean;
  report.per_dim_variance.resize(m);
  report.std_error_of_mean.resize(m);
  for (std::size_t d = 0; d < m; ++d) {
    report.per_dim_variance[d] = m2[d] / (replicates - 1);
    report.std_error_of_mean[d] =
        std::sqrt(report.per_dim_variance[d] / replicates);
  }
  return report;
}

CorrelationEstimate empirical_correlation(const CopulaSpec& spec, double p,
                                          long draws, RandomStream& rng) {
  spec.validate();
  if (spec.n < 2) {
    throw std::invalid_argument("empirical_correlation: spec.n must be >= 2");
  }
  if (draws < 10000) {
    throw std::invalid_argument("empirical_correlation: draws must be >= 1e4");
  }
  const Vec logits = {std::log(p / (1.0 - p))};
  const double pair_count = 0.5 * spec.n * (spec.n - 1);
  double mean_t = 0.0, m2_t = 0.0;
  for (long r = 0; r < draws; ++r) {
    SampleBlock block = sample_block(spec, logits, rng);
    int ones = 0;
    for (int i = 0; i < spec.n; ++i) ones += block.bits[i][0];
    double t = 0.5 * ones * (ones - 1) / pair_count;  // mean of b_i b_j pairs
    double delta = t - mean_t;
    mean_t += delta / (r + 1);
    m2_t += delta * (t - mean_t);
  }
  double var_t = m2_t / (draws - 1);
  double denom = p * (1.0 - p);
  CorrelationEstimate est;
  est.rho = (mean_t - p * p) / denom;
  est.std_error = std::sqrt(var_t / draws) / denom;
  return est;
}

Vec exact_pod_expectation(const Vec& logits, FunctionOracle& f) {
  check_dims(logits.size());
  const int m = static_cast<int>(logits.size());
  const Vec probs = sigmoid_vec(logits);
  Vec expectation(m, 0.0);
  for (std::uint32_t i = 0; i < (1u << m); ++i) {
    BitVec b = bits_of(i, m);
    double wb = pmf_of(b, probs);
    double fb = f(b);
    for (std::uint32_t j = 0; j < (1u << m); ++j) {
      BitVec b2 = bits_of(j, m);
      double w = wb * pmf_of(b2, probs);
      double df = fb - f(b2);
      for (int d = 0; d < m; ++d) {
        expectation[d] +=
            w * 0.5 * df * (static_cast<double>(b[d]) - b2[d]);
      }
    }
  }
  return expectation;
}

Vec exact_arts_expectation(const Vec& logits, FunctionOracle& f,
                           const Vec& rho) {
  check_dims(logits.size());
  const int m = static_cast<int>(logits.size());
  const Vec probs = sigmoid_vec(logits);
  std::vector<std::array<double, 4>> joints(m);
  for (int d = 0; d < m; ++d) {
    joints[d] = pair_joint(probs[d], rho[d]);
    for (double q : joints[d]) {
      if (q < -1e-12) {
        throw std::domain_error("exact_arts_expectation: infeasible rho");
      }
    }
  }
  Vec expectation(m, 0.0);
  for (std::uint32_t i = 0; i < (1u << m); ++i) {
    BitVec b = bits_of(i, m);
    double fb = f(b);
    for (std::uint32_t j = 0; j < (1u << m); ++j) {
      BitVec b2 = bits_of(j, m);
      double w = 1.0;
      for (int d = 0; d < m; ++d) {
        w *= joints[d][2 * b[d] + b2[d]];
      }
      if (w == 0.0) continue;
      double df = fb - f(b2);
      for (int d = 0; d < m; ++d) {
        expectation[d] += w * df * (static_cast<double>(b[d]) - b2[d]) /
                          (2.0 * (1.0 - rho[d]));
      }
    }
  }
  return expectation;
}

double exact_arts_variance_univariate(double p, double rho, double f0,
                                      double f1) {
  auto joint = pair_joint(p, rho);
  const double fv[2] = {f0, f1};
  double mean = 0.0, second = 0.0;
  for (int b = 0; b < 2; ++b) {
    for (int b2 = 0; b2 < 2; ++b2) {
      double g = (fv[b] - fv[b2]) * (b - b2) / (2.0 * (1.0 - rho));
      double w = joint[2 * b + b2];
      mean += w * g;
      second += w * g * g;
    }
  }
  return second - mean * mean;
}

namespace {

// Sum pmf(block) * core(block) over all iid blocks of n samples.
Vec iid_block_expectation(const Vec& logits, FunctionOracle& f, int n,
                          bool biased) {
  check_dims(logits.size());
  const int m = static_cast<int>(logits.size());
  const Vec probs = sigmoid_vec(logits);
  const std::uint32_t patterns = 1u << m;
  if (std::pow(static_cast<double>(patterns), n) > kMaxOutcomes) {
    throw std::invalid_argument("iid enumeration exceeds the outcome cap");
  }
  Vec fcache(patterns);
  Vec wcache(patterns);
  std::vector<BitVec> bcache(patterns);
  for (std::uint32_t idx = 0; idx < patterns; ++idx) {
    bcache[idx] = bits_of(idx, m);
    fcache[idx] = f(bcache[idx]);
    wcache[idx] = pmf_of(bcache[idx], probs);
  }
  Vec expectation(m, 0.0);
  std::vector<std::uint32_t> digits(n, 0);
  std::vector<BitVec> samples(n);
  Vec fvals(n);
  bool done = false;
  while (!done) {
    double w = 1.0;
    for (int i = 0; i < n; ++i) {
      samples[i] = bcache[digits[i]];
      fvals[i] = fcache[digits[i]];
      w *= wcache[digits[i]];
    }
    Vec g = n == 1 ? Vec(m, 0.0) : loorf_core(samples, fvals, probs);
    if (n == 1) {
      for (int d = 0; d < m; ++d) {
        g[d] = fvals[0] * (samples[0][d] - probs[d]);
      }
    }
    double scale = biased ? static_cast<double>(n - 1) / n : 1.0;
    for (int d = 0; d < m; ++d) expectation[d] += w * g[d] * scale;
    // next mixed-radix index
    int pos = 0;
    while (pos < n && ++digits[pos] == patterns) {
      digits[pos] = 0;
      ++pos;
    }
    done = pos == n;
  }
  return expectation;
}

Vec reinforce_expectation(const Vec& logits, FunctionOracle& f) {
  // Each sample's term has the same expectation, so the n-sample average
  // has the single-sample expectation: exactly the true gradient formula.
  return exact_gradient(logits, f);
}

Vec arms_dirichlet_expectation(const Vec& logits, FunctionOracle& f, int n) {
  check_dims(logits.size());
  const int m = static_cast<int>(logits.size());
  const Vec probs = sigmoid_vec(logits);
  const std::uint32_t columns = 1u << n;
  if (std::pow(static_cast<double>(columns), m) > kMaxOutcomes) {
    throw std::invalid_argument(
        "arms-dirichlet enumeration exceeds the outcome cap");
  }
  std::vector<Vec> col_pmf(m, Vec(columns));
  Vec rho(m);
  for (int d = 0; d < m; ++d) {
    Branch branch = dirichlet_branch_select(probs[d]);
    rho[d] = dirichlet_bernoulli_corr(probs[d], n, branch);
    for (std::uint32_t c = 0; c < columns; ++c) {
      col_pmf[d][c] = dirichlet_bernoulli_joint_pmf_by_ones(
          std::popcount(c), probs[d], n, branch);
    }
  }
  Vec expectation(m, 0.0);
  std::vector<std::uint32_t> digits(m, 0);
  std::vector<BitVec> samples(n, BitVec(m));
  Vec fvals(n);
  bool done = false;
  while (!done) {
    double w = 1.0;
    for (int d = 0; d < m; ++d) w *= col_pmf[d][digits[d]];
    if (w > 0.0) {
      for (int i = 0; i < n; ++i) {
        for (int d = 0; d < m; ++d) {
          samples[i][d] = (digits[d] >> i) & 1u;
        }
      }
      for (int i = 0; i < n; ++i) fvals[i] = f(samples[i]);
      Vec g = arms_core(samples, fvals, probs, rho);
      for (int d = 0; d < m; ++d) expectation[d] += w * g[d];
    }
    int pos = 0;
    while (pos < m && ++digits[pos] == columns) {
      digits[pos] = 0;
      ++pos;
    }
    done = pos == m;
  }
  return expectation;
}

}  // namespace

Vec exact_estimator_expectation(const EstimatorConfig& cfg, const Vec& logits,
                                FunctionOracle& f) {
  switch (cfg.kind) {
    case EstimatorKind::Reinforce:
      return reinforce_expectation(logits, f);
    case EstimatorKind::Loorf:
      return iid_block_expectation(logits, f, cfg.n, /*biased=*/false);
    case EstimatorKind::LoorfBiased:
      return iid_block_expectation(logits, f, cfg.n, /*biased=*/true);
    case EstimatorKind::ArmsDirichlet:
      return arms_dirichlet_expectation(logits, f, cfg.n);
    case EstimatorKind::Exact:
      return exact_gradient(logits, f);
    case EstimatorKind::Arm:
    case EstimatorKind::Disarm:
    case EstimatorKind::ArmsGaussian:
      throw std::invalid_argument(
          "exact_estimator_expectation: no closed joint pmf for " +
          cfg.name() + "; use statistical testing");
  }
  throw std::logic_error("exact_estimator_expectation: unreachable");
}

}  // namespace arms
