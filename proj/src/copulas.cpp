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

#include "arms/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace arms {

namespace {
// Keep copula entries strictly inside (0, 1).
constexpr double kUnitEps = 1e-15;
constexpr double kRhoCap = 1.0 - 1e-12;

double clamp_unit(double u) {
  return std::clamp(u, kUnitEps, 1.0 - kUnitEps);
}

double binomial(int n, int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
  }
  return c;
}
}  // namespace

void CopulaSpec::validate() const {
  if (kind == CopulaKind::AntitheticPair && n != 2) {
    throw std::invalid_argument("CopulaSpec: AntitheticPair requires n = 2");
  }
  if (kind == CopulaKind::Independent) {
    if (n < 1) throw std::invalid_argument("CopulaSpec: n must be >= 1");
  } else if (n < 2) {
    throw std::invalid_argument("CopulaSpec: n must be >= 2");
  }
}

std::pair<Vec, Vec> sample_dirichlet_copula(int n, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("sample_dirichlet_copula: n < 2");
  Vec logv(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double v = rng.uniform();
    while (v < 1e-300 || v >= 1.0) v = rng.uniform();
    logv[i] = std::log(v);
    total += logv[i];
  }
  Vec u(n), uflip(n);
  for (int i = 0; i < n; ++i) {
    double d = logv[i] / total;
    double s = std::pow(1.0 - d, n - 1);  // survival of the Beta(1, n-1) marginal
    uflip[i] = clamp_unit(s);
    u[i] = clamp_unit(1.0 - s);
  }
  return {u, uflip};
}

Vec sample_gaussian_copula(int n, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("sample_gaussian_copula: n < 2");
  Vec z(n);
  double mean = 0.0;
  for (int i = 0; i < n; ++i) {
    z[i] = rng.normal();
    mean += z[i];
  }
  mean /= n;
  // Centering projects onto the zero-sum hyperplane; rescaling restores unit
  // marginal variance and leaves exact equicorrelation -1/(n-1).
  double scale = std::sqrt(static_cast<double>(n) / (n - 1));
  Vec u(n);
  for (int i = 0; i < n; ++i) {
    u[i] = clamp_unit(std_normal_cdf((z[i] - mean) * scale));
  }
  return u;
}

BitVec threshold_to_bernoulli(const Vec& uniforms, double p) {
  BitVec bits(uniforms.size());
  for (std::size_t i = 0; i < uniforms.size(); ++i) {
    bits[i] = uniforms[i] < p ? 1 : 0;
  }
  return bits;
}

Branch dirichlet_branch_select(double p) {
  return p > 0.5 ? Branch::Primary : Branch::Flipped;
}

double dirichlet_bernoulli_corr(double p, int n, Branch branch) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("dirichlet_bernoulli_corr: p must be in (0, 1)");
  }
  if (n < 2) throw std::domain_error("dirichlet_bernoulli_corr: n < 2");
  double joint11;
  if (branch == Branch::Primary) {
    double t = 2.0 * std::pow(1.0 - p, 1.0 / (n - 1)) - 1.0;
    joint11 = std::pow(std::max(0.0, t), n - 1) - (1.0 - p) * (1.0 - p);
  } else {
    double t = 2.0 * std::pow(p, 1.0 / (n - 1)) - 1.0;
    joint11 = std::pow(std::max(0.0, t), n - 1) - p * p;
  }
  return std::min(joint11 / (p * (1.0 - p)), kRhoCap);
}

double gaussian_bernoulli_corr(double p, int n) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("gaussian_bernoulli_corr: p must be in (0, 1)");
  }
  if (n < 2) throw std::domain_error("gaussian_bernoulli_corr: n < 2");
  double p11;
  if (n == 2) {
    // Exact antithetic pair; the CDF routine excludes |rho| = 1.
    p11 = std::max(0.0, 2.0 * p - 1.0);
  } else {
    double z = std_normal_inv_cdf(p);
    p11 = bivariate_normal_cdf(z, z, -1.0 / (n - 1));
  }
  return std::min((p11 - p * p) / (p * (1.0 - p)), kRhoCap);
}

double min_pair_correlation(double p) {
  return -std::min(p / (1.0 - p), (1.0 - p) / p);
}

SampleBlock sample_block(const CopulaSpec& spec, const Vec& logits,
                         RandomStream& rng) {
  spec.validate();
  const int n = spec.n;
  const std::size_t m = logits.size();
  SampleBlock block;
  block.bits.assign(n, BitVec(m, 0));
  block.probs.resize(m);
  block.rho.resize(m);
  for (std::size_t d = 0; d < m; ++d) {
    double p = sigmoid(logits[d]);
    block.probs[d] = p;
    bool degenerate = !(p > 0.0 && p < 1.0);
    Vec column;
    double rho = 0.0;
    switch (spec.kind) {
      case CopulaKind::Independent: {
        column.resize(n);
        for (int i = 0; i < n; ++i) column[i] = rng.uniform();
        rho = 0.0;
        break;
      }
      case CopulaKind::AntitheticPair: {
        double u = rng.uniform();
        column = {u, 1.0 - u};
        rho = degenerate ? 0.0 : min_pair_correlation(p);
        break;
      }
      case CopulaKind::Dirichlet: {
        auto [u, uflip] = sample_dirichlet_copula(n, rng);
        Branch branch = dirichlet_branch_select(p);
        column = branch == Branch::Primary ? std::move(u) : std::move(uflip);
        rho = degenerate ? 0.0 : dirichlet_bernoulli_corr(p, n, branch);
        break;
      }
      case CopulaKind::Gaussian: {
        column = sample_gaussian_copula(n, rng);
        rho = degenerate ? 0.0 : gaussian_bernoulli_corr(p, n);
        break;
      }
    }
    BitVec bits = threshold_to_bernoulli(column, p);
    for (int i = 0; i < n; ++i) block.bits[i][d] = bits[i];
    block.rho[d] = std::min(rho, kRhoCap);
  }
  return block;
}

double dirichlet_bernoulli_joint_pmf_by_ones(int ones, double p, int n,
                                             Branch branch) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error(
        "dirichlet_bernoulli_joint_pmf: p must be in (0, 1)");
  }
  if (n < 2 || ones < 0 || ones > n) {
    throw std::domain_error("dirichlet_bernoulli_joint_pmf: bad arguments");
  }
  // For the Flipped branch, bit_i = 1 iff d_i > a with a = 1 - p^(1/(n-1)).
  // For the Primary branch, bit_i = 0 iff d_i > a with a = 1 - (1-p)^(1/(n-1)).
  // Either way the pattern probability is P(d_i > a on A, d_i < a off A),
  // which inclusion-exclusion reduces to the simplex survival identity
  // P(d_i > a for all i in S) = max(0, 1 - |S| a)^(n-1).
  int above;
  double a;
  if (branch == Branch::Flipped) {
    above = ones;
    a = 1.0 - std::pow(p, 1.0 / (n - 1));
  } else {
    above = n - ones;
    a = 1.0 - std::pow(1.0 - p, 1.0 / (n - 1));
  }
  double prob = 0.0;
  for (int t = 0; t <= n - above; ++t) {
    double surv = std::max(0.0, 1.0 - (above + t) * a);
    double term = binomial(n - above, t) * std::pow(surv, n - 1);
    prob += (t % 2 == 0) ? term : -term;
  }
  return std::max(0.0, prob);
}

double dirichlet_bernoulli_joint_pmf(const BitVec& pattern, double p, int n,
                                     Branch branch) {
  if (static_cast<int>(pattern.size()) != n) {
    throw std::domain_error("dirichlet_bernoulli_joint_pmf: pattern size");
  }
  int ones = 0;
  for (auto b : pattern) ones += b ? 1 : 0;
  return dirichlet_bernoulli_joint_pmf_by_ones(ones, p, n, branch);
}

}  // namespace arms
