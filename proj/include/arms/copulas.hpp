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

#ifndef ARMS_COPULAS_HPP
#define ARMS_COPULAS_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "arms/rng.hpp"

namespace arms {

using BitVec = std::vector<std::uint8_t>;
using Vec = std::vector<double>;

enum class CopulaKind { Independent, AntitheticPair, Dirichlet, Gaussian };

/// Which of the two Dirichlet copula samples was used for a dimension:
/// Primary is u~ and Flipped is u~' = 1 - u~.
enum class Branch { Primary, Flipped };

struct CopulaSpec {
  CopulaKind kind = CopulaKind::Independent;
  int n = 2;

  /// Throws std::invalid_argument on an inconsistent (kind, n) pair.
  void validate() const;
};

/// n jointly sampled Bernoulli replicates per dimension, with the pairwise
/// correlation needed by the debiasing term. bits is n rows of m entries.
struct SampleBlock {
  std::vector<BitVec> bits;  // bits[i][d], i < n, d < m
  Vec probs;                 // sigma(phi), per dimension
  Vec rho;                   // pairwise Bernoulli correlation, per dimension
};

/// One draw of the antithetic Dirichlet copula: returns the pair
/// (u~, u~' = 1 - u~) with u~_i = 1 - (1 - d_i)^(n-1), d ~ Dir(1_n) built
/// from d_i = ln(v_i) / sum_j ln(v_j). Degenerate v draws are resampled.
std::pair<Vec, Vec> sample_dirichlet_copula(int n, RandomStream& rng);

/// One draw of the antithetic Gaussian copula: u~_i = Phi(x_i) with x the
/// zero-sum projection x_i = (z_i - zbar) * sqrt(n/(n-1)) of iid standard
/// normals, which has exact pairwise correlation -1/(n-1).
Vec sample_gaussian_copula(int n, RandomStream& rng);

/// bit_i = 1 iff u_i < p.
BitVec threshold_to_bernoulli(const Vec& uniforms, double p);

/// Branch rule: Primary (u~) when p > 0.5, Flipped (u~') when
/// p < 0.5. The tie at p = 0.5 resolves to Flipped; both branches give the
/// same correlation there.
Branch dirichlet_branch_select(double p);

/// Closed-form pairwise Bernoulli correlation after thresholding the chosen
/// Dirichlet copula branch at p. Throws std::domain_error for p in {0, 1}.
double dirichlet_bernoulli_corr(double p, int n, Branch branch);

/// Pairwise Bernoulli correlation for the antithetic Gaussian copula:
/// (Phi2(z, z; -1/(n-1)) - p^2) / (p(1-p)) with z = Phi^-1(p). The n = 2
/// case is the exact antithetic pair, P(b=1, b'=1) = max(0, 2p-1).
double gaussian_bernoulli_corr(double p, int n);

/// The minimal achievable pair correlation -min(p/(1-p), (1-p)/p).
double min_pair_correlation(double p);

/// Draws a full n x m sample block: a fresh copula column per dimension,
/// thresholded at sigma(phi^d), with the matching correlation recorded.
SampleBlock sample_block(const CopulaSpec& spec, const Vec& logits,
                         RandomStream& rng);

/// Exact probability of an n-bit joint pattern under the Dirichlet copula,
/// via the flat-Dirichlet survival identity and inclusion-exclusion. The
/// value depends only on the number of ones in the pattern.
double dirichlet_bernoulli_joint_pmf(const BitVec& pattern, double p, int n,
                                     Branch branch);

/// Same pmf addressed by the count of ones (exchangeability).
double dirichlet_bernoulli_joint_pmf_by_ones(int ones, double p, int n,
                                             Branch branch);

}  // namespace arms

#endif  // ARMS_COPULAS_HPP
