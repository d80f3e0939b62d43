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

#include "arms/msbound.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace arms {

namespace {

constexpr int kMaxModelDims = 6;
constexpr double kMaxOutcomes = 1e7;

Vec sigmoid_vec(const Vec& logits) {
  Vec p(logits.size());
  for (std::size_t d = 0; d < logits.size(); ++d) p[d] = sigmoid(logits[d]);
  return p;
}

double log_bernoulli(const BitVec& b, const Vec& logits) {
  // ln prod_d p_d^b (1-p_d)^(1-b), written through log1p(exp) for stability.
  double total = 0.0;
  for (std::size_t d = 0; d < b.size(); ++d) {
    double phi = logits[d];
    // ln sigma(phi) = -ln(1 + e^-phi), ln(1 - sigma(phi)) = -phi - ln(1+e^-phi)
    double lse = phi >= 0.0 ? std::log1p(std::exp(-phi))
                            : -phi + std::log1p(std::exp(phi));
    total += b[d] ? -lse : -phi - lse;
  }
  return total;
}

double logsumexp(const Vec& v) {
  double hi = *std::max_element(v.begin(), v.end());
  if (!std::isfinite(hi)) return hi;
  double s = 0.0;
  for (double x : v) s += std::exp(x - hi);
  return hi + std::log(s);
}

BitVec bits_of(std::uint32_t index, int m) {
  BitVec b(m);
  for (int d = 0; d < m; ++d) b[d] = (index >> d) & 1u;
  return b;
}

std::uint32_t index_of(const BitVec& b) {
  std::uint32_t idx = 0;
  for (std::size_t d = 0; d < b.size(); ++d) {
    if (b[d]) idx |= 1u << d;
  }
  return idx;
}

BitVec sample_iid(const Vec& probs, RandomStream& rng) {
  BitVec b(probs.size());
  for (std::size_t d = 0; d < probs.size(); ++d) {
    b[d] = rng.uniform() < probs[d] ? 1 : 0;
  }
  return b;
}

}  // namespace

void ToyLatentModel::validate() const {
  const int m = dims();
  if (m < 1 || m > kMaxModelDims) {
    throw std::invalid_argument("ToyLatentModel: need 1 <= m <= 6");
  }
  if (static_cast<int>(posterior_logits.size()) != m) {
    throw std::invalid_argument("ToyLatentModel: posterior size mismatch");
  }
  if (likelihood.size() != (std::size_t{1} << m)) {
    throw std::invalid_argument("ToyLatentModel: likelihood table size");
  }
  for (double v : likelihood) {
    if (!(v > 0.0)) {
      throw std::invalid_argument(
          "ToyLatentModel: likelihood entries must be positive");
    }
  }
}

double ToyLatentModel::log_prior(const BitVec& b) const {
  return log_bernoulli(b, prior_logits);
}

double ToyLatentModel::log_posterior(const BitVec& b) const {
  return log_bernoulli(b, posterior_logits);
}

double ToyLatentModel::log_likelihood(const BitVec& b) const {
  return std::log(likelihood[index_of(b)]);
}

double ToyLatentModel::log_ratio(const BitVec& b) const {
  return log_prior(b) + log_likelihood(b) - log_posterior(b);
}

ToyLatentModel ToyLatentModel::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  ToyLatentModel model;
  model.prior_logits = j.at("prior_logits").get<Vec>();
  model.posterior_logits = j.at("posterior_logits").get<Vec>();
  const int m = model.dims();
  if (m < 1 || m > kMaxModelDims) {
    throw std::invalid_argument("ToyLatentModel: need 1 <= m <= 6");
  }
  model.likelihood.assign(std::size_t{1} << m, 0.0);
  for (auto& [key, value] : j.at("likelihood").items()) {
    if (static_cast<int>(key.size()) != m) {
      throw std::invalid_argument("ToyLatentModel: likelihood key length");
    }
    std::uint32_t idx = 0;
    for (int d = 0; d < m; ++d) {
      if (key[d] == '1') {
        idx |= 1u << d;
      } else if (key[d] != '0') {
        throw std::invalid_argument("ToyLatentModel: likelihood key digit");
      }
    }
    model.likelihood[idx] = value.get<double>();
  }
  model.validate();
  return model;
}

std::string ToyLatentModel::to_json() const {
  validate();
  nlohmann::json j;
  j["prior_logits"] = prior_logits;
  j["posterior_logits"] = posterior_logits;
  nlohmann::json table = nlohmann::json::object();
  const int m = dims();
  for (std::uint32_t idx = 0; idx < (1u << m); ++idx) {
    std::string key(m, '0');
    for (int d = 0; d < m; ++d) {
      if ((idx >> d) & 1u) key[d] = '1';
    }
    table[key] = likelihood[idx];
  }
  j["likelihood"] = std::move(table);
  return j.dump(2);
}

double importance_ratio(const ToyLatentModel& model, const BitVec& b) {
  return std::exp(model.log_ratio(b));
}

double multi_sample_bound_value(const Vec& log_ratios) {
  return logsumexp(log_ratios) -
         std::log(static_cast<double>(log_ratios.size()));
}

Vec naive_msb_core(const std::vector<BitVec>& samples, const Vec& log_ratios,
                   const Vec& probs) {
  const double fval = multi_sample_bound_value(log_ratios);
  Vec grad(probs.size(), 0.0);
  for (const BitVec& b : samples) {
    for (std::size_t d = 0; d < probs.size(); ++d) {
      grad[d] += fval * (b[d] - probs[d]);
    }
  }
  return grad;
}

Vec vimco_core(const std::vector<BitVec>& samples, const Vec& log_ratios,
               const Vec& probs) {
  const int n = static_cast<int>(samples.size());
  const double lhat = multi_sample_bound_value(log_ratios);
  double logr_total = 0.0;
  for (double lr : log_ratios) logr_total += lr;
  Vec grad(probs.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    // Replace r_k with the geometric mean of the others.
    double geo = (logr_total - log_ratios[k]) / (n - 1);
    Vec replaced = log_ratios;
    replaced[k] = geo;
    double baseline = multi_sample_bound_value(replaced);
    double signal = lhat - baseline;
    for (std::size_t d = 0; d < probs.size(); ++d) {
      grad[d] += signal * (samples[k][d] - probs[d]);
    }
  }
  return grad;
}

Vec arms_msb_core(const Vec& log_ratios_iid,
                  const std::vector<BitVec>& corr_samples,
                  const Vec& log_ratios_corr, const Vec& probs,
                  const Vec& rho) {
  const int n = static_cast<int>(log_ratios_iid.size());
  Vec grad(probs.size(), 0.0);
  Vec fk(n);
  for (int k = 0; k < n; ++k) {
    // f_{b_-k}(b~_i) = ln((1/n)(sum_{l != k} r(b_l) + r(b~_i))).
    Vec pool = log_ratios_iid;
    for (int i = 0; i < n; ++i) {
      pool[k] = log_ratios_corr[i];
      fk[i] = multi_sample_bound_value(pool);
    }
    double fbar = 0.0;
    for (double v : fk) fbar += v;
    fbar /= n;
    for (int i = 0; i < n; ++i) {
      double w = (fk[i] - fbar) / (n - 1);
      for (std::size_t d = 0; d < probs.size(); ++d) {
        grad[d] += w * (corr_samples[i][d] - probs[d]) / (1.0 - rho[d]);
      }
    }
  }
  return grad;
}

BoundEstimate naive_msb_grad(const ToyLatentModel& model, int n,
                             RandomStream& rng) {
  if (n < 1) throw std::invalid_argument("naive_msb_grad: n must be >= 1");
  model.validate();
  RatioOracle oracle(model);
  const Vec probs = sigmoid_vec(model.posterior_logits);
  std::vector<BitVec> samples(n);
  Vec log_ratios(n);
  for (int k = 0; k < n; ++k) {
    samples[k] = sample_iid(probs, rng);
    log_ratios[k] = oracle.log_ratio(samples[k]);
  }
  BoundEstimate est;
  est.value = multi_sample_bound_value(log_ratios);
  est.grad_phi = naive_msb_core(samples, log_ratios, probs);
  est.f_evals = oracle.evals();
  return est;
}

BoundEstimate vimco_grad(const ToyLatentModel& model, int n,
                         RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("vimco_grad: n must be >= 2");
  model.validate();
  RatioOracle oracle(model);
  const Vec probs = sigmoid_vec(model.posterior_logits);
  std::vector<BitVec> samples(n);
  Vec log_ratios(n);
  for (int k = 0; k < n; ++k) {
    samples[k] = sample_iid(probs, rng);
    log_ratios[k] = oracle.log_ratio(samples[k]);
  }
  BoundEstimate est;
  est.value = multi_sample_bound_value(log_ratios);
  est.grad_phi = vimco_core(samples, log_ratios, probs);
  est.f_evals = oracle.evals();
  return est;
}

BoundEstimate arms_msb_grad(const ToyLatentModel& model, int n,
                            const CopulaSpec& spec, RandomStream& rng) {
  if (n < 2) throw std::invalid_argument("arms_msb_grad: n must be >= 2");
  if (spec.n != n) {
    throw std::invalid_argument("arms_msb_grad: spec.n must equal n");
  }
  model.validate();
  RatioOracle oracle(model);
  const Vec probs = sigmoid_vec(model.posterior_logits);
  // The iid block and the correlated block are drawn independently.
  Vec log_ratios_iid(n);
  for (int k = 0; k < n; ++k) {
    log_ratios_iid[k] = oracle.log_ratio(sample_iid(probs, rng));
  }
  SampleBlock block = sample_block(spec, model.posterior_logits, rng);
  Vec log_ratios_corr(n);
  for (int i = 0; i < n; ++i) {
    log_ratios_corr[i] = oracle.log_ratio(block.bits[i]);
  }
  BoundEstimate est;
  est.value = multi_sample_bound_value(log_ratios_iid);
  est.grad_phi = arms_msb_core(log_ratios_iid, block.bits, log_ratios_corr,
                               probs, block.rho);
  est.f_evals = oracle.evals();
  return est;
}

double enumerated_log_evidence(const ToyLatentModel& model) {
  model.validate();
  const int m = model.dims();
  Vec terms;
  terms.reserve(std::size_t{1} << m);
  for (std::uint32_t idx = 0; idx < (1u << m); ++idx) {
    BitVec b = bits_of(idx, m);
    terms.push_back(model.log_prior(b) + model.log_likelihood(b));
  }
  return logsumexp(terms);
}

namespace {

// Walks every iid sample tuple with its probability; visit(weight, samples,
// log_ratios) is called for each.
template <typename Visit>
void for_each_tuple(const ToyLatentModel& model, const Vec& sampling_logits,
                    int n, Visit&& visit) {
  const int m = model.dims();
  const std::uint32_t patterns = 1u << m;
  if (std::pow(static_cast<double>(patterns), n) > kMaxOutcomes) {
    throw std::invalid_argument("tuple enumeration exceeds the outcome cap");
  }
  Vec weight(patterns);
  Vec logr(patterns);
  std::vector<BitVec> bcache(patterns);
  for (std::uint32_t idx = 0; idx < patterns; ++idx) {
    bcache[idx] = bits_of(idx, m);
    weight[idx] = std::exp(log_bernoulli(bcache[idx], sampling_logits));
    logr[idx] = model.log_ratio(bcache[idx]);
  }
  std::vector<std::uint32_t> digits(n, 0);
  std::vector<BitVec> samples(n);
  Vec log_ratios(n);
  bool done = false;
  while (!done) {
    double w = 1.0;
    for (int k = 0; k < n; ++k) {
      samples[k] = bcache[digits[k]];
      log_ratios[k] = logr[digits[k]];
      w *= weight[digits[k]];
    }
    visit(w, samples, log_ratios);
    int pos = 0;
    while (pos < n && ++digits[pos] == patterns) {
      digits[pos] = 0;
      ++pos;
    }
    done = pos == n;
  }
}

}  // namespace

double enumerated_bound(const ToyLatentModel& model, int n) {
  return enumerated_bound_frozen_ratios(model, model.posterior_logits, n);
}

double enumerated_bound_frozen_ratios(const ToyLatentModel& model,
                                      const Vec& sampling_logits, int n) {
  model.validate();
  if (n < 1) throw std::invalid_argument("enumerated_bound: n must be >= 1");
  double total = 0.0;
  for_each_tuple(model, sampling_logits, n,
                 [&](double w, const std::vector<BitVec>&,
                     const Vec& log_ratios) {
                   total += w * multi_sample_bound_value(log_ratios);
                 });
  return total;
}

Vec exact_msb_gradient(const ToyLatentModel& model, int n) {
  model.validate();
  const Vec probs = sigmoid_vec(model.posterior_logits);
  Vec grad(model.dims(), 0.0);
  for_each_tuple(model, model.posterior_logits, n,
                 [&](double w, const std::vector<BitVec>& samples,
                     const Vec& log_ratios) {
                   Vec g = naive_msb_core(samples, log_ratios, probs);
                   for (std::size_t d = 0; d < grad.size(); ++d) {
                     grad[d] += w * g[d];
                   }
                 });
  return grad;
}

Vec exact_vimco_expectation(const ToyLatentModel& model, int n) {
  model.validate();
  if (n < 2) throw std::invalid_argument("vimco needs n >= 2");
  const Vec probs = sigmoid_vec(model.posterior_logits);
  Vec grad(model.dims(), 0.0);
  for_each_tuple(model, model.posterior_logits, n,
                 [&](double w, const std::vector<BitVec>& samples,
                     const Vec& log_ratios) {
                   Vec g = vimco_core(samples, log_ratios, probs);
                   for (std::size_t d = 0; d < grad.size(); ++d) {
                     grad[d] += w * g[d];
                   }
                 });
  return grad;
}

Vec exact_arms_msb_expectation(const ToyLatentModel& model, int n) {
  model.validate();
  if (n < 2) throw std::invalid_argument("arms-msb needs n >= 2");
  const int m = model.dims();
  const Vec probs = sigmoid_vec(model.posterior_logits);
  const std::uint32_t columns = 1u << n;
  double block_outcomes = std::pow(static_cast<double>(columns), m);
  double tuple_outcomes = std::pow(std::pow(2.0, m), n);
  if (block_outcomes * tuple_outcomes > kMaxOutcomes) {
    throw std::invalid_argument(
        "arms-msb enumeration exceeds the outcome cap");
  }
  // Closed-form pmf and correlation of the Dirichlet block, per dimension.
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
  Vec grad(m, 0.0);
  for_each_tuple(
      model, model.posterior_logits, n,
      [&](double w_iid, const std::vector<BitVec>&, const Vec& log_iid) {
        std::vector<std::uint32_t> digits(m, 0);
        std::vector<BitVec> corr(n, BitVec(m));
        Vec log_corr(n);
        bool done = false;
        while (!done) {
          double w = w_iid;
          for (int d = 0; d < m; ++d) w *= col_pmf[d][digits[d]];
          if (w > 0.0) {
            for (int i = 0; i < n; ++i) {
              for (int d = 0; d < m; ++d) {
                corr[i][d] = (digits[d] >> i) & 1u;
              }
            }
            for (int i = 0; i < n; ++i) log_corr[i] = model.log_ratio(corr[i]);
            Vec g = arms_msb_core(log_iid, corr, log_corr, probs, rho);
            for (int d = 0; d < m; ++d) grad[d] += w * g[d];
          }
          int pos = 0;
          while (pos < m && ++digits[pos] == columns) {
            digits[pos] = 0;
            ++pos;
          }
          done = pos == m;
        }
      });
  return grad;
}

}  // namespace arms
