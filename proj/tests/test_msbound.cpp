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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "arms/msbound.hpp"
#include "arms/rng.hpp"

namespace {

arms::ToyLatentModel random_model(int m, arms::RandomStream& rng) {
  arms::ToyLatentModel model;
  model.prior_logits.resize(m);
  model.posterior_logits.resize(m);
  model.likelihood.resize(std::size_t{1} << m);
  for (int d = 0; d < m; ++d) {
    model.prior_logits[d] = 4.0 * rng.uniform() - 2.0;
    model.posterior_logits[d] = 4.0 * rng.uniform() - 2.0;
  }
  for (double& v : model.likelihood) v = 0.1 + 2.0 * rng.uniform();
  model.validate();
  return model;
}

}  // namespace

TEST_CASE("bound ordering: L_1 <= L_2 <= L_3 <= ln p(x)") {
  arms::RandomStream rng(101);
  for (int trial = 0; trial < 20; ++trial) {
    arms::ToyLatentModel model = random_model(2 + trial % 2, rng);
    double l1 = arms::enumerated_bound(model, 1);
    double l2 = arms::enumerated_bound(model, 2);
    double l3 = arms::enumerated_bound(model, 3);
    double ev = arms::enumerated_log_evidence(model);
    CHECK(l1 <= l2 + 1e-12);
    CHECK(l2 <= l3 + 1e-12);
    CHECK(l3 <= ev + 1e-12);
  }
}

TEST_CASE("L_1 equals the plain variational bound") {
  // With one sample the bound is E_q[ln r(b)].
  arms::RandomStream rng(103);
  arms::ToyLatentModel model = random_model(3, rng);
  double direct = 0.0;
  const int m = model.dims();
  for (int pat = 0; pat < (1 << m); ++pat) {
    arms::BitVec b(m);
    for (int d = 0; d < m; ++d) b[d] = (pat >> d) & 1;
    double q = std::exp(model.log_posterior(b));
    direct += q * model.log_ratio(b);
  }
  CHECK(arms::enumerated_bound(model, 1) ==
        doctest::Approx(direct).epsilon(1e-12).scale(1));
}

TEST_CASE("multi_sample_bound_value is a stabilized log-mean-exp") {
  arms::Vec lr = {-700.0, -701.0, -702.0};
  double v = arms::multi_sample_bound_value(lr);
  CHECK(std::isfinite(v));
  CHECK(v < -700.0);
  CHECK(v > -702.0 - std::log(3.0));
  arms::Vec one = {1.3};
  CHECK(arms::multi_sample_bound_value(one) ==
        doctest::Approx(1.3).epsilon(1e-15));
}

TEST_CASE("estimator expectations agree with the exact bound gradient") {
  arms::RandomStream rng(107);
  for (int trial = 0; trial < 4; ++trial) {
    arms::ToyLatentModel model = random_model(2, rng);
    for (int n : {2, 3}) {
      arms::Vec want = arms::exact_msb_gradient(model, n);
      arms::Vec vimco = arms::exact_vimco_expectation(model, n);
      arms::Vec armsd = arms::exact_arms_msb_expectation(model, n);
      for (int d = 0; d < model.dims(); ++d) {
        CHECK(vimco[d] ==
              doctest::Approx(want[d]).epsilon(1e-9).scale(1));
        CHECK(armsd[d] ==
              doctest::Approx(want[d]).epsilon(1e-9).scale(1));
      }
    }
  }
}

TEST_CASE("exact bound gradient matches the frozen-ratio finite difference") {
  arms::RandomStream rng(109);
  arms::ToyLatentModel model = random_model(2, rng);
  for (int n : {1, 2, 3}) {
    arms::Vec grad = arms::exact_msb_gradient(model, n);
    const double h = 1e-5;
    for (int d = 0; d < model.dims(); ++d) {
      arms::Vec lo = model.posterior_logits, hi = model.posterior_logits;
      lo[d] -= h;
      hi[d] += h;
      double fd = (arms::enumerated_bound_frozen_ratios(model, hi, n) -
                   arms::enumerated_bound_frozen_ratios(model, lo, n)) /
                  (2.0 * h);
      CHECK(grad[d] == doctest::Approx(fd).epsilon(1e-6).scale(1));
    }
  }
}

TEST_CASE("evaluation budgets: naive n, VIMCO n, ARMS 2n") {
  arms::RandomStream rng(113);
  arms::ToyLatentModel model = random_model(3, rng);
  for (int n : {2, 4, 6}) {
    arms::BoundEstimate nv = arms::naive_msb_grad(model, n, rng);
    arms::BoundEstimate vm = arms::vimco_grad(model, n, rng);
    arms::BoundEstimate ad = arms::arms_msb_grad(
        model, n, {arms::CopulaKind::Dirichlet, n}, rng);
    arms::BoundEstimate ag = arms::arms_msb_grad(
        model, n, {arms::CopulaKind::Gaussian, n}, rng);
    CHECK(nv.f_evals == static_cast<std::uint64_t>(n));
    CHECK(vm.f_evals == static_cast<std::uint64_t>(n));
    CHECK(ad.f_evals == static_cast<std::uint64_t>(2 * n));
    CHECK(ag.f_evals == static_cast<std::uint64_t>(2 * n));
    CHECK(nv.grad_phi.size() == static_cast<std::size_t>(model.dims()));
    CHECK(std::isfinite(vm.value));
  }
}

TEST_CASE("VIMCO variance does not exceed the naive estimator's") {
  arms::RandomStream master(127);
  arms::ToyLatentModel model = random_model(2, master);
  const int n = 4;
  const long reps = 100000;
  arms::Vec var_naive(model.dims(), 0.0), var_vimco(model.dims(), 0.0);
  arms::Vec mean_naive(model.dims(), 0.0), mean_vimco(model.dims(), 0.0);
  for (long t = 0; t < reps; ++t) {
    arms::RandomStream r1 = master.split(2 * t);
    arms::RandomStream r2 = master.split(2 * t + 1);
    arms::BoundEstimate nv = arms::naive_msb_grad(model, n, r1);
    arms::BoundEstimate vm = arms::vimco_grad(model, n, r2);
    for (int d = 0; d < model.dims(); ++d) {
      mean_naive[d] += nv.grad_phi[d];
      mean_vimco[d] += vm.grad_phi[d];
      var_naive[d] += nv.grad_phi[d] * nv.grad_phi[d];
      var_vimco[d] += vm.grad_phi[d] * vm.grad_phi[d];
    }
  }
  for (int d = 0; d < model.dims(); ++d) {
    double mn = mean_naive[d] / reps, mv = mean_vimco[d] / reps;
    double vn = var_naive[d] / reps - mn * mn;
    double vv = var_vimco[d] / reps - mv * mv;
    CHECK(vv <= vn);
  }
}

TEST_CASE("JSON round trip preserves the model exactly") {
  arms::RandomStream rng(131);
  arms::ToyLatentModel model = random_model(3, rng);
  arms::ToyLatentModel back = arms::ToyLatentModel::from_json(model.to_json());
  CHECK(back.prior_logits == model.prior_logits);
  CHECK(back.posterior_logits == model.posterior_logits);
  CHECK(back.likelihood == model.likelihood);
}

TEST_CASE("from_json follows the binary-key schema") {
  const char* text = R"({
    "prior_logits": [0.25, -0.5],
    "posterior_logits": [0.0, 1.0],
    "likelihood": {"00": 1.0, "10": 2.0, "01": 0.5, "11": 1.5}
  })";
  arms::ToyLatentModel model = arms::ToyLatentModel::from_json(text);
  CHECK(model.dims() == 2);
  // Character d of the key is bit d, so "10" sets bit 0.
  CHECK(model.likelihood[0] == 1.0);
  CHECK(model.likelihood[1] == 2.0);
  CHECK(model.likelihood[2] == 0.5);
  CHECK(model.likelihood[3] == 1.5);
}

TEST_CASE("model validation rejects bad instances") {
  arms::ToyLatentModel model;
  model.prior_logits = {0.0, 0.0};
  model.posterior_logits = {0.0};
  model.likelihood = {1.0, 1.0, 1.0, 1.0};
  CHECK_THROWS(model.validate());
  model.posterior_logits = {0.0, 0.0};
  model.likelihood = {1.0, 0.0, 1.0, 1.0};
  CHECK_THROWS(model.validate());
  model.likelihood = {1.0, 1.0, 1.0};
  CHECK_THROWS(model.validate());
}

TEST_CASE("importance_ratio agrees with the log-space pieces") {
  arms::RandomStream rng(137);
  arms::ToyLatentModel model = random_model(2, rng);
  arms::BitVec b = {1, 0};
  double want = std::exp(model.log_prior(b) + model.log_likelihood(b) -
                         model.log_posterior(b));
  CHECK(arms::importance_ratio(model, b) ==
        doctest::Approx(want).epsilon(1e-13));
}
