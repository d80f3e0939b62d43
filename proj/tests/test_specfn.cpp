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
#include <stdexcept>

#include "arms/specfn.hpp"

namespace {

// Independent quadrature oracle for the bivariate normal CDF: Simpson's
// rule on the correlation integral
//   Phi2(h, k, rho) = Phi(h)Phi(k)
//     + (1/2pi) int_0^rho exp(-(h^2 - 2 r h k + k^2)/(2(1-r^2)))
//                 / sqrt(1-r^2) dr.
double phi2_quadrature(double h, double k, double rho) {
  const int steps = 4000;  // even
  const double two_pi = 6.283185307179586476925286766559;
  auto integrand = [&](double r) {
    double omr2 = 1.0 - r * r;
    return std::exp(-(h * h - 2.0 * r * h * k + k * k) / (2.0 * omr2)) /
           std::sqrt(omr2);
  };
  double dr = rho / steps;
  double acc = integrand(0.0) + integrand(rho);
  for (int i = 1; i < steps; ++i) {
    acc += (i % 2 == 1 ? 4.0 : 2.0) * integrand(i * dr);
  }
  acc *= dr / 3.0;
  return arms::std_normal_cdf(h) * arms::std_normal_cdf(k) + acc / two_pi;
}

}  // namespace

TEST_CASE("std_normal_cdf matches reference values") {
  CHECK(arms::std_normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(arms::std_normal_cdf(1.0) ==
        doctest::Approx(0.8413447460685429).epsilon(1e-14));
  CHECK(arms::std_normal_cdf(-1.0) ==
        doctest::Approx(1.0 - 0.8413447460685429).epsilon(1e-14));
  CHECK(arms::std_normal_cdf(2.0) ==
        doctest::Approx(0.9772498680518208).epsilon(1e-14));
  CHECK(arms::std_normal_cdf(-40.0) == 0.0);
  CHECK(arms::std_normal_cdf(40.0) == 1.0);
}

TEST_CASE("std_normal_cdf is monotone and symmetric") {
  double prev = -1.0;
  for (double x = -8.0; x <= 8.0; x += 0.125) {
    double c = arms::std_normal_cdf(x);
    CHECK(c >= prev);
    CHECK(c + arms::std_normal_cdf(-x) == doctest::Approx(1.0).epsilon(1e-14));
    prev = c;
  }
}

TEST_CASE("std_normal_inv_cdf round trips through the CDF") {
  for (double p = 1e-10; p < 1.0; p = p < 0.01 ? p * 3.0 : p + 0.01) {
    double x = arms::std_normal_inv_cdf(p);
    CHECK(arms::std_normal_cdf(x) == doctest::Approx(p).epsilon(1e-11));
  }
  CHECK(arms::std_normal_inv_cdf(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(arms::std_normal_inv_cdf(0.8413447460685429) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("std_normal_inv_cdf rejects arguments outside (0, 1)") {
  CHECK_THROWS_AS(arms::std_normal_inv_cdf(0.0), std::domain_error);
  CHECK_THROWS_AS(arms::std_normal_inv_cdf(1.0), std::domain_error);
  CHECK_THROWS_AS(arms::std_normal_inv_cdf(-0.2), std::domain_error);
  CHECK_THROWS_AS(arms::std_normal_inv_cdf(1.2), std::domain_error);
}

TEST_CASE("bivariate_normal_cdf against the quadrature oracle") {
  const double hs[] = {-1.5, -0.3, 0.0, 0.7, 2.1};
  const double ks[] = {-2.0, -0.5, 0.0, 1.2};
  const double rhos[] = {-0.95, -0.5, -1.0 / 3.0, -0.1, 0.1, 0.6, 0.9};
  for (double h : hs) {
    for (double k : ks) {
      for (double rho : rhos) {
        double got = arms::bivariate_normal_cdf(h, k, rho);
        double want = phi2_quadrature(h, k, rho);
        CHECK(got == doctest::Approx(want).epsilon(2e-8).scale(1));
      }
    }
  }
}

TEST_CASE("bivariate_normal_cdf orthant identity at the origin") {
  const double pi = 3.141592653589793238462643383279;
  for (double rho = -0.99; rho <= 0.995; rho += 0.07) {
    double want = 0.25 + std::asin(rho) / (2.0 * pi);
    CHECK(arms::bivariate_normal_cdf(0.0, 0.0, rho) ==
          doctest::Approx(want).epsilon(1e-12).scale(1));
  }
}

TEST_CASE("bivariate_normal_cdf reduces to the product at rho = 0") {
  for (double h = -3.0; h <= 3.0; h += 0.5) {
    for (double k = -3.0; k <= 3.0; k += 0.5) {
      double want = arms::std_normal_cdf(h) * arms::std_normal_cdf(k);
      CHECK(arms::bivariate_normal_cdf(h, k, 0.0) ==
            doctest::Approx(want).epsilon(1e-13).scale(1));
    }
  }
}

TEST_CASE("bivariate_normal_cdf is symmetric and monotone in rho") {
  for (double rho = -0.9; rho <= 0.9; rho += 0.3) {
    CHECK(arms::bivariate_normal_cdf(0.4, -1.1, rho) ==
          doctest::Approx(arms::bivariate_normal_cdf(-1.1, 0.4, rho))
              .epsilon(1e-13));
  }
  double prev = -1.0;
  for (double rho = -0.999; rho <= 0.999; rho += 0.037) {
    double v = arms::bivariate_normal_cdf(0.2, -0.4, rho);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
}

TEST_CASE("bivariate_normal_cdf rejects |rho| at 1") {
  CHECK_THROWS_AS(arms::bivariate_normal_cdf(0.0, 0.0, 1.0),
                  std::domain_error);
  CHECK_THROWS_AS(arms::bivariate_normal_cdf(0.0, 0.0, -1.0),
                  std::domain_error);
}

TEST_CASE("beta_cdf_one_param closed forms") {
  // CDF of a flat-Dirichlet(1_n) coordinate: 1 - (1-x)^(n-1).
  CHECK(arms::beta_cdf_one_param(0.3, 4, false) ==
        doctest::Approx(1.0 - 0.343).epsilon(1e-14));
  // CDF of 1 - d_i: x^(n-1).
  CHECK(arms::beta_cdf_one_param(0.3, 4, true) ==
        doctest::Approx(0.027).epsilon(1e-14));
  CHECK(arms::beta_cdf_one_param(0.0, 3, false) == 0.0);
  CHECK(arms::beta_cdf_one_param(1.0, 3, false) == 1.0);
  CHECK(arms::beta_cdf_one_param(0.0, 3, true) == 0.0);
  CHECK(arms::beta_cdf_one_param(1.0, 3, true) == 1.0);
  CHECK_THROWS_AS(arms::beta_cdf_one_param(-0.1, 3, false), std::domain_error);
  CHECK_THROWS_AS(arms::beta_cdf_one_param(1.1, 3, true), std::domain_error);
  CHECK_THROWS_AS(arms::beta_cdf_one_param(0.5, 1, false), std::domain_error);
}

TEST_CASE("sigmoid is stable and matches the closed form") {
  CHECK(arms::sigmoid(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(arms::sigmoid(2.0) ==
        doctest::Approx(1.0 / (1.0 + std::exp(-2.0))).epsilon(1e-15));
  CHECK(arms::sigmoid(-800.0) == 0.0);
  CHECK(arms::sigmoid(800.0) == 1.0);
  CHECK(arms::sigmoid(3.5) + arms::sigmoid(-3.5) ==
        doctest::Approx(1.0).epsilon(1e-15));
}
