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

#ifndef ARMS_SPECFN_HPP
#define ARMS_SPECFN_HPP

namespace arms {

/// Standard normal CDF Phi(x). Saturates to 0/1 for extreme arguments,
/// never throws. Absolute error below 1e-15.
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

/// Inverse of the standard normal CDF. Rational approximation refined by
/// Newton steps, so that std_normal_cdf(std_normal_inv_cdf(p)) == p to
/// well below 1e-9. Throws std::domain_error for p outside (0, 1).
double std_normal_inv_cdf(double p);

/// CDF of a bivariate standard normal with correlation rho, evaluated at
/// (h, k): P(X < h, Y < k). Requires |rho| <= 1 - 1e-12; callers handle
/// the perfectly correlated limits themselves. Absolute error below 1e-7
/// (in practice near machine precision). Throws std::domain_error when
/// |rho| is too close to 1.
double bivariate_normal_cdf(double h, double k, double rho);

/// Marginal CDF of a flat-Dirichlet(1_n) coordinate d_i, or of 1 - d_i
/// when flipped: I_x(1, n-1) = 1 - (1-x)^(n-1) and I_x(n-1, 1) = x^(n-1).
/// Throws std::domain_error for x outside [0, 1] or n < 2.
double beta_cdf_one_param(double x, int n, bool flipped);

/// Numerically stable logistic sigmoid.
double sigmoid(double x);

}  // namespace arms

#endif  // ARMS_SPECFN_HPP
