/* Copyright 2026 The dlgibbs Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Random variate generation for the distributions used by the samplers.
//
// Parameterizations are fixed for the whole library:
//   Gamma(shape, rate)        mean shape / rate
//   Exponential(rate)         mean 1 / rate
//   InverseGaussian(mu, lam)  mean mu, shape lam, variance mu^3 / lam
//   GIG(p, rho, chi)          density proportional to
//                             x^(p - 1) exp(-(rho x + chi / x) / 2), x > 0
//
// GIG conventions differ between references; the one above is the
// three-argument giG(p, rho, chi) form. GIG(p, rho, 0) is Gamma(p, rho / 2)
// and 1 / GIG(p, rho, chi) is GIG(-p, chi, rho).

#pragma once

#include <cstddef>
#include <vector>

#include "dlgibbs/rng.hpp"

namespace dlgibbs {

/// Parameters of a generalized inverse Gaussian law. Construction rejects
/// non-finite values, rho <= 0, chi < 0 and the improper case chi = 0 with
/// p <= 0.
class GigParams {
 public:
  GigParams(double p, double rho, double chi);

  double p() const noexcept { return p_; }
  double rho() const noexcept { return rho_; }
  double chi() const noexcept { return chi_; }

  /// Unnormalized log density; -inf for x <= 0.
  double log_kernel(double x) const noexcept;

 private:
  double p_;
  double rho_;
  double chi_;
};

/// log of a Gamma(shape, 1) draw. For shape < 1 this is computed entirely in
/// log space, so it stays finite even when the draw itself would underflow.
double sample_log_gamma(double shape, RngStream& rng);

/// Gamma(shape, rate). Results that would underflow are returned as the
/// smallest normal double, so the draw is always strictly positive.
double sample_gamma(double shape, double rate, RngStream& rng);

double sample_exponential(double rate, RngStream& rng);

/// Inverse Gaussian (Wald) via the Michael-Schucany-Haas transformation.
double sample_inverse_gaussian(double mu, double lam, RngStream& rng);

/// Exact GIG draw.
///
/// The standardized two-parameter law x^(|p|-1) exp(-omega (x + 1/x) / 2),
/// omega = sqrt(rho chi), is sampled by rejection in one of three regimes
/// (Hoermann and Leydold, 2014): ratio-of-uniforms around the mode for
/// |p| > 2 or omega > 3, ratio-of-uniforms without shift for moderate
/// parameters, and a three-piece dominating density for small omega with
/// |p| < 1. The last regime covers p in (-1, 0) with chi close to 0. The
/// standardized draw is scaled by sqrt(chi / rho), and inverted for p < 0.
double sample_gig(const GigParams& params, RngStream& rng);

/// Symmetric Dirichlet(a, ..., a) of length n from normalized Gamma(a, 1)
/// draws. Normalization happens in log space; components can underflow to
/// exactly 0 for very small a.
std::vector<double> sample_dirichlet(double a, std::size_t n, RngStream& rng);

/// E[X^order] for X ~ GIG(params), by adaptive Gauss-Kronrod quadrature of
/// the density in log-x coordinates. Throws NumericalError when the
/// quadrature's own relative error estimate exceeds 1e-8 and ParameterError
/// when the moment does not exist (chi = 0 and p + order <= 0).
double gig_moment(const GigParams& params, int order);

}  // namespace dlgibbs
