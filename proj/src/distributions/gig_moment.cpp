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

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>

#include "dlgibbs/distributions.hpp"
#include "dlgibbs/errors.hpp"

namespace dlgibbs {
namespace {

constexpr double kTolerance = 1e-8;
// Integrand is truncated where it falls e^-60 below its peak.
constexpr double kLogCutoff = 60.0;

struct LogIntegral {
  double log_value;
  double relative_error;
};

// log of the integral over u of exp(index * u - (rho e^u + chi e^-u) / 2),
// i.e. the integral over x > 0 of x^(index - 1) exp(-(rho x + chi / x) / 2).
LogIntegral log_integral(double index, double rho, double chi) {
  auto log_f = [=](double u) {
    return index * u - 0.5 * (rho * std::exp(u) + chi * std::exp(-u));
  };
  // Stationary point: rho x^2 - 2 index x - chi = 0.
  const double r = std::sqrt(index * index + rho * chi);
  const double x_peak = index >= 0.0 ? (index + r) / rho : chi / (r - index);
  const double u_peak = std::log(x_peak);
  const double log_peak = log_f(u_peak);

  auto find_edge = [&](double direction) {
    double step = 1.0;
    double u = u_peak;
    while (log_f(u + direction * step) > log_peak - kLogCutoff) {
      u += direction * step;
      step *= 2.0;
      if (step > 1e4) {
        throw NumericalError("GIG quadrature: integrand does not decay");
      }
    }
    return u + direction * step;
  };
  const double lo = find_edge(-1.0);
  const double hi = find_edge(1.0);

  auto scaled = [&](double u) { return std::exp(log_f(u) - log_peak); };
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;
  double err_left = 0.0;
  double err_right = 0.0;
  const double left = Quadrature::integrate(scaled, lo, u_peak, 20, 1e-13, &err_left);
  const double right = Quadrature::integrate(scaled, u_peak, hi, 20, 1e-13, &err_right);
  const double total = left + right;
  return {log_peak + std::log(total), (err_left + err_right) / total};
}

}  // namespace

double gig_moment(const GigParams& params, int order) {
  if (params.chi() == 0.0 && params.p() + order <= 0.0) {
    std::ostringstream msg;
    msg << "GIG moment of order " << order << " does not exist for p="
        << params.p() << " with chi=0";
    throw ParameterError(msg.str());
  }
  if (order == 0) {
    // Still run the quadrature so a non-convergent density is reported.
    const LogIntegral z = log_integral(params.p(), params.rho(), params.chi());
    if (!(z.relative_error < kTolerance)) {
      throw NumericalError("GIG normalizing quadrature did not converge");
    }
    return 1.0;
  }
  const LogIntegral z = log_integral(params.p(), params.rho(), params.chi());
  const LogIntegral m = log_integral(params.p() + order, params.rho(), params.chi());
  const double error = z.relative_error + m.relative_error;
  if (!(error < kTolerance) || !std::isfinite(m.log_value - z.log_value)) {
    std::ostringstream msg;
    msg << "GIG moment quadrature did not converge: p=" << params.p()
        << " rho=" << params.rho() << " chi=" << params.chi() << " order=" << order
        << " estimated relative error " << error;
    throw NumericalError(msg.str());
  }
  return std::exp(m.log_value - z.log_value);
}

}  // namespace dlgibbs
