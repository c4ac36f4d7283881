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

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dlgibbs/distributions.hpp"
#include "dlgibbs/errors.hpp"

namespace dlgibbs {

GigParams::GigParams(double p, double rho, double chi) : p_(p), rho_(rho), chi_(chi) {
  const bool finite = std::isfinite(p) && std::isfinite(rho) && std::isfinite(chi);
  const bool proper = chi > 0.0 || (chi == 0.0 && p > 0.0);
  if (!finite || !(rho > 0.0) || chi < 0.0 || !proper) {
    std::ostringstream msg;
    msg << "improper GIG parameters (p=" << p << ", rho=" << rho
        << ", chi=" << chi << ")";
    throw ParameterError(msg.str());
  }
}

double GigParams::log_kernel(double x) const noexcept {
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return (p_ - 1.0) * std::log(x) - 0.5 * (rho_ * x + chi_ / x);
}

namespace {

// Below this omega the standardized law is numerically indistinguishable
// from its Gamma / inverse-Gamma limit.
constexpr double kOmegaFloor = 1e-150;

// Mode of x^(lambda-1) exp(-omega (x + 1/x) / 2).
double gig_mode(double lambda, double omega) {
  if (lambda >= 1.0) {
    return (std::sqrt((lambda - 1.0) * (lambda - 1.0) + omega * omega) +
            (lambda - 1.0)) /
           omega;
  }
  return omega / (std::sqrt((1.0 - lambda) * (1.0 - lambda) + omega * omega) +
                  (1.0 - lambda));
}

// Ratio-of-uniforms with the bounding rectangle shifted to the mode.
double rou_shifted(double lambda, double omega, RngStream& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);

  // Roots of the cubic locating the extremes of (x - xm) sqrt(f(x)), via
  // Cardano's trigonometric form.
  const double a = -(2.0 * (lambda + 1.0) / omega + xm);
  const double b = 2.0 * (lambda - 1.0) * xm / omega - 1.0;
  const double c = xm;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double fi = std::acos(-q / (2.0 * std::sqrt(-(p * p * p) / 27.0)));
  const double fak = 2.0 * std::sqrt(-p / 3.0);
  const double y1 = fak * std::cos(fi / 3.0) - a / 3.0;
  const double y2 =
      fak * std::cos(fi / 3.0 + 4.0 / 3.0 * std::numbers::pi) - a / 3.0;

  const double uplus = (y1 - xm) * std::exp(t * std::log(y1) - s * (y1 + 1.0 / y1) - nc);
  const double uminus = (y2 - xm) * std::exp(t * std::log(y2) - s * (y2 + 1.0 / y2) - nc);

  for (;;) {
    const double u = uminus + rng.uniform() * (uplus - uminus);
    const double v = rng.uniform();
    const double x = u / v + xm;
    if (x <= 0.0) continue;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Ratio-of-uniforms with the rectangle anchored at the origin.
double rou_unshifted(double lambda, double omega, RngStream& rng) {
  const double t = 0.5 * (lambda - 1.0);
  const double s = 0.25 * omega;
  const double xm = gig_mode(lambda, omega);
  const double nc = t * std::log(xm) - s * (xm + 1.0 / xm);
  // Maximum of x sqrt(f(x)).
  const double ym =
      ((lambda + 1.0) + std::sqrt((lambda + 1.0) * (lambda + 1.0) + omega * omega)) /
      omega;
  const double um = std::exp(0.5 * (lambda + 1.0) * std::log(ym) - s * (ym + 1.0 / ym) - nc);

  for (;;) {
    const double u = um * rng.uniform();
    const double v = rng.uniform();
    const double x = u / v;
    if (std::log(v) <= t * std::log(x) - s * (x + 1.0 / x) - nc) return x;
  }
}

// Rejection from a piecewise dominating density (constant on (0, x0),
// power law up to 2/omega, exponential tail). Valid for 0 <= lambda < 1.
double small_omega(double lambda, double omega, RngStream& rng) {
  const double xm = gig_mode(lambda, omega);
  const double x0 = omega / (1.0 - lambda);
  const double two_over_omega = 2.0 / omega;

  const double k0 = std::exp((lambda - 1.0) * std::log(xm) - 0.5 * omega * (xm + 1.0 / xm));
  const double area0 = k0 * x0;

  double k1;
  double area1;
  double k2;
  double area2;
  if (x0 >= two_over_omega) {
    k1 = 0.0;
    area1 = 0.0;
    k2 = std::pow(x0, lambda - 1.0);
    area2 = k2 * 2.0 * std::exp(-omega * x0 / 2.0) / omega;
  } else {
    k1 = std::exp(-omega);
    area1 = lambda == 0.0
                ? k1 * std::log(2.0 / (omega * omega))
                : k1 / lambda * (std::pow(two_over_omega, lambda) - std::pow(x0, lambda));
    k2 = std::pow(two_over_omega, lambda - 1.0);
    area2 = k2 * 2.0 * std::exp(-1.0) / omega;
  }
  const double total = area0 + area1 + area2;
  const double tail_start = std::max(x0, two_over_omega);

  for (;;) {
    double v = total * rng.uniform();
    double x;
    double hx;
    if (v <= area0) {
      x = x0 * v / area0;
      hx = k0;
    } else if ((v -= area0) <= area1) {
      if (lambda == 0.0) {
        x = omega * std::exp(std::exp(omega) * v);
        hx = k1 / x;
      } else {
        x = std::pow(std::pow(x0, lambda) + lambda / k1 * v, 1.0 / lambda);
        hx = k1 * std::pow(x, lambda - 1.0);
      }
    } else {
      v -= area1;
      x = -two_over_omega *
          std::log(std::exp(-omega / 2.0 * tail_start) - omega / (2.0 * k2) * v);
      hx = k2 * std::exp(-omega / 2.0 * x);
    }
    if (!(x > 0.0) || !std::isfinite(x)) continue;
    const double u = rng.uniform() * hx;
    if (std::log(u) <= (lambda - 1.0) * std::log(x) - omega / 2.0 * (x + 1.0 / x)) {
      return x;
    }
  }
}

double standardized_gig(double lambda, double omega, RngStream& rng) {
  if (lambda > 2.0 || omega > 3.0) return rou_shifted(lambda, omega, rng);
  if (lambda >= 1.0 - 2.25 * omega * omega || omega > 0.2) {
    return rou_unshifted(lambda, omega, rng);
  }
  return small_omega(lambda, omega, rng);
}

double clamp_positive(double x) {
  if (x < std::numeric_limits<double>::min()) return std::numeric_limits<double>::min();
  if (x > std::numeric_limits<double>::max()) return std::numeric_limits<double>::max();
  return x;
}

}  // namespace

double sample_gig(const GigParams& params, RngStream& rng) {
  const double p = params.p();
  const double rho = params.rho();
  const double chi = params.chi();

  if (chi == 0.0) return sample_gamma(p, 0.5 * rho, rng);

  const double lambda = std::abs(p);
  const double omega = std::sqrt(rho * chi);
  const double alpha = std::sqrt(chi / rho);

  if (omega < kOmegaFloor) {
    // chi > 0 here, so p <= 0 is still proper; the rho-term is negligible
    // and the law reduces to chi / (2 Gamma(-p)) for p < 0.
    if (p > 0.0) return sample_gamma(p, 0.5 * rho, rng);
    if (p < 0.0) {
      return clamp_positive(std::exp(std::log(0.5 * chi) - sample_log_gamma(-p, rng)));
    }
    throw NumericalError("GIG with p = 0 and sqrt(rho chi) below 1e-150");
  }

  const double z = standardized_gig(lambda, omega, rng);
  return clamp_positive(p < 0.0 ? alpha / z : alpha * z);
}

}  // namespace dlgibbs
