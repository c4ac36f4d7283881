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

#include <algorithm>
#include <cmath>
#include <string>

#include "dlgibbs/distributions.hpp"
#include "dlgibbs/errors.hpp"
#include "dlgibbs/model.hpp"
#include "dlgibbs/simd/vecmath.hpp"

namespace dlgibbs {
namespace {

constexpr int kMaxPhiAttempts = 1000;

double floored_abs(double theta) { return std::max(std::abs(theta), kThetaFloor); }

void require_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw ParameterError(std::string(what) + " has length " + std::to_string(got) +
                         ", expected " + std::to_string(want));
  }
}

// GIG(a - 1, 1, 2 |theta_j|) for every j: the T draws of the phi update and
// the lambda update are the same law.
std::vector<double> draw_local_gig(const ThetaVector& theta, double a,
                                   RngStream& rng) {
  std::vector<double> out(theta.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = sample_gig(GigParams(a - 1.0, 1.0, 2.0 * floored_abs(theta[j])), rng);
  }
  return out;
}

ThetaVector draw_theta(std::span<const double> y, std::span<const double> psi,
                       std::span<const double> scales, RngStream& rng) {
  const std::vector<double> var = conditional_variances(psi, scales);
  std::vector<double> mean(var.size());
  simd::multiply(var, y, mean);
  ThetaVector theta{std::vector<double>(var.size())};
  for (std::size_t j = 0; j < var.size(); ++j) {
    theta.values[j] = mean[j] + std::sqrt(var[j]) * rng.normal();
  }
  return theta;
}

}  // namespace

ThetaVector update_theta(std::span<const double> y, const HyperState& state,
                         RngStream& rng) {
  require_length(y.size(), state.size(), "y");
  const std::vector<double> s = state.scales();
  return draw_theta(y, state.psi, s, rng);
}

ThetaVector update_theta(std::span<const double> y, const AltHyperState& state,
                         RngStream& rng) {
  require_length(y.size(), state.size(), "y");
  return draw_theta(y, state.psi, state.lambda, rng);
}

std::vector<double> update_psi(const ThetaVector& theta,
                               std::span<const double> scales, RngStream& rng) {
  require_length(scales.size(), theta.size(), "scales");
  std::vector<double> psi(theta.size());
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double w = sample_inverse_gaussian(scales[j] / floored_abs(theta[j]), 1.0, rng);
    psi[j] = 1.0 / w;
  }
  return psi;
}

double update_tau(const ThetaVector& theta, std::span<const double> phi,
                  const PriorConfig& config, RngStream& rng) {
  require_length(theta.size(), config.n(), "theta");
  require_length(phi.size(), config.n(), "phi");
  double chi = 0.0;
  for (std::size_t j = 0; j < phi.size(); ++j) {
    chi += floored_abs(theta[j]) / std::max(phi[j], kPhiFloor);
  }
  const double n = static_cast<double>(config.n());
  return sample_gig(GigParams(n * config.a() - n, 1.0, 2.0 * chi), rng);
}

PhiDraw update_phi(const ThetaVector& theta, const PriorConfig& config,
                   RngStream& rng) {
  require_length(theta.size(), config.n(), "theta");
  for (int attempt = 0; attempt < kMaxPhiAttempts; ++attempt) {
    PhiDraw draw;
    draw.t = draw_local_gig(theta, config.a(), rng);
    double total = 0.0;
    for (double t : draw.t) total += t;
    draw.phi.resize(draw.t.size());
    bool ok = std::isfinite(total);
    for (std::size_t j = 0; j < draw.t.size() && ok; ++j) {
      draw.phi[j] = draw.t[j] / total;
      ok = draw.phi[j] >= kPhiFloor;
    }
    if (ok) return draw;
  }
  throw DegenerateStateError("phi update kept producing weights below 1e-300");
}

std::vector<double> update_lambda(const ThetaVector& theta,
                                  const PriorConfig& config, RngStream& rng) {
  require_length(theta.size(), config.n(), "theta");
  return draw_local_gig(theta, config.a(), rng);
}

}  // namespace dlgibbs
