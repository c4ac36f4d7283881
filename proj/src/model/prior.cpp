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

#include "dlgibbs/distributions.hpp"
#include "dlgibbs/model.hpp"

namespace dlgibbs {
namespace {

std::vector<double> draw_psi(std::size_t n, RngStream& rng) {
  std::vector<double> psi(n);
  for (double& v : psi) v = sample_exponential(0.5, rng);
  return psi;
}

ThetaVector draw_zero_mean(std::span<const double> psi,
                           std::span<const double> scales, RngStream& rng) {
  ThetaVector theta{std::vector<double>(psi.size())};
  for (std::size_t j = 0; j < psi.size(); ++j) {
    theta.values[j] = std::sqrt(psi[j]) * scales[j] * rng.normal();
  }
  return theta;
}

}  // namespace

HyperState prior_draw_hyper(const PriorConfig& config, RngStream& rng) {
  HyperState state;
  state.psi = draw_psi(config.n(), rng);
  state.phi = sample_dirichlet(config.a(), config.n(), rng);
  if (*std::min_element(state.phi.begin(), state.phi.end()) < kPhiFloor) {
    double total = 0.0;
    for (double& v : state.phi) {
      v = std::max(v, kPhiFloor);
      total += v;
    }
    // Renormalizing can push a floored weight just below the floor again;
    // the re-clamp moves the sum by at most n * 1e-300.
    for (double& v : state.phi) v = std::max(v / total, kPhiFloor);
  }
  const double n = static_cast<double>(config.n());
  state.tau = sample_gamma(n * config.a(), 0.5, rng);
  return state;
}

AltHyperState prior_draw_hyper_alt(const PriorConfig& config, RngStream& rng) {
  AltHyperState state;
  state.psi = draw_psi(config.n(), rng);
  state.lambda.resize(config.n());
  for (double& v : state.lambda) v = sample_gamma(config.a(), 0.5, rng);
  return state;
}

ThetaVector prior_draw_theta(const HyperState& state, RngStream& rng) {
  const std::vector<double> s = state.scales();
  return draw_zero_mean(state.psi, s, rng);
}

ThetaVector prior_draw_theta(const AltHyperState& state, RngStream& rng) {
  return draw_zero_mean(state.psi, state.lambda, rng);
}

}  // namespace dlgibbs
