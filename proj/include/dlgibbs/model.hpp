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

// State types and conditional updates for the normal-means model
//
//   y_j = theta_j + eps_j,             eps_j ~ N(0, 1)
//   theta_j ~ N(0, psi_j phi_j^2 tau^2)
//   psi_j ~ Exp(1/2),  phi ~ Dir(a, ..., a),  tau ~ Gamma(n a, 1/2)
//
// and for the equivalent local-scale form with lambda_j = phi_j tau,
//
//   theta_j ~ N(0, psi_j lambda_j^2),  lambda_j ~ Gamma(a, 1/2).
//
// Each update here draws from one conditional law. Whether a sequence of
// them forms a valid transition kernel depends on the order, which is the
// business of kernels.hpp.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "dlgibbs/rng.hpp"

namespace dlgibbs {

/// |theta_j| is clamped below at this value wherever it divides or enters a
/// GIG parameter. For moderate a it only absorbs underflow. For a near 1/n
/// null coordinates routinely fall far below it, and the clamp then acts as
/// a regularizer that keeps such coordinates from collapsing to zero.
inline constexpr double kThetaFloor = 1e-10;

/// Smallest admissible Dirichlet weight.
inline constexpr double kPhiFloor = 1e-300;

class PriorConfig {
 public:
  PriorConfig(std::size_t n, double a);

  std::size_t n() const noexcept { return n_; }
  double a() const noexcept { return a_; }

  friend bool operator==(const PriorConfig&, const PriorConfig&) = default;

 private:
  std::size_t n_;
  double a_;
};

/// (psi, phi, tau): local scales, Dirichlet weights, global scale.
struct HyperState {
  std::vector<double> psi;
  std::vector<double> phi;
  double tau = 1.0;

  std::size_t size() const noexcept { return psi.size(); }
  /// phi_j * tau for each j.
  std::vector<double> scales() const;
};

/// (psi, lambda) of the local-scale parameterization.
struct AltHyperState {
  std::vector<double> psi;
  std::vector<double> lambda;

  std::size_t size() const noexcept { return psi.size(); }
  std::vector<double> scales() const { return lambda; }
};

struct ThetaVector {
  std::vector<double> values;

  std::size_t size() const noexcept { return values.size(); }
  double operator[](std::size_t j) const noexcept { return values[j]; }
};

/// Throws DegenerateStateError unless psi > 0, phi on the simplex (1e-10)
/// with entries >= kPhiFloor, and tau > 0, all finite.
void validate(const HyperState& state);
void validate(const AltHyperState& state);

/// sigma_j^2 = (1 + 1 / (psi_j scale_j^2))^-1. Throws DegenerateStateError on
/// zero, negative or non-finite inputs.
std::vector<double> conditional_variances(std::span<const double> psi,
                                          std::span<const double> scales);
std::vector<double> conditional_variances(const HyperState& state);
std::vector<double> conditional_variances(const AltHyperState& state);

/// theta_j ~ N(sigma_j^2 y_j, sigma_j^2), independently.
ThetaVector update_theta(std::span<const double> y, const HyperState& state,
                         RngStream& rng);
ThetaVector update_theta(std::span<const double> y, const AltHyperState& state,
                         RngStream& rng);

/// psi_j = 1 / w_j with w_j ~ InverseGaussian(scale_j / |theta_j|, 1). The
/// scale is phi_j tau or lambda_j.
std::vector<double> update_psi(const ThetaVector& theta,
                               std::span<const double> scales, RngStream& rng);

/// tau ~ GIG(n a - n, 1, 2 sum_j |theta_j| / phi_j), psi integrated out.
double update_tau(const ThetaVector& theta, std::span<const double> phi,
                  const PriorConfig& config, RngStream& rng);

/// Draws T_j ~ GIG(a - 1, 1, 2 |theta_j|) and phi = T / sum(T), with psi and
/// tau integrated out. A draw with some phi_j < kPhiFloor is discarded and
/// repeated.
struct PhiDraw {
  std::vector<double> phi;
  std::vector<double> t;
};
PhiDraw update_phi(const ThetaVector& theta, const PriorConfig& config,
                   RngStream& rng);

/// lambda_j ~ GIG(a - 1, 1, 2 |theta_j|), psi integrated out. Shares its
/// code path with the T draws of update_phi.
std::vector<double> update_lambda(const ThetaVector& theta,
                                  const PriorConfig& config, RngStream& rng);

/// Joint prior draw of (psi, phi, tau). Dirichlet weights that underflow
/// kPhiFloor are raised to it and the vector renormalized.
HyperState prior_draw_hyper(const PriorConfig& config, RngStream& rng);
/// Joint prior draw of (psi, lambda).
AltHyperState prior_draw_hyper_alt(const PriorConfig& config, RngStream& rng);

/// theta_j ~ N(0, psi_j scale_j^2).
ThetaVector prior_draw_theta(const HyperState& state, RngStream& rng);
ThetaVector prior_draw_theta(const AltHyperState& state, RngStream& rng);

}  // namespace dlgibbs
