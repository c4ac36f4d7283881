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
#include <sstream>
#include <string>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/model.hpp"
#include "dlgibbs/simd/vecmath.hpp"

namespace dlgibbs {
namespace {

void check_positive(std::span<const double> values, const char* name) {
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!(values[j] > 0.0) || !std::isfinite(values[j])) {
      std::ostringstream msg;
      msg << name << "[" << j << "] = " << values[j]
          << " is not strictly positive and finite";
      throw DegenerateStateError(msg.str());
    }
  }
}

}  // namespace

PriorConfig::PriorConfig(std::size_t n, double a) : n_(n), a_(a) {
  if (n == 0) throw ParameterError("prior dimension n must be at least 1");
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ParameterError("Dirichlet concentration a must be positive, got " +
                         std::to_string(a));
  }
}

std::vector<double> HyperState::scales() const {
  std::vector<double> out(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) out[j] = phi[j] * tau;
  return out;
}

void validate(const HyperState& state) {
  if (state.psi.size() != state.phi.size() || state.psi.empty()) {
    throw DegenerateStateError("psi and phi must be non-empty and equally long");
  }
  check_positive(state.psi, "psi");
  check_positive(state.phi, "phi");
  if (!(state.tau > 0.0) || !std::isfinite(state.tau)) {
    throw DegenerateStateError("tau must be strictly positive and finite");
  }
  double total = 0.0;
  for (double v : state.phi) {
    if (v < kPhiFloor) throw DegenerateStateError("phi component below floor");
    total += v;
  }
  if (std::abs(total - 1.0) > 1e-10) {
    throw DegenerateStateError("phi does not sum to one");
  }
}

void validate(const AltHyperState& state) {
  if (state.psi.size() != state.lambda.size() || state.psi.empty()) {
    throw DegenerateStateError("psi and lambda must be non-empty and equally long");
  }
  check_positive(state.psi, "psi");
  check_positive(state.lambda, "lambda");
}

std::vector<double> conditional_variances(std::span<const double> psi,
                                          std::span<const double> scales) {
  if (psi.size() != scales.size()) {
    throw ParameterError("psi and scales lengths differ");
  }
  check_positive(psi, "psi");
  check_positive(scales, "scale");
  std::vector<double> out(psi.size());
  simd::shrinkage_variance(psi, scales, out);
  return out;
}

std::vector<double> conditional_variances(const HyperState& state) {
  const std::vector<double> s = state.scales();
  return conditional_variances(state.psi, s);
}

std::vector<double> conditional_variances(const AltHyperState& state) {
  return conditional_variances(state.psi, state.lambda);
}

}  // namespace dlgibbs
