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
#include <cstdint>
#include <numbers>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/geweke.hpp"

namespace dlgibbs {
namespace {

// max_t |F_x(t) - F_y(t)| scaled by n_x * n_y, in exact integer arithmetic.
std::uint64_t scaled_ks_distance(std::vector<double> x, std::vector<double> y) {
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const std::int64_t nx = static_cast<std::int64_t>(x.size());
  const std::int64_t ny = static_cast<std::int64_t>(y.size());
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t best = 0;
  while (i < nx && j < ny) {
    const double t = std::min(x[i], y[j]);
    while (i < nx && x[i] == t) ++i;
    while (j < ny && y[j] == t) ++j;
    best = std::max(best, std::abs(i * ny - j * nx));
  }
  return static_cast<std::uint64_t>(best);
}

}  // namespace

double kolmogorov_survival(double t) {
  if (!(t > 0.0)) return 1.0;
  double q;
  if (t < 1.18) {
    const double w = std::numbers::pi * std::numbers::pi / (8.0 * t * t);
    double s = 0.0;
    for (int k = 1; k <= 20; ++k) {
      const double odd = 2.0 * k - 1.0;
      s += std::exp(-odd * odd * w);
    }
    q = 1.0 - std::sqrt(2.0 * std::numbers::pi) / t * s;
  } else {
    q = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
      const double term = std::exp(-2.0 * k * k * t * t);
      q += sign * term;
      if (term < 1e-300) break;
      sign = -sign;
    }
    q *= 2.0;
  }
  return std::clamp(q, 0.0, 1.0);
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y,
                       double n_eff_x, double n_eff_y) {
  if (x.empty() || y.empty()) throw ParameterError("KS test needs non-empty samples");
  if (!(n_eff_x > 0.0) || !(n_eff_y > 0.0)) {
    throw ParameterError("KS effective sample sizes must be positive");
  }
  const std::uint64_t scaled = scaled_ks_distance({x.begin(), x.end()}, {y.begin(), y.end()});
  KsResult out;
  out.statistic = static_cast<double>(scaled) /
                  (static_cast<double>(x.size()) * static_cast<double>(y.size()));
  const double ne = n_eff_x * n_eff_y / (n_eff_x + n_eff_y);
  const double root = std::sqrt(ne);
  out.p_value = kolmogorov_survival((root + 0.12 + 0.11 / root) * out.statistic);
  return out;
}

KsResult ks_two_sample(std::span<const double> x, std::span<const double> y) {
  return ks_two_sample(x, y, static_cast<double>(x.size()), static_cast<double>(y.size()));
}

}  // namespace dlgibbs
