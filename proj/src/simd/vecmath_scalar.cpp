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
#include <limits>

#include "dlgibbs/simd/vecmath.hpp"

namespace dlgibbs::simd::scalar {
namespace {
constexpr double kTiny = std::numeric_limits<double>::min();
constexpr double kHuge = std::numeric_limits<double>::max();
}  // namespace

void shrinkage_variance(std::span<const double> psi,
                        std::span<const double> scale, std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); ++j) {
    double s = psi[j] * (scale[j] * scale[j]);
    s = std::min(std::max(s, kTiny), kHuge);
    out[j] = s / (1.0 + s);
  }
}

void multiply(std::span<const double> a, std::span<const double> b,
              std::span<double> out) {
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = a[j] * b[j];
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < body; j += 4) {
    for (std::size_t l = 0; l < 4; ++l) lane[l] = lane[l] + a[j + l] * b[j + l];
  }
  double acc = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t j = body; j < n; ++j) acc = acc + a[j] * b[j];
  return acc;
}

double squared_distance(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::size_t body = n - n % 4;
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < body; j += 4) {
    for (std::size_t l = 0; l < 4; ++l) {
      const double d = a[j + l] - b[j + l];
      lane[l] = lane[l] + d * d;
    }
  }
  double acc = (lane[0] + lane[2]) + (lane[1] + lane[3]);
  for (std::size_t j = body; j < n; ++j) {
    const double d = a[j] - b[j];
    acc = acc + d * d;
  }
  return acc;
}

}  // namespace dlgibbs::simd::scalar
