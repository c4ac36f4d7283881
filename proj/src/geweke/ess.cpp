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

#include "dlgibbs/errors.hpp"
#include "dlgibbs/geweke.hpp"
#include "dlgibbs/simd/vecmath.hpp"

namespace dlgibbs {

EssResult effective_sample_size(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 10) throw ParameterError("effective sample size needs at least 10 values");
  const double count = static_cast<double>(n);

  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= count;
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = x[i] - mean;

  const std::span<const double> c(centered);
  const double c0 = simd::dot(c, c);
  if (!(c0 > 0.0)) return {count, true};

  auto rho = [&](std::size_t lag) {
    return simd::dot(c.first(n - lag), c.subspan(lag)) / c0;
  };

  // Initial positive sequence: sum pairs rho_2m + rho_2m+1 while positive.
  double pair_sum = 0.0;
  for (std::size_t m = 0; 2 * m + 1 < n; ++m) {
    const double gamma = (m == 0 ? 1.0 : rho(2 * m)) + rho(2 * m + 1);
    if (!(gamma > 0.0)) break;
    pair_sum += gamma;
  }
  const double iat = 2.0 * pair_sum - 1.0;
  if (!(iat > 0.0)) return {count, false};
  return {std::clamp(count / iat, 1.0, count), false};
}

}  // namespace dlgibbs
