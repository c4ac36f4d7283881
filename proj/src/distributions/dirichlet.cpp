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

namespace dlgibbs {

std::vector<double> sample_dirichlet(double a, std::size_t n, RngStream& rng) {
  if (n == 0) throw ParameterError("Dirichlet dimension must be at least 1");
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ParameterError("Dirichlet concentration must be positive, got " +
                         std::to_string(a));
  }
  std::vector<double> out(n);
  for (double& v : out) v = sample_log_gamma(a, rng);
  if (n == 1) {
    out[0] = 1.0;
    return out;
  }
  const double top = *std::max_element(out.begin(), out.end());
  double total = 0.0;
  for (double& v : out) {
    v = std::exp(v - top);
    total += v;
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace dlgibbs
