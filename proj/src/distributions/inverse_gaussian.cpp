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
#include <string>

#include "dlgibbs/distributions.hpp"
#include "dlgibbs/errors.hpp"

namespace dlgibbs {

double sample_inverse_gaussian(double mu, double lam, RngStream& rng) {
  if (!(mu > 0.0) || !(lam > 0.0) || !std::isfinite(mu) || !std::isfinite(lam)) {
    throw ParameterError("inverse Gaussian needs mu > 0 and lam > 0, got mu=" +
                         std::to_string(mu) + " lam=" + std::to_string(lam));
  }
  const double z = rng.normal();
  const double y = z * z;
  double root = mu;
  if (y > 0.0) {
    // Smaller root of the quadratic, in the cancellation-free form
    // 4 mu^2 lam y / (mu y + sqrt(mu^2 y^2 + 4 mu lam y))^2.
    const double muy = mu * y;
    const double s = std::sqrt(muy * muy + 4.0 * mu * lam * y);
    const double denom = muy + s;
    root = (4.0 * mu * lam * y / denom) * (mu / denom);
    if (!(root > 0.0)) root = std::numeric_limits<double>::min();
  }
  if (rng.uniform() * (mu + root) <= mu) return root;
  return mu * (mu / root);
}

}  // namespace dlgibbs
