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
namespace {

// Marsaglia and Tsang (2000); requires shape >= 1.
double marsaglia_tsang(double shape, RngStream& rng) {
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = rng.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = rng.uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ParameterError(std::string(what) + " must be positive and finite, got " +
                         std::to_string(value));
  }
}

}  // namespace

double sample_log_gamma(double shape, RngStream& rng) {
  require_positive(shape, "gamma shape");
  if (shape >= 1.0) return std::log(marsaglia_tsang(shape, rng));
  // Gamma(a) = Gamma(a + 1) * U^(1/a), taken in logs.
  const double boosted = std::log(marsaglia_tsang(shape + 1.0, rng));
  return boosted + std::log(rng.uniform()) / shape;
}

double sample_gamma(double shape, double rate, RngStream& rng) {
  require_positive(shape, "gamma shape");
  require_positive(rate, "gamma rate");
  if (shape >= 1.0) return marsaglia_tsang(shape, rng) / rate;
  const double value = std::exp(sample_log_gamma(shape, rng) - std::log(rate));
  return std::max(value, std::numeric_limits<double>::min());
}

double sample_exponential(double rate, RngStream& rng) {
  require_positive(rate, "exponential rate");
  return -std::log(rng.uniform()) / rate;
}

}  // namespace dlgibbs
