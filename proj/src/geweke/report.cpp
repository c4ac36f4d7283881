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

namespace dlgibbs {
namespace {

constexpr std::uint64_t kGewekeRole = 0x6765776b;  // "gewk"
constexpr std::uint64_t kMcsStream = 1;
constexpr std::uint64_t kScsStream = 2;

}  // namespace

double sorted_quantile(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw ParameterError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  const double frac = h - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::vector<QqPoint> qq_points(std::span<const double> x, std::span<const double> y,
                               std::size_t grid) {
  if (x.empty() || y.empty()) throw ParameterError("QQ points need non-empty samples");
  if (grid < 2) throw ParameterError("QQ grid needs at least 2 points");
  std::vector<double> sx(x.begin(), x.end());
  std::vector<double> sy(y.begin(), y.end());
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());
  std::vector<QqPoint> out(grid);
  for (std::size_t k = 1; k <= grid; ++k) {
    const double prob = static_cast<double>(k) / static_cast<double>(grid + 1);
    out[k - 1] = {prob, sorted_quantile(sx, prob), sorted_quantile(sy, prob)};
  }
  return out;
}

double GewekeReport::min_p_adj() const noexcept {
  double best = 1.0;
  for (const TestResult& r : results) best = std::min(best, r.p_adj);
  return best;
}

GewekeReport geweke_report(const PriorConfig& config, std::string label,
                           const HyperKernel& kernel,
                           const std::function<ChainState(RngStream&)>& initial,
                           const std::vector<TestFunction>& tests, std::size_t m,
                           std::uint64_t seed, const GewekeOptions& options) {
  if (m < 1) throw ParameterError("Geweke run length must be at least 1");
  if (options.thin < 1) throw ParameterError("Geweke thinning must be at least 1");
  if (tests.empty()) throw ParameterError("Geweke report needs test functions");

  const std::size_t k = tests.size();
  std::vector<std::vector<double>> mcs(k);
  std::vector<std::vector<double>> scs(k);
  for (std::size_t t = 0; t < k; ++t) {
    mcs[t].reserve(m);
    scs[t].reserve(m / options.thin + 1);
  }

  RngStream mcs_rng(seed, derive_stream_id({kGewekeRole, kMcsStream}));
  run_mcs(config, m, mcs_rng, [&](const ThetaVector& theta, const ChainState& kappa) {
    for (std::size_t t = 0; t < k; ++t) mcs[t].push_back(tests[t].extract(theta, kappa));
  });

  RngStream scs_rng(seed, derive_stream_id({kGewekeRole, kScsStream}));
  std::size_t step = 0;
  run_scs(kernel, initial(scs_rng), m, scs_rng,
          [&](const ThetaVector& theta, const ChainState& kappa) {
            if (++step % options.thin != 0) return;
            for (std::size_t t = 0; t < k; ++t) {
              scs[t].push_back(tests[t].extract(theta, kappa));
            }
          });

  GewekeReport report;
  report.kernel = std::move(label);
  report.config = config;
  report.m = m;
  report.thin = options.thin;
  report.seed = seed;
  report.alpha = options.alpha;
  for (std::size_t t = 0; t < k; ++t) {
    TestResult r;
    r.name = tests[t].name;
    r.ess_mcs = effective_sample_size(mcs[t]).ess;
    r.ess_scs = effective_sample_size(scs[t]).ess;
    const KsResult ks = ks_two_sample(mcs[t], scs[t], r.ess_mcs, r.ess_scs);
    r.ks = ks.statistic;
    r.p_raw = ks.p_value;
    r.p_adj = std::min(1.0, ks.p_value * static_cast<double>(k));
    r.qq = qq_points(mcs[t], scs[t], options.qq_grid);
    report.results.push_back(std::move(r));
  }
  return report;
}

GewekeReport geweke_report(const PriorConfig& config, KernelId kernel,
                           std::size_t m, std::uint64_t seed,
                           const GewekeOptions& options) {
  return geweke_report(
      config, std::string(kernel_name(kernel)), make_kernel(kernel, config),
      [&](RngStream& rng) { return prior_draw_state(kernel, config, rng); },
      builtin_test_functions(kernel), m, seed, options);
}

}  // namespace dlgibbs
