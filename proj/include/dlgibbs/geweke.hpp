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

// Joint-distribution ("getting it right") checks for hyperparameter kernels.
//
// The marginal-conditional simulator draws kappa ~ p(kappa), then
// theta ~ p(theta | kappa), independently M times. The successive-conditional
// simulator starts from one prior draw of kappa and alternates
// theta ~ p(theta | kappa) with kappa ~ q(kappa | kappa, theta) for the kernel
// q under test. Both target p(theta, kappa) iff q leaves p(kappa | theta)
// invariant, so a distributional mismatch between the two samples on any
// test function exposes a broken kernel.
//
// Mismatch is scored by the two-sample Kolmogorov-Smirnov statistic. The
// successive draws are autocorrelated, so p-values use effective sample
// sizes in place of raw counts and are Bonferroni-adjusted across test
// functions.

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "dlgibbs/kernels.hpp"
#include "dlgibbs/model.hpp"
#include "dlgibbs/rng.hpp"

namespace dlgibbs {

struct TestFunction {
  std::string name;
  std::function<double(const ThetaVector&, const ChainState&)> extract;
};

/// phi_1, tau, psi_1, theta_1 and sum(psi). Weights and global scale are
/// read through the state's parameterization: for (psi, lambda) states phi_1
/// is lambda_1 / sum(lambda) and tau is sum(lambda), and the functions are
/// named accordingly.
std::vector<TestFunction> builtin_test_functions(KernelId kernel);

using DrawSink = std::function<void(const ThetaVector&, const ChainState&)>;

/// M independent draws of (theta, kappa) from the prior, kappa in the
/// (psi, phi, tau) parameterization.
void run_mcs(const PriorConfig& config, std::size_t m, RngStream& rng,
             const DrawSink& sink);

/// M successive-conditional draws under a named kernel, started from a prior
/// draw of kappa in that kernel's parameterization.
void run_scs(const PriorConfig& config, KernelId kernel, std::size_t m,
             RngStream& rng, const DrawSink& sink);

/// Same, for any kernel and starting state.
void run_scs(const HyperKernel& kernel, ChainState initial, std::size_t m,
             RngStream& rng, const DrawSink& sink);

struct KsResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

/// Exact two-sided two-sample KS statistic; the p-value uses the asymptotic
/// Kolmogorov law at the raw sample sizes.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y);
/// As above, with effective sample sizes substituted for the raw ones.
KsResult ks_two_sample(std::span<const double> x, std::span<const double> y,
                       double n_eff_x, double n_eff_y);

/// P(K > t) for the Kolmogorov distribution.
double kolmogorov_survival(double t);

struct EssResult {
  double ess = 0.0;
  bool constant = false;  // zero sample variance; ess is reported as N
};

/// N / (1 + 2 sum_k rho_k), autocorrelations truncated by Geyer's initial
/// positive sequence, capped to [1, N]. Needs at least 10 values.
EssResult effective_sample_size(std::span<const double> x);

struct QqPoint {
  double prob = 0.0;
  double q_x = 0.0;
  double q_y = 0.0;
};

/// Paired linear-interpolation quantiles at probabilities k / (grid + 1),
/// k = 1..grid.
std::vector<QqPoint> qq_points(std::span<const double> x, std::span<const double> y,
                               std::size_t grid);

/// Linear-interpolation quantile of an ascending sample.
double sorted_quantile(std::span<const double> sorted, double prob);

struct GewekeOptions {
  std::size_t thin = 10;       // successive-conditional thinning before KS
  std::size_t qq_grid = 99;
  double alpha = 0.001;        // rejection threshold on adjusted p
};

struct TestResult {
  std::string name;
  double ks = 0.0;
  double p_raw = 1.0;
  double p_adj = 1.0;
  double ess_mcs = 0.0;
  double ess_scs = 0.0;
  std::vector<QqPoint> qq;  // q_x from mcs, q_y from scs
};

struct GewekeReport {
  std::string kernel;
  PriorConfig config{1, 0.5};
  std::size_t m = 0;
  std::size_t thin = 1;
  std::uint64_t seed = 0;
  double alpha = 0.001;
  std::vector<TestResult> results;

  double min_p_adj() const noexcept;
  bool rejects() const noexcept { return min_p_adj() < alpha; }
};

GewekeReport geweke_report(const PriorConfig& config, KernelId kernel,
                           std::size_t m, std::uint64_t seed,
                           const GewekeOptions& options = {});

/// Harness entry point for kernels that are not one of the named ones.
GewekeReport geweke_report(const PriorConfig& config, std::string label,
                           const HyperKernel& kernel,
                           const std::function<ChainState(RngStream&)>& initial,
                           const std::vector<TestFunction>& tests, std::size_t m,
                           std::uint64_t seed, const GewekeOptions& options = {});

}  // namespace dlgibbs
