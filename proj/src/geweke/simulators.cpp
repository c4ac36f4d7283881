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

#include <numeric>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/geweke.hpp"

namespace dlgibbs {
namespace {

double weight_1(const ChainState& state) {
  if (const auto* s = std::get_if<HyperState>(&state)) return s->phi[0];
  const auto& alt = std::get<AltHyperState>(state);
  return alt.lambda[0] / std::accumulate(alt.lambda.begin(), alt.lambda.end(), 0.0);
}

double global_scale(const ChainState& state) {
  if (const auto* s = std::get_if<HyperState>(&state)) return s->tau;
  const auto& alt = std::get<AltHyperState>(state);
  return std::accumulate(alt.lambda.begin(), alt.lambda.end(), 0.0);
}

const std::vector<double>& psi_of(const ChainState& state) {
  return std::visit([](const auto& s) -> const std::vector<double>& { return s.psi; },
                    state);
}

ThetaVector theta_given(const ChainState& state, RngStream& rng) {
  return std::visit([&](const auto& s) { return prior_draw_theta(s, rng); }, state);
}

}  // namespace

std::vector<TestFunction> builtin_test_functions(KernelId kernel) {
  const bool alt = kernel == KernelId::Alternative;
  return {
      {alt ? "lambda_1/sum_lambda" : "phi_1",
       [](const ThetaVector&, const ChainState& s) { return weight_1(s); }},
      {alt ? "sum_lambda" : "tau",
       [](const ThetaVector&, const ChainState& s) { return global_scale(s); }},
      {"psi_1", [](const ThetaVector&, const ChainState& s) { return psi_of(s)[0]; }},
      {"theta_1", [](const ThetaVector& theta, const ChainState&) { return theta[0]; }},
      {"sum_psi",
       [](const ThetaVector&, const ChainState& s) {
         const auto& psi = psi_of(s);
         return std::accumulate(psi.begin(), psi.end(), 0.0);
       }},
  };
}

void run_mcs(const PriorConfig& config, std::size_t m, RngStream& rng,
             const DrawSink& sink) {
  if (m < 1) throw ParameterError("simulator length must be at least 1");
  for (std::size_t i = 0; i < m; ++i) {
    const ChainState kappa = prior_draw_hyper(config, rng);
    const ThetaVector theta = theta_given(kappa, rng);
    sink(theta, kappa);
  }
}

void run_scs(const HyperKernel& kernel, ChainState initial, std::size_t m,
             RngStream& rng, const DrawSink& sink) {
  if (m < 1) throw ParameterError("simulator length must be at least 1");
  ChainState kappa = std::move(initial);
  for (std::size_t i = 0; i < m; ++i) {
    const ThetaVector theta = theta_given(kappa, rng);
    kappa = kernel(kappa, theta, rng);
    sink(theta, kappa);
  }
}

void run_scs(const PriorConfig& config, KernelId kernel, std::size_t m,
             RngStream& rng, const DrawSink& sink) {
  ChainState initial = prior_draw_state(kernel, config, rng);
  run_scs(make_kernel(kernel, config), std::move(initial), m, rng, sink);
}

}  // namespace dlgibbs
