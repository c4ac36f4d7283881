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

#include "dlgibbs/errors.hpp"
#include "dlgibbs/kernels.hpp"

namespace dlgibbs {

std::string_view kernel_name(KernelId id) noexcept {
  switch (id) {
    case KernelId::Original:
      return "original";
    case KernelId::Corrected:
      return "corrected";
    case KernelId::Alternative:
      return "alternative";
  }
  return "unknown";
}

std::optional<KernelId> parse_kernel(std::string_view name) noexcept {
  for (KernelId id : {KernelId::Original, KernelId::Corrected, KernelId::Alternative}) {
    if (kernel_name(id) == name) return id;
  }
  return std::nullopt;
}

namespace {

void require_permutation(std::span<const BlockUpdate> order) {
  const bool complete =
      order.size() == 3 &&
      std::is_permutation(order.begin(), order.end(), kCorrectedOrder.begin());
  if (!complete) {
    throw ParameterError("block order must be a permutation of psi, tau, phi");
  }
}

}  // namespace

HyperState kernel_step_ordered(const HyperState& state, const ThetaVector& theta,
                               const PriorConfig& config,
                               std::span<const BlockUpdate> order, RngStream& rng) {
  require_permutation(order);
  HyperState next = state;
  for (BlockUpdate block : order) {
    switch (block) {
      case BlockUpdate::Psi: {
        const std::vector<double> s = next.scales();
        next.psi = update_psi(theta, s, rng);
        break;
      }
      case BlockUpdate::Tau:
        next.tau = update_tau(theta, next.phi, config, rng);
        break;
      case BlockUpdate::Phi:
        next.phi = update_phi(theta, config, rng).phi;
        break;
    }
  }
  return next;
}

HyperState kernel_step_original(const HyperState& state, const ThetaVector& theta,
                                const PriorConfig& config, RngStream& rng) {
  return kernel_step_ordered(state, theta, config, kOriginalOrder, rng);
}

HyperState kernel_step_corrected(const HyperState& state, const ThetaVector& theta,
                                 const PriorConfig& config, RngStream& rng) {
  return kernel_step_ordered(state, theta, config, kCorrectedOrder, rng);
}

AltHyperState kernel_step_alternative(const AltHyperState& /*state*/,
                                      const ThetaVector& theta,
                                      const PriorConfig& config, RngStream& rng) {
  // Neither block conditions on the incoming state: lambda | theta is the
  // psi-marginal and psi | theta, lambda is then a full conditional.
  AltHyperState next;
  next.lambda = update_lambda(theta, config, rng);
  next.psi = update_psi(theta, next.lambda, rng);
  return next;
}

HyperKernel make_ordered_kernel(std::vector<BlockUpdate> order,
                                const PriorConfig& config) {
  require_permutation(order);
  return [order = std::move(order), config](const ChainState& state,
                                            const ThetaVector& theta,
                                            RngStream& rng) -> ChainState {
    return kernel_step_ordered(std::get<HyperState>(state), theta, config, order, rng);
  };
}

HyperKernel make_kernel(KernelId id, const PriorConfig& config) {
  switch (id) {
    case KernelId::Original:
      return make_ordered_kernel({kOriginalOrder.begin(), kOriginalOrder.end()}, config);
    case KernelId::Corrected:
      return make_ordered_kernel({kCorrectedOrder.begin(), kCorrectedOrder.end()}, config);
    case KernelId::Alternative:
      return [config](const ChainState& state, const ThetaVector& theta,
                      RngStream& rng) -> ChainState {
        return kernel_step_alternative(std::get<AltHyperState>(state), theta, config, rng);
      };
  }
  throw ParameterError("unknown kernel");
}

ChainState prior_draw_state(KernelId id, const PriorConfig& config, RngStream& rng) {
  if (id == KernelId::Alternative) return prior_draw_hyper_alt(config, rng);
  return prior_draw_hyper(config, rng);
}

}  // namespace dlgibbs
