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

// Transition kernels for the hyperparameter block and full posterior chains.
//
// The joint update of (phi, tau, psi) given theta uses two collapsed
// conditionals: phi | theta (psi and tau integrated out) and
// tau | phi, theta (psi integrated out). A collapsed block has to be drawn
// before the blocks it integrates over, so the only valid order is
// phi, then tau, then psi. The original published order psi, tau, phi is
// kept here on purpose; it does not leave p(phi, tau, psi | theta) invariant.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dlgibbs/model.hpp"
#include "dlgibbs/rng.hpp"

namespace dlgibbs {

enum class KernelId { Original, Corrected, Alternative };

std::string_view kernel_name(KernelId id) noexcept;
std::optional<KernelId> parse_kernel(std::string_view name) noexcept;

/// One block of the (phi, tau, psi) update.
enum class BlockUpdate { Psi, Tau, Phi };

inline constexpr std::array<BlockUpdate, 3> kOriginalOrder{
    BlockUpdate::Psi, BlockUpdate::Tau, BlockUpdate::Phi};
inline constexpr std::array<BlockUpdate, 3> kCorrectedOrder{
    BlockUpdate::Phi, BlockUpdate::Tau, BlockUpdate::Psi};

using ChainState = std::variant<HyperState, AltHyperState>;

/// Applies the three block updates in the given order. `order` must be a
/// permutation of {Psi, Tau, Phi}.
HyperState kernel_step_ordered(const HyperState& state, const ThetaVector& theta,
                               const PriorConfig& config,
                               std::span<const BlockUpdate> order, RngStream& rng);

/// psi | old (phi, tau); tau | old phi; phi | theta.
HyperState kernel_step_original(const HyperState& state, const ThetaVector& theta,
                                const PriorConfig& config, RngStream& rng);
/// phi | theta; tau | new phi; psi | new (phi, tau).
HyperState kernel_step_corrected(const HyperState& state, const ThetaVector& theta,
                                 const PriorConfig& config, RngStream& rng);
/// lambda | theta; psi | new lambda.
AltHyperState kernel_step_alternative(const AltHyperState& state,
                                      const ThetaVector& theta,
                                      const PriorConfig& config, RngStream& rng);

/// Type-erased hyperparameter transition, so harnesses can run custom
/// orderings or stub kernels alongside the named ones.
using HyperKernel =
    std::function<ChainState(const ChainState&, const ThetaVector&, RngStream&)>;

HyperKernel make_kernel(KernelId id, const PriorConfig& config);
HyperKernel make_ordered_kernel(std::vector<BlockUpdate> order,
                                const PriorConfig& config);

/// Prior draw in the parameterization the kernel works on.
ChainState prior_draw_state(KernelId id, const PriorConfig& config, RngStream& rng);

struct ChainConfig {
  std::size_t iterations = 5000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  std::uint64_t seed = 1;
  KernelId kernel = KernelId::Corrected;
  PriorConfig prior{1, 0.5};

  /// Throws ParameterError unless burn_in < iterations and thin >= 1.
  void validate() const;
  std::size_t retained_rows() const noexcept {
    return (iterations - burn_in) / thin;
  }
};

/// Retained draws, one row per kept iteration. Columns are theta_1..theta_n
/// followed by psi_1..psi_n and either phi_1..phi_n, tau or
/// lambda_1..lambda_n.
class SampleMatrix {
 public:
  SampleMatrix(std::vector<std::string> names, ChainConfig meta,
               std::uint64_t stream_id);

  const std::vector<std::string>& names() const noexcept { return names_; }
  const ChainConfig& meta() const noexcept { return meta_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::size_t rows() const noexcept { return cols() ? data_.size() / cols() : 0; }
  std::size_t cols() const noexcept { return names_.size(); }

  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols(), cols()};
  }
  double at(std::size_t i, std::size_t j) const { return data_[i * cols() + j]; }
  std::vector<double> column(std::size_t j) const;

  void append_row(std::span<const double> values);
  void reserve_rows(std::size_t rows) { data_.reserve(rows * cols()); }

  friend bool operator==(const SampleMatrix& a, const SampleMatrix& b) {
    return a.names_ == b.names_ && a.data_ == b.data_;
  }

 private:
  std::vector<std::string> names_;
  ChainConfig meta_;
  std::uint64_t stream_id_;
  std::vector<double> data_;
};

std::vector<std::string> sample_column_names(KernelId id, std::size_t n);

/// Posterior chain for data y: hyperparameters start from a prior draw, then
/// each sweep updates theta | hyper, y and applies the kernel. The stream is
/// derived from chain.seed.
SampleMatrix run_posterior_chain(std::span<const double> y, const ChainConfig& chain);
SampleMatrix run_posterior_chain(std::span<const double> y, const ChainConfig& chain,
                                 RngStream& rng);

}  // namespace dlgibbs
