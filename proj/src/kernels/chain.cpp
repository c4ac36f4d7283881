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

#include <string>
#include <type_traits>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/kernels.hpp"

namespace dlgibbs {
namespace {

constexpr std::uint64_t kPosteriorChainRole = 0x706f7374;  // "post"

void append_state(std::vector<double>& row, const ChainState& state) {
  std::visit(
      [&row](const auto& s) {
        row.insert(row.end(), s.psi.begin(), s.psi.end());
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, HyperState>) {
          row.insert(row.end(), s.phi.begin(), s.phi.end());
          row.push_back(s.tau);
        } else {
          row.insert(row.end(), s.lambda.begin(), s.lambda.end());
        }
      },
      state);
}

ThetaVector theta_given(std::span<const double> y, const ChainState& state,
                        RngStream& rng) {
  return std::visit([&](const auto& s) { return update_theta(y, s, rng); }, state);
}

}  // namespace

void ChainConfig::validate() const {
  if (thin < 1) throw ParameterError("thin must be at least 1");
  if (burn_in >= iterations) {
    throw ParameterError("burn_in (" + std::to_string(burn_in) +
                         ") must be smaller than iterations (" +
                         std::to_string(iterations) + ")");
  }
}

SampleMatrix::SampleMatrix(std::vector<std::string> names, ChainConfig meta,
                           std::uint64_t stream_id)
    : names_(std::move(names)), meta_(std::move(meta)), stream_id_(stream_id) {}

std::vector<double> SampleMatrix::column(std::size_t j) const {
  std::vector<double> out(rows());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = at(i, j);
  return out;
}

void SampleMatrix::append_row(std::span<const double> values) {
  if (values.size() != cols()) throw ParameterError("row width mismatch");
  data_.insert(data_.end(), values.begin(), values.end());
}

std::vector<std::string> sample_column_names(KernelId id, std::size_t n) {
  std::vector<std::string> names;
  auto add = [&](const char* stem) {
    for (std::size_t j = 1; j <= n; ++j) names.push_back(stem + std::to_string(j));
  };
  add("theta_");
  add("psi_");
  if (id == KernelId::Alternative) {
    add("lambda_");
  } else {
    add("phi_");
    names.emplace_back("tau");
  }
  return names;
}

SampleMatrix run_posterior_chain(std::span<const double> y, const ChainConfig& chain) {
  RngStream rng(chain.seed, derive_stream_id({kPosteriorChainRole}));
  return run_posterior_chain(y, chain, rng);
}

SampleMatrix run_posterior_chain(std::span<const double> y, const ChainConfig& chain,
                                 RngStream& rng) {
  chain.validate();
  if (y.size() != chain.prior.n()) {
    throw ParameterError("data length " + std::to_string(y.size()) +
                         " does not match prior dimension " +
                         std::to_string(chain.prior.n()));
  }
  const HyperKernel kernel = make_kernel(chain.kernel, chain.prior);
  SampleMatrix out(sample_column_names(chain.kernel, chain.prior.n()), chain,
                   rng.stream_id());
  out.reserve_rows(chain.retained_rows());

  ChainState state = prior_draw_state(chain.kernel, chain.prior, rng);
  std::vector<double> row;
  row.reserve(out.cols());
  for (std::size_t t = 1; t <= chain.iterations; ++t) {
    const ThetaVector theta = theta_given(y, state, rng);
    state = kernel(state, theta, rng);
    if (t > chain.burn_in && (t - chain.burn_in) % chain.thin == 0) {
      row.assign(theta.values.begin(), theta.values.end());
      append_state(row, state);
      out.append_row(row);
    }
  }
  return out;
}

}  // namespace dlgibbs
