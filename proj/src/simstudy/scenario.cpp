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
#include <sstream>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/io.hpp"
#include "dlgibbs/simstudy.hpp"

namespace dlgibbs {

std::string_view estimator_name(Estimator e) noexcept {
  return e == Estimator::PosteriorMean ? "mean" : "median";
}

std::optional<Estimator> parse_estimator(std::string_view name) noexcept {
  if (name == "mean") return Estimator::PosteriorMean;
  if (name == "median") return Estimator::PosteriorMedian;
  return std::nullopt;
}

Concentration Concentration::fixed(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) {
    throw ParameterError("concentration must be positive, got " + format_double(a));
  }
  return Concentration(false, a);
}

Concentration Concentration::parse(std::string_view text) {
  if (text == "1/n") return inverse_n();
  if (text == "1/2") return fixed(0.5);
  return fixed(parse_double(text));
}

std::string Concentration::label() const {
  return inverse_n_ ? "1/n" : format_double(value_);
}

void ScenarioGrid::validate() const {
  if (n_values.empty() || sparsity.empty() || signals.empty() ||
      concentrations.empty() || kernels.empty()) {
    throw ParameterError("scenario grid has an empty axis");
  }
  if (replicates < 1) throw ParameterError("replicates must be at least 1");
  for (double a : signals) {
    if (!(a > 0.0)) throw ParameterError("signal strength A must be positive");
  }
  for (std::size_t n : n_values) {
    for (double f : sparsity) {
      const double q = std::round(f * static_cast<double>(n));
      if (!(q >= 1.0) || q > static_cast<double>(n)) {
        std::ostringstream msg;
        msg << "sparsity " << f << " gives q_n = " << q << " for n = " << n;
        throw ParameterError(msg.str());
      }
    }
  }
  ChainConfig chain;
  chain.iterations = iterations;
  chain.burn_in = burn_in;
  chain.thin = thin;
  chain.validate();
}

ScenarioGrid ScenarioGrid::tables_1_2(std::size_t replicates) {
  ScenarioGrid grid;
  grid.n_values = {100, 200};
  grid.sparsity = {0.05, 0.10, 0.20};
  grid.signals = {5, 6, 7, 8};
  grid.concentrations = {Concentration::inverse_n(), Concentration::fixed(0.5)};
  grid.replicates = replicates;
  return grid;
}

ScenarioGrid ScenarioGrid::table_3(std::size_t n, std::size_t replicates) {
  ScenarioGrid grid;
  grid.n_values = {n};
  grid.sparsity = {0.10};
  grid.signals = {2, 3, 4, 5, 6, 7};
  grid.concentrations = {Concentration::inverse_n(), Concentration::fixed(0.5)};
  grid.replicates = replicates;
  return grid;
}

std::vector<ScenarioCell> expand(const ScenarioGrid& grid) {
  std::vector<ScenarioCell> cells;
  for (std::size_t n : grid.n_values) {
    for (double f : grid.sparsity) {
      const auto q = static_cast<std::size_t>(std::round(f * static_cast<double>(n)));
      for (double signal : grid.signals) {
        for (const Concentration& a : grid.concentrations) {
          for (KernelId k : grid.kernels) cells.push_back({n, q, f, signal, a, k});
        }
      }
    }
  }
  return cells;
}

ThetaVector gen_truth(std::size_t n, std::size_t q, double signal) {
  if (q < 1 || q > n) throw ParameterError("need 1 <= q_n <= n");
  if (!(signal > 0.0)) throw ParameterError("signal strength must be positive");
  ThetaVector truth{std::vector<double>(n, 0.0)};
  std::fill_n(truth.values.begin(), q, signal);
  return truth;
}

std::vector<double> gen_data(const ThetaVector& truth, RngStream& rng) {
  std::vector<double> y(truth.size());
  for (std::size_t j = 0; j < y.size(); ++j) y[j] = truth[j] + rng.normal();
  return y;
}

}  // namespace dlgibbs
