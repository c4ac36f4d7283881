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

// Squared-error simulation study for the normal-means model.
//
// Each scenario cell fixes (n, q_n, A, a, kernel). A replicate draws
// y = theta0 + N(0, I) for theta0 with q_n leading entries equal to A, runs
// a posterior chain and scores sum_j (estimate_j - theta0_j)^2. Replicate r
// of every cell sharing (n, q_n, A) uses the same data stream, so kernels and
// concentrations are compared on common random numbers.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlgibbs/kernels.hpp"
#include "dlgibbs/model.hpp"

namespace dlgibbs {

enum class Estimator { PosteriorMean, PosteriorMedian };

std::string_view estimator_name(Estimator e) noexcept;
std::optional<Estimator> parse_estimator(std::string_view name) noexcept;

/// Dirichlet concentration either fixed or tied to the dimension as 1/n.
class Concentration {
 public:
  static Concentration inverse_n() { return Concentration(true, 0.0); }
  static Concentration fixed(double a);
  /// "1/n" or a positive number.
  static Concentration parse(std::string_view text);

  double resolve(std::size_t n) const noexcept {
    return inverse_n_ ? 1.0 / static_cast<double>(n) : value_;
  }
  /// "1/n" or the shortest decimal of the value, e.g. "0.5".
  std::string label() const;

  friend bool operator==(const Concentration&, const Concentration&) = default;

 private:
  Concentration(bool inverse_n, double value) : inverse_n_(inverse_n), value_(value) {}
  bool inverse_n_;
  double value_;
};

struct ScenarioGrid {
  std::vector<std::size_t> n_values;
  std::vector<double> sparsity;  // q_n / n
  std::vector<double> signals;   // A
  std::vector<Concentration> concentrations;
  std::vector<KernelId> kernels{KernelId::Original, KernelId::Corrected,
                                KernelId::Alternative};
  std::size_t replicates = 20;
  Estimator estimator = Estimator::PosteriorMedian;
  std::size_t iterations = 5000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;

  /// Throws ParameterError on empty axes, A <= 0, R < 1, or any
  /// round(fraction * n) < 1 or > n.
  void validate() const;

  /// n in {100, 200}, q_n/n in {5, 10, 20}%, A in {5, ..., 8}.
  static ScenarioGrid tables_1_2(std::size_t replicates);
  /// One n, q_n/n = 10%, A in {2, ..., 7}.
  static ScenarioGrid table_3(std::size_t n, std::size_t replicates);
};

struct ScenarioCell {
  std::size_t n = 0;
  std::size_t q = 0;
  double sparsity = 0.0;
  double signal = 0.0;
  Concentration concentration = Concentration::inverse_n();
  KernelId kernel = KernelId::Corrected;
};

/// Cells in row-major order over (n, sparsity, A, a, kernel).
std::vector<ScenarioCell> expand(const ScenarioGrid& grid);

struct CellResult {
  ScenarioCell cell;
  Estimator estimator = Estimator::PosteriorMedian;
  double avg_sq_err = 0.0;
  double mc_se = 0.0;
  std::size_t replicates = 0;  // successful replicates
  std::vector<double> errors;  // per replicate, in replicate order
  std::string failure;         // first error message; empty if none

  bool failed() const noexcept { return !failure.empty(); }
};

struct SimTable {
  ScenarioGrid grid;
  std::uint64_t master_seed = 0;
  std::vector<CellResult> cells;

  bool any_failed() const noexcept;
};

/// q leading entries equal to A, the rest zero.
ThetaVector gen_truth(std::size_t n, std::size_t q, double signal);

/// theta0 + standard normal noise.
std::vector<double> gen_data(const ThetaVector& truth, RngStream& rng);

/// Elementwise posterior mean or median of the theta columns.
std::vector<double> point_estimate(const SampleMatrix& samples, Estimator estimator);

/// Squared error of the posterior estimate from data y.
double replicate_error(std::span<const double> y, const ThetaVector& truth,
                       const ChainConfig& chain, Estimator estimator, RngStream& rng);

/// Draws y from the stream, then runs the chain on the same stream.
double run_replicate(const ThetaVector& truth, const ChainConfig& chain,
                     Estimator estimator, RngStream& rng);

/// Runs every cell and replicate on up to `parallelism` threads. The result
/// depends only on the grid and the master seed.
SimTable run_study(const ScenarioGrid& grid, std::size_t parallelism,
                   std::uint64_t master_seed);

/// Sum by recursive halving; the value depends only on the element order.
double pairwise_sum(std::span<const double> values);

/// CSV with columns n,sparsity,A,a,kernel,estimator,avg_sq_err,mc_se,R.
void write_simtable_csv(std::ostream& out, const SimTable& table);
/// Aligned text table: one row per (a, kernel), column groups by n, q_n/n
/// and A.
void write_simtable_text(std::ostream& out, const SimTable& table);

}  // namespace dlgibbs
