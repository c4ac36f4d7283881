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
#include <atomic>
#include <bit>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/io.hpp"
#include "dlgibbs/simd/vecmath.hpp"
#include "dlgibbs/simstudy.hpp"

namespace dlgibbs {
namespace {

constexpr std::uint64_t kStudyRole = 0x73747564;  // "stud"

double median_in_place(std::vector<double>& v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  const double upper = v[mid];
  if (v.size() % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

struct Job {
  std::size_t cell;
  std::size_t replicate;
};

}  // namespace

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

bool SimTable::any_failed() const noexcept {
  return std::any_of(cells.begin(), cells.end(),
                     [](const CellResult& c) { return c.failed(); });
}

std::vector<double> point_estimate(const SampleMatrix& samples, Estimator estimator) {
  const std::size_t n = samples.meta().prior.n();
  if (samples.rows() == 0) throw ParameterError("no retained draws to summarize");
  std::vector<double> estimate(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> col = samples.column(j);
    estimate[j] = estimator == Estimator::PosteriorMean
                      ? pairwise_sum(col) / static_cast<double>(col.size())
                      : median_in_place(col);
  }
  return estimate;
}

double replicate_error(std::span<const double> y, const ThetaVector& truth,
                       const ChainConfig& chain, Estimator estimator, RngStream& rng) {
  const SampleMatrix samples = run_posterior_chain(y, chain, rng);
  const std::vector<double> estimate = point_estimate(samples, estimator);
  return simd::squared_distance(estimate, truth.values);
}

double run_replicate(const ThetaVector& truth, const ChainConfig& chain,
                     Estimator estimator, RngStream& rng) {
  const std::vector<double> y = gen_data(truth, rng);
  return replicate_error(y, truth, chain, estimator, rng);
}

SimTable run_study(const ScenarioGrid& grid, std::size_t parallelism,
                   std::uint64_t master_seed) {
  grid.validate();
  const std::vector<ScenarioCell> cells = expand(grid);
  const std::size_t reps = grid.replicates;

  std::vector<Job> jobs;
  jobs.reserve(cells.size() * reps);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t r = 0; r < reps; ++r) jobs.push_back({c, r});
  }
  std::vector<double> errors(jobs.size(), 0.0);
  std::vector<std::string> failures(jobs.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      const ScenarioCell& cell = cells[jobs[i].cell];
      try {
        ChainConfig chain;
        chain.iterations = grid.iterations;
        chain.burn_in = grid.burn_in;
        chain.thin = grid.thin;
        chain.seed = master_seed;
        chain.kernel = cell.kernel;
        chain.prior = PriorConfig(cell.n, cell.concentration.resolve(cell.n));
        // Data stream shared by all kernels and concentrations of a replicate.
        RngStream rng(master_seed,
                      derive_stream_id({kStudyRole, cell.n, cell.q,
                                        std::bit_cast<std::uint64_t>(cell.signal),
                                        jobs[i].replicate}));
        const ThetaVector truth = gen_truth(cell.n, cell.q, cell.signal);
        errors[i] = run_replicate(truth, chain, grid.estimator, rng);
      } catch (const std::exception& e) {
        std::ostringstream msg;
        msg << "n=" << cell.n << " q=" << cell.q << " A=" << cell.signal
            << " a=" << cell.concentration.label() << " kernel=" << kernel_name(cell.kernel)
            << " replicate=" << jobs[i].replicate << ": " << e.what();
        failures[i] = msg.str();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(parallelism, 1, std::max<std::size_t>(jobs.size(), 1));
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }

  SimTable table;
  table.grid = grid;
  table.master_seed = master_seed;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult result;
    result.cell = cells[c];
    result.estimator = grid.estimator;
    for (std::size_t r = 0; r < reps; ++r) {
      const std::size_t i = c * reps + r;
      if (failures[i].empty()) {
        result.errors.push_back(errors[i]);
      } else if (result.failure.empty()) {
        result.failure = failures[i];
      }
    }
    result.replicates = result.errors.size();
    if (!result.errors.empty()) {
      const double count = static_cast<double>(result.errors.size());
      result.avg_sq_err = pairwise_sum(result.errors) / count;
      std::vector<double> dev(result.errors.size());
      for (std::size_t r = 0; r < dev.size(); ++r) {
        const double d = result.errors[r] - result.avg_sq_err;
        dev[r] = d * d;
      }
      result.mc_se = result.errors.size() > 1
                         ? std::sqrt(pairwise_sum(dev) / (count - 1.0) / count)
                         : 0.0;
    }
    table.cells.push_back(std::move(result));
  }
  return table;
}

void write_simtable_csv(std::ostream& out, const SimTable& table) {
  out << "n,sparsity,A,a,kernel,estimator,avg_sq_err,mc_se,R\n";
  for (const CellResult& r : table.cells) {
    const bool empty = r.errors.empty();
    out << r.cell.n << ',' << format_double(r.cell.sparsity) << ','
        << format_double(r.cell.signal) << ',' << r.cell.concentration.label() << ','
        << kernel_name(r.cell.kernel) << ',' << estimator_name(r.estimator) << ','
        << (empty ? "NA" : format_double(r.avg_sq_err)) << ','
        << (empty ? "NA" : format_double(r.mc_se)) << ',' << r.replicates << '\n';
  }
}

void write_simtable_text(std::ostream& out, const SimTable& table) {
  struct Column {
    std::size_t n;
    double sparsity;
    double signal;
    auto operator<=>(const Column&) const = default;
  };
  std::vector<Column> columns;
  std::vector<std::pair<std::string, KernelId>> rows;
  std::map<std::pair<std::size_t, std::size_t>, const CellResult*> lookup;
  for (const CellResult& r : table.cells) {
    const Column col{r.cell.n, r.cell.sparsity, r.cell.signal};
    if (std::find(columns.begin(), columns.end(), col) == columns.end()) columns.push_back(col);
    const auto row = std::make_pair(r.cell.concentration.label(), r.cell.kernel);
    if (std::find(rows.begin(), rows.end(), row) == rows.end()) rows.push_back(row);
  }
  for (const CellResult& r : table.cells) {
    const Column col{r.cell.n, r.cell.sparsity, r.cell.signal};
    const auto row = std::make_pair(r.cell.concentration.label(), r.cell.kernel);
    const auto ci = static_cast<std::size_t>(std::find(columns.begin(), columns.end(), col) - columns.begin());
    const auto ri = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), row) - rows.begin());
    lookup[{ri, ci}] = &r;
  }

  constexpr int kLabel = 22;
  constexpr int kWidth = 9;
  auto header = [&](const char* name, auto value_of) {
    out << std::setw(kLabel) << name << " |";
    for (const Column& c : columns) out << std::setw(kWidth) << value_of(c);
    out << '\n';
  };
  header("n", [](const Column& c) { return std::to_string(c.n); });
  header("q_n/n (%)", [](const Column& c) { return format_double(std::round(c.sparsity * 1000.0) / 10.0); });
  header("A", [](const Column& c) { return format_double(c.signal); });
  out << std::string(kLabel + 2 + kWidth * columns.size(), '-') << '\n';
  for (std::size_t ri = 0; ri < rows.size(); ++ri) {
    std::string label = "DL_" + rows[ri].first + " " + std::string(kernel_name(rows[ri].second));
    out << std::setw(kLabel) << label << " |";
    for (std::size_t ci = 0; ci < columns.size(); ++ci) {
      const auto it = lookup.find({ri, ci});
      std::ostringstream cell;
      if (it == lookup.end()) {
        cell << "";
      } else if (it->second->errors.empty()) {
        cell << "fail";
      } else {
        cell << std::fixed << std::setprecision(2) << it->second->avg_sq_err;
      }
      out << std::setw(kWidth) << cell.str();
    }
    out << '\n';
  }
  out << "estimator: posterior " << estimator_name(table.grid.estimator)
      << ", replicates: " << table.grid.replicates << ", sweeps: " << table.grid.iterations
      << " (burn-in " << table.grid.burn_in << ")\n";
}

}  // namespace dlgibbs
