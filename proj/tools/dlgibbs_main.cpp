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

// dlgibbs command-line entry point.
//
// Exit codes: 0 success, 2 usage or input error (nothing written),
// 3 Geweke rejection, 4 at least one simulation-study cell failed.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/geweke.hpp"
#include "dlgibbs/io.hpp"
#include "dlgibbs/kernels.hpp"
#include "dlgibbs/rng.hpp"
#include "dlgibbs/simstudy.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitRejected = 3;
constexpr int kExitCellFailed = 4;

constexpr std::uint64_t kSyntheticDataRole = 0x64617461;  // "data"

struct CommonOptions {
  std::uint64_t seed = 1;
  std::string out = "dlgibbs_out";
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
};

void add_common(CLI::App& cmd, CommonOptions& common) {
  cmd.add_option("--seed", common.seed, "Master seed")->capture_default_str();
  cmd.add_option("--out", common.out, "Output directory (created if missing)")
      ->capture_default_str();
  cmd.add_option("--threads", common.threads,
                 "Worker threads; results do not depend on it")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

const std::map<std::string, dlgibbs::KernelId> kKernelMap{
    {"original", dlgibbs::KernelId::Original},
    {"corrected", dlgibbs::KernelId::Corrected},
    {"alternative", dlgibbs::KernelId::Alternative}};

std::string kernel_str(dlgibbs::KernelId id) {
  return std::string(dlgibbs::kernel_name(id));
}

// Thread count is deliberately absent: the sidecar must be byte-identical
// for any degree of parallelism.
ordered_json metadata(std::string_view command, const CommonOptions& common) {
  ordered_json meta;
  meta["tool"] = "dlgibbs";
  meta["version"] = DLGIBBS_VERSION;
  meta["command"] = command;
  meta["seed"] = common.seed;
  return meta;
}

ordered_json chain_json(const dlgibbs::ChainConfig& chain) {
  ordered_json j;
  j["kernel"] = kernel_str(chain.kernel);
  j["n"] = chain.prior.n();
  j["a"] = chain.prior.a();
  j["iterations"] = chain.iterations;
  j["burn_in"] = chain.burn_in;
  j["thin"] = chain.thin;
  j["init"] = "prior draw";
  j["theta_floor"] = dlgibbs::kThetaFloor;
  return j;
}

void write_json(const fs::path& path, const ordered_json& meta) {
  dlgibbs::write_file_atomic(path, [&](std::ostream& os) { os << meta.dump(2) << '\n'; });
}

// ---------------------------------------------------------------------------
// sample

struct SampleOptions {
  std::string kernel = "corrected";
  std::string a = "0.5";
  std::vector<double> synthetic;
  std::string input;
  std::size_t iterations = 5000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
};

int cmd_sample(const SampleOptions& opt, const CommonOptions& common) {
  std::vector<double> y;
  ordered_json data_meta;
  if (!opt.input.empty()) {
    y = dlgibbs::read_y_csv(opt.input);
    data_meta = {{"source", "file"}, {"path", opt.input}};
  } else {
    const double n = opt.synthetic[0], q = opt.synthetic[1];
    if (n < 1 || n != std::floor(n) || q < 1 || q != std::floor(q) || q > n)
      throw dlgibbs::ParameterError("--synthetic: need integers n >= 1 and 1 <= q <= n");
    if (!(opt.synthetic[2] > 0))
      throw dlgibbs::ParameterError("--synthetic: signal A must be positive");
    const auto truth = dlgibbs::gen_truth(static_cast<std::size_t>(n),
                                          static_cast<std::size_t>(q), opt.synthetic[2]);
    dlgibbs::RngStream data_rng(common.seed,
                                dlgibbs::derive_stream_id({kSyntheticDataRole}));
    y = dlgibbs::gen_data(truth, data_rng);
    data_meta = {{"source", "synthetic"},
                 {"n", static_cast<std::size_t>(n)},
                 {"q", static_cast<std::size_t>(q)},
                 {"A", opt.synthetic[2]}};
  }

  dlgibbs::ChainConfig chain;
  chain.iterations = opt.iterations;
  chain.burn_in = opt.burn_in;
  chain.thin = opt.thin;
  chain.seed = common.seed;
  chain.kernel = kKernelMap.at(opt.kernel);
  chain.prior = dlgibbs::PriorConfig(
      y.size(), dlgibbs::Concentration::parse(opt.a).resolve(y.size()));
  chain.validate();

  const auto samples = dlgibbs::run_posterior_chain(y, chain);

  const fs::path out(common.out);
  fs::create_directories(out);
  if (opt.input.empty()) {
    dlgibbs::write_file_atomic(out / "y.csv", [&](std::ostream& os) {
      os << "y\n";
      for (double v : y) os << dlgibbs::format_double(v) << '\n';
    });
  }
  dlgibbs::write_file_atomic(out / "samples.csv", [&](std::ostream& os) {
    dlgibbs::write_samples_csv(os, samples);
  });
  dlgibbs::write_file_atomic(out / "summary.csv", [&](std::ostream& os) {
    dlgibbs::write_posterior_summary_csv(os, samples);
  });
  auto meta = metadata("sample", common);
  meta["a"] = opt.a;
  meta["chain"] = chain_json(chain);
  meta["data"] = data_meta;
  meta["rows"] = samples.rows();
  write_json(out / "sample_meta.json", meta);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// geweke

struct GewekeCliOptions {
  std::string kernel = "corrected";
  std::vector<std::string> order;
  std::size_t n = 5;
  double a = 0.5;
  std::size_t m = 250000;
  std::size_t thin = 10;
  std::size_t qq_grid = 99;
  double alpha = 0.001;
};

std::optional<dlgibbs::BlockUpdate> parse_block(const std::string& s) {
  if (s == "psi") return dlgibbs::BlockUpdate::Psi;
  if (s == "tau") return dlgibbs::BlockUpdate::Tau;
  if (s == "phi") return dlgibbs::BlockUpdate::Phi;
  return std::nullopt;
}

int cmd_geweke(const GewekeCliOptions& opt, const CommonOptions& common) {
  const dlgibbs::PriorConfig prior(opt.n, opt.a);
  if (opt.m < 100) throw dlgibbs::ParameterError("--m must be at least 100");
  if (opt.thin < 1 || opt.thin * 10 > opt.m)
    throw dlgibbs::ParameterError("--thin must be >= 1 and leave at least 10 draws");
  if (opt.qq_grid < 2) throw dlgibbs::ParameterError("--qq-grid must be at least 2");
  if (!(opt.alpha > 0.0 && opt.alpha < 1.0))
    throw dlgibbs::ParameterError("--alpha must lie in (0, 1)");

  dlgibbs::GewekeOptions options;
  options.thin = opt.thin;
  options.qq_grid = opt.qq_grid;
  options.alpha = opt.alpha;

  dlgibbs::GewekeReport report;
  std::string label;
  if (opt.order.empty()) {
    const auto id = kKernelMap.at(opt.kernel);
    label = kernel_str(id);
    report = dlgibbs::geweke_report(prior, id, opt.m, common.seed, options);
  } else {
    std::vector<dlgibbs::BlockUpdate> order;
    for (const auto& s : opt.order) {
      auto b = parse_block(s);
      if (!b) throw dlgibbs::ParameterError("--order: unknown block '" + s + "'");
      order.push_back(*b);
    }
    auto kernel = dlgibbs::make_ordered_kernel(order, prior);
    label = "order_";
    for (std::size_t i = 0; i < opt.order.size(); ++i)
      label += (i ? "_" : "") + opt.order[i];
    report = dlgibbs::geweke_report(
        prior, label, kernel,
        [&](dlgibbs::RngStream& rng) {
          return dlgibbs::prior_draw_state(dlgibbs::KernelId::Corrected, prior, rng);
        },
        dlgibbs::builtin_test_functions(dlgibbs::KernelId::Corrected), opt.m,
        common.seed, options);
  }

  const fs::path out(common.out);
  fs::create_directories(out);
  dlgibbs::write_file_atomic(out / ("geweke_" + label + "_qq.csv"),
                             [&](std::ostream& os) { dlgibbs::write_geweke_qq_csv(os, report); });
  dlgibbs::write_file_atomic(
      out / ("geweke_" + label + "_summary.csv"),
      [&](std::ostream& os) { dlgibbs::write_geweke_summary_csv(os, report); });

  auto meta = metadata("geweke", common);
  meta["kernel"] = label;
  meta["n"] = opt.n;
  meta["a"] = opt.a;
  meta["m"] = opt.m;
  meta["thin"] = opt.thin;
  meta["qq_grid"] = opt.qq_grid;
  meta["alpha"] = opt.alpha;
  meta["min_p_adj"] = report.min_p_adj();
  meta["rejects"] = report.rejects();
  write_json(out / ("geweke_" + label + "_meta.json"), meta);

  for (const auto& r : report.results) {
    std::cout << r.name << ": ks=" << dlgibbs::format_double(r.ks)
              << " p_adj=" << dlgibbs::format_double(r.p_adj) << '\n';
  }
  std::cout << label << ": " << (report.rejects() ? "REJECTED" : "not rejected")
            << " at alpha=" << dlgibbs::format_double(opt.alpha) << '\n';
  return report.rejects() ? kExitRejected : kExitOk;
}

// ---------------------------------------------------------------------------
// simstudy

struct SimstudyOptions {
  std::string table = "1-2";
  bool full = false;
  std::optional<std::size_t> replicates;
  std::vector<std::size_t> n_values;
  std::vector<double> sparsity;
  std::vector<double> signals;
  std::vector<std::string> a_values;
  std::vector<std::string> kernels;
  std::string estimator = "median";
  std::size_t iterations = 5000;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
};

int cmd_simstudy(const SimstudyOptions& opt, const CommonOptions& common) {
  const std::size_t replicates = opt.replicates.value_or(opt.full ? 100 : 20);
  dlgibbs::ScenarioGrid grid = opt.table == "3"
                                   ? dlgibbs::ScenarioGrid::table_3(opt.full ? 1000 : 200,
                                                                    replicates)
                                   : dlgibbs::ScenarioGrid::tables_1_2(replicates);
  if (opt.full) {
    std::cerr << "warning: --full runs the full-scale grid; expect hours of CPU time\n";
  }
  if (!opt.n_values.empty()) grid.n_values = opt.n_values;
  if (!opt.sparsity.empty()) grid.sparsity = opt.sparsity;
  if (!opt.signals.empty()) grid.signals = opt.signals;
  if (!opt.a_values.empty()) {
    grid.concentrations.clear();
    for (const auto& s : opt.a_values)
      grid.concentrations.push_back(dlgibbs::Concentration::parse(s));
  }
  if (!opt.kernels.empty()) {
    grid.kernels.clear();
    for (const auto& k : opt.kernels) grid.kernels.push_back(kKernelMap.at(k));
  }
  grid.estimator = *dlgibbs::parse_estimator(opt.estimator);
  grid.iterations = opt.iterations;
  grid.burn_in = opt.burn_in;
  grid.thin = opt.thin;
  grid.validate();
  dlgibbs::ChainConfig{grid.iterations, grid.burn_in, grid.thin}.validate();

  const auto table = dlgibbs::run_study(grid, common.threads, common.seed);

  const fs::path out(common.out);
  fs::create_directories(out);
  dlgibbs::write_file_atomic(out / "simtable.csv", [&](std::ostream& os) {
    dlgibbs::write_simtable_csv(os, table);
  });
  dlgibbs::write_file_atomic(out / "simtable.txt", [&](std::ostream& os) {
    dlgibbs::write_simtable_text(os, table);
  });

  auto meta = metadata("simstudy", common);
  meta["table"] = opt.table;
  meta["full"] = opt.full;
  meta["n"] = grid.n_values;
  meta["sparsity"] = grid.sparsity;
  meta["A"] = grid.signals;
  std::vector<std::string> a_labels, kernel_labels;
  for (const auto& c : grid.concentrations) a_labels.push_back(c.label());
  for (auto k : grid.kernels) kernel_labels.push_back(kernel_str(k));
  meta["a"] = a_labels;
  meta["kernels"] = kernel_labels;
  meta["replicates"] = grid.replicates;
  meta["estimator"] = std::string(dlgibbs::estimator_name(grid.estimator));
  meta["iterations"] = grid.iterations;
  meta["burn_in"] = grid.burn_in;
  meta["thin"] = grid.thin;
  meta["init"] = "prior draw";
  meta["theta_floor"] = dlgibbs::kThetaFloor;
  write_json(out / "simstudy_meta.json", meta);

  std::size_t failed = 0;
  for (const auto& cell : table.cells) {
    if (!cell.failed()) continue;
    ++failed;
    std::cerr << "cell n=" << cell.cell.n << " q=" << cell.cell.q
              << " A=" << dlgibbs::format_double(cell.cell.signal)
              << " a=" << cell.cell.concentration.label() << " kernel="
              << kernel_str(cell.cell.kernel) << " failed: " << cell.failure << '\n';
  }
  if (failed) {
    std::cerr << failed << " of " << table.cells.size() << " cells failed\n";
    return kExitCellFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Posterior simulation for the normal-means model under the "
               "Dirichlet-Laplace prior"};
  app.set_version_flag("--version", DLGIBBS_VERSION);
  app.require_subcommand(1);

  auto kernel_check = CLI::IsMember({"original", "corrected", "alternative"});

  CommonOptions sample_common;
  SampleOptions sample_opt;
  auto* sample = app.add_subcommand("sample", "Run one posterior chain");
  add_common(*sample, sample_common);
  sample->add_option("--kernel", sample_opt.kernel, "Hyperparameter kernel")
      ->check(kernel_check)
      ->capture_default_str();
  sample->add_option("--a", sample_opt.a, "Dirichlet concentration: a number or 1/n")
      ->capture_default_str();
  auto* synth = sample->add_option("--synthetic", sample_opt.synthetic,
                                   "Simulate y from n,q,A (q leading means equal A)")
                    ->delimiter(',')
                    ->expected(3);
  auto* input = sample->add_option("--input", sample_opt.input,
                                   "CSV with a single column headed y");
  synth->excludes(input);
  sample->add_option("--iterations", sample_opt.iterations, "Total sweeps")
      ->capture_default_str();
  sample->add_option("--burn-in", sample_opt.burn_in, "Discarded leading sweeps")
      ->capture_default_str();
  sample->add_option("--thin", sample_opt.thin, "Keep every k-th sweep after burn-in")
      ->capture_default_str();

  CommonOptions geweke_common;
  GewekeCliOptions geweke_opt;
  auto* geweke = app.add_subcommand(
      "geweke", "Joint-distribution test of a kernel (exit 3 if rejected)");
  add_common(*geweke, geweke_common);
  geweke->add_option("--kernel", geweke_opt.kernel, "Kernel under test")
      ->check(kernel_check)
      ->capture_default_str();
  geweke->add_option("--order", geweke_opt.order,
                     "Custom block order instead of --kernel, e.g. psi,tau,phi")
      ->delimiter(',')
      ->expected(3);
  geweke->add_option("--n", geweke_opt.n, "Dimension")->capture_default_str();
  geweke->add_option("--a", geweke_opt.a, "Dirichlet concentration")
      ->capture_default_str();
  geweke->add_option("--m", geweke_opt.m, "Draws per simulator")->capture_default_str();
  geweke->add_option("--thin", geweke_opt.thin,
                     "Thinning of the successive-conditional draws")
      ->capture_default_str();
  geweke->add_option("--qq-grid", geweke_opt.qq_grid, "Quantile points per function")
      ->capture_default_str();
  geweke->add_option("--alpha", geweke_opt.alpha,
                     "Rejection threshold on Bonferroni-adjusted p-values")
      ->capture_default_str();

  CommonOptions sim_common;
  SimstudyOptions sim_opt;
  auto* sim = app.add_subcommand(
      "simstudy", "Squared-error simulation study (exit 4 if a cell failed)");
  add_common(*sim, sim_common);
  sim->add_option("--table", sim_opt.table,
                  "Grid: 1-2 (n in {100,200}, q/n in {5,10,20}%, A in 5..8) or "
                  "3 (q/n = 10%, A in 2..7)")
      ->check(CLI::IsMember({"1-2", "3"}))
      ->capture_default_str();
  sim->add_flag("--full", sim_opt.full,
                "Full scale: 100 replicates, and n=1000 for table 3 (default n=200)");
  sim->add_option("--replicates", sim_opt.replicates,
                  "Replicates per cell [default: 20, or 100 with --full]");
  sim->add_option("--n", sim_opt.n_values, "Override dimensions, comma separated")
      ->delimiter(',');
  sim->add_option("--sparsity", sim_opt.sparsity,
                  "Override q/n fractions, comma separated")
      ->delimiter(',');
  sim->add_option("--signal", sim_opt.signals, "Override signal sizes A, comma separated")
      ->delimiter(',');
  sim->add_option("--a", sim_opt.a_values,
                  "Override concentrations, comma separated [default: 1/n,0.5]")
      ->delimiter(',');
  sim->add_option("--kernels", sim_opt.kernels,
                  "Kernels, comma separated [default: original,corrected,alternative]")
      ->delimiter(',')
      ->check(kernel_check);
  sim->add_option("--estimator", sim_opt.estimator, "Point estimate: median or mean")
      ->check(CLI::IsMember({"median", "mean"}))
      ->capture_default_str();
  sim->add_option("--iterations", sim_opt.iterations, "Sweeps per chain")
      ->capture_default_str();
  sim->add_option("--burn-in", sim_opt.burn_in, "Burn-in sweeps per chain")
      ->capture_default_str();
  sim->add_option("--thin", sim_opt.thin, "Thinning per chain")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sample) {
      if (sample_opt.input.empty() && sample_opt.synthetic.empty())
        throw dlgibbs::ParameterError("sample: one of --input or --synthetic is required");
      return cmd_sample(sample_opt, sample_common);
    }
    if (*geweke) return cmd_geweke(geweke_opt, geweke_common);
    return cmd_simstudy(sim_opt, sim_common);
  } catch (const dlgibbs::ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
