#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/simstudy.hpp"
#include "test_util.hpp"

using namespace dlgibbs;

namespace {

ScenarioGrid tiny_grid() {
  ScenarioGrid g;
  g.n_values = {10};
  g.sparsity = {0.2};
  g.signals = {3.0};
  g.concentrations = {Concentration::inverse_n(), Concentration::fixed(0.5)};
  g.replicates = 3;
  g.iterations = 300;
  g.burn_in = 100;
  return g;
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("truth vector") {
  const auto t = gen_truth(100, 5, 5.0);
  REQUIRE(t.size() == 100);
  double sum = 0.0;
  for (std::size_t j = 0; j < 100; ++j) {
    CHECK(t[j] == (j < 5 ? 5.0 : 0.0));
    sum += t[j];
  }
  CHECK(sum == 25.0);
  CHECK(gen_truth(4, 4, 2.0).values == std::vector<double>(4, 2.0));
  CHECK_THROWS_AS(gen_truth(10, 0, 1.0), ParameterError);
  CHECK_THROWS_AS(gen_truth(10, 11, 1.0), ParameterError);
  CHECK_THROWS_AS(gen_truth(10, 2, 0.0), ParameterError);
}

TEST_CASE("data generation: unit noise, centred, deterministic") {
  const auto truth = gen_truth(100000, 5000, 4.0);
  RngStream a(40, 1), b(40, 1);
  const auto y = gen_data(truth, a);
  CHECK(y == gen_data(truth, b));
  std::vector<double> noise(y.size());
  double my = 0.0, mt = 0.0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    noise[j] = y[j] - truth[j];
    my += y[j];
    mt += truth[j];
  }
  CHECK(testing::variance(noise) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(std::abs(my - mt) / y.size() < 4.0 / std::sqrt(static_cast<double>(y.size())));
}

TEST_CASE("point estimates") {
  ChainConfig meta;
  meta.prior = PriorConfig(2, 0.5);
  SampleMatrix m(sample_column_names(KernelId::Corrected, 2), meta, 0);
  const double rows[4][2] = {{1.0, 10.0}, {4.0, -1.0}, {2.0, 3.0}, {8.0, 0.0}};
  for (const auto& r : rows) {
    std::vector<double> row(m.cols(), 0.5);
    row[0] = r[0];
    row[1] = r[1];
    m.append_row(row);
  }
  CHECK(point_estimate(m, Estimator::PosteriorMean) == std::vector<double>{3.75, 3.0});
  CHECK(point_estimate(m, Estimator::PosteriorMedian) == std::vector<double>{3.0, 1.5});
  SampleMatrix empty(sample_column_names(KernelId::Corrected, 2), meta, 0);
  CHECK_THROWS_AS(point_estimate(empty, Estimator::PosteriorMean), ParameterError);
}

TEST_CASE("replicate error: huge signals are recovered") {
  ChainConfig c;
  c.iterations = 2000;
  c.burn_in = 500;
  c.kernel = KernelId::Corrected;
  c.prior = PriorConfig(20, 1.0 / 20);
  RngStream rng(41, 1);
  CHECK(run_replicate(gen_truth(20, 2, 50.0), c, Estimator::PosteriorMedian, rng) < 60.0);
}

TEST_CASE("replicate error: noiseless zero data shrinks to zero") {
  ChainConfig c;
  c.iterations = 2000;
  c.burn_in = 500;
  c.prior = PriorConfig(10, 0.1);
  const std::vector<double> y(10, 0.0);
  const ThetaVector truth{std::vector<double>(10, 0.0)};
  for (auto id : {KernelId::Original, KernelId::Corrected, KernelId::Alternative}) {
    c.kernel = id;
    RngStream rng(41, 2);
    CHECK(replicate_error(y, truth, c, Estimator::PosteriorMedian, rng) < 1.0);
  }
}

TEST_CASE("concentration parsing and labels") {
  const auto inv = Concentration::parse("1/n");
  CHECK(inv.resolve(100) == 0.01);
  CHECK(inv.label() == "1/n");
  const auto half = Concentration::parse("0.5");
  CHECK(half.resolve(7) == 0.5);
  CHECK(half.label() == "0.5");
  CHECK(Concentration::parse("1/2") == half);
  CHECK_THROWS_AS(Concentration::parse("abc"), ParameterError);
  CHECK_THROWS_AS(Concentration::parse("0"), ParameterError);
  CHECK_THROWS_AS(Concentration::parse("-1"), ParameterError);
  CHECK_THROWS_AS(Concentration::fixed(0.0), ParameterError);
}

TEST_CASE("estimator names") {
  CHECK(parse_estimator("mean") == Estimator::PosteriorMean);
  CHECK(parse_estimator("median") == Estimator::PosteriorMedian);
  CHECK_FALSE(parse_estimator("mode").has_value());
  CHECK(estimator_name(Estimator::PosteriorMedian) == "median");
}

TEST_CASE("grid presets and validation") {
  const auto g = ScenarioGrid::tables_1_2(20);
  CHECK(g.n_values == std::vector<std::size_t>{100, 200});
  CHECK(g.sparsity == std::vector<double>{0.05, 0.1, 0.2});
  CHECK(g.signals == std::vector<double>{5, 6, 7, 8});
  CHECK(g.concentrations.size() == 2);
  CHECK(g.replicates == 20);
  CHECK(expand(g).size() == 2 * 3 * 4 * 2 * 3);
  const auto t3 = ScenarioGrid::table_3(200, 20);
  CHECK(t3.n_values == std::vector<std::size_t>{200});
  CHECK(t3.signals == std::vector<double>{2, 3, 4, 5, 6, 7});
  CHECK_NOTHROW(t3.validate());

  auto bad = tiny_grid();
  bad.signals.clear();
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = tiny_grid();
  bad.replicates = 0;
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = tiny_grid();
  bad.sparsity = {0.01};  // round(0.1) = 0 coordinates
  CHECK_THROWS_AS(bad.validate(), ParameterError);
  bad = tiny_grid();
  bad.signals = {-1.0};
  CHECK_THROWS_AS(bad.validate(), ParameterError);
}

TEST_CASE("cells expand in row-major order") {
  const auto cells = expand(tiny_grid());
  REQUIRE(cells.size() == 6);
  CHECK(cells[0].q == 2);
  CHECK(cells[0].kernel == KernelId::Original);
  CHECK(cells[2].kernel == KernelId::Alternative);
  CHECK(cells[3].concentration == Concentration::fixed(0.5));
}

TEST_CASE("study: identical results for any parallelism and repeated runs") {
  const auto g = tiny_grid();
  const SimTable serial = run_study(g, 1, 9);
  const SimTable parallel = run_study(g, 4, 9);
  REQUIRE(serial.cells.size() == 6);
  for (std::size_t i = 0; i < serial.cells.size(); ++i) {
    CHECK(serial.cells[i].errors == parallel.cells[i].errors);
    CHECK(serial.cells[i].avg_sq_err == parallel.cells[i].avg_sq_err);
    CHECK(serial.cells[i].mc_se == parallel.cells[i].mc_se);
    CHECK(serial.cells[i].replicates == 3);
    CHECK_FALSE(serial.cells[i].failed());
  }
  CHECK(run_study(g, 2, 10).cells[0].errors != serial.cells[0].errors);
}

TEST_CASE("study: replicates share data across kernels") {
  // Replicate streams are keyed by (n, q, A, replicate), not by kernel or
  // cell position, so a grid with fewer kernels reproduces matching cells.
  auto g = tiny_grid();
  const SimTable all = run_study(g, 1, 3);
  g.kernels = {KernelId::Alternative};
  const SimTable alt = run_study(g, 1, 3);
  CHECK(alt.cells[0].errors == all.cells[2].errors);
  CHECK(alt.cells[1].errors == all.cells[5].errors);
}

TEST_CASE("pairwise summation") {
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK(pairwise_sum(v) == 499500.0);
  std::vector<double> w(1 << 20, 0.1);
  CHECK(pairwise_sum(w) == doctest::Approx(0.1 * (1 << 20)).epsilon(1e-14));
}

TEST_CASE("table writers") {
  SimTable t;
  t.grid = tiny_grid();
  t.master_seed = 1;
  CellResult ok;
  ok.cell = {10, 2, 0.2, 3.0, Concentration::inverse_n(), KernelId::Corrected};
  ok.avg_sq_err = 1.25;
  ok.mc_se = 0.5;
  ok.replicates = 3;
  ok.errors = {1.0, 1.5, 1.25};
  CellResult bad = ok;
  bad.cell.kernel = KernelId::Original;
  bad.errors.clear();
  bad.replicates = 0;
  bad.failure = "boom";
  t.cells = {ok, bad};
  CHECK(t.any_failed());

  std::ostringstream csv;
  write_simtable_csv(csv, t);
  CHECK(csv.str() ==
        "n,sparsity,A,a,kernel,estimator,avg_sq_err,mc_se,R\n"
        "10,0.2,3,1/n,corrected,median,1.25,0.5,3\n"
        "10,0.2,3,1/n,original,median,NA,NA,0\n");

  std::ostringstream text;
  write_simtable_text(text, t);
  const std::string s = text.str();
  CHECK(s.find("DL_1/n corrected") != std::string::npos);
  CHECK(s.find("1.25") != std::string::npos);
  CHECK(s.find("fail") != std::string::npos);
  CHECK(s.find("q_n/n (%)") != std::string::npos);
  CHECK(count_lines(s) == 7);
}
