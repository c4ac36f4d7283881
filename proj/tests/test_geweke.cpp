#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "dlgibbs/distributions.hpp"
#include "dlgibbs/errors.hpp"
#include "dlgibbs/geweke.hpp"
#include "test_util.hpp"

using namespace dlgibbs;

// ---------------------------------------------------------------- KS

TEST_CASE("ks: identical samples") {
  const std::vector<double> x{3.0, 1.0, 2.0, 2.0};
  CHECK(ks_two_sample(x, x).statistic == 0.0);
  CHECK(ks_two_sample(x, x).p_value == 1.0);
}

TEST_CASE("ks: disjoint supports") {
  const std::vector<double> x{1.0, 2.0}, y{3.0, 4.0, 5.0};
  CHECK(ks_two_sample(x, y).statistic == 1.0);
}

TEST_CASE("ks: small case against brute force") {
  const std::vector<double> x{1, 2, 3, 4}, y{1.5, 2.5};
  CHECK(ks_two_sample(x, y).statistic == testing::ks_brute_force(x, y));
  CHECK(ks_two_sample(x, y).statistic == 0.5);
}

TEST_CASE("ks: random tied samples against brute force") {
  std::mt19937_64 eng(7);
  std::uniform_int_distribution<int> size(1, 40), value(0, 12);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> x(size(eng)), y(size(eng));
    for (auto& v : x) v = value(eng) * 0.5;
    for (auto& v : y) v = value(eng) * 0.5;
    REQUIRE(ks_two_sample(x, y).statistic == doctest::Approx(testing::ks_brute_force(x, y)).epsilon(1e-15));
    REQUIRE(ks_two_sample(x, y).statistic == ks_two_sample(y, x).statistic);
  }
}

TEST_CASE("ks: empty input and bad effective sizes") {
  const std::vector<double> x{1.0}, e;
  CHECK_THROWS_AS(ks_two_sample(x, e), ParameterError);
  CHECK_THROWS_AS(ks_two_sample(x, x, 0.0, 1.0), ParameterError);
}

TEST_CASE("ks: smaller effective sizes give larger p-values") {
  const std::vector<double> x{0.1, 0.4, 0.5, 0.9, 1.3, 1.4, 2.0, 2.2, 2.9, 3.1};
  const std::vector<double> y{0.3, 0.6, 1.7, 1.9, 2.4, 2.5, 2.7, 3.3, 3.4, 4.0};
  const KsResult raw = ks_two_sample(x, y);
  const KsResult eff = ks_two_sample(x, y, 4.0, 4.0);
  CHECK(raw.statistic == eff.statistic);
  CHECK(eff.p_value > raw.p_value);
}

TEST_CASE("kolmogorov survival against reference values") {
  struct Ref {
    double t, p;
  };
  // Reference values of P(K > t) from an independent implementation.
  const Ref refs[] = {{0.3, 0.9999906941986655},     {0.5, 0.9639452436648751},
                      {1.0, 0.26999967167735456},    {1.17, 0.12939004218561884},
                      {1.18, 0.1234538094297657},    {1.19, 0.11774229287977166},
                      {1.3581, 0.0499996304316674},  {1.6276, 0.010001537333060776},
                      {2.5, 7.453306344157342e-06},  {4.0, 2.532833109818835e-14}};
  for (const auto& r : refs) {
    CAPTURE(r.t);
    CHECK(kolmogorov_survival(r.t) == doctest::Approx(r.p).epsilon(1e-9));
  }
  CHECK(kolmogorov_survival(0.0) == 1.0);
  CHECK(kolmogorov_survival(-1.0) == 1.0);
  CHECK(kolmogorov_survival(50.0) == 0.0);
}

TEST_CASE("kolmogorov survival is monotone") {
  double prev = 1.0;
  for (double t = 0.01; t < 6.0; t += 0.01) {
    const double p = kolmogorov_survival(t);
    REQUIRE(p <= prev);
    prev = p;
  }
}

// ---------------------------------------------------------------- ESS

TEST_CASE("ess: iid draws") {
  RngStream rng(30, 1);
  const auto x = testing::draws(100000, [&] { return rng.normal(); });
  CHECK(effective_sample_size(x).ess == doctest::Approx(100000).epsilon(0.10));
}

TEST_CASE("ess: AR(1) with coefficient 0.9") {
  RngStream rng(30, 2);
  constexpr std::size_t kN = 200000;
  std::vector<double> x(kN);
  double v = rng.normal() / std::sqrt(1 - 0.81);
  for (auto& e : x) {
    v = 0.9 * v + rng.normal();
    e = v;
  }
  CHECK(effective_sample_size(x).ess == doctest::Approx(kN * 0.1 / 1.9).epsilon(0.25));
}

TEST_CASE("ess: alternating series is capped at N") {
  std::vector<double> x(1000);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = i % 2 ? 1.0 : -1.0;
  CHECK(effective_sample_size(x).ess == 1000.0);
}

TEST_CASE("ess: constant series") {
  const std::vector<double> x(50, 3.0);
  const EssResult r = effective_sample_size(x);
  CHECK(r.constant);
  CHECK(r.ess == 50.0);
}

TEST_CASE("ess: too short") {
  CHECK_THROWS_AS(effective_sample_size(std::vector<double>(9, 1.0)), ParameterError);
}

// ---------------------------------------------------------------- QQ

TEST_CASE("qq: identical samples lie on the diagonal") {
  RngStream rng(31, 1);
  const auto x = testing::draws(1000, [&] { return rng.normal(); });
  for (const auto& p : qq_points(x, x, 99)) CHECK(p.q_x == p.q_y);
}

TEST_CASE("qq: scaling is equivariant") {
  RngStream rng(31, 2);
  const auto x = testing::draws(1000, [&] { return rng.normal(); });
  std::vector<double> y(x);
  for (auto& v : y) v *= 2.0;
  const auto pts = qq_points(x, y, 19);
  CHECK(pts.size() == 19);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    CHECK(pts[k].prob == doctest::Approx((k + 1) / 20.0));
    CHECK(pts[k].q_y == doctest::Approx(2.0 * pts[k].q_x));
  }
}

TEST_CASE("qq: squared uniform sample follows the quantile map q -> q^2") {
  RngStream rng(31, 3);
  const auto x = testing::draws(100000, [&] { return rng.uniform(); });
  std::vector<double> y(x);
  for (auto& v : y) v *= v;
  for (const auto& p : qq_points(x, y, 49)) {
    CHECK(std::abs(p.q_y - p.q_x * p.q_x) < 1e-3);
    CHECK(std::abs(p.q_x - p.prob) < 0.01);
  }
}

TEST_CASE("sorted quantile endpoints and errors") {
  const std::vector<double> s{1.0, 2.0, 4.0};
  CHECK(sorted_quantile(s, 0.0) == 1.0);
  CHECK(sorted_quantile(s, 1.0) == 4.0);
  CHECK(sorted_quantile(s, 0.75) == 3.0);
  CHECK_THROWS_AS(sorted_quantile(std::vector<double>{}, 0.5), ParameterError);
  CHECK_THROWS_AS(qq_points(s, s, 1), ParameterError);
}

// ---------------------------------------------------------------- simulators

TEST_CASE("test functions are named by parameterization") {
  std::vector<std::string> names;
  for (const auto& f : builtin_test_functions(KernelId::Corrected)) names.push_back(f.name);
  CHECK(names == std::vector<std::string>{"phi_1", "tau", "psi_1", "theta_1", "sum_psi"});
  names.clear();
  for (const auto& f : builtin_test_functions(KernelId::Alternative)) names.push_back(f.name);
  CHECK(names ==
        std::vector<std::string>{"lambda_1/sum_lambda", "sum_lambda", "psi_1", "theta_1", "sum_psi"});
}

TEST_CASE("mcs: tau marginal, independence and theta marginal") {
  const PriorConfig cfg(5, 0.5);
  constexpr std::size_t kM = 250000;
  RngStream rng(32, 1);
  std::vector<double> tau, theta;
  tau.reserve(kM);
  theta.reserve(kM);
  run_mcs(cfg, kM, rng, [&](const ThetaVector& t, const ChainState& k) {
    tau.push_back(std::get<HyperState>(k).tau);
    theta.push_back(t[0]);
  });
  REQUIRE(tau.size() == kM);

  std::vector<double> ref(kM);
  for (auto& v : ref) v = sample_gamma(2.5, 0.5, rng);
  CHECK(ks_two_sample(tau, ref).statistic < 0.005);

  const double m = testing::mean(tau), var = testing::variance(tau);
  double lag1 = 0.0;
  for (std::size_t i = 1; i < kM; ++i) lag1 += (tau[i] - m) * (tau[i - 1] - m);
  lag1 /= (kM - 1) * var;
  CHECK(std::abs(lag1) < 4.0 / std::sqrt(static_cast<double>(kM)));

  // theta_1 = sqrt(psi) lambda Z, lambda ~ Gamma(a, 1/2), with the standard library.
  std::mt19937_64 eng(3);
  std::exponential_distribution<double> expo(0.5);
  std::gamma_distribution<double> gam(0.5, 2.0);
  std::normal_distribution<double> norm;
  for (auto& v : ref) v = std::sqrt(expo(eng)) * gam(eng) * norm(eng);
  CHECK(ks_two_sample(theta, ref).statistic < 0.01);
}

TEST_CASE("scs: visits M states and is reproducible") {
  const PriorConfig cfg(3, 0.5);
  std::vector<double> a, b;
  RngStream r1(33, 1), r2(33, 1);
  run_scs(cfg, KernelId::Corrected, 1000, r1,
          [&](const ThetaVector& t, const ChainState&) { a.push_back(t[0]); });
  run_scs(cfg, KernelId::Corrected, 1000, r2,
          [&](const ThetaVector& t, const ChainState&) { b.push_back(t[0]); });
  CHECK(a.size() == 1000);
  CHECK(a == b);
}

// ---------------------------------------------------------------- report

TEST_CASE("report structure and Bonferroni adjustment") {
  const PriorConfig cfg(5, 0.5);
  const auto r = geweke_report(cfg, KernelId::Corrected, 20000, 4);
  CHECK(r.kernel == "corrected");
  CHECK(r.results.size() == 5);
  CHECK(r.m == 20000);
  CHECK(r.thin == 10);
  for (const auto& t : r.results) {
    CHECK(t.p_adj == std::min(1.0, 5.0 * t.p_raw));
    CHECK(t.qq.size() == 99);
    CHECK(t.ess_scs <= 2000.0);
    CHECK(t.ess_mcs <= 20000.0);
  }
  const auto again = geweke_report(cfg, KernelId::Corrected, 20000, 4);
  for (std::size_t i = 0; i < 5; ++i) CHECK(again.results[i].ks == r.results[i].ks);
}

TEST_CASE("report: correct kernels are not rejected at moderate M") {
  const PriorConfig cfg(5, 0.5);
  CHECK_FALSE(geweke_report(cfg, KernelId::Corrected, 50000, 11).rejects());
  CHECK_FALSE(geweke_report(cfg, KernelId::Alternative, 50000, 11).rejects());
}

TEST_CASE("report: a frozen kernel is rejected") {
  // The identity kernel leaves p(kappa | theta) invariant but never moves,
  // so the successive-conditional sample cannot reach the joint law.
  const PriorConfig cfg(5, 0.5);
  const HyperKernel frozen = [](const ChainState& s, const ThetaVector&, RngStream&) { return s; };
  const auto r = geweke_report(
      cfg, "frozen", frozen,
      [&](RngStream& rng) { return prior_draw_state(KernelId::Corrected, cfg, rng); },
      builtin_test_functions(KernelId::Corrected), 20000, 1);
  CHECK(r.rejects());
}

TEST_CASE("report: a slightly biased kernel is rejected") {
  const PriorConfig cfg(5, 0.5);
  const HyperKernel inner = make_kernel(KernelId::Corrected, cfg);
  const HyperKernel biased = [&](const ChainState& s, const ThetaVector& t, RngStream& rng) {
    ChainState out = inner(s, t, rng);
    std::get<HyperState>(out).tau *= 1.1;
    return out;
  };
  const auto r = geweke_report(
      cfg, "biased", biased,
      [&](RngStream& rng) { return prior_draw_state(KernelId::Corrected, cfg, rng); },
      builtin_test_functions(KernelId::Corrected), 100000, 1);
  CHECK(r.rejects());
}

TEST_CASE("report: invalid options") {
  const PriorConfig cfg(5, 0.5);
  GewekeOptions opt;
  opt.thin = 0;
  CHECK_THROWS_AS(geweke_report(cfg, KernelId::Corrected, 100, 1, opt), ParameterError);
  CHECK_THROWS_AS(geweke_report(cfg, KernelId::Corrected, 0, 1), ParameterError);
}
