#include <doctest.h>

#include <cmath>
#include <variant>
#include <vector>

#include "dlgibbs/errors.hpp"
#include "dlgibbs/geweke.hpp"
#include "dlgibbs/kernels.hpp"
#include "test_util.hpp"

using namespace dlgibbs;

namespace {

const PriorConfig kCfg(4, 0.5);
const ThetaVector kTheta{{0.7, -2.0, 0.05, 1.1}};

HyperState some_state() {
  return HyperState{{1.5, 0.3, 2.0, 0.9}, {0.1, 0.2, 0.3, 0.4}, 3.0};
}

std::vector<double> times(std::vector<double> v, double c) {
  for (auto& x : v) x *= c;
  return v;
}

}  // namespace

TEST_CASE("kernel names round-trip") {
  for (auto id : {KernelId::Original, KernelId::Corrected, KernelId::Alternative}) {
    CHECK(parse_kernel(kernel_name(id)) == id);
  }
  CHECK(kernel_name(KernelId::Corrected) == "corrected");
  CHECK_FALSE(parse_kernel("gibbs").has_value());
}

TEST_CASE("block orders must be permutations") {
  RngStream rng(20, 1);
  const std::vector<BlockUpdate> dup{BlockUpdate::Psi, BlockUpdate::Psi, BlockUpdate::Phi};
  const std::vector<BlockUpdate> short_order{BlockUpdate::Psi, BlockUpdate::Tau};
  CHECK_THROWS_AS(kernel_step_ordered(some_state(), kTheta, kCfg, dup, rng), ParameterError);
  CHECK_THROWS_AS(kernel_step_ordered(some_state(), kTheta, kCfg, short_order, rng),
                  ParameterError);
  CHECK_THROWS_AS(make_ordered_kernel(dup, kCfg), ParameterError);
}

TEST_CASE("original kernel dataflow: psi and tau see only the incoming state") {
  const HyperState in = some_state();
  RngStream rng(20, 2);
  RngStream replay = rng;
  const HyperState out = kernel_step_original(in, kTheta, kCfg, rng);

  const auto psi = update_psi(kTheta, in.scales(), replay);
  const double tau = update_tau(kTheta, in.phi, kCfg, replay);
  const auto phi = update_phi(kTheta, kCfg, replay).phi;
  CHECK(out.psi == psi);
  CHECK(out.tau == tau);
  CHECK(out.phi == phi);
  CHECK(replay.next_u64() == rng.next_u64());
}

TEST_CASE("original kernel dataflow: psi ignores the phi drawn in the same step") {
  // Two incoming states that differ only in stored psi produce the same
  // (psi, tau, phi): the kernel never reads psi, and psi never reads the
  // fresh phi.
  HyperState a = some_state(), b = some_state();
  b.psi = {9.0, 9.0, 9.0, 9.0};
  RngStream r1(20, 3), r2(20, 3);
  const HyperState oa = kernel_step_original(a, kTheta, kCfg, r1);
  const HyperState ob = kernel_step_original(b, kTheta, kCfg, r2);
  CHECK(oa.psi == ob.psi);
  CHECK(oa.phi == ob.phi);
}

TEST_CASE("corrected kernel dataflow: tau uses the new phi, psi uses both") {
  const HyperState in = some_state();
  RngStream rng(20, 4);
  RngStream replay = rng;
  const HyperState out = kernel_step_corrected(in, kTheta, kCfg, rng);

  const auto phi = update_phi(kTheta, kCfg, replay).phi;
  const double tau = update_tau(kTheta, phi, kCfg, replay);
  const auto psi = update_psi(kTheta, times(phi, tau), replay);
  CHECK(out.phi == phi);
  CHECK(out.tau == tau);
  CHECK(out.psi == psi);
}

TEST_CASE("corrected kernel output does not depend on the incoming state") {
  HyperState a = some_state(), b = some_state();
  b.phi = {0.25, 0.25, 0.25, 0.25};
  b.tau = 0.01;
  RngStream r1(20, 5), r2(20, 5);
  const HyperState oa = kernel_step_corrected(a, kTheta, kCfg, r1);
  const HyperState ob = kernel_step_corrected(b, kTheta, kCfg, r2);
  CHECK(oa.phi == ob.phi);
  CHECK(oa.tau == ob.tau);
  CHECK(oa.psi == ob.psi);
}

TEST_CASE("alternative kernel dataflow") {
  const AltHyperState in{{1.0, 1.0, 1.0, 1.0}, {0.5, 0.5, 0.5, 0.5}};
  RngStream rng(20, 6);
  RngStream replay = rng;
  const AltHyperState out = kernel_step_alternative(in, kTheta, kCfg, rng);
  const auto lambda = update_lambda(kTheta, kCfg, replay);
  CHECK(out.lambda == lambda);
  CHECK(out.psi == update_psi(kTheta, lambda, replay));
}

TEST_CASE("ordered steps reproduce the named kernels") {
  const HyperState in = some_state();
  RngStream a(20, 7), b(20, 7), c(20, 8), d(20, 8);
  const auto o1 = kernel_step_original(in, kTheta, kCfg, a);
  const auto o2 = kernel_step_ordered(in, kTheta, kCfg, kOriginalOrder, b);
  CHECK(o1.psi == o2.psi);
  CHECK(o1.phi == o2.phi);
  CHECK(o1.tau == o2.tau);
  const auto c1 = kernel_step_corrected(in, kTheta, kCfg, c);
  const auto c2 = kernel_step_ordered(in, kTheta, kCfg, kCorrectedOrder, d);
  CHECK(c1.psi == c2.psi);
  CHECK(c1.phi == c2.phi);
  CHECK(c1.tau == c2.tau);
}

TEST_CASE("type-erased kernels keep the parameterization") {
  RngStream rng(20, 9);
  for (auto id : {KernelId::Original, KernelId::Corrected, KernelId::Alternative}) {
    const auto kernel = make_kernel(id, kCfg);
    const ChainState s0 = prior_draw_state(id, kCfg, rng);
    const ChainState s1 = kernel(s0, kTheta, rng);
    CHECK(s0.index() == s1.index());
    CHECK(std::holds_alternative<AltHyperState>(s1) == (id == KernelId::Alternative));
  }
}

TEST_CASE("alternative kernel: equal |theta| gives exchangeable lambda") {
  RngStream rng(20, 10);
  const ThetaVector theta{{1.0, -1.0, 1.0, -1.0}};
  AltHyperState s{{1, 1, 1, 1}, {1, 1, 1, 1}};
  std::vector<std::vector<double>> cols(4, std::vector<double>(50000));
  for (std::size_t i = 0; i < 50000; ++i) {
    s = kernel_step_alternative(s, theta, kCfg, rng);
    for (std::size_t j = 0; j < 4; ++j) cols[j][i] = s.lambda[j];
  }
  const double m0 = testing::mean(cols[0]);
  for (const auto& c : cols) CHECK(std::abs(testing::mean(c) - m0) < 6.0 * testing::std_error(c));
}

TEST_CASE("corrected kernel leaves the prior invariant (n = 2)") {
  // Alternating theta | kappa and kappa | theta must keep tau ~ Gamma(na, 1/2):
  // mean 2, variance 4 for n = 2, a = 1/2.
  const PriorConfig cfg(2, 0.5);
  RngStream rng(20, 11);
  HyperState s = prior_draw_hyper(cfg, rng);
  constexpr std::size_t kM = 100000;
  std::vector<double> tau(kM), tau2(kM);
  for (std::size_t i = 0; i < kM; ++i) {
    const ThetaVector theta = prior_draw_theta(s, rng);
    s = kernel_step_corrected(s, theta, cfg, rng);
    tau[i] = s.tau;
    tau2[i] = s.tau * s.tau;
  }
  const double se = std::sqrt(testing::variance(tau) / effective_sample_size(tau).ess);
  CHECK(std::abs(testing::mean(tau) - 2.0) < 3.0 * se);
  const double se2 = std::sqrt(testing::variance(tau2) / effective_sample_size(tau2).ess);
  CHECK(std::abs(testing::mean(tau2) - 8.0) < 3.0 * se2);
}

// ---------------------------------------------------------------- chains

TEST_CASE("chain config validation") {
  ChainConfig c;
  c.iterations = 10;
  c.burn_in = 10;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c.burn_in = 2;
  c.thin = 0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c.thin = 3;
  CHECK_NOTHROW(c.validate());
  CHECK(c.retained_rows() == 2);
}

TEST_CASE("sample matrix layout") {
  CHECK(sample_column_names(KernelId::Corrected, 2) ==
        std::vector<std::string>{"theta_1", "theta_2", "psi_1", "psi_2", "phi_1", "phi_2", "tau"});
  CHECK(sample_column_names(KernelId::Alternative, 1) ==
        std::vector<std::string>{"theta_1", "psi_1", "lambda_1"});
  SampleMatrix m({"a", "b"}, ChainConfig{}, 0);
  CHECK_THROWS_AS(m.append_row(std::vector<double>{1.0}), ParameterError);
  m.append_row(std::vector<double>{1.0, 2.0});
  CHECK(m.rows() == 1);
  CHECK(m.column(1) == std::vector<double>{2.0});
}

TEST_CASE("posterior chain: retained rows, determinism and seed sensitivity") {
  ChainConfig c;
  c.iterations = 300;
  c.burn_in = 100;
  c.thin = 7;
  c.prior = PriorConfig(3, 0.5);
  const std::vector<double> y{1.0, -2.0, 0.5};
  for (auto id : {KernelId::Original, KernelId::Corrected, KernelId::Alternative}) {
    c.kernel = id;
    c.seed = 5;
    const auto a = run_posterior_chain(y, c);
    const auto b = run_posterior_chain(y, c);
    CHECK(a.rows() == 28);
    CHECK(a == b);
    c.seed = 6;
    CHECK_FALSE(a == run_posterior_chain(y, c));
  }
}

TEST_CASE("posterior chain: data length must match the prior") {
  ChainConfig c;
  c.prior = PriorConfig(3, 0.5);
  CHECK_THROWS_AS(run_posterior_chain(std::vector<double>{1.0}, c), ParameterError);
}

TEST_CASE("posterior chain: zero data gives a symmetric posterior") {
  ChainConfig c;
  c.iterations = 11000;
  c.burn_in = 1000;
  c.prior = PriorConfig(5, 0.5);
  const std::vector<double> y(5, 0.0);
  for (auto id : {KernelId::Corrected, KernelId::Alternative}) {
    c.kernel = id;
    const auto s = run_posterior_chain(y, c);
    for (std::size_t j = 0; j < 5; ++j) {
      const auto col = s.column(j);
      const double se = std::sqrt(testing::variance(col) / effective_sample_size(col).ess);
      CHECK(std::abs(testing::mean(col)) < 4.0 * se);
    }
  }
}

TEST_CASE("posterior chain: a strong signal is barely shrunk") {
  ChainConfig c;
  c.iterations = 20000;
  c.burn_in = 2000;
  c.prior = PriorConfig(5, 0.5);
  const std::vector<double> y{50.0, 0.0, 0.0, 0.0, 0.0};
  for (auto id : {KernelId::Corrected, KernelId::Alternative}) {
    c.kernel = id;
    const double m = testing::mean(run_posterior_chain(y, c).column(0));
    CHECK(m >= 45.0);
    CHECK(m <= 50.0);
  }
}
