#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dephasim/bath.hpp"
#include "dephasim/errors.hpp"
#include "dephasim/numerics.hpp"
#include "dephasim/oracle.hpp"

using namespace dephasim;
using oracle::DiscreteBath;

namespace {

bath::SpectralParams make_bath(double G, double s, double wc) {
  bath::SpectralParams p;
  p.coupling = G;
  p.ohmicity = s;
  p.cutoff = wc;
  return p;
}

DiscreteBath single_mode(double omega, double g, int d) {
  DiscreteBath b;
  b.modes.push_back({omega, {g, 0.0}});
  b.fock_dims = {d};
  return b;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("discretize: midpoint frequencies and couplings") {
  const auto b = oracle::discretize(make_bath(1, 1, 1), 4, 2.0);
  REQUIRE(b.modes.size() == 4);
  CHECK(b.modes[0].omega == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(b.modes[3].omega == doctest::Approx(1.75).epsilon(1e-15));
  for (const auto& mode : b.modes) {
    const double expected =
        bath::spectral_density(make_bath(1, 1, 1), mode.omega) * 0.5 / 4.0;
    CHECK(std::norm(mode.coupling) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(mode.coupling.imag() == 0.0);
    CHECK(mode.coupling.real() >= 0.0);
  }
  b.validate();

  const auto empty = oracle::discretize(make_bath(0, 1, 1), 3, 2.0);
  for (const auto& mode : empty.modes) {
    CHECK(std::abs(mode.coupling) == 0.0);
  }
}

TEST_CASE("discretize rejects finite temperature and bad arguments") {
  auto p = make_bath(1, 1, 1);
  p.inverse_temperature = 2.0;
  CHECK_THROWS_AS(oracle::discretize(p, 4, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(oracle::discretize(make_bath(1, 1, 1), 0, 2.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(oracle::discretize(make_bath(1, 1, 1), 4, -1.0),
                  std::invalid_argument);
}

TEST_CASE("discrete bath validation") {
  auto b = single_mode(1.0, 0.5, 8);
  CHECK_NOTHROW(b.validate());
  b.fock_dims[0] = 1;
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);
  b.fock_dims[0] = 8;
  b.modes.push_back({1.0, {0.1, 0.0}});
  b.fock_dims.push_back(4);
  CHECK_THROWS_AS(b.validate(), std::invalid_argument);  // repeated omega
}

TEST_CASE("discrete kernels: single mode at t = pi") {
  const auto b = single_mode(1.0, 0.5, 8);  // |g|^2 = 1/4
  const auto [gamma0, delta0] = oracle::discrete_kernels(b, 0.0);
  CHECK(gamma0 == 0.0);
  CHECK(delta0 == 0.0);
  const auto [gamma, delta] = oracle::discrete_kernels(b, std::numbers::pi);
  CHECK(gamma == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(delta == doctest::Approx(-std::numbers::pi).epsilon(1e-14));
}

TEST_CASE("discretized kernels converge to the continuum kernels") {
  const auto p = make_bath(1, 1, 1);
  // spec point: K = 400 over [0, 20] reproduces Gamma(1) to 1e-3
  const auto b400 = oracle::discretize(p, 400, 20.0);
  const auto [g400, d400] = oracle::discrete_kernels(b400, 1.0);
  CHECK(std::abs(g400 - 0.34657359027997265) < 1e-3);
  CHECK(std::abs(d400 - bath::delta_exact(p, 1.0)) < 1e-3);

  // midpoint rule: empirical order ~ 1/K^2
  const double exact = bath::gamma_exact(p, 1.0);
  double err[3];
  const int counts[3] = {50, 100, 200};
  for (int i = 0; i < 3; ++i) {
    const auto b = oracle::discretize(p, counts[i], 20.0);
    err[i] = std::abs(oracle::discrete_kernels(b, 1.0).first - exact);
  }
  CHECK(err[1] < err[0]);
  CHECK(err[2] < err[1]);
  const double order01 = std::log2(err[0] / err[1]);
  const double order12 = std::log2(err[1] / err[2]);
  CHECK(order01 > 1.5);
  CHECK(order01 < 2.5);
  CHECK(order12 > 1.5);
  CHECK(order12 < 2.5);
}

TEST_CASE("fock dimension assignment follows the Poisson tail rule") {
  auto b = single_mode(1.0, 0.5, 2);
  oracle::assign_fock_dims(b, 1, 1e-12);
  // lambda = (2*1*0.5/1)^2 = 1
  CHECK(num::poisson_tail(b.fock_dims[0], 1.0) < 1e-12);
  CHECK(num::poisson_tail(b.fock_dims[0] - 1, 1.0) >= 1e-12);
  CHECK(oracle::truncation_leakage_bound(b, 1) < 1e-12);
  // more qubits displace further and need more levels
  auto b3 = single_mode(1.0, 0.5, 2);
  oracle::assign_fock_dims(b3, 3, 1e-12);
  CHECK(b3.fock_dims[0] > b.fock_dims[0]);
}

TEST_CASE("exact evolution: single mode against the discrete kernels") {
  const auto b = single_mode(1.0, 0.5, 24);
  const auto t = std::numbers::pi;
  const auto res = oracle::exact_reduced_state(1, b, t, 1);
  CHECK(res.norm_error < 1e-10);
  CHECK(res.truncation_leakage < 1e-12);
  // Gamma_K(pi) = 2: |off-diagonal| = e^{-2}/2
  CHECK(std::abs(res.reduced(0, 1)) ==
        doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-8));
  // pure dephasing: populations stay 1/2
  CHECK(std::abs(res.reduced(0, 0).real() - 0.5) < 1e-10);
  CHECK(std::abs(res.reduced(1, 1).real() - 0.5) < 1e-10);
  // hermiticity of the reduced state
  CHECK(std::abs(res.reduced(0, 1) - std::conj(res.reduced(1, 0))) < 1e-15);

  // starting from all-|->: off-diagonal flips sign
  const auto res_minus = oracle::exact_reduced_state(1, b, t, -1);
  CHECK(std::abs(res.reduced(0, 1) + res_minus.reduced(0, 1)) < 1e-9);

  // t = 0 returns the initial projector exactly
  const auto res0 = oracle::exact_reduced_state(1, b, 0.0, 1);
  CHECK(std::abs(res0.reduced(0, 1) - 0.5) < 1e-13);
  CHECK(res0.norm_error < 1e-13);
}

TEST_CASE("exact evolution: two qubits, two modes") {
  auto b = oracle::discretize(make_bath(0.5, 1, 1), 2, 4.0);
  oracle::assign_fock_dims(b, 2, 1e-12);
  const double t = 2.0;
  const auto res = oracle::exact_reduced_state(2, b, t, 1);
  const auto [gamma_k, delta_k] = oracle::discrete_kernels(b, t);
  const double expected = 0.5 * std::exp(-gamma_k) * std::abs(std::cos(delta_k));
  CHECK(std::abs(res.reduced(0, 1)) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(res.norm_error < 1e-10);
  CHECK(std::abs(res.reduced(0, 0).real() - 0.5) < 1e-10);
}

TEST_CASE("doubling the truncation moves the answer less than the bound") {
  const auto t = 1.7;
  const auto coarse = single_mode(1.0, 0.5, 6);
  oracle::ExactOptions opts;
  opts.max_leakage = 1e-2;
  const auto res_coarse = oracle::exact_reduced_state(1, coarse, t, 1, opts);
  const auto fine = single_mode(1.0, 0.5, 12);
  const auto res_fine = oracle::exact_reduced_state(1, fine, t, 1, opts);
  CHECK(std::abs(std::abs(res_coarse.reduced(0, 1)) -
                 std::abs(res_fine.reduced(0, 1))) <
        res_coarse.truncation_leakage);
}

TEST_CASE("splitting changes the phase but not the magnitude") {
  const auto b = single_mode(1.0, 0.5, 16);
  oracle::ExactOptions still;
  oracle::ExactOptions rotating;
  rotating.splitting = 1.3;
  const auto a = oracle::exact_reduced_state(1, b, 2.0, 1, still);
  const auto c = oracle::exact_reduced_state(1, b, 2.0, 1, rotating);
  CHECK(std::abs(std::abs(a.reduced(0, 1)) - std::abs(c.reduced(0, 1))) <
        1e-10);
  CHECK(std::abs(a.reduced(0, 1) - c.reduced(0, 1)) > 1e-3);
}

TEST_CASE("dimension guard and truncation guard") {
  DiscreteBath big;
  big.modes.push_back({1.0, {0.1, 0.0}});
  big.modes.push_back({2.0, {0.1, 0.0}});
  big.fock_dims = {128, 129};
  CHECK_THROWS_AS(oracle::exact_reduced_state(1, big, 1.0, 1),
                  std::invalid_argument);

  const auto tight = single_mode(1.0, 2.0, 4);  // lambda = 16 >> d
  CHECK_THROWS_AS(oracle::exact_reduced_state(1, tight, 1.0, 1),
                  NumericalError);
  CHECK_THROWS_AS(oracle::exact_reduced_state(1, single_mode(1, 0.5, 8), 1.0, 2),
                  std::invalid_argument);
}

TEST_CASE("variant arbitration at N = 1 and N = 2") {
  const auto b1 = single_mode(1.0, 0.5, 20);
  const auto rep1 = oracle::arbitrate_variants(1, b1, {0.5, 2.0});
  for (const auto& row : rep1.rows) {
    CHECK(row.eta_paper == doctest::Approx(std::exp(-row.gamma_discrete))
                               .epsilon(1e-12));
    CHECK(row.eta_pairwise == row.eta_paper);
    CHECK(row.dev_paper < 1e-8);
  }

  auto b2 = oracle::discretize(make_bath(0.5, 1, 1), 2, 4.0);
  oracle::assign_fock_dims(b2, 2, 1e-12);
  const auto rep2 = oracle::arbitrate_variants(2, b2, {1.5});
  REQUIRE(rep2.rows.size() == 1);
  CHECK(std::abs(rep2.rows[0].eta_paper - rep2.rows[0].eta_pairwise) < 1e-12);
  CHECK(rep2.rows[0].dev_paper < 1e-6);
  CHECK(rep2.rows[0].dev_pairwise < 1e-6);
}

TEST_CASE("variant arbitration at N = 3 is reported, not asserted") {
  // one mode keeps the space tiny; the report decides nothing by itself
  const auto b = single_mode(1.0, 0.25, 14);
  oracle::ExactOptions opts;
  opts.max_leakage = 1e-5;
  const auto report = oracle::arbitrate_variants(3, b, {1.0, 2.5}, opts);
  REQUIRE(report.rows.size() == 2);
  for (const auto& row : report.rows) {
    CHECK(row.eta_exact >= 0.0);
    CHECK(row.eta_exact <= 1.0 + 1e-12);
    MESSAGE("N=3 t=", row.t, ": eta_exact=", row.eta_exact,
            " dev_paper=", row.dev_paper,
            " dev_pairwise=", row.dev_pairwise);
  }
  CHECK_THROWS_AS(oracle::arbitrate_variants(4, b, {1.0}),
                  std::invalid_argument);
}

}  // TEST_SUITE
