#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "rigidity/analytics.hpp"

#include <cmath>
#include <stdexcept>

using namespace rigidity::analytics;

TEST_CASE("poisson tail basics and recurrence") {
  CHECK(psi(0, 0.0) == 1.0);
  CHECK(psi(0, 7.3) == 1.0);
  CHECK(psi(4, 0.0) == 0.0);
  CHECK(psi(2, 1.0) == doctest::Approx(0.26424111765711536).epsilon(1e-14));
  CHECK_THROWS_AS(psi(1, -0.5), std::domain_error);

  for (double mu : {0.1, 1.0, 2.688, 10.0, 50.0}) {
    for (std::uint32_t j = 0; j < 40; ++j) {
      double lhs = psi(j + 1, mu);
      double rhs = psi(j, mu) - poisson_pmf(j, mu);
      CHECK(std::fabs(lhs - rhs) < 1e-14 * std::max(1.0, std::fabs(rhs) * 10));
      CHECK(psi(j + 1, mu) <= psi(j, mu));
    }
  }
}

TEST_CASE("3-core threshold and argmin") {
  auto l3 = lambda_k(3);
  CHECK(l3.lambda == doctest::Approx(3.35091887151).epsilon(1e-9));
  CHECK(l3.mu_argmin == doctest::Approx(1.7932821329).epsilon(1e-6));

  double prev = l3.lambda;
  for (std::uint32_t k = 4; k <= 6; ++k) {
    double cur = lambda_k(k).lambda;
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("largest root mu_k and core fractions") {
  CHECK_THROWS_AS(mu_k(3, 3.35), std::domain_error);
  CHECK_THROWS_AS(mu_k(3, lambda_k(3).lambda), std::domain_error);

  CHECK(mu_k(3, 3.5) == doctest::Approx(2.480027506).epsilon(1e-8));
  CHECK(mu_k(3, 3.7) == doctest::Approx(2.914584661).epsilon(1e-8));
  CHECK(mu_k(3, 3.8) == doctest::Approx(3.096016736).epsilon(1e-8));
  CHECK(mu_k(3, 3.6) < mu_k(3, 3.7)); // monotone in lambda

  double just_above = lambda_k(3).lambda + 1e-6;
  CHECK(core_fraction(3, just_above) == doctest::Approx(0.26800).epsilon(2e-4));
  CHECK(core_fraction(3, 3.5) == doctest::Approx(0.4510534911).epsilon(1e-8));
  CHECK(core_fraction(3, 3.7) == doctest::Approx(0.5574036392).epsilon(1e-8));
}

TEST_CASE("average-degree threshold c2") {
  CHECK(core3_avg_degree(3.5) == doctest::Approx(3.895981646).epsilon(1e-8));
  CHECK(core3_avg_degree(3.7) == doctest::Approx(4.11890548).epsilon(1e-8));
  CHECK(core3_avg_degree(3.5) < 4.0);
  CHECK(core3_avg_degree(3.7) > 4.0);

  double c2 = c2_solve();
  CHECK(c2 == doctest::Approx(3.58804747297).epsilon(1e-9));
  CHECK(core3_avg_degree(c2) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("(3+2)-core fixed point") {
  auto fp = q_32core(3.58804);
  CHECK(fp.q == doctest::Approx(0.749150809626).epsilon(1e-9));
  CHECK(fp.tau == doctest::Approx(2.68798307097).epsilon(1e-9));

  auto at_c2 = q_32core(c2_solve());
  CHECK(at_c2.tau == doctest::Approx(2.6879993455).epsilon(1e-8));

  CHECK(q_32core(3.8).q == doctest::Approx(0.8147412462).epsilon(1e-8));
  CHECK_THROWS_AS(q_32core(3.3), std::domain_error);

  // fixed-point identity 1 - e^{-tau}(1+tau) = q, and monotone growth in c
  double prev_q = 0.0;
  for (double c = 3.6; c <= 6.0 + 1e-9; c += 0.1) {
    auto [q, tau] = q_32core(c);
    CHECK(std::fabs(1.0 - std::exp(-tau) * (1.0 + tau) - q) < 1e-9);
    CHECK(q > prev_q);
    prev_q = q;
  }
}

TEST_CASE("branching ratio at s=0 and its critical tau") {
  CHECK(lambda0(2.688) == doctest::Approx(0.6560001126).epsilon(1e-9));
  CHECK(lambda0(2.688) < 1.0);
  CHECK(tau_star() == doctest::Approx(1.7932821329).epsilon(2e-9));
  CHECK(std::fabs(tau_star() - lambda_k(3).mu_argmin) < 1e-6);
  CHECK(lambda0(30.0) < 1e-9);

  // subcritical everywhere above c2
  for (double c = c2_solve() + 1e-3; c <= 10.0; c += 0.25)
    CHECK(lambda0(q_32core(c).tau) < 1.0);
}

TEST_CASE("phase-3 closed forms") {
  CHECK(a3_limit(2.65) > 0.0);
  CHECK(a3_limit(2.688) < 0.0);
  CHECK_THROWS_AS(phase3_curve(2.65), std::domain_error);
  // at the average-degree threshold the a3 limit vanishes
  CHECK(std::fabs(a3_limit(q_32core(c2_solve()).tau)) < 1e-9);

  auto expected_sstar = [](double tau) {
    if (tau == 2.688) return 3.13481313898;
    if (tau == 3.0) return 0.342367201662;
    return 0.165268178165; // tau = 3.5
  };
  for (double tau : {2.688, 3.0, 3.5}) {
    auto curve = phase3_curve(tau);
    CHECK(curve.a3(0.0) == doctest::Approx(std::exp(-tau) * tau * tau * tau / 6.0).epsilon(1e-13));
    CHECK(curve.lambda(0.0) == doctest::Approx(lambda0(tau)).epsilon(1e-12));
    CHECK(curve.delta(1.0) == doctest::Approx(tau * std::exp(-1.0)).epsilon(1e-15));
    CHECK(curve.s_star == doctest::Approx(expected_sstar(tau)).epsilon(1e-6));
    CHECK(std::fabs(curve.a3(curve.s_star)) < 1e-12);

    // da3/ds == -mu_ge5 (finite differences)
    for (double s : {0.1, 0.5 * curve.s_star, 0.9 * curve.s_star}) {
      double h = 1e-5;
      double fd = (curve.a3(s + h) - curve.a3(s - h)) / (2 * h);
      CHECK(std::fabs(fd + curve.mu_ge5(s)) < 1e-8);
    }

    // lambda strictly decreasing over (0, s*)
    double prev = curve.lambda(0.0);
    for (int i = 1; i <= 1000; ++i) {
      double lam = curve.lambda(curve.s_star * i / 1000.0);
      CHECK(lam < prev);
      prev = lam;
    }
  }

  CHECK(phase3_curve(2.688).lambda(0.5 * 3.13481313898) == doctest::Approx(0.1617).epsilon(3e-3));
  CHECK(phase3_curve(3.0).lambda(0.5 * 0.342367201662) == doctest::Approx(0.3483).epsilon(3e-3));
  CHECK(phase3_curve(3.5).lambda(0.5 * 0.165268178165) == doctest::Approx(0.2493).epsilon(3e-3));
}

TEST_CASE("closed forms match the truncated system integration") {
  CHECK_THROWS_AS(ode_oracle(30.0, 40, 1e-3, 1.0), std::domain_error);   // tail too heavy
  CHECK_THROWS_AS(ode_oracle(2.688, 30, 1e-3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ode_oracle(2.688, 60, 1e-2, 1.0), std::invalid_argument);

  for (double tau : {2.688, 3.0, 3.5}) {
    auto curve = phase3_curve(tau);
    auto ode = ode_oracle(tau, 60, 1e-3, curve.s_star);
    double max_a3 = 0, max_delta = 0, max_mu = 0;
    double prev_lambda = 2.0;
    bool lambda_decreasing = true;
    for (std::size_t i = 0; i < ode.s.size(); ++i) {
      double s = ode.s[i];
      max_a3 = std::max(max_a3, std::fabs(ode.a3[i] - curve.a3(s)));
      max_mu = std::max(max_mu, std::fabs(ode.mu[i] - curve.mu(s)));
      max_delta = std::max(max_delta, std::fabs(ode.delta_rec[i] - curve.delta(s)));
      if (ode.lambda[i] >= prev_lambda) lambda_decreasing = false;
      prev_lambda = ode.lambda[i];
    }
    CHECK(max_a3 < 1e-8);
    CHECK(max_mu < 1e-8);
    CHECK(max_delta < 1e-8);
    CHECK(lambda_decreasing);
    CHECK(ode.a3[0] == doctest::Approx(std::exp(-tau) * tau * tau * tau / 6.0).epsilon(1e-13));
  }
}

TEST_CASE("chi-square survival function") {
  CHECK(chi_square_sf(0.0, 5) == 1.0);
  // dof = 2 has the exact form e^{-x/2}
  for (double x : {0.5, 2.0, 4.605, 9.21})
    CHECK(chi_square_sf(x, 2) == doctest::Approx(std::exp(-0.5 * x)).epsilon(1e-12));
  CHECK(chi_square_sf(3.841, 1) == doctest::Approx(0.05004).epsilon(2e-3));
  CHECK(chi_square_sf(18.307, 10) == doctest::Approx(0.05003).epsilon(2e-3));
  CHECK(chi_square_sf(29.588, 10) == doctest::Approx(0.001).epsilon(5e-3));
  double prev = 1.0;
  for (double x = 0.5; x < 30; x += 0.5) {
    double sf = chi_square_sf(x, 7);
    CHECK(sf < prev);
    prev = sf;
  }
  CHECK_THROWS_AS(chi_square_sf(1.0, 0), std::domain_error);
}
