#include "doctest.h"

#include <cmath>
#include <random>

#include "dissipacert/lmi.hpp"
#include "dissipacert/rate_bounds.hpp"

using namespace dissipacert;

TEST_CASE("option one rate spot value") {
  FunctionClass fc(0.1, 1.0, ComponentAssumption::SmoothConvex);
  RateReport r = svrg_i_rate(fc, 0.01, 100);
  // high-precision reference evaluated in long double
  const long double rho2 = 1.0L - 2.0L * 0.01L * 0.1L * (1.0L - 0.01L);
  const long double ref = powl(rho2, 100) + 0.01L / (0.1L * 0.99L);
  CHECK(std::abs(r.nu - static_cast<double>(ref)) <= 1e-12);
  CHECK(r.nu == doctest::Approx(0.9212).epsilon(1e-4));
  CHECK(r.residual_terms.at("residual") ==
        doctest::Approx(0.10101010101010101).epsilon(1e-12));
  CHECK(r.gradient_evals_per_epoch == 200);
  CHECK_THROWS_AS(svrg_i_rate(fc, 1.0, 100), std::invalid_argument);
  CHECK_THROWS_AS(svrg_i_rate(fc, -0.1, 100), std::invalid_argument);
}

TEST_CASE("smooth-only rate spot value") {
  FunctionClass fc(0.5, 1.0, ComponentAssumption::SmoothOnly);
  RateReport r = svrg_i_rate_smooth_only(fc, 0.1, 50);
  const long double ref = powl(0.92L, 50) + 0.1L / 0.4L;
  CHECK(std::abs(r.nu - static_cast<double>(ref)) <= 1e-12);
  CHECK(r.nu == doctest::Approx(0.2655).epsilon(1e-3));
  CHECK_THROWS_AS(svrg_i_rate_smooth_only(fc, 0.5, 50), std::invalid_argument);
}

TEST_CASE("option two rate spot value and degenerate multiplier") {
  FunctionClass fc(0.05, 1.0, ComponentAssumption::SmoothConvex);
  RateReport r = svrg_ii_rate(fc, 0.1, 400);
  CHECK(std::abs(r.nu - 0.875) <= 1e-12);
  CHECK(r.residual_terms.at("initial") == doctest::Approx(0.625).epsilon(1e-12));
  CHECK(r.residual_terms.at("residual") == doctest::Approx(0.25).epsilon(1e-12));
  // the general form with the standard multipliers matches the closed form
  RateReport g = svrg_ii_rate(fc, 0.1, 400, 0.02, 0.02, 0.1);
  CHECK(std::abs(g.nu - r.nu) <= 1e-15);
  const double eta = 0.1;
  CHECK_THROWS_AS(svrg_ii_rate(fc, eta, 400, eta, 0.02, eta),  // lambda3 = L*lambda1
                  std::invalid_argument);
}

TEST_CASE("epochs to target accuracy") {
  FunctionClass fc(0.1, 1.0, ComponentAssumption::SmoothConvex);
  RateReport r = svrg_i_rate(fc, 0.01, 100);
  long long k = r.epochs_to_eps(1e-6);
  CHECK(k == static_cast<long long>(
                 std::ceil(std::log(1e6) / std::log(1.0 / r.nu))));
  CHECK(std::pow(r.nu, static_cast<double>(k)) <= 1e-6);
  CHECK_THROWS_AS(r.epochs_to_eps(0.0), std::invalid_argument);
  RateReport big = svrg_i_rate(fc, 0.5, 1);
  CHECK(big.nu >= 1.0);
  CHECK(big.epochs_to_eps(0.5) == -1);
}

TEST_CASE("closed forms agree with the certificate reconstruction") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int t = 0; t < 100; ++t) {
    const double sigma = 0.01 + unit(rng);
    const double L = sigma * (1.0 + 9.0 * unit(rng));
    const int m = 1 + static_cast<int>(400 * unit(rng));
    {
      const double eta = 0.9 * unit(rng) / L;
      if (eta <= 0.0) continue;
      FunctionClass fc(sigma, L, ComponentAssumption::SmoothConvex);
      LmiInstance inst = svrg_i_paper_instance(fc, eta);
      const double nu_cert = std::pow(inst.rho_sq, m) +
                             inst.lambdas[0] * L * L / (1.0 - inst.rho_sq);
      RateReport r = svrg_i_rate(fc, eta, m);
      CHECK(std::abs(nu_cert - r.nu) <= 1e-12 * std::max(1.0, std::abs(r.nu)));
    }
    {
      const double eta = 0.9 * sigma * unit(rng) / (L * L);
      if (eta <= 0.0) continue;
      FunctionClass fc(sigma, L, ComponentAssumption::SmoothOnly);
      LmiInstance inst = svrg_i_paper_instance(fc, eta);
      const double nu_cert = std::pow(inst.rho_sq, m) +
                             inst.lambdas[0] * L * L / (1.0 - inst.rho_sq);
      RateReport r = svrg_i_rate_smooth_only(fc, eta, m);
      CHECK(std::abs(nu_cert - r.nu) <= 1e-12 * std::max(1.0, std::abs(r.nu)));
    }
    {
      const double eta = 0.4 * unit(rng) / L;
      if (eta <= 0.0) continue;
      FunctionClass fc(sigma, L, ComponentAssumption::SmoothConvex);
      LmiInstance inst = svrg_ii_paper_instance(fc, eta);
      RateReport general = svrg_ii_rate(fc, eta, m, inst.lambdas[0],
                                        inst.lambdas[1], inst.lambdas[2]);
      const double closed = 1.0 / (m * sigma * eta * (1.0 - 2.0 * L * eta)) +
                            2.0 * L * eta / (1.0 - 2.0 * L * eta);
      CHECK(std::abs(general.nu - closed) <=
            1e-12 * std::max(1.0, std::abs(closed)));
    }
  }
}

TEST_CASE("katyusha epoch factor and its structure") {
  FunctionClass fc(0.01, 1.0, ComponentAssumption::SmoothConvex, true);
  MethodSpec spec = MethodSpec::katyusha_recipe(0.01, 1.0, 100);
  RateReport r = katyusha_epoch_rate(fc, spec);
  CHECK(r.residual_terms.at("weight_growth_per_step") ==
        doctest::Approx(1.0066666666666666).epsilon(1e-12));
  CHECK(r.residual_terms.at("weight_growth_epoch") ==
        doctest::Approx(1.9434).epsilon(1e-4));
  // tau1 = tau2 = 1/2 kills the y carryover
  CHECK(r.residual_terms.at("initial_y") == 0.0);
  CHECK(r.gradient_evals_per_epoch == 300);
  CHECK(r.nu > 1.0);  // too few inner steps for a contraction at this sigma

  MethodSpec longer = MethodSpec::katyusha_recipe(0.01, 1.0, 200);
  RateReport r2 = katyusha_epoch_rate(fc, longer);
  CHECK(r2.nu < 1.0);
  CHECK(r2.nu == doctest::Approx(0.68).epsilon(0.01));
}

TEST_CASE("katyusha rate preconditions") {
  FunctionClass fc(0.01, 1.0, ComponentAssumption::SmoothConvex, true);
  MethodSpec spec = MethodSpec::katyusha_recipe(0.01, 1.0, 100);
  spec.tau1 *= 1.2;  // breaks the certificate
  CHECK_THROWS_AS(katyusha_epoch_rate(fc, spec), std::invalid_argument);

  // verified certificate but the telescoping constant is nonpositive
  FunctionClass hard(1.0, 1.0, ComponentAssumption::SmoothConvex, true);
  MethodSpec stiff;
  stiff.family = Method::Katyusha;
  stiff.m = 10;
  stiff.tau1 = 0.1;
  stiff.tau2 = 0.5;
  stiff.alpha = 3.0;  // tau1 <= 1/(3*alpha*L) holds with equality margin
  stiff.zeta = 1.0 / 3.0;
  CHECK(katyusha_certificate(hard, stiff).verified);
  CHECK_THROWS_AS(katyusha_epoch_rate(hard, stiff), std::invalid_argument);
}

TEST_CASE("residual term grows with the step size") {
  FunctionClass fc(0.1, 1.0, ComponentAssumption::SmoothConvex);
  double prev = 0.0;
  for (double eta : {0.05, 0.1, 0.2, 0.4}) {
    double res = svrg_i_rate(fc, eta, 50).residual_terms.at("residual");
    CHECK(res > prev);
    prev = res;
  }
}
