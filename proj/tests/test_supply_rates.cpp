#include "doctest.h"

#include <random>

#include <Eigen/Eigenvalues>

#include "dissipacert/supply_rates.hpp"

using namespace dissipacert;

namespace {
const double kSigma = 0.25;
const double kL = 2.0;
}  // namespace

TEST_CASE("sg supply rate matrices") {
  FunctionClass fc(kSigma, kL, ComponentAssumption::SmoothConvex);
  auto rates = sg_supply_rates(fc);
  REQUIRE(rates.size() == 2);
  CHECK(rates[0].name == "SG.X1");
  CHECK(rates[0].xbar(0, 0) == doctest::Approx(2.0 * kSigma));
  CHECK(rates[0].xbar(0, 1) == doctest::Approx(-1.0));
  CHECK(rates[0].xbar(1, 1) == 0.0);
  CHECK(rates[0].bound.kind == BoundKind::NonPositive);
  CHECK(rates[1].xbar(0, 1) == doctest::Approx(-kL));
  CHECK(rates[1].xbar(1, 1) == doctest::Approx(1.0));
  CHECK(rates[1].bound.kind == BoundKind::GradientNoiseAtOpt);
  CHECK(rates[1].bound.coefficient == doctest::Approx(2.0));
  CHECK_THROWS_AS(
      sg_supply_rates(FunctionClass(kSigma, kL, ComponentAssumption::SmoothOnly)),
      std::invalid_argument);
}

TEST_CASE("svrg option one supply rates") {
  FunctionClass fc(kSigma, kL, ComponentAssumption::SmoothConvex);
  auto rates = svrg_i_supply_rates(fc);
  REQUIRE(rates.size() == 4);
  CHECK(rates[0].xbar(2, 2) == 1.0);
  CHECK(rates[0].bound.kind == BoundKind::ScaledAnchorDistance);
  CHECK(rates[0].bound.coefficient == doctest::Approx(kL * kL));
  CHECK(rates[1].xbar(0, 0) == doctest::Approx(2.0 * kSigma));
  CHECK(rates[1].xbar(0, 2) == doctest::Approx(-1.0));
  CHECK(rates[2].xbar(0, 1) == doctest::Approx(-kL));
  CHECK(rates[2].xbar(1, 1) == doctest::Approx(2.0));
  CHECK(rates[3].multiplier_sign == MultiplierSign::Free);
  CHECK(rates[3].bound.kind == BoundKind::ExactZero);
  CHECK(rates[3].xbar(0, 2) == doctest::Approx(-1.0));

  // smooth-only swaps the interpolation block
  FunctionClass nc(kSigma, kL, ComponentAssumption::SmoothOnly);
  auto nrates = svrg_i_supply_rates(nc);
  CHECK(nrates[2].xbar(0, 0) == doctest::Approx(-2.0 * kL * kL));
  CHECK(nrates[2].xbar(0, 1) == 0.0);
  CHECK(nrates[2].xbar(1, 1) == doctest::Approx(2.0));

  CHECK_THROWS_AS(svrg_i_supply_rates(FunctionClass(
                      kSigma, kL, ComponentAssumption::SmoothStronglyConvex)),
                  std::invalid_argument);
}

TEST_CASE("svrg option two supply rates") {
  FunctionClass fc(kSigma, kL, ComponentAssumption::SmoothConvex);
  auto rates = svrg_ii_supply_rates(fc);
  REQUIRE(rates.size() == 3);
  CHECK(rates[0].xbar(1, 1) == 1.0);
  CHECK(rates[0].bound.coefficient == doctest::Approx(2.0 * kL));
  CHECK(rates[1].xbar(2, 2) == 1.0);
  CHECK(rates[1].bound.kind == BoundKind::ScaledAnchorGap);
  CHECK(rates[2].xbar(0, 1) == doctest::Approx(-1.0));
  CHECK(rates[2].xbar(0, 2) == doctest::Approx(-1.0));
  CHECK(rates[2].bound.kind == BoundKind::ScaledIterateGap);
  CHECK(rates[2].bound.coefficient == doctest::Approx(-1.0));
}

TEST_CASE("katyusha supply rate block assembly") {
  FunctionClass fc(kSigma, kL, ComponentAssumption::SmoothConvex, true);
  MethodSpec spec;
  spec.family = Method::Katyusha;
  spec.m = 10;
  spec.tau1 = 0.3;
  spec.tau2 = 0.4;
  spec.alpha = 0.5;
  spec.zeta = 1.0 / (3.0 * kL);
  SupplyRate rate = katyusha_supply_rate(fc, spec);
  const Eigen::MatrixXd& x = rate.xbar;
  REQUIRE(x.rows() == 6);
  CHECK((x - x.transpose()).norm() == 0.0);

  const double c1 = spec.tau1 * (spec.alpha * kSigma + 1.0) / 2.0;
  const double c2 = spec.zeta - spec.alpha * spec.tau1 / 2.0 -
                    kL * spec.zeta * spec.zeta * (1.0 + spec.tau2) /
                        (2.0 * spec.tau2);
  const double c3 = spec.alpha * spec.tau1 * (spec.alpha * kSigma + 1.0) / 2.0;
  const double c4 = spec.alpha * spec.tau1 / 2.0;
  CHECK(x(0, 0) == doctest::Approx(kSigma * spec.tau1 / 2.0));
  CHECK(x(0, 3) == doctest::Approx(-c1));
  CHECK(x(0, 4) == doctest::Approx(-c1));
  CHECK(x(3, 3) == doctest::Approx(c2 + c3));
  CHECK(x(3, 5) == doctest::Approx(c2));
  CHECK(x(5, 5) == doctest::Approx(c2 + c4));
  CHECK(x(3, 4) == doctest::Approx(c3));
  CHECK(x(4, 4) == doctest::Approx(c3 + c4));
  CHECK(x(4, 5) == doctest::Approx(-c4));
  CHECK(x(1, 1) == 0.0);  // the y block carries no quadratic term
  CHECK(x(2, 2) == 0.0);

  FunctionClass plain(kSigma, kL, ComponentAssumption::SmoothConvex);
  CHECK_THROWS_AS(katyusha_supply_rate(plain, spec), std::invalid_argument);
  MethodSpec bad = spec;
  bad.tau2 = 0.0;
  CHECK_THROWS_AS(katyusha_supply_rate(fc, bad), std::invalid_argument);
}

TEST_CASE("blockwise evaluation equals the explicit Kronecker lift") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal(0.0, 1.0);
  const int d = 3;
  Eigen::MatrixXd xbar(d, d);
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) xbar(a, b) = xbar(b, a) = normal(rng);
  for (int p : {1, 2, 3}) {
    std::vector<Eigen::VectorXd> blocks;
    Eigen::VectorXd stacked(d * p);
    for (int a = 0; a < d; ++a) {
      Eigen::VectorXd v(p);
      for (int j = 0; j < p; ++j) v[j] = normal(rng);
      blocks.push_back(v);
      stacked.segment(a * p, p) = v;
    }
    Eigen::MatrixXd lift = Eigen::MatrixXd::Zero(d * p, d * p);
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        lift.block(a * p, b * p, p, p) =
            xbar(a, b) * Eigen::MatrixXd::Identity(p, p);
    double direct = stacked.dot(lift * stacked);
    CHECK(evaluate_supply_rate(xbar, blocks) ==
          doctest::Approx(direct).epsilon(1e-12));
  }
  std::vector<Eigen::VectorXd> wrong(2, Eigen::VectorXd::Zero(2));
  CHECK_THROWS_AS(evaluate_supply_rate(xbar, wrong), std::invalid_argument);
}
