#include "doctest.h"

#include "dissipacert/validation.hpp"

using namespace dissipacert;

namespace {

FiniteSumProblem convex_instance(std::uint64_t seed = 29, int n = 6, int p = 4) {
  FunctionClass fc(0.2, 1.5, ComponentAssumption::SmoothConvex);
  return generate_problem(seed, n, p, fc, Regularizer::none());
}

FiniteSumProblem composite_instance(std::uint64_t seed = 29, int n = 5, int p = 3) {
  FunctionClass fc(0.2, 1.5, ComponentAssumption::SmoothConvex, true);
  return generate_problem(seed, n, p, fc, Regularizer::quadratic_l2(0.2));
}

const InequalityReport& find(const std::vector<InequalityReport>& reps,
                             const std::string& name) {
  for (const auto& r : reps)
    if (r.name == name) return r;
  REQUIRE(false);
  return reps.front();
}

}  // namespace

TEST_CASE("appendix inequalities hold on a convex instance") {
  auto reps = check_appendix_inequalities(convex_instance(), 300, 1);
  REQUIRE(reps.size() == 9);
  for (const auto& r : reps) {
    CHECK_FALSE(r.skipped);
    CHECK(r.pass);
  }
  // the zero-mean identity is exact up to roundoff
  CHECK(find(reps, "S1").max_violation <= 1e-12);
}

TEST_CASE("inequalities outside their assumption class are skipped") {
  FunctionClass nc(0.2, 1.5, ComponentAssumption::SmoothOnly);
  auto nonconvex = check_appendix_inequalities(
      generate_problem(31, 6, 4, nc, Regularizer::none()), 200, 2);
  CHECK(find(nonconvex, "S3").skipped);
  CHECK(find(nonconvex, "S4").skipped);
  CHECK_FALSE(find(nonconvex, "S5").skipped);
  CHECK(find(nonconvex, "S5").pass);
  CHECK(find(nonconvex, "S9").pass);

  auto composite = check_appendix_inequalities(composite_instance(), 200, 3);
  for (const char* name : {"S1", "S2", "S3", "S4", "S7", "S9"}) {
    CHECK(find(composite, name).skipped);
    CHECK_FALSE(find(composite, name).reason.empty());
  }
  for (const auto& r : composite)
    if (!r.skipped) CHECK(r.pass);
}

TEST_CASE("strong convexity bound is tight along the smallest eigendirection") {
  // single diagonal component; x_tilde along the sigma eigenvector
  const double sigma = 0.3, L = 2.0;
  QuadraticComponent c;
  c.q = Eigen::Vector2d(sigma, L).asDiagonal();
  c.b = Eigen::VectorXd::Zero(2);
  FiniteSumProblem prob({c}, Regularizer::none(),
                        FunctionClass(sigma, L, ComponentAssumption::SmoothConvex),
                        Eigen::VectorXd::Zero(2), 0);
  Eigen::VectorXd xt(2);
  xt << 3.0, 0.0;
  const double gap = prob.smooth_value(xt) - prob.smooth_value(prob.x_star());
  CHECK(std::abs(xt.squaredNorm() - 2.0 / sigma * gap) <= 1e-10);
}

TEST_CASE("svrg supply-rate bounds hold and respect applicability") {
  auto reps = check_svrg_supply_bounds(convex_instance(), 300, 4);
  REQUIRE(reps.size() == 7);
  for (const auto& r : reps) {
    CHECK_FALSE(r.skipped);
    CHECK(r.pass);
  }
  CHECK(find(reps, "L5.S4").max_violation <= 1e-12);  // exact identity

  auto comp = check_svrg_supply_bounds(composite_instance(), 100, 5);
  for (const auto& r : comp) CHECK(r.skipped);
}

TEST_CASE("katyusha supply bound and quadratic-form identity") {
  FiniteSumProblem prob = composite_instance();
  MethodSpec spec = MethodSpec::katyusha_recipe(0.2, 1.5, 10);
  auto reps = check_katyusha_supply(prob, spec, 200, 6);
  REQUIRE(reps.size() == 2);
  CHECK(reps[0].name == "KAT.S1");
  CHECK(reps[0].pass);
  CHECK(reps[1].name == "KAT.S18");
  CHECK(reps[1].pass);
  CHECK(reps[1].max_violation <= 1e-10);

  // generalized zeta / tau2 regime
  MethodSpec gen = spec;
  gen.tau2 = 0.3;
  gen.tau1 = 0.2;
  gen.alpha = 0.4;
  auto gen_reps = check_katyusha_supply(prob, gen, 200, 7);
  CHECK(gen_reps[0].pass);
  CHECK(gen_reps[1].pass);

  CHECK_THROWS_AS(check_katyusha_supply(convex_instance(), spec, 10, 8),
                  std::invalid_argument);
}

TEST_CASE("pathwise dissipation along recorded traces") {
  FiniteSumProblem prob = convex_instance();
  Eigen::VectorXd x0 = prob.x_star() + Eigen::VectorXd::Ones(prob.p());
  const double eta = 0.05;
  {
    Certificate cert = verify_certificate(sg_paper_instance(prob.fclass(), eta));
    EpochTrace tr = run_sg(prob, eta, 40, x0, 9);
    InequalityReport r = check_dissipation_on_trace(prob, tr, cert);
    CHECK(r.pass);
    CHECK(r.trials == 40);
  }
  {
    Certificate cert = verify_certificate(svrg_i_paper_instance(prob.fclass(), eta));
    EpochTrace tr = run_svrg_epoch(prob, eta, 40, Method::SvrgOptionI, x0, 10);
    CHECK(check_dissipation_on_trace(prob, tr, cert).pass);
    // zero-length trace passes vacuously
    EpochTrace empty = run_svrg_epoch(prob, eta, 1, Method::SvrgOptionI, x0, 10);
    empty.indices.clear();
    empty.w_r.clear();
    empty.w_u.clear();
    empty.x.resize(1);
    InequalityReport vac = check_dissipation_on_trace(prob, empty, cert);
    CHECK(vac.pass);
    CHECK(vac.trials == 0);
  }
  {
    FiniteSumProblem cp = composite_instance();
    MethodSpec spec = MethodSpec::katyusha_recipe(0.2, 1.5, 30);
    Certificate cert = katyusha_certificate(cp.fclass(), spec);
    REQUIRE(cert.verified);
    Eigen::VectorXd start = cp.x_star() + Eigen::VectorXd::Ones(cp.p());
    EpochTrace tr = run_katyusha_epoch(cp, spec, start, 11);
    CHECK(check_dissipation_on_trace(cp, tr, cert).pass);
    tr.g_sub.clear();  // missing recorded inputs must be an error
    CHECK_THROWS_AS(check_dissipation_on_trace(cp, tr, cert),
                    std::invalid_argument);
  }
}

TEST_CASE("epoch contraction monte carlo") {
  FunctionClass fc(0.1, 1.0, ComponentAssumption::SmoothConvex);
  FiniteSumProblem prob = generate_problem(41, 20, 6, fc, Regularizer::none());
  MethodSpec spec;
  spec.family = Method::SvrgOptionI;
  spec.eta = 0.01;
  spec.m = 100;
  const double nu = 0.9212189484674019;
  Eigen::VectorXd x0 = prob.x_star() + Eigen::VectorXd::Ones(prob.p());
  InequalityReport r = check_epoch_contraction(prob, spec, nu, x0, 60, 12);
  CHECK(r.pass);
  CHECK_FALSE(r.skipped);

  InequalityReport vacuous = check_epoch_contraction(prob, spec, 1.5, x0, 10, 12);
  CHECK(vacuous.skipped);
  InequalityReport degenerate =
      check_epoch_contraction(prob, spec, nu, prob.x_star(), 10, 12);
  CHECK(degenerate.skipped);
}

TEST_CASE("katyusha coupling holds in sample mean") {
  FiniteSumProblem prob = composite_instance(55, 12, 4);
  MethodSpec spec = MethodSpec::katyusha_recipe(0.2, 1.5, 20);
  Eigen::VectorXd x0 = prob.x_star() + Eigen::VectorXd::Ones(prob.p());
  InequalityReport r = check_katyusha_coupling_mc(prob, spec, x0, 80, 13);
  CHECK(r.pass);
}

TEST_CASE("reports are deterministic") {
  FiniteSumProblem prob = convex_instance();
  auto a = check_appendix_inequalities(prob, 100, 9);
  auto b = check_appendix_inequalities(prob, 100, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(a[i].max_violation == b[i].max_violation);
}
