#include "dissipacert/supply_rates.hpp"

#include <stdexcept>

namespace dissipacert {

std::vector<SupplyRate> sg_supply_rates(const FunctionClass& fc) {
  if (fc.assumption() != ComponentAssumption::SmoothConvex)
    throw std::invalid_argument("sg_supply_rates: components must be SmoothConvex");
  const double sigma = fc.sigma();
  const double L = fc.lipschitz();

  SupplyRate s1;
  s1.name = "SG.X1";
  s1.xbar = Eigen::MatrixXd{{2.0 * sigma, -1.0}, {-1.0, 0.0}};
  s1.bound = {BoundKind::NonPositive, 0.0};

  SupplyRate s2;
  s2.name = "SG.X2";
  s2.xbar = Eigen::MatrixXd{{0.0, -L}, {-L, 1.0}};
  s2.bound = {BoundKind::GradientNoiseAtOpt, 2.0};

  return {s1, s2};
}

std::vector<SupplyRate> svrg_i_supply_rates(const FunctionClass& fc) {
  if (fc.assumption() == ComponentAssumption::SmoothStronglyConvex)
    throw std::invalid_argument(
        "svrg_i_supply_rates: components must be SmoothConvex or SmoothOnly");
  const double sigma = fc.sigma();
  const double L = fc.lipschitz();

  SupplyRate s1;
  s1.name = "L5.X1";
  s1.xbar = Eigen::MatrixXd{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  s1.bound = {BoundKind::ScaledAnchorDistance, L * L};

  SupplyRate s2;
  s2.name = "L5.X2";
  s2.xbar = Eigen::MatrixXd{
      {2.0 * sigma, -1.0, -1.0}, {-1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  s2.bound = {BoundKind::NonPositive, 0.0};

  SupplyRate s3;
  s3.name = "L5.X3";
  if (fc.assumption() == ComponentAssumption::SmoothConvex) {
    s3.xbar = Eigen::MatrixXd{{0.0, -L, 0.0}, {-L, 2.0, 0.0}, {0.0, 0.0, 0.0}};
  } else {  // SmoothOnly, appendix variant
    s3.xbar = Eigen::MatrixXd{
        {-2.0 * L * L, 0.0, 0.0}, {0.0, 2.0, 0.0}, {0.0, 0.0, 0.0}};
  }
  s3.bound = {BoundKind::NonPositive, 0.0};

  SupplyRate s4;
  s4.name = "L5.X4";
  s4.xbar = Eigen::MatrixXd{{0.0, 0.0, -1.0}, {0.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  s4.multiplier_sign = MultiplierSign::Free;
  s4.bound = {BoundKind::ExactZero, 0.0};

  return {s1, s2, s3, s4};
}

std::vector<SupplyRate> svrg_ii_supply_rates(const FunctionClass& fc) {
  if (fc.assumption() != ComponentAssumption::SmoothConvex)
    throw std::invalid_argument("svrg_ii_supply_rates: components must be SmoothConvex");
  const double L = fc.lipschitz();

  SupplyRate s1;
  s1.name = "L6.X1";
  s1.xbar = Eigen::MatrixXd{{0.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 0.0}};
  s1.bound = {BoundKind::ScaledIterateGap, 2.0 * L};

  SupplyRate s2;
  s2.name = "L6.X2";
  s2.xbar = Eigen::MatrixXd{{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  s2.bound = {BoundKind::ScaledAnchorGap, 2.0 * L};

  SupplyRate s3;
  s3.name = "L6.X3";
  s3.xbar = Eigen::MatrixXd{
      {0.0, -1.0, -1.0}, {-1.0, 0.0, 0.0}, {-1.0, 0.0, 0.0}};
  s3.bound = {BoundKind::ScaledIterateGap, -1.0};

  return {s1, s2, s3};
}

SupplyRate katyusha_supply_rate(const FunctionClass& fc, const MethodSpec& spec) {
  if (!fc.composite())
    throw std::invalid_argument("katyusha_supply_rate: class must be composite");
  spec.check();
  if (!(spec.tau2 > 0.0))
    throw std::invalid_argument("katyusha_supply_rate: tau2 = 0 leaves a coefficient undefined");
  const double sigma = fc.sigma();
  const double L = fc.lipschitz();
  const double tau1 = spec.tau1, tau2 = spec.tau2;
  const double alpha = spec.alpha, zeta = spec.zeta;

  Eigen::MatrixXd x = Eigen::MatrixXd::Zero(6, 6);

  // Negated first block: sigma*tau1/2 on (z,z), minus tau1(alpha*sigma+1)/2
  // on the (z,v) and (z,g) cross terms.
  const double c1 = tau1 * (alpha * sigma + 1.0) / 2.0;
  x(0, 0) += sigma * tau1 / 2.0;
  x(0, 3) -= c1; x(3, 0) -= c1;
  x(0, 4) -= c1; x(4, 0) -= c1;

  const double c2 = zeta - alpha * tau1 / 2.0 -
                    L * zeta * zeta * (1.0 + tau2) / (2.0 * tau2);
  x(3, 3) += c2; x(3, 5) += c2; x(5, 3) += c2; x(5, 5) += c2;

  const double c3 = alpha * tau1 * (alpha * sigma + 1.0) / 2.0;
  x(3, 3) += c3; x(3, 4) += c3; x(4, 3) += c3; x(4, 4) += c3;

  const double c4 = alpha * tau1 / 2.0;
  x(4, 4) += c4; x(4, 5) -= c4; x(5, 4) -= c4; x(5, 5) += c4;

  SupplyRate s;
  s.name = "KAT.X1";
  s.xbar = x;
  s.bound = {BoundKind::CouplingCombination, 1.0};
  return s;
}

double evaluate_supply_rate(const Eigen::MatrixXd& xbar,
                            const std::vector<Eigen::VectorXd>& blocks) {
  const int d = static_cast<int>(xbar.rows());
  if (static_cast<int>(blocks.size()) != d)
    throw std::invalid_argument("evaluate_supply_rate: block count mismatch");
  double s = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      if (xbar(a, b) != 0.0) s += xbar(a, b) * blocks[a].dot(blocks[b]);
  return s;
}

}  // namespace dissipacert
