#ifndef DISSIPACERT_SUPPLY_RATES_HPP
#define DISSIPACERT_SUPPLY_RATES_HPP

#include <string>
#include <vector>

#include <Eigen/Core>

#include "dissipacert/function_class.hpp"
#include "dissipacert/optimizers.hpp"

namespace dissipacert {

enum class MultiplierSign { NonNegative, Free };

/// Semantics of the expected upper bound Lambda on a supply rate.
enum class BoundKind {
  NonPositive,          // E S <= 0
  ExactZero,            // E S  = 0
  ScaledAnchorDistance, // E S <= c * E||x_tilde - x*||^2
  ScaledIterateGap,     // E S <= c * (E g(x_k) - g*)
  ScaledAnchorGap,      // E S <= c * (E g(x_tilde) - g*)
  GradientNoiseAtOpt,   // E S <= c * (1/n) sum_i ||grad f_i(x*)||^2
  CouplingCombination   // the Katyusha right-hand side (F-gaps of y_k, y_{k+1}, x_tilde)
};

struct BoundDescriptor {
  BoundKind kind = BoundKind::NonPositive;
  double coefficient = 0.0;
};

/// Reduced symmetric matrix of one quadratic supply rate, block order fixed:
/// SG (x - x*, grad f_i(x_k)); SVRG (x - x*, r, u); Katyusha
/// (z - x*, y - x*, x_tilde - x*, v, g, h). The Kronecker lift by I_p is
/// never materialized.
struct SupplyRate {
  std::string name;
  Eigen::MatrixXd xbar;
  MultiplierSign multiplier_sign = MultiplierSign::NonNegative;
  BoundDescriptor bound;
};

/// Lemma 4 pair for SG.
std::vector<SupplyRate> sg_supply_rates(const FunctionClass& fc);

/// Lemma 5 quadruple for SVRG Option I; SmoothOnly swaps in the appendix
/// variant of X3.
std::vector<SupplyRate> svrg_i_supply_rates(const FunctionClass& fc);

/// Lemma 6 triple for SVRG Option II.
std::vector<SupplyRate> svrg_ii_supply_rates(const FunctionClass& fc);

/// The single 6x6 Katyusha supply rate of Lemma 7, assembled as the printed
/// sum of four coefficient blocks.
SupplyRate katyusha_supply_rate(const FunctionClass& fc, const MethodSpec& spec);

/// Blockwise evaluation of [xi; w]' (Xbar kron I_p) [xi; w], where blocks
/// holds the stacked p-vectors in the documented order.
double evaluate_supply_rate(const Eigen::MatrixXd& xbar,
                            const std::vector<Eigen::VectorXd>& blocks);

}  // namespace dissipacert

#endif
