#ifndef DISSIPACERT_PROBLEM_HPP
#define DISSIPACERT_PROBLEM_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "dissipacert/function_class.hpp"

namespace dissipacert {

enum class RegularizerKind { None, QuadraticL2 };

/// psi = (sigma_psi/2) ||x||^2, or absent. Closed-form prox in either case.
struct Regularizer {
  RegularizerKind kind = RegularizerKind::None;
  double sigma_psi = 0.0;

  static Regularizer none() { return {}; }
  static Regularizer quadratic_l2(double sigma_psi);

  double value(const Eigen::VectorXd& x) const;
  double strong_convexity() const { return kind == RegularizerKind::None ? 0.0 : sigma_psi; }
};

/// prox_{stepsize*psi}(v) = argmin_z { ||z - v||^2 / (2*stepsize) + psi(z) }.
Eigen::VectorXd prox(const Regularizer& reg, double stepsize, const Eigen::VectorXd& v);

/// One quadratic component f_i(x) = x'Q x / 2 + b'x.
struct QuadraticComponent {
  Eigen::MatrixXd q;
  Eigen::VectorXd b;
};

/// Finite-sum instance with quadratic components, exact oracles, and a
/// ground-truth minimizer computed by a dense solve at generation time.
/// Immutable after generation; all oracles are pure.
class FiniteSumProblem {
 public:
  FiniteSumProblem(std::vector<QuadraticComponent> components, Regularizer reg,
                   FunctionClass fclass, Eigen::VectorXd x_star,
                   std::uint64_t seed);

  int n() const { return static_cast<int>(components_.size()); }
  int p() const { return static_cast<int>(x_star_.size()); }
  std::uint64_t seed() const { return seed_; }
  const FunctionClass& fclass() const { return fclass_; }
  const Regularizer& regularizer() const { return reg_; }
  const Eigen::VectorXd& x_star() const { return x_star_; }
  const QuadraticComponent& component(int i) const { return components_.at(i); }
  bool composite() const { return reg_.kind != RegularizerKind::None; }

  /// grad f_i(x), i in [0, n).
  Eigen::VectorXd component_gradient(int i, const Eigen::VectorXd& x) const;

  /// grad g(x) = mean of component gradients (fixed summation order).
  Eigen::VectorXd full_gradient(const Eigen::VectorXd& x) const;

  double component_value(int i, const Eigen::VectorXd& x) const;
  double smooth_value(const Eigen::VectorXd& x) const;  // g(x) resp. f(x)
  double objective(const Eigen::VectorXd& x) const;     // g(x) or F(x) = f + psi

  /// Objective gap against x_star, clamped at zero for reporting.
  double suboptimality(const Eigen::VectorXd& x) const;

  /// Residual of the (possibly composite) first-order optimality condition
  /// at x_star; small by construction.
  double optimality_residual() const;

 private:
  std::vector<QuadraticComponent> components_;
  Regularizer reg_;
  FunctionClass fclass_;
  Eigen::VectorXd x_star_;
  std::uint64_t seed_;
};

/// Deterministic in seed. Components are built so that every Q_i respects the
/// class bounds (PSD with spectral norm <= L for convex classes, indefinite
/// allowed for SmoothOnly) and the average Hessian, plus sigma_psi when
/// composite, has smallest eigenvalue >= sigma.
FiniteSumProblem generate_problem(std::uint64_t seed, int n, int p,
                                  const FunctionClass& fclass,
                                  const Regularizer& reg);

}  // namespace dissipacert

#endif
