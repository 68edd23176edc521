#ifndef DISSIPACERT_OPTIMIZERS_HPP
#define DISSIPACERT_OPTIMIZERS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dissipacert/problem.hpp"

namespace dissipacert {

enum class Method { SG, SvrgOptionI, SvrgOptionII, Katyusha };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Algorithm parameters. Unused fields are ignored per family.
struct MethodSpec {
  Method family = Method::SG;
  double eta = 0.0;    // SG / SVRG learning rate
  int m = 1;           // epoch length (SVRG / Katyusha); SG steps per epoch
  double tau1 = 0.0;   // Katyusha momentum on z
  double tau2 = 0.0;   // Katyusha momentum on the anchor
  double alpha = 0.0;  // Katyusha z-step size
  double zeta = 0.0;   // Katyusha y-step size; 1/(3L) recovers the standard form

  void check() const;

  /// tau2 = 1/2, tau1 = min{sqrt(m*sigma/(3L)), 1/2}, alpha = 1/(3*tau1*L),
  /// zeta = 1/(3L).
  static MethodSpec katyusha_recipe(double sigma, double lipschitz, int m);
};

/// Per-epoch record of everything the dissipation checks need: states,
/// sampled indices (1-based), and the exact inputs fed to the linear model.
struct EpochTrace {
  Method family = Method::SG;
  Eigen::VectorXd anchor;  // x_tilde (equals x[0] for SG/SVRG)
  Eigen::VectorXd output;  // x_tilde^+ per the family's epoch rule
  std::vector<int> indices;

  // SG / SVRG: x has steps+1 entries. SG records the sampled gradient in w_r;
  // SVRG records the two input blocks r and u separately.
  std::vector<Eigen::VectorXd> x;
  std::vector<Eigen::VectorXd> w_r;
  std::vector<Eigen::VectorXd> w_u;

  // Katyusha: z, y have m+1 entries; q (the gradient query point x_{k+1}),
  // v, and the psi subgradients g, h have m entries.
  std::vector<Eigen::VectorXd> z;
  std::vector<Eigen::VectorXd> y;
  std::vector<Eigen::VectorXd> q;
  std::vector<Eigen::VectorXd> v;
  std::vector<Eigen::VectorXd> g_sub;
  std::vector<Eigen::VectorXd> h_sub;

  int steps() const { return static_cast<int>(indices.size()); }
};

EpochTrace run_sg(const FiniteSumProblem& prob, double eta, int steps,
                  const Eigen::VectorXd& x0, std::uint64_t seed);

EpochTrace run_svrg_epoch(const FiniteSumProblem& prob, double eta, int m,
                          Method option, const Eigen::VectorXd& x_tilde,
                          std::uint64_t seed);

EpochTrace run_katyusha_epoch(const FiniteSumProblem& prob, const MethodSpec& spec,
                              const Eigen::VectorXd& x_tilde, std::uint64_t seed);

struct EpochSummary {
  int epoch = 0;
  double v_before = 0.0;  // V(x_tilde^s)
  double v_after = 0.0;   // V(x_tilde^{s+1})
  double anchor_norm = 0.0;
};

/// The family's Lyapunov value at an anchor: ||x - x*||^2 for SG and SVRG
/// Option I, g(x) - g* for Option II, F(x) - F* for Katyusha.
double lyapunov_value(const FiniteSumProblem& prob, Method family,
                      const Eigen::VectorXd& x);

/// Chains epochs starting from x_tilde0. Per-epoch seeds are derived from
/// `seed` by splitmix64 so any epoch can be reproduced in isolation.
std::vector<EpochSummary> run_epochs(const FiniteSumProblem& prob,
                                     const MethodSpec& spec, int num_epochs,
                                     const Eigen::VectorXd& x_tilde0,
                                     std::uint64_t seed);

std::uint64_t epoch_seed(std::uint64_t seed, int epoch);

}  // namespace dissipacert

#endif
