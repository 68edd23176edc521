#ifndef DISSIPACERT_LMI_HPP
#define DISSIPACERT_LMI_HPP

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "dissipacert/function_class.hpp"
#include "dissipacert/optimizers.hpp"
#include "dissipacert/supply_rates.hpp"

namespace dissipacert {

/// Reduced state-space pair (Abar, Bbar) of the analyzed method.
struct SystemMatrices {
  Eigen::MatrixXd abar;
  Eigen::MatrixXd bbar;

  int d_xi() const { return static_cast<int>(abar.rows()); }
  int d_w() const { return static_cast<int>(bbar.cols()); }
};

SystemMatrices sg_system(double eta);
SystemMatrices svrg_system(double eta);
SystemMatrices katyusha_system(const MethodSpec& spec);

/// Candidate certificate data for one LMI.
struct LmiInstance {
  SystemMatrices system;
  std::vector<SupplyRate> supply_rates;
  double rho_sq = 1.0;
  Eigen::MatrixXd pbar;
  Eigen::VectorXd lambdas;
};

/// [A'PA - rho^2 P, A'PB; B'PA, B'PB] - sum_j lambda_j Xbar_j, reduced form.
Eigen::MatrixXd assemble_lhs(const LmiInstance& instance);

struct Certificate {
  LmiInstance instance;
  double lhs_max_eig = 0.0;
  bool verified = false;
  std::string failure;  // empty when verified
  std::optional<bool> analytic_feasible;  // Katyusha closed-form predicate
  std::optional<double> derived_nu;
};

/// Eigenvalue check of the assembled LHS plus P >= 0 and multiplier signs.
Certificate verify_certificate(const LmiInstance& instance, double tol = 1e-9);

// Closed-form certificates from the analysis, ready for verification.
LmiInstance sg_paper_instance(const FunctionClass& fc, double eta);
LmiInstance svrg_i_paper_instance(const FunctionClass& fc, double eta);
LmiInstance svrg_ii_paper_instance(const FunctionClass& fc, double eta);
LmiInstance katyusha_paper_instance(const FunctionClass& fc, const MethodSpec& spec);

/// Builds and verifies the analytic Katyusha certificate. When zeta = 1/(3L)
/// and tau2 >= 1/5 the closed-form feasibility predicate
/// tau1 <= (5*tau2 - 1)/(9*alpha*L*tau2) is evaluated alongside.
Certificate katyusha_certificate(const FunctionClass& fc, const MethodSpec& spec,
                                 double tol = 1e-9);

std::optional<bool> katyusha_feasibility_predicate(const FunctionClass& fc,
                                                   const MethodSpec& spec);

/// Structured storage-function family for the certificate search.
enum class PFamily {
  Identity,       // P = I (SG, SVRG)
  KatyushaAnchor  // P = diag(1, 0, 0); the scale is absorbed by the multipliers
};

struct SearchResult {
  Certificate best;
  bool feasible = false;  // best found within budget, never a proof of infeasibility
};

/// Heuristic multiplier search (grid + compass refinement) at fixed rho^2.
/// The max eigenvalue is affine in the multipliers, so local refinement from
/// the grid optimum is well behaved. `seeds` are extra starting multipliers.
SearchResult search_certificate(const SystemMatrices& system,
                                const std::vector<SupplyRate>& rates,
                                double rho_sq, PFamily family,
                                double tol = 1e-9,
                                const std::vector<Eigen::VectorXd>& seeds = {});

/// Smallest certified rho^2 by bisection to width tol_rho. Requires
/// feasibility at rho^2 = 1. Monotone because the LHS depends on rho^2 only
/// through -rho^2 P with P >= 0.
double bisect_rate(const SystemMatrices& system,
                   const std::vector<SupplyRate>& rates, PFamily family,
                   double tol_rho = 1e-4, double tol = 1e-9,
                   const std::vector<Eigen::VectorXd>& seeds = {});

}  // namespace dissipacert

#endif
