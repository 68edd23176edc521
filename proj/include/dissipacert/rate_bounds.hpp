#ifndef DISSIPACERT_RATE_BOUNDS_HPP
#define DISSIPACERT_RATE_BOUNDS_HPP

#include <map>
#include <string>

#include "dissipacert/function_class.hpp"
#include "dissipacert/optimizers.hpp"

namespace dissipacert {

/// Epoch contraction factor with its named components plus the implied
/// epochs-to-epsilon and gradient-evaluation counts.
struct RateReport {
  double nu = 0.0;
  double rho_sq = 1.0;
  std::map<std::string, double> residual_terms;
  long long epochs_to_eps(double eps) const;
  long long gradient_evals_per_epoch = 0;
};

/// nu = (1 - 2*eta*sigma*(1 - eta*L))^m + eta*L^2 / (sigma*(1 - eta*L)).
/// Requires eta < 1/L.
RateReport svrg_i_rate(const FunctionClass& fc, double eta, int m);

/// Smooth-only variant: nu = (1 - 2*sigma*eta + 2*L^2*eta^2)^m
/// + eta*L^2 / (sigma - eta*L^2). Requires eta < sigma/L^2.
RateReport svrg_i_rate_smooth_only(const FunctionClass& fc, double eta, int m);

/// General-multiplier Option II rate
/// nu = (1/sigma + m*L*lambda2) / ((lambda3 - L*lambda1) * m).
/// Requires lambda3 - L*lambda1 > 0.
RateReport svrg_ii_rate(const FunctionClass& fc, double eta, int m,
                        double lambda1, double lambda2, double lambda3);

/// Option II with the standard multipliers lambda1 = lambda2 = 2*eta^2,
/// lambda3 = eta.
RateReport svrg_ii_rate(const FunctionClass& fc, double eta, int m);

/// Epoch factor from the geometrically weighted telescope of the coupling
/// inequality combined with the weighted epoch average. Writing
/// W = sum_{j<m} (1+alpha*sigma)^j and c = 1 - (1-tau1-tau2)(1+alpha*sigma),
/// the anchor gap contracts by
///   nu = (tau2 + tau1/(alpha*sigma*W) + (1-tau1-tau2)/W) / c.
/// Requires c > 0 and a verified certificate for the spec.
RateReport katyusha_epoch_rate(const FunctionClass& fc, const MethodSpec& spec);

}  // namespace dissipacert

#endif
