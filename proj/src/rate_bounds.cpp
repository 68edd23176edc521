#include "dissipacert/rate_bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "dissipacert/lmi.hpp"

namespace dissipacert {

long long RateReport::epochs_to_eps(double eps) const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("eps must lie in (0, 1)");
  if (nu >= 1.0) return -1;  // no contraction
  return static_cast<long long>(std::ceil(std::log(1.0 / eps) / std::log(1.0 / nu)));
}

RateReport svrg_i_rate(const FunctionClass& fc, double eta, int m) {
  const double sigma = fc.sigma();
  const double L = fc.lipschitz();
  if (!(eta > 0.0 && eta * L < 1.0))
    throw std::invalid_argument("svrg_i_rate: requires 0 < eta < 1/L");
  if (m < 1) throw std::invalid_argument("svrg_i_rate: m must be >= 1");
  RateReport r;
  r.rho_sq = 1.0 - 2.0 * eta * sigma * (1.0 - eta * L);
  const double contraction = std::pow(r.rho_sq, m);
  const double residual = eta * L * L / (sigma * (1.0 - eta * L));
  r.nu = contraction + residual;
  r.residual_terms["contraction"] = contraction;
  r.residual_terms["residual"] = residual;
  r.gradient_evals_per_epoch = 2LL * m;  // + n for the snapshot, added by callers
  return r;
}

RateReport svrg_i_rate_smooth_only(const FunctionClass& fc, double eta, int m) {
  const double sigma = fc.sigma();
  const double L = fc.lipschitz();
  if (!(eta > 0.0 && sigma - eta * L * L > 0.0))
    throw std::invalid_argument("svrg_i_rate_smooth_only: requires 0 < eta < sigma/L^2");
  if (m < 1) throw std::invalid_argument("svrg_i_rate_smooth_only: m must be >= 1");
  RateReport r;
  r.rho_sq = 1.0 - 2.0 * sigma * eta + 2.0 * L * L * eta * eta;
  const double contraction = std::pow(r.rho_sq, m);
  const double residual = eta * L * L / (sigma - eta * L * L);
  r.nu = contraction + residual;
  r.residual_terms["contraction"] = contraction;
  r.residual_terms["residual"] = residual;
  r.gradient_evals_per_epoch = 2LL * m;
  return r;
}

RateReport svrg_ii_rate(const FunctionClass& fc, double eta, int m,
                        double lambda1, double lambda2, double lambda3) {
  const double sigma = fc.sigma();
  const double L = fc.lipschitz();
  if (m < 1) throw std::invalid_argument("svrg_ii_rate: m must be >= 1");
  const double denom = lambda3 - L * lambda1;
  if (!(denom > 0.0))
    throw std::invalid_argument("svrg_ii_rate: requires lambda3 - L*lambda1 > 0");
  RateReport r;
  r.rho_sq = 1.0;
  const double init = 1.0 / (sigma * denom * m);
  const double residual = L * lambda2 / denom;
  r.nu = (1.0 / sigma + m * L * lambda2) / (denom * m);
  r.residual_terms["initial"] = init;
  r.residual_terms["residual"] = residual;
  r.gradient_evals_per_epoch = 2LL * m;
  (void)eta;
  return r;
}

RateReport svrg_ii_rate(const FunctionClass& fc, double eta, int m) {
  return svrg_ii_rate(fc, eta, m, 2.0 * eta * eta, 2.0 * eta * eta, eta);
}

RateReport katyusha_epoch_rate(const FunctionClass& fc, const MethodSpec& spec) {
  if (spec.family != Method::Katyusha)
    throw std::invalid_argument("katyusha_epoch_rate: spec must be Katyusha");
  Certificate cert = katyusha_certificate(fc, spec);
  if (!cert.verified)
    throw std::invalid_argument("katyusha_epoch_rate: certificate not verified: " +
                                cert.failure);
  const double as = spec.alpha * fc.sigma();
  const double growth = 1.0 + as;
  const double weight_total = (std::pow(growth, spec.m) - 1.0) / as;
  const double carry = 1.0 - spec.tau1 - spec.tau2;
  const double c = 1.0 - carry * growth;
  if (!(c > 0.0))
    throw std::invalid_argument(
        "katyusha_epoch_rate: telescoping needs (1-tau1-tau2)(1+alpha*sigma) < 1");
  RateReport r;
  r.rho_sq = 1.0 / growth;
  const double anchor_term = spec.tau2 / c;
  const double start_z_term = spec.tau1 / (as * weight_total) / c;
  const double start_y_term = carry / weight_total / c;
  r.nu = anchor_term + start_z_term + start_y_term;
  r.residual_terms["anchor"] = anchor_term;
  r.residual_terms["initial_z"] = start_z_term;
  r.residual_terms["initial_y"] = start_y_term;
  r.residual_terms["weight_growth_per_step"] = growth;
  r.residual_terms["weight_growth_epoch"] = std::pow(growth, spec.m);
  r.gradient_evals_per_epoch = 3LL * spec.m;
  return r;
}

}  // namespace dissipacert
