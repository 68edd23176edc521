#include "dissipacert/lmi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dissipacert/jacobi.hpp"

namespace dissipacert {

SystemMatrices sg_system(double eta) {
  SystemMatrices s;
  s.abar = Eigen::MatrixXd::Constant(1, 1, 1.0);
  s.bbar = Eigen::MatrixXd::Constant(1, 1, -eta);
  return s;
}

SystemMatrices svrg_system(double eta) {
  SystemMatrices s;
  s.abar = Eigen::MatrixXd::Constant(1, 1, 1.0);
  s.bbar = Eigen::MatrixXd{{-eta, -eta}};
  return s;
}

SystemMatrices katyusha_system(const MethodSpec& spec) {
  spec.check();
  const double t1 = spec.tau1, t2 = spec.tau2;
  SystemMatrices s;
  s.abar = Eigen::MatrixXd{
      {1.0, 0.0, 0.0}, {t1, 1.0 - t1 - t2, t2}, {0.0, 0.0, 1.0}};
  s.bbar = Eigen::MatrixXd{
      {-spec.alpha, -spec.alpha, 0.0},
      {-spec.zeta, 0.0, -spec.zeta},
      {0.0, 0.0, 0.0}};
  return s;
}

Eigen::MatrixXd assemble_lhs(const LmiInstance& instance) {
  const auto& sys = instance.system;
  const int dx = sys.d_xi();
  const int dw = sys.d_w();
  const int d = dx + dw;
  if (instance.pbar.rows() != dx || instance.pbar.cols() != dx)
    throw std::invalid_argument("assemble_lhs: P dimension mismatch");
  if (static_cast<int>(instance.supply_rates.size()) != instance.lambdas.size())
    throw std::invalid_argument("assemble_lhs: multiplier count mismatch");

  Eigen::MatrixXd lhs(d, d);
  const Eigen::MatrixXd pa = instance.pbar * sys.abar;
  const Eigen::MatrixXd pb = instance.pbar * sys.bbar;
  lhs.topLeftCorner(dx, dx) =
      sys.abar.transpose() * pa - instance.rho_sq * instance.pbar;
  lhs.topRightCorner(dx, dw) = sys.abar.transpose() * pb;
  lhs.bottomLeftCorner(dw, dx) = sys.bbar.transpose() * pa;
  lhs.bottomRightCorner(dw, dw) = sys.bbar.transpose() * pb;
  for (std::size_t j = 0; j < instance.supply_rates.size(); ++j) {
    const auto& x = instance.supply_rates[j].xbar;
    if (x.rows() != d)
      throw std::invalid_argument("assemble_lhs: supply rate dimension mismatch");
    lhs -= instance.lambdas[static_cast<int>(j)] * x;
  }
  return 0.5 * (lhs + lhs.transpose());
}

Certificate verify_certificate(const LmiInstance& instance, double tol) {
  Certificate cert;
  cert.instance = instance;
  for (std::size_t j = 0; j < instance.supply_rates.size(); ++j) {
    if (instance.supply_rates[j].multiplier_sign == MultiplierSign::NonNegative &&
        instance.lambdas[static_cast<int>(j)] < -1e-12) {
      cert.failure = "negative multiplier for " + instance.supply_rates[j].name;
      cert.lhs_max_eig = max_eigenvalue(assemble_lhs(instance));
      return cert;
    }
  }
  const double p_min = min_eigenvalue(instance.pbar);
  if (p_min < -1e-12) {
    cert.failure = "P is not positive semidefinite";
    cert.lhs_max_eig = max_eigenvalue(assemble_lhs(instance));
    return cert;
  }
  cert.lhs_max_eig = max_eigenvalue(assemble_lhs(instance));
  if (cert.lhs_max_eig <= tol) {
    cert.verified = true;
  } else {
    cert.failure = "positive eigenvalue " + std::to_string(cert.lhs_max_eig);
  }
  return cert;
}

LmiInstance sg_paper_instance(const FunctionClass& fc, double eta) {
  const double L = fc.lipschitz();
  const double l1 = eta - L * eta * eta;
  const double l2 = eta * eta;
  LmiInstance inst;
  inst.system = sg_system(eta);
  inst.supply_rates = sg_supply_rates(fc);
  inst.rho_sq = 1.0 - 2.0 * l1 * fc.sigma();
  inst.pbar = Eigen::MatrixXd::Identity(1, 1);
  inst.lambdas = Eigen::Vector2d(l1, l2);
  return inst;
}

LmiInstance svrg_i_paper_instance(const FunctionClass& fc, double eta) {
  const double L = fc.lipschitz();
  const double sigma = fc.sigma();
  LmiInstance inst;
  inst.system = svrg_system(eta);
  inst.supply_rates = svrg_i_supply_rates(fc);
  inst.pbar = Eigen::MatrixXd::Identity(1, 1);
  inst.lambdas.resize(4);
  if (fc.assumption() == ComponentAssumption::SmoothConvex) {
    inst.lambdas << 2.0 * eta * eta, eta - L * eta * eta, eta * eta, L * eta * eta;
    inst.rho_sq = 1.0 - 2.0 * sigma * (eta - L * eta * eta);
  } else {  // SmoothOnly appendix certificate
    inst.lambdas << 2.0 * eta * eta, eta, eta * eta, 0.0;
    inst.rho_sq = 1.0 - 2.0 * sigma * eta + 2.0 * L * L * eta * eta;
  }
  return inst;
}

LmiInstance svrg_ii_paper_instance(const FunctionClass& fc, double eta) {
  LmiInstance inst;
  inst.system = svrg_system(eta);
  inst.supply_rates = svrg_ii_supply_rates(fc);
  inst.rho_sq = 1.0;
  inst.pbar = Eigen::MatrixXd::Identity(1, 1);
  inst.lambdas = Eigen::Vector3d(2.0 * eta * eta, 2.0 * eta * eta, eta);
  return inst;
}

LmiInstance katyusha_paper_instance(const FunctionClass& fc, const MethodSpec& spec) {
  LmiInstance inst;
  inst.system = katyusha_system(spec);
  inst.supply_rates = {katyusha_supply_rate(fc, spec)};
  const double as = spec.alpha * fc.sigma();
  inst.rho_sq = 1.0 / (1.0 + as);
  inst.pbar = Eigen::MatrixXd::Zero(3, 3);
  inst.pbar(0, 0) = (1.0 + as) / 2.0;
  inst.lambdas = Eigen::VectorXd::Constant(1, spec.alpha / spec.tau1);
  return inst;
}

std::optional<bool> katyusha_feasibility_predicate(const FunctionClass& fc,
                                                   const MethodSpec& spec) {
  const double L = fc.lipschitz();
  if (std::abs(spec.zeta - 1.0 / (3.0 * L)) > 1e-12 * (1.0 + spec.zeta))
    return std::nullopt;
  if (spec.tau2 < 0.2) return std::nullopt;
  const double bound = (5.0 * spec.tau2 - 1.0) / (9.0 * spec.alpha * L * spec.tau2);
  return spec.tau1 <= bound;
}

Certificate katyusha_certificate(const FunctionClass& fc, const MethodSpec& spec,
                                 double tol) {
  Certificate cert = verify_certificate(katyusha_paper_instance(fc, spec), tol);
  cert.analytic_feasible = katyusha_feasibility_predicate(fc, spec);
  return cert;
}

namespace {

Eigen::MatrixXd family_pbar(PFamily family, int d_xi) {
  if (family == PFamily::KatyushaAnchor) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(d_xi, d_xi);
    p(0, 0) = 1.0;
    return p;
  }
  return Eigen::MatrixXd::Identity(d_xi, d_xi);
}

double candidate_eig(LmiInstance& inst, const Eigen::VectorXd& lambdas) {
  inst.lambdas = lambdas;
  return max_eigenvalue(assemble_lhs(inst));
}

}  // namespace

SearchResult search_certificate(const SystemMatrices& system,
                                const std::vector<SupplyRate>& rates,
                                double rho_sq, PFamily family, double tol,
                                const std::vector<Eigen::VectorXd>& seeds) {
  if (!(rho_sq >= 0.0 && rho_sq <= 1.0))
    throw std::invalid_argument("search_certificate: rho_sq must lie in [0, 1]");
  const int nj = static_cast<int>(rates.size());
  LmiInstance inst;
  inst.system = system;
  inst.supply_rates = rates;
  inst.rho_sq = rho_sq;
  inst.pbar = family_pbar(family, system.d_xi());

  std::vector<Eigen::VectorXd> starts;
  for (const auto& s : seeds)
    if (s.size() == nj) starts.push_back(s);
  starts.push_back(Eigen::VectorXd::Zero(nj));

  // coarse grid over [0, 1] per multiplier (symmetric for free-sign ones)
  const int pts = nj <= 2 ? 21 : (nj == 3 ? 11 : 7);
  std::vector<int> idx(nj, 0);
  Eigen::VectorXd best_grid;
  double best_grid_eig = std::numeric_limits<double>::infinity();
  while (true) {
    Eigen::VectorXd cand(nj);
    for (int j = 0; j < nj; ++j) {
      double frac = static_cast<double>(idx[j]) / (pts - 1);
      cand[j] = rates[j].multiplier_sign == MultiplierSign::Free
                    ? 2.0 * frac - 1.0
                    : frac;
    }
    double e = candidate_eig(inst, cand);
    if (e < best_grid_eig) {
      best_grid_eig = e;
      best_grid = cand;
    }
    int j = 0;
    while (j < nj && ++idx[j] == pts) idx[j++] = 0;
    if (j == nj) break;
  }
  starts.push_back(best_grid);

  Eigen::VectorXd best = starts.front();
  double best_eig = candidate_eig(inst, best);
  for (const auto& start : starts) {
    Eigen::VectorXd cur = start;
    double cur_eig = candidate_eig(inst, cur);
    double step = 0.25;
    // the eigenvalue can be unbounded below in the multipliers, so stop as
    // soon as the target is met and cap the sweep count
    int sweeps = 0;
    while (step > 1e-14 && cur_eig > 0.5 * tol && ++sweeps <= 400) {
      bool improved = false;
      for (int j = 0; j < nj; ++j) {
        for (double dir : {+1.0, -1.0}) {
          Eigen::VectorXd trial = cur;
          trial[j] += dir * step;
          if (rates[j].multiplier_sign == MultiplierSign::NonNegative && trial[j] < 0.0)
            trial[j] = 0.0;
          double e = candidate_eig(inst, trial);
          if (e < cur_eig - 1e-16) {
            cur_eig = e;
            cur = trial;
            improved = true;
          }
        }
      }
      if (!improved) step *= 0.5;
    }
    if (cur_eig < best_eig) {
      best_eig = cur_eig;
      best = cur;
    }
    if (best_eig <= 0.5 * tol) break;
  }

  inst.lambdas = best;
  SearchResult result;
  result.best = verify_certificate(inst, tol);
  result.feasible = result.best.verified;
  return result;
}

double bisect_rate(const SystemMatrices& system,
                   const std::vector<SupplyRate>& rates, PFamily family,
                   double tol_rho, double tol,
                   const std::vector<Eigen::VectorXd>& seeds) {
  std::vector<Eigen::VectorXd> warm = seeds;
  SearchResult at_one = search_certificate(system, rates, 1.0, family, tol, warm);
  if (!at_one.feasible)
    throw std::runtime_error("bisect_rate: no certificate found even at rho^2 = 1");
  warm.push_back(at_one.best.instance.lambdas);

  double lo = 0.0, hi = 1.0;
  while (hi - lo > tol_rho) {
    double mid = 0.5 * (lo + hi);
    SearchResult r = search_certificate(system, rates, mid, family, tol, warm);
    if (r.feasible) {
      hi = mid;
      warm.push_back(r.best.instance.lambdas);
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace dissipacert
