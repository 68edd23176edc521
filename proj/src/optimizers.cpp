#include "dissipacert/optimizers.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace dissipacert {

std::string to_string(Method m) {
  switch (m) {
    case Method::SG: return "sg";
    case Method::SvrgOptionI: return "svrg1";
    case Method::SvrgOptionII: return "svrg2";
    case Method::Katyusha: return "katyusha";
  }
  return "?";
}

Method method_from_string(const std::string& s) {
  if (s == "sg") return Method::SG;
  if (s == "svrg1") return Method::SvrgOptionI;
  if (s == "svrg2") return Method::SvrgOptionII;
  if (s == "katyusha") return Method::Katyusha;
  throw std::invalid_argument("unknown method: " + s);
}

void MethodSpec::check() const {
  if (m < 1) throw std::invalid_argument("MethodSpec: m must be >= 1");
  switch (family) {
    case Method::SG:
    case Method::SvrgOptionI:
    case Method::SvrgOptionII:
      if (!(eta >= 0.0)) throw std::invalid_argument("MethodSpec: eta must be >= 0");
      break;
    case Method::Katyusha:
      if (!(tau1 > 0.0 && tau2 > 0.0 && tau1 + tau2 <= 1.0 + 1e-15))
        throw std::invalid_argument("MethodSpec: need tau1 > 0, tau2 > 0, tau1 + tau2 <= 1");
      if (!(alpha > 0.0 && zeta > 0.0))
        throw std::invalid_argument("MethodSpec: need alpha > 0 and zeta > 0");
      break;
  }
}

MethodSpec MethodSpec::katyusha_recipe(double sigma, double lipschitz, int m) {
  MethodSpec spec;
  spec.family = Method::Katyusha;
  spec.m = m;
  spec.tau2 = 0.5;
  spec.tau1 = std::min(std::sqrt(m * sigma / (3.0 * lipschitz)), 0.5);
  spec.alpha = 1.0 / (3.0 * spec.tau1 * lipschitz);
  spec.zeta = 1.0 / (3.0 * lipschitz);
  spec.check();
  return spec;
}

std::uint64_t epoch_seed(std::uint64_t seed, int epoch) {
  // splitmix64 of (seed + epoch+1)
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(epoch) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

int sample_index(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> dist(0, n - 1);
  return dist(rng);
}

}  // namespace

EpochTrace run_sg(const FiniteSumProblem& prob, double eta, int steps,
                  const Eigen::VectorXd& x0, std::uint64_t seed) {
  if (!(eta >= 0.0)) throw std::invalid_argument("run_sg: eta must be >= 0");
  std::mt19937_64 rng(seed);
  EpochTrace tr;
  tr.family = Method::SG;
  tr.anchor = x0;
  tr.x.reserve(steps + 1);
  tr.x.push_back(x0);
  for (int k = 0; k < steps; ++k) {
    int i = sample_index(rng, prob.n());
    Eigen::VectorXd w = prob.component_gradient(i, tr.x.back());
    tr.indices.push_back(i + 1);
    tr.w_r.push_back(w);
    tr.x.push_back(tr.x.back() - eta * w);
  }
  tr.output = tr.x.back();
  return tr;
}

EpochTrace run_svrg_epoch(const FiniteSumProblem& prob, double eta, int m,
                          Method option, const Eigen::VectorXd& x_tilde,
                          std::uint64_t seed) {
  if (m < 1) throw std::invalid_argument("run_svrg_epoch: m must be >= 1");
  if (option != Method::SvrgOptionI && option != Method::SvrgOptionII)
    throw std::invalid_argument("run_svrg_epoch: option must be svrg1 or svrg2");
  std::mt19937_64 rng(seed);
  const Eigen::VectorXd full = prob.full_gradient(x_tilde);  // once per epoch

  EpochTrace tr;
  tr.family = option;
  tr.anchor = x_tilde;
  tr.x.reserve(m + 1);
  tr.x.push_back(x_tilde);
  for (int k = 0; k < m; ++k) {
    int i = sample_index(rng, prob.n());
    const Eigen::VectorXd& xk = tr.x.back();
    Eigen::VectorXd r = prob.component_gradient(i, xk) -
                        prob.component_gradient(i, prob.x_star());
    Eigen::VectorXd u = prob.component_gradient(i, prob.x_star()) -
                        prob.component_gradient(i, x_tilde) + full;
    tr.indices.push_back(i + 1);
    tr.w_r.push_back(r);
    tr.w_u.push_back(u);
    tr.x.push_back(xk - eta * r - eta * u);
  }
  if (option == Method::SvrgOptionI) {
    tr.output = tr.x.back();
  } else {
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(prob.p());
    for (int k = 0; k < m; ++k) avg += tr.x[k];  // x_0 .. x_{m-1}
    tr.output = avg / static_cast<double>(m);
  }
  return tr;
}

EpochTrace run_katyusha_epoch(const FiniteSumProblem& prob, const MethodSpec& spec,
                              const Eigen::VectorXd& x_tilde, std::uint64_t seed) {
  if (spec.family != Method::Katyusha)
    throw std::invalid_argument("run_katyusha_epoch: spec must be Katyusha");
  spec.check();
  if (!prob.composite())
    throw std::invalid_argument("run_katyusha_epoch: problem must be composite");
  std::mt19937_64 rng(seed);
  const double tau1 = spec.tau1, tau2 = spec.tau2;
  const double tau3 = 1.0 - tau1 - tau2;
  const double alpha = spec.alpha, zeta = spec.zeta;
  const double sigma_psi = prob.regularizer().strong_convexity();
  const Eigen::VectorXd full = prob.full_gradient(x_tilde);

  EpochTrace tr;
  tr.family = Method::Katyusha;
  tr.anchor = x_tilde;
  tr.z.push_back(x_tilde);
  tr.y.push_back(x_tilde);
  for (int k = 0; k < spec.m; ++k) {
    const Eigen::VectorXd& zk = tr.z.back();
    const Eigen::VectorXd& yk = tr.y.back();
    Eigen::VectorXd q = tau1 * zk + tau2 * x_tilde + tau3 * yk;
    int i = sample_index(rng, prob.n());
    Eigen::VectorXd v = prob.component_gradient(i, q) -
                        prob.component_gradient(i, x_tilde) + full;
    Eigen::VectorXd znext = prox(prob.regularizer(), alpha, zk - alpha * v);
    Eigen::VectorXd ynext = prox(prob.regularizer(), zeta, q - zeta * v);
    tr.indices.push_back(i + 1);
    tr.q.push_back(q);
    tr.v.push_back(v);
    // prox optimality residuals; exact subgradients of psi for QuadraticL2
    tr.g_sub.push_back(sigma_psi * znext);
    tr.h_sub.push_back(sigma_psi * ynext);
    tr.z.push_back(znext);
    tr.y.push_back(ynext);
  }

  // (1 + sigma_psi * alpha)-geometric weighted average of y_1 .. y_m
  const double growth = 1.0 + sigma_psi * alpha;
  double wsum = 0.0, wj = 1.0;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(prob.p());
  for (int j = 0; j < spec.m; ++j) {
    acc += wj * tr.y[j + 1];
    wsum += wj;
    wj *= growth;
  }
  tr.output = acc / wsum;
  return tr;
}

double lyapunov_value(const FiniteSumProblem& prob, Method family,
                      const Eigen::VectorXd& x) {
  switch (family) {
    case Method::SG:
    case Method::SvrgOptionI:
      return (x - prob.x_star()).squaredNorm();
    case Method::SvrgOptionII:
    case Method::Katyusha:
      return prob.suboptimality(x);
  }
  return 0.0;
}

std::vector<EpochSummary> run_epochs(const FiniteSumProblem& prob,
                                     const MethodSpec& spec, int num_epochs,
                                     const Eigen::VectorXd& x_tilde0,
                                     std::uint64_t seed) {
  if (num_epochs < 1) throw std::invalid_argument("run_epochs: num_epochs must be >= 1");
  spec.check();
  std::vector<EpochSummary> out;
  Eigen::VectorXd anchor = x_tilde0;
  for (int s = 0; s < num_epochs; ++s) {
    std::uint64_t es = epoch_seed(seed, s);
    EpochTrace tr;
    switch (spec.family) {
      case Method::SG:
        tr = run_sg(prob, spec.eta, spec.m, anchor, es);
        break;
      case Method::SvrgOptionI:
      case Method::SvrgOptionII:
        tr = run_svrg_epoch(prob, spec.eta, spec.m, spec.family, anchor, es);
        break;
      case Method::Katyusha:
        tr = run_katyusha_epoch(prob, spec, anchor, es);
        break;
    }
    EpochSummary summary;
    summary.epoch = s;
    summary.v_before = lyapunov_value(prob, spec.family, anchor);
    summary.v_after = lyapunov_value(prob, spec.family, tr.output);
    summary.anchor_norm = tr.output.norm();
    out.push_back(summary);
    anchor = tr.output;
  }
  return out;
}

}  // namespace dissipacert
