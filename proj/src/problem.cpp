#include "dissipacert/problem.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

namespace dissipacert {

Regularizer Regularizer::quadratic_l2(double sigma_psi) {
  if (!(sigma_psi > 0.0))
    throw std::invalid_argument("QuadraticL2 regularizer needs sigma_psi > 0");
  return Regularizer{RegularizerKind::QuadraticL2, sigma_psi};
}

double Regularizer::value(const Eigen::VectorXd& x) const {
  if (kind == RegularizerKind::None) return 0.0;
  return 0.5 * sigma_psi * x.squaredNorm();
}

Eigen::VectorXd prox(const Regularizer& reg, double stepsize,
                     const Eigen::VectorXd& v) {
  if (!(stepsize > 0.0)) throw std::invalid_argument("prox: stepsize must be positive");
  if (reg.kind == RegularizerKind::None) return v;
  return v / (1.0 + stepsize * reg.sigma_psi);
}

FiniteSumProblem::FiniteSumProblem(std::vector<QuadraticComponent> components,
                                   Regularizer reg, FunctionClass fclass,
                                   Eigen::VectorXd x_star, std::uint64_t seed)
    : components_(std::move(components)), reg_(reg), fclass_(fclass),
      x_star_(std::move(x_star)), seed_(seed) {
  if (components_.empty()) throw std::invalid_argument("problem needs n >= 1");
}

Eigen::VectorXd FiniteSumProblem::component_gradient(int i, const Eigen::VectorXd& x) const {
  if (i < 0 || i >= n()) throw std::out_of_range("component index out of range");
  const auto& c = components_[i];
  return c.q * x + c.b;
}

Eigen::VectorXd FiniteSumProblem::full_gradient(const Eigen::VectorXd& x) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(p());
  for (int i = 0; i < n(); ++i) g += component_gradient(i, x);
  return g / static_cast<double>(n());
}

double FiniteSumProblem::component_value(int i, const Eigen::VectorXd& x) const {
  const auto& c = components_.at(i);
  return 0.5 * x.dot(c.q * x) + c.b.dot(x);
}

double FiniteSumProblem::smooth_value(const Eigen::VectorXd& x) const {
  double v = 0.0;
  for (int i = 0; i < n(); ++i) v += component_value(i, x);
  return v / static_cast<double>(n());
}

double FiniteSumProblem::objective(const Eigen::VectorXd& x) const {
  return smooth_value(x) + reg_.value(x);
}

double FiniteSumProblem::suboptimality(const Eigen::VectorXd& x) const {
  double gap = objective(x) - objective(x_star_);
  return std::max(gap, 0.0);
}

double FiniteSumProblem::optimality_residual() const {
  Eigen::VectorXd r = full_gradient(x_star_);
  if (composite()) r += reg_.sigma_psi * x_star_;
  return r.norm();
}

namespace {

Eigen::MatrixXd random_gaussian(std::mt19937_64& rng, int rows, int cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = normal(rng);
  return m;
}

// Random symmetric PSD matrix with spectral norm exactly `scale`.
Eigen::MatrixXd random_psd(std::mt19937_64& rng, int p, double scale) {
  Eigen::MatrixXd g = random_gaussian(rng, p, p);
  Eigen::MatrixXd s = g.transpose() * g;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s);
  double top = es.eigenvalues().maxCoeff();
  if (top <= 0.0) return Eigen::MatrixXd::Zero(p, p);
  return s * (scale / top);
}

}  // namespace

FiniteSumProblem generate_problem(std::uint64_t seed, int n, int p,
                                  const FunctionClass& fclass,
                                  const Regularizer& reg) {
  if (n < 1 || p < 1) throw std::invalid_argument("generate_problem: need n >= 1, p >= 1");
  const bool composite = reg.kind != RegularizerKind::None;
  if (composite != fclass.composite())
    throw std::invalid_argument("generate_problem: composite flag disagrees with regularizer");
  if (composite && reg.sigma_psi + 1e-15 < fclass.sigma())
    throw std::invalid_argument("generate_problem: composite class takes sigma from psi; "
                                "need sigma_psi >= sigma");

  const double sigma = fclass.sigma();
  const double L = fclass.lipschitz();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<QuadraticComponent> comps(n);
  switch (fclass.assumption()) {
    case ComponentAssumption::SmoothConvex:
    case ComponentAssumption::SmoothStronglyConvex: {
      // Composite instances draw all strong convexity from psi; otherwise a
      // sigma*I floor on every component keeps the average above sigma.
      const double floor = composite ? 0.0 : sigma;
      const double headroom = L - floor;
      for (int i = 0; i < n; ++i) {
        double amp = headroom * (0.3 + 0.7 * unit(rng));
        comps[i].q = floor * Eigen::MatrixXd::Identity(p, p) + random_psd(rng, p, amp);
      }
      break;
    }
    case ComponentAssumption::SmoothOnly: {
      // Shared strongly convex core plus zero-mean symmetric perturbations;
      // components may be indefinite but the average stays above sigma.
      const double core_amp = 0.4 * (L - sigma);
      const double pert_amp = 0.55 * (L - sigma);
      Eigen::MatrixXd core =
          sigma * Eigen::MatrixXd::Identity(p, p) + random_psd(rng, p, core_amp);
      std::vector<Eigen::MatrixXd> perts(n);
      Eigen::MatrixXd mean = Eigen::MatrixXd::Zero(p, p);
      for (int i = 0; i < n; ++i) {
        Eigen::MatrixXd h = random_gaussian(rng, p, p);
        perts[i] = (0.25 + 0.75 * unit(rng)) * 0.5 * (h + h.transpose());
        mean += perts[i];
      }
      mean /= static_cast<double>(n);
      // recenter after the per-component magnitudes so the perturbations
      // cancel exactly in the average, then cap them with one shared factor
      double top = 0.0;
      for (int i = 0; i < n; ++i) {
        perts[i] -= mean;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(perts[i]);
        top = std::max(top, es.eigenvalues().cwiseAbs().maxCoeff());
      }
      const double factor = top > 0.0 ? pert_amp / top : 0.0;
      for (int i = 0; i < n; ++i) comps[i].q = core + factor * perts[i];
      break;
    }
  }

  for (int i = 0; i < n; ++i) {
    Eigen::VectorXd beta = random_gaussian(rng, p, 1);
    comps[i].b = beta;
  }

  // Ground truth by dense solve of the (regularized) normal equations.
  Eigen::MatrixXd qbar = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd bbar = Eigen::VectorXd::Zero(p);
  for (int i = 0; i < n; ++i) {
    qbar += comps[i].q;
    bbar += comps[i].b;
  }
  qbar /= static_cast<double>(n);
  bbar /= static_cast<double>(n);
  if (composite) qbar += reg.sigma_psi * Eigen::MatrixXd::Identity(p, p);
  Eigen::VectorXd x_star = qbar.ldlt().solve(-bbar);

  FiniteSumProblem prob(std::move(comps), reg, fclass, std::move(x_star), seed);
  if (prob.optimality_residual() > 1e-10)
    throw std::runtime_error("generate_problem: minimizer residual exceeds 1e-10");
  return prob;
}

}  // namespace dissipacert
