#ifndef DISSIPACERT_JACOBI_HPP
#define DISSIPACERT_JACOBI_HPP

#include <cmath>
#include <stdexcept>

#include <Eigen/Core>

namespace dissipacert {

/// Eigenvalues of a small dense symmetric matrix by cyclic Jacobi sweeps.
/// Converges for every symmetric input; throws if the off-diagonal mass has
/// not collapsed after the sweep budget.
inline Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd a,
                                          double tol = 1e-14,
                                          int max_sweeps = 64) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw std::invalid_argument("jacobi_eigenvalues: matrix must be square");
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * (1.0 + a.cwiseAbs().maxCoeff()))
    throw std::invalid_argument("jacobi_eigenvalues: matrix must be symmetric");
  a = 0.5 * (a + a.transpose());

  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale) {
      return a.diagonal();
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = a(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        double t = (theta >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  throw std::runtime_error("jacobi_eigenvalues: did not converge");
}

inline double max_eigenvalue(const Eigen::MatrixXd& a) {
  return jacobi_eigenvalues(a).maxCoeff();
}

inline double min_eigenvalue(const Eigen::MatrixXd& a) {
  return jacobi_eigenvalues(a).minCoeff();
}

}  // namespace dissipacert

#endif
