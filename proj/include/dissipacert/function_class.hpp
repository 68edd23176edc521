#ifndef DISSIPACERT_FUNCTION_CLASS_HPP
#define DISSIPACERT_FUNCTION_CLASS_HPP

#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace dissipacert {

/// Regularity assumption on each component f_i.
enum class ComponentAssumption {
  SmoothConvex,          // L-smooth and convex
  SmoothStronglyConvex,  // L-smooth and sigma-strongly convex
  SmoothOnly             // L-smooth, possibly nonconvex
};

inline std::string to_string(ComponentAssumption a) {
  switch (a) {
    case ComponentAssumption::SmoothConvex: return "SmoothConvex";
    case ComponentAssumption::SmoothStronglyConvex: return "SmoothStronglyConvex";
    case ComponentAssumption::SmoothOnly: return "SmoothOnly";
  }
  return "?";
}

inline ComponentAssumption component_assumption_from_string(const std::string& s) {
  if (s == "SmoothConvex") return ComponentAssumption::SmoothConvex;
  if (s == "SmoothStronglyConvex") return ComponentAssumption::SmoothStronglyConvex;
  if (s == "SmoothOnly") return ComponentAssumption::SmoothOnly;
  throw std::invalid_argument("unknown component assumption: " + s);
}

/// Smoothness/strong-convexity parameters of the objective together with the
/// assumption placed on the individual components. Immutable value type.
class FunctionClass {
 public:
  FunctionClass(double sigma, double lipschitz, ComponentAssumption assumption,
                bool composite = false)
      : sigma_(sigma), lipschitz_(lipschitz), assumption_(assumption),
        composite_(composite) {
    if (!(sigma > 0.0))
      throw std::invalid_argument("FunctionClass: sigma must be positive");
    if (!(lipschitz >= sigma))
      throw std::invalid_argument("FunctionClass: need sigma <= lipschitz");
  }

  double sigma() const { return sigma_; }
  double lipschitz() const { return lipschitz_; }
  ComponentAssumption assumption() const { return assumption_; }
  bool composite() const { return composite_; }

 private:
  double sigma_;
  double lipschitz_;
  ComponentAssumption assumption_;
  bool composite_;
};

inline double condition_number(const FunctionClass& fc) {
  return fc.lipschitz() / fc.sigma();
}

/// The 2x2 interpolation matrix M acting on (x - x*, grad difference).
/// The quadratic form with M (Kronecker-lifted) is nonpositive in expectation
/// for any pair drawn from the component class.
inline Eigen::Matrix2d component_iqc_matrix(const FunctionClass& fc) {
  const double sigma = fc.sigma();
  const double L = fc.lipschitz();
  Eigen::Matrix2d m;
  switch (fc.assumption()) {
    case ComponentAssumption::SmoothStronglyConvex:
      m << 2.0 * sigma * L, -(sigma + L), -(sigma + L), 2.0;
      break;
    case ComponentAssumption::SmoothConvex:
      m << 0.0, -L, -L, 2.0;
      break;
    case ComponentAssumption::SmoothOnly:
      m << -2.0 * L * L, 0.0, 0.0, 2.0;
      break;
  }
  return m;
}

}  // namespace dissipacert

#endif
