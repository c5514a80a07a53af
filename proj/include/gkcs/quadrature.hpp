#ifndef GKCS_QUADRATURE_HPP
#define GKCS_QUADRATURE_HPP

#include <utility>

#include <Eigen/Dense>

// Quadrature over the half-line and the real line with certified
// truncation: cutoffs are chosen from the integrand's exponential decay
// rate so the discarded tail stays below a tenth of the requested
// tolerance.

namespace gkcs::quad {

enum class Scheme { gauss_legendre_composite, tanh_sinh };

struct QuadratureSpec {
  int n_nodes = 48;  // per panel for composite Gauss-Legendre, total for tanh-sinh
  double half_line_cutoff = 0.0;                    // 0 = derive from decay rate
  std::pair<double, double> real_line_cutoffs{0.0, 0.0};  // |negative|, positive
  Scheme scheme = Scheme::gauss_legendre_composite;
  double tol = 1e-10;

  void validate() const;  // throws std::domain_error on violation
};

struct Rule {
  Eigen::ArrayXd nodes;
  Eigen::ArrayXd weights;

  template <class F>
  double integrate(F&& f) const {
    double s = 0.0;
    for (Eigen::Index i = 0; i < nodes.size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
};

/// n-point Gauss-Legendre rule on [-1, 1] (Golub-Welsch; cached per n).
Rule gauss_legendre(int n);

/// Composite Gauss-Legendre over [a, b], `panels` equal panels of `n` nodes.
Rule composite_gauss_legendre(double a, double b, int panels, int n);

/// Truncated tanh-sinh rule on (a, b); robust to algebraic endpoint
/// singularities such as xi^{gamma-1/2} at 0.
Rule tanh_sinh(double a, double b, int n);

/// Smallest X with exp(-rate X^2) X^degree <= tail (solves the fixed point).
double gaussian_cutoff(double rate, double degree, double tail);

/// Smallest X with exp(-rate X) X^degree <= tail.
double exponential_cutoff(double rate, double degree, double tail);

/// Rule for integrals of psi-type integrands over (0, inf): Gaussian decay
/// exp(-beta xi^2) with polynomial degree `degree`. Honors an explicit
/// spec cutoff when given.
Rule half_line_rule(const QuadratureSpec& spec, double beta, double degree);

/// Rule for the Meixner-Pollaczek weight over R: decay exp(-2(pi-theta)x)
/// as x -> +inf and exp(-2 theta |x|) as x -> -inf, times |x|^degree.
Rule real_line_rule(const QuadratureSpec& spec, double gamma, double theta, double degree);

}  // namespace gkcs::quad

#endif
