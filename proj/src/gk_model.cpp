#include "gkcs/gk_model.hpp"

#include <cmath>
#include <stdexcept>

#include "gkcs/specfun.hpp"

namespace gkcs::gk {

GKParams GKParams::from_physical(double rho, double kappa0) {
  if (!(rho > 0.0) || !(kappa0 > 0.0)) {
    throw std::domain_error("GKParams: rho and kappa0 must be > 0");
  }
  GKParams p;
  p.rho = rho;
  p.kappa0 = kappa0;
  p.alpha = rho * kappa0 * kappa0;
  p.beta = std::sqrt(rho) / kappa0;
  p.gamma = 1.0 + 0.5 * std::sqrt(1.0 + 4.0 * p.alpha);
  p.q = p.gamma - 0.5;
  return p;
}

GKParams GKParams::from_reduced(double alpha, double beta) {
  if (!(alpha > 0.0) || !(beta > 0.0)) {
    throw std::domain_error("GKParams: alpha and beta must be > 0");
  }
  GKParams p;
  p.alpha = alpha;
  p.beta = beta;
  p.rho = beta * std::sqrt(alpha);
  p.kappa0 = std::pow(alpha, 0.25) / std::sqrt(beta);
  p.gamma = 1.0 + 0.5 * std::sqrt(1.0 + 4.0 * alpha);
  p.q = p.gamma - 0.5;
  return p;
}

double GKParams::alpha_from_gamma(double gamma) {
  const double s = 2.0 * (gamma - 1.0);
  return (s * s - 1.0) / 4.0;
}

double eigenvalue(const GKParams& p, int m) {
  return 2.0 * p.beta * (2.0 * m + p.gamma);
}

double eigenvalue_physical(double rho, double kappa0, int m) {
  const double sr = std::sqrt(rho);
  return 4.0 * sr / kappa0 *
         (m + 0.5 + 0.25 * (std::sqrt(1.0 + 4.0 * rho * kappa0 * kappa0) - 2.0 * kappa0 * sr));
}

namespace {

// L_m^{(a)}(u) as mantissa * exp(log_scale); the recurrence is rescaled
// whenever the running value passes 1e250, since the raw polynomial
// reaches e^{u/2} and beyond inside the oscillatory region.
struct Scaled {
  double mantissa;
  double log_scale;
};

Scaled scaled_laguerre(int m, double a, double u) {
  double l_prev = 0.0, l = 1.0, log_scale = 0.0;
  for (int k = 0; k < m; ++k) {
    const double l_next = ((2.0 * k + 1.0 + a - u) * l - (k + a) * l_prev) / double(k + 1);
    l_prev = l;
    l = l_next;
    const double mag = std::abs(l);
    if (mag > 1e250) {
      l *= 1e-250;
      l_prev *= 1e-250;
      log_scale += 250.0 * std::log(10.0);
    }
  }
  return {l, log_scale};
}

}  // namespace

double eigenfunction(const GKParams& p, int m, double xi) {
  if (!(xi > 0.0)) throw std::domain_error("eigenfunction: requires xi > 0");
  if (xi < 1e-300) return 0.0;
  const double u = p.beta * xi * xi;
  const double lp = 0.5 * (std::log(2.0) + p.gamma * std::log(p.beta) +
                           specfun::log_gamma(double(m) + 1.0) -
                           specfun::log_gamma(p.gamma + m)) +
                    (p.gamma - 0.5) * std::log(xi) - 0.5 * u;
  const Scaled l = scaled_laguerre(m, p.gamma - 1.0, u);
  return std::exp(lp + l.log_scale) * l.mantissa;
}

Eigen::ArrayXd eigenfunction_grid(const GKParams& p, int m, const Eigen::ArrayXd& xi) {
  Eigen::ArrayXd out(xi.size());
  for (Eigen::Index i = 0; i < xi.size(); ++i) out[i] = eigenfunction(p, m, xi[i]);
  return out;
}

Eigen::MatrixXd basis_matrix(const GKParams& p, int m_max, const Eigen::ArrayXd& xi) {
  Eigen::MatrixXd out(m_max + 1, xi.size());
  const double a = p.gamma - 1.0;
  for (Eigen::Index i = 0; i < xi.size(); ++i) {
    const double x = xi[i];
    if (!(x > 0.0)) throw std::domain_error("basis_matrix: grid points must be > 0");
    const double u = p.beta * x * x;
    const double base = (p.gamma - 0.5) * std::log(x) - 0.5 * u +
                        0.5 * (std::log(2.0) + p.gamma * std::log(p.beta) -
                               specfun::log_gamma(p.gamma));
    // norm ratio sqrt(Gamma(gamma) m!/Gamma(gamma+m)) folded in; running
    // rescale keeps the Laguerre recurrence inside double range.
    double l_prev = 0.0, l = 1.0, log_scale = 0.0;
    double nr = 1.0;
    for (int m = 0; m <= m_max; ++m) {
      out(m, i) = std::exp(base + log_scale) * nr * l;
      const double l_next = ((2.0 * m + 1.0 + a - u) * l - (m + a) * l_prev) / double(m + 1);
      l_prev = l;
      l = l_next;
      if (std::abs(l) > 1e250) {
        l *= 1e-250;
        l_prev *= 1e-250;
        log_scale += 250.0 * std::log(10.0);
      }
      nr *= std::sqrt(double(m + 1) / (p.gamma + m));
    }
  }
  return out;
}

}  // namespace gkcs::gk
