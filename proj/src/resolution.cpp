#include "gkcs/resolution.hpp"

#include <cmath>
#include <stdexcept>

#include "gkcs/coherent.hpp"
#include "gkcs/detail/tail.hpp"
#include "gkcs/specfun.hpp"

namespace gkcs::resolution {

double orthogonality_integral(int m, int j, double gamma, double theta,
                              const quad::QuadratureSpec& spec) {
  const quad::Rule rule = quad::real_line_rule(spec, gamma, theta, double(m + j));
  const specfun::MPPolyParams mp{0.5 * gamma, theta};
  const int top = std::max(m, j);
  double sum = 0.0;
  for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
    const double x = rule.nodes[i];
    specfun::MPPolyStream ps(mp, x);
    double pm = 0.0, pj = 0.0;
    for (int k = 0; k <= top; ++k) {
      if (k == m) pm = ps.current();
      if (k == j) pj = ps.current();
      ps.advance();
    }
    sum += rule.weights[i] * pm * pj * coherent::coefficient_weight(gamma, theta, x);
  }
  return sum;
}

Eigen::MatrixXd orthogonality_matrix(int m_max, double gamma, double theta,
                                     const quad::QuadratureSpec& spec) {
  const quad::Rule rule = quad::real_line_rule(spec, gamma, theta, double(2 * m_max));
  const specfun::MPPolyParams mp{0.5 * gamma, theta};
  const Eigen::Index n = rule.nodes.size();
  Eigen::MatrixXd P(m_max + 1, n);
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    specfun::MPPolyStream ps(mp, x);
    for (int k = 0; k <= m_max; ++k) {
      P(k, i) = ps.current();
      ps.advance();
    }
    w[i] = rule.weights[i] * coherent::coefficient_weight(gamma, theta, x);
  }
  return P * w.asDiagonal() * P.transpose();
}

int default_m_cap(double beta, double epsilon) {
  const double m = std::ceil(std::log(1e14) / (4.0 * beta * epsilon));
  return int(std::min(m, 5000.0));
}

namespace {

// Classical turning point of psi_m: beta^2 xi^2 = lambda_m.
double turning_point(const gk::GKParams& p, int m) {
  return std::sqrt(2.0 * (2.0 * m + p.gamma) / p.beta);
}

void build_projection(SpectralProjection& proj, const std::function<double(double)>& phi,
                      int m_cap, double cutoff, const quad::QuadratureSpec& spec) {
  quad::QuadratureSpec s = spec;
  s.half_line_cutoff = cutoff;
  if (s.scheme == quad::Scheme::gauss_legendre_composite) {
    // panel width 0.5 resolves the fastest oscillation of psi_{m_cap}
    proj.rule = quad::composite_gauss_legendre(0.0, cutoff,
                                               std::max(1, int(std::ceil(cutoff / 0.5))),
                                               s.n_nodes);
  } else {
    proj.rule = quad::half_line_rule(s, proj.params.beta, 2.0 * proj.params.gamma);
  }
  const Eigen::Index n = proj.rule.nodes.size();
  proj.phi_values.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) proj.phi_values[i] = phi(proj.rule.nodes[i]);
  proj.basis = gk::basis_matrix(proj.params, m_cap, proj.rule.nodes.array());
  const Eigen::VectorXd wphi = proj.rule.weights.matrix().asDiagonal() * proj.phi_values;
  proj.coeffs = proj.basis * wphi;
  proj.phi_norm = std::sqrt(proj.phi_values.dot(
      proj.rule.weights.matrix().asDiagonal() * proj.phi_values));
}

}  // namespace

SpectralProjection project(const gk::GKParams& params,
                           const std::function<double(double)>& phi, int m_cap,
                           const quad::QuadratureSpec& spec) {
  spec.validate();
  SpectralProjection proj;
  proj.params = params;
  // Start with a rule wide enough for the first ~80 modes, then widen until
  // every mode carrying measurable coefficient mass has its oscillatory
  // support inside the rule. Modes beyond that contribute below 1e-9 ||phi||
  // and need no nodes of their own.
  double cutoff = spec.half_line_cutoff;
  if (cutoff > 0.0) {
    build_projection(proj, phi, m_cap, cutoff, spec);
    return proj;
  }
  cutoff = turning_point(params, std::min(m_cap, 80)) + 4.0;
  for (int pass = 0; pass < 4; ++pass) {
    build_projection(proj, phi, m_cap, cutoff, spec);
    int m_sig = 0;
    for (int m = 0; m <= m_cap; ++m) {
      if (std::abs(proj.coeffs[m]) >= 1e-9 * proj.phi_norm) m_sig = m;
    }
    const double needed = turning_point(params, m_sig) + 4.0;
    if (needed <= cutoff) break;
    cutoff = needed;
  }
  return proj;
}

Eigen::VectorXd apply_o_epsilon(const SpectralProjection& proj, double epsilon) {
  const int m_cap = int(proj.basis.rows()) - 1;
  Eigen::VectorXd damped(m_cap + 1);
  for (int m = 0; m <= m_cap; ++m) {
    damped[m] = std::exp(-2.0 * proj.params.beta * (2.0 * m + proj.params.gamma) * epsilon) *
                proj.coeffs[m];
  }
  return proj.basis.transpose() * damped;
}

double apply_o_epsilon_at(const gk::GKParams& params,
                          const std::function<double(double)>& phi, double u,
                          double epsilon, int m_cap, const quad::QuadratureSpec& spec) {
  if (!(u > 0.0)) throw std::domain_error("apply_o_epsilon_at: requires u > 0");
  if (m_cap <= 0) m_cap = default_m_cap(params.beta, epsilon);
  const SpectralProjection proj = project(params, phi, m_cap, spec);
  double sum = 0.0;
  for (int m = 0; m <= m_cap; ++m) {
    sum += std::exp(-2.0 * params.beta * (2.0 * m + params.gamma) * epsilon) *
           proj.coeffs[m] * gk::eigenfunction(params, m, u);
  }
  return sum;
}

double relative_l2_error(const SpectralProjection& proj, double epsilon) {
  const Eigen::VectorXd smoothed = apply_o_epsilon(proj, epsilon);
  const Eigen::VectorXd diff = smoothed - proj.phi_values;
  const double err = std::sqrt(diff.dot(proj.rule.weights.matrix().asDiagonal() * diff));
  return err / proj.phi_norm;
}

SeriesEval bilinear_kernel_series(double rho, double gamma, double a, double b,
                                  SeriesOptions opts) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("bilinear_kernel_series: rho in (0,1)");
  double la_prev = 0.0, la = 1.0;
  double lb_prev = 0.0, lb = 1.0;
  const double al = gamma - 1.0;
  double coeff = std::exp(-specfun::log_gamma(gamma));  // rho^m m!/Gamma(m+gamma)
  double sum = 0.0;
  detail::TailEstimator est;
  int small_streak = 0;
  for (int m = 0; m < opts.max_terms; ++m) {
    const double term = coeff * la * lb;
    sum += term;
    const double tmag = std::abs(term);
    est.push(tmag);
    const double smag = std::max(1.0, std::abs(sum));
    small_streak = tmag <= opts.tolerance * smag ? small_streak + 1 : 0;
    if (small_streak >= 3) {
      const double tail = est.tail(tmag);
      if (tail <= opts.tolerance * smag) {
        return {Complex(sum, 0.0), m + 1, tail, true};
      }
    }
    const double la_next = ((2.0 * m + 1.0 + al - a) * la - (m + al) * la_prev) / double(m + 1);
    la_prev = la;
    la = la_next;
    const double lb_next = ((2.0 * m + 1.0 + al - b) * lb - (m + al) * lb_prev) / double(m + 1);
    lb_prev = lb;
    lb = lb_next;
    coeff *= rho * double(m + 1) / (gamma + m);
  }
  SeriesEval partial{Complex(sum, 0.0), opts.max_terms, 0.0, false};
  throw ConvergenceError("bilinear_kernel_series: term cap reached", partial);
}

double bilinear_kernel_closed(double rho, double gamma, double a, double b) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::domain_error("bilinear_kernel_closed: rho in (0,1)");
  if (!(a >= 0.0 && b >= 0.0)) throw std::domain_error("bilinear_kernel_closed: a, b >= 0");
  const double om = 1.0 - rho;
  const double w = a * b * rho / (om * om);
  // sum_k w^k/(k! Gamma(gamma+k)), rescaled on the fly so the running
  // term never overflows (w can reach ~1e4 where the largest term is
  // ~e^{2 sqrt(w)}).
  double log_scale = -specfun::log_gamma(gamma);
  double term = 1.0;
  double sum = term;
  for (int k = 0; k < 100000; ++k) {
    term *= w / (double(k + 1) * (gamma + k));
    sum += term;
    if (term <= 1e-17 * sum) break;
    if (sum > 1e280) {
      sum *= 1e-280;
      term *= 1e-280;
      log_scale += 280.0 * std::log(10.0);
    }
  }
  const double log_k = -gamma * std::log(om) - rho * (a + b) / om + std::log(sum) + log_scale;
  return std::exp(log_k);
}

ConvergenceTrace poisson_limit_experiment(double gamma, double beta,
                                          const std::function<double(double)>& phi,
                                          const std::vector<double>& eps_ladder,
                                          const quad::QuadratureSpec& spec) {
  if (eps_ladder.empty()) throw std::domain_error("poisson_limit_experiment: empty ladder");
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0.0)) throw std::domain_error("poisson_limit_experiment: ladder must be positive");
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1])) {
      throw std::domain_error("poisson_limit_experiment: ladder must be strictly decreasing");
    }
  }
  const gk::GKParams params =
      gk::GKParams::from_reduced(gk::GKParams::alpha_from_gamma(gamma), beta);
  const int m_cap = default_m_cap(beta, eps_ladder.back());
  const SpectralProjection proj = project(params, phi, m_cap, spec);
  ConvergenceTrace trace;
  trace.epsilons = eps_ladder;
  for (double eps : eps_ladder) trace.errors.push_back(relative_l2_error(proj, eps));
  for (std::size_t i = 0; i + 1 < trace.errors.size(); ++i) {
    trace.rates.push_back(trace.errors[i] / trace.errors[i + 1]);
  }
  return trace;
}

}  // namespace gkcs::resolution
