#include "gkcs/coherent.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gkcs/detail/tail.hpp"

namespace gkcs::coherent {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kRealnessTol = 1e-9;
}  // namespace

CSLabel::CSLabel(double x_, double theta_, double epsilon_, const gk::GKParams& params_)
    : x(x_), theta(theta_), epsilon(epsilon_), params(params_) {
  if (!(theta > 0.0 && theta < kPi)) throw std::domain_error("CSLabel: theta must be in (0, pi)");
  if (!(epsilon > 0.0)) throw std::domain_error("CSLabel: epsilon must be > 0");
  if (!(params.gamma > 1.0)) throw std::domain_error("CSLabel: requires gamma > 1");
}

double log_sigma(const CSLabel& label, int m) {
  const double g = label.params.gamma;
  return specfun::log_gamma(g + m) - specfun::log_gamma(g) - specfun::log_gamma(double(m) + 1.0) +
         2.0 * label.params.beta * (2.0 * m + g) * label.epsilon;
}

double sigma(const CSLabel& label, int m) {
  const double ls = log_sigma(label, m);
  if (ls > 709.0) {
    throw std::overflow_error("sigma: weight exceeds double range (log " + std::to_string(ls) + ")");
  }
  return std::exp(ls);
}

SeriesEval normalization_series(const CSLabel& label, SeriesOptions opts) {
  const double g = label.params.gamma;
  const double be = label.params.beta * label.epsilon;
  const double decay = std::exp(-4.0 * be);
  specfun::MPPolyStream ps(label.mp_params(), label.x);
  double coeff = std::exp(-2.0 * be * g);  // e^{-2 eps beta gamma} m!/(gamma)_m e^{-4 eps beta m}
  double sum = 0.0;
  detail::TailEstimator est;
  int small_streak = 0;
  for (int m = 0; m < opts.max_terms; ++m) {
    const double p = ps.current();
    const double term = coeff * p * p;
    sum += term;
    est.push(term);
    small_streak = term <= opts.tolerance * sum ? small_streak + 1 : 0;
    if (small_streak >= 3) {
      const double tail = est.tail(term);
      if (tail <= opts.tolerance * sum) {
        return {Complex(sum, 0.0), m + 1, tail, true};
      }
    }
    coeff *= double(m + 1) / (g + m) * decay;
    ps.advance();
  }
  SeriesEval partial{Complex(sum, 0.0), opts.max_terms, 0.0, false};
  throw ConvergenceError("normalization_series: term cap reached", partial);
}

Complex normalization_closed_complex(const CSLabel& label, SeriesOptions opts) {
  const double mu = std::exp(-4.0 * label.epsilon * label.params.beta);
  return std::exp(-2.0 * label.epsilon * label.params.beta * label.params.gamma) *
         specfun::mp_bilinear_closed(mu, label.params.gamma, label.x, label.x,
                                     label.theta, label.theta, opts);
}

double normalization_closed(const CSLabel& label, SeriesOptions opts) {
  const Complex n = normalization_closed_complex(label, opts);
  if (std::abs(n.imag()) > kRealnessTol * std::abs(n)) {
    throw IdentityViolation("normalization_closed: imaginary residue above 1e-9 |N|",
                            std::abs(n.imag()) / std::abs(n));
  }
  return n.real();
}

Complex cs_wavefunction_series(const CSLabel& label, double xi, SeriesOptions opts) {
  const SeriesOptions n_opts{opts.tolerance, 10000};
  return cs_wavefunction_series(label, xi, normalization_series(label, n_opts).value.real(),
                                opts);
}

Complex cs_wavefunction_series(const CSLabel& label, double xi, double n,
                               SeriesOptions opts) {
  if (!(xi > 0.0)) throw std::domain_error("cs_wavefunction_series: requires xi > 0");
  opts.max_terms = std::min(opts.max_terms, 2000);
  const double g = label.params.gamma;
  const double beta = label.params.beta;
  const double be = beta * label.epsilon;
  const double u = beta * xi * xi;

  // term_m = P_m e^{-2 be m} * c_m * L_m^{(gamma-1)}(u), with
  // c_m = e^{-be gamma} sqrt(2 beta^gamma/Gamma(gamma)) xi^{gamma-1/2} e^{-u/2}
  //       * Gamma(gamma) m! / Gamma(gamma+m)   (both sqrt ratios combined)
  specfun::MPPolyStream ps(label.mp_params(), label.x);
  double l_prev = 0.0, l = 1.0;
  const double a = g - 1.0;
  double coeff = std::exp(-be * g + 0.5 * (std::log(2.0) + g * std::log(beta) -
                                           specfun::log_gamma(g)) +
                          (g - 0.5) * std::log(xi) - 0.5 * u);
  const double decay = std::exp(-2.0 * be);
  double sum = 0.0;
  detail::TailEstimator est;
  int small_streak = 0;
  for (int m = 0; m < opts.max_terms; ++m) {
    const double term = coeff * ps.current() * l;
    sum += term;
    const double tmag = std::abs(term);
    est.push(tmag);
    const double smag = std::max(std::abs(sum), 1e-30);
    small_streak = tmag <= opts.tolerance * smag ? small_streak + 1 : 0;
    if (small_streak >= 3) {
      const double tail = est.tail(tmag);
      if (tail <= opts.tolerance * smag) {
        return Complex(sum / std::sqrt(n), 0.0);
      }
    }
    const double l_next = ((2.0 * m + 1.0 + a - u) * l - (m + a) * l_prev) / double(m + 1);
    l_prev = l;
    l = l_next;
    coeff *= double(m + 1) / (g + m) * decay;
    ps.advance();
  }
  SeriesEval partial{Complex(sum, 0.0), opts.max_terms, 0.0, false};
  throw ConvergenceError("cs_wavefunction_series: term cap reached", partial);
}

Complex cs_wavefunction_closed(const CSLabel& label, double xi, SeriesOptions opts) {
  return cs_wavefunction_closed(label, xi, normalization_closed(label, opts), opts);
}

Complex cs_wavefunction_closed(const CSLabel& label, double xi, double n,
                               SeriesOptions opts) {
  if (!(xi > 0.0)) throw std::domain_error("cs_wavefunction_closed: requires xi > 0");
  const double g = label.params.gamma;
  const double beta = label.params.beta;
  const double r = std::exp(-2.0 * beta * label.epsilon);
  const double st = std::sin(label.theta);
  const double ct = std::cos(label.theta);
  const double u = beta * xi * xi;
  // |1 - tau|^2 and arg(1 - tau); Re(1 - tau) > 0 since r < 1
  const double a2 = 1.0 - 2.0 * r * ct + r * r;
  const double phi = std::atan2(-r * st, 1.0 - r * ct);

  const double log_real_pref =
      0.5 * (std::log(2.0) + g * std::log(beta) - specfun::log_gamma(g)) -
      label.epsilon * beta * g - 0.5 * g * std::log(a2) - 2.0 * label.x * phi -
      0.5 * std::log(n) + (g - 0.5) * std::log(xi);
  // exp(-u (1+tau)/(2(1-tau))) = exp(-u (1 - r^2 + 2 i r sin theta)/(2 |1-tau|^2))
  const Complex gauss = -0.5 * u / a2 * Complex(1.0 - r * r, 2.0 * r * st);
  const SeriesEval f =
      specfun::hyp1f1(Complex(0.5 * g, label.x), Complex(g, 0.0),
                      Complex(0.0, 2.0 * u * st * r / a2), opts);
  return std::exp(log_real_pref + gauss) * f.value;
}

Complex overlap(const CSLabel& label1, const CSLabel& label2, SeriesOptions opts) {
  const bool shared = label1.theta == label2.theta && label1.epsilon == label2.epsilon &&
                      label1.params.beta == label2.params.beta &&
                      label1.params.gamma == label2.params.gamma;
  if (!shared) throw std::domain_error("overlap: labels must share (theta, gamma, beta, epsilon)");
  const double be = label1.params.beta * label1.epsilon;
  const double mu = std::exp(-4.0 * be);
  const Complex bil = specfun::mp_bilinear_closed(mu, label1.params.gamma, label1.x, label2.x,
                                                  label1.theta, label1.theta, opts);
  const double n1 = normalization_closed(label1, opts);
  const double n2 = normalization_closed(label2, opts);
  return std::exp(-2.0 * be * label1.params.gamma) * bil / std::sqrt(n1 * n2);
}

double coefficient_weight(double gamma, double theta, double x) {
  const double nu = 0.5 * gamma;
  const double st = std::sin(theta);
  const double log_w = (2.0 * nu - 1.0) * std::log(2.0 * st) + std::log(st / kPi) -
                       (kPi - 2.0 * theta) * x +
                       2.0 * specfun::log_gamma(Complex(nu, x)).real() -
                       specfun::log_gamma(gamma);
  return std::exp(log_w);
}

double measure_density(const CSLabel& label, SeriesOptions opts) {
  return normalization_closed(label, opts) *
         coefficient_weight(label.params.gamma, label.theta, label.x);
}

}  // namespace gkcs::coherent
