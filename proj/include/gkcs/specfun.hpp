#ifndef GKCS_SPECFUN_HPP
#define GKCS_SPECFUN_HPP

#include <complex>

#include "gkcs/series.hpp"

// Complex-parameter special functions: Pochhammer symbols, log-gamma,
// confluent and Gauss hypergeometric functions, generalized Laguerre and
// Meixner-Pollaczek polynomials, and the two bilinear generating identities
// the coherent-state construction rests on. All functions are pure and
// deterministic; everything is double precision with explicit error
// reporting rather than silent loss.

namespace gkcs::specfun {

/// Rising factorial (a)_m = a(a+1)...(a+m-1), (a)_0 = 1. Computed by direct
/// product: exact for the terminating cases and free of gamma poles at
/// non-positive-integer a.
Complex pochhammer(Complex a, int m);
double pochhammer(double a, int m);

/// Principal-branch log Gamma for Re z > 0, <= ~1e-14 relative error.
/// Throws std::domain_error for Re z <= 0.
Complex log_gamma(Complex z);
double log_gamma(double z);

Complex gamma(Complex z);
double gamma(double z);

/// |Gamma(nu + ix)|^2 for nu > 0, exp(2 Re log_gamma). Underflows to 0
/// gracefully for large |x|.
double abs_gamma_sq(double nu, double x);

/// Test-only hook: adds `delta` to one embedded log-gamma rational
/// coefficient so downstream verification suites can prove they detect a
/// corrupted constant. Not thread-safe; set once at startup, default 0.
void set_lanczos_perturbation(double delta);

/// Confluent hypergeometric 1F1(a; c; z).
///
/// Terminating a = -m is summed exactly. Otherwise the Kummer transform is
/// applied for Re z < 0, and the Taylor series is accumulated in double,
/// in double-double (12 < |z| < 35, where the largest term exceeds the sum
/// by up to e^35), or replaced by the large-|z| asymptotic expansion
/// (|z| >= 35). Throws ConvergenceError if the tail cannot be certified
/// below tolerance, std::domain_error for c a non-positive integer that is
/// reached by the sum.
SeriesEval hyp1f1(Complex a, Complex c, Complex z, SeriesOptions opts = {});

/// Gauss hypergeometric 2F1(a, b; c; z) on the domains exercised here:
/// terminating a or b = -m (any z), or non-terminating with z real <= 0
/// (Pfaff transform to [0,1)) or |z| < 1 (direct series). Terminating sums
/// with m > 12 are accumulated in double-double when c is real.
SeriesEval hyp2f1(Complex a, Complex b, Complex c, Complex z, SeriesOptions opts = {});

/// Generalized Laguerre polynomial L_m^(a)(u) by the stable three-term
/// recurrence.
double laguerre(int m, double a, double u);

/// Scaled modified Bessel function e^{-z} I_nu(z), z >= 0, nu > -1.
/// Power series for z <= 40, asymptotic expansion beyond (the series is
/// all-positive and stable but needs ~z terms; 40 is where the asymptotic
/// minimum term drops below 1e-16).
double bessel_i_scaled(double nu, double z);

/// Meixner-Pollaczek parameters: order lambda > 0, angle theta in (0, pi).
struct MPPolyParams {
  double lambda;
  double theta;

  MPPolyParams(double lambda_, double theta_);
};

/// P_m^(lambda)(x, theta) via the three-term recurrence
/// (m+1) P_{m+1} = 2[x sin(theta) + (m+lambda) cos(theta)] P_m
///                 - (m + 2 lambda - 1) P_{m-1}.
/// This is the authoritative route; the hypergeometric route below is a
/// cross-check.
double mp_poly(int m, const MPPolyParams& p, double x);

/// Same polynomial through the terminating-hypergeometric representation
/// ((2 lambda)_m / m!) e^{i m theta} 2F1(-m, lambda + ix; 2 lambda; 1 - e^{-2 i theta}).
/// Throws IdentityViolation if the imaginary residue exceeds
/// tol * max(1, |value|).
double mp_poly_hyp(int m, const MPPolyParams& p, double x, SeriesOptions opts = {});

/// Streaming generator for P_0, P_1, ... at fixed (lambda, theta, x);
/// O(1) per order.
class MPPolyStream {
 public:
  MPPolyStream(const MPPolyParams& p, double x);
  double current() const { return p_m_; }
  void advance();

 private:
  double s_, c_, lambda_, x_;
  int m_ = 0;
  double p_prev_ = 0.0, p_m_ = 1.0;
};

/// Truncated bilinear sum  sum_m (m!/(gamma)_m) mu^m P_m^(g/2)(x,t1) P_m^(g/2)(y,t2);
/// the independent oracle for mp_bilinear_closed.
SeriesEval mp_bilinear_series(double mu, double gamma, double x, double y,
                              double theta1, double theta2, SeriesOptions opts = {});

/// Closed form of the bilinear sum:
///   (1 - mu e^{i(t1-t2)})^{-g/2-iy} (1 - mu e^{i(t2-t1)})^{-g/2-ix}
///   (1 - mu e^{i(t1+t2)})^{i(x+y)}
///   2F1(g/2+ix, g/2+iy, g; -4 mu sin t1 sin t2 / |1 - mu e^{i(t1-t2)}|^2),
/// principal branches throughout. Requires 0 < mu < 1, t1, t2 in (0, pi).
Complex mp_bilinear_closed(double mu, double gamma, double x, double y,
                           double theta1, double theta2, SeriesOptions opts = {});

/// Truncated sum  sum_n t^n 2F1(-n, c; 1+nu; y) L_n^(nu)(u). The 2F1
/// coefficient sequence is streamed by its own three-term recurrence
/// (termwise terminating sums are hopeless beyond n ~ 50).
SeriesEval laguerre_gen_series(Complex t, Complex c, double nu, Complex y,
                               double u, SeriesOptions opts = {});

/// Closed form of the same sum:
///   (1-t)^{-1+c-nu} (1-t+yt)^{-c} exp(-ut/(1-t)) 1F1(c; 1+nu; yut/((1-t)(1-t+yt))).
/// Requires |t| < 1; throws std::domain_error when 1-t+yt vanishes.
Complex laguerre_gen_closed(Complex t, Complex c, double nu, Complex y,
                            double u, SeriesOptions opts = {});

}  // namespace gkcs::specfun

#endif
