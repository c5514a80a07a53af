#ifndef GKCS_COHERENT_HPP
#define GKCS_COHERENT_HPP

#include "gkcs/gk_model.hpp"
#include "gkcs/series.hpp"
#include "gkcs/specfun.hpp"

// Construction and evaluation of the generalized coherent states
// |x, eps>: superposition weights, normalization factor (series and closed
// form), wavefunction (series and closed form), overlaps, and the labeling
// measure density. Every closed form has an independent series route; the
// tests hold the two against each other.

namespace gkcs::coherent {

/// Label of a coherent state: point x on the real line plus the angle
/// theta in (0, pi), regularization epsilon > 0, and the model parameters
/// (which must have gamma > 1).
struct CSLabel {
  double x;
  double theta;
  double epsilon;
  gk::GKParams params;

  CSLabel(double x_, double theta_, double epsilon_, const gk::GKParams& params_);

  specfun::MPPolyParams mp_params() const { return {0.5 * params.gamma, theta}; }
};

/// log of the superposition weight sigma(m) = (gamma)_m/m! e^{2 beta (2m+gamma) eps}.
double log_sigma(const CSLabel& label, int m);

/// sigma(m), evaluated through log-space. Throws std::overflow_error when
/// the value exceeds the representable range instead of returning inf.
double sigma(const CSLabel& label, int m);

/// Normalization factor as the series
///   e^{-2 eps beta gamma} sum_m (m!/(gamma)_m) e^{-4 eps beta m} P_m(x, theta)^2;
/// all terms are non-negative, so the monotone partial sums double as a
/// convergence certificate.
SeriesEval normalization_series(const CSLabel& label, SeriesOptions opts = {});

/// Normalization factor in closed form: the bilinear generating identity
/// specialized to x = y, theta1 = theta2, mu = e^{-4 eps beta}, times
/// e^{-2 eps beta gamma}. Mathematically real and positive; evaluated in
/// complex arithmetic, and an imaginary residue above 1e-9 |N| raises
/// IdentityViolation rather than being dropped.
double normalization_closed(const CSLabel& label, SeriesOptions opts = {});

/// Raw complex value of the closed form, for diagnostics.
Complex normalization_closed_complex(const CSLabel& label, SeriesOptions opts = {});

/// <xi | x, eps> summed over the eigenbasis, normalized with the series-route
/// N so the series route stays fully independent of the closed form.
/// Truncation is certified by an empirical geometric-ratio tail over the
/// last ten terms; cap 2000 terms.
Complex cs_wavefunction_series(const CSLabel& label, double xi, SeriesOptions opts = {});

/// Same with a precomputed normalization factor (N does not depend on xi;
/// hoist it when sweeping a grid).
Complex cs_wavefunction_series(const CSLabel& label, double xi, double n_value,
                               SeriesOptions opts);

/// Closed-form wavefunction, tau = e^{-2 beta eps + i theta}:
///   sqrt(2 beta^gamma / Gamma(gamma)) e^{-eps beta gamma} |1-tau|^{-gamma}
///   ((1-tau)/(1-conj tau))^{ix} N^{-1/2} xi^{gamma-1/2}
///   exp(-beta xi^2 (1+tau)/(2(1-tau)))
///   1F1(gamma/2 + ix; gamma; 2 i beta xi^2 sin(theta) e^{-2 beta eps}/|1-tau|^2).
Complex cs_wavefunction_closed(const CSLabel& label, double xi, SeriesOptions opts = {});

/// Same with a precomputed normalization factor.
Complex cs_wavefunction_closed(const CSLabel& label, double xi, double n_value,
                               SeriesOptions opts);

/// Overlap <x1, eps | x2, eps> of two states sharing (theta, gamma, beta,
/// eps): the bilinear identity at (x1, x2) over sqrt(N1 N2).
/// overlap(x, x) = 1 by construction. Throws std::domain_error if the
/// shared parameters differ.
Complex overlap(const CSLabel& label1, const CSLabel& label2, SeriesOptions opts = {});

/// Density of the labeling measure, N(x) * Upsilon(x) with
///   Upsilon = omega_{gamma/2}(x, theta) / Gamma(gamma),
///   omega_nu = (2 sin theta)^{2 nu - 1} sin(theta)/pi e^{-(pi - 2 theta) x} |Gamma(nu+ix)|^2,
/// strictly positive for finite x.
double measure_density(const CSLabel& label, SeriesOptions opts = {});

/// Upsilon alone (the x-orthogonality weight of the superposition
/// coefficients).
double coefficient_weight(double gamma, double theta, double x);

}  // namespace gkcs::coherent

#endif
