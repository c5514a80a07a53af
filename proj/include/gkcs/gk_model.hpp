#ifndef GKCS_GK_MODEL_HPP
#define GKCS_GK_MODEL_HPP

#include <Eigen/Dense>

// Parameterizations, spectrum and orthonormal eigenbasis of the
// half-line Hamiltonian -d^2/dxi^2 + beta^2 xi^2 + alpha/xi^2.

namespace gkcs::gk {

/// Model parameters. Constructible from the physical pair (rho, kappa0)
/// or the reduced pair (alpha, beta); both populate every field:
///   alpha = rho kappa0^2,  beta = sqrt(rho)/kappa0,
///   gamma = 1 + sqrt(1 + 4 alpha)/2,  q = gamma - 1/2.
struct GKParams {
  double rho;
  double kappa0;
  double alpha;
  double beta;
  double gamma;
  double q;

  static GKParams from_physical(double rho, double kappa0);
  static GKParams from_reduced(double alpha, double beta);

  /// alpha recovered from gamma: ((2(gamma-1))^2 - 1)/4.
  static double alpha_from_gamma(double gamma);
};

/// lambda_m = 2 beta (2m + gamma); spacing 4 beta.
double eigenvalue(const GKParams& p, int m);

/// Spectrum in the physical parameterization,
/// 4 kappa0^{-1} sqrt(rho) (m + 1/2 + (sqrt(1+4 rho kappa0^2) - 2 kappa0 sqrt(rho))/4);
/// differs from eigenvalue() by the m-independent constant 2 rho.
double eigenvalue_physical(double rho, double kappa0, int m);

/// Normalized eigenfunction
///   psi_m(xi) = sqrt(2 beta^gamma m!/Gamma(gamma+m)) xi^{gamma-1/2}
///               e^{-beta xi^2/2} L_m^{(gamma-1)}(beta xi^2),
/// positive near xi -> 0+. The m!/Gamma(gamma+m) ratio is taken in
/// log-space; xi below 1e-300 returns 0 instead of underflowing through
/// the power. Throws std::domain_error for xi <= 0.
double eigenfunction(const GKParams& p, int m, double xi);

/// psi_m on a grid of points.
Eigen::ArrayXd eigenfunction_grid(const GKParams& p, int m, const Eigen::ArrayXd& xi);

/// Rows m = 0..m_max of the eigenbasis evaluated on a grid; one upward
/// Laguerre recurrence per column.
Eigen::MatrixXd basis_matrix(const GKParams& p, int m_max, const Eigen::ArrayXd& xi);

}  // namespace gkcs::gk

#endif
