#ifndef GKCS_RESOLUTION_HPP
#define GKCS_RESOLUTION_HPP

#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "gkcs/gk_model.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/series.hpp"

// The resolution-of-the-identity machinery: orthogonality integrals of the
// superposition coefficients over R, the diagonally-acting smoothed
// identity O_eps, the bilinear Laguerre kernel with its independent closed
// form, and the eps -> 0 convergence experiment.

namespace gkcs::resolution {

/// I_{m,j} = int_R P_m^{(g/2)}(x,theta) P_j^{(g/2)}(x,theta) Upsilon(x) dx
/// by truncated quadrature; equals (gamma)_m/m! delta_{mj}.
double orthogonality_integral(int m, int j, double gamma, double theta,
                              const quad::QuadratureSpec& spec);

/// All pairs m, j <= m_max at once (one basis sweep + a weighted Gram
/// product).
Eigen::MatrixXd orthogonality_matrix(int m_max, double gamma, double theta,
                                     const quad::QuadratureSpec& spec);

/// Eigenbasis projection of a test function: quadrature rule, basis matrix,
/// coefficients <phi|psi_m> for m <= m_cap, and phi's values on the nodes.
struct SpectralProjection {
  gk::GKParams params;
  quad::Rule rule;
  Eigen::VectorXd phi_values;
  Eigen::MatrixXd basis;   // (m_cap+1) x nodes
  Eigen::VectorXd coeffs;  // <phi|psi_m>
  double phi_norm = 0.0;   // quadrature L2 norm
};

SpectralProjection project(const gk::GKParams& params,
                           const std::function<double(double)>& phi, int m_cap,
                           const quad::QuadratureSpec& spec);

/// Smallest m with e^{-4 beta eps m} < 1e-14, capped at 5000.
int default_m_cap(double beta, double epsilon);

/// O_eps applied through the diagonal form sum_m e^{-2 beta (2m+gamma) eps}
/// <phi|psi_m> psi_m, evaluated on the projection's quadrature nodes.
Eigen::VectorXd apply_o_epsilon(const SpectralProjection& proj, double epsilon);

/// One-shot evaluation at a single point u > 0.
double apply_o_epsilon_at(const gk::GKParams& params,
                          const std::function<double(double)>& phi, double u,
                          double epsilon, int m_cap, const quad::QuadratureSpec& spec);

/// ||O_eps[phi] - phi|| / ||phi|| in the quadrature L2 norm.
double relative_l2_error(const SpectralProjection& proj, double epsilon);

/// Bilinear Laguerre kernel K(rho; a, b) =
///   sum_m rho^m (m!/Gamma(m+gamma)) L_m^{(gamma-1)}(a) L_m^{(gamma-1)}(b).
SeriesEval bilinear_kernel_series(double rho, double gamma, double a, double b,
                                  SeriesOptions opts = {});

/// Independent closed form of the same kernel (bilinear generating
/// function through the scaled modified Bessel function), organized as the
/// entire-in-ab expansion
///   (1-rho)^{-gamma} e^{-rho(a+b)/(1-rho)} sum_k (ab rho/(1-rho)^2)^k / (k! Gamma(gamma+k)),
/// evaluated in log-space against overflow.
double bilinear_kernel_closed(double rho, double gamma, double a, double b);

struct ConvergenceTrace {
  std::vector<double> epsilons;
  std::vector<double> errors;
  std::vector<double> rates;  // errors[i]/errors[i+1]
};

/// Relative L2 error of O_eps against phi for each ladder entry; ladder
/// must be strictly decreasing and positive.
ConvergenceTrace poisson_limit_experiment(double gamma, double beta,
                                          const std::function<double(double)>& phi,
                                          const std::vector<double>& eps_ladder,
                                          const quad::QuadratureSpec& spec);

}  // namespace gkcs::resolution

#endif
