#include "gkcs/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace gkcs::quad {

void QuadratureSpec::validate() const {
  if (n_nodes < 16) throw std::domain_error("QuadratureSpec: n_nodes must be >= 16");
  if (half_line_cutoff < 0.0 || !std::isfinite(half_line_cutoff)) {
    throw std::domain_error("QuadratureSpec: half_line_cutoff must be finite and >= 0");
  }
  if (real_line_cutoffs.first < 0.0 || real_line_cutoffs.second < 0.0 ||
      !std::isfinite(real_line_cutoffs.first) || !std::isfinite(real_line_cutoffs.second)) {
    throw std::domain_error("QuadratureSpec: real_line_cutoffs must be finite and >= 0");
  }
  if (!(tol > 0.0)) throw std::domain_error("QuadratureSpec: tol must be > 0");
}

Rule gauss_legendre(int n) {
  if (n < 2) throw std::domain_error("gauss_legendre: n must be >= 2");
  static std::mutex mtx;
  static std::map<int, Rule> cache;
  {
    std::scoped_lock lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  // Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights
  // 2 * (first eigenvector component)^2.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    J(k, k - 1) = b;
    J(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Rule r;
  r.nodes = es.eigenvalues().array();
  r.weights = 2.0 * es.eigenvectors().row(0).array().square();
  std::scoped_lock lock(mtx);
  cache.emplace(n, r);
  return r;
}

Rule composite_gauss_legendre(double a, double b, int panels, int n) {
  if (!(b > a)) throw std::domain_error("composite_gauss_legendre: requires b > a");
  if (panels < 1) panels = 1;
  const Rule base = gauss_legendre(n);
  Rule out;
  out.nodes.resize(Eigen::Index(panels) * n);
  out.weights.resize(Eigen::Index(panels) * n);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * h;
    const double mid = lo + 0.5 * h;
    for (int i = 0; i < n; ++i) {
      out.nodes[Eigen::Index(p) * n + i] = mid + 0.5 * h * base.nodes[i];
      out.weights[Eigen::Index(p) * n + i] = 0.5 * h * base.weights[i];
    }
  }
  return out;
}

Rule tanh_sinh(double a, double b, int n) {
  if (!(b > a)) throw std::domain_error("tanh_sinh: requires b > a");
  if (n < 16) n = 16;
  constexpr double t_max = 3.8;
  const double h = 2.0 * t_max / (n - 1);
  const double c = 0.5 * (b - a);
  constexpr double half_pi = std::numbers::pi / 2.0;
  Rule out;
  out.nodes.resize(n);
  out.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    const double t = -t_max + i * h;
    const double s = half_pi * std::sinh(t);
    // node as a distance from the nearer endpoint: tanh(s) rounds to
    // exactly +-1 for |s| > ~19, which would park nodes on the endpoint
    // singularity; 1 -+ tanh(s) = 2/(e^{+-2s}+1) stays accurate
    if (s < 0.0) {
      out.nodes[i] = a + c * 2.0 / (std::exp(-2.0 * s) + 1.0);
    } else {
      out.nodes[i] = b - c * 2.0 / (std::exp(2.0 * s) + 1.0);
    }
    const double ch = std::cosh(s);
    out.weights[i] = h * c * half_pi * std::cosh(t) / (ch * ch);
  }
  return out;
}

double gaussian_cutoff(double rate, double degree, double tail) {
  const double L = std::log(1.0 / tail);
  double x = std::sqrt(std::max(L, 1.0) / rate);
  for (int it = 0; it < 32; ++it) {
    x = std::sqrt((L + std::max(degree, 0.0) * std::log(std::max(x, 1.0))) / rate);
  }
  return x + 1.0;
}

double exponential_cutoff(double rate, double degree, double tail) {
  const double L = std::log(1.0 / tail);
  double x = std::max(L, 1.0) / rate;
  for (int it = 0; it < 32; ++it) {
    x = (L + std::max(degree, 0.0) * std::log(std::max(x, 1.0))) / rate;
  }
  return x + 1.0;
}

Rule half_line_rule(const QuadratureSpec& spec, double beta, double degree) {
  spec.validate();
  double cutoff = spec.half_line_cutoff;
  if (cutoff == 0.0) cutoff = gaussian_cutoff(beta, degree, 0.1 * spec.tol);
  if (spec.scheme == Scheme::tanh_sinh) {
    // total node budget: keep resolution comparable to the composite rule
    const int total = std::max(spec.n_nodes * 8, 257);
    return tanh_sinh(0.0, cutoff, total);
  }
  const int panels = std::max(1, int(std::ceil(cutoff)));
  return composite_gauss_legendre(0.0, cutoff, panels, spec.n_nodes);
}

Rule real_line_rule(const QuadratureSpec& spec, double gamma, double theta, double degree) {
  spec.validate();
  const double tail = 0.1 * spec.tol;
  // weight ~ exp(-2(pi-theta) x) * x^(degree+gamma-1) as x -> +inf,
  //          exp(-2 theta |x|) * |x|^(degree+gamma-1) as x -> -inf
  const double p = degree + std::max(gamma - 1.0, 0.0);
  double neg = spec.real_line_cutoffs.first;
  double pos = spec.real_line_cutoffs.second;
  if (pos == 0.0) pos = exponential_cutoff(2.0 * (std::numbers::pi - theta), p, tail);
  if (neg == 0.0) neg = exponential_cutoff(2.0 * theta, p, tail);
  if (spec.scheme == Scheme::tanh_sinh) {
    const int total = std::max(spec.n_nodes * 8, 257);
    return tanh_sinh(-neg, pos, total);
  }
  const int panels = std::max(1, int(std::ceil((pos + neg) / 1.0)));
  return composite_gauss_legendre(-neg, pos, panels, spec.n_nodes);
}

}  // namespace gkcs::quad
