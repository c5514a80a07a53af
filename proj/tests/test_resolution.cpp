#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gkcs/gk_model.hpp"
#include "gkcs/resolution.hpp"
#include "gkcs/specfun.hpp"

using namespace gkcs;
namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("orthogonality integrals of the superposition coefficients") {
  quad::QuadratureSpec spec;
  spec.tol = 1e-9;
  SUBCASE("normalized ground case") {
    CHECK(resolution::orthogonality_integral(0, 0, 2.5, kPi / 3, spec) ==
          doctest::Approx(1.0).epsilon(1e-8));
  }
  SUBCASE("cross term vanishes") {
    CHECK(std::abs(resolution::orthogonality_integral(1, 0, 2.5, kPi / 3, spec)) < 1e-8);
  }
  SUBCASE("diagonal value (gamma)_m/m!") {
    CHECK(resolution::orthogonality_integral(3, 3, 2.5, kPi / 2, spec) ==
          doctest::Approx(6.5625).epsilon(1e-7));
  }
  SUBCASE("full matrix at an off-symmetric angle") {
    const Eigen::MatrixXd I = resolution::orthogonality_matrix(8, 1.8, 2 * kPi / 3, spec);
    for (int m = 0; m <= 8; ++m) {
      for (int j = 0; j <= 8; ++j) {
        const double want =
            m == j ? specfun::pochhammer(1.8, m) / std::tgamma(double(m) + 1.0) : 0.0;
        const double scale = std::max(1.0, std::abs(want));
        CHECK(std::abs(I(m, j) - want) <= 1e-7 * scale);
      }
    }
  }
}

TEST_CASE("bilinear kernel: series, closed form, limits") {
  SUBCASE("small-rho limit tends to 1/Gamma(gamma)") {
    const double k = resolution::bilinear_kernel_series(1e-10, 2.5, 0.9, 1.7, {1e-13, 100})
                         .value.real();
    CHECK(k == doctest::Approx(1.0 / std::tgamma(2.5)).epsilon(1e-9));
  }
  SUBCASE("frozen fixture at a = b = 0") {
    const double s =
        resolution::bilinear_kernel_series(0.5, 2.5, 0.0, 0.0, {1e-13, 10000}).value.real();
    CHECK(s == doctest::Approx(4.255384324281948564692758).epsilon(1e-12));
    const double c = resolution::bilinear_kernel_closed(0.5, 2.5, 0.0, 0.0);
    CHECK(c == doctest::Approx(4.255384324281948564692758).epsilon(1e-12));
  }
  SUBCASE("reference grid point") {
    const double s =
        resolution::bilinear_kernel_series(0.6, 2.5, 0.9, 1.7, {1e-12, 20000}).value.real();
    const double c = resolution::bilinear_kernel_closed(0.6, 2.5, 0.9, 1.7);
    CHECK(std::abs(s - c) <= 1e-10 * std::max(1.0, std::abs(s)));
  }
  SUBCASE("a = 0 limit consistent between routes") {
    const double s =
        resolution::bilinear_kernel_series(0.6, 1.8, 0.0, 1.7, {1e-12, 20000}).value.real();
    const double c = resolution::bilinear_kernel_closed(0.6, 1.8, 0.0, 1.7);
    CHECK(std::abs(s - c) <= 1e-10 * std::max(1.0, std::abs(s)));
  }
  SUBCASE("exactly symmetric") {
    CHECK(resolution::bilinear_kernel_closed(0.7, 2.5, 1.1, 3.3) ==
          resolution::bilinear_kernel_closed(0.7, 2.5, 3.3, 1.1));
  }
  SUBCASE("domain errors") {
    CHECK_THROWS_AS((void)resolution::bilinear_kernel_closed(1.0, 2.5, 1.0, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS((void)resolution::bilinear_kernel_series(0.0, 2.5, 1.0, 1.0),
                    std::domain_error);
  }
}

TEST_CASE("smoothed identity acts diagonally on the eigenbasis") {
  const auto p = gk::GKParams::from_reduced(gk::GKParams::alpha_from_gamma(2.5), 1.0);
  quad::QuadratureSpec spec;
  spec.tol = 1e-10;
  const double eps = 0.1;
  for (int n : {0, 3, 8}) {
    const auto phi = [&](double xi) { return gk::eigenfunction(p, n, xi); };
    const auto proj = resolution::project(p, phi, 40, spec);
    // coefficients pick out the single mode
    for (int m = 0; m <= 40; ++m) {
      CHECK(std::abs(proj.coeffs[m] - (m == n ? 1.0 : 0.0)) < 1e-9);
    }
    const Eigen::VectorXd smoothed = resolution::apply_o_epsilon(proj, eps);
    const double d = std::exp(-2.0 * p.beta * (2.0 * n + p.gamma) * eps);
    const Eigen::VectorXd diff = smoothed - d * proj.phi_values;
    const double err =
        std::sqrt(diff.dot(proj.rule.weights.matrix().asDiagonal() * diff)) / proj.phi_norm;
    CHECK(err < 1e-7);
  }
}

TEST_CASE("single-point application matches the projection route") {
  const auto p = gk::GKParams::from_reduced(gk::GKParams::alpha_from_gamma(2.5), 1.0);
  quad::QuadratureSpec spec;
  const auto phi = [&](double xi) { return gk::eigenfunction(p, 1, xi); };
  const double v = resolution::apply_o_epsilon_at(p, phi, 1.3, 0.05, 0, spec);
  const double want = std::exp(-2.0 * p.beta * (2.0 + p.gamma) * 0.05) *
                      gk::eigenfunction(p, 1, 1.3);
  CHECK(v == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("epsilon ladder: exact single-mode trace") {
  quad::QuadratureSpec spec;
  const double beta = 1.0, gamma = 2.5;
  const auto p = gk::GKParams::from_reduced(gk::GKParams::alpha_from_gamma(gamma), beta);
  const auto phi = [&](double xi) { return gk::eigenfunction(p, 0, xi); };
  const auto trace = resolution::poisson_limit_experiment(
      gamma, beta, phi, {0.1, 0.05, 0.02, 0.01}, spec);
  for (std::size_t i = 0; i < trace.epsilons.size(); ++i) {
    const double want = 1.0 - std::exp(-2.0 * beta * gamma * trace.epsilons[i]);
    CHECK(std::abs(trace.errors[i] - want) < 1e-10);
  }
}

TEST_CASE("epsilon ladder: halving the regularization halves the error") {
  quad::QuadratureSpec spec;
  const double beta = 1.0, gamma = 2.5;
  const auto p = gk::GKParams::from_reduced(gk::GKParams::alpha_from_gamma(gamma), beta);
  const auto phi = [&](double xi) {
    return gk::eigenfunction(p, 0, xi) + gk::eigenfunction(p, 1, xi);
  };
  const auto trace = resolution::poisson_limit_experiment(
      gamma, beta, phi, {0.02, 0.01, 0.005}, spec);
  for (double r : trace.rates) {
    CHECK(r > 1.8);
    CHECK(r < 2.2);
  }
}

TEST_CASE("epsilon ladder: errors decrease for bump and indicator functions") {
  quad::QuadratureSpec spec;
  const double beta = 0.5, gamma = 2.5;
  SUBCASE("compact smooth bump") {
    const auto bump = [](double xi) {
      const double t = (xi - 3.0) / 2.0;
      if (std::abs(t) >= 1.0) return 0.0;
      return std::exp(-1.0 / (1.0 - t * t));
    };
    const auto trace = resolution::poisson_limit_experiment(
        gamma, beta, bump, {0.1, 0.05, 0.02, 0.01}, spec);
    for (std::size_t i = 0; i + 1 < trace.errors.size(); ++i) {
      CHECK(trace.errors[i + 1] < trace.errors[i]);
    }
  }
  SUBCASE("piecewise-constant indicator keeps converging, if slowly") {
    const auto ind = [](double xi) { return (xi >= 1.0 && xi <= 2.0) ? 1.0 : 0.0; };
    const auto trace = resolution::poisson_limit_experiment(
        gamma, beta, ind, {0.1, 0.05, 0.02, 0.01}, spec);
    for (std::size_t i = 0; i + 1 < trace.errors.size(); ++i) {
      CHECK(trace.errors[i + 1] < trace.errors[i]);
    }
    // jump points keep the error visibly larger than for the smooth bump
    CHECK(trace.errors.back() > 0.05);
  }
}

TEST_CASE("ladder validation") {
  quad::QuadratureSpec spec;
  const auto phi = [](double xi) { return std::exp(-xi * xi); };
  CHECK_THROWS_AS(
      (void)resolution::poisson_limit_experiment(2.5, 1.0, phi, {}, spec),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)resolution::poisson_limit_experiment(2.5, 1.0, phi, {0.1, 0.1}, spec),
      std::domain_error);
  CHECK_THROWS_AS(
      (void)resolution::poisson_limit_experiment(2.5, 1.0, phi, {0.1, -0.05}, spec),
      std::domain_error);
}

TEST_CASE("default mode cap follows the geometric certificate") {
  CHECK(resolution::default_m_cap(1.0, 0.1) == int(std::ceil(std::log(1e14) / 0.4)));
  CHECK(resolution::default_m_cap(0.5, 0.001) == 5000);  // capped
}
