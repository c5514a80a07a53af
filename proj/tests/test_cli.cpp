#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gkcs/run_config.hpp"

using namespace gkcs;

TEST_CASE("grid parsing") {
  const auto g = cli::GridSpec::parse("0.5:2.5:5");
  CHECK(g.start == 0.5);
  CHECK(g.stop == 2.5);
  CHECK(g.count == 5);
  const auto pts = g.points();
  REQUIRE(pts.size() == 5);
  CHECK(pts.front() == 0.5);
  CHECK(pts[2] == doctest::Approx(1.5));
  CHECK(pts.back() == 2.5);

  CHECK(cli::GridSpec::parse("1:1:1").points() == std::vector<double>{1.0});

  CHECK_THROWS_AS(cli::GridSpec::parse("1:2"), std::invalid_argument);
  CHECK_THROWS_AS(cli::GridSpec::parse("1:2:0"), std::invalid_argument);
  CHECK_THROWS_AS(cli::GridSpec::parse("a:b:c"), std::invalid_argument);
  CHECK_THROWS_AS(cli::GridSpec::parse("1:2:3:4"), std::invalid_argument);
}

TEST_CASE("17-digit formatting is stable and lossless") {
  CHECK(cli::fmt17(4.0) == "4");
  const double v = 0.1 + 0.2;
  const std::string s = cli::fmt17(v);
  double back = 0.0;
  std::sscanf(s.c_str(), "%lf", &back);
  CHECK(back == v);
  CHECK(cli::fmt17(v) == cli::fmt17(v));
}

TEST_CASE("parameter group validation") {
  cli::RunConfig cfg;
  CHECK_THROWS_AS((void)cli::resolve_params(cfg), std::invalid_argument);

  cfg.gamma = 2.5;
  CHECK_THROWS_AS((void)cli::resolve_params(cfg), std::invalid_argument);  // no beta
  cfg.beta = 1.0;
  const auto p = cli::resolve_params(cfg);
  CHECK(p.gamma == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(p.beta == 1.0);

  cfg.alpha = 1.0;  // second group
  CHECK_THROWS_AS((void)cli::resolve_params(cfg), std::invalid_argument);
  cfg.alpha.reset();

  cfg.rho = 1.0;  // rho without kappa0
  CHECK_THROWS_AS((void)cli::resolve_params(cfg), std::invalid_argument);
  cfg.gamma.reset();
  cfg.kappa0 = 1.0;
  cfg.beta.reset();
  const auto pp = cli::resolve_params(cfg);
  CHECK(pp.alpha == doctest::Approx(1.0));

  cli::RunConfig shallow;
  shallow.gamma = 1.2;  // below the positive-coupling threshold
  shallow.beta = 1.0;
  CHECK_THROWS_AS((void)cli::resolve_params(shallow), std::invalid_argument);
}

TEST_CASE("cs-norm run writes a parseable CSV row") {
  cli::RunConfig cfg;
  cfg.command = cli::Command::cs_norm;
  cfg.gamma = 2.5;
  cfg.beta = 1.0;
  cfg.theta = 1.0471975511965976;  // pi/3
  cfg.epsilon = 0.25;
  cfg.x = 0.7;
  cfg.out = "test_cli_csnorm.csv";
  REQUIRE(cli::run(cfg) == 0);

  std::ifstream f(cfg.out);
  REQUIRE(f.good());
  std::string header, row;
  std::getline(f, header);
  std::getline(f, row);
  CHECK(header == "x,n_series,n_closed,rel_diff,imag_residue");
  std::stringstream ss(row);
  std::string cell;
  std::getline(ss, cell, ',');
  CHECK(cell == "0.69999999999999996");
  std::getline(ss, cell, ',');
  double n_series = 0.0;
  std::sscanf(cell.c_str(), "%lf", &n_series);
  CHECK(n_series == doctest::Approx(0.6313119375334599).epsilon(1e-10));
  std::remove(cfg.out.c_str());
}

TEST_CASE("validation failures exit with status 1") {
  cli::RunConfig cfg;
  cfg.command = cli::Command::measure;  // needs params and x
  cfg.out = "test_cli_invalid.csv";
  CHECK(cli::run(cfg) == 1);
  std::remove(cfg.out.c_str());
}
