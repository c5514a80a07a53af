#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gkcs/run_config.hpp"

// gkcs: evaluate the coherent-state construction and run its verification
// suites. Subcommands: eigen, mp-poly, cs-eval, cs-norm, overlap, measure,
// verify. All parameters can also come from a flat key=value config file
// (--config); command-line flags override file values.

namespace {

std::string g_config_path;

void add_common(CLI::App* cmd, gkcs::cli::RunConfig& cfg) {
  auto opt = [&cfg, cmd](const char* name, std::optional<double>& slot, const char* help) {
    return cmd->add_option_function<double>(
        name, [&slot](const double& v) { slot = v; }, help);
  };
  opt("--beta", cfg.beta, "oscillator strength beta > 0")->check(CLI::PositiveNumber);
  opt("--gamma", cfg.gamma, "spectral parameter gamma > 3/2");
  opt("--alpha", cfg.alpha, "inverse-square coupling alpha > 0")->check(CLI::PositiveNumber);
  opt("--rho", cfg.rho, "force constant rho > 0")->check(CLI::PositiveNumber);
  opt("--kappa0", cfg.kappa0, "equilibrium length kappa0 > 0")->check(CLI::PositiveNumber);
  opt("--theta", cfg.theta, "angle theta in (0, pi)");
  opt("--epsilon", cfg.epsilon, "regularization epsilon > 0")->check(CLI::PositiveNumber);
  opt("--x", cfg.x, "label point x");
  cmd->add_option_function<std::string>(
      "--xi-grid",
      [&cfg](const std::string& s) { cfg.xi_grid = gkcs::cli::GridSpec::parse(s); },
      "xi grid start:stop:count");
  cmd->add_option_function<std::string>(
      "--x-grid",
      [&cfg](const std::string& s) { cfg.x_grid = gkcs::cli::GridSpec::parse(s); },
      "x grid start:stop:count");
  cmd->add_option("--m-max", cfg.m_max, "highest basis order")->check(CLI::NonNegativeNumber);
  cmd->add_option("--tol", cfg.tol, "evaluation tolerance")->check(CLI::PositiveNumber);
  cmd->add_option("--format", cfg.format, "output format: csv or json");
  cmd->add_option("--out", cfg.out, "output file (default stdout)");
  cmd->add_option("--quad-nodes", cfg.quad_nodes, "quadrature nodes per panel");
  cmd->add_option("--eps-ladder", cfg.eps_ladder, "decreasing epsilon ladder")->delimiter(',');
  cmd->add_option("--perturb-lanczos", cfg.perturb_lanczos,
                  "corrupt one log-gamma coefficient (verification self-test hook)")
      ->group("");  // hidden
  cmd->add_option("--config", g_config_path,
                  "flat key=value configuration file; flags override file values");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized coherent states for the half-line oscillator with barrier"};
  app.require_subcommand(1);

  gkcs::cli::RunConfig cfg;

  using gkcs::cli::Command;
  const std::pair<const char*, Command> cmds[] = {
      {"eigen", Command::eigen},     {"mp-poly", Command::mp_poly},
      {"cs-eval", Command::cs_eval}, {"cs-norm", Command::cs_norm},
      {"overlap", Command::overlap}, {"measure", Command::measure},
      {"verify", Command::verify},
  };
  const char* descriptions[] = {
      "eigenvalues and eigenfunctions on a xi grid",
      "Meixner-Pollaczek polynomial table",
      "coherent-state wavefunction, series and closed routes",
      "normalization factor by both routes",
      "overlap matrix for a list of label points",
      "labeling measure density on an x grid",
      "run every cross-validation suite",
  };
  int idx = 0;
  for (const auto& [name, command] : cmds) {
    CLI::App* sub = app.add_subcommand(name, descriptions[idx++]);
    add_common(sub, cfg);
    sub->callback([&cfg, command] { cfg.command = command; });
  }

  try {
    app.parse(argc, argv);
    if (!g_config_path.empty()) {
      CLI::App* sub = app.get_subcommands().front();
      gkcs::cli::load_config_file(cfg, g_config_path, [sub](const std::string& key) {
        std::string flag = "--" + key;
        for (auto& ch : flag) {
          if (ch == '_') ch = '-';
        }
        try {
          return sub->count(flag) > 0;
        } catch (const CLI::OptionNotFound&) {
          return false;
        }
      });
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return gkcs::cli::run(cfg);
}
