#ifndef GKCS_RUN_CONFIG_HPP
#define GKCS_RUN_CONFIG_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gkcs/gk_model.hpp"

// Command-line surface: configuration record, grid parsing, deterministic
// number formatting, and the command dispatcher. Kept in the library so the
// pieces are unit-testable without spawning the binary.

namespace gkcs::cli {

enum class Command { eigen, mp_poly, cs_eval, cs_norm, overlap, measure, verify };

/// Inclusive linear grid "start:stop:count".
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;

  static GridSpec parse(const std::string& text);  // throws std::invalid_argument
  std::vector<double> points() const;
};

struct RunConfig {
  Command command = Command::verify;
  std::optional<double> beta, gamma, alpha, rho, kappa0;
  std::optional<double> theta, epsilon, x;
  std::optional<GridSpec> xi_grid, x_grid;
  int m_max = 10;
  double tol = 1e-10;
  std::string format = "csv";  // csv | json
  std::string out;             // empty writes to stdout
  int quad_nodes = 48;
  std::vector<double> eps_ladder{0.1, 0.05, 0.02, 0.01};
  double perturb_lanczos = 0.0;  // test hook, see specfun::set_lanczos_perturbation
};

/// 17-significant-digit formatting; byte-identical for identical values.
std::string fmt17(double v);

/// Applies one key=value entry from a flat configuration file. Keys match
/// the long flag names (underscore and hyphen interchangeable). Throws
/// std::invalid_argument for unknown keys or malformed values.
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

/// Reads a flat key=value file ('#' comments, blank lines ignored).
/// Entries whose key satisfies `overridden` are skipped, so command-line
/// flags win over file values.
void load_config_file(RunConfig& cfg, const std::string& path,
                      const std::function<bool(const std::string&)>& overridden);

/// Validates the parameter groups (exactly one of gamma | alpha |
/// (rho, kappa0), plus beta where required) and resolves the model
/// parameters. Throws std::invalid_argument on violations.
gk::GKParams resolve_params(const RunConfig& cfg);

/// Executes the command, writing the artifact to cfg.out (or stdout).
/// Returns the process exit status: 0 ok, 1 validation error, 2 numerical
/// non-convergence, 3 verification failure.
int run(const RunConfig& cfg);

}  // namespace gkcs::cli

#endif
