#include "gkcs/run_config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "gkcs/coherent.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/resolution.hpp"
#include "gkcs/specfun.hpp"
#include "gkcs/verify.hpp"

namespace gkcs::cli {

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  char extra = 0;
  const int matched =
      std::sscanf(text.c_str(), "%lf:%lf:%d%c", &g.start, &g.stop, &g.count, &extra);
  if (matched != 3 || g.count < 1) {
    throw std::invalid_argument("grid must be start:stop:count with count >= 1: '" + text + "'");
  }
  return g;
}

std::vector<double> GridSpec::points() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = start;
    return out;
  }
  const double h = (stop - start) / (count - 1);
  for (int i = 0; i < count; ++i) out[i] = start + i * h;
  out.back() = stop;
  return out;
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != value.size() || value.empty()) {
    throw std::invalid_argument("config: bad numeric value for '" + key + "': '" + value + "'");
  }
  return v;
}

}  // namespace

void apply_config_entry(RunConfig& cfg, const std::string& raw_key, const std::string& value) {
  std::string key = raw_key;
  for (auto& ch : key) {
    if (ch == '_') ch = '-';
  }
  if (key == "beta") cfg.beta = parse_double(key, value);
  else if (key == "gamma") cfg.gamma = parse_double(key, value);
  else if (key == "alpha") cfg.alpha = parse_double(key, value);
  else if (key == "rho") cfg.rho = parse_double(key, value);
  else if (key == "kappa0") cfg.kappa0 = parse_double(key, value);
  else if (key == "theta") cfg.theta = parse_double(key, value);
  else if (key == "epsilon") cfg.epsilon = parse_double(key, value);
  else if (key == "x") cfg.x = parse_double(key, value);
  else if (key == "xi-grid") cfg.xi_grid = GridSpec::parse(value);
  else if (key == "x-grid") cfg.x_grid = GridSpec::parse(value);
  else if (key == "m-max") cfg.m_max = int(parse_double(key, value));
  else if (key == "tol") cfg.tol = parse_double(key, value);
  else if (key == "format") cfg.format = value;
  else if (key == "out") cfg.out = value;
  else if (key == "quad-nodes") cfg.quad_nodes = int(parse_double(key, value));
  else if (key == "eps-ladder") {
    std::vector<double> ladder;
    std::stringstream ss(value);
    std::string cell;
    while (std::getline(ss, cell, ',')) ladder.push_back(parse_double(key, cell));
    cfg.eps_ladder = ladder;
  } else {
    throw std::invalid_argument("config: unknown key '" + raw_key + "'");
  }
}

void load_config_file(RunConfig& cfg, const std::string& path,
                      const std::function<bool(const std::string&)>& overridden) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open '" + path + "'");
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  " is not key=value: '" + line + "'");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t");
      const auto b = s.find_last_not_of(" \t");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (overridden && overridden(key)) continue;
    apply_config_entry(cfg, key, value);
  }
}

gk::GKParams resolve_params(const RunConfig& cfg) {
  const int groups = (cfg.gamma.has_value() ? 1 : 0) + (cfg.alpha.has_value() ? 1 : 0) +
                     ((cfg.rho.has_value() || cfg.kappa0.has_value()) ? 1 : 0);
  if (groups != 1) {
    throw std::invalid_argument(
        "exactly one of --gamma, --alpha, or --rho/--kappa0 must be supplied");
  }
  if (cfg.rho.has_value() || cfg.kappa0.has_value()) {
    if (!(cfg.rho.has_value() && cfg.kappa0.has_value())) {
      throw std::invalid_argument("--rho and --kappa0 must be supplied together");
    }
    return gk::GKParams::from_physical(*cfg.rho, *cfg.kappa0);
  }
  if (!cfg.beta.has_value()) {
    throw std::invalid_argument("--beta is required with --gamma or --alpha");
  }
  if (cfg.alpha.has_value()) return gk::GKParams::from_reduced(*cfg.alpha, *cfg.beta);
  if (!(*cfg.gamma > 1.5)) {
    throw std::invalid_argument("--gamma must exceed 3/2 (positive inverse-square coupling)");
  }
  return gk::GKParams::from_reduced(gk::GKParams::alpha_from_gamma(*cfg.gamma), *cfg.beta);
}

namespace {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

nlohmann::ordered_json config_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  const char* names[] = {"eigen", "mp-poly", "cs-eval", "cs-norm", "overlap", "measure", "verify"};
  j["command"] = names[int(cfg.command)];
  auto put = [&](const char* k, const std::optional<double>& v) {
    if (v.has_value()) j[k] = *v;
  };
  put("beta", cfg.beta);
  put("gamma", cfg.gamma);
  put("alpha", cfg.alpha);
  put("rho", cfg.rho);
  put("kappa0", cfg.kappa0);
  put("theta", cfg.theta);
  put("epsilon", cfg.epsilon);
  put("x", cfg.x);
  auto put_grid = [&](const char* k, const std::optional<GridSpec>& g) {
    if (g.has_value()) {
      j[k] = std::to_string(g->start) + ":" + std::to_string(g->stop) + ":" +
             std::to_string(g->count);
    }
  };
  put_grid("xi_grid", cfg.xi_grid);
  put_grid("x_grid", cfg.x_grid);
  j["m_max"] = cfg.m_max;
  j["tol"] = cfg.tol;
  j["format"] = cfg.format;
  j["quad_nodes"] = cfg.quad_nodes;
  j["eps_ladder"] = cfg.eps_ladder;
  return j;
}

void write_output(const RunConfig& cfg, const Table& table,
                  const std::vector<verify::VerificationReport>& reports,
                  const std::string& error) {
  std::ostringstream os;
  if (cfg.format == "json") {
    nlohmann::ordered_json j;
    j["config"] = config_json(cfg);
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
      nlohmann::ordered_json row;
      for (std::size_t i = 0; i < table.columns.size(); ++i) row[table.columns[i]] = r[i];
      rows.push_back(row);
    }
    j["rows"] = rows;
    nlohmann::ordered_json reps = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      nlohmann::ordered_json rep;
      rep["id"] = r.id;
      rep["module"] = r.module;
      rep["cases"] = r.cases;
      rep["worst_error"] = r.worst_error;
      rep["tolerance"] = r.tolerance;
      rep["pass"] = r.pass;
      rep["detail"] = r.detail;
      reps.push_back(rep);
    }
    j["reports"] = reps;
    if (!error.empty()) j["error"] = error;
    os << j.dump(2) << "\n";
  } else {
    if (!reports.empty()) {
      os << "id,module,cases,worst_error,tolerance,pass,detail\n";
      for (const auto& r : reports) {
        std::string detail = r.detail;
        for (auto& ch : detail) {
          if (ch == '"') ch = '\'';
        }
        os << r.id << ',' << r.module << ',' << r.cases << ',' << fmt17(r.worst_error) << ','
           << fmt17(r.tolerance) << ',' << (r.pass ? "true" : "false") << ",\"" << detail
           << "\"\n";
      }
    } else {
      for (std::size_t i = 0; i < table.columns.size(); ++i) {
        os << table.columns[i] << (i + 1 < table.columns.size() ? "," : "");
      }
      os << "\n";
      for (const auto& r : table.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) {
          os << fmt17(r[i]) << (i + 1 < r.size() ? "," : "");
        }
        os << "\n";
      }
    }
  }
  if (cfg.out.empty()) {
    std::cout << os.str();
  } else {
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + cfg.out);
    f << os.str();
  }
}

std::vector<double> x_points(const RunConfig& cfg) {
  if (cfg.x_grid.has_value()) return cfg.x_grid->points();
  if (cfg.x.has_value()) return {*cfg.x};
  throw std::invalid_argument("either --x or --x-grid is required");
}

double require(const std::optional<double>& v, const char* flag) {
  if (!v.has_value()) throw std::invalid_argument(std::string(flag) + " is required");
  return *v;
}

Table run_eigen(const RunConfig& cfg) {
  const auto params = resolve_params(cfg);
  if (!cfg.xi_grid.has_value()) throw std::invalid_argument("--xi-grid is required for eigen");
  Table t;
  t.columns = {"m", "lambda", "xi", "psi"};
  for (int m = 0; m <= cfg.m_max; ++m) {
    const double lambda = gk::eigenvalue(params, m);
    for (double xi : cfg.xi_grid->points()) {
      t.rows.push_back({double(m), lambda, xi, gk::eigenfunction(params, m, xi)});
    }
  }
  return t;
}

Table run_mp_poly(const RunConfig& cfg) {
  const auto params = resolve_params(cfg);
  const double theta = require(cfg.theta, "--theta");
  const specfun::MPPolyParams mp{0.5 * params.gamma, theta};
  Table t;
  t.columns = {"m", "x", "value"};
  for (double x : x_points(cfg)) {
    specfun::MPPolyStream ps(mp, x);
    for (int m = 0; m <= cfg.m_max; ++m) {
      t.rows.push_back({double(m), x, ps.current()});
      ps.advance();
    }
  }
  // deterministic ordering by (m, x)
  std::sort(t.rows.begin(), t.rows.end(), [](const auto& a, const auto& b) {
    return a[0] != b[0] ? a[0] < b[0] : a[1] < b[1];
  });
  return t;
}

coherent::CSLabel label_from(const RunConfig& cfg, double x) {
  return {x, require(cfg.theta, "--theta"), require(cfg.epsilon, "--epsilon"),
          resolve_params(cfg)};
}

Table run_cs_eval(const RunConfig& cfg) {
  if (!cfg.xi_grid.has_value()) throw std::invalid_argument("--xi-grid is required for cs-eval");
  const auto label = label_from(cfg, require(cfg.x, "--x"));
  const SeriesOptions opts{cfg.tol, 10000};
  const double n_series = coherent::normalization_series(label, opts).value.real();
  const double n_closed = coherent::normalization_closed(label);
  Table t;
  t.columns = {"xi", "re_series", "im_series", "re_closed", "im_closed", "abs2_closed", "diff"};
  for (double xi : cfg.xi_grid->points()) {
    const Complex s = coherent::cs_wavefunction_series(label, xi, n_series, {cfg.tol, 2000});
    const Complex c = coherent::cs_wavefunction_closed(label, xi, n_closed, opts);
    t.rows.push_back({xi, s.real(), s.imag(), c.real(), c.imag(), std::norm(c), std::abs(s - c)});
  }
  return t;
}

Table run_cs_norm(const RunConfig& cfg) {
  Table t;
  t.columns = {"x", "n_series", "n_closed", "rel_diff", "imag_residue"};
  for (double x : x_points(cfg)) {
    const auto label = label_from(cfg, x);
    const double ns = coherent::normalization_series(label, {cfg.tol, 10000}).value.real();
    const Complex nc = coherent::normalization_closed_complex(label);
    t.rows.push_back({x, ns, nc.real(), std::abs(ns - nc.real()) / std::abs(ns),
                      std::abs(nc.imag()) / std::abs(nc)});
  }
  return t;
}

Table run_overlap(const RunConfig& cfg) {
  const auto xs = x_points(cfg);
  Table t;
  t.columns = {"i", "j", "x_i", "x_j", "re", "im", "abs"};
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = 0; j < xs.size(); ++j) {
      const auto li = label_from(cfg, xs[i]);
      const auto lj = label_from(cfg, xs[j]);
      const Complex o = coherent::overlap(li, lj, {cfg.tol, 10000});
      t.rows.push_back({double(i), double(j), xs[i], xs[j], o.real(), o.imag(), std::abs(o)});
    }
  }
  return t;
}

Table run_measure(const RunConfig& cfg) {
  Table t;
  t.columns = {"x", "density"};
  for (double x : x_points(cfg)) {
    const auto label = label_from(cfg, x);
    t.rows.push_back({x, coherent::measure_density(label)});
  }
  return t;
}

}  // namespace

int run(const RunConfig& cfg) {
  if (cfg.perturb_lanczos != 0.0) specfun::set_lanczos_perturbation(cfg.perturb_lanczos);
  if (cfg.format != "csv" && cfg.format != "json") {
    std::cerr << "error: --format must be csv or json\n";
    return 1;
  }
  Table table;
  std::vector<verify::VerificationReport> reports;
  const auto fail = [&](int code, const char* kind, const std::string& what) {
    std::cerr << kind << ": " << what << "\n";
    try {
      write_output(cfg, table, reports, what);
    } catch (const std::exception& inner) {
      std::cerr << "error: " << inner.what() << "\n";
    }
    return code;
  };
  try {
    switch (cfg.command) {
      case Command::eigen: table = run_eigen(cfg); break;
      case Command::mp_poly: table = run_mp_poly(cfg); break;
      case Command::cs_eval: table = run_cs_eval(cfg); break;
      case Command::cs_norm: table = run_cs_norm(cfg); break;
      case Command::overlap: table = run_overlap(cfg); break;
      case Command::measure: table = run_measure(cfg); break;
      case Command::verify: reports = verify::run_all(); break;
    }
  } catch (const std::invalid_argument& e) {
    return fail(1, "error", e.what());
  } catch (const std::domain_error& e) {
    return fail(1, "error", e.what());
  } catch (const ConvergenceError& e) {
    return fail(2, "numerical error", e.what());
  } catch (const IdentityViolation& e) {
    return fail(2, "identity violation", e.what());
  }
  write_output(cfg, table, reports, "");
  if (cfg.command == Command::verify) {
    int failures = 0;
    for (const auto& r : reports) {
      std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << r.module << "/" << r.id << "  worst "
                << fmt17(r.worst_error) << " vs tol " << fmt17(r.tolerance) << " over "
                << r.cases << " cases\n";
      if (!r.pass) ++failures;
    }
    if (failures > 0) {
      std::cerr << failures << " verification suite(s) failed\n";
      return 3;
    }
  }
  return 0;
}

}  // namespace gkcs::cli
