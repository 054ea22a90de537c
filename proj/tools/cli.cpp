#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wsdirac/wsdirac.hpp"

namespace wsdirac::cli {

namespace {

std::string number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fixed5(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.5f", x);
  return buf;
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidInput: return kUsage;
    case ErrorKind::DegenerateSuperpotential:
    case ErrorKind::LadderSingular: return kDegenerate;
    case ErrorKind::NoRealRoot: return kNoRealRoot;
    case ErrorKind::NotNormalizable: return kNotNormalizable;
    default: return kCheckFailed;
  }
}

struct Options {
  PhysicalParams params;
  QuantumState state{0, 20, 3};
  std::string format = "csv";
  std::string output;
  bool grid_layout = false;
  int table = 0;
  std::vector<double> alpha_primes;
  std::vector<int> dims;
  std::vector<int> ells;
  std::vector<int> ns;
  int samples = 1000;
  double r_max = 0.0;
  bool no_oracle = false;
};

Format parse_format(const std::string& f) { return f == "jsonl" ? Format::JsonLines : Format::Csv; }

std::vector<SweepRow> table_rows(const PhysicalParams& base, int which) {
  SweepGrid grid;
  grid.alpha_primes = {0.0, 0.001, 0.005, 0.01};
  grid.ns = {0};
  if (which == 1) {
    grid.dims = {1, 2, 3, 4, 5};
    grid.ells = {20};
  } else {
    grid.dims = {3};
    grid.ells = {20, 21, 22, 23, 24};
  }
  return sweep(base, grid);
}

void emit_records(std::ostream& out, const std::vector<SweepRow>& rows, Format format) {
  if (format == Format::Csv) out << kRecordHeader << '\n';
  for (const auto& row : rows) out << format_record(row, format) << '\n';
}

struct Check {
  std::string name;
  std::string status;  // pass | fail | skipped
  double value = 0.0;
  double threshold = 0.0;
  std::string note;
};

std::vector<Check> run_checks(const PhysicalParams& p, const QuantumState& s, bool with_oracle) {
  std::vector<Check> checks;
  auto add = [&](std::string name, double value, double threshold, std::string note = {}) {
    const bool ok = std::isfinite(value) && value < threshold;
    checks.push_back({std::move(name), ok ? "pass" : "fail", value, threshold, std::move(note)});
  };
  auto add_error = [&](std::string name, const SolverError& e) {
    checks.push_back({std::move(name), "fail", std::nan(""), 0.0, e.what()});
  };

  {
    const auto pk = pekeris_coefficients(p.radius, p.surface_thickness);
    const auto t = taylor_match_report(pk);
    const double dev = std::fmax(std::fabs(t[0] - 1.0),
                                 std::fmax(std::fabs(t[1] + 2.0), std::fabs(t[2] - 3.0)));
    add("pekeris_taylor_match", dev, 1e-10);
  }

  const QuantumState ground{0, s.ell, s.dim};
  try {
    const auto spectrum = solve_energy(p, ground);
    const auto c = derive_coefficients(p, ground);
    const auto pk = pekeris_coefficients(p.radius, p.surface_thickness);
    const double e = spectrum.e_selected();
    const auto sp = solve_susy_parameters(c, pk, p, e);
    const auto res = matching_residuals(sp, radial_coefficients(c, pk, p, e), p.surface_thickness);
    add("matching_relations_residual", std::fmax(res[0], std::fmax(res[1], res[2])), 1e-10);
    add("intercept_two_routes", std::fabs(sp.A - intercept_closed_form(c, pk, p, e)), 1e-10);
    const auto g = ground_state_energy(p, ground);
    add("ground_state_equation_agreement",
        std::fmax(std::fabs(*g.e_upper - *spectrum.e_upper), std::fabs(*g.e_lower - *spectrum.e_lower)),
        1e-10);
  } catch (const SolverError& e) {
    add_error("ground_state_checks", e);
  }

  std::optional<SpectrumResult> spectrum;
  try {
    spectrum = solve_energy(p, s);
    const auto roots = bracketed_roots(p, s, -p.mass - 50.0, p.mass + 50.0);
    double dev = std::nan("");
    if (roots.size() == 2) {
      dev = std::fmax(std::fabs(roots[0] - *spectrum->e_lower), std::fabs(roots[1] - *spectrum->e_upper));
    }
    add("closed_form_vs_bracketing", dev, 1e-10);
    const double e = spectrum->e_selected();
    add("back_substitution_residual",
        std::fabs(energy_equation_residual(e, p, s)) / std::fmax(1.0, e * e), 1e-9);
  } catch (const SolverError& e) {
    add_error("spectrum", e);
  }

  if (!with_oracle) {
    checks.push_back({"oracle_vs_analytic", "skipped", 0.0, 1e-3, "oracle disabled"});
  } else if (!spectrum) {
    checks.push_back({"oracle_vs_analytic", "skipped", 0.0, 1e-3, "no analytic root"});
  } else if (!spectrum->diagnostics.normalizable) {
    checks.push_back({"oracle_vs_analytic", "skipped", spectrum->a_selected, 1e-3,
                      "selected root has A >= 0, not a decaying bound state"});
  } else {
    try {
      const double e = spectrum->e_selected();
      auto cfg = default_shooting_config(p, e - 0.5, e + 0.5);
      const auto found = find_eigenvalues(cfg, p, s, 16);
      double best = std::numeric_limits<double>::infinity();
      for (const auto& ev : found) best = std::fmin(best, std::fabs(ev.energy - e));
      add("oracle_vs_analytic", best, 1e-3);
    } catch (const SolverError& err) {
      add_error("oracle_vs_analytic", err);
    }
  }
  return checks;
}

}  // namespace

std::string format_record(const SweepRow& row, Format format) {
  const auto& r = row.result;
  if (format == Format::JsonLines) {
    nlohmann::ordered_json j;
    j["alpha_prime"] = row.alpha_prime;
    j["dim"] = row.state.dim;
    j["ell"] = row.state.ell;
    j["n"] = row.state.n;
    j["e_upper"] = r && r->e_upper ? nlohmann::ordered_json(*r->e_upper) : nullptr;
    j["e_lower"] = r && r->e_lower ? nlohmann::ordered_json(*r->e_lower) : nullptr;
    j["e_binding"] = r ? nlohmann::ordered_json(r->e_binding) : nullptr;
    j["branch"] = r ? nlohmann::ordered_json(to_string(r->branch)) : nullptr;
    j["roots_real"] = r ? r->diagnostics.roots_real : false;
    j["normalizable"] = r ? r->diagnostics.normalizable : false;
    j["error"] = row.error ? nlohmann::ordered_json(std::string(to_string(*row.error))) : nullptr;
    return j.dump();
  }
  std::ostringstream os;
  os << number(row.alpha_prime) << ',' << row.state.dim << ',' << row.state.ell << ','
     << row.state.n << ',';
  os << (r && r->e_upper ? number(*r->e_upper) : "") << ',';
  os << (r && r->e_lower ? number(*r->e_lower) : "") << ',';
  os << (r ? number(r->e_binding) : "") << ',';
  os << (r ? to_string(r->branch) : "") << ',';
  os << (r && r->diagnostics.roots_real ? "true" : "false") << ',';
  os << (r && r->diagnostics.normalizable ? "true" : "false") << ',';
  os << (row.error ? std::string(to_string(*row.error)) : "");
  return os.str();
}

std::string format_grid(const std::vector<SweepRow>& rows, int which) {
  std::vector<double> alphas;
  for (const auto& row : rows) {
    bool seen = false;
    for (double a : alphas) seen = seen || a == row.alpha_prime;
    if (!seen) alphas.push_back(row.alpha_prime);
  }
  auto key = [which](const SweepRow& row) { return which == 1 ? row.state.dim : row.state.ell; };
  std::vector<int> keys;
  for (const auto& row : rows) {
    bool seen = false;
    for (int k : keys) seen = seen || k == key(row);
    if (!seen) keys.push_back(key(row));
  }
  std::ostringstream os;
  os << (which == 1 ? "dim" : "ell");
  for (double a : alphas) os << ",alpha_prime=" << number(a);
  os << '\n';
  for (int k : keys) {
    os << k;
    for (double a : alphas) {
      os << ',';
      for (const auto& row : rows) {
        if (key(row) != k || row.alpha_prime != a) continue;
        os << (row.result ? fixed5(row.result->e_binding) : std::string(to_string(*row.error)));
      }
    }
    os << '\n';
  }
  return os.str();
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Bound states of the D-dimensional Dirac equation with a Woods-Saxon potential "
               "under minimal-length deformation"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "flat key=value file; command-line flags take precedence");

  auto& p = opt.params;
  app.add_option("--mass", p.mass, "M (fm^-1)")->capture_default_str();
  app.add_option("--surface-thickness", p.surface_thickness, "a (fm)")->capture_default_str();
  app.add_option("--radius", p.radius, "R (fm)")->capture_default_str();
  app.add_option("--depth", p.depth, "V0 (fm^-1)")->capture_default_str();
  app.add_option("--e0", p.e0, "E0 (fm^-1)")->capture_default_str();
  app.add_option("--alpha-prime", p.alpha_prime, "minimal-length parameter (fm^2)")
      ->capture_default_str();
  app.add_option("--ell", opt.state.ell, "azimuthal quantum number")->capture_default_str();
  app.add_option("--dim", opt.state.dim, "spatial dimension D")->capture_default_str();
  app.add_option("--n", opt.state.n, "radial quantum number")->capture_default_str();
  app.add_option("--format", opt.format, "csv | jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}))
      ->capture_default_str();
  app.add_option("-o,--output", opt.output, "write to this file instead of stdout");

  auto* table = app.add_subcommand("table", "reproduce reference table 1 (vs D) or 2 (vs l)");
  table->add_option("which", opt.table, "1 or 2")->required()->check(CLI::IsMember({1, 2}));
  table->add_flag("--grid", opt.grid_layout, "5x4 grid layout instead of records");

  auto* solve = app.add_subcommand("solve", "solve one configuration");

  auto* sweep_cmd = app.add_subcommand("sweep", "evaluate a Cartesian grid of configurations");
  sweep_cmd->add_option("--alpha-primes", opt.alpha_primes)->delimiter(',')->required();
  sweep_cmd->add_option("--dims", opt.dims)->delimiter(',')->required();
  sweep_cmd->add_option("--ells", opt.ells)->delimiter(',')->required();
  sweep_cmd->add_option("--ns", opt.ns)->delimiter(',');

  auto* wave = app.add_subcommand("wavefunction", "emit r,F samples of the analytic ground state");
  wave->add_option("--samples", opt.samples, "number of samples")->capture_default_str();
  wave->add_option("--r-max", opt.r_max, "sampling/normalization cutoff (fm); 0 = automatic");

  auto* verify = app.add_subcommand("verify", "run self-consistency checks");
  verify->add_flag("--no-oracle", opt.no_oracle, "skip the shooting cross-check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  if (!opt.output.empty()) {
    file.open(opt.output);
    if (!file) {
      err << "error: cannot open " << opt.output << '\n';
      return kUsage;
    }
  }
  std::ostream& sink = opt.output.empty() ? out : file;
  const Format format = parse_format(opt.format);

  try {
    for (const auto& w : validate(p)) err << "warning: " << w << '\n';

    if (*table) {
      const auto rows = table_rows(p, opt.table);
      if (opt.grid_layout) {
        sink << format_grid(rows, opt.table);
      } else {
        emit_records(sink, rows, format);
      }
      for (const auto& row : rows) {
        if (row.error) return kCheckFailed;
      }
      return kOk;
    }

    if (*solve) {
      validate(opt.state);
      SweepRow row;
      row.alpha_prime = p.alpha_prime;
      row.state = opt.state;
      try {
        row.result = solve_energy(p, opt.state);
      } catch (const SolverError& e) {
        row.error = e.kind();
        row.message = e.what();
      }
      emit_records(sink, {row}, format);
      if (row.error) {
        err << "error: " << row.message << '\n';
        return exit_code_for(*row.error);
      }
      return kOk;
    }

    if (*sweep_cmd) {
      SweepGrid grid{opt.alpha_primes, opt.dims, opt.ells, opt.ns.empty() ? std::vector<int>{0} : opt.ns};
      for (double a : grid.alpha_primes) {
        PhysicalParams probe = p;
        probe.alpha_prime = a;
        validate(probe);
      }
      emit_records(sink, sweep(p, grid), format);
      return kOk;
    }

    if (*wave) {
      if (opt.samples < 1) throw SolverError(ErrorKind::InvalidInput, "--samples must be >= 1");
      if (opt.r_max < 0.0) throw SolverError(ErrorKind::InvalidInput, "--r-max must be >= 0");
      QuantumState ground = opt.state;
      ground.n = 0;
      validate(ground);
      const auto spectrum = solve_energy(p, ground);
      const auto c = derive_coefficients(p, ground);
      const auto pk = pekeris_coefficients(p.radius, p.surface_thickness);
      const auto sp = solve_susy_parameters(c, pk, p, spectrum.e_selected());
      const auto wf = normalize(sp.A, sp.B, p.surface_thickness, p.radius,
                                opt.r_max > 0.0 ? std::optional<double>(opt.r_max) : std::nullopt);
      sink << "r,F\n";
      const int n = opt.samples;
      for (int i = 0; i < n; ++i) {
        const double r = n == 1 ? 0.0 : wf.r_max * i / (n - 1);
        sink << number(r) << ',' << number(evaluate(wf, r)) << '\n';
      }
      return kOk;
    }

    if (*verify) {
      validate(opt.state);
      const auto checks = run_checks(p, opt.state, !opt.no_oracle);
      bool ok = true;
      if (format == Format::Csv) sink << "check,status,value,threshold,note\n";
      for (const auto& c : checks) {
        ok = ok && c.status != "fail";
        if (format == Format::Csv) {
          sink << c.name << ',' << c.status << ',' << number(c.value) << ',' << number(c.threshold)
               << ',' << c.note << '\n';
        } else {
          nlohmann::ordered_json j;
          j["check"] = c.name;
          j["status"] = c.status;
          j["value"] = std::isfinite(c.value) ? nlohmann::ordered_json(c.value) : nullptr;
          j["threshold"] = c.threshold;
          j["note"] = c.note;
          sink << j.dump() << '\n';
        }
      }
      return ok ? kOk : kCheckFailed;
    }
  } catch (const SolverError& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  }
  return kUsage;
}

}  // namespace wsdirac::cli
