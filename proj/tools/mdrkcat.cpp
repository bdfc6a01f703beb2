// Command-line front end: runs the five preset test problems, convergence
// studies, the von Neumann stability analysis, and coefficient/tableau dumps.
//
// Exit codes: 0 success, 1 solver divergence, 2 usage error, 3 I/O error.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mdrk/convergence.hpp"
#include "mdrk/io.hpp"
#include "mdrk/problems.hpp"
#include "mdrk/stability.hpp"

namespace fs = std::filesystem;
using namespace mdrk;

namespace {

struct MeshRange {
  std::vector<int> list;
};

MeshRange parse_mesh_range(const std::string& spec) {
  MeshRange out;
  auto colon = spec.find(':');
  if (colon == std::string::npos) {
    out.list.push_back(std::stoi(spec));
  } else {
    int lo = std::stoi(spec.substr(0, colon));
    int hi = std::stoi(spec.substr(colon + 1));
    out.list = doubling_meshes(lo, hi);
  }
  for (int M : out.list)
    if (M < 2) throw CLI::ValidationError("--M", "mesh sizes must be at least 2");
  return out;
}

std::string dat_name(const std::string& kind, const std::string& problem,
                     const std::string& scheme, int p, double sigma) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", sigma);
  return kind + "_" + problem + "_" + scheme + "_p" + std::to_string(p) + "_cfl" + buf +
         ".dat";
}

void ensure_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

int resolve_p(const MdrkTableau& tab, int p_flag) {
  return p_flag > 0 ? p_flag : tab.recommended_p;
}

struct SolveSummary {
  double t = 0.0;
  long steps = 0;
  double min_dt = 0.0, max_dt = 0.0;
  std::optional<double> l1;
};

void print_summary(const std::string& label, const SolveSummary& s) {
  std::cout << label << ": t=" << fmt17(s.t) << " steps=" << s.steps
            << " min_dt=" << fmt17(s.min_dt) << " max_dt=" << fmt17(s.max_dt);
  if (s.l1)
    std::cout << " l1_error=" << fmt17(*s.l1);
  else
    std::cout << " l1_error=n/a";
  std::cout << "\n";
}

int do_solve(const std::string& problem, const std::string& scheme, int p_flag, double sigma,
             int M, const std::string& out_dir, std::optional<double> t_end_flag) {
  auto tab = get_tableau(scheme);
  int p = resolve_p(tab, p_flag);
  ensure_dir(out_dir);
  std::string path = out_dir + "/" + dat_name("sol", problem, scheme, p, sigma);
  SolveSummary summary;

  try {
    if (is_euler_problem(problem)) {
      auto prob = get_euler_problem(problem);
      double t_end = t_end_flag.value_or(prob.t_end);
      auto result = run_euler(prob, M, scheme, p, sigma, t_end);
      Mesh1D mesh(prob.xa, prob.xb, M);
      write_solution<3>(path, mesh, result.state.values, scheme, sigma, result.state.t);
      summary = {result.state.t, result.log.steps, result.log.min_dt, result.log.max_dt, {}};
      if (prob.reference == ReferenceKind::advected_profile)
        summary.l1 = l1_error<3>(result.state.values, euler_reference(prob, M, t_end),
                                 mesh.dx);
    } else {
      auto prob = get_scalar_problem(problem);
      double t_end = t_end_flag.value_or(prob.t_end);
      auto result = run_scalar(prob, M, scheme, p, sigma, t_end);
      Mesh1D mesh(prob.xa, prob.xb, M);
      write_solution<1>(path, mesh, result.state.values, scheme, sigma, result.state.t);
      summary = {result.state.t, result.log.steps, result.log.min_dt, result.log.max_dt, {}};
      summary.l1 = l1_error<1>(result.state.values, scalar_reference(prob, M, t_end),
                               mesh.dx);
    }
  } catch (const DivergedError& e) {
    std::cerr << "diverged: " << e.what() << " (step " << e.step() << ", last valid t="
              << e.last_valid_time() << ")\n";
    auto out = open_output(path + ".diverged");
    out << "# run diverged at step " << e.step() << ", last valid t=" << e.last_valid_time()
        << "\n";
    return 1;
  }
  std::cout << "wrote " << path << "\n";
  print_summary("solve " + problem + " " + scheme, summary);
  return 0;
}

int do_convergence(const std::string& problem, const std::string& scheme, int p_flag,
                   double sigma, const MeshRange& meshes, const std::string& out_dir,
                   std::optional<double> t_end_flag) {
  auto tab = get_tableau(scheme);
  int p = resolve_p(tab, p_flag);
  ensure_dir(out_dir);
  std::string path = out_dir + "/" + dat_name("conv", problem, scheme, p, sigma);

  std::vector<ErrorRecord> records;
  if (is_euler_problem(problem)) {
    auto prob = get_euler_problem(problem);
    if (t_end_flag) prob.t_end = *t_end_flag;
    std::optional<FineReference> fine;
    if (prob.reference == ReferenceKind::fine_self_reference) {
      SelfReferenceConfig cfg;
      std::cout << "computing fine self-reference (" << cfg.scheme << ", p=" << cfg.p
                << ", M=" << cfg.fine_M << ", sigma=" << cfg.sigma << ")...\n";
      fine = self_reference(prob, cfg);
    }
    records = convergence_study_euler(prob, scheme, p, sigma, meshes.list, fine);
  } else {
    auto prob = get_scalar_problem(problem);
    if (t_end_flag) prob.t_end = *t_end_flag;
    records = convergence_study_scalar(prob, scheme, p, sigma, meshes.list);
  }
  write_convergence(path, records, scheme, problem, p, sigma);
  std::cout << "wrote " << path << "\n";

  bool any_diverged = false;
  for (const auto& rec : records) {
    std::cout << "M=" << rec.M << " dx=" << fmt17(rec.dx);
    if (rec.diverged) {
      std::cout << " diverged\n";
      any_diverged = true;
    } else if (rec.skipped) {
      std::cout << " skipped (stencil exceeds mesh)\n";
    } else {
      std::cout << " l1=" << fmt17(rec.l1);
      if (std::isfinite(rec.observed_order)) std::cout << " order=" << rec.observed_order;
      std::cout << "\n";
    }
  }
  return any_diverged ? 1 : 0;
}

int do_stability(const std::string& scheme, int p_flag, const std::string& sweep) {
  auto tab = get_tableau(scheme);
  int p = resolve_p(tab, p_flag);
  double smin = 0.0, smax = -1.0, sstep = 0.0;
  if (!sweep.empty()) {
    if (std::sscanf(sweep.c_str(), "%lf:%lf:%lf", &smin, &smax, &sstep) != 3)
      throw CLI::ValidationError("--sweep", "expected sigma_min:sigma_max:step");
  }
  auto rep = stability_report(tab, p, smin, smax, sstep);
  std::cout << "scheme=" << rep.scheme << " p=" << rep.p
            << " critical_cfl=" << fmt17(rep.critical_cfl) << "\n";
  for (std::size_t i = 0; i < rep.sigmas.size(); ++i)
    std::cout << fmt17(rep.sigmas[i]) << ' ' << fmt17(rep.max_g[i]) << "\n";
  return 0;
}

int do_coefficients(int p, const std::string& kind) {
  auto coeffs = StencilCoefficients::generate(p);
  auto dump_row = [](const std::vector<Rational>& row) {
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cout << (i ? " " : "") << row[i].to_string();
    std::cout << "\n";
  };
  if (kind.empty() || kind == "delta") {
    std::cout << "# delta, rows k=0.." << 2 * p << ", columns j=-" << p << ".." << p << "\n";
    for (int k = 0; k <= 2 * p; ++k) dump_row(coeffs.delta[k]);
  }
  if (kind.empty() || kind == "gamma") {
    for (int m = -p + 1; m <= p; ++m) {
      std::cout << "# gamma at offset m=" << m << ", rows k=0.." << 2 * p - 1
                << ", columns j=" << (-p + 1) << ".." << p << "\n";
      for (int k = 0; k <= 2 * p - 1; ++k) dump_row(coeffs.gamma_row(k, m));
    }
  }
  if (kind.empty() || kind == "lambda") {
    std::cout << "# lambda, rows k=1.." << 2 * p << " (holding lambda^(k-1)), columns j="
              << (-p + 1) << ".." << p << "\n";
    for (int k = 1; k <= 2 * p; ++k) dump_row(coeffs.lambda[k]);
  }
  return 0;
}

int do_tableaux(const std::string& scheme) {
  auto tab = get_tableau(scheme);
  std::cout << "scheme=" << tab.name << " r=" << tab.r << " s=" << tab.s << " q=" << tab.q
            << " recommended_p=" << tab.recommended_p << "\n";
  std::cout << "c:";
  for (double v : tab.c) std::cout << ' ' << fmt17(v);
  std::cout << "\n";
  for (int k = 1; k <= tab.r; ++k) {
    std::cout << "a^(" << k << "):\n";
    for (int l = 0; l < tab.s; ++l) {
      std::cout << " ";
      for (int nu = 0; nu < tab.s; ++nu) std::cout << ' ' << fmt17(tab.a[k - 1][l][nu]);
      std::cout << "\n";
    }
    std::cout << "b^(" << k << "):";
    for (int l = 0; l < tab.s; ++l) std::cout << ' ' << fmt17(tab.b[k - 1][l]);
    std::cout << "\n";
  }
  auto v = validate_tableau(tab);
  std::cout << "validation: " << (v.ok ? "ok" : "FAILED") << "\n";
  for (const auto& f : v.failures) std::cout << "  " << f << "\n";
  return v.ok ? 0 : 1;
}

struct CurveSpec {
  std::string problem;
  std::string scheme;
  int p;
  double sigma;
  int expected_slope;
};

int do_reproduce(const std::string& what, const std::string& out_flag) {
  std::string out_dir = out_flag.empty() ? "reproduce_" + what : out_flag;
  ensure_dir(out_dir);

  if (what == "table2") {
    auto out = open_output(out_dir + "/table2.dat");
    out << "# columns: scheme p critical_cfl\n";
    for (const auto& name : mdrk_scheme_names()) {
      auto tab = get_tableau(name);
      auto rep = stability_report(tab, tab.recommended_p);
      out << rep.scheme << ' ' << rep.p << ' ' << fmt17(rep.critical_cfl) << "\n";
      std::cout << rep.scheme << " p=" << rep.p << " critical_cfl=" << fmt17(rep.critical_cfl)
                << "\n";
    }
    return 0;
  }

  std::vector<CurveSpec> curves;
  auto add_all_schemes = [&](const std::string& problem, double sigma) {
    for (const auto& name : mdrk_scheme_names()) {
      auto tab = get_tableau(name);
      curves.push_back({problem, name, tab.recommended_p, sigma,
                        std::min(2 * tab.recommended_p, tab.q)});
    }
  };
  if (what == "fig2") {
    for (int p = 1; p <= 6; ++p)
      curves.push_back({"burgers-cosine", "taylor-" + std::to_string(2 * p), p, 0.5, 2 * p});
    add_all_schemes("burgers-cosine", 0.5);
  } else if (what == "fig3") {
    add_all_schemes("burgers-expcossin", 0.5);
  } else if (what == "fig4") {
    add_all_schemes("buckley-downpulse", 0.5);
  } else if (what == "fig5") {
    add_all_schemes("euler-sinewave", 0.5);
  } else if (what == "fig6") {
    add_all_schemes("euler-sine-system", 0.15);
  } else {
    throw CLI::ValidationError("reproduce",
                               "unknown id '" + what +
                                   "'; expected fig2|fig3|fig4|fig5|fig6|table2");
  }

  auto meshes = doubling_meshes(8, 1024);
  std::optional<FineReference> fine;
  if (what == "fig6") {
    SelfReferenceConfig cfg;
    std::cout << "computing fine self-reference (" << cfg.scheme << ", p=" << cfg.p
              << ", M=" << cfg.fine_M << ", sigma=" << cfg.sigma << ")...\n";
    fine = self_reference(get_euler_problem("euler-sine-system"), cfg);
  }

  auto manifest = open_output(out_dir + "/manifest.txt");
  manifest << "# columns: file scheme p sigma expected_slope status\n";
  for (const auto& c : curves) {
    std::vector<ErrorRecord> records;
    if (is_euler_problem(c.problem)) {
      records = convergence_study_euler(get_euler_problem(c.problem), c.scheme, c.p, c.sigma,
                                        meshes, fine);
    } else {
      records =
          convergence_study_scalar(get_scalar_problem(c.problem), c.scheme, c.p, c.sigma,
                                   meshes);
    }
    std::string file = dat_name("conv", c.problem, c.scheme, c.p, c.sigma);
    write_convergence(out_dir + "/" + file, records, c.scheme, c.problem, c.p, c.sigma);
    std::string diverged_list, skipped_list;
    for (const auto& rec : records) {
      if (rec.diverged)
        diverged_list += (diverged_list.empty() ? "" : ",") + std::to_string(rec.M);
      else if (rec.skipped)
        skipped_list += (skipped_list.empty() ? "" : ",") + std::to_string(rec.M);
    }
    std::string status;
    if (!diverged_list.empty()) status += "diverged:M=" + diverged_list;
    if (!skipped_list.empty())
      status += (status.empty() ? "" : ";") + std::string("skipped:M=") + skipped_list;
    if (status.empty()) status = "ok";
    manifest << file << ' ' << c.scheme << ' ' << c.p << ' ' << fmt17(c.sigma) << ' '
             << c.expected_slope << ' ' << status << "\n";
    std::cout << file << " " << status << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite-difference MDRKCAT solver for 1D hyperbolic conservation laws"};
  app.require_subcommand(1);

  std::string problem, scheme, out_dir = ".", mesh_spec = "64", sweep, kind, figure;
  int p_flag = 0;
  double sigma = 0.5;
  int coeff_p = 2;
  std::optional<double> t_end_flag;

  auto add_common = [&](CLI::App* cmd, bool with_problem) {
    if (with_problem)
      cmd->add_option("--problem", problem, "problem preset")->required();
    cmd->add_option("--scheme", scheme, "time integration scheme")->required();
    cmd->add_option("--p", p_flag, "stencil radius (default: ceil(q/2))");
    cmd->add_option("--sigma", sigma, "CFL number")->capture_default_str();
    cmd->add_option("--out", out_dir, "output directory")->capture_default_str();
    cmd->add_option("--t-end", [&t_end_flag](const std::vector<std::string>& vals) {
      t_end_flag = std::stod(vals[0]);
      return true;
    }, "final time override");
  };

  auto* solve = app.add_subcommand("solve", "run one case and dump the solution");
  add_common(solve, true);
  solve->add_option("--M", mesh_spec, "cell count")->capture_default_str();

  auto* conv = app.add_subcommand("convergence", "mesh refinement study");
  add_common(conv, true);
  conv->add_option("--M", mesh_spec, "cell count or doubling range lo:hi")->capture_default_str();

  auto* stab = app.add_subcommand("stability", "critical CFL via von Neumann analysis");
  stab->add_option("--scheme", scheme, "time integration scheme")->required();
  stab->add_option("--p", p_flag, "stencil radius (default: ceil(q/2))");
  stab->add_option("--sweep", sweep, "print max|g| table for sigma_min:sigma_max:step");

  auto* coef = app.add_subcommand("coefficients", "dump exact stencil coefficients");
  coef->add_option("--p", coeff_p, "stencil radius")->required();
  coef->add_option("--kind", kind, "delta|gamma|lambda (default: all)")
      ->check(CLI::IsMember({"delta", "gamma", "lambda"}));

  auto* tabcmd = app.add_subcommand("tableaux", "print an extended Butcher tableau");
  tabcmd->add_option("--scheme", scheme, "time integration scheme")->required();

  auto* repro = app.add_subcommand("reproduce", "run a preset batch of studies");
  repro->add_option("id", figure, "fig2|fig3|fig4|fig5|fig6|table2")->required();
  repro->add_option("--out", out_dir, "output directory (default reproduce_<id>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << "\n";
    return 2;
  }

  try {
    if (solve->parsed()) {
      auto meshes = parse_mesh_range(mesh_spec);
      if (meshes.list.size() != 1)
        throw CLI::ValidationError("--M", "solve expects a single cell count");
      return do_solve(problem, scheme, p_flag, sigma, meshes.list[0], out_dir, t_end_flag);
    }
    if (conv->parsed())
      return do_convergence(problem, scheme, p_flag, sigma, parse_mesh_range(mesh_spec),
                            out_dir, t_end_flag);
    if (stab->parsed()) return do_stability(scheme, p_flag, sweep);
    if (coef->parsed()) return do_coefficients(coeff_p, kind);
    if (tabcmd->parsed()) return do_tableaux(scheme);
    if (repro->parsed()) return do_reproduce(figure, out_dir == "." ? "" : out_dir);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DivergedError& e) {
    std::cerr << "diverged: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
