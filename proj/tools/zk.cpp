// Command-line interface: every analysis is reachable as a subcommand, with
// artifacts written as CSV/JSON under the output directory.
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "zk/checks.hpp"
#include "zk/conservation.hpp"
#include "zk/csv.hpp"
#include "zk/ode.hpp"
#include "zk/parse.hpp"
#include "zk/modulation.hpp"
#include "zk/prolongation.hpp"
#include "zk/reduced.hpp"
#include "zk/solutions.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitAssertion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct GlobalArgs {
  std::string config_file;
  std::string out_dir = "out";
  std::uint64_t seed = 42;
  double tol = 0.0;
  zk::ParamTable params;
};

void apply_config(GlobalArgs& g) {
  if (g.config_file.empty()) return;
  std::ifstream in(g.config_file);
  if (!in) throw std::runtime_error("cannot read config '" + g.config_file + "'");
  nlohmann::json j;
  in >> j;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      g.seed = value.get<std::uint64_t>();
    } else if (key == "out") {
      g.out_dir = value.get<std::string>();
    } else if (key == "tol") {
      g.tol = value.get<double>();
      if (g.tol <= 0.0) throw CLI::ValidationError("tol must be positive");
    } else if (key == "params") {
      for (const auto& [pk, pv] : value.items()) g.params[pk] = pv.get<double>();
    } else {
      throw CLI::ValidationError("unknown config key '" + key + "'");
    }
  }
}

zk::RunOptions options_from(const GlobalArgs& g, bool with_files) {
  zk::RunOptions opt;
  opt.seed = g.seed;
  opt.tol = g.tol;
  if (with_files) opt.out_dir = g.out_dir;
  return opt;
}

int finish(const zk::Report& rep, const GlobalArgs& g, const std::string& json_name) {
  std::fputs(rep.render_text().c_str(), stdout);
  if (!json_name.empty()) {
    std::filesystem::create_directories(g.out_dir);
    zk::write_report_json(rep, g.out_dir + "/" + json_name);
  }
  return rep.ok() ? kExitOk : kExitAssertion;
}

bool parse_span(const std::string& text, double& lo, double& hi) {
  auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    lo = std::stod(text.substr(0, colon));
    hi = std::stod(text.substr(colon + 1));
  } catch (...) {
    return false;
  }
  return lo < hi;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"analysis toolkit for the (3+1)-dimensional nonlinear drift equation"};
  app.require_subcommand(1);

  GlobalArgs g;
  app.add_option("--config", g.config_file, "JSON run configuration");
  app.add_option("--out", g.out_dir, "artifact output directory");
  app.add_option("--seed", g.seed, "RNG seed for sampling checks");
  app.add_option("--tol", g.tol, "tolerance override for residual checks");

  // --- algebra ---
  auto* algebra = app.add_subcommand("algebra", "commutator/adjoint/invariant tables and checks");
  bool tables = false;
  algebra->add_flag("--tables", tables, "write the table CSVs");

  // --- check-symmetries ---
  auto* sym = app.add_subcommand("check-symmetries", "invariance residuals of the generators");
  int sym_points = 100;
  sym->add_option("--points", sym_points, "number of sampled jet points")->check(CLI::PositiveNumber);

  // --- verify-solution ---
  auto* verify = app.add_subcommand("verify-solution", "residual of a cataloged closed form");
  std::string sol_name;
  std::string grid_kind = "default";
  verify->add_option("--name", sol_name, "record name (u1, u2-printed, ...)")->required();
  verify->add_option("--grid", grid_kind, "grid spec (default)");

  // --- reduce ---
  auto* reduce = app.add_subcommand("reduce", "reduced-equation catalog and candidate checks");
  bool list_only = false;
  std::string reduce_check;
  reduce->add_flag("--list", list_only, "list the cataloged reduced equations");
  reduce->add_option("--check", reduce_check, "run a single named check");

  // --- integrate ---
  auto* integrate = app.add_subcommand("integrate", "integrate a reduced ODE");
  std::string ode_id = "x1";
  std::string method = "rkf45";
  double step_h = 0.01, rtol = 1e-8, atol = 1e-8;
  std::string span_text, out_file = "trajectory.csv";
  std::vector<double> ic;
  integrate->add_option("--ode", ode_id, "configuration id: x1, x3, d1, d2, d3");
  integrate->add_option("--method", method, "rk4 or rkf45")
      ->check(CLI::IsMember({"rk4", "rkf45"}));
  integrate->add_option("--step", step_h, "rk4 step size")->check(CLI::PositiveNumber);
  integrate->add_option("--rtol", rtol, "rkf45 relative tolerance")->check(CLI::PositiveNumber);
  integrate->add_option("--atol", atol, "rkf45 absolute tolerance")->check(CLI::PositiveNumber);
  integrate->add_option("--span", span_text, "integration span lo:hi");
  integrate->add_option("--ic", ic, "initial data: lambda0 H0 Hp0")->expected(3);
  integrate->add_option("--out-file", out_file, "trajectory CSV name");

  // --- mi-spectrum ---
  auto* mi = app.add_subcommand("mi-spectrum", "dispersion and gain spectrum sweep");
  std::string p_text = "1,2,3";
  std::string a_text = "0:4:401";
  std::string mi_file = "spectrum.csv";
  mi->add_option("--p", p_text, "comma-separated p values");
  mi->add_option("--A", a_text, "A sweep lo:hi:n");
  mi->add_option("--out-file", mi_file, "spectrum CSV name");

  // --- conserve ---
  auto* conserve = app.add_subcommand("conserve", "conserved-vector divergence on a solution");
  std::string gen_name = "D6";
  std::string psi_text = "y";
  std::string cons_solution = "u1";
  std::string div_file = "divergence.csv";
  conserve->add_option("--generator", gen_name, "generator D1..D7");
  conserve->add_option("--psi", psi_text, "substitution expression");
  conserve->add_option("--solution", cons_solution, "witness solution record");
  conserve->add_option("--out-file", div_file, "per-point divergence CSV name");

  // --- report ---
  app.add_subcommand("report", "run every check and write all artifacts");

  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
    apply_config(g);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("algebra"))
      return finish(zk::run_algebra_checks(options_from(g, tables)), g, "algebra.json");

    if (app.got_subcommand("check-symmetries")) {
      zk::RunOptions opt = options_from(g, true);
      opt.n_points = sym_points;
      return finish(zk::run_symmetry_checks(opt), g, "symmetries.json");
    }

    if (app.got_subcommand("verify-solution")) {
      if (grid_kind != "default") {
        std::fprintf(stderr, "error: unknown grid spec '%s'\n", grid_kind.c_str());
        return kExitUsage;
      }
      const zk::SolutionRecord& s = zk::lookup_solution(sol_name);
      double tol = g.tol > 0.0 ? g.tol : 1e-10;
      zk::GridSpec grid = zk::default_grid(s);
      zk::ResidualReport r = zk::pde_residual(s, grid, tol);
      std::filesystem::create_directories(g.out_dir);
      zk::dump_residual_csv(s, grid, g.out_dir + "/residual_" + s.name() + ".csv");

      zk::Report rep;
      zk::CheckResult c;
      c.name = "solutions/residual-" + s.name();
      bool asserted = s.name() == "u1" || s.name() == "u2-corrected" || s.name() == "const";
      c.status = asserted ? (r.pass ? zk::CheckStatus::Pass : zk::CheckStatus::Fail)
                          : zk::CheckStatus::Reported;
      c.value = r.max_abs;
      c.threshold = tol;
      c.source = s.source();
      char buf[160];
      std::snprintf(buf, sizeof buf, "max |Delta| = %.6g at (%g, %g, %g, %g) over %zu points",
                    r.max_abs, r.argmax[0], r.argmax[1], r.argmax[2], r.argmax[3], r.n_points);
      c.details = buf;
      rep.add(c);
      return finish(rep, g, "verify_" + s.name() + ".json");
    }

    if (app.got_subcommand("reduce")) {
      if (list_only) {
        for (const zk::ReducedEquation& eq : zk::reduced_catalog()) {
          std::string vars;
          for (const std::string& v : eq.display_vars) vars += (vars.empty() ? "" : ",") + v;
          std::printf("%-28s vars(%s)  %s\n", eq.name.c_str(), vars.c_str(), eq.source.c_str());
        }
        return kExitOk;
      }
      if (!reduce_check.empty()) {
        for (const zk::ReducedCheck& chk : zk::reduced_checks()) {
          if (chk.name != reduce_check) continue;
          zk::ResidualReport r = zk::run_reduced_check(chk);
          std::printf("%s: max residual %.6g (%s)\n", chk.name.c_str(), r.max_abs,
                      chk.expect_pass ? "asserted" : "reported");
          return chk.expect_pass && !r.pass ? kExitAssertion : kExitOk;
        }
        std::fprintf(stderr, "error: unknown check '%s'\n", reduce_check.c_str());
        return kExitUsage;
      }
      return finish(zk::run_reduction_checks(options_from(g, true)), g, "reduced.json");
    }

    if (app.got_subcommand("integrate")) {
      zk::ODEProblem problem = zk::lookup_ode_figure(ode_id).problem;
      if (!span_text.empty()) {
        if (!parse_span(span_text, problem.span_lo, problem.span_hi)) {
          std::fprintf(stderr, "error: bad span '%s'\n", span_text.c_str());
          return kExitUsage;
        }
        problem.lambda0 = problem.span_lo;
      }
      if (!ic.empty()) {
        problem.lambda0 = ic[0];
        problem.h0 = ic[1];
        problem.hp0 = ic[2];
      }
      zk::IntegratorConfig cfg;
      cfg.method = method == "rk4" ? zk::Method::Rk4 : zk::Method::Rkf45;
      cfg.h = step_h;
      cfg.rtol = rtol;
      cfg.atol = atol;
      zk::Trajectory t = cfg.method == zk::Method::Rk4 ? zk::rk4_integrate(problem, cfg)
                                                       : zk::rkf45_integrate(problem, cfg);
      std::filesystem::create_directories(g.out_dir);
      zk::CsvWriter csv(g.out_dir + "/" + out_file, {"lambda", "H", "Hprime", "method"});
      for (std::size_t i = 0; i < t.lambda.size(); ++i)
        csv.row({zk::CsvWriter::num(t.lambda[i]), zk::CsvWriter::num(t.h[i]),
                 zk::CsvWriter::num(t.hp[i]), method});
      std::printf("%zu nodes, %lld accepted, %lld rejected%s%s\n", t.lambda.size(), t.accepted,
                  t.rejected, t.error ? ", error: " : "", t.error ? t.error_msg.c_str() : "");
      return t.error ? kExitAssertion : kExitOk;
    }

    if (app.got_subcommand("mi-spectrum")) {
      std::vector<double> ps;
      std::string token;
      for (std::stringstream ss(p_text); std::getline(ss, token, ',');)
        ps.push_back(std::stod(token));
      double a_lo = 0.0, a_hi = 4.0;
      int n = 401;
      {
        auto c1 = a_text.find(':');
        auto c2 = a_text.rfind(':');
        if (c1 == std::string::npos || c2 == c1) {
          std::fprintf(stderr, "error: bad sweep spec '%s'\n", a_text.c_str());
          return kExitUsage;
        }
        a_lo = std::stod(a_text.substr(0, c1));
        a_hi = std::stod(a_text.substr(c1 + 1, c2 - c1 - 1));
        n = std::stoi(a_text.substr(c2 + 1));
      }
      auto rows = zk::sweep(ps, a_lo, a_hi, n);
      std::filesystem::create_directories(g.out_dir);
      zk::CsvWriter csv(g.out_dir + "/" + mi_file,
                        {"p", "A", "w_re", "w_im", "w_im_neg", "gain", "stable"});
      for (const zk::SpectrumRow& r : rows)
        csv.row({zk::CsvWriter::num(r.p), zk::CsvWriter::num(r.A), zk::CsvWriter::num(r.w_re),
                 zk::CsvWriter::num(r.w_im), zk::CsvWriter::num(r.w_im_neg),
                 zk::CsvWriter::num(r.gain), r.stable ? "1" : "0"});
      std::printf("%zu rows written\n", rows.size());
      return kExitOk;
    }

    if (app.got_subcommand("conserve")) {
      int gen = -1;
      for (int i = 0; i < 7; ++i)
        if (gen_name == zk::symmetry_basis()[static_cast<std::size_t>(i)].name) gen = i;
      if (gen < 0) {
        std::fprintf(stderr, "error: unknown generator '%s'\n", gen_name.c_str());
        return kExitUsage;
      }
      const zk::SolutionRecord& s = zk::lookup_solution(cons_solution);
      zk::Expr psi = zk::parse(psi_text);
      zk::ConservedVector cv =
          zk::build_conserved_vector(zk::symmetry_basis()[static_cast<std::size_t>(gen)], psi);
      double tol = g.tol > 0.0 ? g.tol : 1e-8;
      zk::GridSpec grid = zk::default_grid(s);
      zk::ParamTable params = s.defaults();
      for (const auto& [k, v] : g.params) params[k] = v;
      for (const std::string& name : zk::params_of(zk::divergence(cv)))
        if (!params.count(name)) params[name] = 1.0;
      zk::ResidualReport r = zk::divergence_residual(cv, s, grid, tol, &params);

      std::filesystem::create_directories(g.out_dir);
      {
        zk::Expr div = zk::divergence(cv);
        zk::CsvWriter csv(g.out_dir + "/" + div_file, {"x", "y", "z", "t", "divergence"});
        for (std::size_t i = 0; i < grid.size(); ++i) {
          std::array<double, 4> pt = grid.point(i);
          if (!s.point_admissible(pt, params)) continue;
          try {
            double v = zk::eval(div, s.jet(pt, params), params);
            csv.row_nums({pt[0], pt[1], pt[2], pt[3], v});
          } catch (const zk::DomainError&) {
          }
        }
      }
      bool asserted = gen == 1 || gen == 3 || gen == 5 || gen == 6;  // translations
      zk::Report rep;
      zk::CheckResult c;
      c.name = "conservation/divergence-" + gen_name;
      c.status = asserted ? (r.pass ? zk::CheckStatus::Pass : zk::CheckStatus::Fail)
                          : zk::CheckStatus::Reported;
      c.value = r.max_abs;
      c.threshold = tol;
      c.source = "conserved-vector construction for " + gen_name;
      c.details = "witness: " + s.name() + ", psi = " + psi_text;
      rep.add(c);
      return finish(rep, g, "");
    }

    if (app.got_subcommand("report"))
      return finish(zk::run_all_checks(options_from(g, true)), g, "");

  } catch (const zk::ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const std::ios_base::failure& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kExitIo;
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  }
  return kExitUsage;
}
