#include "zk/checks.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <set>

#include "zk/conservation.hpp"
#include "zk/csv.hpp"
#include "zk/equation.hpp"
#include "zk/lie_algebra.hpp"
#include "zk/modulation.hpp"
#include "zk/ode.hpp"
#include "zk/parse.hpp"
#include "zk/prolongation.hpp"
#include "zk/reduced.hpp"
#include "zk/rng.hpp"
#include "zk/solutions.hpp"

namespace zk {
namespace {

bool want_files(const RunOptions& opt) { return !opt.out_dir.empty(); }

std::string path_in(const RunOptions& opt, const std::string& file) {
  std::filesystem::create_directories(opt.out_dir);
  return opt.out_dir + "/" + file;
}

CheckResult pass_fail(std::string name, double value, double tol, std::string source,
                      std::string details = "") {
  CheckResult c;
  c.name = std::move(name);
  c.status = value < tol ? CheckStatus::Pass : CheckStatus::Fail;
  c.value = value;
  c.threshold = tol;
  c.source = std::move(source);
  c.details = std::move(details);
  return c;
}

CheckResult reported(std::string name, double value, std::string source, std::string details) {
  CheckResult c;
  c.name = std::move(name);
  c.status = CheckStatus::Reported;
  c.value = value;
  c.source = std::move(source);
  c.details = std::move(details);
  return c;
}

}  // namespace

// ---------------------------------------------------------------------------
// Algebra
// ---------------------------------------------------------------------------

Report run_algebra_checks(const RunOptions& opt) {
  Report rep;
  const auto& sc = structure_constants();
  const auto& golden = commutator_table_golden();

  double table_dev = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        table_dev = std::max(table_dev, std::fabs(sc.c[i][j][k] - golden[i][j][k].to_double()));
  rep.add(pass_fail("algebra/commutator-table", table_dev, 1e-15, "commutator table",
                    "49 computed brackets against the printed table"));

  double jacobi_dev = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k)
        for (int n = 0; n < 7; ++n) {
          double s = 0.0;
          for (int m = 0; m < 7; ++m)
            s += sc.c[i][j][m] * sc.c[m][k][n] + sc.c[j][k][m] * sc.c[m][i][n] +
                 sc.c[k][i][m] * sc.c[m][j][n];
          jacobi_dev = std::max(jacobi_dev, std::fabs(s));
        }
  rep.add(pass_fail("algebra/jacobi-identity", jacobi_dev, 1e-15, "commutator table",
                    "all 35 basis triples"));

  Rng rng(opt.seed, 1);
  double killing_dev = 0.0;
  for (int t = 0; t < 1000; ++t) {
    AlgebraElement l;
    for (double& v : l) v = rng.uniform(-2.0, 2.0);
    killing_dev =
        std::max(killing_dev, std::fabs(killing_form(l) - 2.0 * (l[0] * l[0] - l[2] * l[2])));
  }
  rep.add(pass_fail("algebra/killing-form", killing_dev, 1e-12,
                    "Killing-form closed expression", "trace(ad o ad) vs 2(l1^2-l3^2)"));

  Rng rng2(opt.seed, 2);
  double adj_dev = 0.0, mn_dev = 0.0;
  for (int t = 0; t < 100; ++t) {
    AlgebraElement l;
    for (double& v : l) v = rng2.uniform(-2.0, 2.0);
    std::array<double, 7> eps;
    for (double& e : eps) e = rng2.uniform(-1.5, 1.5);
    AlgebraElement closed = adjoint_transform(l, eps);
    AlgebraElement prod = mat_apply_row(l, global_adjoint(eps));
    for (int k = 0; k < 7; ++k) adj_dev = std::max(adj_dev, std::fabs(closed[k] - prod[k]));
    mn_dev = std::max({mn_dev, std::fabs(closed[0] - l[0]), std::fabs(closed[2] - l[2])});
  }
  rep.add(pass_fail("algebra/adjoint-closed-form-vs-matrix", adj_dev, 1e-12,
                    "adjoint coefficient transform",
                    "closed form against the product of the seven matrices"));
  rep.add(pass_fail("algebra/adjoint-invariance-l1-l3", mn_dev, 1e-12,
                    "adjoint-invariant coordinates l1, l3", ""));

  double rep_dev = 0.0;
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      for (double eps : {0.37, -1.2, 2.0}) {
        AlgebraElement got = adjoint_rep_entry(i, j, eps);
        AlgebraElement want = adjoint_rep_golden(i, j, eps);
        for (int k = 0; k < 7; ++k) rep_dev = std::max(rep_dev, std::fabs(got[k] - want[k]));
      }
  rep.add(pass_fail("algebra/adjoint-representation-table", rep_dev, 1e-12,
                    "adjoint representation table", "all 49 cells at three parameter values"));

  int sig_mismatch = 0;
  for (double d : {1.0, -1.0})
    for (const auto& row : signature_table_golden(d)) {
      InvariantSignature got = invariant_signature(row.element);
      const InvariantSignature& w = row.expected;
      bool ok = std::fabs(got.killing - w.killing) < 1e-12 && got.m == w.m && got.n == w.n &&
                got.o == w.o && got.p == w.p && got.q == w.q && got.r == w.r && got.s == w.s &&
                got.t == w.t && got.u == w.u;
      if (!ok) ++sig_mismatch;
    }
  rep.add(pass_fail("algebra/invariant-signature-table", static_cast<double>(sig_mismatch), 0.5,
                    "invariant-value table", "10 representatives, both sign choices"));

  if (want_files(opt)) {
    {
      CsvWriter csv(path_in(opt, "commutator.csv"), {"i", "j", "bracket"});
      for (int i = 0; i < 7; ++i)
        for (int j = 0; j < 7; ++j)
          csv.row({std::to_string(i + 1), std::to_string(j + 1),
                   bracket_string(golden[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])});
    }
    {
      CsvWriter csv(path_in(opt, "adjoint_representation.csv"), {"i", "j", "cell"});
      for (int i = 1; i <= 7; ++i)
        for (int j = 1; j <= 7; ++j)
          csv.row({std::to_string(i), std::to_string(j), adjoint_rep_cell_string(i, j)});
    }
    {
      CsvWriter csv(path_in(opt, "invariant_signatures.csv"),
                    {"label", "d", "K", "M", "N", "O", "P", "Q", "R", "S", "T", "U"});
      for (double d : {1.0, -1.0})
        for (const auto& row : signature_table_golden(d)) {
          InvariantSignature s = invariant_signature(row.element);
          csv.row({row.label, CsvWriter::num(d), CsvWriter::num(s.killing), CsvWriter::num(s.m),
                   CsvWriter::num(s.n), std::to_string(s.o), std::to_string(s.p),
                   std::to_string(s.q), std::to_string(s.r), std::to_string(s.s),
                   std::to_string(s.t), std::to_string(s.u)});
        }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Symmetries
// ---------------------------------------------------------------------------

Report run_symmetry_checks(const RunOptions& opt) {
  Report rep;
  double tol = opt.tol > 0.0 ? opt.tol : 1e-10;

  std::vector<std::pair<std::string, double>> rows;
  for (const VectorField& v : symmetry_basis()) {
    InvarianceSample s = invariance_residual(v, opt.n_points, opt.seed);
    rows.emplace_back(v.name, s.max_residual);
    rep.add(pass_fail("symmetry/invariance-" + v.name, s.max_residual, tol,
                      "infinitesimal generator table",
                      std::to_string(opt.n_points) + " on-manifold jet points"));
  }

  Rng rng(opt.seed, 3);
  std::array<double, 7> c;
  for (double& v : c) v = rng.uniform(-2.0, 2.0);
  InvarianceSample gen = invariance_residual(general_infinitesimal(c), opt.n_points, opt.seed);
  rows.emplace_back("general", gen.max_residual);
  rep.add(pass_fail("symmetry/invariance-general-field", gen.max_residual, 1e-9,
                    "general infinitesimal with arbitrary constants", ""));

  VectorField bad{parse("u"), parse("0"), parse("0"), parse("0"), parse("0"), "u*d/dx"};
  InvarianceSample ctrl = invariance_residual(bad, opt.n_points, opt.seed);
  rows.emplace_back("control", ctrl.max_residual);
  CheckResult cc;
  cc.name = "symmetry/control-field-detected";
  cc.status = ctrl.max_residual > 1e-3 ? CheckStatus::Pass : CheckStatus::Fail;
  cc.value = ctrl.max_residual;
  cc.threshold = 1e-3;
  cc.source = "non-symmetry control field";
  cc.details = "must exceed the threshold";
  rep.add(cc);

  if (want_files(opt)) {
    CsvWriter csv(path_in(opt, "symmetry_residuals.csv"), {"generator", "max_residual"});
    for (const auto& [name, val] : rows) csv.row({name, CsvWriter::num(val)});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Solutions
// ---------------------------------------------------------------------------

namespace {

void emit_solution_figure(const RunOptions& opt, const std::string& record, int var1, int var2,
                          const std::string& file) {
  const SolutionRecord& s = lookup_solution(record);
  GridSpec g;
  for (int d = 0; d < 4; ++d) g.axes[d] = AxisSpec::fixed_at(0.5);
  auto axis_for = [&](int v) {
    if (v == 3 && s.positive_time()) return AxisSpec::linspace(0.1, 2.1, 41);
    return AxisSpec::linspace(-2.0, 2.0, 41);
  };
  g.axes[var1] = axis_for(var1);
  g.axes[var2] = axis_for(var2);
  const char* names = "xyzt";
  CsvWriter csv(path_in(opt, file),
                {std::string(1, names[var1]), std::string(1, names[var2]), "u"});
  for (std::size_t i = 0; i < g.size(); ++i) {
    std::array<double, 4> pt = g.point(i);
    if (!s.point_admissible(pt, s.defaults())) continue;
    JetPoint p;
    p.set_base(pt[0], pt[1], pt[2], pt[3]);
    double v;
    try {
      v = eval(s.u(), p, s.defaults());
    } catch (const DomainError&) {
      continue;
    }
    csv.row_nums({pt[static_cast<std::size_t>(var1)], pt[static_cast<std::size_t>(var2)], v});
  }
}

}  // namespace

Report run_solution_checks(const RunOptions& opt) {
  Report rep;
  double tol = opt.tol > 0.0 ? opt.tol : 1e-10;

  const std::set<std::string> asserted = {"u1", "u2-corrected", "const"};
  std::vector<std::string> exact_names;
  for (const SolutionRecord& s : solution_catalog()) {
    if (s.name() == "u7") continue;  // handled by the speed scan
    ResidualReport r = pde_residual(s, default_grid(s), tol);
    char where[128];
    std::snprintf(where, sizeof where, "max |Delta| = %.6g at (%g, %g, %g, %g)", r.max_abs,
                  r.argmax[0], r.argmax[1], r.argmax[2], r.argmax[3]);
    if (asserted.count(s.name())) {
      rep.add(pass_fail("solutions/residual-" + s.name(), r.max_abs, tol, s.source(), where));
    } else {
      rep.add(reported("solutions/residual-" + s.name(), r.max_abs, s.source(),
                       std::string(provenance_name(s.provenance())) + " form: " + where));
    }
    if (r.max_abs < tol) exact_names.push_back(s.name());
  }

  SpeedScanResult scan = traveling_wave_speed_scan();
  {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "scan over d in [-2,2]: minimum residual %.3g at d = %g", scan.best_residual,
                  scan.best_d);
    if (scan.best_residual < 1e-8)
      rep.add(pass_fail("solutions/u7-speed-scan", scan.best_residual, 1e-8,
                        "traveling-wave closed form u7", buf));
    else
      rep.add(reported("solutions/u7-speed-scan", scan.best_residual,
                       "traveling-wave closed form u7", buf));
  }

  // Closure under the seven flows for every record that verified exactly.
  for (const std::string& name : exact_names) {
    const SolutionRecord& s = lookup_solution(name);
    double worst = 0.0;
    for (int g = 1; g <= 7; ++g)
      for (double eps : {0.3, -0.3, 1.0, -1.0}) {
        SolutionRecord t = group_transform(s, g, eps);
        ResidualReport r = pde_residual(t, default_grid(t), 1e-8);
        worst = std::max(worst, r.max_abs);
      }
    rep.add(pass_fail("solutions/closure-" + name, worst, 1e-8, "one-parameter solution families",
                      "28 transformed records (7 generators x 4 parameter values)"));
  }

  if (want_files(opt)) {
    {
      CsvWriter csv(path_in(opt, "u7_speed_scan.csv"), {"d", "max_residual"});
      for (const auto& row : scan.rows) csv.row_nums({row.d, row.max_residual});
    }
    emit_solution_figure(opt, "u1", 0, 3, "solution_u1_xt.csv");
    emit_solution_figure(opt, "u2-printed", 0, 3, "solution_u2_xt.csv");
    emit_solution_figure(opt, "u3-printed", 1, 3, "solution_u3_yt.csv");
    emit_solution_figure(opt, "u4-printed", 0, 3, "solution_u4_xt.csv");
    emit_solution_figure(opt, "u5", 0, 1, "solution_u5_xy.csv");
    emit_solution_figure(opt, "u6", 0, 1, "solution_u6_xy.csv");
    emit_solution_figure(opt, "u7", 0, 3, "solution_u7_xt.csv");
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

Report run_reduction_checks(const RunOptions& opt) {
  Report rep;
  std::vector<std::array<std::string, 3>> rows;
  for (const ReducedCheck& check : reduced_checks()) {
    ResidualReport r = run_reduced_check(check);
    rows.push_back({check.name, CsvWriter::num(r.max_abs), check.expect_pass ? "assert" : "report"});
    if (check.expect_pass)
      rep.add(pass_fail("reduced/" + check.name, r.max_abs, check.tol, check.source, ""));
    else
      rep.add(reported("reduced/" + check.name, r.max_abs, check.source,
                       "candidate does not satisfy this printed reduction row"));
  }
  if (want_files(opt)) {
    CsvWriter csv(path_in(opt, "reduced_checks.csv"), {"check", "max_residual", "kind"});
    for (const auto& row : rows) csv.row({row[0], row[1], row[2]});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Integrators
// ---------------------------------------------------------------------------

Report run_ode_checks(const RunOptions& opt) {
  Report rep;
  const OdeFigure& x1 = lookup_ode_figure("x1");

  auto sup_err = [](const Trajectory& t, const std::function<double(double)>& ref) {
    double e = 0.0;
    for (std::size_t i = 0; i < t.lambda.size(); ++i)
      e = std::max(e, std::fabs(t.h[i] - ref(t.lambda[i])));
    return e;
  };

  double errs[3];
  const double hs[3] = {0.04, 0.02, 0.01};
  for (int i = 0; i < 3; ++i) {
    IntegratorConfig cfg;
    cfg.h = hs[i];
    errs[i] = sup_err(rk4_integrate(x1.problem, cfg), x1.analytic_h);
  }
  double order_lo = std::log2(errs[0] / errs[1]);
  double order_hi = std::log2(errs[1] / errs[2]);
  bool order_ok = order_lo > 3.7 && order_lo < 4.3 && order_hi > 3.7 && order_hi < 4.3;
  CheckResult oc;
  oc.name = "ode/rk4-convergence-order";
  oc.status = order_ok ? CheckStatus::Pass : CheckStatus::Fail;
  oc.value = order_hi;
  oc.threshold = 4.3;
  oc.source = "fixed-step integrator on the first-chain reduction";
  {
    char buf[96];
    std::snprintf(buf, sizeof buf, "orders %.3f and %.3f, window [3.7, 4.3]", order_lo, order_hi);
    oc.details = buf;
  }
  rep.add(oc);

  rep.add(pass_fail("ode/rk4-vs-analytic", errs[2], 1e-6,
                    "closed-form solution of the first-chain reduction", "h = 0.01 on [-5,5]"));

  for (const OdeFigure& fig : ode_figures()) {
    IntegratorConfig c4;
    c4.h = 0.01;
    Trajectory t4 = rk4_integrate(fig.problem, c4);
    IntegratorConfig c45;
    c45.method = Method::Rkf45;
    Trajectory t45 = rkf45_integrate(fig.problem, c45);
    if (t4.error || t45.error) {
      CheckResult c;
      c.name = "ode/rk4-vs-rkf45-" + fig.id;
      c.status = CheckStatus::Fail;
      c.value = std::nan("");
      c.source = fig.problem.name;
      c.details = t4.error ? t4.error_msg : t45.error_msg;
      rep.add(c);
      continue;
    }
    CompareReport cmp = compare(t45, t4, 1e-6);
    rep.add(pass_fail("ode/rk4-vs-rkf45-" + fig.id, std::max(cmp.sup_h, cmp.sup_hp), 1e-6,
                      fig.problem.name, fig.problem.ic_note));

    if (want_files(opt)) {
      CsvWriter csv(path_in(opt, "ode_" + fig.id + "_comparison.csv"),
                    fig.analytic_h
                        ? std::vector<std::string>{"lambda", "H_rk4", "Hp_rk4", "H_rkf45",
                                                   "Hp_rkf45", "H_analytic", "Hp_analytic"}
                        : std::vector<std::string>{"lambda", "H_rk4", "Hp_rk4", "H_rkf45",
                                                   "Hp_rkf45"});
      for (std::size_t i = 0; i < t4.lambda.size(); ++i) {
        double l = t4.lambda[i];
        std::vector<double> row{l, t4.h[i], t4.hp[i], dense_h(t45, l), dense_hp(t45, l)};
        if (fig.analytic_h) {
          row.push_back(fig.analytic_h(l));
          row.push_back(fig.analytic_hp ? fig.analytic_hp(l) : std::nan(""));
        }
        csv.row_nums(row);
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Modulation instability
// ---------------------------------------------------------------------------

Report run_mi_checks(const RunOptions& opt) {
  Report rep;
  auto rows = sweep({1.0, 2.0, 3.0}, 0.0, 4.0, 401);

  double gain_dev = 0.0, zero_dev = 0.0;
  for (const SpectrumRow& r : rows) {
    if (r.A < r.p)
      gain_dev = std::max(gain_dev,
                          std::fabs(r.gain - 2.0 * std::sqrt(r.p * r.p - r.A * r.A)));
    else
      zero_dev = std::max(zero_dev, std::fabs(r.gain));
  }
  rep.add(pass_fail("mi/gain-unstable-region", gain_dev, 1e-12, "gain-spectrum closed form",
                    "G = 2 sqrt(p^2 - A^2) on A < p, 401-point sweep, p in {1,2,3}"));
  rep.add(pass_fail("mi/gain-stable-region", zero_dev, 1e-15, "gain-spectrum closed form",
                    "G = 0 on A >= p"));

  Rng rng(opt.seed, 4);
  double disp_dev = 0.0;
  for (int k = 0; k < 300; ++k) {
    ModulationParams m{rng.uniform(0, 4), rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-2, 2)};
    std::complex<double> w = dispersion(m);
    disp_dev = std::max(disp_dev, std::abs(w * w + m.p() * m.p() - m.A * m.A));
  }
  rep.add(pass_fail("mi/dispersion-identity", disp_dev, 1e-12, "dispersion relation",
                    "w^2 + p^2 - A^2 in complex arithmetic"));

  if (want_files(opt)) {
    {
      CsvWriter csv(path_in(opt, "mi_spectrum.csv"),
                    {"p", "A", "w_re", "w_im", "w_im_neg", "gain", "stable"});
      for (const SpectrumRow& r : rows)
        csv.row({CsvWriter::num(r.p), CsvWriter::num(r.A), CsvWriter::num(r.w_re),
                 CsvWriter::num(r.w_im), CsvWriter::num(r.w_im_neg), CsvWriter::num(r.gain),
                 r.stable ? "1" : "0"});
    }
    {
      CsvWriter csv(path_in(opt, "mi_frequency_real.csv"), {"p", "A", "w_re"});
      for (const SpectrumRow& r : rows)
        if (r.stable) csv.row_nums({r.p, r.A, r.w_re});
    }
    {
      CsvWriter csv(path_in(opt, "mi_frequency_imag.csv"), {"p", "A", "w_im_neg"});
      for (const SpectrumRow& r : rows)
        if (!r.stable) csv.row_nums({r.p, r.A, r.w_im_neg});
    }
    {
      CsvWriter csv(path_in(opt, "mi_gain.csv"), {"p", "A", "gain"});
      for (const SpectrumRow& r : rows) csv.row_nums({r.p, r.A, r.gain});
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Conservation
// ---------------------------------------------------------------------------

Report run_conservation_checks(const RunOptions& opt) {
  Report rep;

  SelfAdjointnessResult fam = self_adjointness_check(substitution_family_psi(), opt.n_points,
                                                     opt.seed);
  CheckResult cf;
  cf.name = "conservation/self-adjointness-family";
  cf.status = fam.pass && fam.residual.is_constant(0.0) ? CheckStatus::Pass : CheckStatus::Fail;
  cf.value = fam.max_numeric;
  cf.threshold = 1e-10;
  cf.source = "substitution family c1*y*z + c2*y + c3*z + c4";
  cf.details = "operator-derived adjoint expression normalizes to zero";
  rep.add(cf);

  SelfAdjointnessResult bad = self_adjointness_check(parse("x"), opt.n_points, opt.seed);
  CheckResult cb;
  cb.name = "conservation/self-adjointness-x-counterexample";
  cb.status = (!bad.pass && identical(bad.residual, parse("-a*u"))) ? CheckStatus::Pass
                                                                    : CheckStatus::Fail;
  cb.value = bad.max_numeric;
  cb.source = "substitution psi = x";
  cb.details = "expected failure with residual -a*u";
  rep.add(cb);

  const SolutionRecord& u1 = lookup_solution("u1");
  GridSpec grid = default_grid(u1);
  Rng rng(opt.seed, 5);
  ParamTable params = u1.defaults();
  params["c1"] = rng.uniform(-2, 2);
  params["c2"] = rng.uniform(-2, 2);
  params["c3"] = rng.uniform(-2, 2);
  params["c4"] = rng.uniform(-2, 2);

  const bool translation[7] = {false, true, false, true, false, true, true};
  for (int i = 0; i < 7; ++i) {
    const VectorField& v = symmetry_basis()[static_cast<std::size_t>(i)];
    ConservedVector cv = build_conserved_vector(v, substitution_family_psi());
    ResidualReport r = divergence_residual(cv, u1, grid, 1e-8, &params);
    if (translation[i])
      rep.add(pass_fail("conservation/divergence-" + v.name, r.max_abs, 1e-8,
                        "conserved-vector table row " + v.name, "on the exact kink"));
    else
      rep.add(reported("conservation/divergence-" + v.name, r.max_abs,
                       "conserved-vector table row " + v.name,
                       "divergence on the exact kink (recorded)"));
  }

  auto devs = conserved_table_crosscheck(opt.n_points, opt.seed);
  for (const auto& d : devs) {
    double off = *std::max_element(d.max_dev.begin(), d.max_dev.end());
    double on = *std::max_element(d.max_dev_onshell.begin(), d.max_dev_onshell.end());
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "row sign %+d; max deviation %.3g generic, %.3g on-shell", d.row_sign, off, on);
    rep.add(reported("conservation/printed-table-row-" + d.generator, off,
                     "conserved-vector table row " + d.generator, buf));
  }

  if (want_files(opt)) {
    CsvWriter csv(path_in(opt, "conserved_table_deviations.csv"),
                  {"generator", "row_sign", "component", "deviation", "deviation_onshell"});
    const char* comp_names[4] = {"eta_x", "eta_y", "eta_z", "eta_t"};
    for (const auto& d : devs)
      for (int c = 0; c < 4; ++c)
        csv.row({d.generator, std::to_string(d.row_sign), comp_names[c],
                 CsvWriter::num(d.max_dev[static_cast<std::size_t>(c)]),
                 CsvWriter::num(d.max_dev_onshell[static_cast<std::size_t>(c)])});
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Structural notes
// ---------------------------------------------------------------------------

Report discrepancy_notes(const RunOptions& opt) {
  Report rep;

  // Boost family: the printed shift -eps/a breaks solutions with x-dependence.
  {
    const SolutionRecord& u1 = lookup_solution("u1");
    double eps = 0.5;
    std::map<JetCoord, Expr> repl{
        {JetCoord::x(),
         Expr::coordinate(JetCoord::x()) - Expr::constant(eps) * Expr::coordinate(JetCoord::t())}};
    Expr printed_sign = normalize(substitute(u1.u(), repl) -
                                  Expr::constant(eps) * Expr::pow(Expr::parameter("a"), Rat(-1)));
    SolutionRecord wrong("u1-boost-printed-sign", printed_sign, u1.defaults(),
                         Provenance::Candidate, "");
    ResidualReport r = pde_residual(wrong, default_grid(wrong), 1e-8);
    rep.add(reported("note/boost-family-sign", r.max_abs, "one-parameter family of the boost",
                     "printed family shifts u by -eps/a; the flow requires +eps/a "
                     "(evidence: residual of the printed-sign transform of u1 at eps = 0.5)"));
  }

  // Rotation family: the printed arguments are the first-order flow only.
  {
    auto domain = [](const std::array<double, 4>& b, const ParamTable&) {
      return b[1] * b[1] + b[2] * b[2] > 0.25;
    };
    SolutionRecord w("steady-rational", parse("-4*x/(a*(y^2 + z^2))"), {{"a", 1.0}},
                     Provenance::Candidate, "derived steady solution", false, domain);
    double eps = 1.0;
    std::map<JetCoord, Expr> lin{{JetCoord::y(), parse("y") - Expr::constant(eps) * parse("z")},
                                 {JetCoord::z(), parse("z") + Expr::constant(eps) * parse("y")}};
    SolutionRecord linearized("steady-rational-linearized-rotation", substitute(w.u(), lin),
                              w.defaults(), Provenance::Candidate, "", false, domain);
    ResidualReport r_lin = pde_residual(linearized, default_grid(linearized), 1e-8);
    SolutionRecord exact = group_transform(w, 3, eps);
    ResidualReport r_exact = pde_residual(exact, default_grid(exact), 1e-8);
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "printed rotation family is the first-order flow; exact rotation keeps the "
                  "residual at %.3g while the linearized form reaches %.3g at eps = 1",
                  r_exact.max_abs, r_lin.max_abs);
    rep.add(reported("note/rotation-family-linearized", r_lin.max_abs,
                     "one-parameter family of the rotation", buf));
  }

  // Closed-form adjoint transform: sign of the l4 term in l7*.
  {
    AlgebraElement l{0.3, -1.2, 0.7, 1.0, 0.4, -0.6, 0.9};
    std::array<double, 7> eps{0.2, -0.4, 0.5, 1.1, -0.3, 0.8, 0.6};
    AlgebraElement prod = mat_apply_row(l, global_adjoint(eps));
    double printed_l7 = (l[0] / 2 * (eps[3] * std::sin(eps[2]) - eps[6] * std::cos(eps[2])) +
                         l[2] * (eps[6] * std::sin(eps[2]) + eps[3] * std::cos(eps[2])) +
                         l[3] * std::sin(eps[2]) + l[6] * std::cos(eps[2])) *
                        std::exp(eps[0] / 2);
    rep.add(reported("note/adjoint-closed-form-l7-sign", std::fabs(printed_l7 - prod[6]),
                     "closed-form adjoint coefficient transform",
                     "the printed l7* carries +l4*sin(eps3); the matrix product and the "
                     "adjoint-representation table require -l4*sin(eps3)"));
  }

  // Printed adjoint expression drops the -psi_t and -a*u*psi_x terms.
  {
    Expr psi = parse("x*t");
    Expr computed = adjoint_equation(psi);
    // as printed: -psi_z + psi_xx + psi_yy + psi_zz
    Expr printed = normalize(-partial_diff(psi, JetCoord::z()) +
                             partial_diff(partial_diff(psi, JetCoord::x()), JetCoord::x()) +
                             partial_diff(partial_diff(psi, JetCoord::y()), JetCoord::y()) +
                             partial_diff(partial_diff(psi, JetCoord::z()), JetCoord::z()));
    Rng rng(opt.seed, 6);
    double dev = 0.0;
    for (int k = 0; k < 50; ++k) {
      JetPoint p;
      for (JetCoord c : JetCoord::all()) p.set(c, rng.uniform(-2.0, 2.0));
      dev = std::max(dev, std::fabs(eval(computed, p, {{"a", 1.0}}) -
                                    eval(printed, p, {{"a", 1.0}})));
    }
    rep.add(reported("note/adjoint-expression-printed-form", dev,
                     "printed adjoint expression",
                     "printed form reads -psi_z + Laplacian(psi); the operator yields "
                     "-psi_t - a*u*psi_x + psi_xx + psi_yy + psi_zz (evidence at psi = x*t); "
                     "the self-adjointness conclusion is unaffected for the substitution family"));
  }

  // The ad-matrix printed with the Killing theorem uses the opposite bracket.
  {
    AlgebraElement l{0.5, -0.7, 1.1, 0.2, -1.3, 0.9, 0.4};
    Mat7 computed = ad_matrix(l);
    Mat7 printed = printed_killing_ad_matrix(l);
    double dev_flip = 0.0, dev_same = 0.0;
    for (int r = 0; r < 7; ++r)
      for (int c = 0; c < 7; ++c) {
        dev_flip = std::max(dev_flip, std::fabs(printed[r][c] + computed[r][c]));
        dev_same = std::max(dev_same, std::fabs(printed[r][c] - computed[r][c]));
      }
    char buf[200];
    std::snprintf(buf, sizeof buf,
                  "printed matrix equals the bracket in reversed order (deviation %.3g against "
                  "-ad, %.3g against ad); the trace form is unaffected",
                  dev_flip, dev_same);
    rep.add(reported("note/killing-ad-matrix-convention", dev_flip,
                     "ad matrix printed with the Killing-form theorem", buf));
  }

  // Printed traveling-wave reduction carries an extra K factor.
  {
    const ReducedEquation& eq = lookup_reduced("traveling-wave-ode-printed");
    ResidualReport r = reduced_residual(eq, parse("tanh(x/2)"), reduced_default_grid(eq), 1e-8);
    rep.add(reported("note/traveling-wave-printed-reduction", r.max_abs,
                     "traveling-wave reduction as printed",
                     "the printed reduction multiplies the second-derivative terms by K; the "
                     "closed form that solves the full equation does not satisfy this row "
                     "(u7 is therefore verified against the full equation only)"));
  }

  // Stability-analysis linearization keeps a time-dependent coefficient.
  rep.add(reported("note/mi-linearized-coefficient", 0.0, "linearized perturbation equation",
                   "the linearized equation keeps a coefficient with explicit time dependence "
                   "while the plane-wave step assumes constant coefficients; the closed-form "
                   "dispersion relation is implemented as printed"));

  // Integration conventions for the comparison figures.
  rep.add(reported("note/ode-figure-conventions", 0.0, "comparison-figure parameter lists",
                   "d5 is absent from the printed parameter list and defaults to 1; the "
                   "translation-combination configuration blows up in finite lambda, so its "
                   "span stops at 2; unlisted initial data defaults to H = 1, H' = 0"));

  return rep;
}

Report run_all_checks(const RunOptions& opt) {
  Report rep;
  rep.merge(run_algebra_checks(opt));
  rep.merge(run_symmetry_checks(opt));
  rep.merge(run_solution_checks(opt));
  rep.merge(run_reduction_checks(opt));
  rep.merge(run_ode_checks(opt));
  rep.merge(run_mi_checks(opt));
  rep.merge(run_conservation_checks(opt));
  rep.merge(discrepancy_notes(opt));

  if (want_files(opt)) {
    write_report_json(rep, path_in(opt, "report.json"));
    auto entries = collect_discrepancies(rep);
    write_discrepancy_json(entries, path_in(opt, "discrepancies.json"));
    write_discrepancy_markdown(entries, path_in(opt, "discrepancies.md"));
  }
  return rep;
}

}  // namespace zk
