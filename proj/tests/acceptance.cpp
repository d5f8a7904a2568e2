// Acceptance suite: every gate criterion as an integration check, one
// PASS/FAIL line each.  Exit code is the number of failed criteria.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>
#include <vector>

#include "zk/checks.hpp"
#include "zk/conservation.hpp"
#include "zk/equation.hpp"
#include "zk/lie_algebra.hpp"
#include "zk/modulation.hpp"
#include "zk/ode.hpp"
#include "zk/parse.hpp"
#include "zk/prolongation.hpp"
#include "zk/reduced.hpp"
#include "zk/rng.hpp"
#include "zk/solutions.hpp"

using namespace zk;

namespace {

int g_failures = 0;

void criterion(int number, const char* label, bool ok, const std::string& evidence) {
  std::printf("%s criterion %2d: %-34s %s\n", ok ? "PASS" : "FAIL", number, label,
              evidence.c_str());
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double a, double b = 0.0) {
  char buf[160];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

}  // namespace

// 1. Commutator table and Jacobi identity, exact.
static void criterion1() {
  const auto& sc = structure_constants();
  const auto& golden = commutator_table_golden();
  double table_dev = 0.0, jacobi_dev = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j)
      for (int k = 0; k < 7; ++k)
        table_dev = std::max(table_dev, std::fabs(sc.c[i][j][k] - golden[i][j][k].to_double()));
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
  criterion(1, "commutator table + Jacobi", table_dev == 0.0 && jacobi_dev == 0.0,
            fmt("table dev %.3g, jacobi dev %.3g", table_dev, jacobi_dev));
}

// 2. Killing form closed expression on 1000 random elements.
static void criterion2() {
  Rng rng(2024);
  double dev = 0.0;
  for (int t = 0; t < 1000; ++t) {
    AlgebraElement l;
    for (double& v : l) v = rng.uniform(-2.0, 2.0);
    dev = std::max(dev, std::fabs(killing_form(l) - 2.0 * (l[0] * l[0] - l[2] * l[2])));
  }
  criterion(2, "Killing form 2(l1^2 - l3^2)", dev < 1e-12, fmt("max dev %.3g", dev));
}

// 3. Adjoint consistency: closed form vs matrix product, table rows, l1/l3.
static void criterion3() {
  Rng rng(3);
  double adj_dev = 0.0, inv_dev = 0.0, row_dev = 0.0;
  for (int t = 0; t < 100; ++t) {
    AlgebraElement l;
    for (double& v : l) v = rng.uniform(-2.0, 2.0);
    std::array<double, 7> eps;
    for (double& e : eps) e = rng.uniform(-1.5, 1.5);
    AlgebraElement closed = adjoint_transform(l, eps);
    AlgebraElement prod = mat_apply_row(l, global_adjoint(eps));
    for (int k = 0; k < 7; ++k) adj_dev = std::max(adj_dev, std::fabs(closed[k] - prod[k]));
    inv_dev = std::max({inv_dev, std::fabs(closed[0] - l[0]), std::fabs(closed[2] - l[2])});
  }
  for (int i = 1; i <= 7; ++i)
    for (int j = 1; j <= 7; ++j)
      for (double eps : {0.37, -1.2, 2.0}) {
        AlgebraElement got = adjoint_rep_entry(i, j, eps);
        AlgebraElement want = adjoint_rep_golden(i, j, eps);
        for (int k = 0; k < 7; ++k) row_dev = std::max(row_dev, std::fabs(got[k] - want[k]));
      }
  criterion(3, "adjoint transform consistency",
            adj_dev < 1e-12 && inv_dev < 1e-12 && row_dev < 1e-12,
            fmt("product dev %.3g, table-row dev %.3g", adj_dev, row_dev));
}

// 4. All ten rows of the invariant-value table.
static void criterion4() {
  int mismatches = 0;
  for (double d : {1.0, -1.0})
    for (const auto& row : signature_table_golden(d)) {
      InvariantSignature got = invariant_signature(row.element);
      const InvariantSignature& w = row.expected;
      bool ok = std::fabs(got.killing - w.killing) < 1e-12 && got.m == w.m && got.n == w.n &&
                got.o == w.o && got.p == w.p && got.q == w.q && got.r == w.r && got.s == w.s &&
                got.t == w.t && got.u == w.u;
      if (!ok) ++mismatches;
    }
  criterion(4, "invariant-signature table", mismatches == 0,
            fmt("%g of 20 rows mismatched", static_cast<double>(mismatches)));
}

// 5. Invariance of the residual under all generators; control field fails.
static void criterion5() {
  double worst = 0.0;
  for (const VectorField& v : symmetry_basis())
    worst = std::max(worst, invariance_residual(v, 100, 42).max_residual);
  Rng rng(55);
  std::array<double, 7> c;
  for (double& v : c) v = rng.uniform(-2.0, 2.0);
  double gen = invariance_residual(general_infinitesimal(c), 100, 42).max_residual;
  double ctrl =
      invariance_residual({parse("u"), parse("0"), parse("0"), parse("0"), parse("0"), "bad"},
                          100, 42)
          .max_residual;
  criterion(5, "second-prolongation invariance", worst < 1e-10 && gen < 1e-10 && ctrl > 1e-3,
            fmt("basis max %.3g, control %.3g", std::max(worst, gen), ctrl));
}

// 6. Solution verification: exact records pass, printed forms are recorded.
static void criterion6() {
  const SolutionRecord& u1 = lookup_solution("u1");
  double r1 = pde_residual(u1, default_grid(u1), 1e-10).max_abs;
  const SolutionRecord& u2c = lookup_solution("u2-corrected");
  double r2 = pde_residual(u2c, default_grid(u2c), 1e-10).max_abs;
  const SolutionRecord& cst = lookup_solution("const");
  double rc = pde_residual(cst, default_grid(cst), 1e-14).max_abs;

  // hand-derived spot value of the printed u2 form
  GridSpec spot;
  spot.axes = {AxisSpec::fixed_at(1.0), AxisSpec::fixed_at(0.0), AxisSpec::fixed_at(0.0),
               AxisSpec::fixed_at(1.0)};
  double r2p = pde_residual(lookup_solution("u2-printed"), spot, 1e-10).max_abs;
  double r3p =
      pde_residual(lookup_solution("u3-printed"), default_grid(lookup_solution("u3-printed")),
                   1e-10)
          .max_abs;
  double r4p =
      pde_residual(lookup_solution("u4-printed"), default_grid(lookup_solution("u4-printed")),
                   1e-10)
          .max_abs;

  SpeedScanResult scan = traveling_wave_speed_scan();

  // the recorded failures must surface in the discrepancy report
  RunOptions opt;
  opt.seed = 42;
  Report all = run_all_checks(opt);
  auto entries = collect_discrepancies(all);
  auto has = [&](const char* id) {
    for (const auto& e : entries)
      if (e.id == id) return true;
    return false;
  };
  bool reported = has("solutions/residual-u2-printed") && has("solutions/residual-u3-printed") &&
                  has("solutions/residual-u4-printed");

  bool ok = r1 < 1e-10 && r2 < 1e-10 && rc == 0.0 && std::fabs(r2p - 0.5) < 1e-14 &&
            r3p > 0.1 && r4p > 0.1 && scan.best_residual < 1e-8 && reported;
  criterion(6, "solution residual verdicts", ok,
            fmt("u1 %.3g, corrected u2 %.3g", r1, r2) +
                fmt(", printed u2 spot %.6g, scan best %.3g", r2p, scan.best_residual));
}

// 7. Group closure of every exactly-verified record.
static void criterion7() {
  double worst = 0.0;
  for (const char* name : {"u1", "u2-corrected", "const"}) {
    const SolutionRecord& s = lookup_solution(name);
    for (int g = 1; g <= 7; ++g)
      for (double eps : {0.3, -0.3, 1.0, -1.0}) {
        SolutionRecord t = group_transform(s, g, eps);
        worst = std::max(worst, pde_residual(t, default_grid(t), 1e-8).max_abs);
      }
  }
  criterion(7, "closure under the seven flows", worst < 1e-8, fmt("worst residual %.3g", worst));
}

// 8. Reduced-equation checks.
static void criterion8() {
  double r_ode = run_reduced_check(reduced_checks()[0]).max_abs;   // first-chain ODE
  double r_row1 = run_reduced_check(reduced_checks()[1]).max_abs;  // dilation row 1
  double r_row2 = run_reduced_check(reduced_checks()[2]).max_abs;  // dilation row 2 (reported)
  double r_case3 = run_reduced_check(reduced_checks()[3]).max_abs;
  bool ok = r_ode < 1e-12 && r_row1 < 1e-12 && r_row2 > 1e-3 && r_case3 < 1e-12;
  criterion(8, "reduced-equation residuals", ok,
            fmt("ode %.3g, row2 (recorded) %.3g", std::max(r_ode, std::max(r_row1, r_case3)),
                r_row2));
}

// 9. Integrator quality and comparison data.
static void criterion9() {
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
  double o1 = std::log2(errs[0] / errs[1]), o2 = std::log2(errs[1] / errs[2]);
  bool order_ok = o1 > 3.7 && o1 < 4.3 && o2 > 3.7 && o2 < 4.3;

  double cmp_worst = 0.0;
  bool integr_ok = true;
  for (const OdeFigure& fig : ode_figures()) {
    IntegratorConfig c4;
    c4.h = 0.01;
    Trajectory t4 = rk4_integrate(fig.problem, c4);
    IntegratorConfig c45;
    c45.method = Method::Rkf45;
    Trajectory t45 = rkf45_integrate(fig.problem, c45);
    if (t4.error || t45.error) {
      integr_ok = false;
      continue;
    }
    CompareReport cr = compare(t45, t4, 1e-6);
    cmp_worst = std::max(cmp_worst, std::max(cr.sup_h, cr.sup_hp));
  }

  // the comparison CSVs must be emitted
  std::filesystem::remove_all("acceptance_out_ode");
  RunOptions opt;
  opt.out_dir = "acceptance_out_ode";
  run_ode_checks(opt);
  bool files_ok = true;
  for (const char* id : {"x1", "x3", "d1", "d2", "d3"})
    files_ok = files_ok &&
               std::filesystem::exists("acceptance_out_ode/ode_" + std::string(id) +
                                       "_comparison.csv");

  bool ok = order_ok && errs[2] < 1e-6 && integr_ok && cmp_worst < 1e-6 && files_ok;
  criterion(9, "integrator quality", ok,
            fmt("orders %.2f/%.2f", o1, o2) +
                fmt(", analytic err %.3g, cross-method %.3g", errs[2], cmp_worst));
}

// 10. Gain spectrum and dispersion identity; sweep data emitted.
static void criterion10() {
  auto rows = sweep({1.0, 2.0, 3.0}, 0.0, 4.0, 401);
  double gain_dev = 0.0, zero_dev = 0.0;
  for (const SpectrumRow& r : rows) {
    if (r.A < r.p)
      gain_dev =
          std::max(gain_dev, std::fabs(r.gain - 2.0 * std::sqrt(r.p * r.p - r.A * r.A)));
    else
      zero_dev = std::max(zero_dev, std::fabs(r.gain));
  }
  Rng rng(10);
  double disp_dev = 0.0;
  for (int k = 0; k < 300; ++k) {
    ModulationParams m{rng.uniform(0, 4), rng.uniform(-2, 2), rng.uniform(-2, 2),
                       rng.uniform(-2, 2)};
    std::complex<double> w = dispersion(m);
    disp_dev = std::max(disp_dev, std::abs(w * w + m.p() * m.p() - m.A * m.A));
  }
  std::filesystem::remove_all("acceptance_out_mi");
  RunOptions opt;
  opt.out_dir = "acceptance_out_mi";
  run_mi_checks(opt);
  bool files_ok = std::filesystem::exists("acceptance_out_mi/mi_spectrum.csv") &&
                  std::filesystem::exists("acceptance_out_mi/mi_gain.csv") &&
                  std::filesystem::exists("acceptance_out_mi/mi_frequency_real.csv") &&
                  std::filesystem::exists("acceptance_out_mi/mi_frequency_imag.csv");
  bool ok = gain_dev < 1e-12 && zero_dev == 0.0 && disp_dev < 1e-12 && files_ok;
  criterion(10, "gain spectrum + dispersion", ok,
            fmt("gain dev %.3g, identity dev %.3g", gain_dev, disp_dev));
}

// 11. Nonlinear self-adjointness.
static void criterion11() {
  SelfAdjointnessResult fam = self_adjointness_check(substitution_family_psi(), 100, 42);
  SelfAdjointnessResult bad = self_adjointness_check(parse("x"), 100, 42);
  bool ok = fam.pass && fam.residual.is_constant(0.0) && !bad.pass &&
            identical(bad.residual, parse("-a*u"));
  criterion(11, "nonlinear self-adjointness", ok,
            fmt("family residual normalizes to zero; counterexample max %.3g",
                bad.max_numeric));
}

// 12. Conserved-vector divergences and the printed-table crosscheck.
static void criterion12() {
  const SolutionRecord& u1 = lookup_solution("u1");
  GridSpec grid = default_grid(u1);
  ParamTable params = u1.defaults();
  params["c1"] = 0.9;
  params["c2"] = -0.6;
  params["c3"] = 1.4;
  params["c4"] = 0.3;
  double trans_worst = 0.0, other_worst = 0.0;
  const bool translation[7] = {false, true, false, true, false, true, true};
  for (int i = 0; i < 7; ++i) {
    ConservedVector cv =
        build_conserved_vector(symmetry_basis()[static_cast<std::size_t>(i)],
                               substitution_family_psi());
    double r = divergence_residual(cv, u1, grid, 1e-8, &params).max_abs;
    double& bucket = translation[i] ? trans_worst : other_worst;
    bucket = std::max(bucket, r);
  }
  auto devs = conserved_table_crosscheck(100, 42);
  bool ok = trans_worst < 1e-8 && devs.size() == 7;
  criterion(12, "conserved-vector divergences", ok,
            fmt("translations max %.3g; dilation/rotation/boost recorded max %.3g", trans_worst,
                other_worst));
}

// 13. Byte-identical artifact trees for identical seeds.
static void criterion13() {
  namespace fs = std::filesystem;
  fs::remove_all("acceptance_out_a");
  fs::remove_all("acceptance_out_b");
  RunOptions a;
  a.out_dir = "acceptance_out_a";
  run_all_checks(a);
  RunOptions b;
  b.out_dir = "acceptance_out_b";
  run_all_checks(b);

  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  };
  bool ok = true;
  std::size_t n_files = 0;
  for (const auto& entry : fs::directory_iterator("acceptance_out_a")) {
    ++n_files;
    fs::path twin = fs::path("acceptance_out_b") / entry.path().filename();
    if (!fs::exists(twin) || slurp(entry.path()) != slurp(twin)) ok = false;
  }
  ok = ok && n_files > 20;
  criterion(13, "deterministic artifact tree", ok,
            fmt("%g files compared byte-for-byte", static_cast<double>(n_files)));
}

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  criterion10();
  criterion11();
  criterion12();
  criterion13();
  std::printf("%d of 13 criteria failed\n", g_failures);
  return g_failures;
}
