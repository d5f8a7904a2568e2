#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "zk/checks.hpp"

using namespace zk;

TEST_CASE("full registry: no asserted check fails") {
  RunOptions opt;
  Report r = run_all_checks(opt);
  for (const CheckResult& c : r.checks)
    CHECK_MESSAGE(c.status != CheckStatus::Fail, c.name, " value=", c.value);
  CHECK(r.checks.size() > 60);
  CHECK(r.ok());
}

TEST_CASE("reported entries carry a source string") {
  RunOptions opt;
  Report r = run_all_checks(opt);
  for (const CheckResult& c : r.checks)
    if (c.status != CheckStatus::Pass) CHECK_MESSAGE(!c.source.empty(), c.name);
}

TEST_CASE("artifact files appear and are valid") {
  namespace fs = std::filesystem;
  fs::remove_all("checks_out");
  RunOptions opt;
  opt.out_dir = "checks_out";
  run_all_checks(opt);
  for (const char* f :
       {"report.json", "discrepancies.json", "discrepancies.md", "commutator.csv",
        "adjoint_representation.csv", "invariant_signatures.csv", "symmetry_residuals.csv",
        "u7_speed_scan.csv", "solution_u1_xt.csv", "solution_u2_xt.csv", "solution_u3_yt.csv",
        "solution_u4_xt.csv", "solution_u5_xy.csv", "solution_u6_xy.csv", "solution_u7_xt.csv",
        "reduced_checks.csv", "ode_x1_comparison.csv", "ode_x3_comparison.csv",
        "ode_d1_comparison.csv", "ode_d2_comparison.csv", "ode_d3_comparison.csv",
        "mi_spectrum.csv", "mi_frequency_real.csv", "mi_frequency_imag.csv", "mi_gain.csv",
        "conserved_table_deviations.csv"}) {
    CAPTURE(f);
    CHECK(fs::exists(fs::path("checks_out") / f));
  }

  // commutator.csv: header + 49 cells
  std::ifstream in("checks_out/commutator.csv");
  int lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 50);
}

TEST_CASE("discrepancy collection includes the audited printed forms") {
  RunOptions opt;
  Report r = run_all_checks(opt);
  auto entries = collect_discrepancies(r);
  auto has = [&](const std::string& id) {
    for (const auto& e : entries)
      if (e.id == id) return true;
    return false;
  };
  CHECK(has("solutions/residual-u2-printed"));
  CHECK(has("reduced/x2-pde2-linear"));
  CHECK(has("note/boost-family-sign"));
  CHECK(has("note/adjoint-closed-form-l7-sign"));
  CHECK(has("conservation/printed-table-row-D1"));
}
