#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "zk/ode.hpp"
#include "zk/parse.hpp"

using namespace zk;

namespace {

// H'' = 0 test problem assembled from a throwaway reduced equation.
ReducedEquation linear_eq() {
  return ReducedEquation{"free-particle", parse("u_xx"), 1, {"lambda", "H"}, {}, ""};
}

ODEProblem linear_problem(const ReducedEquation& eq) {
  ODEProblem p;
  p.name = "free";
  p.equation = &eq;
  p.lambda0 = 0.0;
  p.h0 = 0.0;
  p.hp0 = 1.0;
  p.span_lo = 0.0;
  p.span_hi = 5.0;
  return p;
}

double sup_error_vs(const Trajectory& t, const std::function<double(double)>& ref) {
  double e = 0.0;
  for (std::size_t i = 0; i < t.lambda.size(); ++i)
    e = std::max(e, std::fabs(t.h[i] - ref(t.lambda[i])));
  return e;
}

}  // namespace

TEST_CASE("rk4 is exact on H'' = 0") {
  ReducedEquation eq = linear_eq();
  ODEProblem p = linear_problem(eq);
  IntegratorConfig cfg;
  cfg.method = Method::Rk4;
  cfg.h = 0.1;
  Trajectory t = rk4_integrate(p, cfg);
  REQUIRE_FALSE(t.error);
  CHECK(t.lambda.size() == 51);
  for (std::size_t i = 0; i < t.lambda.size(); ++i) {
    CHECK(t.h[i] == doctest::Approx(t.lambda[i]).epsilon(1e-15));
    CHECK(t.hp[i] == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("rkf45 on H'' = 0: exact to rounding, no rejected steps") {
  ReducedEquation eq = linear_eq();
  ODEProblem p = linear_problem(eq);
  IntegratorConfig cfg;
  cfg.method = Method::Rkf45;
  Trajectory t = rkf45_integrate(p, cfg);
  REQUIRE_FALSE(t.error);
  CHECK(t.rejected == 0);
  CHECK(sup_error_vs(t, [](double l) { return l; }) < 1e-12);
}

TEST_CASE("rk4 against the analytic kink of the first chain") {
  const OdeFigure& fig = lookup_ode_figure("x1");
  IntegratorConfig cfg;
  cfg.h = 0.01;
  Trajectory t = rk4_integrate(fig.problem, cfg);
  REQUIRE_FALSE(t.error);
  CHECK(sup_error_vs(t, fig.analytic_h) < 1e-6);
}

TEST_CASE("rk4 fourth-order convergence on the first-chain kink") {
  const OdeFigure& fig = lookup_ode_figure("x1");
  double errs[3];
  double hs[3] = {0.04, 0.02, 0.01};
  for (int i = 0; i < 3; ++i) {
    IntegratorConfig cfg;
    cfg.h = hs[i];
    errs[i] = sup_error_vs(rk4_integrate(fig.problem, cfg), fig.analytic_h);
  }
  double order1 = std::log2(errs[0] / errs[1]);
  double order2 = std::log2(errs[1] / errs[2]);
  CHECK(order1 > 3.7);
  CHECK(order1 < 4.3);
  CHECK(order2 > 3.7);
  CHECK(order2 < 4.3);
  // error ratio between h and h/2 sits in the fourth-order window
  CHECK(errs[0] / errs[1] > 12.0);
  CHECK(errs[0] / errs[1] < 20.0);
}

TEST_CASE("deliberately coarse rk4 is flagged by the analytic comparison") {
  const OdeFigure& fig = lookup_ode_figure("x1");
  IntegratorConfig cfg;
  cfg.h = 0.5;
  Trajectory t = rk4_integrate(fig.problem, cfg);
  CHECK(sup_error_vs(t, fig.analytic_h) > 1e-6);
}

TEST_CASE("rkf45 matches rk4 on the first chain within 1e-6") {
  const OdeFigure& fig = lookup_ode_figure("x1");
  IntegratorConfig c4;
  c4.h = 0.01;
  Trajectory t4 = rk4_integrate(fig.problem, c4);
  IntegratorConfig c45;
  c45.method = Method::Rkf45;
  Trajectory t45 = rkf45_integrate(fig.problem, c45);
  REQUIRE_FALSE(t45.error);
  CompareReport r = compare(t4, t45, 1e-6);
  CHECK(r.pass);
}

TEST_CASE("all five comparison configurations agree across integrators") {
  for (const OdeFigure& fig : ode_figures()) {
    IntegratorConfig c4;
    c4.h = 0.01;
    Trajectory t4 = rk4_integrate(fig.problem, c4);
    REQUIRE_MESSAGE(!t4.error, fig.id, ": ", t4.error_msg);
    IntegratorConfig c45;
    c45.method = Method::Rkf45;
    Trajectory t45 = rkf45_integrate(fig.problem, c45);
    REQUIRE_MESSAGE(!t45.error, fig.id, ": ", t45.error_msg);
    // sample on the fine rk4 grid so dense output interpolates the smooth side
    CompareReport r = compare(t45, t4, 1e-6);
    CHECK_MESSAGE(r.pass, fig.id, " sup_h=", r.sup_h, " sup_hp=", r.sup_hp);
  }
}

TEST_CASE("scaling-subcase: integration from the exact linear solution tracks it") {
  // H = -4 lambda / a solves the scaling-subcase reduction; integrating from
  // its initial data must reproduce it to integrator accuracy.
  const ReducedEquation& eq = lookup_reduced("d1-chain-ode");
  ODEProblem p;
  p.name = "d1 exact";
  p.equation = &eq;
  p.params = {{"a", 1}};
  p.lambda0 = 1.0;
  p.h0 = -4.0;
  p.hp0 = -4.0;
  p.span_lo = 1.0;
  p.span_hi = 5.0;
  IntegratorConfig cfg;
  cfg.h = 0.01;
  Trajectory t4 = rk4_integrate(p, cfg);
  REQUIRE_FALSE(t4.error);
  CHECK(sup_error_vs(t4, [](double l) { return -4.0 * l; }) < 1e-9);

  IntegratorConfig c45;
  c45.method = Method::Rkf45;
  c45.rtol = c45.atol = 1e-10;
  Trajectory t45 = rkf45_integrate(p, c45);
  REQUIRE_FALSE(t45.error);
  CHECK(sup_error_vs(t45, [](double l) { return -4.0 * l; }) < 1e-8);
}

TEST_CASE("smoke: scaling-subcase figure runs to the end without underflow") {
  const OdeFigure& fig = lookup_ode_figure("d1");
  IntegratorConfig c45;
  c45.method = Method::Rkf45;
  Trajectory t45 = rkf45_integrate(fig.problem, c45);
  REQUIRE_FALSE(t45.error);
  CHECK(t45.back_lambda() == doctest::Approx(5.0));
  IntegratorConfig c4;
  c4.h = 0.01;
  Trajectory t4 = rk4_integrate(fig.problem, c4);
  CompareReport r = compare(t4, t45, 1e-5);
  CHECK(r.pass);
}

TEST_CASE("rkf45 honors tolerance monotonically (factor 1.5 slack)") {
  const OdeFigure& fig = lookup_ode_figure("x1");
  double prev_err = -1.0;
  for (double rtol : {1e-5, 5e-6, 2.5e-6, 1.25e-6, 1e-7, 1e-9}) {
    IntegratorConfig cfg;
    cfg.method = Method::Rkf45;
    cfg.rtol = cfg.atol = rtol;
    Trajectory t = rkf45_integrate(fig.problem, cfg);
    double err = sup_error_vs(t, fig.analytic_h);
    if (prev_err >= 0.0) CHECK(err <= prev_err * 1.5);
    prev_err = err;
  }
}

TEST_CASE("singular leading coefficient halts with an error flag") {
  const ReducedEquation& eq = lookup_reduced("d1-chain-ode");
  ODEProblem p;
  p.name = "through the singular point";
  p.equation = &eq;
  p.params = {{"a", 1}};
  p.lambda0 = -0.5;
  p.h0 = 1.0;
  p.hp0 = 0.0;
  p.span_lo = -0.5;
  p.span_hi = 0.5;  // leading coefficient 4 l^2 (l+1) vanishes at l = 0
  IntegratorConfig cfg;
  cfg.h = 0.01;
  Trajectory t = rk4_integrate(p, cfg);
  CHECK(t.error);

  IntegratorConfig c45;
  c45.method = Method::Rkf45;
  Trajectory t45 = rkf45_integrate(p, c45);
  CHECK(t45.error);
}

TEST_CASE("divergent problem halts with partial trajectory") {
  const OdeFigure& fig = lookup_ode_figure("x3");
  ODEProblem p = fig.problem;
  p.span_hi = 6.0;  // past the blow-up
  IntegratorConfig cfg;
  cfg.h = 0.01;
  Trajectory t = rk4_integrate(p, cfg);
  CHECK(t.error);
  CHECK(t.lambda.size() > 10);
}

TEST_CASE("compare: identical trajectories and disjoint spans") {
  const OdeFigure& fig = lookup_ode_figure("x1");
  IntegratorConfig cfg;
  cfg.h = 0.05;
  Trajectory t = rk4_integrate(fig.problem, cfg);
  CompareReport r = compare(t, t, 1e-14);
  CHECK(r.sup_h == 0.0);
  CHECK(r.sup_hp == 0.0);
  CHECK(r.pass);

  Trajectory late = t;
  for (double& l : late.lambda) l += 100.0;
  CHECK_THROWS_AS(compare(t, late, 1e-6), std::invalid_argument);
}

TEST_CASE("trajectories are bit-identical across runs") {
  const OdeFigure& fig = lookup_ode_figure("d3");
  IntegratorConfig cfg;
  cfg.method = Method::Rkf45;
  Trajectory a = rkf45_integrate(fig.problem, cfg);
  Trajectory b = rkf45_integrate(fig.problem, cfg);
  CHECK(a.lambda == b.lambda);
  CHECK(a.h == b.h);
  CHECK(a.hp == b.hp);
}
