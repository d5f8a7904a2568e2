#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "zk/conservation.hpp"
#include "zk/equation.hpp"
#include "zk/parse.hpp"
#include "zk/rng.hpp"

using namespace zk;

TEST_CASE("adjoint expression: constants are annihilated") {
  CHECK(adjoint_equation(parse("1")).is_constant(0.0));
  CHECK(adjoint_equation(parse("0")).is_constant(0.0));
}

TEST_CASE("adjoint expression: psi = x leaves -a*u") {
  Expr s = adjoint_equation(parse("x"));
  CHECK(identical(s, parse("-a*u")));
}

TEST_CASE("adjoint expression: u-independent psi expands as expected") {
  // For psi(x,y,z,t): S = -psi_t - a u psi_x + psi_xx + psi_yy + psi_zz.
  Expr psi = parse("x^2*t + sin(y) + z");
  Expr expected = normalize(parse("-x^2") - parse("a*u") * parse("2*x*t") + parse("2*t") -
                            parse("sin(y)"));
  CHECK(identical(adjoint_equation(psi), expected));
}

TEST_CASE("self-adjointness: the substitution family passes symbolically") {
  SelfAdjointnessResult r = self_adjointness_check(substitution_family_psi());
  CHECK(r.pass);
  CHECK(r.residual.is_constant(0.0));

  // random numeric members of the family
  Rng rng(5);
  for (int k = 0; k < 5; ++k) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%.6f*y*z + %.6f*y + %.6f*z + %.6f", rng.uniform(-2, 2),
                  rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    SelfAdjointnessResult rr = self_adjointness_check(parse(buf));
    CHECK(rr.pass);
  }
}

TEST_CASE("self-adjointness: x, t, u all fail") {
  SelfAdjointnessResult rx = self_adjointness_check(parse("x"));
  CHECK_FALSE(rx.pass);
  CHECK(identical(rx.residual, parse("-a*u")));

  CHECK_FALSE(self_adjointness_check(parse("t")).pass);
  CHECK_FALSE(self_adjointness_check(parse("u")).pass);
  CHECK(self_adjointness_check(parse("0")).pass);
}

TEST_CASE("conserved vector: x-translation row") {
  ConservedVector cv = build_conserved_vector(symmetry_basis()[5], parse("psi0"));
  // eta_t = -psi0 * u_x (the printed table carries the opposite overall sign)
  CHECK(identical(cv.eta_t, normalize(parse("-psi0*u_x"))));
}

TEST_CASE("conserved vector: t-translation matches the table row exactly") {
  Expr psi = substitution_family_psi();
  ConservedVector cv = build_conserved_vector(symmetry_basis()[1], psi);
  Expr expected = normalize(psi * zk_residual() - psi * parse("u_t"));
  CHECK(identical(cv.eta_t, expected));
}

TEST_CASE("conserved vector: boost time component") {
  ConservedVector cv = build_conserved_vector(symmetry_basis()[4], substitution_family_psi());
  Expr expected = normalize(substitution_family_psi() * parse("1/a - t*u_x"));
  CHECK(identical(cv.eta_t, expected));
}

TEST_CASE("conserved vector: zero field gives zero components") {
  VectorField zero{parse("0"), parse("0"), parse("0"), parse("0"), parse("0"), "0"};
  ConservedVector cv = build_conserved_vector(zero, substitution_family_psi());
  for (int i = 0; i < 4; ++i) CHECK(cv.component(i).is_constant(0.0));
}

TEST_CASE("linearity in psi at random jet points") {
  const VectorField& d1 = symmetry_basis()[0];
  Expr p1 = parse("y*z"), p2 = parse("sin(y) + t");
  double al = 1.3, be = -0.7;
  ConservedVector mix =
      build_conserved_vector(d1, normalize(Expr::constant(al) * p1 + Expr::constant(be) * p2));
  ConservedVector v1 = build_conserved_vector(d1, p1);
  ConservedVector v2 = build_conserved_vector(d1, p2);
  Rng rng(77);
  ParamTable params{{"a", 1.0}};
  for (int k = 0; k < 30; ++k) {
    JetPoint p;
    for (JetCoord c : JetCoord::all()) p.set(c, rng.uniform(-2.0, 2.0));
    for (int comp = 0; comp < 4; ++comp) {
      double lhs = eval(mix.component(comp), p, params);
      double rhs = al * eval(v1.component(comp), p, params) +
                   be * eval(v2.component(comp), p, params);
      CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max({1.0, std::fabs(lhs), std::fabs(rhs)}));
    }
  }
}

TEST_CASE("divergence vanishes on the exact kink for every generator") {
  const SolutionRecord& u1 = lookup_solution("u1");
  GridSpec grid = default_grid(u1);
  ParamTable params = u1.defaults();
  params["c1"] = 0.8;
  params["c2"] = -1.1;
  params["c3"] = 0.4;
  params["c4"] = 2.0;
  for (const VectorField& v : symmetry_basis()) {
    ConservedVector cv = build_conserved_vector(v, substitution_family_psi());
    ResidualReport r = divergence_residual(cv, u1, grid, 1e-8, &params);
    CHECK_MESSAGE(r.max_abs < 1e-8, v.name, " divergence ", r.max_abs);
  }
}

TEST_CASE("divergence with psi = y on the kink (single-term substitution)") {
  const SolutionRecord& u1 = lookup_solution("u1");
  ConservedVector cv = build_conserved_vector(symmetry_basis()[5], parse("y"));
  ResidualReport r = divergence_residual(cv, u1, default_grid(u1), 1e-8);
  CHECK(r.pass);
}

TEST_CASE("divergence detects a substitution violating the adjoint condition") {
  const SolutionRecord& u1 = lookup_solution("u1");
  ConservedVector cv = build_conserved_vector(symmetry_basis()[5], parse("x"));
  ResidualReport r = divergence_residual(cv, u1, default_grid(u1), 1e-8);
  CHECK_FALSE(r.pass);
  CHECK(r.max_abs > 1e-3);
}

TEST_CASE("printed-table crosscheck: exact rows and sign conventions") {
  auto devs = conserved_table_crosscheck(100, 42);
  REQUIRE(devs.size() == 7);

  auto by_gen = [&](const char* g) -> const ConservedTableDeviation& {
    for (const auto& d : devs)
      if (d.generator == g) return d;
    throw std::runtime_error("missing row");
  };

  // rows that match the construction exactly, with their printed signs
  for (const char* g : {"D2", "D3", "D4", "D5"}) {
    const auto& d = by_gen(g);
    CHECK(d.row_sign == 1);
    for (int c = 0; c < 4; ++c) CHECK_MESSAGE(d.max_dev[c] < 1e-10, g, " component ", c);
  }

  // the x- and z-translation rows are printed with the opposite overall sign
  // and an extra residual multiple in one spatial component
  const auto& d6 = by_gen("D6");
  CHECK(d6.row_sign == -1);
  CHECK(d6.max_dev[3] < 1e-10);           // eta^t matches after the sign flip
  CHECK(d6.max_dev[1] < 1e-10);
  CHECK(d6.max_dev[2] < 1e-10);
  CHECK(d6.max_dev[0] > 1e-3);            // off-shell: differs by 2*psi*Delta
  CHECK(d6.max_dev_onshell[0] < 1e-10);   // on-shell the row agrees

  const auto& d7 = by_gen("D7");
  CHECK(d7.row_sign == -1);
  CHECK(d7.max_dev[3] < 1e-10);
  CHECK(d7.max_dev_onshell[2] < 1e-10);

  // the dilation row carries transcription slips; deviations are recorded
  const auto& d1 = by_gen("D1");
  bool some_nonzero = false;
  for (int c = 0; c < 4; ++c) some_nonzero = some_nonzero || d1.max_dev_onshell[c] > 1e-6;
  CHECK(some_nonzero);
}
