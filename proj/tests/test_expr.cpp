#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "zk/expr.hpp"
#include "zk/parse.hpp"
#include "zk/rng.hpp"

using namespace zk;

namespace {

JetPoint random_point(Rng& rng, double lo = -2.0, double hi = 2.0) {
  JetPoint p;
  for (JetCoord c : JetCoord::all()) p.set(c, rng.uniform(lo, hi));
  return p;
}

bool close_rel(double a, double b, double tol) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

// Random expression over a small vocabulary; depth-limited.
Expr random_expr(Rng& rng, int depth) {
  const JetCoord leaves[] = {JetCoord::x(), JetCoord::y(), JetCoord::t(), JetCoord::u(),
                             JetCoord::u_deriv({1, 0, 0, 0})};
  if (depth <= 0 || rng.next_unit() < 0.25) {
    double r = rng.next_unit();
    if (r < 0.3) return Expr::constant(std::floor(rng.uniform(-4.0, 5.0)) / 2.0);
    if (r < 0.4) return Expr::parameter("a");
    return Expr::coordinate(leaves[rng.next_u64() % 5]);
  }
  switch (rng.next_u64() % 6) {
    case 0:
      return random_expr(rng, depth - 1) + random_expr(rng, depth - 1);
    case 1:
      return random_expr(rng, depth - 1) - random_expr(rng, depth - 1);
    case 2:
      return random_expr(rng, depth - 1) * random_expr(rng, depth - 1);
    case 3: {
      int e = 2 + static_cast<int>(rng.next_u64() % 2);
      return Expr::pow(random_expr(rng, depth - 1), Rat(e));
    }
    case 4: {
      Fun1 fs[] = {Fun1::Sin, Fun1::Cos, Fun1::Tanh, Fun1::Sech, Fun1::Arctan};
      return Expr::fun(fs[rng.next_u64() % 5], random_expr(rng, depth - 1));
    }
    default:
      return Expr::quot(random_expr(rng, depth - 1),
                        Expr::constant(2.0) + Expr::pow(random_expr(rng, depth - 1), Rat(2)));
  }
}

}  // namespace

TEST_CASE("parse: governing equation residual") {
  Expr delta = parse("u_t + a*u*u_x + u_xx + u_yy + u_zz");
  auto coords = coords_of(delta);
  CHECK(coords.count(JetCoord::u_deriv({0, 0, 0, 1})) == 1);
  CHECK(coords.count(JetCoord::u_deriv({2, 0, 0, 0})) == 1);
  CHECK(params_of(delta) == std::set<std::string>{"a"});

  JetPoint p;
  p.set(JetCoord::u(), 2.0);
  p.set(JetCoord::u_deriv({1, 0, 0, 0}), 3.0);
  p.set(JetCoord::u_deriv({0, 0, 0, 1}), 1.0);
  p.set(JetCoord::u_deriv({2, 0, 0, 0}), 0.5);
  p.set(JetCoord::u_deriv({0, 2, 0, 0}), 0.25);
  p.set(JetCoord::u_deriv({0, 0, 2, 0}), 0.25);
  CHECK(eval(delta, p, {{"a", 1.5}}) == doctest::Approx(1.0 + 1.5 * 2.0 * 3.0 + 1.0).epsilon(1e-15));
}

TEST_CASE("parse: trivial and error cases") {
  CHECK(parse("0").is_constant(0.0));
  CHECK(parse("x^0").is_constant(1.0));
  CHECK(identical(parse("x^1"), Expr::coordinate(JetCoord::x())));
  CHECK(identical(parse("0*u_xx + x"), Expr::coordinate(JetCoord::x())));

  CHECK_THROWS_AS(parse("fma(x, y)"), ParseError);
  CHECK_THROWS_AS(parse("1 + "), ParseError);
  CHECK_THROWS_AS(parse("(x"), ParseError);
  CHECK_THROWS_AS(parse("x^y"), ParseError);
  CHECK_THROWS_AS(parse("u_xxxx"), OrderError);
  // u_q is not a derivative name; it is an ordinary parameter
  CHECK(parse("u_q").kind() == Kind::Parameter);
  try {
    parse("x + $");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("parse: round trip for the u1 closed form") {
  Expr u1 = parse("2/(1+2*C*exp(t-x))");
  Expr again = parse(to_string(u1));
  CHECK(identical(u1, again));
  CHECK(to_string(u1) == to_string(again));
}

TEST_CASE("partial_diff: jet coordinates are independent") {
  JetCoord ux = JetCoord::u_deriv({1, 0, 0, 0});
  Expr e = parse("a*u*u_x");
  CHECK(identical(partial_diff(e, ux), parse("a*u")));
  CHECK(partial_diff(parse("sin(x)"), JetCoord::u()).is_constant(0.0));

  // d(psi*Delta)/du_xx == psi for psi independent of u_xx
  Expr psi = parse("c1*y*z + c2*y + c3*z + c4");
  Expr delta = parse("u_t + a*u*u_x + u_xx + u_yy + u_zz");
  Expr d = partial_diff(psi * delta, JetCoord::u_deriv({2, 0, 0, 0}));
  CHECK(identical(d, normalize(psi)));
}

TEST_CASE("partial_diff agrees with central finite differences") {
  Rng rng(2024);
  int checked = 0;
  for (int trial = 0; trial < 120 && checked < 100; ++trial) {
    Expr e = random_expr(rng, 3);
    JetCoord v = (trial % 2) ? JetCoord::u() : JetCoord::x();
    Expr de = partial_diff(e, v);
    for (int k = 0; k < 5; ++k) {
      JetPoint p = random_point(rng);
      ParamTable params{{"a", 1.25}};
      const double h = 1e-6;
      JetPoint pp = p, pm = p;
      pp.set(v, p.get(v) + h);
      pm.set(v, p.get(v) - h);
      double e0, ep, em, d0;
      try {
        e0 = eval(e, p, params);
        ep = eval(e, pp, params);
        em = eval(e, pm, params);
        d0 = eval(de, p, params);
      } catch (const DomainError&) {
        continue;
      }
      if (!std::isfinite(e0) || !std::isfinite(ep) || !std::isfinite(em) || !std::isfinite(d0))
        continue;
      double fd = (ep - em) / (2 * h);
      if (std::fabs(fd) > 1e4) continue;  // derivative too steep for h=1e-6
      CHECK_MESSAGE(close_rel(d0, fd, 1e-5), to_string(e), " wrt ", v.name(), " sym=", d0,
                    " fd=", fd);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("total_derivative: definition cases") {
  CHECK(identical(total_derivative(parse("u"), BaseVar::X), parse("u_x")));
  CHECK(total_derivative(parse("x"), BaseVar::T).is_constant(0.0));

  // D_x(psi*a*u) = a*psi_x*u + a*psi*u_x, with sin(x) standing in for psi
  Expr psi = parse("sin(x)");
  Expr lhs = total_derivative(parse("a*u") * psi, BaseVar::X);
  Expr rhs = normalize(parse("a*u*cos(x)") + parse("a*u_x") * psi);
  CHECK(identical(lhs, rhs));
}

TEST_CASE("total_derivative: order overflow") {
  Expr e = parse("u_xxx");
  CHECK_THROWS_AS(total_derivative(e, BaseVar::X), OrderError);
  // order-2 inputs are fine and land at order 3
  Expr ok = total_derivative(parse("u_xx"), BaseVar::Y);
  CHECK(identical(ok, parse("u_xxy")));
}

TEST_CASE("total derivatives commute on low-order input") {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    Expr e = random_expr(rng, 3);
    bool low_order = true;
    for (JetCoord c : coords_of(e))
      if (c.is_u() && c.order() > 1) low_order = false;
    if (!low_order) continue;
    Expr dxy = total_derivative(total_derivative(e, BaseVar::X), BaseVar::Y);
    Expr dyx = total_derivative(total_derivative(e, BaseVar::Y), BaseVar::X);
    for (int k = 0; k < 3; ++k) {
      JetPoint p = random_point(rng);
      try {
        double a = eval(dxy, p, {{"a", 0.75}});
        double b = eval(dyx, p, {{"a", 0.75}});
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        CHECK_MESSAGE(close_rel(a, b, 1e-9), to_string(e));
      } catch (const DomainError&) {
      }
    }
  }
}

TEST_CASE("Leibniz rule under total derivative") {
  Rng rng(4242);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    Expr f = random_expr(rng, 3);
    Expr g = random_expr(rng, 3);
    bool ok = true;
    for (JetCoord c : coords_of(f * g))
      if (c.is_u() && c.order() >= kMaxJetOrder) ok = false;
    if (!ok) continue;
    Expr lhs = total_derivative(f * g, BaseVar::X);
    Expr rhs = normalize(total_derivative(f, BaseVar::X) * g + f * total_derivative(g, BaseVar::X));
    for (int k = 0; k < 3; ++k) {
      JetPoint p = random_point(rng);
      try {
        double a = eval(lhs, p, {{"a", 0.75}});
        double b = eval(rhs, p, {{"a", 0.75}});
        if (!std::isfinite(a) || !std::isfinite(b)) continue;
        CHECK_MESSAGE(close_rel(a, b, 1e-9), to_string(f), " | ", to_string(g));
        ++checked;
      } catch (const DomainError&) {
      }
    }
  }
  CHECK(checked >= 60);
}

TEST_CASE("eval: projection, domain error, unbound symbols") {
  JetPoint p;
  p.set(JetCoord::u_deriv({1, 0, 0, 0}), 3.5);
  CHECK(eval(parse("u_x"), p, {}) == 3.5);

  JetPoint q;
  q.set(JetCoord::t(), -1.0);
  CHECK_THROWS_AS(eval(parse("sqrt(t)"), q, {}), DomainError);
  CHECK_THROWS_AS(eval(parse("ln(t)"), q, {}), DomainError);
  CHECK_THROWS_AS(eval(parse("1/(t+1)"), q, {}), DomainError);
  CHECK_THROWS_AS(eval(parse("b2"), q, {}), EvalError);
  CHECK_THROWS_AS(eval(parse("u_zz"), q, {}), EvalError);
}

TEST_CASE("eval: u1 jet zeroes the governing residual") {
  // Hand-derived jet of u1 = 2/(1+g), g = 2C e^{t-x}, at (1,0,0,1), C=1, a=1:
  // u_t = -2g/(1+g)^2, u_x = 2g/(1+g)^2, u_xx = -2g(1-g)/(1+g)^3, u_yy = u_zz = 0.
  double g = 2.0 * std::exp(0.0);
  double up = 1.0 + g;
  JetPoint p;
  p.set_base(1.0, 0.0, 0.0, 1.0);
  p.set(JetCoord::u(), 2.0 / up);
  p.set(JetCoord::u_deriv({0, 0, 0, 1}), -2.0 * g / (up * up));
  p.set(JetCoord::u_deriv({1, 0, 0, 0}), 2.0 * g / (up * up));
  p.set(JetCoord::u_deriv({2, 0, 0, 0}), -2.0 * g * (1.0 - g) / (up * up * up));
  p.set(JetCoord::u_deriv({0, 2, 0, 0}), 0.0);
  p.set(JetCoord::u_deriv({0, 0, 2, 0}), 0.0);
  Expr delta = parse("u_t + a*u*u_x + u_xx + u_yy + u_zz");
  CHECK(std::fabs(eval(delta, p, {{"a", 1.0}})) < 1e-12);
}

TEST_CASE("normalization: idempotence and cancellation") {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Expr e = random_expr(rng, 4);
    Expr n1 = normalize(e);
    Expr n2 = normalize(n1);
    CHECK_MESSAGE(identical(n1, n2), to_string(e));
  }
  // like-term collection yields exact zero
  Expr psi = parse("c1*y*z + c2*y + c3*z + c4");
  Expr e = psi * parse("a*u_x") - parse("a") * psi * parse("u_x");
  CHECK(normalize(e).is_constant(0.0));
}

TEST_CASE("print/parse round trip preserves structural equality") {
  Rng rng(555);
  for (int trial = 0; trial < 200; ++trial) {
    Expr e = normalize(random_expr(rng, 4));
    std::string s = to_string(e);
    Expr back = parse(s);
    CHECK_MESSAGE(identical(e, back), s, " reparsed as ", to_string(back));
  }
}

TEST_CASE("normalization: quotients become negative powers") {
  Expr e = parse("2/(1+2*C*exp(t-x))");
  CHECK(e.kind() == Kind::Prod);
  // evaluates correctly
  JetPoint p;
  p.set_base(0.0, 0.0, 0.0, 0.0);
  CHECK(eval(e, p, {{"C", 0.5}}) == doctest::Approx(1.0));
}
