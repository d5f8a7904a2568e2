#include "zk/conservation.hpp"

#include <cmath>

#include "zk/equation.hpp"
#include "zk/grid.hpp"
#include "zk/parse.hpp"
#include "zk/rng.hpp"

namespace zk {

Expr formal_lagrangian(const Expr& psi) { return normalize(psi * zk_residual()); }

namespace {

JetCoord uc(int kx, int ky, int kz, int kt) {
  return JetCoord::u_deriv({static_cast<std::uint8_t>(kx), static_cast<std::uint8_t>(ky),
                            static_cast<std::uint8_t>(kz), static_cast<std::uint8_t>(kt)});
}

}  // namespace

Expr adjoint_equation(const Expr& psi) {
  Expr L = formal_lagrangian(psi);
  ExprList terms;
  terms.push_back(partial_diff(L, JetCoord::u()));
  terms.push_back(-total_derivative(partial_diff(L, uc(0, 0, 0, 1)), BaseVar::T));
  terms.push_back(-total_derivative(partial_diff(L, uc(1, 0, 0, 0)), BaseVar::X));
  terms.push_back(-total_derivative(partial_diff(L, uc(0, 1, 0, 0)), BaseVar::Y));
  terms.push_back(-total_derivative(partial_diff(L, uc(0, 0, 1, 0)), BaseVar::Z));
  terms.push_back(
      total_derivative(total_derivative(partial_diff(L, uc(2, 0, 0, 0)), BaseVar::X), BaseVar::X));
  terms.push_back(
      total_derivative(total_derivative(partial_diff(L, uc(0, 2, 0, 0)), BaseVar::Y), BaseVar::Y));
  terms.push_back(
      total_derivative(total_derivative(partial_diff(L, uc(0, 0, 2, 0)), BaseVar::Z), BaseVar::Z));
  return normalize(Expr::sum(std::move(terms)));
}

Expr substitution_family_psi() { return parse("c1*y*z + c2*y + c3*z + c4"); }

SelfAdjointnessResult self_adjointness_check(const Expr& psi, int n_points, std::uint64_t seed,
                                             double tol) {
  Expr s = adjoint_equation(psi);
  Expr delta1 = normalize(-partial_diff(psi, JetCoord::u()));
  Expr residual = normalize(s - delta1 * zk_residual());

  SelfAdjointnessResult out;
  out.residual = residual;
  if (residual.is_constant(0.0)) {
    out.pass = true;
    return out;
  }

  // Not syntactically zero: measure it numerically before failing (random
  // jet points, random parameter values for any symbols in play).
  std::set<std::string> names = params_of(residual);
  std::vector<double> vals(static_cast<std::size_t>(n_points));
  parallel_fill(static_cast<std::size_t>(n_points), [&](std::size_t i) {
    Rng rng(seed, i);
    JetPoint p;
    for (JetCoord c : JetCoord::all()) p.set(c, rng.uniform(-2.0, 2.0));
    ParamTable params;
    params["a"] = 1.0;
    for (const std::string& n : names)
      if (n != "a") params[n] = rng.uniform(-2.0, 2.0);
    return eval(residual, p, params);
  }, vals);
  out.max_numeric = max_abs(vals).second;
  out.pass = out.max_numeric < tol;
  return out;
}

const Expr& ConservedVector::component(int i) const {
  switch (i) {
    case 0: return eta_x;
    case 1: return eta_y;
    case 2: return eta_z;
    default: return eta_t;
  }
}

ConservedVector build_conserved_vector(const VectorField& v, const Expr& psi) {
  validate_point_field(v);
  Expr L = formal_lagrangian(psi);
  Expr w = normalize(v.xi_u - v.xi_x * Expr::coordinate(uc(1, 0, 0, 0)) -
                     v.xi_y * Expr::coordinate(uc(0, 1, 0, 0)) -
                     v.xi_z * Expr::coordinate(uc(0, 0, 1, 0)) -
                     v.xi_t * Expr::coordinate(uc(0, 0, 0, 1)));

  auto spatial = [&](const Expr& xi, JetCoord first, JetCoord second, BaseVar dir) {
    return normalize(xi * L + w * partial_diff(L, first) -
                     w * total_derivative(partial_diff(L, second), dir) +
                     total_derivative(w, dir) * partial_diff(L, second));
  };

  ConservedVector cv;
  cv.generator = v;
  cv.psi = normalize(psi);
  cv.eta_x = spatial(v.xi_x, uc(1, 0, 0, 0), uc(2, 0, 0, 0), BaseVar::X);
  cv.eta_y = spatial(v.xi_y, uc(0, 1, 0, 0), uc(0, 2, 0, 0), BaseVar::Y);
  cv.eta_z = spatial(v.xi_z, uc(0, 0, 1, 0), uc(0, 0, 2, 0), BaseVar::Z);
  cv.eta_t = normalize(v.xi_t * L + w * partial_diff(L, uc(0, 0, 0, 1)));
  return cv;
}

Expr divergence(const ConservedVector& cv) {
  return normalize(total_derivative(cv.eta_x, BaseVar::X) +
                   total_derivative(cv.eta_y, BaseVar::Y) +
                   total_derivative(cv.eta_z, BaseVar::Z) +
                   total_derivative(cv.eta_t, BaseVar::T));
}

ResidualReport divergence_residual(const ConservedVector& cv, const SolutionRecord& s,
                                   const GridSpec& grid, double tol,
                                   const ParamTable* params_override) {
  Expr div = divergence(cv);
  ParamTable params = params_override ? *params_override : s.defaults();
  // Default any substitution constants that remain unbound.
  for (const std::string& n : params_of(div))
    if (!params.count(n)) params[n] = 1.0;

  std::size_t n = grid.size();
  std::vector<double> vals(n);
  parallel_fill(n, [&](std::size_t i) {
    std::array<double, 4> pt = grid.point(i);
    if (!s.point_admissible(pt, params)) return std::nan("");
    try {
      return eval(div, s.jet(pt, params), params);
    } catch (const DomainError&) {
      return std::nan("");
    }
  }, vals);

  std::size_t n_in = 0, idx = 0;
  double mx = -1.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(vals[i])) continue;
    ++n_in;
    if (std::fabs(vals[i]) > mx) {
      mx = std::fabs(vals[i]);
      idx = i;
    }
  }
  if (n_in == 0) throw DomainError("divergence grid is empty after domain filtering");

  ResidualReport r;
  r.name = "divergence " + cv.generator.name;
  r.grid_desc = grid.describe();
  r.max_abs = mx;
  r.argmax = grid.point(idx);
  r.n_points = n_in;
  r.tol = tol;
  r.pass = mx < tol;
  return r;
}

const std::array<ConservedTableRow, 7>& conserved_table_transcription() {
  static const std::array<ConservedTableRow, 7> rows = [] {
    auto E = [](const std::string& s) { return parse(s); };
    const char* psi = "(c1*y*z + c2*y + c3*z + c4)";
    auto P = [psi](std::string body) {
      std::string out;
      std::size_t pos = 0, prev = 0;
      while ((pos = body.find("PSI", prev)) != std::string::npos) {
        out += body.substr(prev, pos - prev);
        out += psi;
        prev = pos + 3;
      }
      out += body.substr(prev);
      return out;
    };
    std::array<ConservedTableRow, 7> t;
    t[0].generator = "D1";
    t[0].eta = {
        E(P("PSI*(x/2)*(u_t + u_xx + u_yy + u_zz)"
            " + a*(-u/2 - (x/2)*u_x - (y/2)*u_y - (z/2)*u_z - t*u_t)*PSI*u"
            " + (-u_x - x*u_xx - y*u_xy - z*u_xz - t*u_xt)*PSI")),
        E(P("(y/2)*PSI*(u_t + a*u_x + u_yy + u_zz)"
            " + (u/2 + (x/2)*u_x + (y/2)*u_y + (z/2)*u_z + t*u_t)*(c1*z + c2)"
            " - (u_y + (x/2)*u_xy + (z/2)*u_yz + t*u_y)*PSI")),
        E(P("(z/2)*PSI*(u_t + a*u_x + u_yy + u_zz)"
            " + (u/2 + (x/2)*u_x + (y/2)*u_y + (z/2)*u_z + t*u_t)*(c1*y + c3)"
            " - (u_z + (x/2)*u_xz + (y/2)*u_yz)*PSI")),
        E(P("-(u/2 + (x/2)*u_x + (y/2)*u_y + (z/2)*u_z + t*u_t)*PSI"
            " + t*PSI*(u_t + a*u_x + u_yy + u_zz)")),
    };
    t[1].generator = "D2";
    t[1].eta = {
        E(P("-a*PSI*u*u_t - PSI*u_xt")),
        E(P("-PSI*u_yt + (c1*z + c2)*u_t")),
        E(P("-PSI*u_zt + (c1*y + c3)*u_t")),
        E(P("-PSI*u_t + PSI*(u_t + a*u*u_x + u_xx + u_yy + u_zz)")),
    };
    t[2].generator = "D3";
    t[2].eta = {
        E(P("a*u*PSI*(-z*u_y + y*u_z) + PSI*(-z*u_xy + y*u_xz)")),
        E(P("PSI*(-z*u_yy + u_z + y*u_yz) - (c1*z + c2)*(-z*u_y + y*u_z)"
            " + z*PSI*(u_t + a*u*u_x + u_xx + u_yy + u_zz)")),
        E(P("PSI*(-u_y - z*u_yz + y*u_zz) - (c1*y + c3)*(-z*u_y + y*u_z)"
            " - y*PSI*(u_t + a*u*u_x + u_xx + u_yy + u_zz)")),
        E(P("PSI*(-z*u_y + y*u_z)")),
    };
    t[3].generator = "D4";
    t[3].eta = {
        E(P("-a*PSI*u*u_y - u_xy*PSI")),
        E(P("-PSI*u_yy + (c1*z + c2)*u_y + PSI*(u_t + a*u*u_x + u_xx + u_yy + u_zz)")),
        E(P("-PSI*u_yz + (c1*y + c3)*u_y")),
        E(P("-PSI*u_y")),
    };
    t[4].generator = "D5";
    t[4].eta = {
        E(P("a*PSI*u*(1/a - t*u_x) - PSI*t*u_xx"
            " + PSI*t*(u_t + a*u*u_x + u_xx + u_yy + u_zz)")),
        E(P("-PSI*t*u_xy - (c1*z + c2)*(1/a - t*u_x)")),
        E(P("-PSI*t*u_xz - (c1*y + c3)*(1/a - t*u_x)")),
        E(P("PSI*(1/a - t*u_x)")),
    };
    t[5].generator = "D6";
    t[5].eta = {
        E(P("a*PSI*u*u_x + u_xx*PSI + PSI*(u_t + a*u*u_x + u_xx + u_yy + u_zz)")),
        E(P("PSI*u_xy - (c1*z + c2)*u_x")),
        E(P("PSI*u_xz - (c1*y + c3)*u_x")),
        E(P("PSI*u_x")),
    };
    t[6].generator = "D7";
    t[6].eta = {
        E(P("a*PSI*u*u_z + u_xz*PSI")),
        E(P("PSI*u_yz - (c1*z + c2)*u_z")),
        E(P("PSI*u_zz - (c1*y + c3)*u_z + PSI*(u_t + a*u*u_x + u_xx + u_yy + u_zz)")),
        E(P("PSI*u_z")),
    };
    return t;
  }();
  return rows;
}

std::vector<ConservedTableDeviation> conserved_table_crosscheck(int n_points, std::uint64_t seed) {
  const auto& printed = conserved_table_transcription();
  const Expr psi = substitution_family_psi();
  std::vector<ConservedTableDeviation> out;

  for (int row = 0; row < 7; ++row) {
    ConservedVector cv = build_conserved_vector(symmetry_basis()[static_cast<std::size_t>(row)],
                                                psi);
    // Deviation per component for both candidate row signs.
    std::array<std::array<double, 4>, 2> dev{};       // [sign: 0 -> +1, 1 -> -1]
    std::array<std::array<double, 4>, 2> dev_shell{};
    for (int i = 0; i < n_points; ++i) {
      Rng rng(seed, static_cast<std::uint64_t>(row * 100003 + i));
      JetPoint p;
      for (JetCoord c : JetCoord::all()) p.set(c, rng.uniform(-2.0, 2.0));
      ParamTable params{{"a", 1.0}};
      for (const char* cc : {"c1", "c2", "c3", "c4"}) params[cc] = rng.uniform(-2.0, 2.0);
      JetPoint q = p;  // on-shell twin
      q.set(uc(0, 0, 0, 1), manifold_ut(p, params["a"]));
      for (int comp = 0; comp < 4; ++comp) {
        double built = eval(cv.component(comp), p, params);
        double print = eval(printed[static_cast<std::size_t>(row)].eta[static_cast<std::size_t>(comp)], p, params);
        dev[0][static_cast<std::size_t>(comp)] =
            std::max(dev[0][static_cast<std::size_t>(comp)], std::fabs(print - built));
        dev[1][static_cast<std::size_t>(comp)] =
            std::max(dev[1][static_cast<std::size_t>(comp)], std::fabs(print + built));
        double built_s = eval(cv.component(comp), q, params);
        double print_s = eval(printed[static_cast<std::size_t>(row)].eta[static_cast<std::size_t>(comp)], q, params);
        dev_shell[0][static_cast<std::size_t>(comp)] =
            std::max(dev_shell[0][static_cast<std::size_t>(comp)], std::fabs(print_s - built_s));
        dev_shell[1][static_cast<std::size_t>(comp)] =
            std::max(dev_shell[1][static_cast<std::size_t>(comp)], std::fabs(print_s + built_s));
      }
    }
    auto total = [](const std::array<double, 4>& d) { return d[0] + d[1] + d[2] + d[3]; };
    int best = total(dev[0]) <= total(dev[1]) ? 0 : 1;
    ConservedTableDeviation td;
    td.generator = printed[static_cast<std::size_t>(row)].generator;
    td.row_sign = best == 0 ? 1 : -1;
    td.max_dev = dev[static_cast<std::size_t>(best)];
    td.max_dev_onshell = dev_shell[static_cast<std::size_t>(best)];
    out.push_back(td);
  }
  return out;
}

}  // namespace zk
