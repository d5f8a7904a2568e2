#include "zk/prolongation.hpp"

#include "zk/equation.hpp"
#include "zk/grid.hpp"
#include "zk/rng.hpp"

namespace zk {

Expr characteristic(const VectorField& v) {
  const Expr* xi[4] = {&v.xi_x, &v.xi_y, &v.xi_z, &v.xi_t};
  ExprList terms{v.xi_u};
  for (int i = 0; i < 4; ++i) {
    JetCoord ui = JetCoord::u().extended(static_cast<BaseVar>(i));
    terms.push_back(-( *xi[i] * Expr::coordinate(ui)));
  }
  return normalize(Expr::sum(std::move(terms)));
}

ProlongedField prolong2(const VectorField& v) {
  validate_point_field(v);
  ProlongedField out{v, {}};
  Expr w = characteristic(v);
  const Expr* xi[4] = {&v.xi_x, &v.xi_y, &v.xi_z, &v.xi_t};

  // First order: zeta_i = D_i(W) + sum_j xi^j u_{ij}
  std::map<JetCoord, Expr> first;
  for (int i = 0; i < 4; ++i) {
    BaseVar bi = static_cast<BaseVar>(i);
    ExprList terms{total_derivative(w, bi)};
    for (int j = 0; j < 4; ++j) {
      JetCoord uij = JetCoord::u().extended(bi).extended(static_cast<BaseVar>(j));
      terms.push_back(*xi[j] * Expr::coordinate(uij));
    }
    out.zeta[JetCoord::u().extended(bi)] = normalize(Expr::sum(std::move(terms)));
  }

  // Second order: zeta_{ij} = D_i D_j(W) + sum_k xi^k u_{ijk}
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      BaseVar bi = static_cast<BaseVar>(i), bj = static_cast<BaseVar>(j);
      JetCoord uij = JetCoord::u().extended(bi).extended(bj);
      ExprList terms{total_derivative(total_derivative(w, bj), bi)};
      for (int k = 0; k < 4; ++k)
        terms.push_back(*xi[k] * Expr::coordinate(uij.extended(static_cast<BaseVar>(k))));
      out.zeta[uij] = normalize(Expr::sum(std::move(terms)));
    }
  return out;
}

Expr prolonged_action(const ProlongedField& pf, const Expr& target) {
  ExprList terms{pf.base.apply(target)};
  for (const auto& [coord, coeff] : pf.zeta)
    terms.push_back(coeff * partial_diff(target, coord));
  return normalize(Expr::sum(std::move(terms)));
}

InvarianceSample invariance_residual(const VectorField& v, int n_points, std::uint64_t seed,
                                     double a) {
  Expr action = prolonged_action(prolong2(v), zk_residual());
  ParamTable params{{"a", a}};

  InvarianceSample out;
  out.residuals.resize(static_cast<std::size_t>(n_points));
  parallel_fill(
      static_cast<std::size_t>(n_points),
      [&](std::size_t i) {
        Rng rng(seed, i);
        JetPoint p;
        for (JetCoord c : JetCoord::all()) p.set(c, rng.uniform(-2.0, 2.0));
        p.set(JetCoord::u_deriv({0, 0, 0, 1}), manifold_ut(p, a));
        return eval(action, p, params);
      },
      out.residuals);
  auto [idx, mx] = max_abs(out.residuals);
  out.max_residual = mx;
  out.argmax = idx;
  return out;
}

}  // namespace zk
