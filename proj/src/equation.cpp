#include "zk/equation.hpp"

#include "zk/parse.hpp"

namespace zk {

const Expr& zk_residual() {
  static const Expr delta = parse("u_t + a*u*u_x + u_xx + u_yy + u_zz");
  return delta;
}

double manifold_ut(const JetPoint& p, double a) {
  double u = p.get(JetCoord::u());
  double ux = p.get(JetCoord::u_deriv({1, 0, 0, 0}));
  double uxx = p.get(JetCoord::u_deriv({2, 0, 0, 0}));
  double uyy = p.get(JetCoord::u_deriv({0, 2, 0, 0}));
  double uzz = p.get(JetCoord::u_deriv({0, 0, 2, 0}));
  return -(a * u * ux + uxx + uyy + uzz);
}

}  // namespace zk
