#ifndef ZK_EQUATION_HPP
#define ZK_EQUATION_HPP

#include "zk/expr.hpp"

namespace zk {

// The governing equation u_t + a*u*u_x + u_xx + u_yy + u_zz = 0, encoded once
// and shared by every module.  `a` is a free positive parameter.
const Expr& zk_residual();

// Solves the on-manifold constraint for u_t given the other jet entries.
double manifold_ut(const JetPoint& p, double a);

}  // namespace zk

#endif
