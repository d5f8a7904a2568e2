#ifndef ZK_PROLONGATION_HPP
#define ZK_PROLONGATION_HPP

#include <map>
#include <vector>

#include "zk/vector_field.hpp"

namespace zk {

// Second prolongation of a point field: the base field plus coefficient
// expressions for every first- and second-order jet coordinate, computed as
//   zeta_J = D_J(xi_u - sum_i xi^i u_i) + sum_i xi^i u_{J,i}.
struct ProlongedField {
  VectorField base;
  std::map<JetCoord, Expr> zeta;  // keyed by u_x, ..., u_tt (orders 1 and 2)
};

ProlongedField prolong2(const VectorField& v);

// The characteristic W = xi_u - xi_x u_x - xi_y u_y - xi_z u_z - xi_t u_t.
Expr characteristic(const VectorField& v);

// Action of the prolonged field on a jet expression of order <= 2.
Expr prolonged_action(const ProlongedField& pf, const Expr& target);

struct InvarianceSample {
  double max_residual = 0.0;
  std::size_t argmax = 0;
  std::vector<double> residuals;
};

// Samples n on-manifold jet points (u_t solved from the equation), evaluates
// Pr2(V)(Delta), and returns the max absolute value.  Deterministic for a
// given seed regardless of thread count: point i draws from stream (seed, i).
InvarianceSample invariance_residual(const VectorField& v, int n_points, std::uint64_t seed,
                                     double a = 1.0);

}  // namespace zk

#endif
