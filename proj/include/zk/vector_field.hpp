#ifndef ZK_VECTOR_FIELD_HPP
#define ZK_VECTOR_FIELD_HPP

#include <array>
#include <string>

#include "zk/expr.hpp"

namespace zk {

// A point-symmetry generator: five infinitesimal components, each an
// expression in (x, y, z, t, u) only.
struct VectorField {
  Expr xi_x, xi_y, xi_z, xi_t, xi_u;
  std::string name;

  // First-order action xi_x d/dx + xi_y d/dy + xi_z d/dz + xi_t d/dt + xi_u d/du.
  Expr apply(const Expr& f) const;
};

// Throws if a component references a derivative coordinate.
void validate_point_field(const VectorField& v);

// Componentwise [A,B] = A(B) - B(A), normalized.
VectorField commutator(const VectorField& a, const VectorField& b);

VectorField scale(const VectorField& v, double c);
VectorField add(const VectorField& a, const VectorField& b);
bool field_is_zero(const VectorField& v);

// The seven basis generators: dilation, t/y/x/z translations, rotation in
// (y,z), Galilean boost.
const std::array<VectorField, 7>& symmetry_basis();

// General infinitesimal with arbitrary constants c1..c7; equals
// sum_i c_i * basis[i].
VectorField general_infinitesimal(const std::array<double, 7>& c);

}  // namespace zk

#endif
