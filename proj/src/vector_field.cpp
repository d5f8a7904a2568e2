#include "zk/vector_field.hpp"

#include "zk/parse.hpp"

namespace zk {

Expr VectorField::apply(const Expr& f) const {
  return normalize(xi_x * partial_diff(f, JetCoord::x()) + xi_y * partial_diff(f, JetCoord::y()) +
                   xi_z * partial_diff(f, JetCoord::z()) + xi_t * partial_diff(f, JetCoord::t()) +
                   xi_u * partial_diff(f, JetCoord::u()));
}

void validate_point_field(const VectorField& v) {
  for (const Expr* comp : {&v.xi_x, &v.xi_y, &v.xi_z, &v.xi_t, &v.xi_u})
    for (JetCoord c : coords_of(*comp))
      if (c.is_u() && c.order() > 0)
        throw std::invalid_argument("point field component of '" + v.name +
                                    "' references derivative coordinate " + c.name());
}

VectorField commutator(const VectorField& a, const VectorField& b) {
  auto comp = [&](const Expr& ba, const Expr& ab) { return normalize(a.apply(ba) - b.apply(ab)); };
  VectorField out;
  out.xi_x = comp(b.xi_x, a.xi_x);
  out.xi_y = comp(b.xi_y, a.xi_y);
  out.xi_z = comp(b.xi_z, a.xi_z);
  out.xi_t = comp(b.xi_t, a.xi_t);
  out.xi_u = comp(b.xi_u, a.xi_u);
  out.name = "[" + a.name + "," + b.name + "]";
  return out;
}

VectorField scale(const VectorField& v, double c) {
  Expr k = Expr::constant(c);
  return {normalize(k * v.xi_x), normalize(k * v.xi_y), normalize(k * v.xi_z),
          normalize(k * v.xi_t), normalize(k * v.xi_u), v.name};
}

VectorField add(const VectorField& a, const VectorField& b) {
  return {normalize(a.xi_x + b.xi_x), normalize(a.xi_y + b.xi_y), normalize(a.xi_z + b.xi_z),
          normalize(a.xi_t + b.xi_t), normalize(a.xi_u + b.xi_u), a.name + "+" + b.name};
}

bool field_is_zero(const VectorField& v) {
  return v.xi_x.is_constant(0.0) && v.xi_y.is_constant(0.0) && v.xi_z.is_constant(0.0) &&
         v.xi_t.is_constant(0.0) && v.xi_u.is_constant(0.0);
}

const std::array<VectorField, 7>& symmetry_basis() {
  static const std::array<VectorField, 7> basis = [] {
    auto mk = [](const char* sx, const char* sy, const char* sz, const char* st, const char* su,
                 const char* name) {
      VectorField v{parse(sx), parse(sy), parse(sz), parse(st), parse(su), name};
      validate_point_field(v);
      return v;
    };
    return std::array<VectorField, 7>{
        mk("x/2", "y/2", "z/2", "t", "-u/2", "D1"),  // dilation
        mk("0", "0", "0", "1", "0", "D2"),           // t-translation
        mk("0", "z", "-y", "0", "0", "D3"),          // rotation in (y,z)
        mk("0", "1", "0", "0", "0", "D4"),           // y-translation
        mk("t", "0", "0", "0", "1/a", "D5"),         // Galilean boost
        mk("1", "0", "0", "0", "0", "D6"),           // x-translation
        mk("0", "0", "1", "0", "0", "D7"),           // z-translation
    };
  }();
  return basis;
}

VectorField general_infinitesimal(const std::array<double, 7>& c) {
  const auto& basis = symmetry_basis();
  VectorField out = scale(basis[0], c[0]);
  for (int i = 1; i < 7; ++i) out = add(out, scale(basis[i], c[i]));
  out.name = "general";
  return out;
}

}  // namespace zk
