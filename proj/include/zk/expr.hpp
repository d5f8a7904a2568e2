#ifndef ZK_EXPR_HPP
#define ZK_EXPR_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "zk/errors.hpp"
#include "zk/jet.hpp"
#include "zk/rational.hpp"

namespace zk {

enum class Kind : std::uint8_t {
  Constant,
  Coordinate,
  Parameter,
  Fun,
  Pow,
  Prod,
  Quot,
  Sum,
};

// sqrt is accepted by the parser and canonicalized to Pow(arg, 1/2).
enum class Fun1 : std::uint8_t { Exp, Ln, Sin, Cos, Tan, Tanh, Sech, Arctan };

const char* fun_name(Fun1 f);

class Expr;
using ExprList = std::vector<Expr>;
using ParamTable = std::map<std::string, double>;

struct ExprNode {
  Kind kind = Kind::Constant;
  double value = 0.0;      // Constant
  JetCoord coord = JetCoord::x();  // Coordinate
  std::string name;        // Parameter
  Fun1 fun = Fun1::Exp;    // Fun
  Rat exponent{};          // Pow
  ExprList kids;           // Sum/Prod operands, Pow base, Quot {num,den}, Fun arg
};

// Immutable expression tree over jet coordinates, named parameters, and real
// constants.  Construction is cheap (shared nodes); all operations are pure.
class Expr {
 public:
  Expr() : Expr(constant(0.0)) {}

  static Expr constant(double v);
  static Expr coordinate(JetCoord c);
  static Expr parameter(std::string name);
  static Expr fun(Fun1 f, Expr arg);
  static Expr pow(Expr base, Rat exponent);
  static Expr sum(ExprList kids);
  static Expr prod(ExprList kids);
  static Expr quot(Expr num, Expr den);

  const ExprNode& node() const { return *p_; }
  Kind kind() const { return p_->kind; }
  bool is_constant(double v) const { return p_->kind == Kind::Constant && p_->value == v; }

  friend Expr operator+(const Expr& a, const Expr& b) { return sum({a, b}); }
  friend Expr operator-(const Expr& a, const Expr& b) {
    return sum({a, prod({constant(-1.0), b})});
  }
  friend Expr operator*(const Expr& a, const Expr& b) { return prod({a, b}); }
  friend Expr operator/(const Expr& a, const Expr& b) { return quot(a, b); }
  friend Expr operator-(const Expr& a) { return prod({constant(-1.0), a}); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> p) : p_(std::move(p)) {}
  std::shared_ptr<const ExprNode> p_;
};

// Total order on expressions; defines the canonical operand ordering.
int compare(const Expr& a, const Expr& b);
bool identical(const Expr& a, const Expr& b);  // structural equality

// Canonical form: flattened and sorted n-ary sums/products, folded constants,
// like terms collected, x^0 -> 1, x^1 -> x, 0-annihilation, quotients
// rewritten as negative powers.  Idempotent.  No trigonometric or other
// analytic identities are applied.
Expr normalize(const Expr& e);

std::string to_string(const Expr& e);

// Derivative treating every jet coordinate as an independent variable.
// Result is normalized.
Expr partial_diff(const Expr& e, JetCoord v);

// Total derivative D_v: extends each jet coordinate's multi-index by v.
// Throws OrderError if e contains an order-3 coordinate.
Expr total_derivative(const Expr& e, BaseVar v);

// Replace coordinate leaves simultaneously; result normalized.
Expr substitute(const Expr& e, const std::map<JetCoord, Expr>& repl);

// Replace parameter leaves; result normalized.
Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& repl);

double eval(const Expr& e, const JetPoint& p, const ParamTable& params);

void collect_coords(const Expr& e, std::set<JetCoord>& out);
std::set<JetCoord> coords_of(const Expr& e);
std::set<std::string> params_of(const Expr& e);
bool depends_on(const Expr& e, JetCoord c);

}  // namespace zk

#endif
