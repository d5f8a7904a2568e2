#include "zk/expr.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace zk {

const char* fun_name(Fun1 f) {
  switch (f) {
    case Fun1::Exp: return "exp";
    case Fun1::Ln: return "ln";
    case Fun1::Sin: return "sin";
    case Fun1::Cos: return "cos";
    case Fun1::Tan: return "tan";
    case Fun1::Tanh: return "tanh";
    case Fun1::Sech: return "sech";
    case Fun1::Arctan: return "arctan";
  }
  return "?";
}

namespace {

std::shared_ptr<const ExprNode> make(ExprNode n) {
  return std::make_shared<const ExprNode>(std::move(n));
}

int kind_rank(Kind k) {
  switch (k) {
    case Kind::Constant: return 0;
    case Kind::Coordinate: return 1;
    case Kind::Parameter: return 2;
    case Kind::Fun: return 3;
    case Kind::Pow: return 4;
    case Kind::Prod: return 5;
    case Kind::Sum: return 6;
    case Kind::Quot: return 7;
  }
  return 8;
}

}  // namespace

Expr Expr::constant(double v) {
  ExprNode n;
  n.kind = Kind::Constant;
  n.value = (v == 0.0) ? 0.0 : v;  // collapse -0.0
  return Expr(make(std::move(n)));
}

Expr Expr::coordinate(JetCoord c) {
  ExprNode n;
  n.kind = Kind::Coordinate;
  n.coord = c;
  return Expr(make(std::move(n)));
}

Expr Expr::parameter(std::string name) {
  ExprNode n;
  n.kind = Kind::Parameter;
  n.name = std::move(name);
  return Expr(make(std::move(n)));
}

Expr Expr::fun(Fun1 f, Expr arg) {
  ExprNode n;
  n.kind = Kind::Fun;
  n.fun = f;
  n.kids = {std::move(arg)};
  return Expr(make(std::move(n)));
}

Expr Expr::pow(Expr base, Rat exponent) {
  ExprNode n;
  n.kind = Kind::Pow;
  n.exponent = exponent;
  n.kids = {std::move(base)};
  return Expr(make(std::move(n)));
}

Expr Expr::sum(ExprList kids) {
  ExprNode n;
  n.kind = Kind::Sum;
  n.kids = std::move(kids);
  return Expr(make(std::move(n)));
}

Expr Expr::prod(ExprList kids) {
  ExprNode n;
  n.kind = Kind::Prod;
  n.kids = std::move(kids);
  return Expr(make(std::move(n)));
}

Expr Expr::quot(Expr num, Expr den) {
  ExprNode n;
  n.kind = Kind::Quot;
  n.kids = {std::move(num), std::move(den)};
  return Expr(make(std::move(n)));
}

int compare(const Expr& a, const Expr& b) {
  if (&a.node() == &b.node()) return 0;
  const ExprNode& x = a.node();
  const ExprNode& y = b.node();
  if (int d = kind_rank(x.kind) - kind_rank(y.kind); d != 0) return d < 0 ? -1 : 1;
  switch (x.kind) {
    case Kind::Constant:
      if (x.value < y.value) return -1;
      if (x.value > y.value) return 1;
      return 0;
    case Kind::Coordinate:
      return x.coord.id() < y.coord.id() ? -1 : (x.coord.id() > y.coord.id() ? 1 : 0);
    case Kind::Parameter:
      return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
    case Kind::Fun:
      if (x.fun != y.fun) return static_cast<int>(x.fun) < static_cast<int>(y.fun) ? -1 : 1;
      return compare(x.kids[0], y.kids[0]);
    case Kind::Pow: {
      if (int d = compare(x.kids[0], y.kids[0]); d != 0) return d;
      if (x.exponent == y.exponent) return 0;
      return x.exponent < y.exponent ? -1 : 1;
    }
    default: {
      std::size_t n = std::min(x.kids.size(), y.kids.size());
      for (std::size_t i = 0; i < n; ++i)
        if (int d = compare(x.kids[i], y.kids[i]); d != 0) return d;
      if (x.kids.size() != y.kids.size()) return x.kids.size() < y.kids.size() ? -1 : 1;
      return 0;
    }
  }
}

bool identical(const Expr& a, const Expr& b) { return compare(a, b) == 0; }

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

namespace {

double fold_fun(Fun1 f, double x) {
  switch (f) {
    case Fun1::Exp: return std::exp(x);
    case Fun1::Ln: return std::log(x);
    case Fun1::Sin: return std::sin(x);
    case Fun1::Cos: return std::cos(x);
    case Fun1::Tan: return std::tan(x);
    case Fun1::Tanh: return std::tanh(x);
    case Fun1::Sech: return 1.0 / std::cosh(x);
    case Fun1::Arctan: return std::atan(x);
  }
  return 0.0;
}

struct Factor {
  Expr base;
  Rat exponent;
};

Expr rebuild_factor(const Factor& f) {
  if (f.exponent.is_one()) return f.base;
  return Expr::pow(f.base, f.exponent);
}

// Rebuild a product from a coefficient and sorted factors, without
// re-normalizing (inputs are already canonical pieces).
Expr rebuild_prod(double coeff, const std::vector<Factor>& factors) {
  if (coeff == 0.0) return Expr::constant(0.0);
  ExprList kids;
  if (coeff != 1.0) kids.push_back(Expr::constant(coeff));
  for (const Factor& f : factors) kids.push_back(rebuild_factor(f));
  if (kids.empty()) return Expr::constant(1.0);
  if (kids.size() == 1) return kids[0];
  return Expr::prod(std::move(kids));
}

// Split a normalized term into (coefficient, remaining product).  The
// remaining part is canonical: Constant(1) when the term is a pure number.
std::pair<double, Expr> split_coeff(const Expr& e) {
  const ExprNode& n = e.node();
  if (n.kind == Kind::Constant) return {n.value, Expr::constant(1.0)};
  if (n.kind == Kind::Prod && !n.kids.empty() && n.kids[0].kind() == Kind::Constant) {
    double c = n.kids[0].node().value;
    ExprList rest(n.kids.begin() + 1, n.kids.end());
    if (rest.size() == 1) return {c, rest[0]};
    return {c, Expr::prod(std::move(rest))};
  }
  return {1.0, e};
}

Expr rebuild_term(double coeff, const Expr& rest) {
  if (coeff == 0.0) return Expr::constant(0.0);
  if (rest.is_constant(1.0)) return Expr::constant(coeff);
  if (coeff == 1.0) return rest;
  ExprList kids{Expr::constant(coeff)};
  if (rest.kind() == Kind::Prod) {
    for (const Expr& k : rest.node().kids) kids.push_back(k);
  } else {
    kids.push_back(rest);
  }
  return Expr::prod(std::move(kids));
}

Expr norm(const Expr& e);

Expr norm_pow(const Expr& base_raw, Rat r) {
  Expr b = norm(base_raw);
  if (r.is_zero()) return Expr::constant(1.0);
  if (r.is_one()) return b;
  if (b.kind() == Kind::Constant) {
    double v = std::pow(b.node().value, r.to_double());
    if (std::isfinite(v)) return Expr::constant(v);
    return Expr::pow(b, r);  // e.g. fractional power of a negative constant
  }
  if (b.kind() == Kind::Prod && r.is_integer()) {
    ExprList kids;
    kids.reserve(b.node().kids.size());
    for (const Expr& k : b.node().kids) kids.push_back(Expr::pow(k, r));
    return norm(Expr::prod(std::move(kids)));
  }
  return Expr::pow(b, r);
}

Expr norm_prod(const ExprList& kids_raw) {
  double coeff = 1.0;
  std::vector<Factor> factors;
  auto add_factor = [&](const Expr& base, Rat exp) {
    for (Factor& f : factors) {
      if (identical(f.base, base)) {
        f.exponent = f.exponent + exp;
        return;
      }
    }
    factors.push_back({base, exp});
  };
  std::vector<Expr> stack(kids_raw.rbegin(), kids_raw.rend());
  while (!stack.empty()) {
    Expr k = norm(stack.back());
    stack.pop_back();
    const ExprNode& n = k.node();
    switch (n.kind) {
      case Kind::Constant: coeff *= n.value; break;
      case Kind::Prod:
        for (auto it = n.kids.rbegin(); it != n.kids.rend(); ++it) stack.push_back(*it);
        break;
      case Kind::Pow: add_factor(n.kids[0], n.exponent); break;
      default: add_factor(k, Rat(1)); break;
    }
  }
  if (coeff == 0.0) return Expr::constant(0.0);
  std::vector<Factor> kept;
  for (Factor& f : factors) {
    if (f.exponent.is_zero()) continue;  // x^0 -> 1 (bases taken nonzero)
    // Merging may have produced a foldable constant power.
    if (f.base.kind() == Kind::Constant) {
      double v = std::pow(f.base.node().value, f.exponent.to_double());
      if (std::isfinite(v)) {
        coeff *= v;
        continue;
      }
    }
    kept.push_back(std::move(f));
  }
  std::sort(kept.begin(), kept.end(),
            [](const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; });
  if (coeff == 0.0) return Expr::constant(0.0);
  // A constant times a lone sum distributes, so -(A + B) can cancel termwise.
  if (coeff != 1.0 && kept.size() == 1 && kept[0].exponent.is_one() &&
      kept[0].base.kind() == Kind::Sum) {
    ExprList scaled;
    const ExprList& terms = kept[0].base.node().kids;
    scaled.reserve(terms.size());
    for (const Expr& term : terms) {
      auto [c0, rest] = split_coeff(term);
      scaled.push_back(rebuild_term(c0 * coeff, rest));
    }
    return Expr::sum(std::move(scaled));  // term order (by rest) is unchanged
  }
  return rebuild_prod(coeff, kept);
}

Expr norm_sum(const ExprList& kids_raw) {
  std::vector<std::pair<Expr, double>> terms;  // (rest, coefficient)
  auto add_term = [&](const Expr& rest, double c) {
    for (auto& t : terms) {
      if (identical(t.first, rest)) {
        t.second += c;
        return;
      }
    }
    terms.emplace_back(rest, c);
  };
  std::vector<Expr> stack(kids_raw.rbegin(), kids_raw.rend());
  while (!stack.empty()) {
    Expr k = norm(stack.back());
    stack.pop_back();
    if (k.kind() == Kind::Sum) {
      const ExprList& ks = k.node().kids;
      for (auto it = ks.rbegin(); it != ks.rend(); ++it) stack.push_back(*it);
      continue;
    }
    auto [c, rest] = split_coeff(k);
    add_term(rest, c);
  }
  std::vector<std::pair<Expr, double>> kept;
  for (auto& t : terms)
    if (t.second != 0.0) kept.push_back(std::move(t));
  std::sort(kept.begin(), kept.end(),
            [](const auto& a, const auto& b) { return compare(a.first, b.first) < 0; });
  if (kept.empty()) return Expr::constant(0.0);
  if (kept.size() == 1) return rebuild_term(kept[0].second, kept[0].first);
  ExprList out;
  out.reserve(kept.size());
  for (auto& t : kept) out.push_back(rebuild_term(t.second, t.first));
  return Expr::sum(std::move(out));
}

Expr norm(const Expr& e) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Constant: return n.value == 0.0 ? Expr::constant(0.0) : e;
    case Kind::Coordinate:
    case Kind::Parameter: return e;
    case Kind::Fun: {
      Expr arg = norm(n.kids[0]);
      if (arg.kind() == Kind::Constant) {
        double v = fold_fun(n.fun, arg.node().value);
        if (std::isfinite(v)) return Expr::constant(v);
      }
      return Expr::fun(n.fun, arg);
    }
    case Kind::Quot:
      return norm(Expr::prod({n.kids[0], Expr::pow(n.kids[1], Rat(-1))}));
    case Kind::Pow: return norm_pow(n.kids[0], n.exponent);
    case Kind::Prod: return norm_prod(n.kids);
    case Kind::Sum: return norm_sum(n.kids);
  }
  return e;
}

}  // namespace

Expr normalize(const Expr& e) { return norm(e); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

std::string double_str(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

enum Prec { kPrecSum = 0, kPrecProd = 1, kPrecPow = 2, kPrecAtom = 3 };

std::string print(const Expr& e, int parent_prec);

// Detect a negative leading constant so sums render as "a - b".
bool negative_leading(const Expr& e, Expr* abs_out) {
  const ExprNode& n = e.node();
  if (n.kind == Kind::Constant && n.value < 0) {
    *abs_out = Expr::constant(-n.value);
    return true;
  }
  if (n.kind == Kind::Prod && !n.kids.empty() && n.kids[0].kind() == Kind::Constant &&
      n.kids[0].node().value < 0) {
    double c = -n.kids[0].node().value;
    ExprList rest(n.kids.begin() + 1, n.kids.end());
    if (c == 1.0) {
      *abs_out = rest.size() == 1 ? rest[0] : Expr::prod(std::move(rest));
    } else {
      ExprList kids{Expr::constant(c)};
      for (Expr& r : rest) kids.push_back(std::move(r));
      *abs_out = Expr::prod(std::move(kids));
    }
    return true;
  }
  return false;
}

std::string print_sum(const Expr& e) {
  std::string out;
  bool first = true;
  for (const Expr& k : e.node().kids) {
    Expr absval;
    if (negative_leading(k, &absval)) {
      out += first ? "-" : " - ";
      out += print(absval, kPrecSum + 1);
    } else {
      if (!first) out += " + ";
      out += print(k, kPrecSum + 1);
    }
    first = false;
  }
  return out;
}

std::string print_prod(const Expr& e) {
  const ExprList& kids = e.node().kids;
  std::string out;
  bool first = true;
  std::size_t start = 0;
  // A leading coefficient of -1 renders as a sign, not "-1*".
  if (kids.size() > 1 && kids[0].is_constant(-1.0)) {
    out += "-";
    start = 1;
  }
  for (std::size_t i = start; i < kids.size(); ++i) {
    if (!first) out += "*";
    out += print(kids[i], kPrecProd + 1);
    first = false;
  }
  return out;
}

std::string print(const Expr& e, int parent_prec) {
  const ExprNode& n = e.node();
  std::string body;
  int prec = kPrecAtom;
  switch (n.kind) {
    case Kind::Constant:
      body = double_str(n.value);
      prec = n.value < 0 ? kPrecSum : kPrecAtom;
      break;
    case Kind::Coordinate:
      body = n.coord.name();
      break;
    case Kind::Parameter:
      body = n.name;
      break;
    case Kind::Fun:
      body = std::string(fun_name(n.fun)) + "(" + print(n.kids[0], kPrecSum) + ")";
      break;
    case Kind::Pow: {
      std::string b = print(n.kids[0], kPrecAtom);
      const ExprNode& bn = n.kids[0].node();
      bool need_parens = bn.kind == Kind::Sum || bn.kind == Kind::Prod ||
                         bn.kind == Kind::Quot || bn.kind == Kind::Pow ||
                         (bn.kind == Kind::Constant && bn.value < 0);
      if (need_parens) b = "(" + print(n.kids[0], kPrecSum) + ")";
      std::string ex = n.exponent.is_integer() && n.exponent.num >= 0
                           ? n.exponent.str()
                           : "(" + n.exponent.str() + ")";
      body = b + "^" + ex;
      prec = kPrecPow;
      break;
    }
    case Kind::Prod:
      body = print_prod(e);
      prec = kPrecProd;
      break;
    case Kind::Quot: {
      std::string num = print(n.kids[0], kPrecProd);
      const ExprNode& dn = n.kids[1].node();
      std::string den = print(n.kids[1], kPrecAtom);
      if (dn.kind == Kind::Sum || dn.kind == Kind::Prod || dn.kind == Kind::Quot ||
          (dn.kind == Kind::Constant && dn.value < 0))
        den = "(" + print(n.kids[1], kPrecSum) + ")";
      body = num + "/" + den;
      prec = kPrecProd;
      break;
    }
    case Kind::Sum:
      body = print_sum(e);
      prec = kPrecSum;
      break;
  }
  if (prec < parent_prec) return "(" + body + ")";
  return body;
}

}  // namespace

std::string to_string(const Expr& e) { return print(e, kPrecSum); }

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

namespace {

Expr diff_raw(const Expr& e, JetCoord v) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Constant:
    case Kind::Parameter:
      return Expr::constant(0.0);
    case Kind::Coordinate:
      return Expr::constant(n.coord == v ? 1.0 : 0.0);
    case Kind::Sum: {
      ExprList kids;
      kids.reserve(n.kids.size());
      for (const Expr& k : n.kids) kids.push_back(diff_raw(k, v));
      return Expr::sum(std::move(kids));
    }
    case Kind::Prod: {
      ExprList terms;
      terms.reserve(n.kids.size());
      for (std::size_t i = 0; i < n.kids.size(); ++i) {
        ExprList kids = n.kids;
        kids[i] = diff_raw(n.kids[i], v);
        terms.push_back(Expr::prod(std::move(kids)));
      }
      return Expr::sum(std::move(terms));
    }
    case Kind::Quot: {
      const Expr& num = n.kids[0];
      const Expr& den = n.kids[1];
      Expr dn = diff_raw(num, v);
      Expr dd = diff_raw(den, v);
      return Expr::quot(dn * den - num * dd, den * den);
    }
    case Kind::Pow: {
      const Expr& b = n.kids[0];
      Rat r = n.exponent;
      return Expr::constant(r.to_double()) * Expr::pow(b, r - Rat(1)) * diff_raw(b, v);
    }
    case Kind::Fun: {
      const Expr& a = n.kids[0];
      Expr da = diff_raw(a, v);
      switch (n.fun) {
        case Fun1::Exp: return Expr::fun(Fun1::Exp, a) * da;
        case Fun1::Ln: return da * Expr::pow(a, Rat(-1));
        case Fun1::Sin: return Expr::fun(Fun1::Cos, a) * da;
        case Fun1::Cos: return -(Expr::fun(Fun1::Sin, a) * da);
        case Fun1::Tan: {
          Expr t = Expr::fun(Fun1::Tan, a);
          return (Expr::constant(1.0) + t * t) * da;
        }
        case Fun1::Tanh: {
          Expr t = Expr::fun(Fun1::Tanh, a);
          return (Expr::constant(1.0) - t * t) * da;
        }
        case Fun1::Sech:
          return -(Expr::fun(Fun1::Sech, a) * Expr::fun(Fun1::Tanh, a) * da);
        case Fun1::Arctan:
          return da * Expr::pow(Expr::constant(1.0) + a * a, Rat(-1));
      }
      return Expr::constant(0.0);
    }
  }
  return Expr::constant(0.0);
}

}  // namespace

Expr partial_diff(const Expr& e, JetCoord v) { return normalize(diff_raw(e, v)); }

Expr total_derivative(const Expr& e, BaseVar v) {
  std::set<JetCoord> coords = coords_of(e);
  for (JetCoord c : coords)
    if (c.is_u() && c.order() >= kMaxJetOrder)
      throw OrderError("total derivative of an expression containing order-" +
                       std::to_string(kMaxJetOrder) + " coordinate " + c.name());
  ExprList terms;
  terms.push_back(diff_raw(e, JetCoord::base(v)));
  for (JetCoord c : coords) {
    if (!c.is_u()) continue;
    terms.push_back(diff_raw(e, c) * Expr::coordinate(c.extended(v)));
  }
  return normalize(Expr::sum(std::move(terms)));
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

namespace {

Expr subst_raw(const Expr& e, const std::map<JetCoord, Expr>* coord_repl,
               const std::map<std::string, Expr>* param_repl) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Constant:
      return e;
    case Kind::Coordinate:
      if (coord_repl) {
        auto it = coord_repl->find(n.coord);
        if (it != coord_repl->end()) return it->second;
      }
      return e;
    case Kind::Parameter:
      if (param_repl) {
        auto it = param_repl->find(n.name);
        if (it != param_repl->end()) return it->second;
      }
      return e;
    case Kind::Fun:
      return Expr::fun(n.fun, subst_raw(n.kids[0], coord_repl, param_repl));
    case Kind::Pow:
      return Expr::pow(subst_raw(n.kids[0], coord_repl, param_repl), n.exponent);
    case Kind::Quot:
      return Expr::quot(subst_raw(n.kids[0], coord_repl, param_repl),
                        subst_raw(n.kids[1], coord_repl, param_repl));
    default: {
      ExprList kids;
      kids.reserve(n.kids.size());
      for (const Expr& k : n.kids) kids.push_back(subst_raw(k, coord_repl, param_repl));
      return n.kind == Kind::Sum ? Expr::sum(std::move(kids)) : Expr::prod(std::move(kids));
    }
  }
}

}  // namespace

Expr substitute(const Expr& e, const std::map<JetCoord, Expr>& repl) {
  return normalize(subst_raw(e, &repl, nullptr));
}

Expr substitute_params(const Expr& e, const std::map<std::string, Expr>& repl) {
  return normalize(subst_raw(e, nullptr, &repl));
}

// ---------------------------------------------------------------------------
// Evaluation
// ---------------------------------------------------------------------------

double eval(const Expr& e, const JetPoint& p, const ParamTable& params) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case Kind::Constant:
      return n.value;
    case Kind::Coordinate:
      return p.get(n.coord);
    case Kind::Parameter: {
      auto it = params.find(n.name);
      if (it == params.end()) throw EvalError("unbound parameter '" + n.name + "'");
      return it->second;
    }
    case Kind::Fun: {
      double a = eval(n.kids[0], p, params);
      if (n.fun == Fun1::Ln && a <= 0.0)
        throw DomainError("ln of non-positive value " + double_str(a));
      return fold_fun(n.fun, a);
    }
    case Kind::Pow: {
      double b = eval(n.kids[0], p, params);
      const Rat& r = n.exponent;
      if (b == 0.0 && r.num < 0) throw DomainError("division by zero (zero base, negative power)");
      if (!r.is_integer() && b < 0.0)
        throw DomainError("fractional power of negative value " + double_str(b));
      return std::pow(b, r.to_double());
    }
    case Kind::Quot: {
      double num = eval(n.kids[0], p, params);
      double den = eval(n.kids[1], p, params);
      if (den == 0.0) throw DomainError("division by zero");
      return num / den;
    }
    case Kind::Prod: {
      double out = 1.0;
      for (const Expr& k : n.kids) out *= eval(k, p, params);
      return out;
    }
    case Kind::Sum: {
      double out = 0.0;
      for (const Expr& k : n.kids) out += eval(k, p, params);
      return out;
    }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Inspection
// ---------------------------------------------------------------------------

void collect_coords(const Expr& e, std::set<JetCoord>& out) {
  const ExprNode& n = e.node();
  if (n.kind == Kind::Coordinate) {
    out.insert(n.coord);
    return;
  }
  for (const Expr& k : n.kids) collect_coords(k, out);
}

std::set<JetCoord> coords_of(const Expr& e) {
  std::set<JetCoord> out;
  collect_coords(e, out);
  return out;
}

std::set<std::string> params_of(const Expr& e) {
  std::set<std::string> out;
  std::vector<const ExprNode*> stack{&e.node()};
  while (!stack.empty()) {
    const ExprNode* n = stack.back();
    stack.pop_back();
    if (n->kind == Kind::Parameter) out.insert(n->name);
    for (const Expr& k : n->kids) stack.push_back(&k.node());
  }
  return out;
}

bool depends_on(const Expr& e, JetCoord c) { return coords_of(e).count(c) > 0; }

}  // namespace zk
