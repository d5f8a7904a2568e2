#include "zk/parse.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <optional>

namespace zk {
namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Lexer {
  std::string_view text;
  std::size_t pos = 0;

  Tok tok = Tok::End;
  std::size_t tok_pos = 0;
  double number = 0.0;
  std::string ident;

  explicit Lexer(std::string_view s) : text(s) { advance(); }

  void advance() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    tok_pos = pos;
    if (pos >= text.size()) {
      tok = Tok::End;
      return;
    }
    char c = text[pos];
    switch (c) {
      case '+': tok = Tok::Plus; ++pos; return;
      case '-': tok = Tok::Minus; ++pos; return;
      case '*': tok = Tok::Star; ++pos; return;
      case '/': tok = Tok::Slash; ++pos; return;
      case '^': tok = Tok::Caret; ++pos; return;
      case '(': tok = Tok::LParen; ++pos; return;
      case ')': tok = Tok::RParen; ++pos; return;
      default: break;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) ||
        (c == '.' && pos + 1 < text.size() &&
         std::isdigit(static_cast<unsigned char>(text[pos + 1])))) {
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      if (end < text.size() && text[end] == '.') {
        ++end;
        while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
      }
      if (end < text.size() && (text[end] == 'e' || text[end] == 'E')) {
        std::size_t exp = end + 1;
        if (exp < text.size() && (text[exp] == '+' || text[exp] == '-')) ++exp;
        if (exp < text.size() && std::isdigit(static_cast<unsigned char>(text[exp]))) {
          end = exp;
          while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end]))) ++end;
        }
      }
      double v = 0.0;
      auto res = std::from_chars(text.data() + pos, text.data() + end, v);
      if (res.ec != std::errc{}) throw ParseError("malformed number", pos);
      number = v;
      pos = end;
      tok = Tok::Number;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos;
      while (end < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_'))
        ++end;
      ident.assign(text.substr(pos, end - pos));
      pos = end;
      tok = Tok::Ident;
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
};

std::optional<Fun1> function_by_name(const std::string& name) {
  if (name == "exp") return Fun1::Exp;
  if (name == "ln") return Fun1::Ln;
  if (name == "sin") return Fun1::Sin;
  if (name == "cos") return Fun1::Cos;
  if (name == "tan") return Fun1::Tan;
  if (name == "tanh") return Fun1::Tanh;
  if (name == "sech") return Fun1::Sech;
  if (name == "arctan" || name == "atan") return Fun1::Arctan;
  return std::nullopt;
}

struct Parser {
  Lexer lex;

  explicit Parser(std::string_view s) : lex(s) {}

  [[noreturn]] void fail(const std::string& what) { throw ParseError(what, lex.tok_pos); }

  void expect(Tok t, const char* what) {
    if (lex.tok != t) fail(std::string("expected ") + what);
    lex.advance();
  }

  Expr parse_expr() {
    Expr e = parse_term();
    while (lex.tok == Tok::Plus || lex.tok == Tok::Minus) {
      bool minus = lex.tok == Tok::Minus;
      lex.advance();
      Expr rhs = parse_term();
      e = minus ? e - rhs : e + rhs;
    }
    return e;
  }

  Expr parse_term() {
    Expr e = parse_unary();
    while (lex.tok == Tok::Star || lex.tok == Tok::Slash) {
      bool div = lex.tok == Tok::Slash;
      lex.advance();
      Expr rhs = parse_unary();
      e = div ? Expr::quot(e, rhs) : e * rhs;
    }
    return e;
  }

  Expr parse_unary() {
    int sign = 1;
    while (lex.tok == Tok::Plus || lex.tok == Tok::Minus) {
      if (lex.tok == Tok::Minus) sign = -sign;
      lex.advance();
    }
    Expr e = parse_power();
    return sign < 0 ? -e : e;
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lex.tok != Tok::Caret) return base;
    lex.advance();
    Rat r = parse_exponent();
    return Expr::pow(base, r);
  }

  // Exponents are rational: INT, -INT, or (SIGN? INT (/ INT)?).
  Rat parse_exponent() {
    bool parens = false;
    if (lex.tok == Tok::LParen) {
      parens = true;
      lex.advance();
    }
    std::int64_t sign = 1;
    while (lex.tok == Tok::Plus || lex.tok == Tok::Minus) {
      if (lex.tok == Tok::Minus) sign = -sign;
      lex.advance();
    }
    std::int64_t num = parse_int("exponent");
    std::int64_t den = 1;
    if (parens && lex.tok == Tok::Slash) {
      lex.advance();
      den = parse_int("exponent denominator");
      if (den == 0) fail("zero exponent denominator");
    }
    if (parens) expect(Tok::RParen, "')'");
    return Rat(sign * num, den);
  }

  std::int64_t parse_int(const char* what) {
    if (lex.tok != Tok::Number) fail(std::string("expected integer ") + what);
    double v = lex.number;
    auto i = static_cast<std::int64_t>(v);
    if (static_cast<double>(i) != v) fail(std::string("expected integer ") + what);
    lex.advance();
    return i;
  }

  Expr parse_atom() {
    switch (lex.tok) {
      case Tok::Number: {
        double v = lex.number;
        lex.advance();
        return Expr::constant(v);
      }
      case Tok::LParen: {
        lex.advance();
        Expr e = parse_expr();
        expect(Tok::RParen, "')'");
        return e;
      }
      case Tok::Ident: {
        std::string name = lex.ident;
        std::size_t name_pos = lex.tok_pos;
        lex.advance();
        if (lex.tok == Tok::LParen) {
          if (name == "sqrt") {
            lex.advance();
            Expr arg = parse_expr();
            expect(Tok::RParen, "')'");
            return Expr::pow(arg, Rat(1, 2));
          }
          auto f = function_by_name(name);
          if (!f) throw ParseError("unknown function '" + name + "'", name_pos);
          lex.advance();
          Expr arg = parse_expr();
          expect(Tok::RParen, "')'");
          return Expr::fun(*f, arg);
        }
        if (auto c = JetCoord::from_name(name)) return Expr::coordinate(*c);
        return Expr::parameter(name);
      }
      default:
        fail("expected expression");
    }
  }
};

}  // namespace

Expr parse(std::string_view text) {
  Parser p(text);
  Expr e = p.parse_expr();
  if (p.lex.tok != Tok::End) p.fail("trailing input");
  return normalize(e);
}

}  // namespace zk
