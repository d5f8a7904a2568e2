#ifndef ZK_PARSE_HPP
#define ZK_PARSE_HPP

#include <string_view>

#include "zk/expr.hpp"

namespace zk {

// Parses the expression grammar documented in docs/grammar.md and returns the
// canonicalized tree.  parse(to_string(parse(s))) is structurally equal to
// parse(s).  Throws ParseError (with position), OrderError for derivative
// names above order 3.
Expr parse(std::string_view text);

}  // namespace zk

#endif
