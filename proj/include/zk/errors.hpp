#ifndef ZK_ERRORS_HPP
#define ZK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zk {

// Malformed expression text. `pos` is a 0-based character offset.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t pos)
      : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
        pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

// Unbound coordinate or parameter during evaluation.
class EvalError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Real-domain violation: ln of non-positive, fractional power of a negative
// base, division by zero.
class DomainError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Jet order would exceed the supported maximum (3).
class OrderError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A commutator fell outside the span of the encoded basis.
class BasisError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace zk

#endif
