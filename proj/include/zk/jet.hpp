#ifndef ZK_JET_HPP
#define ZK_JET_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zk/errors.hpp"

namespace zk {

inline constexpr int kMaxJetOrder = 3;

enum class BaseVar : std::uint8_t { X = 0, Y = 1, Z = 2, T = 3 };

inline char base_var_letter(BaseVar v) { return "xyzt"[static_cast<int>(v)]; }

// One jet-space coordinate: a base variable x,y,z,t or a derivative of u
// identified by a multi-index over (x,y,z,t) with total order <= 3.  u_xy and
// u_yx are the same coordinate; the multi-index is stored as per-variable
// counts, so the representation is canonical by construction.
class JetCoord {
 public:
  using Counts = std::array<std::uint8_t, 4>;

  static JetCoord base(BaseVar v);
  static JetCoord x() { return base(BaseVar::X); }
  static JetCoord y() { return base(BaseVar::Y); }
  static JetCoord z() { return base(BaseVar::Z); }
  static JetCoord t() { return base(BaseVar::T); }
  static JetCoord u() { return u_deriv({0, 0, 0, 0}); }
  static JetCoord u_deriv(const Counts& counts);  // throws OrderError above order 3

  // Recognizes "x","y","z","t","u","u_x","u_xy",...  Returns nullopt for
  // names that are not jet coordinates (they are parameters).  Throws
  // OrderError for u_-names of order > 3 and ParseError for bad suffixes.
  static std::optional<JetCoord> from_name(std::string_view name);

  bool is_base() const { return id_ < 4; }
  bool is_u() const { return id_ >= 4; }
  BaseVar base_var() const { return static_cast<BaseVar>(id_); }
  const Counts& multi_index() const;
  int order() const;  // total derivative order; base variables have order -1

  // Multi-index extended by one differentiation; throws OrderError past 3.
  JetCoord extended(BaseVar v) const;

  std::string name() const;
  std::uint8_t id() const { return id_; }
  static std::size_t count();                  // total number of coordinates
  static const std::vector<JetCoord>& all();   // fixed enumeration order

  friend bool operator==(JetCoord a, JetCoord b) { return a.id_ == b.id_; }
  friend bool operator!=(JetCoord a, JetCoord b) { return a.id_ != b.id_; }
  friend bool operator<(JetCoord a, JetCoord b) { return a.id_ < b.id_; }

 private:
  explicit JetCoord(std::uint8_t id) : id_(id) {}
  std::uint8_t id_;
};

// A numeric assignment to jet coordinates.  Entries must be finite.
class JetPoint {
 public:
  JetPoint();

  void set(JetCoord c, double value);  // rejects NaN
  bool has(JetCoord c) const { return set_[c.id()]; }
  double get(JetCoord c) const;        // throws EvalError when unbound

  void set_base(double x, double y, double z, double t);
  double x() const { return get(JetCoord::x()); }
  double y() const { return get(JetCoord::y()); }
  double z() const { return get(JetCoord::z()); }
  double t() const { return get(JetCoord::t()); }

 private:
  std::array<double, 64> v_{};
  std::array<bool, 64> set_{};
};

}  // namespace zk

#endif
