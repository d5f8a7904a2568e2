#include "zk/jet.hpp"

#include <cmath>
#include <map>

namespace zk {
namespace {

struct CoordTable {
  std::vector<JetCoord::Counts> counts;            // index = id - 4
  std::map<JetCoord::Counts, std::uint8_t> by_counts;
  std::vector<std::string> names;                  // index = id

  CoordTable() {
    names = {"x", "y", "z", "t"};
    // Enumerate u-derivative multi-indices by total order, then
    // lexicographically on (kx,ky,kz,kt).  The order is fixed; ids are stable.
    for (int total = 0; total <= kMaxJetOrder; ++total) {
      for (int kx = total; kx >= 0; --kx)
        for (int ky = total - kx; ky >= 0; --ky)
          for (int kz = total - kx - ky; kz >= 0; --kz) {
            int kt = total - kx - ky - kz;
            JetCoord::Counts c = {static_cast<std::uint8_t>(kx), static_cast<std::uint8_t>(ky),
                                  static_cast<std::uint8_t>(kz), static_cast<std::uint8_t>(kt)};
            by_counts[c] = static_cast<std::uint8_t>(4 + counts.size());
            counts.push_back(c);
            std::string n = "u";
            std::string suffix;
            for (int v = 0; v < 4; ++v)
              for (int k = 0; k < c[v]; ++k) suffix += base_var_letter(static_cast<BaseVar>(v));
            if (!suffix.empty()) n += "_" + suffix;
            names.push_back(n);
          }
    }
  }
};

const CoordTable& table() {
  static const CoordTable t;
  return t;
}

}  // namespace

JetCoord JetCoord::base(BaseVar v) { return JetCoord(static_cast<std::uint8_t>(v)); }

JetCoord JetCoord::u_deriv(const Counts& counts) {
  int total = counts[0] + counts[1] + counts[2] + counts[3];
  if (total > kMaxJetOrder)
    throw OrderError("derivative order " + std::to_string(total) + " exceeds " +
                     std::to_string(kMaxJetOrder));
  return JetCoord(table().by_counts.at(counts));
}

std::optional<JetCoord> JetCoord::from_name(std::string_view name) {
  if (name == "x") return x();
  if (name == "y") return y();
  if (name == "z") return z();
  if (name == "t") return t();
  if (name == "u") return u();
  if (name.size() > 2 && name.substr(0, 2) == "u_") {
    Counts c{0, 0, 0, 0};
    int total = 0;
    for (char ch : name.substr(2)) {
      int v;
      switch (ch) {
        case 'x': v = 0; break;
        case 'y': v = 1; break;
        case 'z': v = 2; break;
        case 't': v = 3; break;
        default:
          return std::nullopt;  // u_foo is a parameter name, not a coordinate
      }
      ++c[v];
      ++total;
    }
    if (total > kMaxJetOrder)
      throw OrderError("derivative order of '" + std::string(name) + "' exceeds " +
                       std::to_string(kMaxJetOrder));
    return u_deriv(c);
  }
  return std::nullopt;
}

const JetCoord::Counts& JetCoord::multi_index() const {
  return table().counts.at(id_ - 4);
}

int JetCoord::order() const {
  if (is_base()) return -1;
  const Counts& c = multi_index();
  return c[0] + c[1] + c[2] + c[3];
}

JetCoord JetCoord::extended(BaseVar v) const {
  Counts c = multi_index();
  ++c[static_cast<int>(v)];
  return u_deriv(c);
}

std::string JetCoord::name() const { return table().names.at(id_); }

std::size_t JetCoord::count() { return table().names.size(); }

const std::vector<JetCoord>& JetCoord::all() {
  static const std::vector<JetCoord> v = [] {
    std::vector<JetCoord> out;
    for (std::size_t i = 0; i < count(); ++i) out.push_back(JetCoord(static_cast<std::uint8_t>(i)));
    return out;
  }();
  return v;
}

JetPoint::JetPoint() = default;

void JetPoint::set(JetCoord c, double value) {
  if (std::isnan(value)) throw DomainError("NaN assigned to jet coordinate " + c.name());
  v_[c.id()] = value;
  set_[c.id()] = true;
}

double JetPoint::get(JetCoord c) const {
  if (!set_[c.id()]) throw EvalError("unbound jet coordinate '" + c.name() + "'");
  return v_[c.id()];
}

void JetPoint::set_base(double x, double y, double z, double t) {
  set(JetCoord::x(), x);
  set(JetCoord::y(), y);
  set(JetCoord::z(), z);
  set(JetCoord::t(), t);
}

}  // namespace zk
