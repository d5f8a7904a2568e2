#ifndef ZK_RESIDUAL_REPORT_HPP
#define ZK_RESIDUAL_REPORT_HPP

#include <array>
#include <cstddef>
#include <string>

namespace zk {

struct ResidualReport {
  std::string name;
  std::string grid_desc;
  double max_abs = 0.0;
  std::array<double, 4> argmax{};  // (x, y, z, t) of the maximum
  std::size_t n_points = 0;
  double tol = 0.0;
  bool pass = false;
};

}  // namespace zk

#endif
