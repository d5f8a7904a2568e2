#ifndef ZK_GRID_HPP
#define ZK_GRID_HPP

#include <array>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace zk {

// Execution mode for the data-parallel kernels.  The serial path is the
// reference implementation; the parallel path must produce bit-identical
// buffers (each iteration is independent and writes only its own slot).
enum class ExecMode { Serial, Parallel };

ExecMode default_exec_mode();
void set_default_exec_mode(ExecMode m);

// Fills out[i] = fn(i) for i in [0, n).  `out` must have size n.
void parallel_fill(std::size_t n, const std::function<double(std::size_t)>& fn,
                   std::vector<double>& out, ExecMode mode = default_exec_mode());

// Deterministic max of |values| with lexicographic tie-break on index.
// Empty input yields {SIZE_MAX, 0}.
std::pair<std::size_t, double> max_abs(const std::vector<double>& values);

// Rectangular sampling grid over the base point (x, y, z, t).
struct AxisSpec {
  double lo = 0.0;
  double hi = 0.0;
  int n = 1;          // number of samples; 1 means the axis is fixed at lo
  bool fixed = false;

  static AxisSpec fixed_at(double v) { return {v, v, 1, true}; }
  static AxisSpec linspace(double lo, double hi, int n) { return {lo, hi, n, false}; }
  double value(int i) const {
    if (fixed || n <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
};

struct GridSpec {
  std::array<AxisSpec, 4> axes;  // x, y, z, t

  std::size_t size() const {
    std::size_t s = 1;
    for (const auto& a : axes) s *= static_cast<std::size_t>(a.n);
    return s;
  }
  // Lexicographic flattening: x slowest, t fastest.
  std::array<double, 4> point(std::size_t flat) const {
    std::array<int, 4> idx{};
    for (int d = 3; d >= 0; --d) {
      idx[d] = static_cast<int>(flat % static_cast<std::size_t>(axes[d].n));
      flat /= static_cast<std::size_t>(axes[d].n);
    }
    return {axes[0].value(idx[0]), axes[1].value(idx[1]), axes[2].value(idx[2]),
            axes[3].value(idx[3])};
  }
  std::string describe() const;
};

}  // namespace zk

#endif
