#include "zk/grid.hpp"

#include <cmath>
#include <cstdio>

namespace zk {

namespace {
ExecMode g_mode = ExecMode::Parallel;
}

ExecMode default_exec_mode() { return g_mode; }
void set_default_exec_mode(ExecMode m) { g_mode = m; }

void parallel_fill(std::size_t n, const std::function<double(std::size_t)>& fn,
                   std::vector<double>& out, ExecMode mode) {
  if (mode == ExecMode::Serial) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(n); ++i)
    out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
}

std::pair<std::size_t, double> max_abs(const std::vector<double>& values) {
  std::size_t best = static_cast<std::size_t>(-1);
  double best_val = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    double v = std::fabs(values[i]);
    if (best == static_cast<std::size_t>(-1) || v > best_val) {
      best = i;
      best_val = v;
    }
  }
  return {best, best_val};
}

std::string GridSpec::describe() const {
  const char* names = "xyzt";
  std::string out;
  char buf[96];
  for (int d = 0; d < 4; ++d) {
    const AxisSpec& a = axes[d];
    if (a.fixed || a.n <= 1)
      std::snprintf(buf, sizeof buf, "%c=%g", names[d], a.lo);
    else
      std::snprintf(buf, sizeof buf, "%c in [%g,%g] n=%d", names[d], a.lo, a.hi, a.n);
    if (!out.empty()) out += ", ";
    out += buf;
  }
  return out;
}

}  // namespace zk
