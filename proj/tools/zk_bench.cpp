// Benchmark comparing the serial reference kernels against the OpenMP path.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "zk/equation.hpp"
#include "zk/grid.hpp"
#include "zk/modulation.hpp"
#include "zk/prolongation.hpp"
#include "zk/rng.hpp"
#include "zk/solutions.hpp"

using Clock = std::chrono::steady_clock;

namespace {

double run_ms(const std::function<void()>& fn) {
  auto t0 = Clock::now();
  fn();
  auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

struct BenchRow {
  const char* name;
  std::size_t n;
  double serial_ms;
  double parallel_ms;
  bool identical;
};

void print_row(const BenchRow& r) {
  std::printf("%-28s n=%-9zu serial %9.2f ms   parallel %9.2f ms   speedup %5.2fx   %s\n",
              r.name, r.n, r.serial_ms, r.parallel_ms, r.serial_ms / r.parallel_ms,
              r.identical ? "bit-identical" : "MISMATCH");
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (no OpenMP)\n");
#endif

  // 1. residual of the exact kink over a dense (x, t) grid
  {
    const zk::SolutionRecord& u1 = zk::lookup_solution("u1");
    zk::GridSpec grid;
    grid.axes = {zk::AxisSpec::linspace(-2, 2, 512), zk::AxisSpec::fixed_at(0.5),
                 zk::AxisSpec::fixed_at(0.5), zk::AxisSpec::linspace(-2, 2, 512)};
    const zk::Expr& delta = zk::zk_residual();
    const zk::ParamTable& params = u1.defaults();
    auto kernel = [&](std::size_t i) {
      auto pt = grid.point(i);
      return zk::eval(delta, u1.jet(pt, params), params);
    };
    std::size_t n = grid.size();
    std::vector<double> a(n), b(n);
    double ts = run_ms([&] { zk::parallel_fill(n, kernel, a, zk::ExecMode::Serial); });
    double tp = run_ms([&] { zk::parallel_fill(n, kernel, b, zk::ExecMode::Parallel); });
    print_row({"kink residual grid", n, ts, tp, a == b});
  }

  // 2. on-manifold invariance sampling for the dilation generator
  {
    const zk::VectorField& d1 = zk::symmetry_basis()[0];
    zk::Expr action = zk::prolonged_action(zk::prolong2(d1), zk::zk_residual());
    zk::ParamTable params{{"a", 1.0}};
    auto kernel = [&](std::size_t i) {
      zk::Rng rng(42, i);
      zk::JetPoint p;
      for (zk::JetCoord c : zk::JetCoord::all()) p.set(c, rng.uniform(-2.0, 2.0));
      p.set(zk::JetCoord::u_deriv({0, 0, 0, 1}), zk::manifold_ut(p, 1.0));
      return zk::eval(action, p, params);
    };
    std::size_t n = 200000;
    std::vector<double> a(n), b(n);
    double ts = run_ms([&] { zk::parallel_fill(n, kernel, a, zk::ExecMode::Serial); });
    double tp = run_ms([&] { zk::parallel_fill(n, kernel, b, zk::ExecMode::Parallel); });
    print_row({"invariance sampling", n, ts, tp, a == b});
  }

  // 3. gain-spectrum sweep
  {
    auto kernel = [&](std::size_t i) {
      double A = static_cast<double>(i % 100000) * (4.0 / 99999.0);
      zk::ModulationParams m{A, 0, 0, 1.0 + static_cast<double>(i / 100000)};
      return zk::gain(m);
    };
    std::size_t n = 500000;
    std::vector<double> a(n), b(n);
    double ts = run_ms([&] { zk::parallel_fill(n, kernel, a, zk::ExecMode::Serial); });
    double tp = run_ms([&] { zk::parallel_fill(n, kernel, b, zk::ExecMode::Parallel); });
    print_row({"gain spectrum sweep", n, ts, tp, a == b});
  }

  return 0;
}
