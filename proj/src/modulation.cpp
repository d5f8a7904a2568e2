#include "zk/modulation.hpp"

#include <cmath>
#include <stdexcept>

#include "zk/grid.hpp"

namespace zk {

double ModulationParams::p() const { return std::sqrt(b * b + c * c + d * d); }

std::complex<double> dispersion(const ModulationParams& m) {
  double p2 = m.b * m.b + m.c * m.c + m.d * m.d;
  double disc = m.A * m.A - p2;
  if (disc >= 0.0) return {std::sqrt(disc), 0.0};
  return {0.0, std::sqrt(-disc)};
}

double gain(const ModulationParams& m) { return 2.0 * dispersion(m).imag(); }

std::vector<SpectrumRow> sweep(const std::vector<double>& p_values, double a_lo, double a_hi,
                               int n) {
  if (p_values.empty()) throw std::invalid_argument("empty p list");
  if (n < 2) throw std::invalid_argument("sweep needs at least two samples");

  std::vector<SpectrumRow> rows(p_values.size() * static_cast<std::size_t>(n));
  std::vector<double> dummy(rows.size());
  parallel_fill(rows.size(), [&](std::size_t i) {
    std::size_t pi = i / static_cast<std::size_t>(n);
    int ai = static_cast<int>(i % static_cast<std::size_t>(n));
    double A = a_lo + (a_hi - a_lo) * static_cast<double>(ai) / static_cast<double>(n - 1);
    ModulationParams m;
    m.A = A;
    m.d = p_values[pi];  // p enters only through the norm; put it on one axis
    std::complex<double> w = dispersion(m);
    rows[i] = {p_values[pi], A, w.real(), w.imag(), -w.imag(), 2.0 * w.imag(), w.imag() == 0.0};
    return 0.0;
  }, dummy);
  return rows;
}

}  // namespace zk
