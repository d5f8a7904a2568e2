#ifndef ZK_MODULATION_HPP
#define ZK_MODULATION_HPP

#include <complex>
#include <vector>

namespace zk {

// Perturbation parameters of the plane-wave stability analysis: sensitivity
// A >= 0 and wave numbers (b, c, d) entering only through p = |(b,c,d)|.
struct ModulationParams {
  double A = 0.0;
  double b = 0.0;
  double c = 0.0;
  double d = 0.0;

  double p() const;
};

// w = sqrt(A^2 - p^2) on the principal branch: real for A >= p, otherwise
// i*sqrt(p^2 - A^2) with Im(w) >= 0.
std::complex<double> dispersion(const ModulationParams& m);

// Gain G = 2 Im(w); zero in the stable region A >= p.
double gain(const ModulationParams& m);

struct SpectrumRow {
  double p;
  double A;
  double w_re;
  double w_im;
  double w_im_neg;  // the negative branch, for the unstable-region plot
  double gain;
  bool stable;
};

// Uniform A-grid per p value, rows in (p, A) lexicographic order.
std::vector<SpectrumRow> sweep(const std::vector<double>& p_values, double a_lo, double a_hi,
                               int n);

}  // namespace zk

#endif
