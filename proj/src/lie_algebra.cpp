#include "zk/lie_algebra.hpp"

#include <cmath>
#include <cstdio>
#include <vector>

#include "zk/rng.hpp"

namespace zk {
namespace {

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Solve the 7x7 normal equations A^T A c = A^T b by Gaussian elimination.
std::array<double, 7> least_squares7(const std::vector<std::array<double, 7>>& rows,
                                     const std::vector<double>& rhs) {
  double ata[7][8] = {};
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < 7; ++i) {
      for (int j = 0; j < 7; ++j) ata[i][j] += rows[r][i] * rows[r][j];
      ata[i][7] += rows[r][i] * rhs[r];
    }
  }
  for (int col = 0; col < 7; ++col) {
    int piv = col;
    for (int r = col + 1; r < 7; ++r)
      if (std::fabs(ata[r][col]) > std::fabs(ata[piv][col])) piv = r;
    for (int j = 0; j < 8; ++j) std::swap(ata[col][j], ata[piv][j]);
    if (std::fabs(ata[col][col]) < 1e-12) continue;  // free coefficient, stays 0
    for (int r = 0; r < 7; ++r) {
      if (r == col) continue;
      double f = ata[r][col] / ata[col][col];
      for (int j = 0; j < 8; ++j) ata[r][j] -= f * ata[col][j];
    }
  }
  std::array<double, 7> c{};
  for (int i = 0; i < 7; ++i)
    c[i] = std::fabs(ata[i][i]) < 1e-12 ? 0.0 : ata[i][7] / ata[i][i];
  return c;
}

Rat rationalize(double v) {
  for (std::int64_t den : {1, 2, 3, 4, 6, 8, 12, 16}) {
    double scaled = v * static_cast<double>(den);
    double rounded = std::round(scaled);
    if (std::fabs(scaled - rounded) < 1e-7 && std::fabs(rounded) < 1e6)
      return Rat(static_cast<std::int64_t>(rounded), den);
  }
  throw BasisError("coefficient " + std::to_string(v) + " is not a small rational");
}

const Expr* components(const VectorField& v, int comp) {
  switch (comp) {
    case 0: return &v.xi_x;
    case 1: return &v.xi_y;
    case 2: return &v.xi_z;
    case 3: return &v.xi_t;
    default: return &v.xi_u;
  }
}

// Expand a commutator in the basis: numeric least-squares fit over sample
// points, rationalized, then verified exactly by symbolic cancellation.
std::array<Rat, 7> expand_in_basis(const VectorField& f) {
  const auto& basis = symmetry_basis();
  Rng rng(20240901);
  std::vector<std::array<double, 7>> rows;
  std::vector<double> rhs;
  for (int pt = 0; pt < 8; ++pt) {
    JetPoint p;
    p.set_base(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2));
    p.set(JetCoord::u(), rng.uniform(-2, 2));
    for (double a : {1.0, 2.5}) {
      ParamTable params{{"a", a}};
      for (int comp = 0; comp < 5; ++comp) {
        std::array<double, 7> row{};
        for (int k = 0; k < 7; ++k) row[k] = eval(*components(basis[k], comp), p, params);
        rows.push_back(row);
        rhs.push_back(eval(*components(f, comp), p, params));
      }
    }
  }
  auto fit = least_squares7(rows, rhs);
  std::array<Rat, 7> coeffs;
  for (int k = 0; k < 7; ++k) coeffs[k] = rationalize(fit[k]);

  // Exact verification: the residual field must normalize to zero.
  for (int comp = 0; comp < 5; ++comp) {
    ExprList terms{*components(f, comp)};
    for (int k = 0; k < 7; ++k)
      terms.push_back(Expr::constant(-coeffs[k].to_double()) * *components(basis[k], comp));
    if (!normalize(Expr::sum(terms)).is_constant(0.0))
      throw BasisError("commutator " + f.name + " is not in the span of the basis");
  }
  return coeffs;
}

}  // namespace

const StructureConstants& structure_constants() {
  static const StructureConstants sc = [] {
    StructureConstants out{};
    const auto& basis = symmetry_basis();
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j) {
        if (i == j) continue;
        auto coeffs = expand_in_basis(commutator(basis[i], basis[j]));
        for (int k = 0; k < 7; ++k) out.c[i][j][k] = coeffs[k].to_double();
      }
    return out;
  }();
  return sc;
}

const std::array<std::array<BracketCoeffs, 7>, 7>& commutator_table_golden() {
  static const auto table = [] {
    std::array<std::array<BracketCoeffs, 7>, 7> t{};  // zero-initialized coefficients
    auto set = [&](int i, int j, int k, Rat v) {
      t[i - 1][j - 1][k - 1] = v;
      t[j - 1][i - 1][k - 1] = Rat(-v.num, v.den);
    };
    set(1, 2, 2, Rat(-1));
    set(1, 4, 4, Rat(-1, 2));
    set(1, 5, 5, Rat(1, 2));
    set(1, 6, 6, Rat(-1, 2));
    set(1, 7, 7, Rat(-1, 2));
    set(2, 5, 6, Rat(1));
    set(3, 4, 7, Rat(1));
    set(3, 7, 4, Rat(-1));
    return t;
  }();
  return table;
}

std::string bracket_string(const BracketCoeffs& coeffs) {
  std::string out;
  for (int k = 0; k < 7; ++k) {
    const Rat& c = coeffs[k];
    if (c.is_zero()) continue;
    std::string term = "D" + std::to_string(k + 1);
    if (c.num < 0) term = "-" + term;
    std::int64_t n = std::llabs(c.num);
    if (n != 1) term += "*" + std::to_string(n);
    if (c.den != 1) term += "/" + std::to_string(c.den);
    if (!out.empty()) term = (c.num < 0 ? " - " + term.substr(1) : " + " + term);
    out += term;
  }
  return out.empty() ? "0" : out;
}

Mat7 ad_matrix(const AlgebraElement& l) {
  const auto& sc = structure_constants();
  Mat7 m{};
  for (int j = 0; j < 7; ++j)
    for (int k = 0; k < 7; ++k) {
      double v = 0.0;
      for (int i = 0; i < 7; ++i) v += l[i] * sc.c[i][j][k];
      m[k][j] = v;
    }
  return m;
}

double killing_form(const AlgebraElement& l) {
  Mat7 m = ad_matrix(l);
  double tr = 0.0;
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) tr += m[i][j] * m[j][i];
  return tr;
}

Mat7 printed_killing_ad_matrix(const AlgebraElement& l) {
  const double l2 = l[1], l3 = l[2], l4 = l[3], l5 = l[4], l6 = l[5], l7 = l[6];
  const double l1 = l[0];
  return Mat7{{
      {0, 0, 0, 0, 0, 0, 0},
      {-l2, l1, 0, 0, 0, 0, 0},
      {0, 0, 0, 0, 0, 0, 0},
      {-l4 / 2, 0, -l7, l1 / 2, 0, 0, l3},
      {l5 / 2, 0, 0, 0, -l1 / 2, 0, 0},
      {-l6 / 2, l5, 0, 0, -l2, l1 / 2, 0},
      {-l7 / 2, 0, l4, -l3, 0, 0, l1 / 2},
  }};
}

Mat7 adjoint_matrix(int i, double eps) {
  Mat7 m{};
  for (int k = 0; k < 7; ++k) m[k][k] = 1.0;
  double e = eps;
  switch (i) {
    case 1:
      m[1][1] = std::exp(e);
      m[3][3] = std::exp(e / 2);
      m[4][4] = std::exp(-e / 2);
      m[5][5] = std::exp(e / 2);
      m[6][6] = std::exp(e / 2);
      break;
    case 2:
      m[0][1] = -e;
      m[4][5] = -e;
      break;
    case 3:
      m[3][3] = std::cos(e);
      m[3][6] = -std::sin(e);
      m[6][3] = std::sin(e);
      m[6][6] = std::cos(e);
      break;
    case 4:
      m[0][3] = -e / 2;
      m[2][6] = e;
      break;
    case 5:
      m[0][4] = e / 2;
      m[1][5] = e;
      break;
    case 6:
      m[0][5] = -e / 2;
      break;
    case 7:
      m[0][6] = -e / 2;
      m[2][3] = -e;
      break;
    default:
      throw std::invalid_argument("basis index out of range");
  }
  return m;
}

namespace {
Mat7 matmul(const Mat7& a, const Mat7& b) {
  Mat7 out{};
  for (int i = 0; i < 7; ++i)
    for (int k = 0; k < 7; ++k) {
      double v = a[i][k];
      if (v == 0.0) continue;
      for (int j = 0; j < 7; ++j) out[i][j] += v * b[k][j];
    }
  return out;
}
}  // namespace

Mat7 global_adjoint(const std::array<double, 7>& eps) {
  Mat7 m = adjoint_matrix(1, eps[0]);
  for (int i = 2; i <= 7; ++i) m = matmul(adjoint_matrix(i, eps[i - 1]), m);
  return m;
}

AlgebraElement mat_apply_row(const AlgebraElement& l, const Mat7& m) {
  AlgebraElement out{};
  for (int j = 0; j < 7; ++j) {
    double v = 0.0;
    for (int i = 0; i < 7; ++i) v += l[i] * m[i][j];
    out[j] = v;
  }
  return out;
}

AlgebraElement adjoint_transform(const AlgebraElement& l, const std::array<double, 7>& eps) {
  const double l1 = l[0], l2 = l[1], l3 = l[2], l4 = l[3], l5 = l[4], l6 = l[5], l7 = l[6];
  const double e1 = eps[0], e2 = eps[1], e3 = eps[2], e4 = eps[3], e5 = eps[4], e6 = eps[5],
               e7 = eps[6];
  const double c3 = std::cos(e3), s3 = std::sin(e3);
  AlgebraElement out{};
  out[0] = l1;
  out[1] = (-l1 * e2 + l2) * std::exp(e1);
  out[2] = l3;
  out[3] = (-(e4 * c3 + e7 * s3) * l1 / 2 + (-e7 * c3 + e4 * s3) * l3 + l4 * c3 + l7 * s3) *
           std::exp(e1 / 2);
  out[4] = (l1 * e5 / 2 + l5) * std::exp(-e1 / 2);
  out[5] = (-l1 / 2 * (e5 * e2 + e6) + l2 * e5 - l5 * e2 + l6) * std::exp(e1 / 2);
  out[6] = (l1 / 2 * (e4 * s3 - e7 * c3) + l3 * (e7 * s3 + e4 * c3) - l4 * s3 + l7 * c3) *
           std::exp(e1 / 2);
  return out;
}

AlgebraElement adjoint_rep_entry(int i, int j, double eps) {
  AlgebraElement l{};
  l[j - 1] = 1.0;
  std::array<double, 7> e{};
  e[i - 1] = eps;
  return adjoint_transform(l, e);
}

std::string adjoint_rep_cell_string(int i, int j) {
  auto dj = [](int k) { return "D" + std::to_string(k); };
  if (i == 1) {
    static const char* factors[8] = {"",            "",            "exp(eps)*", "",
                                     "exp(eps/2)*", "exp(-eps/2)*", "exp(eps/2)*", "exp(eps/2)*"};
    return std::string(factors[j]) + dj(j);
  }
  switch (i * 10 + j) {
    case 21: return "D1 - eps*D2";
    case 25: return "D5 - eps*D6";
    case 34: return "cos(eps)*D4 - sin(eps)*D7";
    case 37: return "sin(eps)*D4 + cos(eps)*D7";
    case 41: return "D1 - eps/2*D4";
    case 43: return "D3 + eps*D7";
    case 51: return "D1 + eps/2*D5";
    case 52: return "D2 + eps*D6";
    case 61: return "D1 - eps/2*D6";
    case 71: return "D1 - eps/2*D7";
    case 73: return "D3 - eps*D4";
    default: return dj(j);
  }
}

AlgebraElement adjoint_rep_golden(int i, int j, double eps) {
  AlgebraElement r{};
  auto unit = [&](int k, double v) { r[k - 1] = v; };
  unit(j, 1.0);
  switch (i) {
    case 1: {
      const double f[8] = {0, 1, std::exp(eps), 1, std::exp(eps / 2), std::exp(-eps / 2),
                           std::exp(eps / 2), std::exp(eps / 2)};
      r[j - 1] = f[j];
      break;
    }
    case 2:
      if (j == 1) unit(2, -eps);
      if (j == 5) unit(6, -eps);
      break;
    case 3:
      if (j == 4) {
        unit(4, std::cos(eps));
        unit(7, -std::sin(eps));
      }
      if (j == 7) {
        unit(4, std::sin(eps));
        unit(7, std::cos(eps));
      }
      break;
    case 4:
      if (j == 1) unit(4, -eps / 2);
      if (j == 3) unit(7, eps);
      break;
    case 5:
      if (j == 1) unit(5, eps / 2);
      if (j == 2) unit(6, eps);
      break;
    case 6:
      if (j == 1) unit(6, -eps / 2);
      break;
    case 7:
      if (j == 1) unit(7, -eps / 2);
      if (j == 3) unit(4, -eps);
      break;
    default:
      throw std::invalid_argument("basis index out of range");
  }
  return r;
}

InvariantSignature invariant_signature(const AlgebraElement& l) {
  const double l1 = l[0], l2 = l[1], l3 = l[2], l4 = l[3], l5 = l[4], l6 = l[5], l7 = l[6];
  InvariantSignature s{};
  s.killing = killing_form(l);
  s.m = l1;
  s.n = l3;
  s.o = (l1 * l1 + l2 * l2 + l3 * l3 != 0.0) ? 1 : 0;
  s.p = (l1 * l1 + l2 * l2 + l3 * l3 + l5 * l5 + l6 * l6 != 0.0) ? 1 : 0;
  s.q = (l1 == 0.0 && l3 == 0.0 && l7 == 0.0) ? sgn(l4) : 0;
  s.r = (l1 == 0.0) ? sgn(l2) : 0;
  s.s = (l1 == 0.0) ? sgn(l5) : 0;
  s.t = (l1 == 0.0 && l2 == 0.0 && l5 == 0.0) ? sgn(l6) : 0;
  s.u = (l1 == 0.0 && l3 == 0.0 && l4 == 0.0) ? sgn(l7) : 0;
  return s;
}

std::vector<SignatureTableRow> signature_table_golden(double d) {
  const int sd = sgn(d);
  auto el = [](double a, double b, double c, double dd, double e, double f, double g) {
    return AlgebraElement{a, b, c, dd, e, f, g};
  };
  auto sig = [](double k, double m, double n, int o, int p, int q, int r, int s, int t, int u) {
    return InvariantSignature{k, m, n, o, p, q, r, s, t, u};
  };
  return {
      {"X_{1,1,0,1}", el(0, 1, 1, 0, 0, 1, 0), sig(-2, 0, 1, 1, 1, 0, 1, 0, 0, 0)},
      {"X_{1,0,0,0}", el(0, 0, 1, 0, 0, 0, 0), sig(-2, 0, 1, 1, 1, 0, 0, 0, 0, 0)},
      {"X_2", el(1, 0, 0, 0, 0, 0, 0), sig(2, 1, 0, 1, 1, 0, 0, 0, 0, 0)},
      {"X_{3,0,d4,d5,d6,d7}", el(0, 0, 0, d, d, d, d), sig(0, 0, 0, 0, 1, 0, 0, sd, 0, 0)},
      {"X_{3,d2,0,d5,d6,d7}", el(0, d, 0, 0, d, d, d), sig(0, 0, 0, 1, 1, 0, sd, sd, 0, sd)},
      {"X_{3,0,d4,0,d6,d7}", el(0, 0, 0, d, 0, d, d), sig(0, 0, 0, 0, 1, 0, 0, 0, sd, 0)},
      {"X_{3,d2,0,d5,d6,0}", el(0, d, 0, 0, d, d, 0), sig(0, 0, 0, 1, 1, 0, sd, sd, 0, 0)},
      {"X_{3,0,0,0,d6,d7}", el(0, 0, 0, 0, 0, d, d), sig(0, 0, 0, 0, 1, 0, 0, 0, sd, sd)},
      {"X_{4,1}", el(1, 0, 1, 0, 0, 0, 0), sig(0, 1, 1, 1, 1, 0, 0, 0, 0, 0)},
      {"X_{4,-1}", el(1, 0, -1, 0, 0, 0, 0), sig(0, 1, -1, 1, 1, 0, 0, 0, 0, 0)},
  };
}

}  // namespace zk
