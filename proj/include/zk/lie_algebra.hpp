#ifndef ZK_LIE_ALGEBRA_HPP
#define ZK_LIE_ALGEBRA_HPP

#include <array>
#include <string>

#include "zk/rational.hpp"
#include "zk/vector_field.hpp"

namespace zk {

// Coefficient vector (l1..l7) over the basis D1..D7; index 0 holds l1.
using AlgebraElement = std::array<double, 7>;
using Mat7 = std::array<std::array<double, 7>, 7>;

// c[i][j][k]: [D_{i+1}, D_{j+1}] = sum_k c[i][j][k] D_{k+1}.  Computed by
// expanding the symbolic commutators in the basis (exact, verified by
// normalize-to-zero); Table-2 transcription lives separately in
// commutator_table_golden() so the computation checks the printed table
// instead of assuming it.
struct StructureConstants {
  double c[7][7][7];
};

const StructureConstants& structure_constants();  // cached; throws BasisError on failure

// Transcription of the printed commutator table, exact rationals.
using BracketCoeffs = std::array<Rat, 7>;
const std::array<std::array<BracketCoeffs, 7>, 7>& commutator_table_golden();
std::string bracket_string(const BracketCoeffs& coeffs);  // "0", "-D2", "D5/2", ...

// Matrix of ad(H) acting on the basis: column j holds [H, D_{j+1}] in basis
// coordinates.
Mat7 ad_matrix(const AlgebraElement& l);

// Trace(ad(H) o ad(H)); equals 2*(l1^2 - l3^2) for this algebra.
double killing_form(const AlgebraElement& l);

// Transcription of the ad-matrix printed alongside the Killing-form theorem
// (which uses the opposite bracket order, column j = [D_{j+1}, H]).
Mat7 printed_killing_ad_matrix(const AlgebraElement& l);

// Single-generator adjoint matrix R_i(eps), acting on coefficient row
// vectors: l* = l . R_i(eps).  i is 1-based.
Mat7 adjoint_matrix(int i, double eps);

// R7 R6 R5 R4 R3 R2 R1 for the given parameter vector.
Mat7 global_adjoint(const std::array<double, 7>& eps);

AlgebraElement mat_apply_row(const AlgebraElement& l, const Mat7& m);

// Closed-form adjoint coefficient transform, equal to l . global_adjoint(eps).
// The closed form printed alongside the optimal-system derivation carries a
// sign slip on the l4*sin term of l7*; this implements the matrix-consistent
// form (see the discrepancy report).
AlgebraElement adjoint_transform(const AlgebraElement& l, const std::array<double, 7>& eps);

// Adjoint-representation table: Ad(exp(eps*D_i)) applied to basis element D_j.
AlgebraElement adjoint_rep_entry(int i, int j, double eps);     // 1-based i,j
std::string adjoint_rep_cell_string(int i, int j);              // symbolic cell, "eps" as parameter

// Independent transcription of the printed adjoint-representation table,
// used as the golden value the computed transform is checked against.
AlgebraElement adjoint_rep_golden(int i, int j, double eps);

struct InvariantSignature {
  double killing;  // K
  double m;        // l1
  double n;        // l3
  int o, p;        // indicator functions
  int q, r, s, t, u;  // sign functions, sgn(0) = 0
};

InvariantSignature invariant_signature(const AlgebraElement& l);

// The ten representatives of the printed invariant-value table.  Sign
// parameters (d2, d5, ...) enter through the element itself.
struct SignatureTableRow {
  std::string label;
  AlgebraElement element;
  InvariantSignature expected;
};
std::vector<SignatureTableRow> signature_table_golden(double d_sign);  // d_sign in {+1,-1}

}  // namespace zk

#endif
