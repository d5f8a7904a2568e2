#ifndef ZK_SOLUTIONS_HPP
#define ZK_SOLUTIONS_HPP

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "zk/expr.hpp"
#include "zk/grid.hpp"
#include "zk/residual_report.hpp"

namespace zk {

// Whether a closed form is transcribed as printed, is an exact corrected
// lift, or is a re-derived candidate whose verdict is reported rather than
// asserted.
enum class Provenance { Printed, Corrected, Candidate };

const char* provenance_name(Provenance p);

using DomainPredicate =
    std::function<bool(const std::array<double, 4>&, const ParamTable&)>;

class SolutionRecord {
 public:
  SolutionRecord(std::string name, Expr u, ParamTable defaults, Provenance prov,
                 std::string source, bool positive_time = false,
                 DomainPredicate extra_domain = nullptr);

  const std::string& name() const { return name_; }
  const Expr& u() const { return u_; }
  const ParamTable& defaults() const { return defaults_; }
  Provenance provenance() const { return prov_; }
  const std::string& source() const { return source_; }
  bool positive_time() const { return positive_time_; }

  // True when the point is inside the declared domain: the extra predicate
  // holds and the full order-3 jet evaluates to finite values.
  bool in_domain(const std::array<double, 4>& base, const ParamTable& params) const;

  // The explicit part of the domain check (no jet evaluation).
  bool point_admissible(const std::array<double, 4>& base, const ParamTable& params) const;

  // Order-3 jet of the closed form at a base point, by symbolic
  // differentiation (cached) and evaluation.  Throws DomainError outside the
  // domain.
  JetPoint jet(const std::array<double, 4>& base, const ParamTable& params) const;
  JetPoint jet(const std::array<double, 4>& base) const { return jet(base, defaults_); }

  // The symbolic derivative table (u and all derivatives to order 3).
  const std::map<JetCoord, Expr>& derivative_table() const;

 private:
  std::string name_;
  Expr u_;
  ParamTable defaults_;
  Provenance prov_;
  std::string source_;
  bool positive_time_;
  DomainPredicate extra_domain_;
  std::shared_ptr<const std::map<JetCoord, Expr>> derivs_;
};

// All cataloged closed forms: u1, u2 (printed and corrected), u3 (printed and
// candidate), u4 (printed and candidate), u5, u6, u7, and a constant state.
const std::vector<SolutionRecord>& solution_catalog();
const SolutionRecord& lookup_solution(const std::string& name);

// Default verification grid: 11 samples per active base variable on [-2, 2]
// (t on [0.1, 2.1] for records with positive-time domains), inactive
// coordinates fixed at 0.5.
GridSpec default_grid(const SolutionRecord& s);

// Max |Delta| over the grid (points outside the domain are skipped).
ResidualReport pde_residual(const SolutionRecord& s, const GridSpec& grid, double tol,
                            const ParamTable* params_override = nullptr);

// Per-point residual dump, columns (x, y, z, t, residual).
void dump_residual_csv(const SolutionRecord& s, const GridSpec& grid, const std::string& path);

// One-parameter symmetry transform of a record, generator index 1..7.  The
// rotation uses the exact flow, and the boost shifts u by +eps/a (the
// solution-preserving sign).
SolutionRecord group_transform(const SolutionRecord& s, int generator, double eps);

// Scan of the traveling-wave speed: residual of u7 as a function of d over a
// uniform grid, returning (d, max-residual) rows and the best d.
struct SpeedScanRow {
  double d;
  double max_residual;
};
struct SpeedScanResult {
  std::vector<SpeedScanRow> rows;
  double best_d = 0.0;
  double best_residual = 0.0;
};
SpeedScanResult traveling_wave_speed_scan(double lo = -2.0, double hi = 2.0, int n = 81);

}  // namespace zk

#endif
