#ifndef ZK_CHECKS_HPP
#define ZK_CHECKS_HPP

#include <cstdint>
#include <string>

#include "zk/report.hpp"

namespace zk {

struct RunOptions {
  std::uint64_t seed = 42;
  std::string out_dir;   // empty: run checks without writing artifacts
  double tol = 0.0;      // >0 overrides the default residual tolerance
  int n_points = 100;    // jet-point sample count
};

Report run_algebra_checks(const RunOptions& opt);
Report run_symmetry_checks(const RunOptions& opt);
Report run_solution_checks(const RunOptions& opt);
Report run_reduction_checks(const RunOptions& opt);
Report run_ode_checks(const RunOptions& opt);
Report run_mi_checks(const RunOptions& opt);
Report run_conservation_checks(const RunOptions& opt);

// Structural notes: printed-versus-computed mismatches that are properties of
// the source material rather than of a particular run.
Report discrepancy_notes(const RunOptions& opt);

// Everything, in a fixed order; writes report.json, discrepancies.json and
// discrepancies.md when out_dir is set.
Report run_all_checks(const RunOptions& opt);

}  // namespace zk

#endif
