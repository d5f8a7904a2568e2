#ifndef ZK_REDUCED_HPP
#define ZK_REDUCED_HPP

#include <string>
#include <vector>

#include "zk/expr.hpp"
#include "zk/grid.hpp"
#include "zk/residual_report.hpp"

namespace zk {

// A reduced PDE/ODE in similarity variables.  Internally the independent
// variables are mapped onto the coordinates x, y, z and the similarity
// function onto u, so the expression engine applies unchanged;
// `display_vars` keeps the original names for listings.
struct ReducedEquation {
  std::string name;
  Expr residual;                          // in mapped coordinates
  int n_independent = 1;                  // 1..3 mapped onto x, y, z
  std::vector<std::string> display_vars;  // e.g. {"lambda", "H"} or {"P","Q","R","F"}
  ParamTable defaults;
  std::string source;
};

const std::vector<ReducedEquation>& reduced_catalog();
const ReducedEquation& lookup_reduced(const std::string& name);

// Residual of `candidate` (the similarity function as an expression of the
// mapped independent variables) against the reduced equation over a grid on
// the mapped variables.  Throws std::invalid_argument when the candidate
// references variables the equation does not have.
ResidualReport reduced_residual(const ReducedEquation& eq, const Expr& candidate,
                                const GridSpec& grid, double tol,
                                const ParamTable* params_override = nullptr);

// Default grid: 11 samples per independent variable on [-2, 2], remaining
// axes fixed.
GridSpec reduced_default_grid(const ReducedEquation& eq);

// Named (equation, candidate) verification pairs with their expected verdict.
struct ReducedCheck {
  std::string name;
  std::string equation;
  std::string candidate_text;  // in mapped variables
  ParamTable params;           // defaults merged over the equation's
  double tol;
  bool expect_pass;            // asserted PASS vs reported-nonzero
  std::string source;
};
const std::vector<ReducedCheck>& reduced_checks();
ResidualReport run_reduced_check(const ReducedCheck& check);

}  // namespace zk

#endif
