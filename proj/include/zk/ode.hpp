#ifndef ZK_ODE_HPP
#define ZK_ODE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "zk/reduced.hpp"

namespace zk {

// Second-order scalar problem H'' = f(lambda, H, H') built from a reduced
// equation solved for its highest derivative.  The leading coefficient is
// checked at runtime and integration stops on singularities or blow-up.
struct ODEProblem {
  std::string name;
  const ReducedEquation* equation = nullptr;
  ParamTable params;
  double lambda0 = 0.0;
  double h0 = 1.0;   // H(lambda0)
  double hp0 = 0.0;  // H'(lambda0)
  double span_lo = 0.0;
  double span_hi = 0.0;
  std::string ic_note;
};

enum class Method { Rk4, Rkf45 };

struct IntegratorConfig {
  Method method = Method::Rk4;
  double h = 0.01;        // rk4 fixed step
  double rtol = 1e-8;     // rkf45
  double atol = 1e-8;
  double min_step = 1e-12;
  // Keeps the cubic-Hermite dense output at the accuracy of the pair itself.
  double max_step = 0.1;
};

struct Trajectory {
  std::vector<double> lambda, h, hp, f;  // f = H'' at each node (for dense output)
  bool error = false;
  std::string error_msg;
  long long accepted = 0;
  long long rejected = 0;

  double front_lambda() const { return lambda.front(); }
  double back_lambda() const { return lambda.back(); }
};

// Right-hand side assembled from the reduced equation: f = -E(l,H,H',0)/c
// where c = dE/du_xx; throws DomainError when |c| vanishes.
class OdeRhs {
 public:
  OdeRhs(const ReducedEquation& eq, ParamTable params);
  double operator()(double lambda, double h, double hp) const;

 private:
  Expr numerator_;  // -E with u_xx = 0
  Expr lead_;       // dE/du_xx
  ParamTable params_;
};

Trajectory rk4_integrate(const ODEProblem& p, const IntegratorConfig& cfg);
Trajectory rkf45_integrate(const ODEProblem& p, const IntegratorConfig& cfg);

// Cubic Hermite dense output on a trajectory (4th-order accurate between
// accepted nodes).
double dense_h(const Trajectory& t, double lambda);
double dense_hp(const Trajectory& t, double lambda);

struct CompareReport {
  double sup_h = 0.0;
  double sup_hp = 0.0;
  double at_lambda = 0.0;
  std::size_t n_samples = 0;
  bool pass = false;
};

// Sup-norm of |H1-H2| and |H1'-H2'| over t1's nodes inside the common span
// (t2 resampled by dense output).  Throws on disjoint spans.
CompareReport compare(const Trajectory& t1, const Trajectory& t2, double tol);

// The five comparison configurations (documented spans and initial data).
struct OdeFigure {
  std::string id;            // "x1", "x3", "d1", "d2", "d3"
  ODEProblem problem;
  // analytic solution when the chain has one
  std::function<double(double)> analytic_h;
  std::function<double(double)> analytic_hp;
};
const std::vector<OdeFigure>& ode_figures();
const OdeFigure& lookup_ode_figure(const std::string& id);

}  // namespace zk

#endif
