#include "zk/ode.hpp"

#include <algorithm>
#include <cmath>

namespace zk {

OdeRhs::OdeRhs(const ReducedEquation& eq, ParamTable params) : params_(std::move(params)) {
  if (eq.n_independent != 1)
    throw std::invalid_argument(eq.name + " is not an ODE");
  JetCoord uxx = JetCoord::u_deriv({2, 0, 0, 0});
  lead_ = partial_diff(eq.residual, uxx);
  numerator_ = normalize(-substitute(eq.residual, {{uxx, Expr::constant(0.0)}}));
}

double OdeRhs::operator()(double lambda, double h, double hp) const {
  JetPoint p;
  p.set_base(lambda, 0.5, 0.5, 0.5);
  p.set(JetCoord::u(), h);
  p.set(JetCoord::u_deriv({1, 0, 0, 0}), hp);
  double c = eval(lead_, p, params_);
  if (std::fabs(c) < 1e-14)
    throw DomainError("leading coefficient vanishes at lambda = " + std::to_string(lambda));
  return eval(numerator_, p, params_) / c;
}

namespace {

struct State {
  double h, hp;
};

// One classical RK4 step for (H, H') with H'' = f.
State rk4_step(const OdeRhs& f, double l, State y, double step) {
  auto deriv = [&](double lv, State s) { return State{s.hp, f(lv, s.h, s.hp)}; };
  State k1 = deriv(l, y);
  State k2 = deriv(l + step / 2, {y.h + step / 2 * k1.h, y.hp + step / 2 * k1.hp});
  State k3 = deriv(l + step / 2, {y.h + step / 2 * k2.h, y.hp + step / 2 * k2.hp});
  State k4 = deriv(l + step, {y.h + step * k3.h, y.hp + step * k3.hp});
  return {y.h + step / 6 * (k1.h + 2 * k2.h + 2 * k3.h + k4.h),
          y.hp + step / 6 * (k1.hp + 2 * k2.hp + 2 * k3.hp + k4.hp)};
}

void push_node(Trajectory& t, const OdeRhs& f, double l, State y) {
  t.lambda.push_back(l);
  t.h.push_back(y.h);
  t.hp.push_back(y.hp);
  t.f.push_back(f(l, y.h, y.hp));
}

}  // namespace

Trajectory rk4_integrate(const ODEProblem& p, const IntegratorConfig& cfg) {
  OdeRhs f(*p.equation, p.params);
  Trajectory traj;
  State y{p.h0, p.hp0};
  double l = p.lambda0;
  try {
    push_node(traj, f, l, y);
    long long n = std::llround((p.span_hi - p.span_lo) / cfg.h);
    for (long long i = 0; i < n; ++i) {
      y = rk4_step(f, l, y, cfg.h);
      l = p.span_lo + static_cast<double>(i + 1) * cfg.h;
      if (!std::isfinite(y.h) || !std::isfinite(y.hp)) {
        traj.error = true;
        traj.error_msg = "state diverged at lambda = " + std::to_string(l);
        return traj;
      }
      push_node(traj, f, l, y);
      ++traj.accepted;
    }
  } catch (const DomainError& e) {
    traj.error = true;
    traj.error_msg = e.what();
  }
  return traj;
}

Trajectory rkf45_integrate(const ODEProblem& p, const IntegratorConfig& cfg) {
  // Fehlberg 4(5) tableau.
  static const double A2[] = {1.0 / 4};
  static const double A3[] = {3.0 / 32, 9.0 / 32};
  static const double A4[] = {1932.0 / 2197, -7200.0 / 2197, 7296.0 / 2197};
  static const double A5[] = {439.0 / 216, -8.0, 3680.0 / 513, -845.0 / 4104};
  static const double A6[] = {-8.0 / 27, 2.0, -3544.0 / 2565, 1859.0 / 4104, -11.0 / 40};
  static const double B5[] = {16.0 / 135, 0.0, 6656.0 / 12825, 28561.0 / 56430, -9.0 / 50,
                              2.0 / 55};
  static const double B4[] = {25.0 / 216, 0.0, 1408.0 / 2565, 2197.0 / 4104, -1.0 / 5, 0.0};
  static const double C[] = {0.0, 1.0 / 4, 3.0 / 8, 12.0 / 13, 1.0, 1.0 / 2};

  OdeRhs f(*p.equation, p.params);
  Trajectory traj;
  State y{p.h0, p.hp0};
  double l = p.lambda0;
  double step = std::min(cfg.max_step, (p.span_hi - p.span_lo) / 10.0);

  auto deriv = [&](double lv, State s) { return State{s.hp, f(lv, s.h, s.hp)}; };

  try {
    push_node(traj, f, l, y);
    while (l < p.span_hi - 1e-14) {
      step = std::min(step, p.span_hi - l);
      State k[6];
      k[0] = deriv(l, y);
      k[1] = deriv(l + C[1] * step, {y.h + step * A2[0] * k[0].h, y.hp + step * A2[0] * k[0].hp});
      k[2] = deriv(l + C[2] * step, {y.h + step * (A3[0] * k[0].h + A3[1] * k[1].h),
                                     y.hp + step * (A3[0] * k[0].hp + A3[1] * k[1].hp)});
      k[3] = deriv(l + C[3] * step,
                   {y.h + step * (A4[0] * k[0].h + A4[1] * k[1].h + A4[2] * k[2].h),
                    y.hp + step * (A4[0] * k[0].hp + A4[1] * k[1].hp + A4[2] * k[2].hp)});
      k[4] = deriv(l + C[4] * step,
                   {y.h + step * (A5[0] * k[0].h + A5[1] * k[1].h + A5[2] * k[2].h +
                                  A5[3] * k[3].h),
                    y.hp + step * (A5[0] * k[0].hp + A5[1] * k[1].hp + A5[2] * k[2].hp +
                                   A5[3] * k[3].hp)});
      k[5] = deriv(l + C[5] * step,
                   {y.h + step * (A6[0] * k[0].h + A6[1] * k[1].h + A6[2] * k[2].h +
                                  A6[3] * k[3].h + A6[4] * k[4].h),
                    y.hp + step * (A6[0] * k[0].hp + A6[1] * k[1].hp + A6[2] * k[2].hp +
                                   A6[3] * k[3].hp + A6[4] * k[4].hp)});

      double h5 = y.h, hp5 = y.hp, h4 = y.h, hp4 = y.hp;
      for (int i = 0; i < 6; ++i) {
        h5 += step * B5[i] * k[i].h;
        hp5 += step * B5[i] * k[i].hp;
        h4 += step * B4[i] * k[i].h;
        hp4 += step * B4[i] * k[i].hp;
      }
      if (!std::isfinite(h5) || !std::isfinite(hp5)) {
        traj.error = true;
        traj.error_msg = "state diverged at lambda = " + std::to_string(l);
        return traj;
      }

      double sc_h = cfg.atol + cfg.rtol * std::max(std::fabs(y.h), std::fabs(h5));
      double sc_hp = cfg.atol + cfg.rtol * std::max(std::fabs(y.hp), std::fabs(hp5));
      double err = std::sqrt(0.5 * (std::pow((h5 - h4) / sc_h, 2) +
                                    std::pow((hp5 - hp4) / sc_hp, 2)));

      if (err <= 1.0) {
        l += step;
        y = {h5, hp5};  // local extrapolation: propagate the 5th-order value
        push_node(traj, f, l, y);
        ++traj.accepted;
      } else {
        ++traj.rejected;
      }
      double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      step *= std::clamp(factor, 0.2, 5.0);
      step = std::min(step, cfg.max_step);
      if (step < cfg.min_step) {
        traj.error = true;
        traj.error_msg = "step underflow at lambda = " + std::to_string(l);
        return traj;
      }
    }
  } catch (const DomainError& e) {
    traj.error = true;
    traj.error_msg = e.what();
  }
  return traj;
}

namespace {

std::size_t locate(const Trajectory& t, double lambda) {
  auto it = std::upper_bound(t.lambda.begin(), t.lambda.end(), lambda);
  std::size_t i = static_cast<std::size_t>(it - t.lambda.begin());
  if (i == 0) return 0;
  if (i >= t.lambda.size()) return t.lambda.size() - 2;
  return i - 1;
}

}  // namespace

double dense_h(const Trajectory& t, double lambda) {
  std::size_t i = locate(t, lambda);
  double l0 = t.lambda[i], l1 = t.lambda[i + 1];
  double d = l1 - l0, s = (lambda - l0) / d;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * t.h[i] + h10 * d * t.hp[i] + h01 * t.h[i + 1] + h11 * d * t.hp[i + 1];
}

double dense_hp(const Trajectory& t, double lambda) {
  std::size_t i = locate(t, lambda);
  double l0 = t.lambda[i], l1 = t.lambda[i + 1];
  double d = l1 - l0, s = (lambda - l0) / d;
  double h00 = (1 + 2 * s) * (1 - s) * (1 - s), h10 = s * (1 - s) * (1 - s);
  double h01 = s * s * (3 - 2 * s), h11 = s * s * (s - 1);
  return h00 * t.hp[i] + h10 * d * t.f[i] + h01 * t.hp[i + 1] + h11 * d * t.f[i + 1];
}

CompareReport compare(const Trajectory& t1, const Trajectory& t2, double tol) {
  double lo = std::max(t1.front_lambda(), t2.front_lambda());
  double hi = std::min(t1.back_lambda(), t2.back_lambda());
  if (lo > hi) throw std::invalid_argument("trajectories have disjoint spans");

  CompareReport r;
  for (std::size_t i = 0; i < t1.lambda.size(); ++i) {
    double l = t1.lambda[i];
    if (l < lo || l > hi) continue;
    double dh = std::fabs(t1.h[i] - dense_h(t2, l));
    double dhp = std::fabs(t1.hp[i] - dense_hp(t2, l));
    if (dh > r.sup_h) {
      r.sup_h = dh;
      r.at_lambda = l;
    }
    r.sup_hp = std::max(r.sup_hp, dhp);
    ++r.n_samples;
  }
  r.pass = r.sup_h < tol && r.sup_hp < tol;
  return r;
}

const std::vector<OdeFigure>& ode_figures() {
  static const std::vector<OdeFigure> figs = [] {
    std::vector<OdeFigure> v;
    {
      // rotation-representative chain; analytic kink with C = 1/2
      OdeFigure f;
      f.id = "x1";
      f.problem.name = "x1-chain-ode comparison";
      f.problem.equation = &lookup_reduced("x1-chain-ode");
      f.problem.params = {{"a", 1}, {"b2", 1}, {"b5", 0}, {"b6", 1}};
      const double C = 0.5;
      f.analytic_h = [C](double l) { return 2.0 / (1.0 + 2.0 * C * std::exp(-l)); };
      f.analytic_hp = [C](double l) {
        double g = 2.0 * C * std::exp(-l);
        return 2.0 * g / ((1.0 + g) * (1.0 + g));
      };
      f.problem.span_lo = -5.0;
      f.problem.span_hi = 5.0;
      f.problem.lambda0 = -5.0;
      f.problem.h0 = f.analytic_h(-5.0);
      f.problem.hp0 = f.analytic_hp(-5.0);
      f.problem.ic_note = "initial data from the closed form with C = 1/2";
      v.push_back(std::move(f));
    }
    {
      // translation-combination chain with the published parameter list;
      // d5 is not listed there and defaults to 1.  The solution blows up in
      // finite lambda past ~4.6, so the span stops at 2.
      OdeFigure f;
      f.id = "x3";
      f.problem.name = "x3-chain-ode comparison";
      f.problem.equation = &lookup_reduced("x3-chain-ode");
      f.problem.params = {{"a", 1}, {"b1", 1}, {"b2", 2}, {"b3", 1}, {"A1", 1}, {"A2", 1},
                          {"d2", 1}, {"d4", 1}, {"d5", 1}, {"d7", 1}};
      f.problem.span_lo = -5.0;
      f.problem.span_hi = 2.0;
      f.problem.lambda0 = -5.0;
      f.problem.h0 = 1.0;
      f.problem.hp0 = 0.0;
      f.problem.ic_note = "no analytic solution for b1 != 0; default H=1, H'=0";
      v.push_back(std::move(f));
    }
    {
      // scaling subcase; leading coefficient vanishes at lambda = 0 and -1,
      // so the span starts at 1.  Initial data sampled from the u5 closed
      // form restricted to the unit cylinder of the similarity chain.
      OdeFigure f;
      f.id = "d1";
      f.problem.name = "d1-chain-ode comparison";
      f.problem.equation = &lookup_reduced("d1-chain-ode");
      f.problem.params = {{"a", 1}};
      auto hu5 = [](double l) {
        return 2.0 * l / (2.0 * std::sqrt(l + 1.0) + std::sqrt(l));
      };
      f.problem.span_lo = 1.0;
      f.problem.span_hi = 5.0;
      f.problem.lambda0 = 1.0;
      f.problem.h0 = hu5(1.0);
      f.problem.hp0 = (hu5(1.0 + 1e-7) - hu5(1.0 - 1e-7)) / 2e-7;
      f.problem.ic_note = "initial data from u5 on the unit cylinder slice, C = 1";
      v.push_back(std::move(f));
    }
    {
      OdeFigure f;
      f.id = "d2";
      f.problem.name = "d2-chain-ode comparison";
      f.problem.equation = &lookup_reduced("d2-chain-ode");
      f.problem.params = {{"a", 1}, {"A1", 1}};
      f.problem.span_lo = 1.0;
      f.problem.span_hi = 5.0;
      f.problem.lambda0 = 1.0;
      f.problem.h0 = 1.0;
      f.problem.hp0 = 0.0;
      f.problem.ic_note = "no closed form cataloged; default H=1, H'=0";
      v.push_back(std::move(f));
    }
    {
      OdeFigure f;
      f.id = "d3";
      f.problem.name = "d3-chain-ode comparison";
      f.problem.equation = &lookup_reduced("d3-chain-ode");
      f.problem.params = {{"a", 1}, {"A1", 1}};
      f.problem.span_lo = 1.0;
      f.problem.span_hi = 5.0;
      f.problem.lambda0 = 1.0;
      f.problem.h0 = 1.0;
      f.problem.hp0 = 0.0;
      f.problem.ic_note = "no closed form cataloged; default H=1, H'=0";
      v.push_back(std::move(f));
    }
    return v;
  }();
  return figs;
}

const OdeFigure& lookup_ode_figure(const std::string& id) {
  for (const OdeFigure& f : ode_figures())
    if (f.id == id) return f;
  throw std::invalid_argument("unknown comparison configuration '" + id + "'");
}

}  // namespace zk
