#include "solve.hpp"

#include <cmath>
#include <functional>
#include <string>

#include "errors.hpp"

namespace gwg {

namespace {

// Monotone fixed-point iteration from 0 toward the minimum positive fixed
// point of an increasing map, followed by a Steffensen polish. The iteration
// alone can stall when the slope at the fixed point is close to 1; the
// polish is accepted only when it shrinks the residual, so it cannot wander
// off to a larger fixed point.
double min_fixed_point(const std::function<double(double)>& map, double cap,
                       const SolveControls& ctl, const char* name) {
  double x = 0.0;
  double step = 0.0;
  for (long it = 0; it < ctl.max_iter; ++it) {
    double fx = map(x);
    if (fx > cap) fx = cap;
    step = fx - x;
    x = fx;
    // Hand over to the polish well before the tolerance: near-unit slope
    // makes the tail of the plain iteration arbitrarily slow.
    if (std::fabs(step) < std::fmax(ctl.tol, 1e-8)) break;
  }

  double r = map(x) - x;
  for (int it = 0; it < 200 && std::fabs(r) >= ctl.tol; ++it) {
    double y = x + r;  // one plain step
    if (y > cap) y = cap;
    double ry = map(y) - y;
    double denom = ry - r;
    double cand = denom != 0.0 ? x - r * r / denom : y;
    if (!std::isfinite(cand) || cand < 0.0 || cand > cap) cand = y;
    double rc = map(cand) - cand;
    if (std::fabs(rc) < std::fabs(ry)) {
      x = cand;
      r = rc;
    } else {
      x = y;
      r = ry;
    }
  }

  if (std::fabs(r) >= 10.0 * ctl.tol) {
    throw NoConvergence(std::string(name) + " fixed-point iteration stalled",
                        x, std::fabs(r));
  }
  // The iterate can end a hair below the cap when the limit is the cap
  // itself; snap so that the draw-zero test sees exact coincidence.
  if (std::fabs(x - cap) < 1e-9) x = cap;
  return x;
}

double clamp_small(double v, double thresh) {
  return std::fabs(v) < thresh ? 0.0 : v;
}

}  // namespace

double solve_nl(const Ladder& ladder, const SolveControls& ctl) {
  return min_fixed_point([&](double x) { return h_eval(ladder, x); },
                         ladder.c(ladder.k()), ctl, "H_k");
}

double solve_ml(const Ladder& ladder, const SolveControls& ctl) {
  const double cap = solve_chat(ladder, ctl);
  return min_fixed_point([&](double x) { return j_eval(ladder, x); }, cap, ctl,
                         "J_k");
}

double solve_chat(const Ladder& ladder, const SolveControls& ctl) {
  const int k = ladder.k();
  const double chi0 = ladder.dist().chi0();
  auto phi = [&](double x) {
    return ladder.f(k, x) - j_eval(ladder, x) - chi0;
  };
  double lo = 0.0, hi = ladder.c(k - 1);
  double flo = phi(lo), fhi = phi(hi);
  if (!(flo > 0.0) || !(fhi < 0.0)) {
    throw BracketError("chat bracket sign check failed");
  }
  while (hi - lo > ctl.tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (phi(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

OutcomeTriple outcomes(const Ladder& ladder, Variant variant,
                       const SolveControls& ctl) {
  const int k = ladder.k();
  const double chi0 = ladder.dist().chi0();
  OutcomeTriple t;
  if (variant == Variant::Normal) {
    const double nl = solve_nl(ladder, ctl);
    const double fk = ladder.f(k, nl);
    t.loss = nl;
    t.win = 1.0 - fk;
    t.draw = clamp_small(fk - nl, 10.0 * ctl.tol);
  } else {
    const double ml = solve_ml(ladder, ctl);
    const double fk = ladder.f(k, ml);
    t.loss = ml;
    t.win = 1.0 - fk + chi0;
    t.draw = clamp_small(fk - j_eval(ladder, ml) - chi0, 10.0 * ctl.tol);
  }
  return t;
}

OutcomeTriple outcomes(const GameSpec& spec, const SolveControls& ctl) {
  Ladder ladder(spec.dist, spec.k, ctl.tol);
  return outcomes(ladder, spec.variant, ctl);
}

PhaseReport phase_report(const Ladder& ladder, const SolveControls& ctl) {
  PhaseReport r;
  const int k = ladder.k();
  r.lambda = ladder.dist().is_poisson() ? ladder.dist().rate() : 0.0;
  r.c_k = ladder.c(k);
  r.slope_at_ck = h_slope_at_ck(ladder);
  const double nl = solve_nl(ladder, ctl);
  r.draw_positive = nl < r.c_k - 10.0 * ctl.tol;
  if (ladder.dist().is_poisson() && k == 2) r.eta = r.lambda * r.c_k;
  return r;
}

double h_slope_at_ck(const Ladder& ladder) {
  if (ladder.dist().is_poisson() && ladder.k() == 2) {
    const double rate = ladder.dist().rate();
    const double eta = rate * ladder.c(2);
    const double e1 = std::exp(-eta);
    return rate * rate * eta * eta * e1 * e1 + 2.0 * rate * eta * eta * e1 -
           rate * eta * eta * eta * e1 - eta * eta * eta;
  }
  return h_slope_at_ck_fd(ladder);
}

double h_slope_at_ck_fd(const Ladder& ladder) {
  const int k = ladder.k();
  const double ck = ladder.c(k);
  const double h = std::fmax(1e-7, 1e-7 * ck);
  if (ck + h <= ladder.c(k - 1)) {
    return (h_eval(ladder, ck + h) - h_eval(ladder, ck - h)) / (2.0 * h);
  }
  // One-sided second-order backward difference.
  return (3.0 * h_eval(ladder, ck) - 4.0 * h_eval(ladder, ck - h) +
          h_eval(ladder, ck - 2.0 * h)) /
         (2.0 * h);
}

double lambda_c(double tol) {
  auto slope = [](double rate) {
    Ladder ladder(OffspringDistribution::poisson(rate), 2);
    return h_slope_at_ck(ladder) - 1.0;
  };
  double lo = 2.0, hi = 2.5;
  if (!(slope(lo) < 0.0) || !(slope(hi) > 0.0)) {
    throw BracketError("lambda_c bracket sign check failed");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (slope(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::pair<double, double> eta_curve_extremum(double tol) {
  // eta(rate) = rate * c_2(rate) peaks where c_2 * e^{rate*c_2 + 1} crosses 1;
  // that quantity is strictly decreasing in the rate.
  auto q = [](double rate) {
    Ladder ladder(OffspringDistribution::poisson(rate), 2);
    const double c2 = ladder.c(2);
    return c2 * std::exp(rate * c2 + 1.0) - 1.0;
  };
  double lo = 2.0, hi = 3.0;
  if (!(q(lo) > 0.0) || !(q(hi) < 0.0)) {
    throw BracketError("eta extremum bracket sign check failed");
  }
  while (hi - lo > tol) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (q(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lambda0 = 0.5 * (lo + hi);
  Ladder ladder(OffspringDistribution::poisson(lambda0), 2);
  return {lambda0, lambda0 * ladder.c(2)};
}

DurationReport duration_check(const Ladder& ladder, const SolveControls& ctl) {
  const int k = ladder.k();
  DurationReport r;
  const double nl = solve_nl(ladder, ctl);
  const double ck = ladder.c(k);
  r.nl_equals_ck = std::fabs(nl - ck) < 10.0 * ctl.tol;
  r.slope_h = h_slope_at_ck(ladder);
  r.abs_slope_f = std::fabs(ladder.f_deriv(k, ck));
  const bool general = std::fmax(r.slope_h, r.abs_slope_f) < 1.0;
  const bool low_k = (k == 2 || k == 3) && r.abs_slope_f < 1.0;
  r.finite_expected_duration_certified = r.nl_equals_ck && (general || low_k);
  r.conjecture_holds = r.slope_h < r.abs_slope_f * r.abs_slope_f;
  return r;
}

std::pair<double, double> analytic_horizon(const Ladder& ladder,
                                           Variant variant, int n) {
  if (n < 0) throw InvalidArgument("horizon must be >= 0");
  const int k = ladder.k();
  const double chi0 = ladder.dist().chi0();
  const bool misere = variant == Variant::Misere;
  // loss^(0) = 0; loss^(1) = chi(0) normal, 0 misere; then two-step map.
  std::vector<double> loss(size_t(n) + 1, 0.0);
  if (n >= 1 && !misere) loss[1] = chi0;
  for (int m = 2; m <= n; ++m) {
    loss[size_t(m)] = misere ? j_eval(ladder, loss[size_t(m) - 2])
                             : h_eval(ladder, loss[size_t(m) - 2]);
  }
  double win = 0.0;
  if (n >= 1) {
    const double fk = ladder.f(k, loss[size_t(n) - 1]);
    win = misere ? chi0 + 1.0 - fk : 1.0 - fk;
  }
  return {loss[size_t(n)], win};
}

}  // namespace gwg
