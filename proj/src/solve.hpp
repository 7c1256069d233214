#pragma once

#include <utility>

#include "ladder.hpp"
#include "recursors.hpp"

namespace gwg {

struct SolveControls {
  double tol = 1e-13;
  long max_iter = 1000000;
};

struct OutcomeTriple {
  double loss = 0.0;
  double win = 0.0;
  double draw = 0.0;
};

struct PhaseReport {
  double lambda = 0.0;
  double c_k = 0.0;
  double slope_at_ck = 0.0;
  bool draw_positive = false;
  double eta = 0.0;  // lambda * c_2, populated when Poisson and k == 2
};

struct DurationReport {
  bool nl_equals_ck = false;
  double slope_h = 0.0;
  double abs_slope_f = 0.0;
  bool finite_expected_duration_certified = false;
  bool conjecture_holds = false;
};

// Minimum positive fixed point of H_k, by the monotone iteration
// x <- H_k(x) from 0 plus a local Steffensen polish.
double solve_nl(const Ladder& ladder, const SolveControls& ctl = {});

// Minimum positive fixed point of J_k, same scheme.
double solve_ml(const Ladder& ladder, const SolveControls& ctl = {});

// Unique intersection of F_k and J_k + chi(0) in (0, c_{k-1}), by bisection.
double solve_chat(const Ladder& ladder, const SolveControls& ctl = {});

OutcomeTriple outcomes(const Ladder& ladder, Variant variant,
                       const SolveControls& ctl = {});
OutcomeTriple outcomes(const GameSpec& spec, const SolveControls& ctl = {});

PhaseReport phase_report(const Ladder& ladder, const SolveControls& ctl = {});

// H_k'(c_k): closed form in eta = rate*c_2 for Poisson k=2, otherwise a
// finite difference of h_eval.
double h_slope_at_ck(const Ladder& ladder);
double h_slope_at_ck_fd(const Ladder& ladder);

// Critical Poisson rate for k=2 where the slope at c_2 crosses 1.
double lambda_c(double tol = 1e-10);

// Maximizer of eta(rate) = rate * c_2(rate); returns (lambda_0, eta_max).
std::pair<double, double> eta_curve_extremum(double tol = 1e-12);

DurationReport duration_check(const Ladder& ladder,
                              const SolveControls& ctl = {});

// Finite-horizon analytic sequence: loss^(n) and win^(n) for the variant,
// from loss^(n+2) = H_k(loss^(n)) (J_k for misere) and
// win^(n+1) = 1 - F_k(loss^(n)) (+ chi(0) for misere).
std::pair<double, double> analytic_horizon(const Ladder& ladder,
                                           Variant variant, int n);

}  // namespace gwg
