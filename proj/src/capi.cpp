#include "gwgames.h"

#include <cstring>
#include <string>

#include "errors.hpp"
#include "ladder.hpp"
#include "offspring.hpp"
#include "recursors.hpp"
#include "simulate.hpp"
#include "solve.hpp"

namespace {

thread_local std::string g_last_error;

gw_status set_error(gw_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <typename Fn>
gw_status wrap(Fn&& fn) {
  try {
    fn();
    return GW_OK;
  } catch (const gwg::DomainError& e) {
    return set_error(GW_ERR_DOMAIN, e.what());
  } catch (const gwg::InvalidArgument& e) {
    return set_error(GW_ERR_INVALID, e.what());
  } catch (const gwg::BracketError& e) {
    return set_error(GW_ERR_BRACKET, e.what());
  } catch (const gwg::NoConvergence& e) {
    return set_error(GW_ERR_NO_CONVERGENCE, e.what());
  } catch (const gwg::HorizonError& e) {
    return set_error(GW_ERR_HORIZON, e.what());
  } catch (const std::exception& e) {
    return set_error(GW_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(GW_ERR_INTERNAL, "unknown error");
  }
}

gwg::SolveControls controls(double tol, long max_iter) {
  gwg::SolveControls c;
  if (tol > 0.0) c.tol = tol;
  if (max_iter > 0) c.max_iter = max_iter;
  return c;
}

gwg::Variant to_variant(gw_variant v) {
  return v == GW_MISERE ? gwg::Variant::Misere : gwg::Variant::Normal;
}

}  // namespace

struct gw_dist {
  gwg::OffspringDistribution impl;
};

struct gw_ladder {
  gwg::Ladder impl;
};

extern "C" {

const char* gw_status_str(gw_status s) {
  switch (s) {
    case GW_OK: return "ok";
    case GW_ERR_INVALID: return "invalid argument";
    case GW_ERR_DOMAIN: return "domain error";
    case GW_ERR_BRACKET: return "bracket error";
    case GW_ERR_NO_CONVERGENCE: return "no convergence";
    case GW_ERR_HORIZON: return "horizon error";
    default: return "internal error";
  }
}

const char* gw_last_error(void) { return g_last_error.c_str(); }

gw_status gw_dist_poisson(double rate, gw_dist** out) {
  if (!out) return set_error(GW_ERR_INVALID, "out is NULL");
  return wrap([&] {
    *out = new gw_dist{gwg::OffspringDistribution::poisson(rate)};
  });
}

gw_status gw_dist_finite(const double* mass, size_t len, gw_dist** out) {
  if (!out || !mass) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    *out = new gw_dist{gwg::OffspringDistribution::finite_support(
        std::vector<double>(mass, mass + len))};
  });
}

void gw_dist_free(gw_dist* d) { delete d; }

double gw_dist_chi0(const gw_dist* d) { return d ? d->impl.chi0() : 0.0; }

gw_status gw_pgf(const gw_dist* d, double x, double* out) {
  if (!d || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = d->impl.pgf(x); });
}

gw_status gw_pgf_deriv(const gw_dist* d, double x, int order, double* out) {
  if (!d || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = d->impl.pgf_deriv(x, order); });
}

gw_status gw_ladder_new(const gw_dist* d, int k, double tol, gw_ladder** out) {
  if (!d || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    *out = new gw_ladder{gwg::Ladder(d->impl, k, tol > 0.0 ? tol : 1e-13)};
  });
}

void gw_ladder_free(gw_ladder* l) { delete l; }

int gw_ladder_k(const gw_ladder* l) { return l ? l->impl.k() : 0; }

gw_status gw_ladder_c(const gw_ladder* l, int i, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = l->impl.c(i); });
}

gw_status gw_ladder_f(const gw_ladder* l, int i, double x, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = l->impl.f(i, x); });
}

gw_status gw_ladder_f_deriv(const gw_ladder* l, int i, double x, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = l->impl.f_deriv(i, x); });
}

gw_status gw_h(const gw_ladder* l, double x, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::h_eval(l->impl, x); });
}

gw_status gw_j(const gw_ladder* l, double x, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::j_eval(l->impl, x); });
}

gw_status gw_class_probs(const gw_ladder* l, double x, double* probs,
                         int* pair_i, int* pair_j, size_t cap, size_t* count) {
  if (!l || !probs || !count) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    const auto v = gwg::class_probs(l->impl, x);
    if (v.size() > cap) throw gwg::InvalidArgument("buffer too small");
    for (size_t idx = 0; idx < v.size(); ++idx) {
      probs[idx] = v[idx].p;
      if (pair_i) pair_i[idx] = v[idx].i;
      if (pair_j) pair_j[idx] = v[idx].j;
    }
    *count = v.size();
  });
}

gw_status gw_system_residual_k2(const gw_ladder* l, double nl2, double p01,
                                double p02, double p12, double out[4]) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    const auto r = gwg::system_residual_k2(l->impl, nl2, p01, p02, p12);
    for (int i = 0; i < 4; ++i) out[i] = r[size_t(i)];
  });
}

gw_status gw_solve_nl(const gw_ladder* l, double tol, long max_iter,
                      double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::solve_nl(l->impl, controls(tol, max_iter)); });
}

gw_status gw_solve_ml(const gw_ladder* l, double tol, long max_iter,
                      double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::solve_ml(l->impl, controls(tol, max_iter)); });
}

gw_status gw_solve_chat(const gw_ladder* l, double tol, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::solve_chat(l->impl, controls(tol, 0)); });
}

gw_status gw_solve_outcomes(const gw_ladder* l, gw_variant v, double tol,
                            long max_iter, gw_outcome_triple* out,
                            gw_phase_info* info) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    const auto ctl = controls(tol, max_iter);
    const auto t = gwg::outcomes(l->impl, to_variant(v), ctl);
    out->loss = t.loss;
    out->win = t.win;
    out->draw = t.draw;
    if (info) {
      const auto p = gwg::phase_report(l->impl, ctl);
      info->c_k = p.c_k;
      info->chat_k = gwg::solve_chat(l->impl, ctl);
      info->slope_at_ck = p.slope_at_ck;
      info->eta = p.eta;
      info->draw_positive = p.draw_positive ? 1 : 0;
    }
  });
}

gw_status gw_h_slope_at_ck(const gw_ladder* l, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::h_slope_at_ck(l->impl); });
}

gw_status gw_h_slope_at_ck_fd(const gw_ladder* l, double* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::h_slope_at_ck_fd(l->impl); });
}

gw_status gw_lambda_c(double tol, double* out) {
  if (!out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] { *out = gwg::lambda_c(tol > 0.0 ? tol : 1e-10); });
}

gw_status gw_eta_extremum(double* lambda0, double* eta_max) {
  if (!lambda0 || !eta_max) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    const auto [l0, em] = gwg::eta_curve_extremum();
    *lambda0 = l0;
    *eta_max = em;
  });
}

gw_status gw_duration_check(const gw_ladder* l, double tol, long max_iter,
                            gw_duration_report* out) {
  if (!l || !out) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    const auto r = gwg::duration_check(l->impl, controls(tol, max_iter));
    out->nl_equals_ck = r.nl_equals_ck ? 1 : 0;
    out->slope_h = r.slope_h;
    out->abs_slope_f = r.abs_slope_f;
    out->finite_expected_duration_certified =
        r.finite_expected_duration_certified ? 1 : 0;
    out->conjecture_holds = r.conjecture_holds ? 1 : 0;
  });
}

gw_status gw_analytic_horizon(const gw_ladder* l, gw_variant v, int n,
                              double* loss, double* win) {
  if (!l || !loss || !win) return set_error(GW_ERR_INVALID, "NULL pointer");
  return wrap([&] {
    const auto [lo, wi] = gwg::analytic_horizon(l->impl, to_variant(v), n);
    *loss = lo;
    *win = wi;
  });
}

gw_status gw_mc_estimate(const gw_dist* d, int k, gw_variant v, int horizon,
                         long samples, unsigned long long seed, long node_cap,
                         gw_mc_row* rows, long* excluded) {
  if (!d || !rows) return set_error(GW_ERR_INVALID, "NULL pointer");
  if (k < 1) return set_error(GW_ERR_INVALID, "k must be >= 1");
  return wrap([&] {
    gwg::GameSpec spec{k, to_variant(v), d->impl};
    const auto est = gwg::mc_estimate(spec, horizon, samples, seed,
                                      node_cap > 0 ? node_cap : 1000000);
    for (int n = 1; n <= horizon; ++n) {
      const auto& r = est.rows[size_t(n)];
      rows[n - 1] = {r.loss, r.win, r.se_loss, r.se_win};
    }
    if (excluded) *excluded = est.excluded;
  });
}

gw_status gw_mc_duration(const gw_dist* d, int k, gw_variant v, int horizon,
                         long samples, unsigned long long seed, long node_cap,
                         double* duration_partial_sum,
                         double* undecided_fraction, long* excluded) {
  if (!d || !duration_partial_sum || !undecided_fraction) {
    return set_error(GW_ERR_INVALID, "NULL pointer");
  }
  if (k < 1) return set_error(GW_ERR_INVALID, "k must be >= 1");
  return wrap([&] {
    gwg::GameSpec spec{k, to_variant(v), d->impl};
    const auto dur = gwg::mc_duration(spec, horizon, samples, seed,
                                      node_cap > 0 ? node_cap : 1000000);
    *duration_partial_sum = dur.duration_partial_sum;
    *undecided_fraction = dur.undecided_fraction;
    if (excluded) *excluded = dur.excluded;
  });
}

}  // extern "C"
