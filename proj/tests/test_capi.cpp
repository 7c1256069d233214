#include <cmath>
#include <cstring>
#include <vector>

#include <doctest.h>

#include "gwgames.h"

TEST_CASE("status strings and argument validation") {
  CHECK(std::strcmp(gw_status_str(GW_OK), "ok") == 0);
  CHECK(gw_dist_poisson(2.0, nullptr) == GW_ERR_INVALID);
  gw_dist* d = nullptr;
  CHECK(gw_dist_poisson(-1.0, &d) == GW_ERR_INVALID);
  CHECK(std::strlen(gw_last_error()) > 0);
  CHECK(d == nullptr);
}

TEST_CASE("distribution handles") {
  gw_dist* d = nullptr;
  REQUIRE(gw_dist_poisson(2.0, &d) == GW_OK);
  CHECK(gw_dist_chi0(d) == doctest::Approx(std::exp(-2.0)));
  double y = 0.0;
  CHECK(gw_pgf(d, 0.5, &y) == GW_OK);
  CHECK(y == doctest::Approx(std::exp(-1.0)));
  CHECK(gw_pgf(d, 1.5, &y) == GW_ERR_DOMAIN);
  CHECK(gw_pgf_deriv(d, 1.0, 1, &y) == GW_OK);
  CHECK(y == doctest::Approx(2.0));
  gw_dist_free(d);

  const double mass[] = {0.5, 0.5};
  gw_dist* f = nullptr;
  REQUIRE(gw_dist_finite(mass, 2, &f) == GW_OK);
  CHECK(gw_pgf(f, 0.4, &y) == GW_OK);
  CHECK(y == doctest::Approx(0.7));
  gw_dist_free(f);

  const double bad[] = {0.5, 0.6};
  CHECK(gw_dist_finite(bad, 2, &f) == GW_ERR_INVALID);
}

TEST_CASE("ladder through the C interface") {
  gw_dist* d = nullptr;
  REQUIRE(gw_dist_poisson(2.0, &d) == GW_OK);
  gw_ladder* l = nullptr;
  REQUIRE(gw_ladder_new(d, 2, 0.0, &l) == GW_OK);
  CHECK(gw_ladder_k(l) == 2);
  double c2 = 0.0;
  CHECK(gw_ladder_c(l, 2, &c2) == GW_OK);
  CHECK(c2 == doctest::Approx(0.26196399).epsilon(5e-4));
  CHECK(gw_ladder_c(l, 7, &c2) == GW_ERR_INVALID);
  double fx = 0.0;
  CHECK(gw_ladder_f(l, 1, 0.1, &fx) == GW_OK);
  CHECK(fx == doctest::Approx(std::exp(-0.2)));
  CHECK(gw_ladder_f(l, 1, 1.5, &fx) == GW_ERR_DOMAIN);
  double dfx = 0.0;
  CHECK(gw_ladder_f_deriv(l, 1, 0.1, &dfx) == GW_OK);
  CHECK(dfx == doctest::Approx(-2.0 * std::exp(-0.2)));

  double h = 0.0, j = 0.0;
  CHECK(gw_h(l, 0.0, &h) == GW_OK);
  CHECK(h == doctest::Approx(std::exp(-2.0)));
  CHECK(gw_j(l, 0.0, &j) == GW_OK);
  CHECK(j + std::exp(-2.0) ==
        doctest::Approx(std::exp(2.0 * (std::exp(-2.0) - 1.0))));
  gw_ladder_free(l);
  gw_dist_free(d);
}

TEST_CASE("solvers and phase info through the C interface") {
  gw_dist* d = nullptr;
  REQUIRE(gw_dist_poisson(3.0, &d) == GW_OK);
  gw_ladder* l = nullptr;
  REQUIRE(gw_ladder_new(d, 2, 0.0, &l) == GW_OK);

  double nl = 0.0, ml = 0.0, chat = 0.0;
  CHECK(gw_solve_nl(l, 0.0, 0, &nl) == GW_OK);
  CHECK(gw_solve_ml(l, 0.0, 0, &ml) == GW_OK);
  CHECK(gw_solve_chat(l, 0.0, &chat) == GW_OK);
  CHECK(ml <= nl + 1e-12);
  CHECK(ml <= chat + 1e-10);

  double h_at_nl = 0.0;
  CHECK(gw_h(l, nl, &h_at_nl) == GW_OK);
  CHECK(std::fabs(h_at_nl - nl) < 1e-11);

  gw_outcome_triple t{};
  gw_phase_info info{};
  REQUIRE(gw_solve_outcomes(l, GW_NORMAL, 0.0, 0, &t, &info) == GW_OK);
  CHECK(t.loss + t.win + t.draw == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.draw > 0.0);
  CHECK(info.draw_positive == 1);
  CHECK(info.eta == doctest::Approx(3.0 * info.c_k));
  CHECK(info.chat_k == doctest::Approx(chat));

  gw_outcome_triple tm{};
  REQUIRE(gw_solve_outcomes(l, GW_MISERE, 0.0, 0, &tm, nullptr) == GW_OK);
  CHECK(tm.loss == doctest::Approx(ml));

  double slope = 0.0, slope_fd = 0.0;
  CHECK(gw_h_slope_at_ck(l, &slope) == GW_OK);
  CHECK(gw_h_slope_at_ck_fd(l, &slope_fd) == GW_OK);
  CHECK(slope == doctest::Approx(slope_fd).epsilon(1e-5));

  gw_duration_report dr{};
  CHECK(gw_duration_check(l, 0.0, 0, &dr) == GW_OK);
  CHECK(dr.nl_equals_ck == 0);

  double probs[3];
  int pi[3], pj[3];
  size_t count = 0;
  REQUIRE(gw_class_probs(l, nl, probs, pi, pj, 3, &count) == GW_OK);
  REQUIRE(count == 3);
  // the classes with i = 0 partition the win event
  double win_mass = 0.0;
  for (size_t idx = 0; idx < count; ++idx) {
    if (pi[idx] == 0) win_mass += probs[idx];
  }
  CHECK(win_mass == doctest::Approx(t.win).epsilon(1e-9));
  CHECK(gw_class_probs(l, nl, probs, pi, pj, 2, &count) == GW_ERR_INVALID);

  double r[4];
  CHECK(gw_system_residual_k2(l, nl, probs[0], probs[1], probs[2], r) ==
        GW_OK);
  for (int i = 0; i < 4; ++i) CHECK(std::fabs(r[i]) < 1e-9);

  gw_ladder_free(l);
  gw_dist_free(d);
}

TEST_CASE("global constants through the C interface") {
  double lc = 0.0;
  CHECK(gw_lambda_c(0.0, &lc) == GW_OK);
  CHECK(lc == doctest::Approx(2.410191).epsilon(1e-5));
  double l0 = 0.0, em = 0.0;
  CHECK(gw_eta_extremum(&l0, &em) == GW_OK);
  CHECK(l0 == doctest::Approx(2.436338).epsilon(1e-5));
  CHECK(em == doctest::Approx(0.5283993).epsilon(1e-5));
}

TEST_CASE("Monte Carlo through the C interface") {
  gw_dist* d = nullptr;
  REQUIRE(gw_dist_poisson(1.2, &d) == GW_OK);
  gw_ladder* l = nullptr;
  REQUIRE(gw_ladder_new(d, 1, 0.0, &l) == GW_OK);

  const int horizon = 3;
  const long samples = 10000;
  std::vector<gw_mc_row> rows(horizon);
  long excluded = -1;
  REQUIRE(gw_mc_estimate(d, 1, GW_NORMAL, horizon, samples, 21, 0, rows.data(),
                         &excluded) == GW_OK);
  CHECK(excluded == 0);
  for (int n = 1; n <= horizon; ++n) {
    double al = 0.0, aw = 0.0;
    REQUIRE(gw_analytic_horizon(l, GW_NORMAL, n, &al, &aw) == GW_OK);
    const double sel = std::sqrt(al * (1 - al) / double(samples)) + 1e-12;
    const double sew = std::sqrt(aw * (1 - aw) / double(samples)) + 1e-12;
    CHECK(std::fabs(rows[n - 1].loss - al) < 4.0 * sel);
    CHECK(std::fabs(rows[n - 1].win - aw) < 4.0 * sew);
  }

  double dps = 0.0, uf = 0.0;
  CHECK(gw_mc_duration(d, 1, GW_NORMAL, 15, 5000, 3, 0, &dps, &uf,
                       &excluded) == GW_OK);
  CHECK(uf < 0.05);

  CHECK(gw_mc_estimate(d, 0, GW_NORMAL, horizon, samples, 21, 0, rows.data(),
                       nullptr) == GW_ERR_INVALID);
  gw_ladder_free(l);
  gw_dist_free(d);
}
