#include <cmath>
#include <cstdint>
#include <vector>

#include <doctest.h>

#include "errors.hpp"
#include "ladder.hpp"
#include "offspring.hpp"
#include "recursors.hpp"

using gwg::Ladder;
using gwg::OffspringDistribution;

namespace {

// Naive exponential-time reference for the nested difference operator.
double g_ref(const OffspringDistribution& d, const std::vector<double>& a,
             bool shifted) {
  if (a.size() == 2) return a[0] - a[1];
  std::vector<double> left{a[0]}, right{a[1]};
  left.insert(left.end(), a.begin() + 2, a.end());
  right.insert(right.end(), a.begin() + 2, a.end());
  const double off = shifted ? d.chi0() : 0.0;
  return d.pgf(off + g_ref(d, left, shifted)) -
         d.pgf(off + g_ref(d, right, shifted));
}

uint64_t rng_state = 12345;
double rnd() {
  rng_state = rng_state * 6364136223846793005ULL + 1442695040888963407ULL;
  return double(rng_state >> 11) / 9007199254740992.0;
}

}  // namespace

TEST_CASE("g_1 is a plain difference") {
  auto d = OffspringDistribution::poisson(2.0);
  std::vector<double> a{0.7, 0.2};
  CHECK(gwg::g_eval(d, a) == doctest::Approx(0.5));
  CHECK(gwg::gamma_eval(d, a) == doctest::Approx(0.5));
}

TEST_CASE("equal leading arguments give zero") {
  auto d = OffspringDistribution::poisson(1.5);
  for (size_t j = 1; j <= 4; ++j) {
    std::vector<double> a(j + 1, 0.0);
    a[0] = 0.6;
    a[1] = 0.6;
    for (size_t t = 2; t < a.size(); ++t) a[t] = 0.6 - 0.1 * double(t);
    CHECK(gwg::g_eval(d, a) == doctest::Approx(0.0));
    CHECK(gwg::gamma_eval(d, a) == doctest::Approx(0.0));
  }
}

TEST_CASE("memoized evaluation matches the naive recursion") {
  std::vector<OffspringDistribution> dists;
  dists.push_back(OffspringDistribution::poisson(2.0));
  dists.push_back(
      OffspringDistribution::finite_support({0.3, 0.2, 0.3, 0.2}));
  for (const auto& d : dists) {
    for (size_t j = 1; j <= 5; ++j) {
      for (int rep = 0; rep < 20; ++rep) {
        // decreasing arguments below 1 - chi0 keep every nested value, with
        // or without the chi0 shift, inside the pgf domain
        std::vector<double> a(j + 1);
        double v = 0.95 * (1.0 - d.chi0());
        for (auto& x : a) {
          v *= 0.3 + 0.7 * rnd();
          x = v;
        }
        CHECK(gwg::g_eval(d, a) ==
              doctest::Approx(g_ref(d, a, false)).epsilon(1e-12));
        CHECK(gwg::gamma_eval(d, a) ==
              doctest::Approx(g_ref(d, a, true)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("gamma_2 Poisson shift identity") {
  // For Poisson, G(chi0 + t) = e^{rate chi0} G(t), so gamma_2 is a constant
  // multiple of g_2.
  const double lam = 2.0;
  auto d = OffspringDistribution::poisson(lam);
  const double scale = std::exp(lam * std::exp(-lam));
  for (int t = 0; t < 10; ++t) {
    std::vector<double> a{0.9 - 0.05 * t, 0.6 - 0.05 * t, 0.3 - 0.03 * t};
    CHECK(gwg::gamma_eval(d, a) ==
          doctest::Approx(scale * gwg::g_eval(d, a)).epsilon(1e-12));
  }
}

TEST_CASE("H and J at the endpoints") {
  for (double lam : {0.8, 2.0, 5.0}) {
    for (int k : {1, 2, 3}) {
      Ladder lad(OffspringDistribution::poisson(lam), k);
      const double chi0 = lad.dist().chi0();
      // all F_i(0) = 1 so the nested difference vanishes
      CHECK(gwg::h_eval(lad, 0.0) == doctest::Approx(chi0));
      CHECK(gwg::j_eval(lad, 0.0) + chi0 ==
            doctest::Approx(lad.dist().pgf(chi0)));
      // c_k is a fixed point of H_k
      CHECK(gwg::h_eval(lad, lad.c(k)) ==
            doctest::Approx(lad.c(k)).epsilon(1e-9));
    }
  }
}

TEST_CASE("H_1 closed form") {
  Ladder lad(OffspringDistribution::poisson(2.0), 1);
  const auto& d = lad.dist();
  for (int t = 0; t <= 32; ++t) {
    const double x = lad.c(0) * double(t) / 32.0;
    CHECK(gwg::h_eval(lad, x) ==
          doctest::Approx(d.pgf(1.0 - d.pgf(1.0 - x))).epsilon(1e-12));
  }
}

TEST_CASE("H and J are nondecreasing on [0, c_{k-1}]") {
  for (double lam : {1.5, 3.0}) {
    for (int k : {1, 2}) {
      Ladder lad(OffspringDistribution::poisson(lam), k);
      double ph = gwg::h_eval(lad, 0.0);
      double pj = gwg::j_eval(lad, 0.0);
      for (int t = 1; t <= 64; ++t) {
        const double x = lad.c(k - 1) * double(t) / 64.0;
        const double hh = gwg::h_eval(lad, x);
        const double jj = gwg::j_eval(lad, x);
        CHECK(hh >= ph - 1e-12);
        CHECK(jj >= pj - 1e-12);
        ph = hh;
        pj = jj;
      }
    }
  }
}

TEST_CASE("class probabilities") {
  Ladder lad(OffspringDistribution::poisson(3.0), 2);
  const auto& d = lad.dist();
  const double x = 0.1;
  auto probs = gwg::class_probs(lad, x);
  REQUIRE(probs.size() == 3);  // (0,1), (0,2), (1,2)
  // p_{0,1} = F_0 - F_1 = 1 - G(1-x)
  for (const auto& cp : probs) {
    CHECK(cp.p >= 0.0);
    if (cp.i == 0 && cp.j == 1) {
      CHECK(cp.p == doctest::Approx(1.0 - d.pgf(1.0 - x)).epsilon(1e-12));
    }
  }
  // at x = 0 every class is empty
  for (const auto& cp : gwg::class_probs(lad, 0.0)) {
    CHECK(cp.p == doctest::Approx(0.0));
  }
}

TEST_CASE("k=2 system residuals") {
  Ladder lad(OffspringDistribution::poisson(3.0), 2);
  const double chi0 = lad.dist().chi0();
  auto r0 = gwg::system_residual_k2(lad, 0.0, 0.0, 0.0, 0.0);
  CHECK(r0[0] == doctest::Approx(-chi0));
  CHECK(r0[1] == doctest::Approx(0.0));
  CHECK_THROWS_AS(
      gwg::system_residual_k2(Ladder(lad.dist(), 1), 0.1, 0.1, 0.1, 0.1),
      gwg::InvalidArgument);
}
