#include "recursors.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace gwg {

namespace {

double checked_unit(double v, const char* what) {
  if (v < -kEdgeTol || v > 1.0 + kEdgeTol) {
    throw DomainError(std::string(what) + " exits [0,1]: " + std::to_string(v));
  }
  if (v < 0.0) return 0.0;
  if (v > 1.0) return 1.0;
  return v;
}

// Shared evaluator for g and gamma. With args (x_0,...,x_j), the value at
// (depth d, head i) is the operator applied to (x_i, x_{j-d+1}, ..., x_j);
// the recursion pairs head i with head j-d+1 one depth down.
double nested_eval(const OffspringDistribution& dist,
                   std::span<const double> args, bool shifted) {
  const size_t n = args.size();
  if (n < 2) throw InvalidArgument("nested operator needs >= 2 arguments");
  const size_t j = n - 1;
  if (j == 1) return args[0] - args[1];

  const double chi0 = shifted ? dist.chi0() : 0.0;
  std::vector<double> prev(j), cur;
  for (size_t i = 0; i < j; ++i) prev[i] = args[i] - args[j];
  for (size_t d = 2; d <= j; ++d) {
    cur.assign(j - d + 1, 0.0);
    const double second =
        dist.pgf(checked_unit(chi0 + prev[j - d + 1], "inner value"));
    for (size_t i = 0; i + d <= j; ++i) {
      cur[i] = dist.pgf(checked_unit(chi0 + prev[i], "inner value")) - second;
    }
    prev.swap(cur);
  }
  return prev[0];
}

}  // namespace

double g_eval(const OffspringDistribution& dist, std::span<const double> args) {
  return nested_eval(dist, args, false);
}

double gamma_eval(const OffspringDistribution& dist,
                  std::span<const double> args) {
  return nested_eval(dist, args, true);
}

double h_eval(const Ladder& ladder, double x) {
  const int k = ladder.k();
  if (x < -kEdgeTol || x > ladder.c(k - 1) + kEdgeTol) {
    throw DomainError("h_eval: x outside [0, c_{k-1}]");
  }
  std::vector<double> f;
  ladder.f_chain(k, x, f);
  const double g = g_eval(ladder.dist(), f);
  return ladder.dist().pgf(checked_unit(g, "g_k value"));
}

double j_eval(const Ladder& ladder, double x) {
  const int k = ladder.k();
  if (x < -kEdgeTol || x > ladder.c(k - 1) + kEdgeTol) {
    throw DomainError("j_eval: x outside [0, c_{k-1}]");
  }
  std::vector<double> f;
  ladder.f_chain(k, x, f);
  const double chi0 = ladder.dist().chi0();
  const double gm = gamma_eval(ladder.dist(), f);
  return ladder.dist().pgf(checked_unit(chi0 + gm, "gamma_k value")) - chi0;
}

std::vector<ClassProb> class_probs(const Ladder& ladder, double x) {
  const int k = ladder.k();
  std::vector<double> f;
  ladder.f_chain(k, x, f);
  std::vector<ClassProb> out;
  std::vector<double> args;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j <= k; ++j) {
      args.clear();
      args.push_back(f[size_t(j - i - 1)]);
      args.push_back(f[size_t(j - i)]);
      for (int t = k - i + 1; t <= k; ++t) args.push_back(f[size_t(t)]);
      out.push_back({i, j, g_eval(ladder.dist(), args)});
    }
  }
  return out;
}

std::array<double, 4> system_residual_k2(const Ladder& ladder, double nl2,
                                         double p01, double p02, double p12) {
  if (ladder.k() != 2) throw InvalidArgument("system_residual_k2 needs k=2");
  for (double v : {nl2, p01, p02, p12}) {
    if (v < -kEdgeTol || v > 1.0 + kEdgeTol) {
      throw DomainError("system_residual_k2: input outside [0,1]");
    }
  }
  const OffspringDistribution& dist = ladder.dist();
  std::array<double, 4> r;
  r[0] = nl2 - dist.pgf(checked_unit(p12, "p12"));
  r[1] = p01 - (1.0 - dist.pgf(checked_unit(1.0 - nl2, "1-nl2")));
  r[2] = p12 - (dist.pgf(checked_unit(p01 + p02, "p01+p02")) -
                dist.pgf(checked_unit(p02, "p02")));
  r[3] = p02 - (dist.pgf(checked_unit(1.0 - nl2, "1-nl2")) -
                dist.pgf(checked_unit(1.0 - nl2 - p01, "1-nl2-p01")));
  return r;
}

}  // namespace gwg
