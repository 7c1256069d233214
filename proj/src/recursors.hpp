#pragma once

#include <array>
#include <span>
#include <vector>

#include "ladder.hpp"
#include "offspring.hpp"

namespace gwg {

enum class Variant { Normal, Misere };

struct GameSpec {
  int k = 1;
  Variant variant = Variant::Normal;
  OffspringDistribution dist;
};

// Nested difference operator:
//   g_1(x,y) = x - y,
//   g_j(x_0,...,x_j) = G(g_{j-1}(x_0,x_2,...,x_j)) - G(g_{j-1}(x_1,x_2,...,x_j)).
// Every sub-call keeps a suffix of the argument list plus one head element,
// so values are memoized by (depth, head index) and cost is O(j^2) pgf calls.
double g_eval(const OffspringDistribution& dist, std::span<const double> args);

// Same recursion with G(chi(0) + inner) in place of G(inner); gamma_1 = g_1.
double gamma_eval(const OffspringDistribution& dist,
                  std::span<const double> args);

// H_k(x) = G(g_k(F_0(x),...,F_k(x))) on [0, c_{k-1}].
double h_eval(const Ladder& ladder, double x);

// J_k(x) = G(chi(0) + gamma_k(F_0(x),...,F_k(x))) - chi(0) on [0, c_{k-1}].
double j_eval(const Ladder& ladder, double x);

struct ClassProb {
  int i;
  int j;
  double p;
};

// All class probabilities p_{i,j} for 0 <= i < j <= k at the given x:
//   p_{i,j} = g_{i+1}(F_{j-i-1}(x), F_{j-i}(x), F_{k-i+1}(x), ..., F_k(x)).
std::vector<ClassProb> class_probs(const Ladder& ladder, double x);

// Residuals of the four k=2 fixed-point equations at the given values:
//   nl2 = G(p12), p01 = 1 - G(1-nl2),
//   p12 = G(p01+p02) - G(p02), p02 = G(1-nl2) - G(1-nl2-p01).
std::array<double, 4> system_residual_k2(const Ladder& ladder, double nl2,
                                         double p01, double p02, double p12);

}  // namespace gwg
