#pragma once

#include <vector>

#include "offspring.hpp"

namespace gwg {

// The function ladder F_0 = 1, F_i(x) = G(F_{i-1}(x) - x), together with the
// fixed points c_0 = 1 > c_1 > ... > c_k > chi(0). Each c_i is found by
// bisection of F_i(x) - x on [chi(0), c_{i-1}], where the bracket is
// guaranteed: F_i(chi(0)) > chi(0) and F_i(c_{i-1}) = chi(0) < c_{i-1}.
class Ladder {
 public:
  Ladder(OffspringDistribution dist, int k, double tol = 1e-13);

  const OffspringDistribution& dist() const { return dist_; }
  int k() const { return k_; }
  double tol() const { return tol_; }

  double c(int i) const;  // c_0 == 1

  // F_i(x) for 0 <= i <= k, 0 <= x <= c_{i-1}.
  double f(int i, double x) const;

  // Fills out[0..i] with F_0(x)..F_i(x) in one bottom-up pass.
  void f_chain(int i, double x, std::vector<double>& out) const;

  // F_i'(x) on (0, c_{i-1}). Poisson uses the closed form
  //   F_i' = -rate [ sum_{t=1}^{i-1} rate^{i-t} prod_{j=t}^{i-1} F_j + 1 ] F_i,
  // FiniteSupport chains F_{i+1}' = G'(F_i - x)(F_i' - 1).
  double f_deriv(int i, double x) const;

 private:
  double f_unchecked(int i, double x) const;

  OffspringDistribution dist_;
  int k_;
  double tol_;
  std::vector<double> c_;
};

}  // namespace gwg
