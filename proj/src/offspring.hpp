#pragma once

#include <vector>

namespace gwg {

// Tolerance used everywhere a value is allowed to graze the edge of its
// mathematical domain before we call it a bug.
inline constexpr double kEdgeTol = 1e-12;

// Offspring distribution seen purely through its pgf G and derivatives.
// Either Poisson(rate) with the closed form G(x) = e^{rate(x-1)}, or an
// explicit finite mass vector over {0,...,m}. Immutable after construction.
class OffspringDistribution {
 public:
  static OffspringDistribution poisson(double rate);
  static OffspringDistribution finite_support(std::vector<double> mass);

  bool is_poisson() const { return is_poisson_; }
  double rate() const;                      // Poisson only
  const std::vector<double>& mass() const;  // FiniteSupport only

  double chi0() const { return chi0_; }
  double mean() const;

  double pgf(double x) const;
  double pgf_deriv(double x, int order) const;

 private:
  OffspringDistribution() = default;

  bool is_poisson_ = false;
  double rate_ = 0.0;
  std::vector<double> mass_;
  double chi0_ = 0.0;
};

}  // namespace gwg
