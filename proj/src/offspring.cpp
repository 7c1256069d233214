#include "offspring.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace gwg {

namespace {

double clamp_unit(double x, const char* what) {
  if (x < -kEdgeTol || x > 1.0 + kEdgeTol) {
    throw DomainError(std::string(what) + " outside [0,1]: " +
                      std::to_string(x));
  }
  if (x < 0.0) return 0.0;
  if (x > 1.0) return 1.0;
  return x;
}

}  // namespace

OffspringDistribution OffspringDistribution::poisson(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) {
    throw InvalidArgument("Poisson rate must be positive and finite");
  }
  OffspringDistribution d;
  d.is_poisson_ = true;
  d.rate_ = rate;
  d.chi0_ = std::exp(-rate);
  if (!(d.chi0_ > 0.0)) {
    throw InvalidArgument("Poisson rate too large: mass at zero underflows");
  }
  return d;
}

OffspringDistribution OffspringDistribution::finite_support(
    std::vector<double> mass) {
  if (mass.empty()) throw InvalidArgument("empty mass vector");
  double sum = 0.0;
  for (double m : mass) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw InvalidArgument("masses must be nonnegative and finite");
    }
    sum += m;
  }
  if (std::fabs(sum - 1.0) > 1e-12) {
    throw InvalidArgument("masses must sum to 1 within 1e-12, got " +
                          std::to_string(sum));
  }
  if (!(mass[0] > 0.0 && mass[0] < 1.0)) {
    throw InvalidArgument("mass at zero must lie strictly in (0,1)");
  }
  OffspringDistribution d;
  d.chi0_ = mass[0];
  d.mass_ = std::move(mass);
  return d;
}

double OffspringDistribution::rate() const {
  if (!is_poisson_) throw InvalidArgument("rate() on a FiniteSupport dist");
  return rate_;
}

const std::vector<double>& OffspringDistribution::mass() const {
  if (is_poisson_) throw InvalidArgument("mass() on a Poisson dist");
  return mass_;
}

double OffspringDistribution::mean() const {
  if (is_poisson_) return rate_;
  double m = 0.0;
  for (size_t i = 1; i < mass_.size(); ++i) m += double(i) * mass_[i];
  return m;
}

double OffspringDistribution::pgf(double x) const {
  x = clamp_unit(x, "pgf argument");
  if (is_poisson_) return std::exp(rate_ * (x - 1.0));
  double acc = 0.0;
  for (size_t i = mass_.size(); i-- > 0;) acc = acc * x + mass_[i];
  return acc;
}

double OffspringDistribution::pgf_deriv(double x, int order) const {
  if (order != 1 && order != 2) {
    throw InvalidArgument("pgf_deriv order must be 1 or 2");
  }
  x = clamp_unit(x, "pgf_deriv argument");
  if (is_poisson_) {
    double g = std::exp(rate_ * (x - 1.0));
    return order == 1 ? rate_ * g : rate_ * rate_ * g;
  }
  double acc = 0.0;
  if (order == 1) {
    for (size_t i = mass_.size(); i-- > 1;) acc = acc * x + double(i) * mass_[i];
  } else {
    for (size_t i = mass_.size(); i-- > 2;) {
      acc = acc * x + double(i) * double(i - 1) * mass_[i];
    }
  }
  return acc;
}

}  // namespace gwg
