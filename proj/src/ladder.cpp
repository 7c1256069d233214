#include "ladder.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace gwg {

Ladder::Ladder(OffspringDistribution dist, int k, double tol)
    : dist_(std::move(dist)), k_(k), tol_(tol) {
  if (k < 1) throw InvalidArgument("k must be >= 1");
  if (!(tol > 0.0)) throw InvalidArgument("tol must be positive");
  c_.resize(size_t(k) + 1);
  c_[0] = 1.0;
  const double chi0 = dist_.chi0();
  for (int i = 1; i <= k; ++i) {
    double lo = chi0;
    double hi = c_[size_t(i) - 1];
    double flo = f_unchecked(i, lo) - lo;
    double fhi = f_unchecked(i, hi) - hi;
    if (!(flo > 0.0) || !(fhi < 0.0)) {
      throw BracketError("c_" + std::to_string(i) +
                         " bracket sign check failed");
    }
    while (hi - lo > tol_) {
      double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;  // double precision exhausted
      double fm = f_unchecked(i, mid) - mid;
      if (fm > 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    c_[size_t(i)] = 0.5 * (lo + hi);
  }
}

double Ladder::c(int i) const {
  if (i < 0 || i > k_) throw InvalidArgument("c index out of range");
  return c_[size_t(i)];
}

double Ladder::f_unchecked(int i, double x) const {
  double v = 1.0;  // F_0
  for (int j = 1; j <= i; ++j) {
    double arg = v - x;
    if (arg < -kEdgeTol || arg > 1.0 + kEdgeTol) {
      throw DomainError("F_" + std::to_string(j) +
                        " inner argument outside [0,1]");
    }
    if (arg < 0.0) arg = 0.0;
    if (arg > 1.0) arg = 1.0;
    v = dist_.pgf(arg);
  }
  return v;
}

double Ladder::f(int i, double x) const {
  if (i < 0 || i > k_) throw InvalidArgument("ladder index out of range");
  if (x < -kEdgeTol) throw DomainError("f_eval: x < 0");
  if (x < 0.0) x = 0.0;
  if (i == 0) return 1.0;
  if (x > c_[size_t(i) - 1] + kEdgeTol) {
    throw DomainError("f_eval: x beyond c_" + std::to_string(i - 1));
  }
  return f_unchecked(i, x);
}

void Ladder::f_chain(int i, double x, std::vector<double>& out) const {
  if (i < 0 || i > k_) throw InvalidArgument("ladder index out of range");
  if (x < -kEdgeTol) throw DomainError("f_chain: x < 0");
  if (x < 0.0) x = 0.0;
  if (i >= 1 && x > c_[size_t(i) - 1] + kEdgeTol) {
    throw DomainError("f_chain: x beyond c_" + std::to_string(i - 1));
  }
  out.resize(size_t(i) + 1);
  out[0] = 1.0;
  for (int j = 1; j <= i; ++j) {
    double arg = out[size_t(j) - 1] - x;
    if (arg < -kEdgeTol || arg > 1.0 + kEdgeTol) {
      throw DomainError("f_chain inner argument outside [0,1]");
    }
    if (arg < 0.0) arg = 0.0;
    if (arg > 1.0) arg = 1.0;
    out[size_t(j)] = dist_.pgf(arg);
  }
}

double Ladder::f_deriv(int i, double x) const {
  if (i < 1 || i > k_) throw InvalidArgument("f_deriv index out of range");
  if (!(x > 0.0) || !(x < c_[size_t(i) - 1])) {
    throw DomainError("f_deriv: x outside (0, c_" + std::to_string(i - 1) +
                      ")");
  }
  std::vector<double> f;
  f_chain(i, x, f);
  if (dist_.is_poisson()) {
    const double rate = dist_.rate();
    // sum_{t=1}^{i-1} rate^{i-t} prod_{j=t}^{i-1} F_j(x), accumulated from
    // t = i-1 downward so both factors grow one step at a time.
    double sum = 0.0;
    double prod = 1.0;
    double pow_rate = 1.0;
    for (int t = i - 1; t >= 1; --t) {
      prod *= f[size_t(t)];
      pow_rate *= rate;
      sum += pow_rate * prod;
    }
    return -rate * (sum + 1.0) * f[size_t(i)];
  }
  double d = -dist_.pgf_deriv(1.0 - x, 1);  // F_1'
  for (int j = 2; j <= i; ++j) {
    d = dist_.pgf_deriv(f[size_t(j) - 1] - x, 1) * (d - 1.0);
  }
  return d;
}

}  // namespace gwg
