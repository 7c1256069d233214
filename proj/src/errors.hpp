#pragma once

#include <stdexcept>
#include <string>

namespace gwg {

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidArgument : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HorizonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoConvergence : std::runtime_error {
  NoConvergence(const std::string& msg, double iterate, double step)
      : std::runtime_error(msg), last_iterate(iterate), last_step(step) {}
  double last_iterate;
  double last_step;
};

}  // namespace gwg
