#pragma once

#include <stdexcept>
#include <string>

namespace optibound {

// malformed input data; line is 1-based
struct parse_error : std::runtime_error {
  int line;
  parse_error(const std::string& msg, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// solver failed to reach its certificate within the iteration budget
struct solver_error : std::runtime_error {
  double achieved;
  solver_error(const std::string& msg, double achieved_residual)
      : std::runtime_error(msg + " (achieved " + std::to_string(achieved_residual) + ")"),
        achieved(achieved_residual) {}
};

// mixing feature vectors that live in different spaces, kernel mismatches, ...
struct compat_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// degenerate geometric configuration, e.g. intersecting disjoint balls
struct geometry_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace optibound
