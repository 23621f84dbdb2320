#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <utility>

// Independent oracle for extreme inner products over an intersection of two
// balls: projected ascent with Dykstra projections.  Used to cross-check the
// closed-form case analysis in the geometry module.

namespace testsupport {

inline Eigen::VectorXd project_ball(const Eigen::VectorXd& p, const Eigen::VectorXd& c,
                                    double r) {
  Eigen::VectorXd d = p - c;
  double n = d.norm();
  if (n <= r) return p;
  return c + d * (r / n);
}

// Dykstra's alternating projection onto B(c1,r1) ∩ B(c2,r2)
inline Eigen::VectorXd project_intersection(Eigen::VectorXd start,
                                            const Eigen::VectorXd& c1, double r1,
                                            const Eigen::VectorXd& c2, double r2,
                                            int iters = 300) {
  Eigen::VectorXd x = std::move(start);
  Eigen::VectorXd q1 = Eigen::VectorXd::Zero(x.size());
  Eigen::VectorXd q2 = Eigen::VectorXd::Zero(x.size());
  for (int k = 0; k < iters; ++k) {
    Eigen::VectorXd y = project_ball(x + q1, c1, r1);
    q1 = x + q1 - y;
    Eigen::VectorXd x2 = project_ball(y + q2, c2, r2);
    q2 = y + q2 - x2;
    x = std::move(x2);
  }
  return x;
}

// max over the intersection of <theta, u>.  A ball intersection is a strongly
// convex set, so fixed-step projected ascent converges linearly for a linear
// objective.
inline double max_inner_oracle(const Eigen::VectorXd& theta, const Eigen::VectorXd& c1,
                               double r1, const Eigen::VectorXd& c2, double r2,
                               int iters = 3000) {
  double tn = theta.norm();
  if (tn == 0.0) return 0.0;
  Eigen::VectorXd u =
      project_intersection(0.5 * (c1 + c2), c1, r1, c2, r2);
  double step = 0.25 * std::max(1e-6, std::min(r1, r2)) / tn;
  for (int k = 0; k < iters; ++k)
    u = project_intersection(u + step * theta, c1, r1, c2, r2);
  return theta.dot(u);
}

inline double min_inner_oracle(const Eigen::VectorXd& theta, const Eigen::VectorXd& c1,
                               double r1, const Eigen::VectorXd& c2, double r2,
                               int iters = 3000) {
  return -max_inner_oracle(-theta, c1, r1, c2, r2, iters);
}

}  // namespace testsupport
