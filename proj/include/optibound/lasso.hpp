#pragma once

#include <vector>

#include "optibound/geometry.hpp"
#include "optibound/trainer.hpp"

namespace optibound {

// Ball in the lasso dual containing the untrained dual optimum alpha*_lambda
// == (y - X beta*_lambda) / lambda: center (alpha~ + y/lambda)/2, radius
// |alpha~ - y/lambda|/2.  Valid only for dual-feasible alpha~
// (|X' alpha~|_inf <= 1); the optimum is the projection of y/lambda onto the
// feasible set and the obtuse-angle property needs a feasible reference.
struct LassoDualBall {
  Eigen::VectorXd center;
  double radius = 0.0;
  double lambda = 0.0;
};

LassoDualBall lasso_dual_ball(const SpMat& x, const Eigen::VectorXd& alpha_tilde,
                              const Eigen::VectorXd& y, double lambda);

// per-instance bounds on the residual y_i - <x_i, beta*_lambda> = lambda alpha*_i
std::vector<Interval> residual_bounds(const LassoDualBall& ball);
Interval residual_bounds(const LassoDualBall& ball, int i);

// columns j certified to have beta*_j == 0: max over the ball of |<z_j, alpha>|
// stays below 1.  Indices are 0-based and ascending.
std::vector<int> safe_screen(const SpMat& x, const LassoDualBall& ball);

// smallest lambda with beta* == 0
double lambda_max(const SpMat& x, const Eigen::VectorXd& y);

}  // namespace optibound
