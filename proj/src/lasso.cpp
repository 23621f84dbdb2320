#include "optibound/lasso.hpp"

#include <cmath>
#include <stdexcept>

namespace optibound {

double lambda_max(const SpMat& x, const Eigen::VectorXd& y) {
  if (x.rows() != y.size()) throw std::invalid_argument("lambda_max: shape mismatch");
  return (x.transpose() * y).cwiseAbs().maxCoeff();
}

LassoDualBall lasso_dual_ball(const SpMat& x, const Eigen::VectorXd& alpha_tilde,
                              const Eigen::VectorXd& y, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lasso_dual_ball: lambda must be positive");
  if (x.rows() != y.size() || alpha_tilde.size() != y.size())
    throw std::invalid_argument("lasso_dual_ball: shape mismatch");
  // the containment argument needs a dual-feasible reference: |x_j' a| <= 1 for all j
  Eigen::VectorXd corr = x.transpose() * alpha_tilde;
  if (corr.size() > 0 && corr.cwiseAbs().maxCoeff() > 1.0 + 1e-9)
    throw std::invalid_argument("lasso_dual_ball: reference point is not dual feasible");
  LassoDualBall ball;
  ball.lambda = lambda;
  ball.center = 0.5 * (alpha_tilde + y / lambda);
  ball.radius = 0.5 * (alpha_tilde - y / lambda).norm();
  return ball;
}

std::vector<Interval> residual_bounds(const LassoDualBall& ball) {
  std::vector<Interval> out(ball.center.size());
  for (int i = 0; i < ball.center.size(); ++i) out[i] = residual_bounds(ball, i);
  return out;
}

Interval residual_bounds(const LassoDualBall& ball, int i) {
  if (i < 0 || i >= ball.center.size())
    throw std::out_of_range("residual_bounds: index out of range");
  // residual y_i - x_i' beta* equals lambda * alpha*_i
  return {ball.lambda * (ball.center[i] - ball.radius),
          ball.lambda * (ball.center[i] + ball.radius)};
}

std::vector<int> safe_screen(const SpMat& x, const LassoDualBall& ball) {
  if (x.rows() != ball.center.size())
    throw std::invalid_argument("safe_screen: shape mismatch");
  std::vector<int> zeros;
  Eigen::VectorXd center_corr = x.transpose() * ball.center;
  Eigen::VectorXd col_norm(x.cols());
  col_norm.setZero();
  for (int i = 0; i < x.outerSize(); ++i)
    for (SpMat::InnerIterator it(x, i); it; ++it)
      col_norm[it.col()] += it.value() * it.value();
  for (int j = 0; j < x.cols(); ++j) {
    double slack = std::sqrt(col_norm[j]) * ball.radius;
    // max over the ball of |x_j' a| stays below the active threshold
    if (std::abs(center_corr[j]) + slack < 1.0) zeros.push_back(j);
  }
  return zeros;
}

}  // namespace optibound
