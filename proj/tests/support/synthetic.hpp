#pragma once

#include <Eigen/Dense>
#include <vector>

#include "optibound/dataset.hpp"
#include "optibound/feature_vector.hpp"
#include "optibound/random.hpp"

namespace testsupport {

using optibound::Dataset;
using optibound::Rng;
using optibound::SpMat;

inline Eigen::VectorXd random_vector(Rng& rng, int d, double scale = 1.0) {
  Eigen::VectorXd v(d);
  for (int i = 0; i < d; ++i) v[i] = scale * rng.normal();
  return v;
}

inline Dataset dense_dataset(const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
  SpMat s(x.rows(), x.cols());
  s = x.sparseView();
  s.makeCompressed();
  return Dataset(s, y);
}

// two gaussian blobs separated along a random direction; both labels present
inline Dataset two_gaussians(Rng& rng, int n, int d, double sep = 2.0) {
  Eigen::VectorXd dir = random_vector(rng, d);
  dir.normalize();
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    y[i] = (i < 2 ? (i == 0 ? 1.0 : -1.0) : (rng.uniform() < 0.5 ? 1.0 : -1.0));
    x.row(i) = (random_vector(rng, d) + y[i] * (sep / 2.0) * dir).transpose();
  }
  return dense_dataset(x, y);
}

// labels from a random hyperplane with a given flip rate; entries zeroed with
// probability `sparsity` to exercise the sparse paths
inline Dataset random_classification(Rng& rng, int n, int d, double flip_rate = 0.1,
                                     double sparsity = 0.3) {
  Eigen::VectorXd w = random_vector(rng, d);
  Eigen::MatrixXd x(n, d);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j)
      x(i, j) = rng.uniform() < sparsity ? 0.0 : rng.normal();
    double z = x.row(i) * w;
    y[i] = z >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform() < flip_rate) y[i] = -y[i];
  }
  y[0] = 1.0;
  y[n > 1 ? 1 : 0] = -1.0;
  return dense_dataset(x, y);
}

// sparse ground-truth linear model with gaussian noise (regression labels)
inline Dataset random_regression(Rng& rng, int n, int d, int k_active,
                                 double noise = 0.1) {
  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = rng.normal();
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  for (int k = 0; k < k_active && k < d; ++k)
    beta[k] = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(0.5, 2.0);
  Eigen::VectorXd y = x * beta;
  for (int i = 0; i < n; ++i) y[i] += noise * rng.normal();
  return dense_dataset(x, y);
}

}  // namespace testsupport
