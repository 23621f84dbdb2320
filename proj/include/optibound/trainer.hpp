#pragma once

#include <functional>
#include <optional>

#include "optibound/dataset.hpp"
#include "optibound/feature_vector.hpp"
#include "optibound/loss.hpp"

namespace optibound {

struct SolverConfig {
  double tolerance = 1e-10;
  int max_iterations = 500;
  std::optional<FeatureVector> warm_start;
  // called with each accepted iterate (used by diagnostics and tests)
  std::function<void(const FeatureVector&)> on_iterate;
};

struct TrainedModel {
  FeatureVector w;
  double c = 0.0;
  LossKind loss = LossKind::logistic;
  KernelSpec kernel;
  // logistic: |w + C sum grad| at the returned w.
  // hinge: duality gap / max(1, primal objective).
  double certificate = 0.0;
  int iterations = 0;
};

// Minimize 1/2 |w|^2 + C sum_i l(y_i, <phi(x_i), w>).  Linear kernels are
// solved in the primal, others over dual-span coefficients.  Logistic uses
// damped Newton; hinge a smoothed-loss homotopy finished by an active-set
// polish.  Throws solver_error when the certificate cannot be reached.
TrainedModel train(const Dataset& ds, const KernelSpec& k, const LossModel& loss,
                   double c, const SolverConfig& cfg = {});

double objective_value(const Dataset& ds, const KernelSpec& k, const LossModel& loss,
                       double c, const FeatureVector& w);
// |w + C sum_i l'(y_i, z_i) phi(x_i)|, the stationarity residual
double stationarity_residual(const Dataset& ds, const KernelSpec& k,
                             const LossModel& loss, double c, const FeatureVector& w);

struct LassoSolution {
  Eigen::VectorXd beta;
  // dual-feasible point (y - X beta) / lambda rescaled into |X~alpha|_inf <= 1
  Eigen::VectorXd alpha;
  double gap = 0.0;  // duality gap / max(1, primal objective)
  int sweeps = 0;
};

// Minimize 1/2 |y - X beta|^2 + lambda |beta|_1 by cyclic coordinate descent
// with a duality-gap stopping rule.
LassoSolution train_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          double lambda, double tolerance = 1e-10,
                          int max_sweeps = 100000);

}  // namespace optibound
