#pragma once

#include <string_view>

#include "optibound/dataset.hpp"
#include "optibound/feature_vector.hpp"

namespace optibound {

enum class LossKind { logistic, hinge };

const char* to_string(LossKind kind);
LossKind loss_from_string(std::string_view name);

// Convex margin loss l(y, z) with a fixed (sub)gradient selection.
//   logistic: log(1 + exp(-y z)),        slope = -y * sigmoid(-y z)
//   hinge:    max(0, 1 - y z),           slope = -y for y z < 1, else 0
// The hinge slope at the kink y z == 1 is taken from the flat side (0).
struct LossModel {
  LossKind kind = LossKind::logistic;

  double value(double y, double z) const;
  double slope(double y, double z) const;
  double curvature(double y, double z) const;
  bool differentiable() const { return kind == LossKind::logistic; }

  static LossModel logistic() { return {LossKind::logistic}; }
  static LossModel hinge() { return {LossKind::hinge}; }
};

// z_i = <phi(x_i), w> for every instance of ds
Eigen::VectorXd decision_values(const Dataset& ds, const KernelSpec& k,
                                const FeatureVector& w);

// sum_i l'(y_i, z_i) phi(x_i); primal for linear kernels, dual otherwise.
// The dual overload reuses `ctx` (which must wrap ds) to avoid Gram rebuilds.
FeatureVector loss_gradient_sum(const Dataset& ds, const KernelSpec& k,
                                const LossModel& loss, const FeatureVector& w);
FeatureVector loss_gradient_sum(const DualContextPtr& ctx, const LossModel& loss,
                                const FeatureVector& w);

}  // namespace optibound
