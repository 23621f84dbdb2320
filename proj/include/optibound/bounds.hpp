#pragma once

#include <vector>

#include "optibound/geometry.hpp"
#include "optibound/trainer.hpp"

namespace optibound {

// Ball certified to contain the untrained optimum w*_C, built from any
// suboptimal w~:  m = (w~ - C g)/2,  r = |w~ + C g|/2,  g = sum_i grad l_i(w~).
Ball ball_from_suboptimal(const FeatureVector& w_tilde, const Dataset& ds,
                          const KernelSpec& k, const LossModel& loss, double c);

// Closed-form interval for <theta, w*_C> as a function of C, from one model
// trained at c_ref.  Only two scalars enter: p = <theta, w*_ref> and
// q = |theta| |w*_ref|.  Lower bound decreases and upper bound increases as C
// moves away from c_ref; both equal p at C == c_ref.
class CBoundCurve {
 public:
  CBoundCurve(double c_ref, double p, double q);
  static CBoundCurve from_model(const TrainedModel& m, const FeatureVector& theta);

  Interval at(double c) const;
  double lower(double c) const { return at(c).lo; }
  double upper(double c) const { return at(c).hi; }

  double c_ref() const { return c_ref_; }
  double p() const { return p_; }
  double q() const { return q_; }

 private:
  double c_ref_, p_, q_;
};

struct ValidationBounds {
  std::vector<Interval> decision_intervals;  // one per validation instance
  int certified_errors = 0;    // provably misclassified
  int certified_correct = 0;   // provably correct
  double error_lo = 0.0;
  double error_hi = 1.0;
};

// Eq-style aggregation with strict sign tests: an instance counts only when
// its whole interval lies on one side of zero.
ValidationBounds aggregate_validation_bounds(const std::vector<Interval>& per_instance,
                                             const Eigen::VectorXd& labels);
ValidationBounds validation_bounds_from_ball(const Ball& s, const Dataset& val,
                                             const KernelSpec& k);
// bounds at regularization c from a model trained at a different value
ValidationBounds validation_bounds_from_curve(const TrainedModel& m, const Dataset& val,
                                              double c);

// exact validation error of a trained model; sign(0) counts as +1
double validation_error(const TrainedModel& m, const Dataset& val);

// Certified-sign window around c_ref for one decision value.  p, q as in
// CBoundCurve.  sign == 0 means nothing is certified (p == 0 or q == |p|
// within rounding gives an unbounded window instead).
struct SignStability {
  int sign = 0;
  double c_low = 0.0;   // exclusive
  double c_high = 0.0;  // exclusive, may be +inf
  bool certifies(double c) const { return sign != 0 && c > c_low && c < c_high; }
};
SignStability sign_stability_interval(double p, double q, double c_ref);
SignStability sign_stability_interval(const TrainedModel& m, const FeatureVector& phi);

}  // namespace optibound
