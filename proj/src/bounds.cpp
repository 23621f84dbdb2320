#include "optibound/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "optibound/errors.hpp"

namespace optibound {

Ball ball_from_suboptimal(const FeatureVector& w_tilde, const Dataset& ds,
                          const KernelSpec& k, const LossModel& loss, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("ball_from_suboptimal: c must be positive");
  if (ds.rows() == 0) throw std::invalid_argument("ball_from_suboptimal: empty dataset");
  FeatureVector g =
      (!w_tilde.is_primal() && w_tilde.context()->kernel == k &&
       w_tilde.context()->data.same_storage(ds))
          ? loss_gradient_sum(w_tilde.context(), loss, w_tilde)
          : loss_gradient_sum(ds, k, loss, w_tilde);
  FeatureVector center = FeatureVector::combine(0.5, w_tilde, -0.5 * c, g);
  double radius = FeatureVector::combine(0.5, w_tilde, 0.5 * c, g).norm();
  return {std::move(center), radius};
}

CBoundCurve::CBoundCurve(double c_ref, double p, double q) : c_ref_(c_ref), p_(p), q_(q) {
  if (!(c_ref > 0.0)) throw std::invalid_argument("CBoundCurve: c_ref must be positive");
  // Cauchy-Schwarz guarantees q >= |p|; restore it when rounding says otherwise
  q_ = std::max(q_, std::abs(p_));
}

CBoundCurve CBoundCurve::from_model(const TrainedModel& m, const FeatureVector& theta) {
  return CBoundCurve(m.c, inner(theta, m.w), theta.norm() * m.w.norm());
}

Interval CBoundCurve::at(double c) const {
  if (!(c > 0.0)) throw std::invalid_argument("CBoundCurve: c must be positive");
  if (c == c_ref_) return {p_, p_};
  double ratio = c / (2.0 * c_ref_);
  double sum = p_ + q_, diff = p_ - q_;
  if (c > c_ref_) return {0.5 * sum + ratio * diff, 0.5 * diff + ratio * sum};
  return {0.5 * diff + ratio * sum, 0.5 * sum + ratio * diff};
}

ValidationBounds aggregate_validation_bounds(const std::vector<Interval>& per_instance,
                                             const Eigen::VectorXd& labels) {
  if (static_cast<Eigen::Index>(per_instance.size()) != labels.size())
    throw std::invalid_argument("aggregate_validation_bounds: size mismatch");
  ValidationBounds vb;
  vb.decision_intervals = per_instance;
  const int n = static_cast<int>(per_instance.size());
  if (n == 0) throw std::invalid_argument("aggregate_validation_bounds: no instances");
  for (int i = 0; i < n; ++i) {
    const Interval& iv = per_instance[i];
    bool positive = labels[i] > 0.0;
    // strict sign tests: an interval touching zero stays undetermined
    if ((positive && iv.hi < 0.0) || (!positive && iv.lo > 0.0)) ++vb.certified_errors;
    if ((positive && iv.lo > 0.0) || (!positive && iv.hi < 0.0)) ++vb.certified_correct;
  }
  vb.error_lo = static_cast<double>(vb.certified_errors) / n;
  // same division as error_lo so fully certified sets collapse exactly
  vb.error_hi = static_cast<double>(n - vb.certified_correct) / n;
  return vb;
}

ValidationBounds validation_bounds_from_ball(const Ball& s, const Dataset& val,
                                             const KernelSpec& k) {
  Eigen::VectorXd center_dot = decision_values(val, k, s.center);
  std::vector<Interval> per(val.rows());
  for (int i = 0; i < val.rows(); ++i) {
    double theta_norm = std::sqrt(kernel_value(k, val, i, val, i));
    double spread = theta_norm * s.radius;
    per[i] = {center_dot[i] - spread, center_dot[i] + spread};
  }
  return aggregate_validation_bounds(per, val.y());
}

ValidationBounds validation_bounds_from_curve(const TrainedModel& m, const Dataset& val,
                                              double c) {
  Eigen::VectorXd z = decision_values(val, m.kernel, m.w);
  double wn = m.w.norm();
  std::vector<Interval> per(val.rows());
  for (int i = 0; i < val.rows(); ++i) {
    double theta_norm = std::sqrt(kernel_value(m.kernel, val, i, val, i));
    per[i] = CBoundCurve(m.c, z[i], theta_norm * wn).at(c);
  }
  return aggregate_validation_bounds(per, val.y());
}

double validation_error(const TrainedModel& m, const Dataset& val) {
  if (val.rows() == 0) throw std::invalid_argument("validation_error: no instances");
  Eigen::VectorXd z = decision_values(val, m.kernel, m.w);
  int errors = 0;
  for (int i = 0; i < val.rows(); ++i) {
    double predicted = z[i] >= 0.0 ? 1.0 : -1.0;  // sign(0) == +1
    if (predicted != val.y()[i]) ++errors;
  }
  return static_cast<double>(errors) / val.rows();
}

SignStability sign_stability_interval(double p, double q, double c_ref) {
  if (!(c_ref > 0.0))
    throw std::invalid_argument("sign_stability_interval: c_ref must be positive");
  q = std::max(q, std::abs(p));
  SignStability s;
  if (p == 0.0) return s;  // nothing certified anywhere
  s.sign = p > 0.0 ? 1 : -1;
  double lo_part = q - std::abs(p);
  if (lo_part <= 0.0) {
    // theta and the trained solution are aligned: certified for every C
    s.c_low = 0.0;
    s.c_high = std::numeric_limits<double>::infinity();
    return s;
  }
  double ratio = (q + std::abs(p)) / lo_part;
  s.c_low = c_ref / ratio;
  s.c_high = c_ref * ratio;
  return s;
}

SignStability sign_stability_interval(const TrainedModel& m, const FeatureVector& phi) {
  return sign_stability_interval(inner(phi, m.w), phi.norm() * m.w.norm(), m.c);
}

}  // namespace optibound
