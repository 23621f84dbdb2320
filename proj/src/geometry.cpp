#include "optibound/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "optibound/bounds.hpp"
#include "optibound/errors.hpp"

namespace optibound {

Interval intersect(const Interval& a, const Interval& b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (r.lo > r.hi) {
    double mid = 0.5 * (r.lo + r.hi);
    r = {mid, mid};
  }
  return r;
}

Interval bound_inner(const Ball& s, const FeatureVector& theta) {
  double t = inner(theta, s.center);
  double spread = theta.norm() * s.radius;
  return {t - spread, t + spread};
}

std::optional<Interval> try_bound_inner_intersection_scalar(double t_m1, double t_m2,
                                                            double t_norm, double a_sq,
                                                            double t_a, double r1,
                                                            double r2) {
  if (t_norm == 0.0) return Interval{0.0, 0.0};
  const Interval i1{t_m1 - t_norm * r1, t_m1 + t_norm * r1};
  const Interval i2{t_m2 - t_norm * r2, t_m2 + t_norm * r2};

  const double a = std::sqrt(std::max(0.0, a_sq));
  // one ball inside the other: the lens is the smaller ball
  if (a <= std::abs(r1 - r2)) return r1 <= r2 ? i1 : i2;
  if (a > r1 + r2 + 1e-12 * (a + r1 + r2)) return std::nullopt;  // disjoint

  const double beta = (a_sq + r2 * r2 - r1 * r1) / (2.0 * a);
  const double t_a_unit = t_a / a;
  const double cosw = std::clamp(t_a_unit / t_norm, -1.0, 1.0);
  const double delta = std::sqrt(std::max(0.0, r2 * r2 - beta * beta));
  const double perp = std::sqrt(std::max(0.0, t_norm * t_norm - t_a_unit * t_a_unit));
  const double rim = t_m2 + beta * t_a_unit;  // <theta, rim circle center>

  double hi;
  if (cosw < (beta - a) / r1) {
    hi = i1.hi;  // ball-1 maximizer lies strictly inside ball 2
  } else if (cosw > beta / r2) {
    hi = i2.hi;  // ball-2 maximizer lies strictly inside ball 1
  } else {
    hi = rim + delta * perp;  // attained on the rim circle
  }
  double lo;
  if (-cosw < (beta - a) / r1) {
    lo = i1.lo;
  } else if (-cosw > beta / r2) {
    lo = i2.lo;
  } else {
    lo = rim - delta * perp;
  }

  // the lens bound can never lose to either single ball; make that exact
  hi = std::min({hi, i1.hi, i2.hi});
  lo = std::max({lo, i1.lo, i2.lo});
  if (lo > hi) {
    double mid = 0.5 * (lo + hi);
    lo = hi = mid;
  }
  return Interval{lo, hi};
}

namespace {

// bring both centers into one representation so they can be subtracted
std::pair<FeatureVector, FeatureVector> align(const FeatureVector& a,
                                              const FeatureVector& b) {
  if (a.repr() == b.repr()) return {a, b};
  return {FeatureVector::primal(a.to_primal()), FeatureVector::primal(b.to_primal())};
}

}  // namespace

Interval bound_inner_intersection(const Ball& s1, const Ball& s2,
                                  const FeatureVector& theta) {
  auto [m1, m2] = align(s1.center, s2.center);
  FeatureVector alpha = FeatureVector::combine(1.0, m1, -1.0, m2);
  auto r = try_bound_inner_intersection_scalar(inner(theta, m1), inner(theta, m2),
                                               theta.norm(), alpha.squared_norm(),
                                               inner(theta, alpha), s1.radius, s2.radius);
  if (!r) throw geometry_error("bound_inner_intersection: balls do not intersect");
  return *r;
}

std::vector<Ball> recursive_tighten(const FeatureVector& w_tilde, const Dataset& ds,
                                    const KernelSpec& k, const LossModel& loss,
                                    double c, int steps) {
  if (steps < 1) throw std::invalid_argument("recursive_tighten: steps must be >= 1");
  std::vector<Ball> balls;
  balls.reserve(steps);
  FeatureVector w = w_tilde;
  for (int t = 0; t < steps; ++t) {
    balls.push_back(ball_from_suboptimal(w, ds, k, loss, c));
    w = balls.back().center;
  }
  return balls;
}

}  // namespace optibound
