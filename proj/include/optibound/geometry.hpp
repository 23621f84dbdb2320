#pragma once

#include <optional>
#include <vector>

#include "optibound/feature_vector.hpp"
#include "optibound/loss.hpp"

namespace optibound {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double width() const { return hi - lo; }
  bool contains(double v, double slack = 0.0) const {
    return v >= lo - slack && v <= hi + slack;
  }
};

// intersection of two intervals; collapses to the midpoint of the overlap gap
// when floating point noise makes them disjoint
Interval intersect(const Interval& a, const Interval& b);

struct Ball {
  FeatureVector center;
  double radius = 0.0;
};

// range of <theta, w> over the ball: theta~m -+ |theta| r
Interval bound_inner(const Ball& s, const FeatureVector& theta);

// range of <theta, w> over the intersection of two balls (a lens).  The
// result is clamped into both single-ball intervals, so it never loses to
// either of them.  Throws geometry_error when the balls do not intersect.
Interval bound_inner_intersection(const Ball& s1, const Ball& s2,
                                  const FeatureVector& theta);

// Scalarized lens bound for callers that already have the geometry as inner
// products: t_m1 = theta~m1, t_m2 = theta~m2, t_norm = |theta|,
// a_sq = |m1 - m2|^2, t_a = theta~(m1 - m2).  Returns nullopt when the balls
// are disjoint beyond floating point noise.
std::optional<Interval> try_bound_inner_intersection_scalar(
    double t_m1, double t_m2, double t_norm, double a_sq, double t_a,
    double r1, double r2);

// Repeatedly recenter: w_{t+1} = m(w_t).  Returns the balls of
// w_1 .. w_steps; consecutive balls satisfy |m_{t+1} - m_t| = r_{t+1}.
std::vector<Ball> recursive_tighten(const FeatureVector& w_tilde, const Dataset& ds,
                                    const KernelSpec& k, const LossModel& loss,
                                    double c, int steps);

}  // namespace optibound
