#pragma once

#include <Eigen/Dense>
#include <memory>

#include "optibound/dataset.hpp"

namespace optibound {

// Base points + kernel + cached Gram matrix.  Dual feature vectors hold a
// shared pointer to one of these.
struct DualContext {
  Dataset data;
  KernelSpec kernel;
  Eigen::MatrixXd gram;

  static std::shared_ptr<const DualContext> make(Dataset ds, KernelSpec k);
};
using DualContextPtr = std::shared_ptr<const DualContext>;

// A point of the feature space in one of two representations:
//   primal: an explicit coordinate vector (linear kernel),
//   dual:   coefficients over the feature maps of a context's instances.
// Immutable; the squared norm is computed once at construction.
class FeatureVector {
 public:
  enum class Repr { primal, dual };

  // empty primal vector; lets result structs default-construct
  FeatureVector() : FeatureVector(Repr::primal, nullptr, Eigen::VectorXd()) {}

  static FeatureVector primal(Eigen::VectorXd v);
  static FeatureVector dual(DualContextPtr ctx, Eigen::VectorXd coeffs);
  // feature map of instance `index` of the context
  static FeatureVector unit(DualContextPtr ctx, int index);

  Repr repr() const { return repr_; }
  bool is_primal() const { return repr_ == Repr::primal; }
  int size() const { return static_cast<int>(v_.size()); }
  // primal coordinates or dual coefficients
  const Eigen::VectorXd& values() const { return v_; }
  const DualContextPtr& context() const { return ctx_; }

  double squared_norm() const { return sq_norm_; }
  double norm() const;

  // materialize as coordinates; requires a linear kernel for dual vectors
  Eigen::VectorXd to_primal() const;

  // a*x + b*y, both in the same representation (and context for dual)
  static FeatureVector combine(double a, const FeatureVector& x, double b,
                               const FeatureVector& y);
  FeatureVector scaled(double a) const { return combine(a, *this, 0.0, *this); }

 private:
  FeatureVector(Repr r, DualContextPtr ctx, Eigen::VectorXd v);

  Repr repr_;
  DualContextPtr ctx_;
  Eigen::VectorXd v_;
  double sq_norm_;
};

// Inner product in feature space.  Dual x dual across different contexts is
// evaluated through the cross kernel when the kernels agree; primal x dual
// requires a linear kernel.  Anything else throws compat_error.
double inner(const FeatureVector& a, const FeatureVector& b);

}  // namespace optibound
