#include "optibound/feature_vector.hpp"

#include <cmath>

#include "optibound/errors.hpp"

namespace optibound {

std::shared_ptr<const DualContext> DualContext::make(Dataset ds, KernelSpec k) {
  auto ctx = std::make_shared<DualContext>();
  ctx->gram = optibound::gram(ds, k);
  ctx->data = std::move(ds);
  ctx->kernel = k;
  return ctx;
}

namespace {

bool same_context(const DualContextPtr& a, const DualContextPtr& b) {
  if (a == b) return true;
  return a && b && a->kernel == b->kernel && a->data.same_storage(b->data);
}

}  // namespace

FeatureVector::FeatureVector(Repr r, DualContextPtr ctx, Eigen::VectorXd v)
    : repr_(r), ctx_(std::move(ctx)), v_(std::move(v)) {
  if (repr_ == Repr::primal) {
    sq_norm_ = v_.squaredNorm();
  } else {
    // c~G c; clamp the tiny negatives a PSD Gram can produce in rounding
    sq_norm_ = std::max(0.0, v_.dot(ctx_->gram * v_));
  }
}

FeatureVector FeatureVector::primal(Eigen::VectorXd v) {
  return FeatureVector(Repr::primal, nullptr, std::move(v));
}

FeatureVector FeatureVector::dual(DualContextPtr ctx, Eigen::VectorXd coeffs) {
  if (!ctx) throw compat_error("dual feature vector needs a context");
  if (coeffs.size() != ctx->data.rows())
    throw compat_error("dual coefficient count does not match the context");
  return FeatureVector(Repr::dual, std::move(ctx), std::move(coeffs));
}

FeatureVector FeatureVector::unit(DualContextPtr ctx, int index) {
  if (!ctx || index < 0 || index >= ctx->data.rows())
    throw compat_error("unit feature vector: bad context or index");
  Eigen::VectorXd e = Eigen::VectorXd::Zero(ctx->data.rows());
  e[index] = 1.0;
  return dual(std::move(ctx), std::move(e));
}

double FeatureVector::norm() const { return std::sqrt(sq_norm_); }

Eigen::VectorXd FeatureVector::to_primal() const {
  if (repr_ == Repr::primal) return v_;
  if (ctx_->kernel.kind != KernelSpec::Kind::linear)
    throw compat_error("cannot materialize a nonlinear dual vector");
  return ctx_->data.x().transpose() * v_;
}

FeatureVector FeatureVector::combine(double a, const FeatureVector& x, double b,
                                     const FeatureVector& y) {
  if (x.repr_ != y.repr_) throw compat_error("combine: mixed representations");
  if (x.repr_ == Repr::dual && !same_context(x.ctx_, y.ctx_))
    throw compat_error("combine: dual vectors over different contexts");
  if (x.v_.size() != y.v_.size()) throw compat_error("combine: size mismatch");
  return FeatureVector(x.repr_, x.ctx_, a * x.v_ + b * y.v_);
}

double inner(const FeatureVector& a, const FeatureVector& b) {
  if (a.is_primal() && b.is_primal()) {
    if (a.size() != b.size()) throw compat_error("inner: dimension mismatch");
    return a.values().dot(b.values());
  }
  if (!a.is_primal() && !b.is_primal()) {
    if (same_context(a.context(), b.context()))
      return a.values().dot(a.context()->gram * b.values());
    if (a.context()->kernel == b.context()->kernel) {
      Eigen::MatrixXd k =
          cross_gram(a.context()->data, b.context()->data, a.context()->kernel);
      return a.values().dot(k * b.values());
    }
    throw compat_error("inner: dual vectors under different kernels");
  }
  // mixed: only meaningful for linear kernels
  const FeatureVector& d = a.is_primal() ? b : a;
  const FeatureVector& p = a.is_primal() ? a : b;
  if (d.context()->kernel.kind != KernelSpec::Kind::linear)
    throw compat_error("inner: primal vector against a nonlinear dual vector");
  Eigen::VectorXd dp = d.to_primal();
  Eigen::Index m = std::min(dp.size(), p.values().size());
  return dp.head(m).dot(p.values().head(m));
}

}  // namespace optibound
