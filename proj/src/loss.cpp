#include "optibound/loss.hpp"

#include <cmath>
#include <stdexcept>

#include "optibound/errors.hpp"

namespace optibound {

const char* to_string(LossKind kind) {
  return kind == LossKind::logistic ? "logistic" : "hinge";
}

LossKind loss_from_string(std::string_view name) {
  if (name == "logistic") return LossKind::logistic;
  if (name == "hinge") return LossKind::hinge;
  throw std::invalid_argument("unknown loss '" + std::string(name) + "'");
}

namespace {

// 1 / (1 + exp(-t)) without overflow
double sigmoid(double t) {
  if (t >= 0.0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

// log(1 + exp(-t)) without overflow
double log1pexp_neg(double t) {
  if (t >= 0.0) return std::log1p(std::exp(-t));
  return -t + std::log1p(std::exp(t));
}

}  // namespace

double LossModel::value(double y, double z) const {
  if (kind == LossKind::logistic) return log1pexp_neg(y * z);
  return std::max(0.0, 1.0 - y * z);
}

double LossModel::slope(double y, double z) const {
  if (kind == LossKind::logistic) return -y * sigmoid(-y * z);
  return y * z < 1.0 ? -y : 0.0;  // flat-side selection at the kink
}

double LossModel::curvature(double y, double z) const {
  if (kind == LossKind::logistic) {
    double s = sigmoid(-y * z);
    return s * (1.0 - s);
  }
  return 0.0;
}

Eigen::VectorXd decision_values(const Dataset& ds, const KernelSpec& k,
                                const FeatureVector& w) {
  if (w.is_primal()) {
    if (k.kind != KernelSpec::Kind::linear)
      throw compat_error("decision_values: primal vector under a nonlinear kernel");
    const Eigen::VectorXd& v = w.values();
    Eigen::VectorXd z = Eigen::VectorXd::Zero(ds.rows());
    for (int i = 0; i < ds.rows(); ++i) {
      double acc = 0.0;
      for (SpMat::InnerIterator it(ds.x(), i); it; ++it)
        if (it.col() < v.size()) acc += it.value() * v[it.col()];
      z[i] = acc;
    }
    return z;
  }
  const DualContextPtr& ctx = w.context();
  if (!(ctx->kernel == k))
    throw compat_error("decision_values: kernel does not match the vector's context");
  if (ctx->data.same_storage(ds)) return ctx->gram * w.values();
  return cross_gram(ds, ctx->data, k) * w.values();
}

FeatureVector loss_gradient_sum(const Dataset& ds, const KernelSpec& k,
                                const LossModel& loss, const FeatureVector& w) {
  if (!w.is_primal() && w.context()->kernel == k && w.context()->data.same_storage(ds))
    return loss_gradient_sum(w.context(), loss, w);
  Eigen::VectorXd z = decision_values(ds, k, w);
  Eigen::VectorXd g(ds.rows());
  for (int i = 0; i < ds.rows(); ++i) g[i] = loss.slope(ds.y()[i], z[i]);
  if (k.kind == KernelSpec::Kind::linear && w.is_primal())
    return FeatureVector::primal(ds.x().transpose() * g);
  return FeatureVector::dual(DualContext::make(ds, k), std::move(g));
}

FeatureVector loss_gradient_sum(const DualContextPtr& ctx, const LossModel& loss,
                                const FeatureVector& w) {
  Eigen::VectorXd z = decision_values(ctx->data, ctx->kernel, w);
  Eigen::VectorXd g(ctx->data.rows());
  for (int i = 0; i < ctx->data.rows(); ++i) g[i] = loss.slope(ctx->data.y()[i], z[i]);
  return FeatureVector::dual(ctx, std::move(g));
}

}  // namespace optibound
