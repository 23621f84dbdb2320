#include "optibound/trainer.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "optibound/errors.hpp"

namespace optibound {

namespace {

constexpr double kArmijo = 1e-4;

// hinge with a quadratic band of width mu near the kink; mu == 0 is exact
struct SmoothedLoss {
  LossModel base;
  double mu = 0.0;

  double value(double y, double z) const {
    if (base.kind == LossKind::logistic || mu == 0.0) return base.value(y, z);
    double m = y * z;
    if (m >= 1.0) return 0.0;
    if (m <= 1.0 - mu) return 1.0 - m - 0.5 * mu;
    double h = 1.0 - m;
    return 0.5 * h * h / mu;
  }
  double slope(double y, double z) const {
    if (base.kind == LossKind::logistic || mu == 0.0) return base.slope(y, z);
    double m = y * z;
    if (m >= 1.0) return 0.0;
    if (m <= 1.0 - mu) return -y;
    return -y * (1.0 - m) / mu;
  }
  double curvature(double y, double z) const {
    if (base.kind == LossKind::logistic) return base.curvature(y, z);
    if (mu == 0.0) return 0.0;
    double m = y * z;
    return (m < 1.0 && m > 1.0 - mu) ? 1.0 / mu : 0.0;
  }
};

struct IterState {
  double residual = std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// damped Newton on 1/2 |w|^2 + C sum l(y_i, <x_i, w>), explicit coordinates
IterState newton_primal(const Eigen::MatrixXd& xd, const Eigen::VectorXd& y, double c,
                        const SmoothedLoss& loss, double tol, int max_iters,
                        Eigen::VectorXd& w,
                        const std::function<void(const FeatureVector&)>& on_iterate) {
  const int n = static_cast<int>(xd.rows());
  const int d = static_cast<int>(xd.cols());
  Eigen::VectorXd z = xd * w;
  auto loss_sum = [&](const Eigen::VectorXd& zv) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += loss.value(y[i], zv[i]);
    return s;
  };
  auto residual_at = [&](const Eigen::VectorXd& wv, const Eigen::VectorXd& zv) {
    Eigen::VectorXd g(n);
    for (int i = 0; i < n; ++i) g[i] = loss.slope(y[i], zv[i]);
    return (wv + c * (xd.transpose() * g)).norm();
  };
  IterState st;
  for (st.iterations = 0; st.iterations < max_iters; ++st.iterations) {
    z = xd * w;  // fresh: incremental updates drift below the tolerances used
    Eigen::VectorXd g(n), curv(n);
    for (int i = 0; i < n; ++i) {
      g[i] = loss.slope(y[i], z[i]);
      curv[i] = loss.curvature(y[i], z[i]);
    }
    Eigen::VectorXd grad = w + c * (xd.transpose() * g);
    st.residual = grad.norm();
    if (st.residual <= tol) {
      st.converged = true;
      return st;
    }
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(d, d);
    h.noalias() += c * xd.transpose() * curv.asDiagonal() * xd;
    Eigen::LLT<Eigen::MatrixXd> llt(h);
    Eigen::VectorXd step =
        llt.info() == Eigen::Success ? llt.solve(-grad).eval() : (-grad).eval();
    double dir = grad.dot(step);
    if (!(dir < 0.0)) {
      step = -grad;
      dir = -st.residual * st.residual;
    }
    bool accepted = false;
    if (st.residual <= 1e-3) {
      // endgame: objective differences drown in rounding, but the Newton
      // step still contracts the gradient quadratically
      Eigen::VectorXd wt = w + step;
      Eigen::VectorXd zt = xd * wt;
      if (residual_at(wt, zt) < 0.9 * st.residual) {
        w = std::move(wt);
        accepted = true;
      }
    }
    if (!accepted) {
      Eigen::VectorXd zs = xd * step;
      double f0 = 0.5 * w.squaredNorm() + c * loss_sum(z);
      double t = 1.0;
      for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
        Eigen::VectorXd wt = w + t * step;
        if ((wt - w).squaredNorm() == 0.0) break;  // sub-ulp step: floor
        if (0.5 * wt.squaredNorm() + c * loss_sum(z + t * zs) <=
            f0 + kArmijo * t * dir) {
          w = std::move(wt);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) return st;  // stuck at numerical floor
    if (on_iterate) on_iterate(FeatureVector::primal(w));
  }
  st.residual = residual_at(w, xd * w);
  st.converged = st.residual <= tol;
  return st;
}

// same iteration over dual-span coefficients: w = sum_i cf_i phi(x_i).
// The Newton direction solves (I + C D G) delta = -(cf + C s), which is the
// feature-space Newton step restricted to the span.
IterState newton_dual(const Eigen::MatrixXd& g_mat, const Eigen::VectorXd& y, double c,
                      const SmoothedLoss& loss, double tol, int max_iters,
                      Eigen::VectorXd& cf, const DualContextPtr& ctx,
                      const std::function<void(const FeatureVector&)>& on_iterate) {
  const int n = static_cast<int>(g_mat.rows());
  Eigen::VectorXd z = g_mat * cf;
  auto loss_sum = [&](const Eigen::VectorXd& zv) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += loss.value(y[i], zv[i]);
    return s;
  };
  auto residual_at = [&](const Eigen::VectorXd& cv, const Eigen::VectorXd& zv) {
    Eigen::VectorXd s(n);
    for (int i = 0; i < n; ++i) s[i] = loss.slope(y[i], zv[i]);
    Eigen::VectorXd v = cv + c * s;
    return std::sqrt(std::max(0.0, v.dot(g_mat * v)));
  };
  IterState st;
  for (st.iterations = 0; st.iterations < max_iters; ++st.iterations) {
    z = g_mat * cf;  // fresh each iteration, as in the primal solver
    Eigen::VectorXd s(n), curv(n);
    for (int i = 0; i < n; ++i) {
      s[i] = loss.slope(y[i], z[i]);
      curv[i] = loss.curvature(y[i], z[i]);
    }
    Eigen::VectorXd v = cf + c * s;  // span coefficients of the gradient
    st.residual = std::sqrt(std::max(0.0, v.dot(g_mat * v)));
    if (st.residual <= tol) {
      st.converged = true;
      return st;
    }
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n);
    a.noalias() += c * curv.asDiagonal() * g_mat;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    Eigen::VectorXd step = lu.solve(-v);
    Eigen::VectorXd zs = g_mat * step;
    double dir = v.dot(zs);  // <grad, step> in feature space
    if (!(dir < 0.0)) {
      step = -v;
      zs = g_mat * step;
      dir = -st.residual * st.residual;
    }
    bool accepted = false;
    if (st.residual <= 1e-3) {
      Eigen::VectorXd ct = cf + step;
      if (residual_at(ct, g_mat * ct) < 0.9 * st.residual) {
        cf = std::move(ct);
        accepted = true;
      }
    }
    if (!accepted) {
      double f0 = 0.5 * cf.dot(z) + c * loss_sum(z);
      double t = 1.0;
      for (int ls = 0; ls < 60; ++ls, t *= 0.5) {
        Eigen::VectorXd ct = cf + t * step;
        if ((ct - cf).squaredNorm() == 0.0) break;
        Eigen::VectorXd zt = z + t * zs;
        if (0.5 * ct.dot(zt) + c * loss_sum(zt) <= f0 + kArmijo * t * dir) {
          cf = std::move(ct);
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) return st;
    if (on_iterate) on_iterate(FeatureVector::dual(ctx, cf));
  }
  st.residual = residual_at(cf, g_mat * cf);
  st.converged = st.residual <= tol;
  return st;
}

struct PolishOutcome {
  Eigen::VectorXd alpha;  // box-feasible dual point
  double gap_rel = std::numeric_limits<double>::infinity();
  int rounds = 0;
};

// Finish a hinge solve from near-optimal margins: guess the support partition,
// solve the equality system on the free set exactly, and refine the partition
// until the duality gap certifies.  q_ij = y_i y_j K(x_i, x_j).
PolishOutcome polish_hinge(const Eigen::MatrixXd& q, double c,
                           const Eigen::VectorXd& start_margins, double band,
                           double tol) {
  const int n = static_cast<int>(q.rows());
  std::vector<char> state(n);  // 0 out (alpha=0), 1 free, 2 at bound (alpha=C)
  for (int i = 0; i < n; ++i) {
    double m = start_margins[i];
    state[i] = m >= 1.0 + band ? 0 : (m <= 1.0 - band ? 2 : 1);
  }
  PolishOutcome best;
  Eigen::VectorXd alpha(n);
  for (int round = 0; round < 60; ++round) {
    std::vector<int> free_set, bound_set;
    for (int i = 0; i < n; ++i) {
      if (state[i] == 1) free_set.push_back(i);
      if (state[i] == 2) bound_set.push_back(i);
    }
    alpha.setZero();
    for (int i : bound_set) alpha[i] = c;
    if (!free_set.empty()) {
      const int f = static_cast<int>(free_set.size());
      Eigen::MatrixXd qff(f, f);
      Eigen::VectorXd rhs = Eigen::VectorXd::Ones(f);
      for (int a = 0; a < f; ++a) {
        for (int b = 0; b < f; ++b) qff(a, b) = q(free_set[a], free_set[b]);
        for (int i : bound_set) rhs[a] -= q(free_set[a], i) * c;
      }
      Eigen::VectorXd af =
          qff.completeOrthogonalDecomposition().solve(rhs);
      // push box violators out of the free set and re-solve
      bool moved = false;
      for (int a = 0; a < f; ++a) {
        if (af[a] < -1e-9) {
          state[free_set[a]] = 0;
          moved = true;
        } else if (af[a] > c + 1e-9) {
          state[free_set[a]] = 2;
          moved = true;
        }
      }
      if (moved) continue;
      for (int a = 0; a < f; ++a) alpha[free_set[a]] = std::clamp(af[a], 0.0, c);
    }
    Eigen::VectorXd margins = q * alpha;
    // margin violators re-enter the free set
    bool moved = false;
    for (int i = 0; i < n; ++i) {
      if (state[i] == 0 && margins[i] < 1.0 - 1e-9) {
        state[i] = 1;
        moved = true;
      } else if (state[i] == 2 && margins[i] > 1.0 + 1e-9) {
        state[i] = 1;
        moved = true;
      }
    }
    double hinge_sum = 0.0;
    for (int i = 0; i < n; ++i) hinge_sum += std::max(0.0, 1.0 - margins[i]);
    double wsq = alpha.dot(margins);  // alpha~Q alpha
    double primal = 0.5 * wsq + c * hinge_sum;
    double gap = (primal - (alpha.sum() - 0.5 * wsq)) / std::max(1.0, primal);
    if (gap < best.gap_rel) {
      best.gap_rel = std::max(0.0, gap);
      best.alpha = alpha;
    }
    best.rounds = round + 1;
    if (best.gap_rel <= tol) return best;
    if (!moved) return best;  // partition is stable; gap is what it is
  }
  return best;
}

Eigen::MatrixXd hinge_q_primal(const Eigen::MatrixXd& xd, const Eigen::VectorXd& y) {
  Eigen::MatrixXd q = xd * xd.transpose();
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) q(i, j) *= y[i] * y[j];
  return q;
}

Eigen::MatrixXd hinge_q_kernel(const Eigen::MatrixXd& g_mat, const Eigen::VectorXd& y) {
  Eigen::MatrixXd q = g_mat;
  for (int i = 0; i < q.rows(); ++i)
    for (int j = 0; j < q.cols(); ++j) q(i, j) *= y[i] * y[j];
  return q;
}

const double kHingeMu[] = {0.5, 5e-2, 5e-3, 5e-4, 5e-5, 5e-6, 5e-7, 5e-8};

}  // namespace

TrainedModel train(const Dataset& ds, const KernelSpec& k, const LossModel& loss,
                   double c, const SolverConfig& cfg) {
  if (ds.rows() == 0) throw std::invalid_argument("train: empty dataset");
  if (!(c > 0.0)) throw std::invalid_argument("train: c must be positive");
  if (!(cfg.tolerance > 0.0)) throw std::invalid_argument("train: tolerance must be positive");
  const int n = ds.rows();
  const Eigen::VectorXd& y = ds.y();

  TrainedModel model;
  model.c = c;
  model.loss = loss.kind;
  model.kernel = k;

  if (k.kind == KernelSpec::Kind::linear) {
    Eigen::MatrixXd xd(ds.x());
    Eigen::VectorXd w = Eigen::VectorXd::Zero(ds.dim());
    if (cfg.warm_start) {
      Eigen::VectorXd ws = cfg.warm_start->to_primal();
      if (ws.size() != w.size())
        throw compat_error("train: warm start dimension mismatch");
      w = std::move(ws);
    }
    if (loss.kind == LossKind::logistic) {
      IterState st = newton_primal(xd, y, c, {loss, 0.0}, cfg.tolerance,
                                   cfg.max_iterations, w, cfg.on_iterate);
      if (!st.converged)
        throw solver_error("train: logistic solver did not converge", st.residual);
      model.w = FeatureVector::primal(std::move(w));
      model.certificate = st.residual;
      model.iterations = st.iterations;
      return model;
    }
    // hinge: smoothing homotopy, then an exact active-set finish
    Eigen::MatrixXd q = hinge_q_primal(xd, y);
    int iters = 0;
    double final_mu = kHingeMu[std::size(kHingeMu) - 1];
    if (cfg.warm_start) {
      Eigen::VectorXd margins = (xd * w).cwiseProduct(y);
      PolishOutcome out = polish_hinge(q, c, margins, 1e-7, cfg.tolerance);
      if (out.gap_rel <= cfg.tolerance) {
        Eigen::VectorXd wd = xd.transpose() * out.alpha.cwiseProduct(y);
        model.w = FeatureVector::primal(std::move(wd));
        model.certificate = out.gap_rel;
        model.iterations = out.rounds;
        return model;
      }
    }
    for (double mu : kHingeMu) {
      IterState st = newton_primal(xd, y, c, {loss, mu},
                                   std::max(1e-9, 1e-2 * mu), cfg.max_iterations, w,
                                   cfg.on_iterate);
      iters += st.iterations;
    }
    Eigen::VectorXd margins = (xd * w).cwiseProduct(y);
    PolishOutcome out = polish_hinge(q, c, margins, 2.0 * final_mu + 1e-9, cfg.tolerance);
    if (out.gap_rel > cfg.tolerance)
      throw solver_error("train: hinge solver did not converge", out.gap_rel);
    Eigen::VectorXd wd = xd.transpose() * out.alpha.cwiseProduct(y);
    model.w = FeatureVector::primal(std::move(wd));
    model.certificate = out.gap_rel;
    model.iterations = iters + out.rounds;
    return model;
  }

  // kernel mode: dual-span coefficients
  DualContextPtr ctx;
  Eigen::VectorXd cf = Eigen::VectorXd::Zero(n);
  if (cfg.warm_start && !cfg.warm_start->is_primal() &&
      cfg.warm_start->context()->kernel == k &&
      cfg.warm_start->context()->data.same_storage(ds)) {
    ctx = cfg.warm_start->context();
    cf = cfg.warm_start->values();
  } else if (cfg.warm_start) {
    throw compat_error("train: warm start incompatible with kernel mode");
  } else {
    ctx = DualContext::make(ds, k);
  }
  if (!ctx) ctx = DualContext::make(ds, k);
  const Eigen::MatrixXd& g_mat = ctx->gram;

  if (loss.kind == LossKind::logistic) {
    IterState st = newton_dual(g_mat, y, c, {loss, 0.0}, cfg.tolerance,
                               cfg.max_iterations, cf, ctx, cfg.on_iterate);
    if (!st.converged)
      throw solver_error("train: logistic solver did not converge", st.residual);
    model.w = FeatureVector::dual(ctx, std::move(cf));
    model.certificate = st.residual;
    model.iterations = st.iterations;
    return model;
  }

  Eigen::MatrixXd q = hinge_q_kernel(g_mat, y);
  int iters = 0;
  double final_mu = kHingeMu[std::size(kHingeMu) - 1];
  if (cfg.warm_start) {
    Eigen::VectorXd margins = (g_mat * cf).cwiseProduct(y);
    PolishOutcome out = polish_hinge(q, c, margins, 1e-7, cfg.tolerance);
    if (out.gap_rel <= cfg.tolerance) {
      model.w = FeatureVector::dual(ctx, out.alpha.cwiseProduct(y));
      model.certificate = out.gap_rel;
      model.iterations = out.rounds;
      return model;
    }
  }
  for (double mu : kHingeMu) {
    IterState st = newton_dual(g_mat, y, c, {loss, mu}, std::max(1e-9, 1e-2 * mu),
                               cfg.max_iterations, cf, ctx, cfg.on_iterate);
    iters += st.iterations;
  }
  Eigen::VectorXd margins = (g_mat * cf).cwiseProduct(y);
  PolishOutcome out = polish_hinge(q, c, margins, 2.0 * final_mu + 1e-9, cfg.tolerance);
  if (out.gap_rel > cfg.tolerance)
    throw solver_error("train: hinge solver did not converge", out.gap_rel);
  model.w = FeatureVector::dual(ctx, out.alpha.cwiseProduct(y));
  model.certificate = out.gap_rel;
  model.iterations = iters + out.rounds;
  return model;
}

double objective_value(const Dataset& ds, const KernelSpec& k, const LossModel& loss,
                       double c, const FeatureVector& w) {
  Eigen::VectorXd z = decision_values(ds, k, w);
  double s = 0.0;
  for (int i = 0; i < ds.rows(); ++i) s += loss.value(ds.y()[i], z[i]);
  return 0.5 * w.squared_norm() + c * s;
}

double stationarity_residual(const Dataset& ds, const KernelSpec& k,
                             const LossModel& loss, double c, const FeatureVector& w) {
  FeatureVector g = loss_gradient_sum(ds, k, loss, w);
  return FeatureVector::combine(1.0, w, c, g).norm();
}

LassoSolution train_lasso(const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                          double lambda, double tolerance, int max_sweeps) {
  if (x.rows() != y.size()) throw std::invalid_argument("train_lasso: shape mismatch");
  if (!(lambda > 0.0)) throw std::invalid_argument("train_lasso: lambda must be positive");
  const int p = static_cast<int>(x.cols());
  Eigen::VectorXd col_sq(p);
  for (int j = 0; j < p; ++j) col_sq[j] = x.col(j).squaredNorm();

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd rho = y;  // y - X beta
  auto soft = [](double v, double t) {
    if (v > t) return v - t;
    if (v < -t) return v + t;
    return 0.0;
  };

  LassoSolution sol;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (int j = 0; j < p; ++j) {
      if (col_sq[j] == 0.0) continue;
      double old = beta[j];
      double corr = x.col(j).dot(rho) + old * col_sq[j];
      double next = soft(corr, lambda) / col_sq[j];
      if (next != old) {
        rho -= (next - old) * x.col(j);
        beta[j] = next;
      }
    }
    double primal = 0.5 * rho.squaredNorm() + lambda * beta.lpNorm<1>();
    double sup = (x.transpose() * rho).lpNorm<Eigen::Infinity>();
    Eigen::VectorXd v = sup > lambda ? (rho * (lambda / sup)).eval() : rho;
    double dual = v.dot(y) - 0.5 * v.squaredNorm();
    sol.gap = std::max(0.0, (primal - dual) / std::max(1.0, primal));
    sol.sweeps = sweep;
    if (sol.gap <= tolerance) {
      sol.beta = std::move(beta);
      sol.alpha = v / lambda;
      return sol;
    }
  }
  throw solver_error("train_lasso: coordinate descent did not converge", sol.gap);
}

}  // namespace optibound
