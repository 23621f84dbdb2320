#include "optibound/selection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

#include "optibound/errors.hpp"

namespace optibound {

CandidateGrid CandidateGrid::log_grid(double c_min, double c_max, int count) {
  if (!(c_min > 0.0) || !(c_max >= c_min))
    throw std::invalid_argument("log_grid: need 0 < c_min <= c_max");
  if (count < 1) throw std::invalid_argument("log_grid: count must be >= 1");
  std::vector<double> values(count);
  if (count == 1) {
    values[0] = c_min;
  } else {
    double l0 = std::log(c_min), l1 = std::log(c_max);
    for (int i = 0; i < count; ++i)
      values[i] = std::exp(l0 + (l1 - l0) * i / (count - 1));
    values.front() = c_min;
    values.back() = c_max;
  }
  return from_values(std::move(values));
}

CandidateGrid CandidateGrid::from_values(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("candidate grid: empty");
  CandidateGrid g;
  g.candidates.reserve(values.size());
  double prev = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw std::invalid_argument("candidate grid: c must be positive");
    if (v < prev) throw std::invalid_argument("candidate grid: values must be ascending");
    prev = v;
    CandidateState s;
    s.c = v;
    g.candidates.push_back(s);
  }
  return g;
}

int choose_next(const CandidateGrid& grid, double eps_best) {
  int pick = -1;
  double best_lo = eps_best;
  for (int t = 0; t < grid.size(); ++t) {
    const CandidateState& s = grid.candidates[t];
    if (s.trained) continue;
    if (s.eps_lo < best_lo) {  // strict: ties resolve to the smaller c seen first
      best_lo = s.eps_lo;
      pick = t;
    }
  }
  return pick;
}

namespace {

struct TrainedEntry {
  double c = 0.0;
  double error = 0.0;
  double w_norm = 0.0;
  Eigen::VectorXd val_dv;  // decision values on the validation set
  FeatureVector w;
};

// scalars of the cross-C ball at c built from a model trained at entry.c:
// center a*w, radius b*|w|
struct BallScalars {
  double a = 0.0, rad = 0.0;
};
BallScalars ball_scalars(const TrainedEntry& e, double c) {
  return {(c + e.c) / (2.0 * e.c), std::abs(c - e.c) / (2.0 * e.c) * e.w_norm};
}

Interval instance_interval_pair(const TrainedEntry& lo, const TrainedEntry& hi,
                                double w_lo_dot_w_hi, double c, int i,
                                double theta_norm) {
  BallScalars b1 = ball_scalars(lo, c), b2 = ball_scalars(hi, c);
  double t1 = b1.a * lo.val_dv[i];
  double t2 = b2.a * hi.val_dv[i];
  double a_sq = b1.a * b1.a * lo.w_norm * lo.w_norm +
                b2.a * b2.a * hi.w_norm * hi.w_norm -
                2.0 * b1.a * b2.a * w_lo_dot_w_hi;
  auto lens = try_bound_inner_intersection_scalar(t1, t2, theta_norm, a_sq, t1 - t2,
                                                  b1.rad, b2.rad);
  if (lens) return *lens;
  // rounding said "disjoint"; both single-ball intervals remain valid
  double s1 = theta_norm * b1.rad, s2 = theta_norm * b2.rad;
  return intersect({t1 - s1, t1 + s1}, {t2 - s2, t2 + s2});
}

Interval instance_interval_single(const TrainedEntry& e, double c, int i,
                                  double theta_norm) {
  return CBoundCurve(e.c, e.val_dv[i], theta_norm * e.w_norm).at(c);
}

Eigen::VectorXd validation_norms(const Dataset& val, const KernelSpec& k) {
  Eigen::VectorXd norms(val.rows());
  for (int i = 0; i < val.rows(); ++i)
    norms[i] = std::sqrt(kernel_value(k, val, i, val, i));
  return norms;
}

}  // namespace

SelectionResult select_model(const Dataset& train_ds, const Dataset& val,
                             const KernelSpec& k, const LossModel& loss,
                             CandidateGrid grid, const SolverConfig& cfg) {
  if (train_ds.rows() == 0 || val.rows() == 0)
    throw std::invalid_argument("select_model: empty data");
  SelectionResult res;
  res.grid = std::move(grid);
  const int t_count = res.grid.size();
  const int n_val = val.rows();
  Eigen::VectorXd val_norms = validation_norms(val, k);

  std::vector<TrainedEntry> trained;  // ascending c
  std::map<std::pair<int, int>, double> pair_cache;
  double eps_best = 1.0;

  auto pair_inner = [&](int a, int b) {
    auto key = std::minmax(a, b);
    auto it = pair_cache.find(key);
    if (it != pair_cache.end()) return it->second;
    double v = inner(trained[a].w, trained[b].w);
    pair_cache.emplace(key, v);
    return v;
  };

  auto train_candidate = [&](int t) {
    CandidateState& s = res.grid.candidates[t];
    SolverConfig local = cfg;
    if (!trained.empty()) {
      // warm start from the nearest trained c
      auto nearest = std::min_element(trained.begin(), trained.end(),
                                      [&](const TrainedEntry& a, const TrainedEntry& b) {
                                        return std::abs(std::log(a.c / s.c)) <
                                               std::abs(std::log(b.c / s.c));
                                      });
      local.warm_start = nearest->w;
    }
    TrainedModel m = train(train_ds, k, loss, s.c, local);
    TrainedEntry e;
    e.c = s.c;
    e.error = validation_error(m, val);
    e.val_dv = decision_values(val, k, m.w);
    e.w_norm = m.w.norm();
    e.w = m.w;
    auto pos = std::upper_bound(trained.begin(), trained.end(), e.c,
                                [](double c, const TrainedEntry& x) { return c < x.c; });
    int inserted = static_cast<int>(pos - trained.begin());
    // keep the pair cache keyed to stable indices: shift keys above insert point
    if (!pair_cache.empty()) {
      std::map<std::pair<int, int>, double> shifted;
      for (auto& [key, v] : pair_cache)
        shifted.emplace(std::make_pair(key.first + (key.first >= inserted),
                                       key.second + (key.second >= inserted)),
                        v);
      pair_cache = std::move(shifted);
    }
    trained.insert(pos, std::move(e));
    s.trained = true;
    s.error = e.error;
    s.eps_lo = s.eps_hi = e.error;
    ++res.trained_count;
    if (e.error < eps_best) {
      eps_best = e.error;
      res.best_index = t;
      res.best_c = s.c;
      res.best_error = e.error;
    }
    res.history.push_back({t, s.c, e.error, eps_best});
  };

  auto update_bounds = [&]() {
    for (int t = 0; t < t_count; ++t) {
      CandidateState& s = res.grid.candidates[t];
      if (s.trained) continue;
      // nearest trained neighbors below and above
      int lo = -1, hi = -1;
      for (int e = 0; e < static_cast<int>(trained.size()); ++e) {
        if (trained[e].c <= s.c) lo = e;
        if (trained[e].c >= s.c) {
          hi = e;
          break;
        }
      }
      std::vector<Interval> per(n_val);
      if (lo >= 0 && hi >= 0) {
        double cross = pair_inner(lo, hi);
        for (int i = 0; i < n_val; ++i)
          per[i] = instance_interval_pair(trained[lo], trained[hi], cross, s.c, i,
                                          val_norms[i]);
      } else {
        const TrainedEntry& e = trained[lo >= 0 ? lo : hi];
        for (int i = 0; i < n_val; ++i)
          per[i] = instance_interval_single(e, s.c, i, val_norms[i]);
      }
      ValidationBounds vb = aggregate_validation_bounds(per, val.y());
      s.eps_lo = std::max(s.eps_lo, vb.error_lo);
      s.eps_hi = std::min(s.eps_hi, vb.error_hi);
    }
  };

  train_candidate(0);
  update_bounds();
  for (int next = choose_next(res.grid, eps_best); next >= 0;
       next = choose_next(res.grid, eps_best)) {
    train_candidate(next);
    update_bounds();
  }
  return res;
}

PathReport epsilon_path(const Dataset& train_ds, const Dataset& val, const KernelSpec& k,
                        const LossModel& loss, double c_min, double c_max,
                        double epsilon, const SolverConfig& cfg, int max_steps) {
  if (!(c_min > 0.0) || !(c_max >= c_min))
    throw std::invalid_argument("epsilon_path: need 0 < c_min <= c_max");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("epsilon_path: epsilon must lie in [0, 1]");
  if (val.rows() == 0) throw std::invalid_argument("epsilon_path: empty validation set");

  PathReport report;
  report.epsilon = epsilon;
  report.c_min = c_min;
  report.c_max = c_max;
  const int n_val = val.rows();
  const int allowed = static_cast<int>(std::floor(n_val * epsilon + 1e-9));
  Eigen::VectorXd val_norms = validation_norms(val, k);

  double c = c_min;
  SolverConfig local = cfg;
  while (true) {
    TrainedModel m = train(train_ds, k, loss, c, local);
    report.breakpoints.push_back({c, validation_error(m, val)});
    if (static_cast<int>(report.breakpoints.size()) > max_steps)
      throw std::runtime_error("epsilon_path: step limit exceeded");
    if (c >= c_max) break;
    local.warm_start = m.w;

    if (allowed >= n_val) break;  // everything within budget already
    Eigen::VectorXd dv = decision_values(val, k, m.w);
    double wn = m.w.norm();
    // forward horizon per instance: certified sign persistence ends there
    std::vector<double> horizon(n_val);
    for (int i = 0; i < n_val; ++i) {
      SignStability s = sign_stability_interval(dv[i], val_norms[i] * wn, c);
      horizon[i] = s.sign == 0 ? c : s.c_high;
    }
    std::nth_element(horizon.begin(), horizon.begin() + allowed, horizon.end());
    double next = horizon[allowed];
    if (next > c_max) break;  // certified through the end of the range
    if (next <= c * (1.0 + 1e-12)) {
      // cannot certify an advance; take a minimal multiplicative step
      next = std::min(c * 1.001, c_max);
      report.gaps.push_back({c, next});
      if (next <= c) break;
    }
    c = next;
  }
  report.trained_count = static_cast<int>(report.breakpoints.size());
  return report;
}

LoocvResult fast_loocv(const Dataset& ds, const KernelSpec& k, const LossModel& loss,
                       double c, const SolverConfig& cfg) {
  const int n = ds.rows();
  if (n < 2) throw std::invalid_argument("fast_loocv: need at least two instances");
  TrainedModel full = train(ds, k, loss, c, cfg);

  Eigen::VectorXd z = decision_values(ds, k, full.w);
  Eigen::VectorXd g(n);
  for (int i = 0; i < n; ++i) g[i] = loss.slope(ds.y()[i], z[i]);

  // per-instance interval for <phi_j, w_(-j)> from the full-data solution:
  // leave-one-out gradient sum is (full sum) - g_j phi_j
  Eigen::VectorXd t_center(n), radius(n), theta_norm(n);
  if (k.kind == KernelSpec::Kind::linear) {
    const Eigen::VectorXd w = full.w.to_primal();
    Eigen::VectorXd gsum = ds.x().transpose() * g;
    Eigen::VectorXd v = w + c * gsum;  // w + C * full gradient sum
    Eigen::VectorXd xg = ds.x() * gsum;
    Eigen::VectorXd xv = ds.x() * v;
    for (int j = 0; j < n; ++j) {
      double xx = ds.row_squared_norm(j);
      t_center[j] = 0.5 * (z[j] - c * (xg[j] - g[j] * xx));
      double rsq = v.squaredNorm() - 2.0 * c * g[j] * xv[j] + c * c * g[j] * g[j] * xx;
      radius[j] = 0.5 * std::sqrt(std::max(0.0, rsq));
      theta_norm[j] = std::sqrt(xx);
    }
  } else {
    const Eigen::MatrixXd& gm = full.w.context()->gram;
    const Eigen::VectorXd& cf = full.w.values();
    Eigen::VectorXd v = cf + c * g;
    Eigen::VectorXd gm_g = gm * g;
    Eigen::VectorXd gm_v = gm * v;
    double v_sq = v.dot(gm_v);
    for (int j = 0; j < n; ++j) {
      double kjj = gm(j, j);
      t_center[j] = 0.5 * (z[j] - c * (gm_g[j] - g[j] * kjj));
      double rsq = v_sq - 2.0 * c * g[j] * gm_v[j] + c * c * g[j] * g[j] * kjj;
      radius[j] = 0.5 * std::sqrt(std::max(0.0, rsq));
      theta_norm[j] = std::sqrt(kjj);
    }
  }

  LoocvResult res;
  int errors = 0;
  for (int j = 0; j < n; ++j) {
    double lo = t_center[j] - theta_norm[j] * radius[j];
    double hi = t_center[j] + theta_norm[j] * radius[j];
    int predicted;
    if (lo > 0.0) {
      predicted = 1;
      ++res.skipped;
    } else if (hi < 0.0) {
      predicted = -1;
      ++res.skipped;
    } else {
      Dataset rest = ds.without_row(j);
      SolverConfig local = cfg;
      if (k.kind == KernelSpec::Kind::linear) local.warm_start = full.w;
      TrainedModel sub = train(rest, k, loss, c, local);
      double value = decision_values(ds.subset({j}), k, sub.w)[0];
      predicted = value >= 0.0 ? 1 : -1;  // sign(0) == +1
      ++res.solved;
    }
    if (predicted != static_cast<int>(ds.y()[j])) ++errors;
  }
  res.error = static_cast<double>(errors) / n;
  return res;
}

LrFromSvmResult lr_inference_from_svm(const Dataset& ds, double c,
                                      const std::vector<int>& coeff_indices,
                                      const Dataset& new_points,
                                      const SolverConfig& cfg) {
  KernelSpec k = KernelSpec::linear();
  LrFromSvmResult res;
  res.svm = train(ds, k, LossModel::hinge(), c, cfg);

  // the SVM solution is a suboptimal point of the logistic objective at the
  // same C; its ball plus the recentered second ball tighten each other
  std::vector<Ball> balls =
      recursive_tighten(res.svm.w, ds, k, LossModel::logistic(), c, 2);
  const Ball& s1 = balls[0];
  const Ball& s2 = balls[1];

  auto add_target = [&](const std::string& kind, int index, const FeatureVector& theta) {
    TargetInterval t;
    t.kind = kind;
    t.index = index;
    t.single = bound_inner(s1, theta);
    t.refined = bound_inner_intersection(s1, s2, theta);
    res.targets.push_back(std::move(t));
  };

  for (int j : coeff_indices) {
    if (j < 0 || j >= ds.dim())
      throw std::invalid_argument("lr_inference_from_svm: coefficient index out of range");
    Eigen::VectorXd e = Eigen::VectorXd::Zero(ds.dim());
    e[j] = 1.0;
    add_target("coefficient", j, FeatureVector::primal(std::move(e)));
  }
  for (int i = 0; i < new_points.rows(); ++i) {
    Eigen::VectorXd x = new_points.row_dense(i);
    x.conservativeResize(ds.dim());
    if (new_points.dim() < ds.dim())
      x.tail(ds.dim() - new_points.dim()).setZero();
    add_target("log_odds", i, FeatureVector::primal(std::move(x)));
  }
  return res;
}

}  // namespace optibound
