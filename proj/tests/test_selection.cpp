#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "optibound/selection.hpp"
#include "support/synthetic.hpp"

using namespace optibound;

TEST_CASE("candidate grids: log spacing, pinned endpoints, validation") {
  CandidateGrid g = CandidateGrid::log_grid(0.01, 100.0, 5);
  REQUIRE(g.size() == 5);
  CHECK(g.candidates.front().c == 0.01);  // endpoints exact, not exp(log(...))
  CHECK(g.candidates.back().c == 100.0);
  CHECK(g.candidates[2].c == doctest::Approx(1.0).epsilon(1e-12));
  for (int i = 1; i < g.size(); ++i) CHECK(g.candidates[i].c > g.candidates[i - 1].c);

  CandidateGrid one = CandidateGrid::log_grid(0.5, 7.0, 1);
  REQUIRE(one.size() == 1);
  CHECK(one.candidates[0].c == 0.5);

  CHECK_THROWS_AS(CandidateGrid::log_grid(0.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(CandidateGrid::log_grid(2.0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(CandidateGrid::log_grid(1.0, 2.0, 0), std::invalid_argument);

  CandidateGrid dup = CandidateGrid::from_values({0.5, 0.5, 2.0});
  CHECK(dup.size() == 3);
  CHECK_THROWS_AS(CandidateGrid::from_values({}), std::invalid_argument);
  CHECK_THROWS_AS(CandidateGrid::from_values({1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(CandidateGrid::from_values({-1.0}), std::invalid_argument);
}

TEST_CASE("choose_next prefers the lowest certified bound, ties to smaller c") {
  CandidateGrid g = CandidateGrid::from_values({0.1, 1.0, 10.0, 100.0});
  g.candidates[0].eps_lo = 0.2;
  g.candidates[1].eps_lo = 0.1;
  g.candidates[2].eps_lo = 0.1;
  g.candidates[3].eps_lo = 0.05;
  g.candidates[3].trained = true;  // trained candidates never picked again
  CHECK(choose_next(g, 0.15) == 1);
  CHECK(choose_next(g, 0.1) == -1);   // nothing strictly below the incumbent
  CHECK(choose_next(g, 0.05) == -1);
  g.candidates[1].trained = true;
  CHECK(choose_next(g, 0.15) == 2);
}

TEST_CASE("select_model with a single candidate trains exactly once") {
  testsupport::Rng rng(111);
  Dataset tr = testsupport::two_gaussians(rng, 40, 4);
  Dataset va = testsupport::two_gaussians(rng, 20, 4);
  SelectionResult res = select_model(tr, va, KernelSpec::linear(), LossModel::logistic(),
                                     CandidateGrid::log_grid(1.0, 1.0, 1));
  CHECK(res.trained_count == 1);
  CHECK(res.best_index == 0);
  CHECK(res.best_c == 1.0);
  REQUIRE(res.history.size() == 1);
  CHECK(res.history[0].index == 0);
  CHECK(res.grid.candidates[0].eps_lo == res.best_error);
  CHECK(res.grid.candidates[0].eps_hi == res.best_error);
}

TEST_CASE("duplicate candidates are certified off the single training run") {
  testsupport::Rng rng(113);
  Dataset tr = testsupport::two_gaussians(rng, 40, 4);
  Dataset va = testsupport::two_gaussians(rng, 20, 4);
  SelectionResult res = select_model(tr, va, KernelSpec::linear(), LossModel::logistic(),
                                     CandidateGrid::from_values({2.0, 2.0, 2.0}));
  CHECK(res.trained_count == 1);
  for (const CandidateState& s : res.grid.candidates) {
    CHECK(s.eps_lo == res.best_error);
    CHECK(s.eps_hi == res.best_error);
  }
}

TEST_CASE("select_model matches the exhaustive sweep and actually prunes") {
  testsupport::Rng rng(115);
  for (int trial = 0; trial < 3; ++trial) {
    Dataset all = testsupport::two_gaussians(rng, 70, 4, 1.5);
    auto [tr, va] = split(all, 0.7, 7 + trial);
    KernelSpec k = KernelSpec::linear();
    LossModel loss = trial == 2 ? LossModel::hinge() : LossModel::logistic();
    SolverConfig cfg;
    cfg.tolerance = loss.kind == LossKind::hinge ? 1e-8 : 1e-10;
    CandidateGrid grid = CandidateGrid::log_grid(0.01, 1000.0, 21);

    SelectionResult res = select_model(tr, va, k, loss, grid, cfg);

    double exhaustive = 1.0;
    for (const CandidateState& s : grid.candidates) {
      TrainedModel m = train(tr, k, loss, s.c, cfg);
      exhaustive = std::min(exhaustive, validation_error(m, va));
    }
    CHECK(res.best_error == exhaustive);
    CHECK(res.trained_count < grid.size());  // pruning happened
    CHECK(res.trained_count >= 1);

    // invariants: trained candidates carry exact errors, bounds bracket them
    for (const CandidateState& s : res.grid.candidates) {
      if (s.trained) {
        CHECK(s.eps_lo == s.error);
        CHECK(s.error >= res.best_error);
      } else {
        CHECK(s.eps_lo >= res.best_error);  // the skip certificate
        CHECK(s.eps_lo <= s.eps_hi);
      }
    }
    REQUIRE(!res.history.empty());
    CHECK(res.history.front().index == 0);
    CHECK(res.history.back().eps_best == res.best_error);
  }
}

TEST_CASE("epsilon_path: budget semantics and coverage guarantee") {
  testsupport::Rng rng(117);
  Dataset all = testsupport::two_gaussians(rng, 80, 4, 1.2);
  auto [tr, va] = split(all, 0.7, 3);
  KernelSpec k = KernelSpec::linear();
  LossModel loss = LossModel::logistic();

  // epsilon = 1 admits any error drift, so a single model covers the range
  PathReport whole = epsilon_path(tr, va, k, loss, 0.01, 100.0, 1.0);
  CHECK(whole.trained_count == 1);
  REQUIRE(whole.breakpoints.size() == 1);
  CHECK(whole.breakpoints[0].c == 0.01);

  PathReport exact = epsilon_path(tr, va, k, loss, 0.01, 100.0, 0.0);
  CHECK(exact.trained_count >= 1);
  CHECK(exact.breakpoints.front().c == 0.01);
  for (size_t i = 1; i < exact.breakpoints.size(); ++i)
    CHECK(exact.breakpoints[i].c > exact.breakpoints[i - 1].c);

  // inside a segment the exact path promises the breakpoint's error verbatim
  if (exact.gaps.empty() && exact.breakpoints.size() >= 2) {
    SolverConfig tight;
    tight.tolerance = 1e-10;
    int checked = 0;
    for (size_t i = 0; i + 1 < exact.breakpoints.size() && checked < 6; ++i) {
      double lo = exact.breakpoints[i].c, hi = exact.breakpoints[i + 1].c;
      double probe = std::sqrt(lo * hi);
      if (probe <= lo || probe >= hi) continue;
      TrainedModel m = train(tr, k, loss, probe, tight);
      CHECK(validation_error(m, va) == exact.breakpoints[i].error);
      ++checked;
    }
    CHECK(checked > 0);
  }

  // looser budgets never need more models
  PathReport loose = epsilon_path(tr, va, k, loss, 0.01, 100.0, 0.1);
  CHECK(loose.trained_count <= exact.trained_count);

  CHECK_THROWS_AS(epsilon_path(tr, va, k, loss, 0.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_path(tr, va, k, loss, 2.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_path(tr, va, k, loss, 1.0, 2.0, -0.1), std::invalid_argument);
  CHECK_THROWS_AS(epsilon_path(tr, va, k, loss, 1.0, 2.0, 1.5), std::invalid_argument);

  PathReport point = epsilon_path(tr, va, k, loss, 5.0, 5.0, 0.0);
  CHECK(point.trained_count == 1);  // degenerate range
}

namespace {

LoocvResult naive_loocv(const Dataset& ds, const KernelSpec& k, const LossModel& loss,
                        double c) {
  SolverConfig cfg;
  int errors = 0;
  for (int i = 0; i < ds.rows(); ++i) {
    TrainedModel m = train(ds.without_row(i), k, loss, c, cfg);
    Dataset left_out = ds.subset({i});
    double z = decision_values(left_out, k, m.w)[0];
    double predicted = z >= 0.0 ? 1.0 : -1.0;
    if (predicted != ds.y()[i]) ++errors;
  }
  LoocvResult r;
  r.error = static_cast<double>(errors) / ds.rows();
  r.solved = ds.rows();
  return r;
}

}  // namespace

TEST_CASE("fast_loocv equals the naive sweep bit for bit") {
  testsupport::Rng rng(119);
  for (int trial = 0; trial < 2; ++trial) {
    Dataset ds = testsupport::two_gaussians(rng, 30, 4, 1.0);
    KernelSpec k = trial == 0 ? KernelSpec::linear() : KernelSpec::rbf(0.5);
    LossModel loss = LossModel::logistic();
    for (double c : {0.01, 1.0}) {
      LoocvResult fast = fast_loocv(ds, k, loss, c);
      LoocvResult naive = naive_loocv(ds, k, loss, c);
      CHECK(fast.error == naive.error);
      CHECK(fast.solved + fast.skipped == ds.rows());
    }
    // heavy regularization pins the solution; skipping dominates
    LoocvResult cheap = fast_loocv(ds, k, loss, 0.01);
    CHECK(cheap.skipped > 0);
  }
  Dataset tiny = testsupport::two_gaussians(rng, 2, 2);
  CHECK_NOTHROW(fast_loocv(tiny, KernelSpec::linear(), LossModel::logistic(), 1.0));
  CHECK_THROWS_AS(fast_loocv(tiny.subset({0}), KernelSpec::linear(),
                             LossModel::logistic(), 1.0),
                  std::invalid_argument);
}

TEST_CASE("lr_inference_from_svm brackets the logistic solution it never trains") {
  testsupport::Rng rng(121);
  Dataset ds = testsupport::two_gaussians(rng, 50, 5, 1.5);
  Dataset fresh = testsupport::two_gaussians(rng, 4, 5, 1.5);
  double c = 0.5;

  LrFromSvmResult res = lr_inference_from_svm(ds, c, {0, 1, 2, 3, 4}, fresh);
  CHECK(res.svm.loss == LossKind::hinge);
  REQUIRE(res.targets.size() == 5 + 4);

  SolverConfig tight;
  tight.tolerance = 1e-12;
  TrainedModel lr = train(ds, KernelSpec::linear(), LossModel::logistic(), c, tight);
  Eigen::VectorXd w = lr.w.to_primal();
  Eigen::VectorXd z = decision_values(fresh, KernelSpec::linear(), lr.w);

  for (const TargetInterval& t : res.targets) {
    double truth = t.kind == "coefficient" ? w[t.index] : z[t.index];
    CHECK(t.single.contains(truth, 1e-8));
    CHECK(t.refined.contains(truth, 1e-8));
    CHECK(t.refined.lo >= t.single.lo - 1e-12);
    CHECK(t.refined.hi <= t.single.hi + 1e-12);
  }

  CHECK_THROWS_AS(lr_inference_from_svm(ds, c, {5}, Dataset()), std::invalid_argument);
  CHECK_THROWS_AS(lr_inference_from_svm(ds, c, {-1}, Dataset()), std::invalid_argument);
}
