#pragma once

#include <limits>
#include <string>
#include <vector>

#include "optibound/bounds.hpp"

namespace optibound {

struct CandidateState {
  double c = 0.0;
  double eps_lo = 0.0;  // certified lower bound on the validation error
  double eps_hi = 1.0;  // certified upper bound
  bool trained = false;
  double error = std::numeric_limits<double>::quiet_NaN();
};

struct CandidateGrid {
  std::vector<CandidateState> candidates;  // ascending c (duplicates allowed)

  static CandidateGrid log_grid(double c_min, double c_max, int count);
  static CandidateGrid from_values(std::vector<double> values);
  int size() const { return static_cast<int>(candidates.size()); }
};

// next candidate to train: untrained argmin of eps_lo with eps_lo < eps_best,
// ties to the smaller c; -1 when none qualifies
int choose_next(const CandidateGrid& grid, double eps_best);

struct SelectionStep {
  int index = -1;
  double c = 0.0;
  double error = 0.0;
  double eps_best = 1.0;
};

struct SelectionResult {
  CandidateGrid grid;  // final per-candidate bounds
  int best_index = -1;
  double best_c = 0.0;
  double best_error = 1.0;
  int trained_count = 0;
  std::vector<SelectionStep> history;
};

// Skip-training model selection over the grid.  Guarantees the returned best
// validation error equals the exhaustive minimum over all candidates.
// Untrained candidates are bounded through their two nearest trained
// neighbors (lens intersection) or one neighbor at the grid's edges; bounds
// only ever tighten across iterations.
SelectionResult select_model(const Dataset& train, const Dataset& val,
                             const KernelSpec& k, const LossModel& loss,
                             CandidateGrid grid, const SolverConfig& cfg = {});

struct PathBreakpoint {
  double c = 0.0;
  double error = 0.0;  // exact validation error of the model trained at c
};
struct PathGap {
  double c_from = 0.0, c_to = 0.0;
};

struct PathReport {
  double epsilon = 0.0;
  double c_min = 0.0, c_max = 0.0;
  std::vector<PathBreakpoint> breakpoints;
  std::vector<PathGap> gaps;  // forced advances without certification
  int trained_count = 0;
};

// Approximate regularization path: starting at c_min, train, certify decision
// signs forward, and jump to the largest C where at most floor(n' epsilon)
// validation signs are uncertified.  epsilon == 0 traces every change point.
// Every covered C has a breakpoint model whose error differs by at most
// epsilon (+1/n' at the jump targets themselves).
PathReport epsilon_path(const Dataset& train, const Dataset& val, const KernelSpec& k,
                        const LossModel& loss, double c_min, double c_max,
                        double epsilon, const SolverConfig& cfg = {},
                        int max_steps = 1000000);

struct LoocvResult {
  double error = 0.0;
  int solved = 0;   // instances that required an actual leave-one-out solve
  int skipped = 0;  // instances certified from the full-data model alone
};

// Leave-one-out cross validation with one full-data solve plus per-instance
// certificates; equals the naive all-solves answer.
LoocvResult fast_loocv(const Dataset& ds, const KernelSpec& k, const LossModel& loss,
                       double c, const SolverConfig& cfg = {});

struct TargetInterval {
  std::string kind;  // "coefficient" or "log_odds"
  int index = 0;     // coefficient index or row into the new-points set
  Interval single;   // one-ball bound
  Interval refined;  // two-ball refinement, contained in `single`
};

struct LrFromSvmResult {
  TrainedModel svm;
  std::vector<TargetInterval> targets;
};

// Bounds on untrained logistic-regression quantities computed from one SVM
// solution at the same C (linear kernel only): coefficients w*_j and log odds
// <x_new, w*> for the given new points.
LrFromSvmResult lr_inference_from_svm(const Dataset& ds, double c,
                                      const std::vector<int>& coeff_indices,
                                      const Dataset& new_points,
                                      const SolverConfig& cfg = {});

}  // namespace optibound
