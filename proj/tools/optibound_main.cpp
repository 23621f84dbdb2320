// optibound CLI: train, bound, select, trace, and screen without retraining.
//
// Exit codes: 0 success, 1 I/O error, 2 usage error, 3 solver/geometry failure.
// All feature and row indices in CLI input and output are 1-based, matching
// the LIBSVM file format; the C++ API underneath is 0-based.

#include <CLI11.hpp>

#include <exception>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "optibound/bounds.hpp"
#include "optibound/dataset.hpp"
#include "optibound/errors.hpp"
#include "optibound/lasso.hpp"
#include "optibound/report.hpp"
#include "optibound/selection.hpp"
#include "optibound/trainer.hpp"

namespace ob = optibound;

namespace {

struct Options {
  std::string data;
  std::string val;
  std::string new_data;
  std::string out;
  std::string loss = "logistic";
  std::string kernel = "linear";
  double gamma = 0.0;  // 0 -> 1/d
  double c = 1.0;
  double c_min = 0.01;
  double c_max = 10000.0;
  int c_count = 501;
  double epsilon = 0.0;
  double lambda = 0.0;
  double lambda_ratio = 0.0;
  double screen_gap = 1e-3;
  double tol = 1e-10;
  double split_fraction = 0.8;
  std::uint64_t seed = 1;
  std::vector<int> coeffs;  // 1-based feature ids
};

ob::KernelSpec make_kernel(const Options& o, int dim) {
  if (o.kernel == "linear") return ob::KernelSpec::linear();
  if (o.kernel == "rbf")
    return o.gamma > 0.0 ? ob::KernelSpec::rbf(o.gamma) : ob::KernelSpec::rbf_default(dim);
  throw std::invalid_argument("unknown kernel: " + o.kernel);
}

ob::SolverConfig make_config(const Options& o) {
  ob::SolverConfig cfg;
  cfg.tolerance = o.tol;
  return cfg;
}

// validation set from --val when given, else a seeded shuffle-then-cut split
std::pair<ob::Dataset, ob::Dataset> train_val(const Options& o) {
  ob::Dataset full = ob::load_libsvm(o.data);
  if (!o.val.empty()) return {full, ob::load_libsvm(o.val)};
  return ob::split(full, o.split_fraction, o.seed);
}

std::string csv_sibling(const std::string& out) {
  size_t slash = out.find_last_of("/\\");
  size_t dot = out.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
    return out + ".csv";
  return out.substr(0, dot) + ".csv";
}

int cmd_train(const Options& o) {
  ob::Dataset ds = ob::load_libsvm(o.data);
  ob::TrainedModel m =
      ob::train(ds, make_kernel(o, ds.dim()), ob::LossModel{ob::loss_from_string(o.loss)}, o.c, make_config(o));
  ob::write_text_file(o.out, ob::model_to_json(m).dump(2) + "\n");
  return 0;
}

int cmd_bounds(const Options& o) {
  auto [tr, va] = train_val(o);
  ob::KernelSpec k = make_kernel(o, tr.dim());
  ob::TrainedModel m = ob::train(tr, k, ob::LossModel{ob::loss_from_string(o.loss)}, o.c, make_config(o));
  ob::CandidateGrid grid = ob::CandidateGrid::log_grid(o.c_min, o.c_max, o.c_count);
  std::vector<double> cs, lo, hi;
  for (const ob::CandidateState& s : grid.candidates) {
    ob::ValidationBounds vb = ob::validation_bounds_from_curve(m, va, s.c);
    cs.push_back(s.c);
    lo.push_back(vb.error_lo);
    hi.push_back(vb.error_hi);
  }
  ob::write_text_file(o.out, ob::curve_to_csv(cs, lo, hi));
  return 0;
}

int cmd_model_select(const Options& o) {
  auto [tr, va] = train_val(o);
  ob::SelectionResult res =
      ob::select_model(tr, va, make_kernel(o, tr.dim()), ob::LossModel{ob::loss_from_string(o.loss)},
                       ob::CandidateGrid::log_grid(o.c_min, o.c_max, o.c_count), make_config(o));
  ob::write_text_file(o.out, ob::selection_to_json(res).dump(2) + "\n");
  ob::write_text_file(csv_sibling(o.out), ob::selection_to_csv(res));
  return 0;
}

int cmd_path(const Options& o) {
  auto [tr, va] = train_val(o);
  ob::PathReport res =
      ob::epsilon_path(tr, va, make_kernel(o, tr.dim()), ob::LossModel{ob::loss_from_string(o.loss)}, o.c_min,
                       o.c_max, o.epsilon, make_config(o));
  ob::write_text_file(o.out, ob::path_to_json(res).dump(2) + "\n");
  ob::write_text_file(csv_sibling(o.out), ob::path_to_csv(res));
  return 0;
}

int cmd_loocv(const Options& o) {
  ob::Dataset ds = ob::load_libsvm(o.data);
  ob::LoocvResult res = ob::fast_loocv(ds, make_kernel(o, ds.dim()),
                                       ob::LossModel{ob::loss_from_string(o.loss)}, o.c, make_config(o));
  ob::write_text_file(o.out, ob::loocv_to_json(res, ds.rows(), o.c).dump(2) + "\n");
  return 0;
}

int cmd_lasso_screen(const Options& o) {
  ob::Dataset ds = ob::load_libsvm(o.data, ob::LabelPolicy::real);
  double lmax = ob::lambda_max(ds.x(), ds.y());
  double lambda = o.lambda;
  if (lambda <= 0.0) {
    if (o.lambda_ratio <= 0.0)
      throw std::invalid_argument("lasso-screen: pass --lambda or --lambda-ratio");
    lambda = o.lambda_ratio * lmax;
  }
  // screening-as-you-solve: stop coordinate descent at a loose gap, then
  // certify zero coefficients from the resulting feasible dual point
  ob::LassoSolution sol = ob::train_lasso(ds.x(), ds.y(), lambda, o.screen_gap);
  ob::LassoDualBall ball = ob::lasso_dual_ball(ds.x(), sol.alpha, ds.y(), lambda);
  std::vector<int> screened = ob::safe_screen(ds.x(), ball);
  ob::json j;
  j["lambda"] = lambda;
  j["lambda_max"] = lmax;
  j["gap"] = sol.gap;
  j["ball_radius"] = ball.radius;
  j["features"] = ds.dim();
  j["screened_count"] = screened.size();
  for (int& s : screened) ++s;  // 1-based feature ids on the wire
  j["screened_indices"] = screened;
  ob::write_text_file(o.out, j.dump(2) + "\n");
  return 0;
}

int cmd_lr_from_svm(const Options& o) {
  ob::Dataset ds = ob::load_libsvm(o.data);
  ob::Dataset new_points;
  if (!o.new_data.empty())
    new_points = ob::load_libsvm(o.new_data, ob::LabelPolicy::real);
  std::vector<int> idx;
  if (o.coeffs.empty() && o.new_data.empty()) {
    idx.resize(ds.dim());
    for (int j = 0; j < ds.dim(); ++j) idx[j] = j;
  } else {
    for (int j : o.coeffs) {
      if (j < 1 || j > ds.dim())
        throw std::invalid_argument("lr-from-svm: --coeffs index out of range");
      idx.push_back(j - 1);
    }
  }
  ob::LrFromSvmResult res = ob::lr_inference_from_svm(ds, o.c, idx, new_points, make_config(o));

  ob::json j;
  j["c"] = o.c;
  j["svm"] = ob::model_to_json(res.svm);
  ob::json targets = ob::json::array();
  ob::CsvWriter csv({"kind", "index", "single_lo", "single_hi", "refined_lo", "refined_hi"});
  for (const ob::TargetInterval& t : res.targets) {
    int shown = t.index + 1;
    ob::json e;
    e["kind"] = t.kind;
    e["index"] = shown;
    e["single_lo"] = t.single.lo;
    e["single_hi"] = t.single.hi;
    e["refined_lo"] = t.refined.lo;
    e["refined_hi"] = t.refined.hi;
    targets.push_back(std::move(e));
    csv.add_row(std::vector<std::string>{
        t.kind, std::to_string(shown), ob::format_double(t.single.lo),
        ob::format_double(t.single.hi), ob::format_double(t.refined.lo),
        ob::format_double(t.refined.hi)});
  }
  j["targets"] = std::move(targets);
  ob::write_text_file(o.out, j.dump(2) + "\n");
  ob::write_text_file(csv_sibling(o.out), csv.str());
  return 0;
}

int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const ob::parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ob::solver_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ob::geometry_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const ob::compat_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{
      "optibound: analytic bounds on not-yet-trained regularized classifiers\n"
      "(training-free model selection, validation-error paths, fast LOOCV,\n"
      "logistic inference from an SVM, and lasso safe screening)"};
  app.require_subcommand(1);

  auto add_data = [&](CLI::App* sub, bool with_val) {
    sub->add_option("--data", o.data, "training data, LIBSVM format")
        ->required()
        ->check(CLI::ExistingFile);
    if (with_val) {
      sub->add_option("--val", o.val, "validation data; omitted -> seeded split of --data")
          ->check(CLI::ExistingFile);
      sub->add_option("--split-fraction", o.split_fraction,
                      "training share when splitting (default 0.8)")
          ->check(CLI::Range(1e-6, 1.0 - 1e-6));
      sub->add_option("--seed", o.seed, "split seed (default 1)");
    }
  };
  auto add_model = [&](CLI::App* sub) {
    sub->add_option("--loss", o.loss, "logistic | hinge")
        ->check(CLI::IsMember({"logistic", "hinge"}));
    sub->add_option("--kernel", o.kernel, "linear | rbf")
        ->check(CLI::IsMember({"linear", "rbf"}));
    sub->add_option("--gamma", o.gamma, "rbf width (default 1/d)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--tol", o.tol, "solver tolerance (default 1e-10)")
        ->check(CLI::PositiveNumber);
  };
  auto add_c = [&](CLI::App* sub) {
    sub->add_option("--c", o.c, "regularization parameter C")->check(CLI::PositiveNumber);
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--c-min", o.c_min, "grid start (default 0.01)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--c-max", o.c_max, "grid end (default 10000)")
        ->check(CLI::PositiveNumber);
    sub->add_option("--c-count", o.c_count, "log-spaced grid size (default 501)")
        ->check(CLI::PositiveNumber);
  };
  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out", o.out, "output path")->required();
  };

  CLI::App* train = app.add_subcommand("train", "train one model, write it as JSON");
  add_data(train, false);
  add_model(train);
  add_c(train);
  add_out(train);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "train at --c, then bound validation error across a C grid (CSV)");
  add_data(bounds, true);
  add_model(bounds);
  add_c(bounds);
  add_grid(bounds);
  add_out(bounds);

  CLI::App* select = app.add_subcommand(
      "model-select", "lower-bound pruned search for the best C (JSON + CSV)");
  add_data(select, true);
  add_model(select);
  add_grid(select);
  add_out(select);

  CLI::App* path = app.add_subcommand(
      "path", "epsilon-approximate validation-error path over [c-min, c-max] (JSON + CSV)");
  add_data(path, true);
  add_model(path);
  add_grid(path);
  path->add_option("--epsilon", o.epsilon, "error tolerance (default 0: exact path)")
      ->check(CLI::Range(0.0, 1.0));
  add_out(path);

  CLI::App* loocv = app.add_subcommand(
      "loocv", "leave-one-out CV error, skipping certified folds (JSON)");
  add_data(loocv, false);
  add_model(loocv);
  add_c(loocv);
  add_out(loocv);

  CLI::App* screen = app.add_subcommand(
      "lasso-screen", "certify zero lasso coefficients from a loose solve (JSON)");
  screen->add_option("--data", o.data, "regression data, LIBSVM format")
      ->required()
      ->check(CLI::ExistingFile);
  screen->add_option("--lambda", o.lambda, "l1 penalty")->check(CLI::PositiveNumber);
  screen->add_option("--lambda-ratio", o.lambda_ratio, "penalty as a fraction of lambda_max")
      ->check(CLI::Range(1e-12, 1.0));
  screen->add_option("--screen-gap", o.screen_gap,
                     "relative duality gap to solve to before screening (default 1e-3)")
      ->check(CLI::PositiveNumber);
  add_out(screen);

  CLI::App* lr = app.add_subcommand(
      "lr-from-svm", "bound logistic coefficients/log-odds from one SVM solve (JSON + CSV)");
  add_data(lr, false);
  lr->add_option("--c", o.c, "regularization parameter C")->check(CLI::PositiveNumber);
  lr->add_option("--tol", o.tol, "solver tolerance (default 1e-10)")
      ->check(CLI::PositiveNumber);
  lr->add_option("--coeffs", o.coeffs, "1-based coefficient indices (default: all)")
      ->delimiter(',');
  lr->add_option("--new-data", o.new_data, "points whose log odds to bound (labels ignored)")
      ->check(CLI::ExistingFile);
  add_out(lr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  if (train->parsed()) return run_guarded([&] { return cmd_train(o); });
  if (bounds->parsed()) return run_guarded([&] { return cmd_bounds(o); });
  if (select->parsed()) return run_guarded([&] { return cmd_model_select(o); });
  if (path->parsed()) return run_guarded([&] { return cmd_path(o); });
  if (loocv->parsed()) return run_guarded([&] { return cmd_loocv(o); });
  if (screen->parsed()) return run_guarded([&] { return cmd_lasso_screen(o); });
  if (lr->parsed()) return run_guarded([&] { return cmd_lr_from_svm(o); });
  return 2;
}
