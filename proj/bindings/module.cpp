// Python bindings for the optibound core: datasets, training, balls and
// interval bounds, model selection, paths, LOOCV, and lasso screening.
// Dense numpy matrices are accepted everywhere and converted to the sparse
// row-major storage the core uses.

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optibound/bounds.hpp"
#include "optibound/dataset.hpp"
#include "optibound/errors.hpp"
#include "optibound/lasso.hpp"
#include "optibound/selection.hpp"
#include "optibound/trainer.hpp"

namespace py = pybind11;
using namespace optibound;

namespace {

SpMat to_sparse(const Eigen::MatrixXd& dense) {
  SpMat s(dense.rows(), dense.cols());
  s = dense.sparseView();
  s.makeCompressed();
  return s;
}

LossModel loss_arg(const std::string& name) { return LossModel{loss_from_string(name)}; }

SolverConfig config_arg(double tol, int max_iterations,
                        const std::optional<FeatureVector>& warm_start) {
  SolverConfig cfg;
  cfg.tolerance = tol;
  cfg.max_iterations = max_iterations;
  cfg.warm_start = warm_start;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "bounds on unseen optimal classifiers: skip-training model selection, "
            "validation paths, fast LOOCV, and lasso safe screening";

  py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
  py::register_exception<solver_error>(m, "SolverError", PyExc_RuntimeError);
  py::register_exception<compat_error>(m, "CompatError", PyExc_ValueError);
  py::register_exception<geometry_error>(m, "GeometryError", PyExc_RuntimeError);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init([](const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
             return Dataset(to_sparse(x), y);
           }),
           py::arg("x"), py::arg("y"))
      .def_property_readonly("rows", &Dataset::rows)
      .def_property_readonly("dim", &Dataset::dim)
      .def_property_readonly("y", [](const Dataset& d) { return d.y(); })
      .def_property_readonly("x", [](const Dataset& d) { return Eigen::MatrixXd(d.x()); })
      .def("row", &Dataset::row_dense, py::arg("i"))
      .def("subset", &Dataset::subset, py::arg("rows"))
      .def("without_row", &Dataset::without_row, py::arg("i"))
      .def("__len__", &Dataset::rows);

  m.def("parse_libsvm",
        [](const std::string& text, bool binary_labels) {
          return parse_libsvm(text, binary_labels ? LabelPolicy::binary : LabelPolicy::real);
        },
        py::arg("text"), py::arg("binary_labels") = true);
  m.def("load_libsvm",
        [](const std::string& path, bool binary_labels) {
          return load_libsvm(path, binary_labels ? LabelPolicy::binary : LabelPolicy::real);
        },
        py::arg("path"), py::arg("binary_labels") = true);
  m.def("format_libsvm", &format_libsvm, py::arg("dataset"));
  m.def("split", &split, py::arg("dataset"), py::arg("fraction"), py::arg("seed"));

  py::class_<KernelSpec>(m, "KernelSpec")
      .def_static("linear", &KernelSpec::linear)
      .def_static("rbf", &KernelSpec::rbf, py::arg("gamma"))
      .def_static("rbf_default", &KernelSpec::rbf_default, py::arg("dim"))
      .def_property_readonly("gamma", [](const KernelSpec& k) { return k.gamma; })
      .def_property_readonly("kind", [](const KernelSpec& k) {
        return k.kind == KernelSpec::Kind::linear ? "linear" : "rbf";
      });
  m.def("gram", &gram, py::arg("dataset"), py::arg("kernel"));

  py::class_<FeatureVector>(m, "FeatureVector")
      .def_static("primal", &FeatureVector::primal, py::arg("values"))
      .def_property_readonly("values", [](const FeatureVector& v) { return v.values(); })
      .def_property_readonly("is_primal", &FeatureVector::is_primal)
      .def("to_primal", &FeatureVector::to_primal)
      .def("norm", &FeatureVector::norm)
      .def("inner", [](const FeatureVector& a, const FeatureVector& b) { return inner(a, b); });

  py::class_<Interval>(m, "Interval")
      .def_readonly("lo", &Interval::lo)
      .def_readonly("hi", &Interval::hi)
      .def_property_readonly("width", &Interval::width)
      .def("contains", &Interval::contains, py::arg("v"), py::arg("slack") = 0.0)
      .def("__repr__", [](const Interval& i) {
        return "Interval(" + std::to_string(i.lo) + ", " + std::to_string(i.hi) + ")";
      });

  py::class_<Ball>(m, "Ball")
      .def_readonly("center", &Ball::center)
      .def_readonly("radius", &Ball::radius);

  py::class_<TrainedModel>(m, "TrainedModel")
      .def_readonly("w", &TrainedModel::w)
      .def_readonly("c", &TrainedModel::c)
      .def_readonly("certificate", &TrainedModel::certificate)
      .def_readonly("iterations", &TrainedModel::iterations)
      .def_property_readonly("loss",
                             [](const TrainedModel& t) { return std::string(to_string(t.loss)); });

  m.def("train",
        [](const Dataset& ds, const KernelSpec& k, const std::string& loss, double c,
           double tol, int max_iterations, const std::optional<FeatureVector>& warm_start) {
          return train(ds, k, loss_arg(loss), c, config_arg(tol, max_iterations, warm_start));
        },
        py::arg("dataset"), py::arg("kernel"), py::arg("loss"), py::arg("c"),
        py::arg("tol") = 1e-10, py::arg("max_iterations") = 500,
        py::arg("warm_start") = std::nullopt);
  m.def("objective_value",
        [](const Dataset& ds, const KernelSpec& k, const std::string& loss, double c,
           const FeatureVector& w) { return objective_value(ds, k, loss_arg(loss), c, w); },
        py::arg("dataset"), py::arg("kernel"), py::arg("loss"), py::arg("c"), py::arg("w"));
  m.def("decision_values", &decision_values, py::arg("dataset"), py::arg("kernel"),
        py::arg("w"));

  m.def("ball_from_suboptimal",
        [](const FeatureVector& w_tilde, const Dataset& ds, const KernelSpec& k,
           const std::string& loss, double c) {
          return ball_from_suboptimal(w_tilde, ds, k, loss_arg(loss), c);
        },
        py::arg("w_tilde"), py::arg("dataset"), py::arg("kernel"), py::arg("loss"),
        py::arg("c"));
  m.def("recursive_tighten",
        [](const FeatureVector& w_tilde, const Dataset& ds, const KernelSpec& k,
           const std::string& loss, double c, int steps) {
          return recursive_tighten(w_tilde, ds, k, loss_arg(loss), c, steps);
        },
        py::arg("w_tilde"), py::arg("dataset"), py::arg("kernel"), py::arg("loss"),
        py::arg("c"), py::arg("steps"));
  m.def("bound_inner", &bound_inner, py::arg("ball"), py::arg("theta"));
  m.def("bound_inner_intersection", &bound_inner_intersection, py::arg("ball1"),
        py::arg("ball2"), py::arg("theta"));

  py::class_<CBoundCurve>(m, "CBoundCurve")
      .def(py::init<double, double, double>(), py::arg("c_ref"), py::arg("p"), py::arg("q"))
      .def_static("from_model", &CBoundCurve::from_model, py::arg("model"), py::arg("theta"))
      .def("at", &CBoundCurve::at, py::arg("c"))
      .def("lower", &CBoundCurve::lower, py::arg("c"))
      .def("upper", &CBoundCurve::upper, py::arg("c"));

  py::class_<ValidationBounds>(m, "ValidationBounds")
      .def_readonly("decision_intervals", &ValidationBounds::decision_intervals)
      .def_readonly("certified_errors", &ValidationBounds::certified_errors)
      .def_readonly("certified_correct", &ValidationBounds::certified_correct)
      .def_readonly("error_lo", &ValidationBounds::error_lo)
      .def_readonly("error_hi", &ValidationBounds::error_hi);
  m.def("validation_bounds_from_ball", &validation_bounds_from_ball, py::arg("ball"),
        py::arg("validation"), py::arg("kernel"));
  m.def("validation_bounds_from_curve", &validation_bounds_from_curve, py::arg("model"),
        py::arg("validation"), py::arg("c"));
  m.def("validation_error", &validation_error, py::arg("model"), py::arg("validation"));

  py::class_<SignStability>(m, "SignStability")
      .def_readonly("sign", &SignStability::sign)
      .def_readonly("c_low", &SignStability::c_low)
      .def_readonly("c_high", &SignStability::c_high)
      .def("certifies", &SignStability::certifies, py::arg("c"));
  m.def("sign_stability_interval",
        py::overload_cast<double, double, double>(&sign_stability_interval), py::arg("p"),
        py::arg("q"), py::arg("c_ref"));

  py::class_<CandidateState>(m, "CandidateState")
      .def_readonly("c", &CandidateState::c)
      .def_readonly("eps_lo", &CandidateState::eps_lo)
      .def_readonly("eps_hi", &CandidateState::eps_hi)
      .def_readonly("trained", &CandidateState::trained)
      .def_readonly("error", &CandidateState::error);
  py::class_<SelectionStep>(m, "SelectionStep")
      .def_readonly("index", &SelectionStep::index)
      .def_readonly("c", &SelectionStep::c)
      .def_readonly("error", &SelectionStep::error)
      .def_readonly("eps_best", &SelectionStep::eps_best);
  py::class_<SelectionResult>(m, "SelectionResult")
      .def_property_readonly(
          "candidates", [](const SelectionResult& r) { return r.grid.candidates; })
      .def_readonly("best_index", &SelectionResult::best_index)
      .def_readonly("best_c", &SelectionResult::best_c)
      .def_readonly("best_error", &SelectionResult::best_error)
      .def_readonly("trained_count", &SelectionResult::trained_count)
      .def_readonly("history", &SelectionResult::history);
  m.def("select_model",
        [](const Dataset& train_ds, const Dataset& val, const KernelSpec& k,
           const std::string& loss, const std::vector<double>& c_grid, double tol) {
          SolverConfig cfg;
          cfg.tolerance = tol;
          return select_model(train_ds, val, k, loss_arg(loss),
                              CandidateGrid::from_values(c_grid), cfg);
        },
        py::arg("train"), py::arg("validation"), py::arg("kernel"), py::arg("loss"),
        py::arg("c_grid"), py::arg("tol") = 1e-10);
  m.def("log_grid",
        [](double c_min, double c_max, int count) {
          std::vector<double> v;
          for (const CandidateState& s : CandidateGrid::log_grid(c_min, c_max, count).candidates)
            v.push_back(s.c);
          return v;
        },
        py::arg("c_min"), py::arg("c_max"), py::arg("count"));

  py::class_<PathBreakpoint>(m, "PathBreakpoint")
      .def_readonly("c", &PathBreakpoint::c)
      .def_readonly("error", &PathBreakpoint::error);
  py::class_<PathGap>(m, "PathGap")
      .def_readonly("c_from", &PathGap::c_from)
      .def_readonly("c_to", &PathGap::c_to);
  py::class_<PathReport>(m, "PathReport")
      .def_readonly("epsilon", &PathReport::epsilon)
      .def_readonly("c_min", &PathReport::c_min)
      .def_readonly("c_max", &PathReport::c_max)
      .def_readonly("breakpoints", &PathReport::breakpoints)
      .def_readonly("gaps", &PathReport::gaps)
      .def_readonly("trained_count", &PathReport::trained_count);
  m.def("epsilon_path",
        [](const Dataset& train_ds, const Dataset& val, const KernelSpec& k,
           const std::string& loss, double c_min, double c_max, double epsilon, double tol) {
          SolverConfig cfg;
          cfg.tolerance = tol;
          return epsilon_path(train_ds, val, k, loss_arg(loss), c_min, c_max, epsilon, cfg);
        },
        py::arg("train"), py::arg("validation"), py::arg("kernel"), py::arg("loss"),
        py::arg("c_min"), py::arg("c_max"), py::arg("epsilon"), py::arg("tol") = 1e-10);

  py::class_<LoocvResult>(m, "LoocvResult")
      .def_readonly("error", &LoocvResult::error)
      .def_readonly("solved", &LoocvResult::solved)
      .def_readonly("skipped", &LoocvResult::skipped);
  m.def("fast_loocv",
        [](const Dataset& ds, const KernelSpec& k, const std::string& loss, double c,
           double tol) {
          SolverConfig cfg;
          cfg.tolerance = tol;
          return fast_loocv(ds, k, loss_arg(loss), c, cfg);
        },
        py::arg("dataset"), py::arg("kernel"), py::arg("loss"), py::arg("c"),
        py::arg("tol") = 1e-10);

  py::class_<TargetInterval>(m, "TargetInterval")
      .def_readonly("kind", &TargetInterval::kind)
      .def_readonly("index", &TargetInterval::index)
      .def_readonly("single", &TargetInterval::single)
      .def_readonly("refined", &TargetInterval::refined);
  py::class_<LrFromSvmResult>(m, "LrFromSvmResult")
      .def_readonly("svm", &LrFromSvmResult::svm)
      .def_readonly("targets", &LrFromSvmResult::targets);
  m.def("lr_inference_from_svm",
        [](const Dataset& ds, double c, const std::vector<int>& coeff_indices,
           const std::optional<Dataset>& new_points, double tol) {
          SolverConfig cfg;
          cfg.tolerance = tol;
          return lr_inference_from_svm(ds, c, coeff_indices,
                                       new_points ? *new_points : Dataset(), cfg);
        },
        py::arg("dataset"), py::arg("c"), py::arg("coeff_indices"),
        py::arg("new_points") = std::nullopt, py::arg("tol") = 1e-10);

  py::class_<LassoSolution>(m, "LassoSolution")
      .def_readonly("beta", &LassoSolution::beta)
      .def_readonly("alpha", &LassoSolution::alpha)
      .def_readonly("gap", &LassoSolution::gap)
      .def_readonly("sweeps", &LassoSolution::sweeps);
  m.def("train_lasso",
        [](const Eigen::MatrixXd& x, const Eigen::VectorXd& y, double lambda, double tol,
           int max_sweeps) { return train_lasso(to_sparse(x), y, lambda, tol, max_sweeps); },
        py::arg("x"), py::arg("y"), py::arg("lam"), py::arg("tol") = 1e-10,
        py::arg("max_sweeps") = 100000);

  py::class_<LassoDualBall>(m, "LassoDualBall")
      .def_readonly("center", &LassoDualBall::center)
      .def_readonly("radius", &LassoDualBall::radius)
      .def_property_readonly("lambda_", [](const LassoDualBall& b) { return b.lambda; });
  m.def("lasso_dual_ball",
        [](const Eigen::MatrixXd& x, const Eigen::VectorXd& alpha_tilde,
           const Eigen::VectorXd& y, double lambda) {
          return lasso_dual_ball(to_sparse(x), alpha_tilde, y, lambda);
        },
        py::arg("x"), py::arg("alpha_tilde"), py::arg("y"), py::arg("lam"));
  m.def("residual_bounds",
        py::overload_cast<const LassoDualBall&>(&residual_bounds), py::arg("ball"));
  m.def("safe_screen",
        [](const Eigen::MatrixXd& x, const LassoDualBall& ball) {
          return safe_screen(to_sparse(x), ball);
        },
        py::arg("x"), py::arg("ball"));
  m.def("lambda_max",
        [](const Eigen::MatrixXd& x, const Eigen::VectorXd& y) {
          return lambda_max(to_sparse(x), y);
        },
        py::arg("x"), py::arg("y"));
}
