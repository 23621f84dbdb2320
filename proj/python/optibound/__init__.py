"""Bounds on unseen optimal classifiers.

Train one L2-regularized model, then bound decision values, validation
errors, coefficients, and lasso residuals of models you never train:
skip-training model selection, epsilon-approximate validation paths,
fast LOOCV, and lasso safe screening.
"""

from ._core import (
    Ball,
    CandidateState,
    CBoundCurve,
    CompatError,
    Dataset,
    FeatureVector,
    GeometryError,
    Interval,
    KernelSpec,
    LassoDualBall,
    LassoSolution,
    LoocvResult,
    LrFromSvmResult,
    ParseError,
    PathBreakpoint,
    PathGap,
    PathReport,
    SelectionResult,
    SelectionStep,
    SignStability,
    SolverError,
    TargetInterval,
    TrainedModel,
    ValidationBounds,
    ball_from_suboptimal,
    bound_inner,
    bound_inner_intersection,
    decision_values,
    epsilon_path,
    fast_loocv,
    format_libsvm,
    gram,
    lambda_max,
    lasso_dual_ball,
    load_libsvm,
    log_grid,
    lr_inference_from_svm,
    objective_value,
    parse_libsvm,
    recursive_tighten,
    residual_bounds,
    safe_screen,
    select_model,
    sign_stability_interval,
    split,
    train,
    train_lasso,
    validation_bounds_from_ball,
    validation_bounds_from_curve,
    validation_error,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
