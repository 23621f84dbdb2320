"""End-to-end checks of the python bindings, with scikit-learn as an
independent oracle where the objectives line up."""

import numpy as np
import pytest

import optibound as ob


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def classification(rng):
    n, d = 60, 5
    w = rng.normal(size=d)
    x = rng.normal(size=(n, d))
    y = np.where(x @ w >= 0, 1.0, -1.0)
    y[:2] = [1.0, -1.0]
    return ob.Dataset(x, y), x, y


def test_dataset_roundtrip(classification):
    ds, x, y = classification
    assert len(ds) == 60
    assert ds.dim == 5
    np.testing.assert_allclose(ds.x, x)
    np.testing.assert_allclose(ds.y, y)

    back = ob.parse_libsvm(ob.format_libsvm(ds))
    np.testing.assert_array_equal(back.x, ds.x)

    tr, va = ob.split(ds, 0.8, seed=7)
    assert len(tr) == 48 and len(va) == 12


def test_parse_errors_map_to_python():
    with pytest.raises(ob.ParseError):
        ob.parse_libsvm("not-a-label 1:1\n")
    with pytest.raises(ob.ParseError):
        ob.parse_libsvm("2 1:1\n")  # binary policy
    ob.parse_libsvm("2 1:1\n", binary_labels=False)


def test_train_matches_sklearn(classification):
    sklearn = pytest.importorskip("sklearn.linear_model")
    ds, x, y = classification
    c = 0.7
    model = ob.train(ds, ob.KernelSpec.linear(), "logistic", c, tol=1e-12)
    assert model.certificate <= 1e-12

    # same objective: 0.5 |w|^2 + C sum log(1 + exp(-y x w))
    skl = sklearn.LogisticRegression(
        C=c, fit_intercept=False, penalty="l2", tol=1e-12, max_iter=10000
    ).fit(x, y)
    np.testing.assert_allclose(model.w.values, skl.coef_.ravel(), atol=2e-6)


def test_ball_contains_solution(classification):
    ds, x, y = classification
    c = 1.3
    exact = ob.train(ds, ob.KernelSpec.linear(), "logistic", c, tol=1e-12)
    w_tilde = ob.FeatureVector.primal(np.zeros(ds.dim))
    ball = ob.ball_from_suboptimal(w_tilde, ds, ob.KernelSpec.linear(), "logistic", c)
    for j in range(ds.dim):
        e = np.zeros(ds.dim)
        e[j] = 1.0
        iv = ob.bound_inner(ball, ob.FeatureVector.primal(e))
        assert iv.contains(exact.w.values[j], 1e-10)

    # every ball of the recursion must contain the exact solution
    balls = ob.recursive_tighten(w_tilde, ds, ob.KernelSpec.linear(), "logistic", c, 4)
    assert len(balls) == 4
    for b in balls:
        for j in range(ds.dim):
            e = np.zeros(ds.dim)
            e[j] = 1.0
            iv = ob.bound_inner(b, ob.FeatureVector.primal(e))
            assert iv.contains(exact.w.values[j], 1e-8)


def test_curve_and_validation_bounds(classification):
    ds, _, _ = classification
    tr, va = ob.split(ds, 0.7, seed=3)
    k = ob.KernelSpec.linear()
    ref = ob.train(tr, k, "logistic", 1.0)

    for c in (0.2, 1.0, 5.0):
        vb = ob.validation_bounds_from_curve(ref, va, c)
        exact = ob.validation_error(ob.train(tr, k, "logistic", c), va)
        assert vb.error_lo <= exact + 1e-12
        assert vb.error_hi >= exact - 1e-12

    collapsed = ob.validation_bounds_from_curve(ref, va, 1.0)
    assert collapsed.error_lo == collapsed.error_hi == ob.validation_error(ref, va)


def test_select_model_and_path(classification):
    ds, _, _ = classification
    tr, va = ob.split(ds, 0.7, seed=11)
    k = ob.KernelSpec.linear()
    grid = ob.log_grid(0.01, 100.0, 15)
    res = ob.select_model(tr, va, k, "logistic", grid)
    assert res.trained_count <= len(grid)
    errors = [ob.validation_error(ob.train(tr, k, "logistic", c), va) for c in grid]
    assert res.best_error == min(errors)

    whole = ob.epsilon_path(tr, va, k, "logistic", 0.01, 100.0, 1.0)
    assert whole.trained_count == 1
    some = ob.epsilon_path(tr, va, k, "logistic", 0.01, 100.0, 0.05)
    exact = ob.epsilon_path(tr, va, k, "logistic", 0.01, 100.0, 0.0)
    assert whole.trained_count <= some.trained_count <= exact.trained_count


def test_fast_loocv(classification):
    ds, _, _ = classification
    r = ob.fast_loocv(ds, ob.KernelSpec.linear(), "logistic", 0.01)
    assert r.solved + r.skipped == len(ds)
    assert r.skipped > 0
    assert 0.0 <= r.error <= 1.0


def test_lr_from_svm(classification):
    ds, _, _ = classification
    res = ob.lr_inference_from_svm(ds, 0.5, [0, 1])
    lr = ob.train(ds, ob.KernelSpec.linear(), "logistic", 0.5, tol=1e-12)
    for t in res.targets:
        truth = lr.w.values[t.index]
        assert t.single.contains(truth, 1e-8)
        assert t.refined.contains(truth, 1e-8)
        assert t.refined.lo >= t.single.lo - 1e-12
        assert t.refined.hi <= t.single.hi + 1e-12


def test_lasso_matches_sklearn(rng):
    sklearn = pytest.importorskip("sklearn.linear_model")
    n, d = 50, 8
    x = rng.normal(size=(n, d))
    beta = np.zeros(d)
    beta[:3] = [1.5, -2.0, 0.8]
    y = x @ beta + 0.05 * rng.normal(size=n)

    lam = 0.3 * ob.lambda_max(x, y)
    ours = ob.train_lasso(x, y, lam, tol=1e-12)
    # sklearn scales the quadratic by 1/(2n), so alpha = lambda / n
    skl = sklearn.Lasso(alpha=lam / n, fit_intercept=False, tol=1e-14, max_iter=1000000
                        ).fit(x, y)
    np.testing.assert_allclose(ours.beta, skl.coef_, atol=1e-6)


def test_lasso_screening_is_safe(rng):
    n, d = 40, 10
    x = rng.normal(size=(n, d))
    beta = np.zeros(d)
    beta[:2] = [2.0, -1.0]
    y = x @ beta + 0.1 * rng.normal(size=n)
    lam = 0.4 * ob.lambda_max(x, y)

    exact = ob.train_lasso(x, y, lam, tol=1e-12)
    crude = ob.train_lasso(x, y, lam, tol=1e-3)
    ball = ob.lasso_dual_ball(x, crude.alpha, y, lam)
    assert ball.lambda_ == lam

    screened = ob.safe_screen(x, ball)
    for j in screened:
        assert abs(exact.beta[j]) <= 1e-9

    alpha_star = (y - x @ exact.beta) / lam
    assert np.linalg.norm(alpha_star - ball.center) <= ball.radius + 1e-8
    residual = y - x @ exact.beta
    for i, iv in enumerate(ob.residual_bounds(ball)):
        assert iv.lo - 1e-8 <= residual[i] <= iv.hi + 1e-8

    with pytest.raises(ValueError):
        ob.lasso_dual_ball(np.eye(1), np.array([1.5]), np.array([1.0]), 0.5)


def test_solver_error_surfaces():
    x = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0], [-1.0, 0.5]])
    y = np.array([1.0, -1.0, 1.0, -1.0])
    ds = ob.Dataset(x, y)
    with pytest.raises(ob.SolverError):
        ob.train(ds, ob.KernelSpec.linear(), "logistic", 5.0, tol=1e-30, max_iterations=8)
