"""sklearn-facing estimator wrapper."""

import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from specwave import (
    SpectralFilterRegressor,
    eigendecompose,
    exact_filter,
    grid_graph,
    normalized_laplacian,
    reference_filter,
)

from conftest import random_connected_graph


def small_problem(filter_name="low-pass", n_signals=2, seed=5):
    rng = np.random.default_rng(seed)
    g = grid_graph(4, 4)
    ed = eigendecompose(normalized_laplacian(g))
    X = rng.standard_normal((n_signals, 16))
    gain = reference_filter(filter_name)
    y = np.stack([exact_filter(ed, gain, x) for x in X])
    return g, X, y


def test_fit_predict_score_round_trip():
    g, X, y = small_problem()
    est = SpectralFilterRegressor(graph=g, order=8, max_iter=800, learning_rate=0.1)
    assert est.fit(X, y) is est
    pred = est.predict(X)
    assert pred.shape == X.shape
    assert est.score(X, y) > 0.99
    assert est.coef_.shape == (1, 9)
    assert est.n_iter_ == est.report_.iterations


def test_predict_before_fit_raises():
    g, X, _ = small_problem()
    est = SpectralFilterRegressor(graph=g)
    with pytest.raises(NotFittedError):
        est.predict(X)


def test_predict_preserves_1d_shape():
    g, X, y = small_problem()
    est = SpectralFilterRegressor(graph=g, order=4, max_iter=100).fit(X, y)
    out = est.predict(X[0])
    assert out.shape == (16,)


def test_get_set_params_round_trip_and_clone():
    g, X, y = small_problem()
    est = SpectralFilterRegressor(graph=g, mode="hyperbolic", basis="monomial",
                                  order=2, steps=3, tau=0.25, seed=9, max_iter=50)
    params = est.get_params()
    assert params["mode"] == "hyperbolic"
    assert params["tau"] == 0.25
    dup = clone(est)
    assert dup.get_params() == params
    dup.set_params(order=5)
    assert dup.order == 5 and est.order == 2


def test_identical_seeds_give_identical_models():
    g, X, y = small_problem()
    kw = dict(graph=g, order=6, max_iter=150, seed=4)
    a = SpectralFilterRegressor(**kw).fit(X, y)
    b = SpectralFilterRegressor(**kw).fit(X, y)
    assert np.array_equal(a.coef_, b.coef_)
    assert np.array_equal(a.predict(X), b.predict(X))


def test_hyperbolic_mode_with_gains():
    g, X, y = small_problem()
    est = SpectralFilterRegressor(graph=g, mode="hyperbolic", order=4, steps=3,
                                  learn_gains=True, max_iter=300, learning_rate=0.1)
    est.fit(X, y)
    assert est.gains_.shape == (2,)
    assert est.predict(X).shape == X.shape


def test_laplacian_choices():
    g, X, y = small_problem()
    est = SpectralFilterRegressor(graph=g, laplacian="combinatorial", order=3, max_iter=50)
    est.fit(X, y)  # just has to run; spectrum reaches ~8 so fit quality is poor
    with pytest.raises(ValueError, match="laplacian"):
        SpectralFilterRegressor(graph=g, laplacian="random-walk").fit(X, y)


def test_input_validation():
    g, X, y = small_problem()
    est = SpectralFilterRegressor(graph=g)
    with pytest.raises(ValueError, match="columns"):
        est.fit(X[:, :7], y[:, :7])
    with pytest.raises(ValueError, match="differ"):
        est.fit(X, y[:1])
    with pytest.raises(ValueError, match="Graph"):
        SpectralFilterRegressor(graph=None).fit(X, y)


def test_invalid_family_surfaces_at_fit_time():
    # sklearn convention: bad params raise at fit, not at __init__
    g, X, y = small_problem()
    est = SpectralFilterRegressor(graph=g, basis="fourier")
    with pytest.raises(ValueError, match="family"):
        est.fit(X, y)


def test_per_step_sharing_shapes():
    rng = np.random.default_rng(6)
    g = random_connected_graph(rng, 10)
    x = rng.standard_normal((1, 10))
    y = rng.standard_normal((1, 10))
    est = SpectralFilterRegressor(graph=g, mode="hyperbolic", sharing="per-step",
                                  order=2, steps=5, max_iter=30)
    est.fit(x, y)
    assert est.coef_.shape == (5, 3)
