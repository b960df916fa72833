"""Loss/gradient machinery and the Adam fitting loop.

The gradients are hand-derived adjoints; every configuration is checked
against central finite differences, which is the module's load-bearing test.
"""

import numpy as np
import pytest

from specwave import (
    FitConfig,
    FitDivergedError,
    FitReport,
    IntegratorConfig,
    ModelSpec,
    PolynomialBasis,
    eigendecompose,
    exact_filter,
    normalized_laplacian,
    reference_filter,
)
from specwave.fitting import fit, forward, gradient, loss, r2_score

from conftest import random_connected_graph


def make_spec(mode, family, order, sharing="shared", steps=3, learn_gains=False, tau=0.3):
    kwargs = {"jacobi_a": 0.5, "jacobi_b": 0.25} if family == "jacobi" else {}
    basis = PolynomialBasis(family, **kwargs)
    integ = None
    if mode == "hyperbolic":
        integ = IntegratorConfig(tau=tau, steps=steps, basis=basis, sharing=sharing)
    return ModelSpec(mode=mode, basis=basis, order=order,
                     integrator=integ, learn_gains=learn_gains)


def fd_gradient(spec, table, L, x, target, gains=None, h=1e-6):
    table = np.atleast_2d(np.asarray(table, dtype=float))
    g = np.zeros_like(table)
    for idx in np.ndindex(*table.shape):
        up, dn = table.copy(), table.copy()
        up[idx] += h
        dn[idx] -= h
        g[idx] = (loss(forward(spec, up, L, x, gains), target)
                  - loss(forward(spec, dn, L, x, gains), target)) / (2 * h)
    if gains is None:
        return g, None
    gg = np.zeros(2)
    for i in range(2):
        up, dn = np.array(gains), np.array(gains)
        up[i] += h
        dn[i] -= h
        gg[i] = (loss(forward(spec, table, L, x, up), target)
                 - loss(forward(spec, table, L, x, dn), target)) / (2 * h)
    return g, gg


# ------------------------------------------------------------------ ModelSpec


def test_model_spec_validation():
    basis = PolynomialBasis("chebyshev")
    with pytest.raises(ValueError, match="mode"):
        ModelSpec(mode="elliptic", basis=basis, order=3)
    with pytest.raises(ValueError, match="IntegratorConfig"):
        ModelSpec(mode="hyperbolic", basis=basis, order=3)
    with pytest.raises(ValueError, match="plain mode"):
        ModelSpec(mode="plain", basis=basis, order=3,
                  integrator=IntegratorConfig(tau=0.1, steps=2, basis=basis))
    with pytest.raises(ValueError, match="gains"):
        ModelSpec(mode="plain", basis=basis, order=3, learn_gains=True)
    other = PolynomialBasis("monomial")
    with pytest.raises(ValueError, match="basis"):
        ModelSpec(mode="hyperbolic", basis=basis, order=3,
                  integrator=IntegratorConfig(tau=0.1, steps=2, basis=other))


def test_model_spec_rows():
    assert make_spec("plain", "chebyshev", 4).rows == 1
    assert make_spec("hyperbolic", "chebyshev", 4, sharing="shared").rows == 1
    assert make_spec("hyperbolic", "chebyshev", 4, sharing="per-step", steps=5).rows == 5


def test_fit_config_validation():
    with pytest.raises(ValueError, match="learning_rate"):
        FitConfig(learning_rate=0.0)
    with pytest.raises(ValueError, match="patience"):
        FitConfig(patience=0)


# ------------------------------------------------------------- loss machinery


def test_loss_is_summed_squared_error():
    pred = np.array([1.0, 2.0, 3.0])
    target = np.array([1.0, 0.0, 0.0])
    assert loss(pred, target) == pytest.approx(0 + 4 + 9)
    with pytest.raises(ValueError, match="mismatch"):
        loss(pred, target[:2])


def test_r2_score_bounds_and_perfect_fit():
    rng = np.random.default_rng(81)
    y = rng.standard_normal(50)
    assert r2_score(y, y) == pytest.approx(1.0)
    assert r2_score(np.full(50, y.mean()), y) == pytest.approx(0.0, abs=1e-12)
    assert r2_score(-y, y) < 0  # arbitrarily bad predictions go negative
    with pytest.raises(ValueError, match="variance"):
        r2_score(y, np.ones(50))


def test_plain_forward_matches_exact_route():
    rng = np.random.default_rng(82)
    g = random_connected_graph(rng, 8)
    L = normalized_laplacian(g)
    ed = eigendecompose(L)
    x = rng.standard_normal(8)
    spec = make_spec("plain", "chebyshev", 5)
    theta = rng.standard_normal(6)
    from specwave import to_scalar_filter

    out = forward(spec, theta, L, x)
    assert np.allclose(out, exact_filter(ed, to_scalar_filter(spec.basis, theta), x),
                       atol=1e-10)


# ------------------------------------------------------- gradient correctness


@pytest.mark.parametrize("family", ["monomial", "chebyshev", "bernstein", "jacobi",
                                    "chebyshev-interp"])
def test_plain_gradient_matches_fd(family):
    rng = np.random.default_rng(83)
    g = random_connected_graph(rng, 6)
    L = normalized_laplacian(g)
    x = rng.standard_normal(6)
    target = rng.standard_normal(6)
    spec = make_spec("plain", family, 4)
    theta = 0.5 * rng.standard_normal((1, 5))
    got, _ = gradient(spec, theta, L, x, target)
    want, _ = fd_gradient(spec, theta, L, x, target)
    assert np.max(np.abs(got - want)) < 1e-6 * max(1.0, np.max(np.abs(want)))


@pytest.mark.parametrize("sharing", ["shared", "per-step"])
@pytest.mark.parametrize("family", ["monomial", "chebyshev", "chebyshev-interp"])
def test_hyperbolic_gradient_matches_fd(family, sharing):
    rng = np.random.default_rng(84)
    g = random_connected_graph(rng, 5)
    L = normalized_laplacian(g)
    x = rng.standard_normal(5)
    target = rng.standard_normal(5)
    spec = make_spec("hyperbolic", family, 3, sharing=sharing, steps=4)
    theta = 0.3 * rng.standard_normal((spec.rows, 4))
    got, _ = gradient(spec, theta, L, x, target)
    want, _ = fd_gradient(spec, theta, L, x, target)
    assert np.max(np.abs(got - want)) < 1e-6 * max(1.0, np.max(np.abs(want)))


def test_gain_gradient_matches_fd():
    rng = np.random.default_rng(85)
    g = random_connected_graph(rng, 5)
    L = normalized_laplacian(g)
    x = rng.standard_normal(5)
    target = rng.standard_normal(5)
    spec = make_spec("hyperbolic", "chebyshev", 2, learn_gains=True, steps=3)
    theta = 0.3 * rng.standard_normal((1, 3))
    gains = np.array([0.8, -0.2])
    got_t, got_g = gradient(spec, theta, L, x, target, gains)
    want_t, want_g = fd_gradient(spec, theta, L, x, target, gains)
    assert np.max(np.abs(got_t - want_t)) < 1e-6 * max(1.0, np.max(np.abs(want_t)))
    assert np.max(np.abs(got_g - want_g)) < 1e-6 * max(1.0, np.max(np.abs(want_g)))


def test_single_step_gradient_edge_case():
    # steps=1 means the init transition is the whole run
    rng = np.random.default_rng(86)
    g = random_connected_graph(rng, 4)
    L = normalized_laplacian(g)
    x = rng.standard_normal(4)
    target = rng.standard_normal(4)
    spec = make_spec("hyperbolic", "monomial", 2, steps=1)
    theta = 0.4 * rng.standard_normal((1, 3))
    got, _ = gradient(spec, theta, L, x, target)
    want, _ = fd_gradient(spec, theta, L, x, target)
    assert np.max(np.abs(got - want)) < 1e-6


# ---------------------------------------------------------------- fitting loop


def test_fit_recovers_generating_coefficients():
    # generate the target from known theta; the fit must reach ~zero loss
    rng = np.random.default_rng(87)
    g = random_connected_graph(rng, 12)
    L = normalized_laplacian(g)
    x = rng.standard_normal(12)
    spec = make_spec("plain", "chebyshev", 3)
    theta_true = np.array([[0.5, -0.3, 0.2, 0.1]])
    y = forward(spec, theta_true, L, x)
    rep = fit(spec, FitConfig(learning_rate=0.1, max_iter=1500, seed=3), [(x, y)], L)
    assert isinstance(rep, FitReport)
    assert rep.final_loss < 1e-8
    assert rep.r2 > 0.999999
    assert rep.coefficients.shape == (1, 4)


def test_fit_is_deterministic():
    rng = np.random.default_rng(88)
    g = random_connected_graph(rng, 10)
    L = normalized_laplacian(g)
    ed = eigendecompose(L)
    x = rng.standard_normal(10)
    y = exact_filter(ed, reference_filter("low-pass"), x)
    spec = make_spec("hyperbolic", "chebyshev", 4, steps=3)
    cfg = FitConfig(max_iter=200, seed=11)
    a = fit(spec, cfg, [(x, y)], L)
    b = fit(spec, cfg, [(x, y)], L)
    assert np.array_equal(a.coefficients, b.coefficients)
    assert a.final_loss == b.final_loss
    assert np.array_equal(a.loss_trace, b.loss_trace)


def test_fit_seed_changes_trajectory():
    rng = np.random.default_rng(89)
    g = random_connected_graph(rng, 8)
    L = normalized_laplacian(g)
    x = rng.standard_normal(8)
    y = rng.standard_normal(8)
    spec = make_spec("plain", "monomial", 3)
    a = fit(spec, FitConfig(max_iter=50, seed=0), [(x, y)], L)
    b = fit(spec, FitConfig(max_iter=50, seed=1), [(x, y)], L)
    assert not np.array_equal(a.coefficients, b.coefficients)


def test_fit_multiple_pairs_uses_mean_loss():
    rng = np.random.default_rng(90)
    g = random_connected_graph(rng, 9)
    L = normalized_laplacian(g)
    spec = make_spec("plain", "chebyshev", 2)
    theta = np.array([[0.3, 0.1, -0.2]])
    pairs = []
    for _ in range(3):
        x = rng.standard_normal(9)
        pairs.append((x, forward(spec, theta, L, x)))
    rep = fit(spec, FitConfig(learning_rate=0.1, max_iter=1500, seed=5), pairs, L)
    assert rep.final_loss < 1e-8  # one shared theta explains all three exactly


def test_fit_early_stopping_trims_iterations():
    rng = np.random.default_rng(91)
    g = random_connected_graph(rng, 6)
    L = normalized_laplacian(g)
    x = rng.standard_normal(6)
    spec = make_spec("plain", "monomial", 1)
    y = forward(spec, np.array([[0.2, 0.3]]), L, x)
    rep = fit(spec, FitConfig(learning_rate=0.2, max_iter=2000, patience=20, seed=2),
              [(x, y)], L)
    assert rep.iterations < 2000
    assert rep.iterations == rep.loss_trace.size


def test_fit_reports_best_seen_not_last():
    rng = np.random.default_rng(92)
    g = random_connected_graph(rng, 6)
    L = normalized_laplacian(g)
    x = rng.standard_normal(6)
    y = rng.standard_normal(6)
    spec = make_spec("plain", "chebyshev", 3)
    rep = fit(spec, FitConfig(learning_rate=0.5, max_iter=300, seed=7), [(x, y)], L)
    assert rep.final_loss <= np.min(rep.loss_trace) + 1e-15


def test_fit_divergence_raises():
    rng = np.random.default_rng(93)
    g = random_connected_graph(rng, 6)
    L = normalized_laplacian(g)
    x = rng.standard_normal(6)
    y = rng.standard_normal(6)
    # an absurd learning rate on an exponentially unstable recurrence pushes
    # the forward pass past float range within a couple of iterations
    spec = make_spec("hyperbolic", "monomial", 2, steps=12, tau=2.0)
    with pytest.raises(FitDivergedError) as exc_info:
        fit(spec, FitConfig(learning_rate=1e13, init_scale=100.0, max_iter=500, seed=0),
            [(x, y)], L)
    assert exc_info.value.iteration >= 1


def test_fit_rejects_empty_dataset():
    rng = np.random.default_rng(94)
    g = random_connected_graph(rng, 4)
    L = normalized_laplacian(g)
    spec = make_spec("plain", "chebyshev", 2)
    with pytest.raises(ValueError):
        fit(spec, FitConfig(), [], L)
