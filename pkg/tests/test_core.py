import numpy as np
import pytest

from copkern.core import (
    CheckerboardMatrix,
    MarshallOlkinParams,
    checkerboard_approx,
    checkerboard_copula,
    make_m,
    make_marshall_olkin,
    make_pi,
    make_w,
    transpose,
)
from copkern.registry import make_copula, registered_examples


def check_copula_axioms(c, grid=100, tol=1e-10):
    g = np.linspace(0.0, 1.0, grid + 1)
    C = np.asarray(c.cdf(g[:, None], g[None, :]))
    assert np.max(np.abs(C[0, :])) <= tol, "grounded in x"
    assert np.max(np.abs(C[:, 0])) <= tol, "grounded in y"
    assert np.max(np.abs(C[-1, :] - g)) <= tol, "uniform second margin"
    assert np.max(np.abs(C[:, -1] - g)) <= tol, "uniform first margin"
    vol = C[1:, 1:] - C[:-1, 1:] - C[1:, :-1] + C[:-1, :-1]
    assert vol.min() >= -1e-12, "2-increasing"


def test_pi_values():
    pi = make_pi()
    assert pi.cdf(0.5, 0.5) == 0.25
    assert pi.kernel_cdf(0.3, 0.7) == 0.7
    assert pi.cdf(1.0, 0.37) == 0.37


def test_m_w_values():
    m, w = make_m(), make_w()
    assert m.kernel_cdf(0.4, 0.4) == 1.0
    # W has its point mass at y = 1 - x = 0.7, so just below it the mass is 0
    assert w.kernel_cdf(0.3, 0.69) == 0.0
    assert w.kernel_cdf(0.3, 0.7) == 1.0
    assert w.cdf(0.3, 0.8) == pytest.approx(0.1)


def test_marshall_olkin_reduces_to_pi():
    mo = make_marshall_olkin(MarshallOlkinParams(0.0, 0.0))
    g = np.linspace(0, 1, 21)
    assert np.allclose(mo.cdf(g[:, None], g[None, :]), g[:, None] * g[None, :])


def test_marshall_olkin_reduces_to_m():
    mo = make_marshall_olkin(MarshallOlkinParams(1.0, 1.0))
    assert mo.cdf(0.4, 0.7) == pytest.approx(0.4)


def test_marshall_olkin_kernel_boundary():
    # alpha = beta = 1/2 at the boundary case y^beta = x^alpha: upper branch
    mo = make_marshall_olkin(MarshallOlkinParams(0.5, 0.5))
    assert mo.kernel_cdf(0.25, 0.5) == pytest.approx(0.5 ** 0.5, abs=1e-12)


def test_transpose_marshall_olkin_swaps_params():
    mo = make_marshall_olkin(MarshallOlkinParams(0.3, 0.8))
    swapped = make_marshall_olkin(MarshallOlkinParams(0.8, 0.3))
    t = transpose(mo)
    g = np.linspace(0, 1, 51)
    assert np.max(np.abs(t.cdf(g[:, None], g[None, :])
                         - swapped.cdf(g[:, None], g[None, :]))) <= 1e-12


def test_transpose_involution():
    for spec in ("pi", "clayton:2", "marshall-olkin:0.3:0.8"):
        c = make_copula(spec)
        tt = transpose(transpose(c))
        g = np.linspace(0, 1, 21)
        assert np.allclose(tt.cdf(g[:, None], g[None, :]),
                           c.cdf(g[:, None], g[None, :]), atol=1e-12)


def test_checkerboard_approx_examples():
    assert np.allclose(checkerboard_approx(make_pi(), 2).mass, 0.25)
    m4 = checkerboard_approx(make_m(), 4).mass
    assert np.allclose(m4, np.diag([0.25] * 4))
    w2 = checkerboard_approx(make_w(), 2).mass
    assert np.allclose(w2, [[0.0, 0.5], [0.5, 0.0]])


def test_checkerboard_approx_rejects_zero():
    with pytest.raises(ValueError):
        checkerboard_approx(make_pi(), 0)


def test_checkerboard_copula_uniform_equals_pi():
    cb = checkerboard_copula(CheckerboardMatrix(2, np.full((2, 2), 0.25)))
    assert cb.cdf(0.5, 0.5) == pytest.approx(0.25)
    g = np.linspace(0, 1, 21)
    assert np.allclose(cb.cdf(g[:, None], g[None, :]), g[:, None] * g[None, :])


def test_checkerboard_copula_diagonal_kernel():
    cb = checkerboard_copula(checkerboard_approx(make_m(), 4))
    y = np.linspace(0.0, 0.25, 11)
    assert np.allclose(cb.kernel_cdf(0.1, y), np.minimum(4 * y, 1.0))


def test_checkerboard_disintegration():
    rng = np.random.default_rng(3)
    # random doubly stochastic matrix via Sinkhorn iteration
    a = rng.random((8, 8)) + 0.1
    for _ in range(500):
        a /= a.sum(axis=1, keepdims=True) * 8
        a /= a.sum(axis=0, keepdims=True) * 8
    cb = checkerboard_copula(CheckerboardMatrix(8, a))
    x = (np.arange(4000) + 0.5) / 4000
    ys = np.linspace(0.05, 0.95, 19)
    K = np.asarray(cb.kernel_cdf(x[:, None], ys[None, :]))
    assert np.max(np.abs(K.mean(axis=0) - ys)) <= 1e-10


def test_checkerboard_copula_rejects_bad_matrix():
    with pytest.raises(ValueError):
        checkerboard_copula(CheckerboardMatrix(2, np.array([[0.6, 0.0], [0.0, 0.4]])))


def test_checkerboard_matches_on_lattice():
    c = make_copula("clayton:2")
    N = 8
    cb = checkerboard_copula(checkerboard_approx(c, N))
    g = np.arange(N + 1) / N
    assert np.allclose(cb.cdf(g[:, None], g[None, :]),
                       c.cdf(g[:, None], g[None, :]), atol=1e-14)


@pytest.mark.parametrize("spec", registered_examples())
def test_copula_axioms_all_families(spec):
    check_copula_axioms(make_copula(spec))


@pytest.mark.parametrize("spec", registered_examples())
def test_kernel_monotone_and_reaches_one(spec):
    c = make_copula(spec)
    x = np.linspace(0.02, 0.98, 25)
    y = np.linspace(0.0, 1.0, 101)
    K = np.asarray(c.kernel_cdf(x[:, None], y[None, :]))
    assert np.min(np.diff(K, axis=1)) >= -1e-9
    assert np.allclose(K[:, -1], 1.0)
