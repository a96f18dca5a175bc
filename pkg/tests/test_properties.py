import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from copkern._accel import levy_distance
from copkern.estimation import convexify_pickands


@st.composite
def cdf_grids(draw, m=65):
    jumps = draw(
        st.lists(st.floats(0.0, 1.0, allow_nan=False), min_size=1, max_size=6)
    )
    y = np.linspace(0.0, 1.0, m)
    f = np.zeros(m)
    for j in jumps:
        f += (y >= j).astype(float)
    return f / len(jumps)


@settings(max_examples=50, deadline=None)
@given(cdf_grids(), cdf_grids())
def test_levy_distance_symmetric_bounded(f, g):
    d = levy_distance(f, g)
    assert 0.0 <= d <= 1.0
    assert d == levy_distance(g, f)
    assert levy_distance(f, f) == 0.0


@settings(max_examples=50, deadline=None)
@given(
    st.lists(st.floats(0.0, 1.5, allow_nan=False), min_size=5, max_size=50),
    st.integers(0, 2 ** 31 - 1),
)
def test_convexify_always_yields_valid_pickands(vals, seed):
    # arbitrary noisy raw tables always convexify into a valid Pickands function
    rng = np.random.default_rng(seed)
    t = np.linspace(0.0, 1.0, len(vals))
    raw = {"t": t, "a": np.asarray(vals) + 0.01 * rng.random(len(vals))}
    p = convexify_pickands(raw)
    g = np.linspace(0.0, 1.0, 201)
    a = p.a(g)
    assert abs(a[0] - 1.0) <= 1e-12 and abs(a[-1] - 1.0) <= 1e-12
    assert np.all(a <= 1.0 + 1e-12)
    assert np.all(a >= np.maximum(g, 1.0 - g) - 1e-12)
    slopes = np.diff(a) / np.diff(g)
    assert np.min(np.diff(slopes)) >= -1e-8
