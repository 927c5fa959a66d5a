"""The compiled core and the NumPy fallback must agree to rounding."""
import numpy as np
import pytest

from gravlimit import _backend

pytestmark = pytest.mark.skipif(_backend.compiled_core is None, reason="compiled core not built")

PY, CY = _backend.python_core, _backend.compiled_core


@pytest.mark.parametrize("mode", [1, 2])
def test_b_closed_agrees(mode):
    x = np.concatenate([np.linspace(0, 1, 101), np.logspace(-6, 4, 200), -np.logspace(-3, 2, 20)])
    np.testing.assert_allclose(CY.b_closed_vec(mode, x), PY.b_closed_vec(mode, x),
                               rtol=1e-13, atol=1e-300)


@pytest.mark.parametrize("mode", [1, 2])
def test_integrand_agrees(mode):
    g = np.linspace(-1, 1, 301)
    for x in (0.0, 0.3, 3.0, 77.0):
        np.testing.assert_allclose(CY.angular_integrand(mode, x, g), PY.angular_integrand(mode, x, g),
                                   rtol=1e-12, atol=1e-14)


@pytest.mark.parametrize("mode", [1, 2])
@pytest.mark.parametrize("x", [0.01, 0.7, 12.0, 99.0])
def test_quadrature_agrees(mode, x):
    vc, ec, nc = CY.angular_quad(mode, x, 1e-12, 60)
    vp, ep, np_ = PY.angular_quad(mode, x, 1e-12, 60)
    assert nc == np_
    assert abs(vc - vp) <= 1e-13


def test_brace_response_agrees():
    rng = np.random.default_rng(7)
    n = 40
    dirs = rng.normal(size=(n, 3))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    k = 2.5 * np.hstack([np.ones((n, 1)), -dirs])
    u = np.array([[1.0, 0.6, 0.0, 0.8], [1.0, -0.6, 0.0, -0.8], [1.0, 0.0, 1.0, 0.0]])
    amps = rng.normal(size=(n, 3)) + 1j * rng.normal(size=(n, 3))
    w = rng.uniform(size=n)
    assert CY.brace_response(k, w, amps, u) == pytest.approx(PY.brace_response(k, w, amps, u),
                                                             rel=1e-12)


def test_backend_label():
    assert _backend.BACKEND in ("cython", "python")
