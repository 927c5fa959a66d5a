import math

import numpy as np
import pytest

from gravlimit.curvature import (FourVector, PathSpec, Variance, brace_weight,
                                 curvature_corr_weight, response_first_principles,
                                 riemann_mode_kernel)
from gravlimit.errors import DomainError, NumericalError
from gravlimit.kernels import TrackingMode, b_closed

ONE, TWO = TrackingMode.ONE_WAY, TrackingMode.TWO_WAY
TILTED = FourVector.null([1.0, 2.0, 2.0])


def _random_null(rng, n):
    dirs = rng.normal(size=(n, 3))
    freqs = rng.uniform(0.1, 10.0, size=n)
    return [FourVector.null(d, f) for d, f in zip(dirs, freqs)]


def _hand_riemann(k_up):
    """Independent loop version of the mode tensor with an explicit metric."""
    eta = [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]
    k = [sum(eta[m][n] * k_up[n] for n in range(4)) for m in range(4)]
    r = np.zeros((4, 4, 4, 4))
    for m in range(4):
        for v in range(4):
            for p in range(4):
                for s in range(4):
                    r[m, v, p, s] = 0.5 * (k[m] * k[p] * eta[v][s] + k[v] * k[s] * eta[m][p]
                                           - k[v] * k[p] * eta[m][s] - k[m] * k[s] * eta[v][p])
    return r


def test_entry_0101():
    r = riemann_mode_kernel(FourVector((1.0, 0.0, 0.0, 1.0)))
    assert r.entries[0, 1, 0, 1] == -0.5


def test_kernel_matches_loop_version():
    rng = np.random.default_rng(3)
    for k in _random_null(rng, 10):
        np.testing.assert_allclose(riemann_mode_kernel(k).entries, _hand_riemann(k.components),
                                   rtol=1e-14, atol=1e-14)


def test_symmetry_suite_random_null_vectors():
    rng = np.random.default_rng(11)
    for k in _random_null(rng, 100):
        r = riemann_mode_kernel(k)
        scale = k.components[0] ** 2
        assert r.antisymmetry_error() <= 1e-12 * scale
        assert r.pair_symmetry_error() <= 1e-12 * scale
        assert r.cyclic_error() <= 1e-12 * scale
        np.testing.assert_array_equal(r.entries.transpose(1, 0, 2, 3), -r.entries)


def test_rejects_non_null_and_negative_frequency():
    with pytest.raises(DomainError):
        riemann_mode_kernel(FourVector((1.0, 0.5, 0.0, 0.0)))
    with pytest.raises(DomainError):
        riemann_mode_kernel(FourVector((-1.0, 1.0, 0.0, 0.0)))


def test_covariant_input_accepted():
    k = FourVector((2.0, 0.0, 0.0, 2.0))
    np.testing.assert_array_equal(riemann_mode_kernel(k.lower()).entries,
                                  riemann_mode_kernel(k).entries)
    assert k.lower().variance is Variance.COVARIANT
    assert k.lower().raise_() == k


def _weight_closed(omega, gamma):
    # hand contraction: R_{0m0n} u^m u^n = -(omega^2 / 2)(1 - gamma^2)
    return 0.25 * omega**4 * (1 - gamma**2) ** 2


def test_weight_vanishes_for_parallel_wavevector():
    u = FourVector.null([0.0, 0.0, 1.0])
    assert curvature_corr_weight(FourVector.null([0, 0, 1], 3.0), u) == 0.0
    assert curvature_corr_weight(FourVector.null([0, 0, -1], 3.0), u) == 0.0


def test_weight_homogeneous_degree_four():
    rng = np.random.default_rng(5)
    for k in _random_null(rng, 20):
        u = _random_null(rng, 1)[0]
        u = FourVector.null(u.components[1:])
        w1 = curvature_corr_weight(k, u)
        k2 = FourVector(tuple(2 * c for c in k.components))
        assert curvature_corr_weight(k2, u) == pytest.approx(16 * w1, rel=1e-12, abs=1e-300)


def test_weight_non_negative_monte_carlo():
    rng = np.random.default_rng(9)
    ks = _random_null(rng, 500)
    us = [FourVector.null(rng.normal(size=3)) for _ in range(500)]
    assert min(curvature_corr_weight(k, u) for k, u in zip(ks, us)) >= 0.0


def test_weight_matches_hand_contraction():
    rng = np.random.default_rng(2)
    n = np.array([0.0, 0.6, 0.8])
    u = FourVector.null(n)
    for k in _random_null(rng, 30):
        omega = k.components[0]
        gamma = float(np.dot(k.components[1:], n) / omega)
        assert curvature_corr_weight(k, u) == pytest.approx(_weight_closed(omega, gamma),
                                                            rel=1e-10, abs=1e-12 * omega**4)


def test_brace_weight_matches_core(backend):
    rng = np.random.default_rng(4)
    u_a, u_b = FourVector.null([1, 0, 0]), FourVector.null([-1, 0, 0])
    for k in _random_null(rng, 10):
        r = riemann_mode_kernel(k)
        core_val = backend.brace_response(np.array([k.lower().array]), np.array([1.0]),
                                          np.array([[1.0, 0.0]]), np.array([u_a.array, u_b.array]))
        assert core_val == pytest.approx(brace_weight(r, u_a), rel=1e-12)
        cross = backend.brace_response(np.array([k.lower().array]), np.array([1.0]),
                                       np.array([[1.0, 1.0]]), np.array([u_a.array, u_b.array]))
        expected = brace_weight(r, u_a) + brace_weight(r, u_b) + 2 * brace_weight(r, u_a, u_b)
        assert cross == pytest.approx(expected, rel=1e-12)


def test_probe_validation():
    with pytest.raises(DomainError):
        curvature_corr_weight(FourVector.null([1, 0, 0]), FourVector.null([0, 1, 0], 2.0))
    with pytest.raises(DomainError):
        PathSpec(ONE, FourVector.null([0, 0, 1]), 0.0)


def test_two_way_legs():
    legs = PathSpec(TWO, FourVector.null([0, 0, 1]), 2.0).legs()
    assert len(legs) == 2
    np.testing.assert_array_equal(legs[0][0], [1, 0, 0, -1])
    np.testing.assert_array_equal(legs[1][1], [-2, 0, 0, 2])
    assert legs[0][2] == legs[1][2] == 0.5


@pytest.mark.parametrize("mode, omega", [(ONE, 1.0), (TWO, 3.0), (ONE, 0.25), (TWO, 7.0)])
def test_first_principles_examples(mode, omega, backend):
    value = response_first_principles(PathSpec(mode, TILTED, 1.0), omega, 1e-10)
    assert abs(value - b_closed(mode, omega) / omega) <= 1e-6


@pytest.mark.parametrize("mode", [ONE, TWO])
def test_first_principles_low_frequency(mode):
    tau = 2.0
    path = PathSpec(mode, TILTED, tau)
    values = [response_first_principles(path, w, 1e-14) for w in (1e-2, 1e-3)]
    assert values[1] < values[0]
    assert values[1] == pytest.approx(8 / 15 * tau**2 * 1e-3, rel=1e-4)


def test_first_principles_scales_with_planck_length():
    path = PathSpec(ONE, TILTED, 1.0)
    base = response_first_principles(path, 2.0, 1e-12)
    assert response_first_principles(path, 2.0, 1e-12, l_p=3.0) == pytest.approx(9 * base, rel=1e-12)


@pytest.mark.parametrize("mode", [ONE, TWO])
@pytest.mark.parametrize("omega", [0.5, 4.0])
def test_azimuthal_symmetry(mode, omega, backend):
    path = PathSpec(mode, TILTED, 1.0)
    sphere = response_first_principles(path, omega, 1e-12, method="sphere")
    gamma = response_first_principles(path, omega, 1e-12, method="gamma")
    assert abs(sphere - gamma) <= 1e-8


def test_direction_independence():
    a = response_first_principles(PathSpec(TWO, TILTED, 1.0), 5.0, 1e-12)
    b = response_first_principles(PathSpec(TWO, FourVector.null([0, 0, 1]), 1.0), 5.0, 1e-12)
    assert a == pytest.approx(b, rel=1e-10)


def test_first_principles_errors():
    path = PathSpec(ONE, TILTED, 1.0)
    with pytest.raises(DomainError):
        response_first_principles(path, 0.0)
    with pytest.raises(DomainError):
        response_first_principles(path, 1.0, method="cube")
    with pytest.raises(NumericalError) as info:
        response_first_principles(path, 60.0, 1e-14, max_nodes=16)
    assert info.value.estimate is not None
    assert math.isfinite(info.value.error)
