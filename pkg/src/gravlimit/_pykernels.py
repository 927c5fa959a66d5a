"""Pure-Python/NumPy implementation of the hot kernels.

Mirrors ``_ckernels.pyx`` function for function; used whenever the compiled
extension is missing or ``GRAVLIMIT_PURE_PYTHON`` is set.
"""
import heapq
import math

import numpy as np

from ._series import ONE_WAY, SERIES_SWITCH, TWO_WAY, float_table

_COEF = {ONE_WAY: np.array(float_table(ONE_WAY)), TWO_WAY: np.array(float_table(TWO_WAY))}

# 21-point Kronrod abscissae (positive half, centre last) and weights; the
# embedded 10-point Gauss rule uses the odd-indexed Kronrod nodes.
XGK = np.array([
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
])
WGK = np.array([
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208067348360, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
])
WG = np.array([
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
])
_NODES = np.concatenate([-XGK[:-1], XGK[::-1]])
_WK = np.concatenate([WGK[:-1], WGK[::-1]])
_WG = np.zeros(21)
_WG[1:10:2] = WG
_WG[11:20:2] = WG[::-1]
EPS = np.finfo(float).eps

name = "python"


def b_closed_vec(mode, x):
    x = np.abs(np.asarray(x, dtype=float))
    out = np.empty_like(x)
    small = x < SERIES_SWITCH
    xs = x[small]
    coef = _COEF[mode]
    x2 = xs * xs
    acc = np.zeros_like(xs)
    for c in coef[::-1]:
        acc = acc * x2 + c
    out[small] = acc * x2
    xl = x[~small]
    s2 = np.sin(2.0 * xl)
    if mode == ONE_WAY:
        out[~small] = 8.0 / 3.0 - 4.0 / xl**2 + 2.0 * s2 / xl**3
    else:
        c2 = np.cos(2.0 * xl)
        out[~small] = 1.0 - c2 / 3.0 - (3.0 + c2) / xl**2 + 2.0 * s2 / xl**3
    return out


def angular_integrand(mode, x, gamma):
    """Uniform-average integrand over gamma in [-1, 1], including the 1/2 weight."""
    gamma = np.asarray(gamma, dtype=float)
    e_fwd = np.exp(1j * x)
    e_gam = np.exp(1j * gamma * x)
    if mode == ONE_WAY:
        val = (1.0 + gamma) ** 2 * np.abs(e_fwd - e_gam) ** 2
    else:
        amp = (1.0 + gamma) * (e_fwd - e_gam) - (1.0 - gamma) * (np.conj(e_fwd) - e_gam)
        val = 0.25 * np.abs(amp) ** 2
    return 0.5 * val


def _gk21(mode, x, a, b):
    centre = 0.5 * (a + b)
    half = 0.5 * (b - a)
    f = angular_integrand(mode, x, centre + half * _NODES)
    resk = float(np.dot(_WK, f))
    resg = float(np.dot(_WG, f))
    reskh = 0.5 * resk
    resabs = float(np.dot(_WK, np.abs(f))) * abs(half)
    resasc = float(np.dot(_WK, np.abs(f - reskh))) * abs(half)
    err = abs((resk - resg) * half)
    if resasc != 0.0 and err != 0.0:
        err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    if resabs > np.finfo(float).tiny / (50.0 * EPS):
        err = max(50.0 * EPS * resabs, err)
    return resk * half, err


def angular_quad(mode, x, abs_tol, max_sub):
    """Adaptive 21-point Gauss-Kronrod over gamma in [-1, 1].

    Returns ``(value, error_estimate, subdivisions)``; the caller decides
    whether ``error_estimate <= abs_tol`` counts as converged.
    """
    value, err = _gk21(mode, x, -1.0, 1.0)
    heap = [(-err, -1.0, 1.0, value)]
    total, total_err = value, err
    nsub = 0
    while total_err > abs_tol and nsub < max_sub:
        _, a, b, v = heapq.heappop(heap)
        m = 0.5 * (a + b)
        v1, e1 = _gk21(mode, x, a, m)
        v2, e2 = _gk21(mode, x, m, b)
        heapq.heappush(heap, (-e1, a, m, v1))
        heapq.heappush(heap, (-e2, m, b, v2))
        nsub += 1
        total = math.fsum(item[3] for item in heap)
        total_err = math.fsum(-item[0] for item in heap)
    return total, total_err, nsub


_ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def brace_response(k_cov, weights, amps, u):
    """Sum over wavevector nodes of the contracted curvature correlation.

    For each node n the rank-4 mode tensor R_{mu nu rho sigma}(k_n) is built,
    the correlation brace with the time indices fixed to 0 is contracted
    against the leg directions u_a, u_b, and the result multiplies
    Re(amp_a conj(amp_b)).
    """
    k = np.asarray(k_cov, dtype=float)
    u = np.asarray(u, dtype=float)
    amps = np.asarray(amps, dtype=complex)
    riemann = 0.5 * (
        np.einsum("nm,nr,vs->nmvrs", k, k, _ETA)
        + np.einsum("nv,ns,mr->nmvrs", k, k, _ETA)
        - np.einsum("nv,nr,ms->nmvrs", k, k, _ETA)
        - np.einsum("nm,ns,vr->nmvrs", k, k, _ETA)
    )
    e = riemann[:, 0, :, 0, :]
    brace = (
        np.einsum("nvw,nsx->nvswx", e, e)
        + np.einsum("nvx,nsw->nvswx", e, e)
        - np.einsum("nvs,nwx->nvswx", e, e)
    )
    weight = np.einsum("nvswx,av,as,bw,bx->nab", brace, u, u, u, u, optimize=True)
    cross = np.real(amps[:, :, None] * np.conj(amps[:, None, :]))
    return float(np.sum(weights * np.sum(weight * cross, axis=(1, 2))))
