# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for the reference."""
import numpy as np

from libc.math cimport sin, cos, fabs, pow, fmax, fmin

from ._series import ONE_WAY, SERIES_SWITCH, TWO_WAY, float_table
from ._pykernels import XGK, WGK, WG

name = "cython"

cdef double[::1] _C1 = np.array(float_table(ONE_WAY))
cdef double[::1] _C2 = np.array(float_table(TWO_WAY))
cdef double _SWITCH = SERIES_SWITCH
cdef double[::1] _XGK = np.ascontiguousarray(XGK)
cdef double[::1] _WGK = np.ascontiguousarray(WGK)
cdef double[::1] _WG = np.ascontiguousarray(WG)
cdef double _EPS = np.finfo(float).eps
cdef double _TINY = np.finfo(float).tiny


cdef inline double _b_closed(int mode, double x) nogil:
    cdef double x2, acc, s2, c2
    cdef Py_ssize_t i, n
    x = fabs(x)
    if x < _SWITCH:
        x2 = x * x
        acc = 0.0
        if mode == 1:
            n = _C1.shape[0]
            for i in range(n - 1, -1, -1):
                acc = acc * x2 + _C1[i]
        else:
            n = _C2.shape[0]
            for i in range(n - 1, -1, -1):
                acc = acc * x2 + _C2[i]
        return acc * x2
    s2 = sin(2.0 * x)
    if mode == 1:
        return 8.0 / 3.0 - 4.0 / (x * x) + 2.0 * s2 / (x * x * x)
    c2 = cos(2.0 * x)
    return 1.0 - c2 / 3.0 - (3.0 + c2) / (x * x) + 2.0 * s2 / (x * x * x)


def b_closed_vec(int mode, x):
    cdef double[::1] xv = np.ascontiguousarray(np.asarray(x, dtype=float).ravel())
    out = np.empty(xv.shape[0])
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(xv.shape[0]):
        ov[i] = _b_closed(mode, xv[i])
    return out.reshape(np.shape(x))


cdef inline double _integrand(int mode, double x, double g) nogil:
    # 0.5 * uniform-average integrand, written with explicit real parts
    cdef double cf = cos(x), sf = sin(x), cg = cos(g * x), sg = sin(g * x)
    cdef double re, im
    if mode == 1:
        re = cf - cg
        im = sf - sg
        return 0.5 * (1.0 + g) * (1.0 + g) * (re * re + im * im)
    re = (1.0 + g) * (cf - cg) - (1.0 - g) * (cf - cg)
    im = (1.0 + g) * (sf - sg) - (1.0 - g) * (-sf - sg)
    return 0.125 * (re * re + im * im)


def angular_integrand(int mode, double x, gamma):
    g = np.asarray(gamma, dtype=float)
    cdef double[::1] gv = np.ascontiguousarray(g.ravel())
    out = np.empty(gv.shape[0])
    cdef double[::1] ov = out
    cdef Py_ssize_t i
    for i in range(gv.shape[0]):
        ov[i] = _integrand(mode, x, gv[i])
    return out.reshape(g.shape)


cdef void _gk21(int mode, double x, double a, double b, double* res, double* err) nogil:
    cdef double centre = 0.5 * (a + b), half = 0.5 * (b - a)
    cdef double fc = _integrand(mode, x, centre)
    cdef double resg = 0.0, resk = fc * _WGK[10], resabs = fabs(resk)
    cdef double fv1[10]
    cdef double fv2[10]
    cdef double f1, f2, dx, reskh, resasc, e
    cdef int j
    for j in range(10):
        dx = half * _XGK[j]
        f1 = _integrand(mode, x, centre - dx)
        f2 = _integrand(mode, x, centre + dx)
        fv1[j] = f1
        fv2[j] = f2
        resk += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (fabs(f1) + fabs(f2))
        if j % 2 == 1:
            resg += _WG[j // 2] * (f1 + f2)
    reskh = 0.5 * resk
    resasc = _WGK[10] * fabs(fc - reskh)
    for j in range(10):
        resasc += _WGK[j] * (fabs(fv1[j] - reskh) + fabs(fv2[j] - reskh))
    resabs *= fabs(half)
    resasc *= fabs(half)
    e = fabs((resk - resg) * half)
    if resasc != 0.0 and e != 0.0:
        e = resasc * fmin(1.0, pow(200.0 * e / resasc, 1.5))
    if resabs > _TINY / (50.0 * _EPS):
        e = fmax(50.0 * _EPS * resabs, e)
    res[0] = resk * half
    err[0] = e


def angular_quad(int mode, double x, double abs_tol, int max_sub):
    cdef int cap = max_sub + 1
    lo_a = np.empty(cap)
    hi_a = np.empty(cap)
    val_a = np.empty(cap)
    err_a = np.empty(cap)
    cdef double[::1] lo = lo_a, hi = hi_a, val = val_a, er = err_a
    cdef int n = 1, nsub = 0, i, worst
    cdef double total, total_err, m, v1, e1, v2, e2
    _gk21(mode, x, -1.0, 1.0, &v1, &e1)
    lo[0] = -1.0
    hi[0] = 1.0
    val[0] = v1
    er[0] = e1
    total_err = e1
    while total_err > abs_tol and nsub < max_sub:
        worst = 0
        for i in range(1, n):
            if er[i] > er[worst]:
                worst = i
        m = 0.5 * (lo[worst] + hi[worst])
        _gk21(mode, x, lo[worst], m, &v1, &e1)
        _gk21(mode, x, m, hi[worst], &v2, &e2)
        lo[n] = m
        hi[n] = hi[worst]
        val[n] = v2
        er[n] = e2
        hi[worst] = m
        val[worst] = v1
        er[worst] = e1
        n += 1
        nsub += 1
        total_err = 0.0
        for i in range(n):
            total_err += er[i]
    import math
    return math.fsum(val_a[:n]), total_err, nsub


cdef inline double _eta(int a, int b) nogil:
    if a != b:
        return 0.0
    return 1.0 if a == 0 else -1.0


def brace_response(k_cov, weights, amps, u):
    """Compiled twin of ``_pykernels.brace_response`` (explicit index loops)."""
    cdef double[:, ::1] k = np.ascontiguousarray(k_cov, dtype=float)
    cdef double[::1] w = np.ascontiguousarray(weights, dtype=float)
    amps = np.asarray(amps, dtype=complex)
    cdef double[:, ::1] are = np.ascontiguousarray(amps.real)
    cdef double[:, ::1] aim = np.ascontiguousarray(amps.imag)
    cdef double[:, ::1] uu = np.ascontiguousarray(u, dtype=float)
    cdef Py_ssize_t nn = k.shape[0], nl = uu.shape[0]
    cdef Py_ssize_t n, a, b, v, s, p, q
    cdef double e[4][4]
    cdef double total = 0.0, node, wab, brace, cross
    for n in range(nn):
        # E[v, s] = R_{0 v 0 s}(k)
        for v in range(4):
            for s in range(4):
                e[v][s] = 0.5 * (k[n, 0] * k[n, 0] * _eta(v, s) + k[n, v] * k[n, s] * _eta(0, 0)
                                 - k[n, v] * k[n, 0] * _eta(0, s) - k[n, 0] * k[n, s] * _eta(v, 0))
        node = 0.0
        for a in range(nl):
            for b in range(nl):
                wab = 0.0
                for v in range(4):
                    for s in range(4):
                        for p in range(4):
                            for q in range(4):
                                brace = e[v][p] * e[s][q] + e[v][q] * e[s][p] - e[v][s] * e[p][q]
                                wab += brace * uu[a, v] * uu[a, s] * uu[b, p] * uu[b, q]
                cross = are[n, a] * are[n, b] + aim[n, a] * aim[n, b]
                node += wab * cross
        total += w[n] * node
    return total
