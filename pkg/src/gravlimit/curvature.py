"""Curvature vacuum fluctuations and their imprint on geodesic distances.

Builds the rank-4 mode tensor of a lightlike wavevector, contracts the
vacuum curvature correlation against the probe direction, and integrates
the geodesic-deviation response over the positive-frequency light cone.
The result is an independent, first-principles route to the distance-noise
spectrum ``l_P**2 b[omega tau] / omega``.

Natural units (c = 1) throughout; index 0 is time; metric signature (+,-,-,-).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._backend import core
from .errors import DomainError, NumericalError
from .kernels import TrackingMode

ETA = np.diag([1.0, -1.0, -1.0, -1.0])
LIGHTLIKE_TOL = 1e-12


class Variance(enum.Enum):
    CONTRAVARIANT = "up"
    COVARIANT = "down"


@dataclass(frozen=True)
class FourVector:
    components: tuple
    variance: Variance = Variance.CONTRAVARIANT

    def __post_init__(self):
        comps = tuple(float(c) for c in self.components)
        if len(comps) != 4:
            raise DomainError("a four-vector needs exactly 4 components")
        object.__setattr__(self, "components", comps)

    @property
    def array(self):
        return np.array(self.components)

    def lower(self):
        if self.variance is Variance.COVARIANT:
            return self
        return FourVector(tuple(ETA @ self.array), Variance.COVARIANT)

    def raise_(self):
        if self.variance is Variance.CONTRAVARIANT:
            return self
        return FourVector(tuple(ETA @ self.array), Variance.CONTRAVARIANT)

    def dot(self, other):
        return float(self.lower().array @ other.raise_().array)

    def is_lightlike(self, tol=LIGHTLIKE_TOL):
        return abs(self.dot(self)) <= tol * self.components[0] ** 2

    @classmethod
    def null(cls, direction, frequency=1.0):
        """Contravariant lightlike vector ``frequency * (1, n)`` for a spatial direction n."""
        n = np.asarray(direction, dtype=float)
        norm = np.linalg.norm(n)
        if norm == 0:
            raise DomainError("direction must be non-zero")
        return cls((frequency, *(frequency * n / norm)))


@dataclass(frozen=True)
class RiemannKernel:
    """Curvature mode tensor R_{mu nu rho sigma}(k), stored as a full 4x4x4x4 array."""

    entries: np.ndarray

    def antisymmetry_error(self):
        r = self.entries
        return max(np.max(np.abs(r + r.transpose(1, 0, 2, 3))),
                   np.max(np.abs(r + r.transpose(0, 1, 3, 2))))

    def pair_symmetry_error(self):
        r = self.entries
        return float(np.max(np.abs(r - r.transpose(2, 3, 0, 1))))

    def cyclic_error(self):
        r = self.entries
        cyc = r + r.transpose(0, 2, 3, 1) + r.transpose(0, 3, 1, 2)
        return float(np.max(np.abs(cyc)))


def _covariant(k):
    return k.lower().array


def _check_null(k, name="k"):
    if not k.is_lightlike():
        raise DomainError(f"{name} is not lightlike: k.k = {k.dot(k)!r}")
    if k.raise_().components[0] <= 0:
        raise DomainError(f"{name} must have positive frequency")


def riemann_entries(k_cov):
    """Mode tensor for covariant wavevector(s) of shape (..., 4)."""
    k = np.asarray(k_cov, dtype=float)
    return 0.5 * (
        np.einsum("...m,...r,vs->...mvrs", k, k, ETA)
        + np.einsum("...v,...s,mr->...mvrs", k, k, ETA)
        - np.einsum("...v,...r,ms->...mvrs", k, k, ETA)
        - np.einsum("...m,...s,vr->...mvrs", k, k, ETA)
    )


def riemann_mode_kernel(k: FourVector) -> RiemannKernel:
    _check_null(k)
    return RiemannKernel(riemann_entries(_covariant(k)))


def brace_weight(kernel: RiemannKernel, u_a: FourVector, u_b: FourVector | None = None):
    """Correlation brace with time indices fixed to 0, contracted against u_a, u_b.

    ``{R_{0v0w} R_{0s0x} + R_{0v0x} R_{0s0w} - R_{0v0s} R_{0w0x}} u_a^v u_a^s u_b^w u_b^x``
    """
    u_b = u_a if u_b is None else u_b
    e = kernel.entries[0, :, 0, :]
    brace = (np.einsum("vw,sx->vswx", e, e) + np.einsum("vx,sw->vswx", e, e)
             - np.einsum("vs,wx->vswx", e, e))
    ua, ub = u_a.raise_().array, u_b.raise_().array
    return float(np.einsum("vswx,v,s,w,x->", brace, ua, ua, ub, ub))


def curvature_corr_weight(k: FourVector, u: FourVector) -> float:
    """Spectral weight of the tidal component R_{0m0n} u^m u^n for one mode k."""
    _check_null(k)
    _check_probe(u)
    return brace_weight(riemann_mode_kernel(k), u)


def _check_probe(u):
    uc = u.raise_()
    if abs(uc.components[0] - 1.0) > LIGHTLIKE_TOL:
        raise DomainError("probe direction must be normalised to u^0 = 1")
    if not uc.is_lightlike():
        raise DomainError("probe direction must be lightlike")


@dataclass(frozen=True)
class PathSpec:
    """Probe path: tracking mode, outgoing direction u = (1, n), propagation time tau."""

    mode: TrackingMode
    u: FourVector
    tau: float

    def __post_init__(self):
        object.__setattr__(self, "mode", TrackingMode.parse(self.mode))
        object.__setattr__(self, "u", self.u.raise_())
        _check_probe(self.u)
        if not self.tau > 0:
            raise DomainError("tau must be positive")

    @property
    def direction(self):
        return self.u.array[1:]

    def legs(self):
        """(direction u^mu, end-point offset Delta^mu, coefficient) per light passage.

        Offsets are relative to the final reception event. The two-way
        observable is half the sum of the outgoing and returning passages.
        """
        n = self.direction
        out = np.concatenate([[1.0], n])
        if self.mode is TrackingMode.ONE_WAY:
            return [(out, np.zeros(4), 1.0)]
        back = np.concatenate([[1.0], -n])
        far_end = np.concatenate([[-self.tau], self.tau * n])
        return [(back, np.zeros(4), 0.5), (out, far_end, 0.5)]


def _leg_amplitudes(path, k_up):
    """Closed-form affine-parameter integrals of the mode phase along each leg."""
    k_cov = k_up @ ETA
    amps = []
    for u_leg, offset, coef in path.legs():
        alpha = k_cov @ u_leg
        half = 0.5 * alpha * path.tau
        # int_0^tau exp(i alpha sigma) d sigma
        sigma_int = path.tau * np.exp(1j * half) * np.sinc(half / np.pi)
        amps.append(coef * np.exp(-1j * (k_cov @ offset)) * sigma_int)
    return k_cov, np.stack(amps, axis=1), np.array([leg[0] for leg in path.legs()])


def _sphere_nodes(n):
    mu, wmu = np.polynomial.legendre.leggauss(n)
    nphi = 2 * n
    phi = 2.0 * np.pi * np.arange(nphi) / nphi
    sin_t = np.sqrt(1.0 - mu**2)
    dirs = np.stack([
        np.repeat(sin_t, nphi) * np.tile(np.cos(phi), n),
        np.repeat(sin_t, nphi) * np.tile(np.sin(phi), n),
        np.repeat(mu, nphi),
    ], axis=1)
    weights = np.repeat(wmu, nphi) * (2.0 * np.pi / nphi)
    return dirs, weights


def _gamma_nodes(n, axis):
    gam, wg = np.polynomial.legendre.leggauss(n)
    axis = axis / np.linalg.norm(axis)
    trial = np.array([1.0, 0.0, 0.0]) if abs(axis[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    perp = trial - axis * (trial @ axis)
    perp /= np.linalg.norm(perp)
    dirs = gam[:, None] * axis + np.sqrt(1.0 - gam**2)[:, None] * perp
    return dirs, 2.0 * np.pi * wg


def _angular_sum(path, omega, dirs, weights):
    k_up = omega * np.hstack([np.ones((len(dirs), 1)), dirs])
    k_cov, amps, u_legs = _leg_amplitudes(path, k_up)
    return core.brace_response(k_cov, weights, amps, u_legs)


def response_first_principles(path: PathSpec, omega: float, abs_tol: float = 1e-10,
                              l_p: float = 1.0, method: str = "sphere",
                              max_nodes: int = 256) -> float:
    """Distance-noise spectrum C_qq[omega] from the curvature correlation.

    Steps: positive-frequency light-cone wavevectors k = omega (1, k_hat);
    closed-form phase integrals along each light passage; geodesic-deviation
    acceleration divided by omega**4; quadrature over k_hat (Gauss-Legendre
    in cos(theta) x trapezoid in phi for ``method="sphere"``, or 1-D
    Gauss-Legendre in the cosine to the probe for ``method="gamma"``).
    The node count doubles until two estimates agree within ``abs_tol``.
    """
    if not omega > 0:
        raise DomainError("first-principles response needs omega > 0")
    if not abs_tol > 0:
        raise DomainError("abs_tol must be positive")
    curvature_norm = 16.0 * math.pi**2 * l_p**2
    fourier_norm = (2.0 * math.pi) ** -3
    # delta(k0**2 - |k|**2) |k|**2 d|k| at k0 = omega
    lightcone_measure = omega / 2.0
    deviation_to_distance = omega**-4
    scale = curvature_norm * fourier_norm * lightcone_measure * deviation_to_distance

    def estimate(n):
        if method == "sphere":
            dirs, weights = _sphere_nodes(n)
        elif method == "gamma":
            dirs, weights = _gamma_nodes(2 * n, path.direction)
        else:
            raise DomainError(f"unknown quadrature method {method!r}")
        return scale * _angular_sum(path, omega, dirs, weights)

    n = 8
    previous = estimate(n)
    while True:
        n *= 2
        current = estimate(n)
        if abs(current - previous) <= abs_tol:
            return current
        if 2 * n > max_nodes:
            raise NumericalError(
                f"wavevector quadrature not converged at omega={omega}",
                estimate=current, error=abs(current - previous), nodes=n,
            )
        previous = current
