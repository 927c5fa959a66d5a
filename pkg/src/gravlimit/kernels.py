"""Dimensionless response kernels b[x], x = omega * tau.

The kernels convert an isotropic curvature-fluctuation spectrum into the
length-noise spectrum of a one-way or two-way (half round trip) distance
measurement. Three evaluation routes are provided:

* :func:`b_closed` -- trigonometric closed form, delegating to the Taylor
  series for ``|x| < SERIES_SWITCH`` where the closed form cancels badly;
* :func:`b_series` -- the Taylor series itself (exact rational coefficients);
* :func:`b_angular_oracle` -- adaptive Gauss-Kronrod quadrature of the
  angular average, independent of both of the above.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from . import _series
from ._backend import core
from ._series import SERIES_SWITCH
from .errors import DomainError, NumericalError

MAX_SUBDIVISIONS = 60


class TrackingMode(enum.Enum):
    ONE_WAY = _series.ONE_WAY
    TWO_WAY = _series.TWO_WAY

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        if key in ("one-way", "oneway", "1"):
            return cls.ONE_WAY
        if key in ("two-way", "twoway", "2"):
            return cls.TWO_WAY
        raise DomainError(f"unknown tracking mode {value!r}")

    @property
    def label(self):
        return "one-way" if self is TrackingMode.ONE_WAY else "two-way"


def _mode_code(mode):
    return TrackingMode.parse(mode).value


def b_closed(mode, x):
    """Closed-form kernel, accepting scalars or arrays (even in ``x``).

    ``b_closed(ONE_WAY, x) = 8/3 - 4/x**2 + 2 sin(2x)/x**3``
    ``b_closed(TWO_WAY, x) = 1 - cos(2x)/3 - (3 + cos(2x))/x**2 + 2 sin(2x)/x**3``

    The two-way kernel keeps its ``-cos(2x)/3`` oscillation at large ``x``;
    use :func:`b_high_freq` for the oscillation-averaged limit.
    """
    code = _mode_code(mode)
    arr = np.asarray(x, dtype=float)
    if np.isnan(arr).any():
        raise DomainError("b_closed got NaN")
    out = core.b_closed_vec(code, arr.reshape(-1)).reshape(arr.shape)
    if arr.ndim == 0:
        return float(out)
    return out


def b_series(mode, x, n_terms=_series.DEFAULT_TERMS):
    """Taylor series of the kernel in ``x**2`` truncated after ``n_terms`` terms.

    Both modes start with ``(8/15) x**2``. Accurate to double precision for
    ``|x| <= SERIES_SWITCH`` with the default term count; the series converges
    for every x but is only meant for small arguments.
    """
    if n_terms < 2:
        raise DomainError(f"series needs at least 2 terms, got {n_terms}")
    if n_terms > _series.MAX_TERMS:
        raise DomainError(f"series capped at {_series.MAX_TERMS} terms")
    if isinstance(x, float) and math.isnan(x):
        raise DomainError("b_series got NaN")
    coef = _series.float_table(_mode_code(mode), n_terms)
    x2 = np.asarray(x, dtype=float) ** 2
    acc = np.zeros_like(x2)
    for c in reversed(coef):
        acc = acc * x2 + c
    out = acc * x2
    return float(out) if out.ndim == 0 else out


def b_angular_oracle(mode, x, abs_tol=1e-12, max_subdivisions=MAX_SUBDIVISIONS):
    """Angular average of the kernel integrand by adaptive quadrature over gamma.

    gamma is the cosine of the angle between the wavevector and the
    propagation direction, uniformly distributed on [-1, 1].

    Raises
    ------
    NumericalError
        if the error estimate still exceeds ``abs_tol`` after
        ``max_subdivisions`` bisections; the partial estimate is attached.
    """
    if not abs_tol > 0:
        raise DomainError("abs_tol must be positive")
    if math.isnan(x):
        raise DomainError("b_angular_oracle got NaN")
    value, err, nsub = core.angular_quad(_mode_code(mode), abs(float(x)), float(abs_tol),
                                         int(max_subdivisions))
    if err > abs_tol:
        raise NumericalError(
            f"angular quadrature did not converge at x={x}", estimate=value, error=err,
            subdivisions=nsub,
        )
    return value


def b_high_freq(mode):
    """Large-x limit: 8/3 one-way, 1 two-way (oscillation average for two-way)."""
    return 8.0 / 3.0 if TrackingMode.parse(mode) is TrackingMode.ONE_WAY else 1.0


@dataclass(frozen=True)
class ResponseKernel:
    """A tracking mode bundled with an evaluation strategy.

    ``strategy`` is one of ``"closed"``, ``"series"`` or ``"oracle"``;
    ``order`` applies to the series and ``abs_tol`` to the oracle.
    """

    mode: TrackingMode = TrackingMode.ONE_WAY
    strategy: str = "closed"
    order: int = _series.DEFAULT_TERMS
    abs_tol: float = 1e-12

    def __post_init__(self):
        object.__setattr__(self, "mode", TrackingMode.parse(self.mode))
        if self.strategy not in ("closed", "series", "oracle"):
            raise DomainError(f"unknown strategy {self.strategy!r}")
        if self.order < 2:
            raise DomainError("series order must be >= 2")
        if not self.abs_tol > 0:
            raise DomainError("oracle abs_tol must be positive")

    def __call__(self, x):
        if self.strategy == "closed":
            return b_closed(self.mode, x)
        if self.strategy == "series":
            return b_series(self.mode, x, self.order)
        if np.ndim(x) == 0:
            return b_angular_oracle(self.mode, float(x), self.abs_tol)
        return np.array([b_angular_oracle(self.mode, float(v), self.abs_tol)
                         for v in np.ravel(x)]).reshape(np.shape(x))

    @property
    def high_freq(self):
        return b_high_freq(self.mode)


__all__ = [
    "SERIES_SWITCH", "TrackingMode", "ResponseKernel", "b_closed", "b_series",
    "b_angular_oracle", "b_high_freq",
]
