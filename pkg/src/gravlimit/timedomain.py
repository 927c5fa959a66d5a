"""Time-domain commutator functions as generalized functions.

A :class:`GeneralizedTimeFunction` is a finite sum of Dirac impulses plus a
regular part made of polynomial pieces in ``s = |t|``, tagged even
(``f(t) = p(|t|)``) or odd (``f(t) = sign(t) p(|t|)``). Impulses are kept as
exact data so that Fourier transforms and integrals are evaluated in closed
form.

Conventions: ``sign(0) = 0``; at a breakpoint of the regular part the value
is the mean of the one-sided limits; an impulse sitting on an integration
boundary contributes half its weight.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .kernels import TrackingMode, b_closed

_SYM_TOL = 1e-12


class Parity(enum.Enum):
    EVEN = 1
    ODD = -1


@dataclass(frozen=True)
class Impulse:
    location: float
    weight: float


@dataclass(frozen=True)
class Segment:
    """Polynomial ``sum(coeffs[j] * s**j)`` on ``lo <= s <= hi`` with ``s = |t|``."""

    lo: float
    hi: float
    coeffs: tuple

    def __post_init__(self):
        if not (0.0 <= self.lo < self.hi):
            raise DomainError(f"bad segment interval [{self.lo}, {self.hi}]")
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def __call__(self, s):
        return np.polynomial.polynomial.polyval(s, self.coeffs)

    def derivative(self):
        c = np.polynomial.polynomial.polyder(self.coeffs) if len(self.coeffs) > 1 else [0.0]
        return Segment(self.lo, self.hi, tuple(c))

    @property
    def is_zero(self):
        return all(c == 0.0 for c in self.coeffs)


@dataclass(frozen=True)
class GeneralizedTimeFunction:
    impulses: tuple = ()
    segments: tuple = ()
    parity: Parity = Parity.EVEN

    def __post_init__(self):
        imps = tuple(sorted((Impulse(float(i.location), float(i.weight)) for i in self.impulses),
                            key=lambda i: i.location))
        segs = tuple(sorted(self.segments, key=lambda s: s.lo))
        object.__setattr__(self, "impulses", imps)
        object.__setattr__(self, "segments", segs)
        for left, right in zip(segs, segs[1:]):
            if right.lo < left.hi:
                raise DomainError("segments overlap")
        sign = self.parity.value
        for imp in imps:
            if imp.location == 0.0:
                if self.parity is Parity.ODD:
                    raise DomainError("odd function cannot carry an impulse at t = 0")
                continue
            mirror = [j for j in imps if abs(j.location + imp.location) <= _SYM_TOL * abs(imp.location)]
            if len(mirror) != 1 or abs(mirror[0].weight - sign * imp.weight) > _SYM_TOL * abs(imp.weight):
                raise DomainError(f"impulse set breaks {self.parity.name.lower()} parity at {imp.location}")

    @classmethod
    def zero(cls, parity=Parity.EVEN):
        return cls((), (), parity)

    @property
    def support(self):
        """Largest |t| reached by impulses or the regular part."""
        ends = [abs(i.location) for i in self.impulses] + [s.hi for s in self.segments]
        return max(ends, default=0.0)

    # -- pointwise evaluation of the regular part ---------------------------------

    def _right(self, s):
        for seg in self.segments:
            if seg.lo <= s < seg.hi:
                return float(seg(s))
        return 0.0

    def _left(self, s):
        for seg in self.segments:
            if seg.lo < s <= seg.hi:
                return float(seg(s))
        return 0.0

    def right_limit(self, t):
        """Limit of the regular part as the argument decreases to ``t``."""
        if t >= 0:
            return self._right(t)
        return self.parity.value * self._left(-t)

    def left_limit(self, t):
        if t > 0:
            return self._left(t)
        if t == 0:
            return self.parity.value * self._right(0.0)
        return self.parity.value * self._right(-t)

    def regular(self, t):
        """Regular part at ``t`` (scalar or array), mean of one-sided limits at breaks."""
        arr = np.asarray(t, dtype=float)
        flat = np.empty(arr.size)
        for n, tv in enumerate(arr.ravel()):
            if tv == 0.0:
                flat[n] = self._right(0.0) if self.parity is Parity.EVEN else 0.0
                continue
            s = abs(tv)
            val = 0.5 * (self._left(s) + self._right(s))
            flat[n] = val if tv > 0 else self.parity.value * val
        out = flat.reshape(arr.shape)
        return float(out) if out.ndim == 0 else out

    __call__ = regular

    def impulse_weight(self, t, tol=1e-12):
        return sum(i.weight for i in self.impulses if abs(i.location - t) <= tol * max(1.0, abs(t)))

    def derivative_regular(self):
        """Derivative of the regular part on open segments (impulses and jumps dropped)."""
        flipped = Parity.ODD if self.parity is Parity.EVEN else Parity.EVEN
        return GeneralizedTimeFunction((), tuple(s.derivative() for s in self.segments), flipped)


def _check_tau(tau):
    if not (isinstance(tau, (int, float)) and math.isfinite(tau) and tau > 0):
        raise DomainError(f"propagation time must be positive, got {tau!r}")


def b_time(mode, tau):
    """Commutator kernel b(t) with [q'(t), q(0)] = -i l_P**2 b(t)."""
    _check_tau(tau)
    mode = TrackingMode.parse(mode)
    t2 = 2.0 * tau
    if mode is TrackingMode.ONE_WAY:
        # -(2 tau - s)**2 / (2 tau**3)
        imps = (Impulse(0.0, 8.0 / 3.0),)
        coeffs = (-2.0 / tau, 2.0 / tau**2, -0.5 / tau**3)
    else:
        # (s - tau)(2 tau - s) / (2 tau**3)
        imps = (Impulse(-t2, -1.0 / 6.0), Impulse(0.0, 1.0), Impulse(t2, -1.0 / 6.0))
        coeffs = (-1.0 / tau, 1.5 / tau**2, -0.5 / tau**3)
    return GeneralizedTimeFunction(imps, (Segment(0.0, t2, coeffs),), Parity.EVEN)


def B_time(mode, tau):
    """Commutator kernel B(t) with [q(t), q(0)] = -i l_P**2 B(t); B' = b."""
    _check_tau(tau)
    mode = TrackingMode.parse(mode)
    if mode is TrackingMode.ONE_WAY:
        # (2 tau - s)**3 / (6 tau**3)
        coeffs = (4.0 / 3.0, -2.0 / tau, 1.0 / tau**2, -1.0 / (6.0 * tau**3))
    else:
        # (-2 s**3 + 9 s**2 tau - 12 s tau**2 + 6 tau**3) / (12 tau**3)
        coeffs = (0.5, -1.0 / tau, 0.75 / tau**2, -1.0 / (6.0 * tau**3))
    return GeneralizedTimeFunction((), (Segment(0.0, 2.0 * tau, coeffs),), Parity.ODD)


def integrate_b_to_B(b: GeneralizedTimeFunction) -> GeneralizedTimeFunction:
    """Running integral ``B(t) = int_0^t b(t') dt'`` of an even generalized function.

    The result is odd. An impulse at the origin contributes half its weight;
    impulses at positive locations become jumps of the regular part.
    """
    if b.parity is not Parity.EVEN:
        raise DomainError("integrate_b_to_B expects an even function")
    positive = [i for i in b.impulses if i.location > 0]
    breaks = {0.0}
    breaks.update(i.location for i in positive)
    for seg in b.segments:
        breaks.update((seg.lo, seg.hi))
    breaks = sorted(x for x in breaks if math.isfinite(x))
    edges = breaks + [math.inf]

    level = 0.5 * b.impulse_weight(0.0)
    scale = sum(abs(i.weight) for i in b.impulses) + 1.0
    pieces = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        if lo > 0:
            level += sum(i.weight for i in positive if i.location == lo)
        src = next((s for s in b.segments if s.lo <= lo and hi <= s.hi), None)
        if src is None:
            # rounding residue of cancelling weights must not leave an infinite tail
            if abs(level) <= 1e-13 * scale:
                level = 0.0
            coeffs = np.array([level])
        else:
            anti = np.polynomial.polynomial.polyint(src.coeffs)
            anti[0] += level - np.polynomial.polynomial.polyval(lo, anti)
            coeffs = anti
        seg = Segment(lo, hi, tuple(coeffs))
        if not seg.is_zero:
            pieces.append(seg)
        if math.isfinite(hi):
            level = float(seg(hi)) if src is not None else level
    return GeneralizedTimeFunction((), tuple(pieces), Parity.ODD)


def _power_exp_integral(n, a, b, omega):
    """``int_a^b s**n exp(i omega s) ds`` in closed form."""
    scale = abs(omega) * max(abs(a), abs(b))
    if scale <= 1.0:
        # power series of the exponential; terms fall off like scale**m / m!
        total = 0j
        term = 1.0 + 0j
        for m in range(200):
            p = n + m + 1
            contrib = term * (b**p - a**p) / p
            total += contrib
            if m > 2 and abs(contrib) <= 1e-18 * max(abs(total), 1e-300):
                break
            term *= 1j * omega / (m + 1)
        return total
    # repeated integration by parts
    iw = 1j * omega

    def anti(s):
        acc = 0j
        falling = 1.0
        for k in range(n + 1):
            acc += (-1) ** k * falling * s ** (n - k) / iw ** (k + 1)
            falling *= n - k
        return np.exp(iw * s) * acc

    return anti(b) - anti(a)


def gtf_fourier(f: GeneralizedTimeFunction, omega) -> complex:
    """Fourier transform ``int f(t) exp(i omega t) dt`` in closed form."""
    omega = float(omega)
    total = sum(i.weight * np.exp(1j * omega * i.location) for i in f.impulses) + 0j
    for seg in f.segments:
        if not math.isfinite(seg.hi):
            raise DomainError("Fourier transform needs finite support")
        half = sum(c * _power_exp_integral(j, seg.lo, seg.hi, omega)
                   for j, c in enumerate(seg.coeffs) if c != 0.0)
        # even: 2 Re(half) ; odd: 2i Im(half)
        if f.parity is Parity.EVEN:
            total += 2.0 * half.real
        else:
            total += 2j * half.imag
    return complex(total)


@dataclass(frozen=True)
class CommutatorResult:
    """``[A(t), q(0)] = sign * i * magnitude * shape(t)``."""

    magnitude: float
    shape: GeneralizedTimeFunction
    sign: int = -1
    label: str = field(default="")


def commutators(mode, tau, l_p=1.0):
    """The two commutators of the distance variation with its value at zero."""
    return {
        "[q'(t),q(0)]": CommutatorResult(l_p**2, b_time(mode, tau), -1, "[q'(t),q(0)]"),
        "[q(t),q(0)]": CommutatorResult(l_p**2, B_time(mode, tau), -1, "[q(t),q(0)]"),
    }


def commutator_spectrum_check(spectrum, mode, tau, l_p=1.0, omegas=None):
    """Largest deviation of ``C(w) - C(-w)`` from ``l_P**2 b(w tau) / w`` on a grid.

    ``spectrum`` is any callable of angular frequency; ``omegas`` defaults to
    200 log-spaced points in ``[1e-2, 1e2] / tau``.
    """
    if omegas is None:
        omegas = np.logspace(-2, 2, 200) / tau
    omegas = np.asarray(omegas, dtype=float)
    if np.any(omegas <= 0):
        raise DomainError("check grid must be strictly positive")
    diff = np.array([spectrum(w) - spectrum(-w) for w in omegas], dtype=float)
    target = l_p**2 * b_closed(mode, omegas * tau) / omegas
    return float(np.max(np.abs(diff - target)))
