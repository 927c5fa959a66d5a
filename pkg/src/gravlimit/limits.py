"""Noise-limit spectra for a length measurement and their comparison.

Spectra follow ``C(t) = int (d omega / 2 pi) C[omega] exp(-i omega t)`` and are
returned in SI (m**2 s) unless natural constants are passed in. The quantum
spectra are one-sided: they vanish for omega <= 0.

* SQL  -- standard quantum limit hbar / (m omega**2);
* VQL  -- radiation pressure of vacuum fields on masses m, set by the Compton
  wavelength;
* GQL  -- vacuum fluctuations of curvature acting on the geodesic distance,
  set by the Planck length.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .kernels import TrackingMode, b_closed, b_high_freq
from .units import PhysicalConstants, compton_wavelength, derive_planck_units

SOURCES = ("SQL", "VQL", "GQL", "ForceFF", "Background", "Total")


def _default(constants):
    return PhysicalConstants.codata2018() if constants is None else constants


def _positive(name, value):
    if not np.all(np.asarray(value) > 0):
        raise DomainError(f"{name} must be positive, got {value!r}")


def _step(omega):
    return np.where(np.asarray(omega) > 0, 1.0, 0.0)


def _scalar(out):
    return float(out) if np.ndim(out) == 0 else out


def sql_spectrum(m, omega, constants=None):
    c = _default(constants)
    _positive("mass", m)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise DomainError("SQL spectrum is singular at omega = 0")
    return _scalar(c.hbar / (m * omega**2))


def sql_variance(m, omega, delta_omega, constants=None):
    """Variance of the SQL noise over a band delta_omega around omega."""
    c = _default(constants)
    for name, v in (("mass", m), ("omega", omega), ("bandwidth", delta_omega)):
        _positive(name, v)
    return c.hbar / m * (delta_omega / (2.0 * math.pi * omega**2))


def sql_variance_time(m, T, constants=None):
    """Variance hbar T / m for a measurement lasting T."""
    c = _default(constants)
    _positive("mass", m)
    _positive("measurement time", T)
    return c.hbar / m * T


def detection_time(omega, delta_omega):
    """Band-equivalent measurement time delta_omega / (2 pi omega**2)."""
    return delta_omega / (2.0 * math.pi * omega**2)


def vacuum_force_spectrum(phi, omega, constants=None):
    """Vacuum radiation-pressure force spectrum (hbar**2 / 3 pi c**2) omega**3 Phi."""
    c = _default(constants)
    _positive("phi", phi)
    omega = np.asarray(omega, dtype=float)
    pos = np.where(omega > 0, omega, 0.0)
    return _scalar(c.hbar**2 / (3.0 * math.pi * c.c**2) * pos**3 * phi)


def vql_spectrum(m, phi, omega, constants=None):
    """(Phi / 3 pi) lambda_C**2 theta(omega) / omega."""
    c = _default(constants)
    _positive("mass", m)
    _positive("phi", phi)
    omega = np.asarray(omega, dtype=float)
    if np.any(omega == 0):
        raise DomainError("VQL spectrum is singular at omega = 0")
    lam = compton_wavelength(m, c)
    safe = np.where(omega > 0, omega, 1.0)
    return _scalar(phi / (3.0 * math.pi) * lam**2 * _step(omega) / safe)


def gql_spectrum(mode, tau, omega, constants=None, envelope=False):
    """l_P**2 theta(omega) b[omega tau] / omega; zero at omega = 0 (the limit).

    With ``envelope=True`` the kernel is replaced by its high-frequency
    constant, which is how the budget can suppress the two-way oscillation.
    """
    c = _default(constants)
    _positive("tau", tau)
    lp2 = derive_planck_units(c).length_p ** 2
    omega = np.asarray(omega, dtype=float)
    pos = omega > 0
    safe = np.where(pos, omega, 1.0)
    if envelope:
        b = np.full_like(safe, b_high_freq(mode))
    else:
        b = b_closed(mode, np.atleast_1d(safe * tau)).reshape(safe.shape)
    return _scalar(np.where(pos, lp2 * b / safe, 0.0))


def crossover_mass(phi, b_value, constants=None):
    """Mass at which the VQL and GQL spectra coincide: m_P sqrt(Phi / (3 pi b))."""
    _positive("phi", phi)
    _positive("b", b_value)
    mp = derive_planck_units(_default(constants)).mass_p
    return mp * math.sqrt(phi / (3.0 * math.pi * b_value))


def vql_gql_ratio(m, phi, b_value, constants=None):
    """VQL / GQL at matched frequency, (Phi / 3 pi b) (m_P / m)**2."""
    mp = derive_planck_units(_default(constants)).mass_p
    return phi / (3.0 * math.pi * b_value) * (mp / m) ** 2


@dataclass(frozen=True)
class Bandwidth:
    omega_center: float
    delta_omega: float


@dataclass(frozen=True)
class MeasurementConfig:
    mass: float
    tau: float
    phi: float = 1.0
    mode: TrackingMode = TrackingMode.TWO_WAY
    bandwidth: Bandwidth | None = None

    def __post_init__(self):
        object.__setattr__(self, "mode", TrackingMode.parse(self.mode))
        for name in ("mass", "tau", "phi"):
            _positive(name, getattr(self, name))
        if self.bandwidth is not None:
            _positive("omega_center", self.bandwidth.omega_center)
            _positive("delta_omega", self.bandwidth.delta_omega)


@dataclass(frozen=True)
class SpectrumGrid:
    omegas: np.ndarray
    values: np.ndarray
    label: str = "Background"

    def __post_init__(self):
        om = np.asarray(self.omegas, dtype=float)
        vals = np.asarray(self.values, dtype=float)
        if om.shape != vals.shape or om.ndim != 1:
            raise DomainError("omegas and values must be 1-D arrays of equal length")
        if np.any(np.diff(om) <= 0):
            raise DomainError("omegas must be strictly increasing")
        if np.any(om <= 0):
            raise DomainError("spectrum grids are one-sided: omegas must be positive")
        if np.any(vals < 0):
            raise DomainError("spectral densities cannot be negative")
        if self.label not in SOURCES:
            raise DomainError(f"unknown spectrum label {self.label!r}")
        object.__setattr__(self, "omegas", om)
        object.__setattr__(self, "values", vals)

    def __call__(self, omega):
        """One-sided density at omega, linear interpolation, zero off the grid."""
        omega = np.asarray(omega, dtype=float)
        return _scalar(np.interp(omega, self.omegas, self.values, left=0.0, right=0.0))


@dataclass
class NoiseBudget:
    omegas: np.ndarray
    sql: np.ndarray
    vql: np.ndarray
    gql: np.ndarray
    config: MeasurementConfig | None = None
    labels: tuple = field(default=("SQL", "VQL", "GQL"))

    @property
    def dominant(self):
        """Largest of the three limits at each frequency."""
        stack = np.vstack([self.sql, self.vql, self.gql])
        return [self.labels[i] for i in np.argmax(stack, axis=0)]

    @property
    def dominant_ultimate(self):
        """Larger of VQL and GQL: the limits that survive an optimised readout."""
        return ["GQL" if g > v else "VQL" for v, g in zip(self.vql, self.gql)]

    def rows(self):
        for row in zip(self.omegas, self.sql, self.vql, self.gql, self.dominant,
                       self.dominant_ultimate):
            yield row

    def band_variances(self):
        """Variance of each limit over the config bandwidth, C[omega_c] d_omega / 2 pi."""
        if self.config is None or self.config.bandwidth is None:
            raise DomainError("budget has no bandwidth to integrate over")
        bw = self.config.bandwidth
        out = {}
        for name, series in zip(self.labels, (self.sql, self.vql, self.gql)):
            density = float(np.interp(bw.omega_center, self.omegas, series))
            out[name] = density * bw.delta_omega / (2.0 * math.pi)
        return out


def noise_budget(config: MeasurementConfig, omegas, constants=None, envelope=False):
    omegas = np.asarray(omegas, dtype=float)
    if omegas.ndim != 1 or np.any(omegas <= 0) or np.any(np.diff(omegas) <= 0):
        raise DomainError("budget grid must be positive and strictly increasing")
    c = _default(constants)
    return NoiseBudget(
        omegas=omegas,
        sql=np.asarray(sql_spectrum(config.mass, omegas, c)),
        vql=np.asarray(vql_spectrum(config.mass, config.phi, omegas, c)),
        gql=np.asarray(gql_spectrum(config.mode, config.tau, omegas, c, envelope=envelope)),
        config=config,
    )


def apply_isotropic_background(S, mode, tau, omegas, label="Background"):
    """Length-noise spectrum S(omega) b[omega tau] for an isotropic curvature background.

    ``S`` replaces the vacuum weight l_P**2 theta(omega) / omega and may be a
    callable or a :class:`SpectrumGrid`.
    """
    _positive("tau", tau)
    omegas = np.asarray(omegas, dtype=float)
    weight = np.asarray([S(w) for w in omegas], dtype=float)
    if np.any(weight < 0):
        raise DomainError("background spectrum must be non-negative")
    b = b_closed(mode, np.atleast_1d(omegas * tau))
    return SpectrumGrid(omegas, weight * b, label)
