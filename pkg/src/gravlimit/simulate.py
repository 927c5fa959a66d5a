"""Gaussian time series realising a target noise spectrum, and its estimation.

The quantum spectra are one-sided (they vanish for omega < 0) and cannot be
the spectrum of a classical real-valued process. Synthesis therefore uses the
symmetrized density ``S(omega) = (C[omega] + C[-omega]) / 2``; the
antisymmetric (commutator) part is not representable in sample paths.

Densities follow ``var = int (d omega / 2 pi) S(omega)`` over all omega.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy import signal, stats

from .errors import ConfigError, DomainError
from .kernels import TrackingMode
from .limits import SpectrumGrid, gql_spectrum, sql_spectrum, vql_spectrum
from .units import PhysicalConstants

NAMED_SOURCES = ("SQL", "VQL", "GQL")
SIGMA_BAND = 3.0


@dataclass(frozen=True)
class SynthesisSpec:
    """What to synthesise.

    ``target`` is a named source ("GQL", "VQL", "SQL"), a one-sided
    :class:`SpectrumGrid`, or a callable C(omega) defined for both signs.
    ``omega_min`` is the infrared cutoff: bins below it are zeroed. There is
    no default because the GQL spectrum's 1/omega tail makes the choice
    physically meaningful.
    """

    target: object
    n_samples: int
    dt: float
    seed: int
    omega_min: float
    mode: TrackingMode = TrackingMode.TWO_WAY
    tau: float = 1.0
    mass: float = 1.0
    phi: float = 1.0
    constants: PhysicalConstants = field(default_factory=PhysicalConstants.natural)

    def __post_init__(self):
        object.__setattr__(self, "mode", TrackingMode.parse(self.mode))
        n = self.n_samples
        if not (isinstance(n, (int, np.integer)) and n >= 2 and n & (n - 1) == 0):
            raise ConfigError(f"n_samples must be a power of two, got {n!r}")
        if not self.dt > 0:
            raise ConfigError("dt must be positive")
        if not self.omega_min > 0:
            raise ConfigError("omega_min must be positive")
        if self.dt * n * self.omega_min < 2.0 * math.pi * (1.0 - 1e-12):
            raise ConfigError(
                "infrared cutoff not resolvable: need dt * n_samples * omega_min >= 2 pi"
            )
        if not 0 <= int(self.seed) < 2**64:
            raise ConfigError("seed must fit in 64 bits")
        if isinstance(self.target, str) and self.target.upper() not in NAMED_SOURCES:
            raise ConfigError(f"unknown source {self.target!r}")

    def one_sided(self, omega):
        """The target spectrum C[omega] (both signs of omega accepted)."""
        omega = np.asarray(omega, dtype=float)
        if isinstance(self.target, str):
            name = self.target.upper()
            nz = np.where(omega == 0, 1.0, omega)
            if name == "GQL":
                out = gql_spectrum(self.mode, self.tau, nz, self.constants)
            elif name == "VQL":
                out = vql_spectrum(self.mass, self.phi, nz, self.constants)
            else:
                out = sql_spectrum(self.mass, nz, self.constants)
            return np.where(omega == 0, 0.0, out)
        if isinstance(self.target, SpectrumGrid):
            return np.where(omega > 0, self.target(np.abs(omega)), 0.0)
        return np.asarray([self.target(w) for w in np.ravel(omega)]).reshape(omega.shape)

    def symmetrized(self, omega):
        omega = np.asarray(omega, dtype=float)
        return 0.5 * (self.one_sided(omega) + self.one_sided(-omega))


@dataclass(frozen=True)
class TimeSeries:
    samples: np.ndarray
    dt: float
    seed: int
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.samples)


def synthesize(spec: SynthesisSpec) -> TimeSeries:
    n, dt = spec.n_samples, spec.dt
    omegas = 2.0 * math.pi * np.fft.rfftfreq(n, dt)
    density = spec.symmetrized(omegas)
    density[omegas < spec.omega_min] = 0.0
    if np.any(density < 0) or not np.all(np.isfinite(density)):
        raise ConfigError("target density must be finite and non-negative on the grid")
    rng = np.random.default_rng(int(spec.seed))
    draws = rng.standard_normal((2, len(omegas)))
    # E|X_k|**2 = n S / dt, split between real and imaginary parts
    scale = np.sqrt(n * density / (2.0 * dt))
    spectrum = scale * (draws[0] + 1j * draws[1])
    spectrum[-1] = np.sqrt(n * density[-1] / dt) * draws[0, -1]
    spectrum[0] = 0.0
    samples = np.fft.irfft(spectrum, n)
    meta = {
        "source": spec.target if isinstance(spec.target, str) else "custom",
        "mode": spec.mode.label, "tau": spec.tau, "mass": spec.mass, "phi": spec.phi,
        "n_samples": n, "dt": dt, "seed": int(spec.seed), "omega_min": spec.omega_min,
        "constants": spec.constants.to_dict(),
    }
    return TimeSeries(samples, dt, int(spec.seed), meta)


def equivalent_dof(segment_length, step, n_segments, window="hann"):
    """Degrees of freedom of an averaged periodogram with overlapping segments."""
    w = signal.get_window(window, segment_length)
    norm = np.sum(w**2)
    correction = 0.0
    for j in range(1, n_segments):
        shift = j * step
        if shift >= segment_length:
            break
        rho = (np.dot(w[:-shift], w[shift:]) / norm) ** 2
        correction += (1.0 - j / n_segments) * rho
    return 2.0 * n_segments / (1.0 + 2.0 * correction)


@dataclass(frozen=True)
class PsdEstimate(SpectrumGrid):
    """Symmetrized density estimate on positive frequencies, with its statistics."""

    dof: float = 2.0
    n_segments: int = 1

    def bands(self, target, sigma=SIGMA_BAND):
        """Chi-squared bands around ``target`` at the +/- sigma Gaussian probabilities."""
        target = np.asarray(target, dtype=float)
        lo = stats.chi2.ppf(stats.norm.cdf(-sigma), self.dof) / self.dof
        hi = stats.chi2.ppf(stats.norm.cdf(sigma), self.dof) / self.dof
        return target * lo, target * hi


def estimate_psd(series, segment_length, overlap=0.5, window="hann"):
    """Averaged windowed periodogram (Welch) of a series.

    Normalised so that a white series of symmetrized density s0 gives an
    unbiased estimate s0 in every bin. DC and Nyquist bins are dropped.
    """
    samples = np.asarray(series.samples if isinstance(series, TimeSeries) else series, float)
    dt = series.dt if isinstance(series, TimeSeries) else 1.0
    n = len(samples)
    seg = int(segment_length)
    if seg > n or seg < 4 or seg & (seg - 1):
        raise DomainError("segment_length must be a power of two no longer than the series")
    if not 0 <= overlap < 1:
        raise DomainError("overlap must lie in [0, 1)")
    noverlap = int(round(overlap * seg))
    freqs, dens = signal.welch(
        samples, fs=1.0 / dt, window=window, nperseg=seg, noverlap=noverlap,
        detrend=False, return_onesided=False, scaling="density", average="mean",
    )
    keep = (freqs > 0) & (freqs < 0.5 / dt)
    order = np.argsort(freqs[keep])
    step = seg - noverlap
    k = (n - noverlap) // step
    return PsdEstimate(
        omegas=2.0 * math.pi * freqs[keep][order],
        values=dens[keep][order],
        label="Total",
        dof=equivalent_dof(seg, step, k, window),
        n_segments=k,
    )


def save_series(path, series: TimeSeries, fmt="csv"):
    """Write samples (CSV with header or raw little-endian float64) plus a JSON sidecar."""
    path = str(path)
    if fmt == "csv":
        t = np.arange(len(series)) * series.dt
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("t,q\n")
            for ti, qi in zip(t, series.samples):
                fh.write(f"{float(ti)!r},{float(qi)!r}\n")
    elif fmt == "bin":
        np.asarray(series.samples, dtype="<f8").tofile(path)
    else:
        raise ConfigError(f"unknown sample format {fmt!r}")
    meta = dict(series.metadata, format=fmt, dt=series.dt, seed=series.seed,
                n_samples=len(series))
    with open(path + ".json", "w", encoding="utf-8") as fh:
        json.dump(meta, fh, indent=2, sort_keys=True)
    return path + ".json"


def load_series(path):
    path = str(path)
    try:
        with open(path + ".json", encoding="utf-8") as fh:
            meta = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"missing metadata sidecar {path}.json") from exc
    if meta.get("format") == "bin":
        samples = np.fromfile(path, dtype="<f8")
    else:
        samples = np.loadtxt(path, delimiter=",", skiprows=1, usecols=1, ndmin=1)
    return TimeSeries(samples, float(meta["dt"]), int(meta["seed"]), meta)


def spec_from_metadata(meta) -> SynthesisSpec:
    """Rebuild the synthesis spec recorded in a sidecar (named sources only)."""
    if meta.get("source") not in NAMED_SOURCES:
        raise ConfigError("metadata does not name a reproducible source")
    return SynthesisSpec(
        target=meta["source"], n_samples=int(meta["n_samples"]), dt=float(meta["dt"]),
        seed=int(meta["seed"]), omega_min=float(meta["omega_min"]), mode=meta["mode"],
        tau=float(meta["tau"]), mass=float(meta["mass"]), phi=float(meta["phi"]),
        constants=PhysicalConstants(**meta["constants"]),
    )
