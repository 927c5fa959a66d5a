"""Physical constants, Planck units and SI/natural unit conversion.

Every computation in the package receives a :class:`PhysicalConstants`
instance instead of reading module-level numbers, so tests can pin exact
values. The natural system sets hbar = c = G = 1, in which all Planck units
equal one.
"""
from __future__ import annotations

import enum
import json
import math
import os
from dataclasses import dataclass
from importlib import resources

from .errors import ConfigError, DomainError

CONFIG_ENV_VAR = "GRAVLIMIT_CONFIG"


class UnitSystem(enum.Enum):
    SI = "SI"
    NATURAL = "natural"

    @classmethod
    def parse(cls, text):
        key = str(text).strip().lower()
        for member in cls:
            if member.value.lower() == key or member.name.lower() == key:
                return member
        raise ConfigError(f"unknown unit system {text!r}")


@dataclass(frozen=True)
class PhysicalConstants:
    """Reduced Planck constant (J s), speed of light (m/s), Newton constant."""

    hbar: float
    c: float
    G: float

    def __post_init__(self):
        for name in ("hbar", "c", "G"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"constant {name} must be finite and positive, got {value!r}")

    @classmethod
    def natural(cls):
        return cls(hbar=1.0, c=1.0, G=1.0)

    @classmethod
    def codata2018(cls):
        return cls(**_load_default_table())

    def replace(self, **overrides):
        values = {"hbar": self.hbar, "c": self.c, "G": self.G}
        for key, value in overrides.items():
            if value is None:
                continue
            if key not in values:
                raise ConfigError(f"unknown constant {key!r}")
            values[key] = float(value)
        return PhysicalConstants(**values)

    def to_dict(self):
        return {"hbar": self.hbar, "c": self.c, "G": self.G}


@dataclass(frozen=True)
class PlanckUnits:
    mass_p: float
    length_p: float
    time_p: float
    freq_p: float


def _load_default_table():
    text = resources.files(__package__).joinpath("data/codata2018.json").read_text()
    table = json.loads(text)
    return {key: float(table[key]) for key in ("hbar", "c", "G")}


def load_constants(path=None, **overrides):
    """Return constants from CODATA 2018, optionally overridden.

    ``path`` (or the file named by ``$GRAVLIMIT_CONFIG`` when ``path`` is None)
    is a JSON object whose ``hbar``, ``c`` and ``G`` keys replace the defaults.
    Keyword overrides are applied last; ``None`` values are ignored.
    """
    constants = PhysicalConstants.codata2018()
    if path is None:
        path = os.environ.get(CONFIG_ENV_VAR) or None
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                table = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read constants config {path}: {exc}") from exc
        if not isinstance(table, dict):
            raise ConfigError(f"constants config {path} must hold a JSON object")
        constants = constants.replace(**{k: table[k] for k in ("hbar", "c", "G") if k in table})
    return constants.replace(**overrides)


def constants_for(system):
    """Constants appropriate to a unit system (natural ones for NATURAL)."""
    system = UnitSystem.parse(system.value if isinstance(system, UnitSystem) else system)
    if system is UnitSystem.NATURAL:
        return PhysicalConstants.natural()
    return PhysicalConstants.codata2018()


def derive_planck_units(constants: PhysicalConstants) -> PlanckUnits:
    hbar, c, G = constants.hbar, constants.c, constants.G
    if min(hbar, c, G) <= 0:
        raise DomainError("Planck units need strictly positive constants")
    mass = math.sqrt(hbar * c / G)
    length = math.sqrt(hbar * G / c**3)
    time = length / c
    return PlanckUnits(mass_p=mass, length_p=length, time_p=time, freq_p=1.0 / time)


def compton_wavelength(m: float, constants: PhysicalConstants) -> float:
    """Reduced Compton wavelength hbar / (m c)."""
    if not m > 0:
        raise DomainError(f"mass must be positive, got {m!r}")
    return constants.hbar / (m * constants.c)


def _planck_scale(planck: PlanckUnits, mass=0, length=0, time=0):
    return planck.mass_p**mass * planck.length_p**length * planck.time_p**time


def to_natural(value, planck: PlanckUnits, mass=0, length=0, time=0):
    """Express an SI quantity of dimension kg^mass m^length s^time in Planck units."""
    return value / _planck_scale(planck, mass, length, time)


def from_natural(value, planck: PlanckUnits, mass=0, length=0, time=0):
    """Inverse of :func:`to_natural`."""
    return value * _planck_scale(planck, mass, length, time)
