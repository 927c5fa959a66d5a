"""Quantum noise limits for interferometric length measurements.

Standard quantum limit, vacuum-pressure limit and the gravitational
(Planck-length) limit, with a first-principles curvature pipeline,
time-domain commutators and noise synthesis.
"""
from ._backend import BACKEND
from .curvature import (FourVector, PathSpec, RiemannKernel, curvature_corr_weight,
                        response_first_principles, riemann_mode_kernel)
from .errors import ConfigError, DomainError, GravLimitError, NumericalError
from .kernels import (ResponseKernel, TrackingMode, b_angular_oracle, b_closed, b_high_freq,
                      b_series)
from .limits import (MeasurementConfig, NoiseBudget, SpectrumGrid, apply_isotropic_background,
                     crossover_mass, gql_spectrum, noise_budget, sql_spectrum, sql_variance,
                     sql_variance_time, vacuum_force_spectrum, vql_spectrum)
from .simulate import SynthesisSpec, TimeSeries, estimate_psd, synthesize
from .timedomain import (B_time, GeneralizedTimeFunction, b_time, commutator_spectrum_check,
                         gtf_fourier, integrate_b_to_B)
from .units import (PhysicalConstants, PlanckUnits, UnitSystem, compton_wavelength,
                    derive_planck_units, load_constants)

__version__ = "0.1.0"
