"""Exact Taylor coefficients of the response kernels in powers of x**2.

Coefficients are built from Fractions so that the first terms can be checked
against hand expansions without rounding noise.
"""
from fractions import Fraction
from math import factorial

ONE_WAY = 1
TWO_WAY = 2

# Below this |x| the closed forms lose digits to cancellation.
SERIES_SWITCH = 0.5
DEFAULT_TERMS = 14
MAX_TERMS = 40


def one_way_coefficient(n):
    """Coefficient of x**(2n), n >= 1, from expanding 2 sin(2x)/x**3."""
    return Fraction((-1) ** (n + 1) * 2 ** (2 * n + 4), factorial(2 * n + 3))


def two_way_coefficient(n):
    sign = (-1) ** n
    return sign * (
        -Fraction(4**n, 3 * factorial(2 * n))
        + Fraction(4 ** (n + 1), factorial(2 * n + 2))
        - Fraction(4 ** (n + 2), factorial(2 * n + 3))
    )


def coefficients(mode, n_terms):
    if mode == ONE_WAY:
        term = one_way_coefficient
    elif mode == TWO_WAY:
        term = two_way_coefficient
    else:
        raise ValueError(f"unknown mode code {mode!r}")
    return [term(n) for n in range(1, n_terms + 1)]


def float_table(mode, n_terms=DEFAULT_TERMS):
    return [float(c) for c in coefficients(mode, n_terms)]
