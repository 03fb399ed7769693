"""Complex log-gamma and log-space gamma ratios.

The closed-form transmission amplitudes are ratios of gamma functions whose
individual factors overflow or hit poles long before the ratio does, so
everything is evaluated as exp(sum log-gamma - sum log-gamma) on the
principal branch (real on the positive real axis).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Sequence

from scipy.special import loggamma as _loggamma

from .errors import GammaPole, NumeratorPole

#: how close to a non-positive integer counts as sitting on a pole
POLE_TOL = 1e-12


def is_gamma_pole(z: complex, tol: float = POLE_TOL) -> bool:
    """True when z is within tol of a non-positive integer."""
    z = complex(z)
    n = round(z.real)
    return n <= 0 and abs(z.real - n) <= tol and abs(z.imag) <= tol


def complex_log_gamma(z: complex) -> complex:
    """Principal-branch log Gamma(z).

    Raises GammaPole at the non-positive integers.
    """
    z = complex(z)
    if is_gamma_pole(z):
        raise GammaPole(f"log-gamma pole at z = {z}")
    return complex(_loggamma(z))


@dataclass(frozen=True)
class GammaRatio:
    """Product of gamma factors over a product of gamma factors."""

    numerator_args: tuple
    denominator_args: tuple

    def __init__(self, numerator_args: Sequence[complex], denominator_args: Sequence[complex]):
        object.__setattr__(self, "numerator_args", tuple(complex(z) for z in numerator_args))
        object.__setattr__(self, "denominator_args", tuple(complex(z) for z in denominator_args))


def gamma_ratio(r: GammaRatio) -> complex:
    """Evaluate a GammaRatio in log space.

    A pole among the numerator factors raises NumeratorPole; a pole among
    the denominator factors contributes a factor 1/Gamma = 0, so the whole
    ratio evaluates to 0 (1/Gamma is entire).
    """
    for z in r.numerator_args:
        if is_gamma_pole(z):
            raise NumeratorPole(f"numerator gamma pole at z = {z}")
    for z in r.denominator_args:
        if is_gamma_pole(z):
            return 0.0
    log_sum = 0.0 + 0.0j
    for z in r.numerator_args:
        log_sum += complex(_loggamma(z))
    for z in r.denominator_args:
        log_sum -= complex(_loggamma(z))
    return cmath.exp(log_sum)
