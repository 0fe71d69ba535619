"""
Odd Jacobi theta function and the brackets used by every weight formula.

    theta(z, tau) = - sum_n exp(i pi (n+1/2)^2 tau + 2 pi i (n+1/2)(z+1/2))

The series is summed over n in [-M, M-1] so the half-integer indices n and
-1-n always enter together; M grows until the newest pair is negligible
relative to the partial sum.
"""

import logging
from functools import lru_cache
from typing import Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from config import get_settings
from utils.errors import DomainError, NumericError, SingularityError

logger = logging.getLogger(__name__)


class EllipticParams(BaseModel):
    """Modulus tau, level L and the generic shift b of the line objects n + b."""
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    tau: complex
    L: int
    shift_b: float = 0.2024

    @field_validator("tau", mode="before")
    @classmethod
    def _upper_half_plane(cls, tau) -> complex:
        tau = complex(tau)
        if tau.imag <= 0:
            raise DomainError(f"theta needs Im(tau) > 0, got tau={tau}")
        return tau

    @field_validator("L")
    @classmethod
    def _level(cls, L: int) -> int:
        if L < 2:
            raise DomainError(f"L must be >= 2, got {L}")
        return L

    @model_validator(mode="after")
    def _not_a_lattice_point(self):
        # 1/(L+1) = m + n*tau would put a zero of theta at the unit bracket
        w = complex(1.0 / (self.L + 1))
        n = round(w.imag / self.tau.imag)
        m = round((w - n * self.tau).real)
        if abs(w - m - n * self.tau) < 1e-12:
            raise DomainError(f"1/(L+1) lies on the lattice Z + tau Z for tau={self.tau}, L={self.L}")
        return self


def _term(n: int, z: complex, tau: complex) -> complex:
    h = n + 0.5
    return np.exp(1j * np.pi * h * h * tau + 2j * np.pi * h * (z + 0.5))


def _sum_pairs(z: complex, tau: complex, tol: float, derivative: bool) -> complex:
    if complex(tau).imag <= 0:
        raise DomainError(f"theta needs Im(tau) > 0, got tau={tau}")
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    max_terms = get_settings().theta_max_terms

    total = 0j
    M = 0
    while 2 * (M + 1) <= max_terms:
        pair = 0j
        size = 0.0
        for n in (M, -M - 1):
            t = _term(n, z, tau)
            if derivative:
                t = t * 2j * np.pi * (n + 0.5)
            pair += t
            size += abs(t)
        total += pair
        M += 1
        if size < tol * (abs(total) + 1.0):
            return -total
    raise NumericError(f"theta series did not converge within {max_terms} terms (z={z}, tau={tau})")


def theta(z: complex, tau: complex, tol: float = None) -> complex:
    """Odd Jacobi theta function by symmetric truncation of the defining series."""
    tol = tol if tol is not None else get_settings().theta_tol
    return complex(_sum_pairs(complex(z), complex(tau), tol, derivative=False))


def theta_prime0(tau: complex, tol: float = None) -> complex:
    """theta'(0, tau) from the term-wise differentiated series."""
    tol = tol if tol is not None else get_settings().theta_tol
    return _theta_prime0(complex(tau), float(tol))


@lru_cache(maxsize=256)
def _theta_prime0(tau: complex, tol: float) -> complex:
    # keyed on the resolved tolerance, never on None
    return complex(_sum_pairs(0j, tau, tol, derivative=True))


def bracket_ell(z: complex, params: EllipticParams, tol: float = None) -> complex:
    """[z] = theta(z/(L+1)) / (theta'(0)/(L+1)); derivative 1 at z = 0."""
    scale = params.L + 1
    return theta(complex(z) / scale, params.tau, tol) / (theta_prime0(params.tau, tol) / scale)


def bracket_tri(z, L: int):
    """<z> = sin(pi z / (L+1))."""
    return np.sin(np.pi * z / (L + 1))


def bracket_hyp(z, L: int):
    """sinh(pi z / (L+1))."""
    return np.sinh(np.pi * z / (L + 1))


def nonzero(value: complex, where: str, eps: float = 1e-12) -> complex:
    """Guard a bracket value used as a divisor."""
    if abs(value) < eps:
        raise SingularityError(f"bracket vanishes at {where}; choose a generic shift b")
    return value


def branch_sqrt(value: complex) -> complex:
    """Principal square root; a real radicand always takes the +i branch, whatever the sign of its zero."""
    value = complex(value)
    if abs(value.imag) <= 1e-15 * abs(value):
        value = complex(value.real, 0.0)
    return complex(np.sqrt(value))


def quasi_period_residual(z: complex, tau: complex, tol: float = None) -> Tuple[float, float]:
    """(|theta(-z)+theta(z)|, |theta(z+1)+theta(z)|) as a quick consistency check."""
    a = theta(z, tau, tol)
    return abs(theta(-z, tau, tol) + a), abs(theta(z + 1, tau, tol) + a)
