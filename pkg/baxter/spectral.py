"""
Spectral parameterizations x = f(z) and the deterministic sample grids used by
every Yang-Baxter sweep.
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

import numpy as np

from utils.errors import InputError, SingularityError

logger = logging.getLogger(__name__)

POLE_EPS = 1e-8
PARAM_NAMES = ("tri", "hyp", "rational")


@dataclass(frozen=True)
class SpectralParam:
    """
    x = f(z) with f(0) = 0.

    `scale` is the natural unit of z (lambda for tri/hyp, 1 otherwise);
    sample grids are expressed in it.
    """
    name: str
    lam: float
    fn: Callable[[complex], complex]
    pole_set: str
    pole_distance: Callable[[complex], float]
    scale: float = 1.0

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        if self.pole_distance(z) < POLE_EPS:
            raise SingularityError(f"{self.name} parameterization has a pole near z={z} ({self.pole_set})")
        return complex(self.fn(z))

    def near_pole(self, *zs: complex) -> bool:
        return any(self.pole_distance(complex(z)) < POLE_EPS for z in zs)

    @classmethod
    def tri(cls, lam: float) -> "SpectralParam":
        """sin z / sin(lambda - z)."""
        def distance(z: complex) -> float:
            k = round((z - lam).real / np.pi)
            return abs(z - lam - k * np.pi)
        return cls("tri", lam, lambda z: np.sin(z) / np.sin(lam - z),
                   "z = lambda + k pi", distance, scale=lam)

    @classmethod
    def hyp(cls, lam: float) -> "SpectralParam":
        """sinh z / sinh(lambda - z)."""
        def distance(z: complex) -> float:
            k = round((z - lam).imag / np.pi)
            return abs(z - lam - 1j * k * np.pi)
        return cls("hyp", lam, lambda z: np.sinh(z) / np.sinh(lam - z),
                   "z = lambda + i k pi", distance, scale=lam)

    @classmethod
    def rational(cls) -> "SpectralParam":
        """z / (1 - z)."""
        return cls("rational", 1.0, lambda z: z / (1 - z), "z = 1", lambda z: abs(z - 1))

    @classmethod
    def bracket_ratio(cls, L: int) -> "SpectralParam":
        """<z>/<1-z> with <z> = sin(pi z/(L+1)): the trigonometric limit of the elliptic weights."""
        lam = np.pi / (L + 1)
        def distance(z: complex) -> float:
            k = round((1 - z).real * lam / np.pi)
            return abs((1 - z) * lam - k * np.pi) / lam
        return cls("tri-bracket", lam, lambda z: np.sin(lam * z) / np.sin(lam * (1 - z)),
                   "z = 1 + k(L+1)", distance)

    @classmethod
    def custom(cls, name: str, fn: Callable[[complex], complex],
               pole_distance: Optional[Callable[[complex], float]] = None, scale: float = 1.0) -> "SpectralParam":
        return cls(name, 0.0, fn, "user supplied", pole_distance or (lambda z: np.inf), scale=scale)


def spectral_param(name: str, lam: Optional[float] = None) -> SpectralParam:
    """Factory used by the CLI: 'tri' and 'hyp' need lambda."""
    if name == "rational":
        return SpectralParam.rational()
    if name not in PARAM_NAMES:
        raise InputError(f"unknown parameterization '{name}' (expected tri, hyp or rational)")
    if lam is None:
        raise InputError(f"{name} parameterization needs lambda")
    return SpectralParam.tri(lam) if name == "tri" else SpectralParam.hyp(lam)


# =============================================================================
# DETERMINISTIC SAMPLE GRIDS
# =============================================================================

def halton(index: int, base: int) -> float:
    """index-th element (1-based) of the van der Corput sequence in `base`."""
    result, f, i = 0.0, 1.0, index
    while i > 0:
        f /= base
        result += f * (i % base)
        i //= base
    return result


def sample_pairs(count: int, scale: float = 1.0, lo: float = 0.05, hi: float = 0.45) -> List[Tuple[float, float]]:
    """Halton points (bases 2, 3) mapped to (lo, hi)^2 and multiplied by scale."""
    if count < 1:
        raise InputError(f"sample count must be positive, got {count}")
    span = hi - lo
    return [
        (scale * (lo + span * halton(k, 2)), scale * (lo + span * halton(k, 3)))
        for k in range(1, count + 1)
    ]


def ratio_triples(count: int) -> List[Tuple[float, float, float]]:
    """Multiplicative parameters u1 < u2 < u3, starting with (1.0, 1.7, 2.3)."""
    triples = [(1.0, 1.7, 2.3)]
    k = 1
    while len(triples) < count:
        u2 = 1.2 + 0.8 * halton(k, 2)
        u3 = u2 * (1.2 + 0.8 * halton(k, 3))
        triples.append((1.0, round(u2, 12), round(u3, 12)))
        k += 1
    return triples[:count]
