# Special functions package
from special.theta import (
    EllipticParams,
    bracket_ell,
    bracket_hyp,
    bracket_tri,
    theta,
    theta_prime0,
)

__all__ = [
    "EllipticParams",
    "bracket_ell",
    "bracket_hyp",
    "bracket_tri",
    "theta",
    "theta_prime0",
]
