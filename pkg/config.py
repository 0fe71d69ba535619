"""
Configuration management for the dynamical Baxterization toolkit.
Loads solver limits, default windows and tolerance profiles from environment
variables with sensible defaults.
"""

import os
import logging
from functools import lru_cache
from typing import Dict
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

from utils.errors import InputError

load_dotenv()

logger = logging.getLogger(__name__)


# Thresholds of the acceptance battery. "obstruction" is a lower bound, all
# others are upper bounds on residuals.
TOLERANCE_PROFILES: Dict[str, Dict[str, float]] = {
    "default": {
        "pf": 1e-10,
        "tl": 1e-10,
        "tl_elliptic": 1e-9,
        "functional": 1e-12,
        "ybe": 1e-9,
        "ybe_abf": 1e-8,
        "hecke": 1e-11,
        "hecke_ybe": 1e-10,
        "murphy": 1e-10,
        "bmw": 1e-10,
        "commute": 1e-9,
        "jacobi": 1e-10,
        "spectrum": 1e-12,
        "degeneration": 1e-6,
        "obstruction": 1e-3,
    },
}
TOLERANCE_PROFILES["strict"] = {
    name: (value if name == "obstruction" else value / 10.0)
    for name, value in TOLERANCE_PROFILES["default"].items()
}


class Settings(BaseSettings):
    """Toolkit settings loaded from environment variables."""
    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore"
    )

    # Logging
    log_level: str = os.getenv("LOG_LEVEL", "INFO")

    # Theta series
    theta_tol: float = float(os.getenv("THETA_TOL", "1e-13"))
    theta_max_terms: int = int(os.getenv("THETA_MAX_TERMS", "10000"))

    # Perron-Frobenius power iteration
    pf_tol: float = float(os.getenv("PF_TOL", "1e-13"))
    pf_max_iter: int = int(os.getenv("PF_MAX_ITER", "100000"))

    # Unrestricted line families: objects n + shift_b for n in [window_lo, window_hi]
    shift_b: float = float(os.getenv("SHIFT_B", "0.2024"))
    window_lo: int = int(os.getenv("WINDOW_LO", "0"))
    window_hi: int = int(os.getenv("WINDOW_HI", "12"))

    # Size guards
    max_paths_per_base: int = int(os.getenv("MAX_PATHS_PER_BASE", "100000"))
    max_dense_dim: int = int(os.getenv("MAX_DENSE_DIM", "2000"))

    # Verification sweeps
    ybe_samples: int = int(os.getenv("YBE_SAMPLES", "20"))
    jacobi_max_sweeps: int = int(os.getenv("JACOBI_MAX_SWEEPS", "100"))
    tol_profile: str = os.getenv("TOL_PROFILE", "default")

    def validate_setup(self):
        """Warn about settings that will make checks meaningless or slow."""
        for name in ("theta_tol", "pf_tol"):
            if getattr(self, name) <= 0:
                logger.warning(f"⚠️ {name.upper()} must be positive, got {getattr(self, name)}")
        if self.window_hi - self.window_lo + 1 < 5:
            logger.warning(
                f"⚠️ Window [{self.window_lo}, {self.window_hi}] has fewer than 5 vertices; "
                "line families will have no interior bases."
            )
        if self.tol_profile not in TOLERANCE_PROFILES:
            logger.warning(f"⚠️ Unknown TOL_PROFILE '{self.tol_profile}', falling back to 'default'.")
        return True


@lru_cache()
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


def get_tolerances(profile: str = None) -> Dict[str, float]:
    """
    Get the named thresholds of a tolerance profile.

    Args:
        profile: 'default' or 'strict'; None uses the configured profile.

    Returns:
        Copy of the threshold mapping.
    """
    name = profile or get_settings().tol_profile
    if name not in TOLERANCE_PROFILES:
        raise InputError(f"unknown tolerance profile '{name}' (expected one of {sorted(TOLERANCE_PROFILES)})")
    return dict(TOLERANCE_PROFILES[name])


def set_tol_profile(profile: str) -> Dict[str, float]:
    """Switch the active tolerance profile for every checker that is not given an explicit tol."""
    tolerances = get_tolerances(profile)
    get_settings().tol_profile = profile
    logger.info(f"Tolerance profile: {profile}")
    return tolerances
