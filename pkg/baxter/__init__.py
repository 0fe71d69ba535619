# Baxterization package
from baxter.spectral import SpectralParam, ratio_triples, sample_pairs, spectral_param
from baxter.rmatrix import (
    RFamily,
    abf_family,
    baxterize_BMW,
    baxterize_Hecke,
    baxterize_TL,
    build_ABF_R,
    line_matrix,
    sigma_from_hecke,
)
from baxter.ybe import (
    check_degeneration,
    check_dYBE,
    check_dYBE_2param,
    check_functional_relation,
    check_gdYBE,
    check_obstruction,
    elliptic_obstruction,
)

__all__ = [
    "SpectralParam",
    "ratio_triples",
    "sample_pairs",
    "spectral_param",
    "RFamily",
    "abf_family",
    "baxterize_BMW",
    "baxterize_Hecke",
    "baxterize_TL",
    "build_ABF_R",
    "line_matrix",
    "sigma_from_hecke",
    "check_degeneration",
    "check_dYBE",
    "check_dYBE_2param",
    "check_functional_relation",
    "check_gdYBE",
    "check_obstruction",
    "elliptic_obstruction",
]
