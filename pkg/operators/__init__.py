# Operator families package
from operators.families import (
    BMWFamily,
    HeckeFamily,
    TLFamily,
    bmw_from_hecke,
    build_TL_graph,
    build_TL_line,
    hecke_from_TL,
    q_from_kappa,
    tl_from_hecke,
)
from operators.checks import (
    check_dBMW,
    check_dHecke,
    check_dTL,
    check_diagram_algebra,
    check_global,
    check_global_hecke,
    murphy_check,
)
from operators.family_file import dump_family, load_family

__all__ = [
    "BMWFamily",
    "HeckeFamily",
    "TLFamily",
    "bmw_from_hecke",
    "build_TL_graph",
    "build_TL_line",
    "hecke_from_TL",
    "q_from_kappa",
    "tl_from_hecke",
    "check_dBMW",
    "check_dHecke",
    "check_dTL",
    "check_diagram_algebra",
    "check_global",
    "check_global_hecke",
    "murphy_check",
    "dump_family",
    "load_family",
]
