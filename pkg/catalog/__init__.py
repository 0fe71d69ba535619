# Graph catalog package
from catalog.dynkin import (
    AFFINE,
    AFFINE_LISTING,
    CLASSICAL,
    CLASSICAL_LISTING,
    FAMILIES,
    build_diagram,
    coxeter_number,
    diagram_name,
    parse_graph_token,
    tabulated_eigenvector,
)
from catalog.perron import PFData, compare_with_table, pf_eigen

__all__ = [
    "AFFINE",
    "AFFINE_LISTING",
    "CLASSICAL",
    "CLASSICAL_LISTING",
    "FAMILIES",
    "build_diagram",
    "coxeter_number",
    "diagram_name",
    "parse_graph_token",
    "tabulated_eigenvector",
    "PFData",
    "compare_with_table",
    "pf_eigen",
]
