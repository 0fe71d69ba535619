"""
Built-in ADE and affine ADE diagrams with their Coxeter numbers and the
closed-form Perron-Frobenius eigenvectors of the eigenvector table.

Vertex numbering (stable, 1-based):
  A_L      path 1..L
  D_L      path 1..L-2, leaves L-1 and L on L-2              (L >= 4)
  E6       chain 1..5, 6 on 3
  E7       chain 1..6, 7 on 4                               (long arm first)
  E8       chain 1..7, 8 on 5                               (long arm first)
  A_aff L  cycle 1..L+1                                     (L >= 2)
  D_aff L  leaves 1, 2 on 3, chain 3..L-1, leaves L, L+1 on L-1   (L >= 4)
  E6_aff   chain 1..5, 6 on 3, 7 on 6
  E7_aff   chain 1..7, 8 on 4
  E8_aff   chain 1..8, 9 on 6
"""

import logging
import re
from typing import Dict, List, Optional, Tuple

import numpy as np

from groupoid.graph import Graph, Vertex
from utils.errors import InputError, UnsupportedError

logger = logging.getLogger(__name__)

CLASSICAL = ("A", "D", "E6", "E7", "E8")
AFFINE = ("A_aff", "D_aff", "E6_aff", "E7_aff", "E8_aff")
FAMILIES = CLASSICAL + AFFINE

_E_RANK = {"E6": 6, "E7": 7, "E8": 8, "E6_aff": 6, "E7_aff": 7, "E8_aff": 8}

# Diagrams shown by `graphs list` and swept by the acceptance battery
CLASSICAL_LISTING = [("A", L) for L in range(2, 9)] + [("D", L) for L in range(4, 9)] + [
    ("E6", None), ("E7", None), ("E8", None)]
AFFINE_LISTING = [("A_aff", L) for L in range(2, 6)] + [("D_aff", L) for L in range(4, 7)] + [
    ("E6_aff", None), ("E7_aff", None), ("E8_aff", None)]


def _chain(a: int, b: int) -> List[Tuple[int, int]]:
    return [(v, v + 1) for v in range(a, b)]


def validate_family(family: str, L: Optional[int]) -> int:
    """Return the effective L, raising InputError outside the validity range."""
    if family not in FAMILIES:
        raise InputError(f"unknown diagram family '{family}' (expected one of {', '.join(FAMILIES)})")
    if family in _E_RANK:
        if L is not None and L != _E_RANK[family]:
            raise InputError(f"{family} has fixed rank {_E_RANK[family]}, got L={L}")
        return _E_RANK[family]
    minimum = {"A": 2, "D": 4, "A_aff": 2, "D_aff": 4}[family]
    if L is None or L < minimum:
        raise InputError(f"{family} needs L >= {minimum}, got L={L}")
    return L


def diagram_name(family: str, L: Optional[int]) -> str:
    if family in _E_RANK:
        return family
    if family.endswith("_aff"):
        return f"{family[0]}{L}_aff"
    return f"{family}{L}"


def build_diagram(family: str, L: Optional[int] = None) -> Graph:
    """Standard (affine) Dynkin diagram as a simple graph."""
    L = validate_family(family, L)
    name = diagram_name(family, L)
    if family == "A":
        edges = _chain(1, L)
    elif family == "D":
        edges = _chain(1, L - 2) + [(L - 2, L - 1), (L - 2, L)]
    elif family == "E6":
        edges = _chain(1, 5) + [(3, 6)]
    elif family == "E7":
        edges = _chain(1, 6) + [(4, 7)]
    elif family == "E8":
        edges = _chain(1, 7) + [(5, 8)]
    elif family == "A_aff":
        edges = _chain(1, L + 1) + [(L + 1, 1)]
    elif family == "D_aff":
        edges = [(1, 3), (2, 3)] + _chain(3, L - 1) + [(L - 1, L), (L - 1, L + 1)]
    elif family == "E6_aff":
        edges = _chain(1, 5) + [(3, 6), (6, 7)]
    elif family == "E7_aff":
        edges = _chain(1, 7) + [(4, 8)]
    else:  # E8_aff
        edges = _chain(1, 8) + [(6, 9)]
    graph = Graph.from_edges(edges, name=name)
    logger.debug(f"Built {name} with {len(graph.vertices)} vertices")
    return graph


def coxeter_number(family: str, L: Optional[int] = None) -> int:
    """Coxeter number h of a classical diagram (A_L: L+1, D_L: 2L-2, E6/7/8: 12/18/30)."""
    if family in AFFINE:
        raise UnsupportedError(f"{family} has no Coxeter number in the table (affine diagram)")
    L = validate_family(family, L)
    return {"A": L + 1, "D": 2 * L - 2, "E6": 12, "E7": 18, "E8": 30}[family]


def parse_graph_token(token: str, L: Optional[int] = None) -> Tuple[str, Optional[int]]:
    """
    'A5' -> ('A', 5); 'D4_aff' -> ('D_aff', 4); 'E6' -> ('E6', None);
    'A' with L=5 -> ('A', 5).
    """
    m = re.fullmatch(r"([ADE])(\d*)(_aff)?", token.strip())
    if not m:
        raise InputError(f"cannot parse graph '{token}' (examples: A5, D6, E6, A5_aff, E8_aff)")
    letter, digits, aff = m.groups()
    suffix = aff or ""
    if letter == "E":
        if not digits:
            raise InputError("E diagrams need a rank: E6, E7 or E8")
        return f"E{digits}{suffix}", None
    rank = int(digits) if digits else L
    return f"{letter}{suffix}", rank


# =============================================================================
# EIGENVECTOR TABLE (closed forms, compared against power iteration)
# =============================================================================

def tabulated_eigenvector(family: str, L: Optional[int] = None) -> Dict[Vertex, float]:
    """
    Closed-form eigenvector rows as printed in the eigenvector table.

    The E rows are transcribed as printed, including entries that do not
    satisfy the eigen-equation; compare_with_table reports those.
    """
    L = validate_family(family, L)
    s, c, pi = np.sin, np.cos, np.pi
    if family == "A":
        row = [s(k * pi / (L + 1)) for k in range(1, L + 1)]
    elif family == "D":
        row = [2 * c((L - 1 - k) * pi / (2 * L - 2)) for k in range(1, L - 1)] + [1.0, 1.0]
    elif family == "E6":
        row = [s(pi / 12), s(pi / 6), s(pi / 4),
               s(pi / 3) - s(pi / 4) / (2 * c(pi / 12)),
               s(5 * pi / 12) - s(pi / 4),
               s(pi / 4) / (2 * c(pi / 18))]
    elif family == "E7":
        row = [s(pi / 18), s(pi / 9), s(pi / 6), s(2 * pi / 9),
               s(2 * pi / 18) - s(2 * pi / 9) / (2 * c(pi / 18)),
               s(pi / 3) - s(2 * pi / 9),
               s(2 * pi / 9) / (2 * c(pi / 30))]
    elif family == "E8":
        row = [s(pi / 30), s(pi / 15), s(pi / 10), s(2 * pi / 15), s(pi / 6),
               s(pi / 5) - s(pi / 6) / (2 * c(pi / 30)),
               s(7 * pi / 30) - s(pi / 6),
               s(pi / 6) / (2 * c(pi / 30))]
    elif family == "A_aff":
        row = [1.0] * (L + 1)
    elif family == "D_aff":
        row = [1.0, 1.0] + [2.0] * (L - 3) + [1.0, 1.0]
    elif family == "E6_aff":
        row = [1, 2, 3, 2, 1, 2, 1]
    elif family == "E7_aff":
        row = [1, 2, 3, 4, 3, 2, 1, 2]
    else:
        row = [1, 2, 3, 4, 5, 6, 4, 2, 3]
    return {k + 1: float(v) for k, v in enumerate(row)}
