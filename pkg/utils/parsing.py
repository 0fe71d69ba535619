"""
Parsing helpers for command-line values: complex numbers, windows, edge lists and edge files.
"""

import json
import logging
import re
from pathlib import Path as FilePath
from typing import List, Tuple, Union

from utils.errors import InputError

logger = logging.getLogger(__name__)

_BARE_UNIT = re.compile(r"(^|[+-])[ij]$")


def parse_complex(text: str) -> complex:
    """
    Accepts '0.8i', '0.1+0.8i', '-2', '1e-3-2j'. Python's own 'j' suffix
    and a bare 'i' are both understood.
    """
    raw = text.strip().replace(" ", "")
    if not raw:
        raise InputError("empty complex number")
    raw = _BARE_UNIT.sub(r"\g<1>1j", raw).replace("i", "j")
    try:
        return complex(raw)
    except ValueError:
        raise InputError(f"cannot parse complex number '{text}' (expected e.g. 0.8i or 0.1+0.8i)")


def parse_window(text: str) -> Tuple[int, int]:
    """'lo:hi' or 'lo,hi' -> (lo, hi) with at least 5 vertices."""
    parts = re.split(r"[:,]", text.strip())
    try:
        lo, hi = (int(p) for p in parts)
    except ValueError:
        raise InputError(f"window must look like 'lo:hi', got '{text}'")
    if hi - lo + 1 < 5:
        raise InputError(f"window [{lo}, {hi}] needs at least 5 vertices")
    return lo, hi


def parse_edge_list(text: str) -> List[Tuple[int, int]]:
    """
    Edge list either as JSON ('[[1,2],[2,3]]') or compact ('1-2,2-3').
    """
    raw = text.strip()
    if raw.startswith("["):
        try:
            pairs = json.loads(raw)
            return [(int(u), int(v)) for u, v in pairs]
        except (json.JSONDecodeError, TypeError, ValueError) as e:
            raise InputError(f"bad JSON edge list: {e}")
    edges = []
    for token in filter(None, raw.split(",")):
        match = re.fullmatch(r"\s*(-?\d+)\s*-\s*(-?\d+)\s*", token)
        if not match:
            raise InputError(f"bad edge '{token}' (expected u-v)")
        edges.append((int(match.group(1)), int(match.group(2))))
    if not edges:
        raise InputError("edge list is empty")
    return edges


def parse_edge_file(path: Union[str, FilePath]) -> List[Tuple[int, int]]:
    """
    Plain-text edge list: one 'u v' pair of integer vertex ids per line.
    Blank lines and '#' comments are ignored.
    """
    try:
        text = FilePath(path).read_text(encoding="utf-8")
    except OSError as e:
        raise InputError(f"cannot read edge file {path}: {e.strerror or e}")
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        fields = content.split()
        if len(fields) != 2:
            raise InputError(f"{path}:{lineno}: expected 'u v', got '{line.strip()}'")
        try:
            edges.append((int(fields[0]), int(fields[1])))
        except ValueError:
            raise InputError(f"{path}:{lineno}: vertex ids must be integers, got '{line.strip()}'")
    if not edges:
        raise InputError(f"edge file {path} has no edges")
    logger.info(f"Read {len(edges)} edges from {path}")
    return edges
