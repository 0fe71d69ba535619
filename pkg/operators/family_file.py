"""
JSON family file: graph edge list, order-2 blocks and one vertex scalar map.

    {"graph": [[1, 2], [2, 3]], "order": 2,
     "blocks": [{"base": 2, "in": [2, 1, 2], "out": [2, 3, 2], "re": 0.7, "im": 0.0}],
     "kappa": [{"vertex": 2, "re": 1.41, "im": 0.0}]}
"""

import json
import logging
from collections import defaultdict
from pathlib import Path as FilePath
from typing import Dict, List, Mapping, Union

from pydantic import ValidationError

from groupoid.fiber import FiberOperator
from groupoid.graph import Graph, Path, Vertex
from models.schemas import BlockEntry, FamilyFile, ScalarEntry
from operators.families import BMWFamily, HeckeFamily, TLFamily
from utils.errors import InputError, ShapeError

logger = logging.getLogger(__name__)

Family = Union[TLFamily, HeckeFamily, BMWFamily]


def _scalars(entries: List[ScalarEntry]) -> Dict[Vertex, complex]:
    return {e.vertex: complex(e.re, e.im) for e in entries}


def _operators(graph: Graph, blocks: List[BlockEntry], domain: List[Vertex]) -> Dict[Vertex, FiberOperator]:
    """Operators on the vertices of the scalar map; a vertex without blocks gets the zero operator."""
    grouped: Dict[Vertex, dict] = defaultdict(dict)
    for b in blocks:
        if b.base not in domain:
            raise InputError(f"block at vertex {b.base} has no scalar entry")
        p_in, p_out = Path(tuple(b.in_path)), Path(tuple(b.out_path))
        for p in (p_in, p_out):
            if not graph.is_path(p):
                raise InputError(f"block path {p} is not a path of the graph")
        grouped[b.base][(p_in, p_out)] = complex(b.re, b.im)
    try:
        return {a: FiberOperator(a, 2, grouped.get(a, {})) for a in domain}
    except ShapeError as e:
        raise InputError(f"invalid family file: {e}") from e


def family_from_record(record: FamilyFile) -> Family:
    if record.order != 2:
        raise InputError(f"family files carry order-2 operators, got order {record.order}")
    graph = Graph.from_edges([tuple(e) for e in record.graph], name=record.name, vertices=record.vertices)

    primary = record.nubar or record.qbar or record.kappa
    if primary is None:
        raise InputError("family file needs one of kappa, qbar or nubar")
    domain = sorted({e.vertex for e in primary})
    unknown = [a for a in domain if not graph.has_vertex(a)]
    if unknown:
        raise InputError(f"scalar entry for unknown vertex {unknown[0]}")
    ops = _operators(graph, record.blocks, domain)

    def scalar_map(entries: List[ScalarEntry], label: str) -> Dict[Vertex, complex]:
        values = _scalars(entries)
        missing = [a for a in domain if a not in values]
        if missing:
            raise InputError(f"{label} is missing vertex {missing[0]}")
        return {a: values[a] for a in domain}

    if record.nubar is not None:
        if record.qbar is None:
            raise InputError("a BMW family needs qbar next to nubar")
        return BMWFamily(graph=graph, U=ops, qbar=scalar_map(record.qbar, "qbar"),
                         nubar=scalar_map(record.nubar, "nubar"), kind="bmw[file]")
    if record.qbar is not None:
        return HeckeFamily(graph=graph, S=ops, qbar=scalar_map(record.qbar, "qbar"), kind="hecke[file]")
    return TLFamily(graph=graph, T=ops, kappa=scalar_map(record.kappa, "kappa"), kind="tl[file]")


def load_family(path: Union[str, FilePath]) -> Family:
    """Read a TL, Hecke or BMW family from a JSON family file."""
    try:
        raw = json.loads(FilePath(path).read_text(encoding="utf-8"))
    except OSError as e:
        raise InputError(f"cannot read family file {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"family file {path} is not valid JSON: {e}") from e
    try:
        record = FamilyFile.model_validate(raw)
    except ValidationError as e:
        raise InputError(f"family file {path} does not match the schema: {e.errors()[0]['msg']}") from e
    family = family_from_record(record)
    logger.info(f"Loaded {family.kind} family on {family.graph.name} from {path}")
    return family


def _entries(values: Mapping[Vertex, complex]) -> List[ScalarEntry]:
    return [ScalarEntry(vertex=a, re=complex(v).real, im=complex(v).imag) for a, v in sorted(values.items())]


def dump_family(family: Family) -> FamilyFile:
    """Family -> FamilyFile record (blocks sorted by base, then paths)."""
    if isinstance(family, BMWFamily):
        ops, scalars = family.U, {"qbar": _entries(family.qbar), "nubar": _entries(family.nubar)}
    elif isinstance(family, HeckeFamily):
        ops, scalars = family.S, {"qbar": _entries(family.qbar)}
    else:
        ops, scalars = family.T, {"kappa": _entries(family.kappa)}
    blocks = []
    for a in sorted(ops):
        for (p_in, p_out), value in sorted(ops[a].blocks.items(), key=lambda kv: (kv[0][0].vertices, kv[0][1].vertices)):
            if value == 0:
                continue
            blocks.append(BlockEntry(base=a, in_path=list(p_in.vertices), out_path=list(p_out.vertices),
                                     re=complex(value).real, im=complex(value).imag))
    edges = sorted(sorted(e) for e in family.graph.edges)
    return FamilyFile(graph=edges, vertices=list(family.graph.vertices), name=family.graph.name,
                      blocks=blocks, **scalars)
