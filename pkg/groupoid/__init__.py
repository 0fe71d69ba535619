# Groupoid core package
from groupoid.graph import Arrow, Graph, Path, ReducedWord, Vertex, closed_paths, paths_from, reduce
from groupoid.fiber import (
    FiberOperator,
    add,
    chain,
    commutator,
    compose,
    embed_at,
    embed_with_shift,
    identity,
    invert,
    residual,
    scale,
    sub,
    zero,
)

__all__ = [
    "Arrow",
    "Graph",
    "Path",
    "ReducedWord",
    "Vertex",
    "closed_paths",
    "paths_from",
    "reduce",
    "FiberOperator",
    "add",
    "chain",
    "commutator",
    "compose",
    "embed_at",
    "embed_with_shift",
    "identity",
    "invert",
    "residual",
    "scale",
    "sub",
    "zero",
]
