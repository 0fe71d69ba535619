import numpy as np
import pytest

from catalog import build_diagram
from groupoid.fiber import (
    FiberOperator,
    add,
    chain,
    compose,
    embed_at,
    embed_with_shift,
    fiber_paths,
    identity,
    invert,
    residual,
    scale,
    to_dense,
)
from groupoid.graph import Arrow, Graph, Path, closed_paths, paths_from, reduce
from utils.errors import InputError, MissingVertexError, ShapeError


def test_path_accessors():
    p = Path.of(1, 2, 3)
    assert p.base == 1
    assert p.target == 3
    assert p.length == 2
    assert p.arrows == (Arrow(1, 2), Arrow(2, 3))


def test_graph_rejects_self_loop_and_disconnected():
    with pytest.raises(InputError):
        Graph.from_edges([(1, 1)])
    with pytest.raises(InputError):
        Graph.from_edges([(1, 2), (3, 4)])


def test_paths_from_counts_match_adjacency_powers():
    graph = build_diagram("E6")
    Y = graph.adjacency_matrix()
    for k in (1, 2, 3, 4):
        Yk = np.linalg.matrix_power(Y, k)
        for v in graph.vertices:
            assert len(paths_from(graph, v, k)) == int(Yk[graph.index[v]].sum())


def test_paths_are_lexicographic():
    graph = build_diagram("A", 4)
    seqs = [p.vertices for p in paths_from(graph, 2, 3)]
    assert seqs == sorted(seqs)


def test_closed_paths_count_is_trace():
    graph = build_diagram("A", 4)
    Y = graph.adjacency_matrix()
    for N in (2, 4, 6):
        assert len(closed_paths(graph, N)) == int(round(np.trace(np.linalg.matrix_power(Y, N))))


def test_unknown_base_is_input_error():
    with pytest.raises(InputError):
        paths_from(build_diagram("A", 3), 9, 2)


def test_reduce_cancels_backtracks():
    assert reduce(Path.of(1, 2, 1)).is_identity
    word = reduce(Path.of(1, 2, 3, 2))
    assert word.arrows == (Arrow(1, 2),)
    # going around the cycle does not reduce
    assert len(reduce(Path.of(1, 2, 3, 1)).arrows) == 3


def test_degree_violation_is_rejected():
    with pytest.raises(ShapeError):
        FiberOperator(1, 2, {(Path.of(1, 2, 1), Path.of(1, 2, 3)): 1.0})


def test_compose_applies_right_operand_first():
    graph = build_diagram("A", 3)
    up, down = Path.of(2, 3, 2), Path.of(2, 1, 2)
    f = FiberOperator(2, 2, {(up, down): 1.0})
    g = FiberOperator(2, 2, {(down, up): 2.0})
    fg = compose(f, g)
    assert fg.get(down, down) == pytest.approx(2.0)
    assert fg.get(up, up) == 0
    assert residual(chain(f, g, identity(graph, 2, 2)), fg) == 0.0


def _random_operator(graph, base, order, rng):
    paths = fiber_paths(graph, base, order)
    blocks = {}
    for p_in in paths:
        for p_out in paths:
            if reduce(p_in) == reduce(p_out):
                blocks[(p_in, p_out)] = complex(rng.normal(), rng.normal())
    return FiberOperator(base, order, blocks)


def test_compose_is_associative():
    graph = build_diagram("E6")
    rng = np.random.default_rng(7)
    for base in (1, 3):
        for _ in range(5):
            f, g, h = (_random_operator(graph, base, 3, rng) for _ in range(3))
            assert residual(compose(compose(f, g), h), compose(f, compose(g, h))) < 1e-12


def test_invert_round_trip():
    graph = build_diagram("A", 3)
    up, down = Path.of(2, 3, 2), Path.of(2, 1, 2)
    op = FiberOperator(2, 2, {(up, up): 2.0, (down, down): 3.0, (up, down): 1.0, (down, up): 1.0})
    inv = invert(op, graph)
    assert residual(compose(op, inv), identity(graph, 2, 2)) < 1e-14


def test_embed_at_uses_shifted_anchor():
    graph = build_diagram("A", 4)
    family = {v: scale(float(v), identity(graph, v, 2)) for v in graph.vertices}
    op = embed_at(graph, family, 2, 3, 2)
    for p in fiber_paths(graph, 2, 3):
        assert op.get(p, p) == pytest.approx(p.vertices[1])


def test_embed_with_shift_covers_requested_bases():
    graph = build_diagram("A", 5)
    family = {v: scale(float(v), identity(graph, v, 2)) for v in graph.vertices}
    embedded = embed_with_shift(graph, family, 1, 3, bases=[2, 3])
    assert set(embedded) == {2, 3}
    assert all(op.order == 3 and op.base == a for a, op in embedded.items())
    for p in fiber_paths(graph, 3, 3):
        assert embedded[3].get(p, p) == pytest.approx(3.0)


def test_embed_at_missing_anchor_raises():
    graph = build_diagram("A", 4)
    family = {2: identity(graph, 2, 2)}
    with pytest.raises(MissingVertexError) as info:
        embed_at(graph, family, 2, 3, 2)
    assert info.value.vertex in (1, 3)


def test_to_dense_orders_rows_by_out_path():
    graph = build_diagram("A", 3)
    basis = fiber_paths(graph, 2, 2)
    op = add(identity(graph, 2, 2), FiberOperator(2, 2, {(basis[0], basis[1]): 5.0}))
    M = to_dense(op, basis)
    assert M[1, 0] == 5.0
    assert M[0, 1] == 0.0
