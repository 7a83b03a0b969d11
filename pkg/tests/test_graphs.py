import json
import random

import numpy as np
import pytest

from excoll import (
    CompatGraph,
    DivisorClass,
    Window,
    build_graph,
    is_clique,
    is_compatible,
    max_clique,
    naive_max_clique,
)

D = DivisorClass


def test_window_points_lexicographic():
    w = Window((0, 1), (-1, 0), (2, 2))
    pts = [p.as_tuple() for p in w.points()]
    assert pts == [(0, -1, 2), (0, 0, 2), (1, -1, 2), (1, 0, 2)]
    assert w.size == 4


def test_window_rejects_empty_range():
    with pytest.raises(ValueError):
        Window((1, 0), (0, 0), (0, 0))


def test_zero_neighborhood_is_the_six(fan5=None):
    g = build_graph(5, Window((0, 0), (-2, 2), (-2, 2)))
    nbrs = {v.as_tuple() for v in g.neighbors(D(0, 0, 0))}
    assert nbrs == {(0, -1, 0), (0, 0, -1), (0, 1, 0), (0, 0, 1), (0, -1, 1), (0, 1, -1)}


def test_singleton_window():
    g = build_graph(4, Window((2, 2), (1, 1), (1, 1)))
    assert g.n_vertices == 1
    assert g.n_edges == 0


def test_specific_edge_present():
    g = build_graph(5, Window((0, 1), (-1, 1), (-1, 1)))
    i = g.index_of(D(0, 0, 0))
    j = g.index_of(D(1, 0, 0))
    assert g.adjacency[i, j] and g.adjacency[j, i]


def test_adjacency_matches_pairwise_compat():
    n = 4
    g = build_graph(n, Window((0, 1), (-1, 1), (-1, 1)))
    for i, x in enumerate(g.vertices):
        for j, y in enumerate(g.vertices):
            expected = i != j and is_compatible(n, x, y).compatible
            assert bool(g.adjacency[i, j]) == expected


def test_compat_graph_validation():
    verts = [D(0, 0, 0), D(0, 1, 0)]
    with pytest.raises(ValueError):
        CompatGraph(4, verts, np.array([[False, True], [False, False]]))
    with pytest.raises(ValueError):
        CompatGraph(4, verts, np.array([[True, True], [True, False]]))
    with pytest.raises(ValueError):
        CompatGraph(4, verts, np.zeros((3, 3), dtype=bool))


def test_max_clique_complete_graph():
    verts = [D(0, 0, i) for i in range(4)]
    adjacency = ~np.eye(4, dtype=bool)
    g = CompatGraph(5, verts, adjacency)
    size, witness = max_clique(g)
    assert size == 4
    assert len(witness) == 4


def test_max_clique_zero_slice_restricted():
    g = build_graph(5, Window((0, 0), (-3, 3), (-3, 3)))
    zero = D(0, 0, 0)
    keep = [g.index_of(zero)] + [g.index_of(v) for v in g.neighbors(zero)]
    size, witness = max_clique(g.subgraph(keep))
    assert size == 3
    assert zero in witness or len(witness) == 3


def test_max_clique_three_slice_window():
    g = build_graph(5, Window((0, 2), (-1, 2), (-1, 2)))
    size, _ = max_clique(g)
    assert size <= 8


def test_max_clique_require_vertex():
    g = build_graph(5, Window((0, 2), (-2, 3), (-2, 3)))
    size, witness = max_clique(g, require=D(0, 0, 0))
    assert D(0, 0, 0) in witness
    assert size == len(witness) <= 8
    assert is_clique(g, witness)


def test_max_clique_deterministic():
    g = build_graph(5, Window((0, 1), (-2, 2), (-2, 2)))
    first = max_clique(g)
    for _ in range(3):
        assert max_clique(g) == first


def test_clique_monotone_under_subwindow():
    big = build_graph(4, Window((0, 2), (-2, 2), (-2, 2)))
    small = build_graph(4, Window((0, 1), (-1, 1), (-1, 1)))
    assert max_clique(small)[0] <= max_clique(big)[0]


def test_translation_normalization():
    # Translating the window does not change the clique number.
    base = build_graph(5, Window((0, 1), (-1, 1), (-1, 1)))
    shifted_vertices = [v + D(2, 3, -1) for v in base.vertices]
    shifted = CompatGraph(5, shifted_vertices, base.adjacency)
    assert max_clique(shifted)[0] == max_clique(base)[0]
    g_shift = build_graph(5, Window((2, 3), (2, 4), (-2, 0)))
    assert max_clique(g_shift)[0] == max_clique(base)[0]


def test_naive_oracle_agreement():
    g = build_graph(4, Window((0, 2), (-2, 3), (-2, 3)))
    rng = random.Random(20240817)
    for _ in range(25):
        idx = rng.sample(range(g.n_vertices), 14)
        sub = g.subgraph(idx)
        assert max_clique(sub)[0] == naive_max_clique(sub)[0]


def test_witness_is_actually_a_clique():
    g = build_graph(4, Window((0, 2), (-2, 3), (-2, 3)))
    size, witness = max_clique(g)
    assert len(witness) == size
    assert is_clique(g, witness)


def test_json_export_round_trip():
    g = build_graph(4, Window((0, 1), (-1, 1), (-1, 1)))
    payload = json.loads(json.dumps(g.to_json()))
    assert payload["n"] == 4
    assert payload["window"] == {"a": [0, 1], "b": [-1, 1], "c": [-1, 1]}
    rebuilt = np.zeros((len(payload["vertices"]), len(payload["vertices"])), dtype=bool)
    for i, j in payload["edges"]:
        rebuilt[i, j] = rebuilt[j, i] = True
    assert (rebuilt == g.adjacency).all()
    assert [DivisorClass.from_json(v) for v in payload["vertices"]] == g.vertices


def test_dot_export():
    g = build_graph(4, Window((0, 0), (-1, 1), (0, 0)))
    dot = g.to_dot()
    assert dot.startswith("graph compat {")
    assert dot.rstrip().endswith("}")
    assert 'label="(0,-1,0)"' in dot
    assert " -- " in dot
