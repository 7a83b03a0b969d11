"""Compatibility graphs over coordinate windows and exact clique search.

Vertices are the divisor classes of a finite box; two vertices are adjacent
when their difference is not forbidden in either direction, i.e. when the
two bundles can coexist in a strongly exceptional collection.  Adjacency for
a whole window is computed in one vectorized pass over the (much smaller)
box of coordinate differences.

``max_clique`` is an exact branch-and-bound with greedy-coloring upper
bounds over bitset adjacency; vertex order is lexicographic in (a, b, c), so
results (including the witness clique) are deterministic.
``naive_max_clique`` re-solves small instances by plain exhaustive extension
and exists only to cross-check the bounded search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .divisors import DivisorClass, check_dimension
from .forbidden import forbidden_many


@dataclass(frozen=True)
class Window:
    """Finite inclusive coordinate box a_range x b_range x c_range."""

    a_range: Tuple[int, int]
    b_range: Tuple[int, int]
    c_range: Tuple[int, int]

    def __post_init__(self):
        for lo, hi in (self.a_range, self.b_range, self.c_range):
            if lo > hi:
                raise ValueError(f"empty range [{lo}, {hi}]")

    def points(self) -> List[DivisorClass]:
        """All lattice points, lexicographically ordered."""
        return [
            DivisorClass(a, b, c)
            for a in range(self.a_range[0], self.a_range[1] + 1)
            for b in range(self.b_range[0], self.b_range[1] + 1)
            for c in range(self.c_range[0], self.c_range[1] + 1)
        ]

    @property
    def size(self) -> int:
        return (
            (self.a_range[1] - self.a_range[0] + 1)
            * (self.b_range[1] - self.b_range[0] + 1)
            * (self.c_range[1] - self.c_range[0] + 1)
        )

    def __str__(self) -> str:
        return (
            f"a:{self.a_range[0]}..{self.a_range[1]},"
            f"b:{self.b_range[0]}..{self.b_range[1]},"
            f"c:{self.c_range[0]}..{self.c_range[1]}"
        )

    def to_json(self) -> dict:
        return {"a": list(self.a_range), "b": list(self.b_range), "c": list(self.c_range)}


class CompatGraph:
    """Mutual-compatibility graph over a fixed vertex list."""

    def __init__(self, n: int, vertices: Sequence[DivisorClass], adjacency: np.ndarray,
                 window: Optional[Window] = None):
        adjacency = np.asarray(adjacency, dtype=bool)
        if adjacency.shape != (len(vertices), len(vertices)):
            raise ValueError("adjacency shape does not match vertex count")
        if not (adjacency == adjacency.T).all():
            raise ValueError("adjacency must be symmetric")
        if adjacency.diagonal().any():
            raise ValueError("self-loops are not stored")
        self.n = n
        self.vertices = list(vertices)
        self.adjacency = adjacency
        self.window = window
        self._index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return int(self.adjacency.sum()) // 2

    def index_of(self, v: DivisorClass) -> int:
        return self._index[v]

    def neighbors(self, v: DivisorClass) -> List[DivisorClass]:
        i = self._index[v]
        return [self.vertices[j] for j in np.flatnonzero(self.adjacency[i])]

    def subgraph(self, indices: Sequence[int]) -> "CompatGraph":
        idx = list(indices)
        sub = self.adjacency[np.ix_(idx, idx)]
        return CompatGraph(self.n, [self.vertices[i] for i in idx], sub)

    def adjacency_masks(self) -> List[int]:
        """Neighbor bitsets (Python ints), the clique-search representation."""
        masks = []
        for i in range(self.n_vertices):
            m = 0
            for j in np.flatnonzero(self.adjacency[i]):
                m |= 1 << int(j)
            masks.append(m)
        return masks

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "window": self.window.to_json() if self.window else None,
            "vertices": [v.to_json() for v in self.vertices],
            "edges": [
                [int(i), int(j)]
                for i in range(self.n_vertices)
                for j in np.flatnonzero(self.adjacency[i])
                if j > i
            ],
        }

    def to_dot(self) -> str:
        lines = ["graph compat {"]
        for i, v in enumerate(self.vertices):
            lines.append(f'  v{i} [label="{v}"];')
        for i in range(self.n_vertices):
            for j in np.flatnonzero(self.adjacency[i]):
                if j > i:
                    lines.append(f"  v{i} -- v{int(j)};")
        lines.append("}")
        return "\n".join(lines)


def build_graph(n: int, window: Window) -> CompatGraph:
    """Compatibility graph over every divisor class in the window.

    Adjacency is looked up from one forbidden-classification pass over the
    difference box: pair (x, y) is an edge iff neither x - y nor y - x is
    forbidden.
    """
    check_dimension(n)
    vertices = window.points()
    coords = np.array([v.as_tuple() for v in vertices], dtype=np.int64)
    spans = coords.max(axis=0) - coords.min(axis=0)
    lo = -spans
    dims = 2 * spans + 1

    diff_box = np.stack(
        np.meshgrid(
            *[np.arange(lo[k], lo[k] + dims[k], dtype=np.int64) for k in range(3)],
            indexing="ij",
        ),
        axis=-1,
    ).reshape(-1, 3)
    forb = forbidden_many(n, diff_box).reshape(tuple(dims))

    deltas = coords[:, None, :] - coords[None, :, :]  # (N, N, 3)
    idx = deltas - lo  # shift into box indices
    forb_pairs = forb[idx[..., 0], idx[..., 1], idx[..., 2]]
    adjacency = ~(forb_pairs | forb_pairs.transpose(1, 0))
    np.fill_diagonal(adjacency, False)
    return CompatGraph(n, vertices, adjacency, window=window)


# ---------------------------------------------------------------------------
# Exact maximum clique.
# ---------------------------------------------------------------------------


def _greedy_color_order(cand: int, adj: List[int]) -> Tuple[List[int], List[int]]:
    """Order candidate vertices by greedy color class; color = upper bound."""
    order: List[int] = []
    bounds: List[int] = []
    color = 0
    rest = cand
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            order.append(v)
            bounds.append(color)
            rest &= ~(1 << v)
            avail &= ~adj[v]
    return order, bounds


def max_clique(
    graph: CompatGraph, require: Optional[DivisorClass] = None
) -> Tuple[int, List[DivisorClass]]:
    """Exact maximum clique size plus one witness clique.

    With ``require`` set, only cliques containing that vertex are counted
    (the search runs inside its neighborhood).  Deterministic for a fixed
    vertex order.
    """
    if graph.n_vertices == 0:
        raise ValueError("graph has no vertices")
    adj = graph.adjacency_masks()

    base: List[int] = []
    if require is not None:
        root = graph.index_of(require)
        cand0 = adj[root]
        base = [root]
    else:
        cand0 = (1 << graph.n_vertices) - 1

    best_size = 0
    best: List[int] = []

    def expand(clique: List[int], cand: int) -> None:
        nonlocal best_size, best
        if not cand:
            if len(clique) > best_size:
                best_size = len(clique)
                best = clique.copy()
            return
        order, bounds = _greedy_color_order(cand, adj)
        for i in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[i] <= best_size:
                return
            v = order[i]
            expand(clique + [v], cand & adj[v])
            cand &= ~(1 << v)

    expand(base, cand0)
    best_vertices = sorted(
        (graph.vertices[i] for i in best), key=DivisorClass.as_tuple
    )
    return best_size, best_vertices


def naive_max_clique(graph: CompatGraph) -> Tuple[int, List[DivisorClass]]:
    """Plain exhaustive clique enumeration; the oracle for ``max_clique``.

    Only suitable for small graphs (tests use <= 20 vertices).
    """
    adj = graph.adjacency_masks()
    nv = graph.n_vertices
    best_size = 0
    best: List[int] = []

    def extend(clique: List[int], allowed: int) -> None:
        nonlocal best_size, best
        if len(clique) > best_size:
            best_size = len(clique)
            best = clique.copy()
        a = allowed
        while a:
            v = (a & -a).bit_length() - 1
            a &= a - 1
            extend(clique + [v], allowed & adj[v] & ~((1 << (v + 1)) - 1))

    extend([], (1 << nv) - 1)
    return best_size, sorted(
        (graph.vertices[i] for i in best), key=DivisorClass.as_tuple
    )


def is_clique(graph: CompatGraph, members: Iterable[DivisorClass]) -> bool:
    idx = [graph.index_of(v) for v in members]
    return all(
        graph.adjacency[i, j] for k, i in enumerate(idx) for j in idx[k + 1 :]
    )
