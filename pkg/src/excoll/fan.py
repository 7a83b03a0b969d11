"""Fan of P^n blown up at two torus-fixed points, with certified structure.

The fan is built from the standard fan of P^n (rays e_1..e_n and
e_0 = -(e_1+...+e_n)) by star-subdividing the two maximal cones
<e_1,...,e_n> and <e_0,e_2,...,e_n>; the new rays are e_1+...+e_n and -e_1.
This yields n+3 rays and 3n-1 maximal cones, which is also the rank of the
Grothendieck group of the variety.

Ray labels (v, y, z, t, u) are not hard-coded from the construction order:
they are re-derived from the primitive-collection structure of the finished
fan and certified against the linear equivalences D_z = D_t + D_y and
D_v = D_u + D_y, so any later change to ray ordering would be caught rather
than silently mislabel the five divisor classes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from ._exact import integer_det, solve_unique_rational
from .divisors import DivisorClass, check_dimension
from .report import LemmaReport

LABELS = ("v", "y", "z", "t", "u")

TDivisor = Tuple[int, ...]  # one integer multiplicity per ray


@dataclass(frozen=True)
class Fan:
    """Simplicial fan data plus the derived ray labeling."""

    dim: int
    rays: Tuple[Tuple[int, ...], ...]
    max_cones: Tuple[FrozenSet[int], ...]
    labels: Tuple[str, ...]  # one of LABELS per ray

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def rays_with_label(self, label: str) -> Tuple[int, ...]:
        return tuple(i for i, lab in enumerate(self.labels) if lab == label)

    def ray_index(self, label: str) -> int:
        """Index of the unique ray with a given label (y uses the first)."""
        idx = self.rays_with_label(label)
        if not idx:
            raise KeyError(f"no ray labelled {label!r}")
        return idx[0]

    @property
    def basis_ray_indices(self) -> Tuple[int, int, int]:
        """Ray indices carrying the basis classes (D_y, D_t, D_u)."""
        return (self.ray_index("y"), self.ray_index("t"), self.ray_index("u"))

    @property
    def picard_rank(self) -> int:
        return self.n_rays - self.dim

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "rays": [list(r) for r in self.rays],
            "max_cones": [sorted(c) for c in self.max_cones],
            "labels": {
                lab: list(self.rays_with_label(lab)) for lab in LABELS
            },
        }


def _projective_space_rays(n: int) -> List[Tuple[int, ...]]:
    rays = [tuple(-1 for _ in range(n))]
    for i in range(n):
        rays.append(tuple(1 if j == i else 0 for j in range(n)))
    return rays


def build_fan(n: int) -> Fan:
    """Fan of P^n blown up at two distinct torus-fixed points."""
    check_dimension(n)
    rays = _projective_space_rays(n)  # index 0 = e_0, index i = e_i
    # P^n maximal cones: drop one ray each.
    all_idx = set(range(n + 1))
    cones = [frozenset(all_idx - {i}) for i in range(n + 1)]

    # Star subdivision of <e_1..e_n> at e_1+...+e_n.
    r1 = len(rays)
    rays.append(tuple(1 for _ in range(n)))
    sigma0 = frozenset(range(1, n + 1))
    cones.remove(sigma0)
    for j in sorted(sigma0):
        cones.append(frozenset({r1} | (sigma0 - {j})))

    # Star subdivision of <e_0, e_2..e_n> at its generator sum = -e_1.
    r2 = len(rays)
    rays.append(tuple(-1 if j == 0 else 0 for j in range(n)))
    sigma1 = frozenset({0} | set(range(2, n + 1)))
    cones.remove(sigma1)
    for g in sorted(sigma1):
        cones.append(frozenset({r2} | (sigma1 - {g})))

    labels = _derive_labels(n, tuple(rays), tuple(cones))
    return Fan(dim=n, rays=tuple(rays), max_cones=tuple(cones), labels=labels)


# ---------------------------------------------------------------------------
# Primitive collections and labeling.
# ---------------------------------------------------------------------------


def primitive_collections(fan_or_rays, max_cones=None) -> List[FrozenSet[int]]:
    """Minimal ray sets that span no cone while every proper subset does."""
    if max_cones is None:
        fan = fan_or_rays
        nrays = fan.n_rays
        cones = fan.max_cones
    else:
        nrays = len(fan_or_rays)
        cones = max_cones
    cone_masks = [sum(1 << i for i in c) for c in cones]

    def is_face(mask: int) -> bool:
        return any(mask & ~cm == 0 for cm in cone_masks)

    face = [False] * (1 << nrays)
    face[0] = True
    minimal: List[FrozenSet[int]] = []
    # Sizes in increasing order so subset faces are already decided.
    for size in range(1, nrays + 1):
        for combo in itertools.combinations(range(nrays), size):
            mask = sum(1 << i for i in combo)
            if is_face(mask):
                face[mask] = True
                continue
            if all(face[mask & ~(1 << i)] for i in combo):
                minimal.append(frozenset(combo))
    return minimal


def _collection_cycle(
    collections: Sequence[FrozenSet[int]],
) -> Optional[List[int]]:
    """Order the five primitive collections into their intersection cycle."""
    if len(collections) != 5:
        return None
    adj = {
        i: [j for j in range(5) if j != i and collections[i] & collections[j]]
        for i in range(5)
    }
    if any(len(v) != 2 for v in adj.values()):
        return None
    cycle = [0]
    prev = None
    while len(cycle) < 5:
        nxts = [j for j in adj[cycle[-1]] if j != prev]
        if not nxts:
            return None
        prev = cycle[-1]
        cycle.append(nxts[0])
    if cycle[0] not in adj[cycle[-1]]:
        return None
    return cycle


def _classes_from_cycle(
    collections: Sequence[FrozenSet[int]], cycle: Sequence[int]
) -> List[FrozenSet[int]]:
    """Ray classes between consecutive collections around the cycle."""
    classes = []
    for k in range(5):
        a = collections[cycle[k]]
        b = collections[cycle[(k + 1) % 5]]
        classes.append(a & b)
    return classes


def _derive_labels(
    n: int, rays: Tuple[Tuple[int, ...], ...], cones: Tuple[FrozenSet[int], ...]
) -> Tuple[str, ...]:
    colls = primitive_collections(rays, cones)
    cycle = _collection_cycle(colls)
    if cycle is None:
        raise RuntimeError("fan does not have the expected five-collection cycle")
    classes = _classes_from_cycle(colls, cycle)
    if sorted(map(len, classes)) != sorted([1, n - 1, 1, 1, 1]):
        raise RuntimeError(f"unexpected class sizes {[len(c) for c in classes]}")

    candidates = []
    for start in range(5):
        for step in (1, -1):
            ordered = [classes[(start + step * k) % 5] for k in range(5)]
            # ordered = (X_v, X_y, X_z, X_t, X_u); y must be the big class.
            if len(ordered[1]) != n - 1:
                continue
            labels = ["?"] * len(rays)
            for lab, cls in zip(LABELS, ordered):
                for i in cls:
                    labels[i] = lab
            if _equivalences_hold(n, rays, tuple(labels)):
                key = tuple(min(cls) for cls in ordered)
                candidates.append((key, tuple(labels)))
    if not candidates:
        raise RuntimeError("no labeling satisfies the divisor equivalences")
    candidates.sort()
    return candidates[0][1]


def _equivalences_hold(
    n: int, rays: Tuple[Tuple[int, ...], ...], labels: Tuple[str, ...]
) -> bool:
    def indicator(idx: int) -> TDivisor:
        return tuple(1 if i == idx else 0 for i in range(len(rays)))

    def plus(x: TDivisor, y: TDivisor) -> TDivisor:
        return tuple(a + b for a, b in zip(x, y))

    def ray_idx(lab: str) -> int:
        return next(i for i, l in enumerate(labels) if l == lab)

    y_rays = [i for i, l in enumerate(labels) if l == "y"]
    d_y = indicator(y_rays[0])
    d_z = indicator(ray_idx("z"))
    d_t = indicator(ray_idx("t"))
    d_v = indicator(ray_idx("v"))
    d_u = indicator(ray_idx("u"))
    if not _linearly_equivalent_raw(rays, d_z, plus(d_t, d_y)):
        return False
    if not _linearly_equivalent_raw(rays, d_v, plus(d_u, d_y)):
        return False
    for other in y_rays[1:]:
        if not _linearly_equivalent_raw(rays, d_y, indicator(other)):
            return False
    return True


# ---------------------------------------------------------------------------
# Linear equivalence and basis conversion.
# ---------------------------------------------------------------------------


def _linearly_equivalent_raw(
    rays: Sequence[Tuple[int, ...]], d1: Sequence[int], d2: Sequence[int]
) -> bool:
    diff = [int(x) - int(y) for x, y in zip(d1, d2)]
    sol = solve_unique_rational([list(r) for r in rays], diff)
    if sol is None:
        return False
    return all(x.denominator == 1 for x in sol)


def linearly_equivalent(fan: Fan, d1: Sequence[int], d2: Sequence[int]) -> bool:
    """Whether two T-divisors differ by the divisor of a character.

    Decided by an exact rational solve of <m, ray_r> = d1_r - d2_r followed
    by an integrality check on m.
    """
    if len(d1) != fan.n_rays or len(d2) != fan.n_rays:
        raise ValueError("T-divisors must have one coefficient per ray")
    return _linearly_equivalent_raw(fan.rays, d1, d2)


def divisor_class_to_ray_coeffs(fan: Fan, d: DivisorClass) -> TDivisor:
    """The T-divisor a*D_y + b*D_t + c*D_u on one chosen y-ray."""
    y0, t, u = fan.basis_ray_indices
    coeffs = [0] * fan.n_rays
    coeffs[y0] += d.a
    coeffs[t] += d.b
    coeffs[u] += d.c
    return tuple(coeffs)


def reduce_t_divisor(fan: Fan, coeffs: Sequence[int]) -> DivisorClass:
    """Coordinates of a T-divisor's class in the (D_y, D_t, D_u) basis.

    Solves coeffs = <m, ray_r> + a*1_{y0} + b*1_t + c*1_u exactly; the
    solution is unique and integral because the three labeled rays project to
    a lattice basis of the divisor class group.
    """
    if len(coeffs) != fan.n_rays:
        raise ValueError("T-divisor must have one coefficient per ray")
    y0, t, u = fan.basis_ray_indices
    rows = []
    for r in range(fan.n_rays):
        row = list(fan.rays[r])
        row.append(1 if r == y0 else 0)
        row.append(1 if r == t else 0)
        row.append(1 if r == u else 0)
        rows.append(row)
    sol = solve_unique_rational(rows, [int(x) for x in coeffs])
    if sol is None:
        raise ValueError("T-divisor is not expressible in this fan (bad input)")
    a, b, c = sol[fan.dim], sol[fan.dim + 1], sol[fan.dim + 2]
    if any(x.denominator != 1 for x in sol):
        raise RuntimeError("reduction produced non-integral coordinates")
    return DivisorClass(int(a), int(b), int(c))


# ---------------------------------------------------------------------------
# Structure checks.
# ---------------------------------------------------------------------------


def is_smooth(fan: Fan) -> bool:
    """Every maximal cone is unimodular (ray matrix determinant +-1)."""
    for cone in fan.max_cones:
        mat = [fan.rays[i] for i in sorted(cone)]
        if len(mat) != fan.dim or abs(integer_det(mat)) != 1:
            return False
    return True


def is_complete(fan: Fan) -> bool:
    """Facet pairing plus connectivity of the dual graph of maximal cones."""
    facet_owners: Dict[FrozenSet[int], List[int]] = {}
    for ci, cone in enumerate(fan.max_cones):
        for drop in cone:
            facet_owners.setdefault(cone - {drop}, []).append(ci)
    if any(len(owners) != 2 for owners in facet_owners.values()):
        return False
    adj: Dict[int, set] = {i: set() for i in range(len(fan.max_cones))}
    for owners in facet_owners.values():
        a, b = owners
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    stack = [0]
    while stack:
        for nb in adj[stack.pop()]:
            if nb not in seen:
                seen.add(nb)
                stack.append(nb)
    return len(seen) == len(fan.max_cones)


def verify_batyrev_data(fan: Fan) -> LemmaReport:
    """Certify the primitive-collection data of the built fan.

    Checks: exactly five primitive collections arranged in a cycle, ray
    classes of sizes (1, n-1, 1, 1, 1) matching the labels, and the two
    linear equivalences tying the five classes to the rank-3 basis.
    """
    import time

    t0 = time.time()
    n = fan.dim
    problems: List[str] = []
    colls = primitive_collections(fan)
    if len(colls) != 5:
        problems.append(f"expected 5 primitive collections, found {len(colls)}")
    cycle = _collection_cycle(colls) if len(colls) == 5 else None
    if len(colls) == 5 and cycle is None:
        problems.append("primitive collections do not form a 5-cycle")
    if cycle is not None:
        classes = _classes_from_cycle(colls, cycle)
        sizes = sorted(len(c) for c in classes)
        if sizes != sorted([1, n - 1, 1, 1, 1]):
            problems.append(f"class sizes {sizes} != (1, n-1, 1, 1, 1)")
        label_classes = {
            lab: frozenset(fan.rays_with_label(lab)) for lab in LABELS
        }
        if set(map(frozenset, classes)) != set(label_classes.values()):
            problems.append("derived classes do not match the ray labels")
        if len(label_classes["y"]) != n - 1:
            problems.append(f"|y class| = {len(label_classes['y'])} != n-1")
        # Collections must be unions of cyclically consecutive label classes.
        order = [label_classes[lab] for lab in LABELS]
        expected = {
            frozenset(order[k] | order[(k + 1) % 5]) for k in range(5)
        }
        if set(map(frozenset, colls)) != expected:
            problems.append("collections are not consecutive label-class unions")

    def indicator(idx):
        return tuple(1 if i == idx else 0 for i in range(fan.n_rays))

    y0, t, u = fan.basis_ray_indices
    z, v = fan.ray_index("z"), fan.ray_index("v")
    d_y, d_t, d_u = indicator(y0), indicator(t), indicator(u)
    if not linearly_equivalent(
        fan, indicator(z), tuple(x + y for x, y in zip(d_t, d_y))
    ):
        problems.append("D_z is not linearly equivalent to D_t + D_y")
    if not linearly_equivalent(
        fan, indicator(v), tuple(x + y for x, y in zip(d_u, d_y))
    ):
        problems.append("D_v is not linearly equivalent to D_u + D_y")

    return LemmaReport(
        lemma_id="batyrev",
        n=n,
        window=f"{fan.n_rays} rays / {len(fan.max_cones)} cones",
        counterexamples=problems,
        elapsed=time.time() - t0,
    )
