"""Independent cohomology-vanishing oracle via support-complex homology.

Sheaf cohomology of a line bundle on a complete simplicial toric variety
splits over characters m of the torus.  For a T-divisor with ray
coefficients ``coeff`` the degree-m piece of H^i is the reduced homology in
degree i-1 of the *support complex*: the subcomplex of the fan's face
structure induced on the rays with <m, ray> < -coeff.  A divisor class is
therefore forbidden iff some character produces a support complex with
nonzero reduced homology in degree >= 0.

Only finitely many distinct support complexes (chambers) arise; they are
collected by scanning characters in a box whose radius grows with the
divisor coefficients.  Chamber homology is computed exactly over the
rationals and memoized per vertex set, so sweeping a whole window of
divisors costs one box scan per divisor plus a handful of small exact rank
computations overall.

This module never consults the sign-pattern classifier; agreement between
the two is established by tests, not by construction.
"""

from __future__ import annotations

import functools
import time
import warnings
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import numpy as np

from . import _kernels
from ._exact import integer_matrix_rank
from .divisors import DivisorClass
from .fan import Fan, divisor_class_to_ray_coeffs

#: Inputs beyond this size are allowed but warn: the box scan and the exact
#: homology stay correct, just potentially slow.
DEFAULT_SCOPE_DIM = 5
DEFAULT_SCOPE_COEFF = 6


@dataclass(frozen=True)
class SupportComplex:
    """Faces of the fan whose rays all lie in a fixed vertex set."""

    dim: int
    vertices: FrozenSet[int]
    faces: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class DegreeChamber:
    """A realizable negative set together with one witnessing character."""

    negative_set: FrozenSet[int]
    witness: Tuple[int, ...]


@functools.lru_cache(maxsize=None)
def fan_faces(fan: Fan) -> Tuple[Tuple[int, ...], ...]:
    """All nonempty faces of the fan, as sorted ray-index tuples."""
    faces = set()
    for cone in fan.max_cones:
        members = sorted(cone)
        for mask in range(1, 1 << len(members)):
            faces.add(tuple(members[i] for i in range(len(members)) if mask >> i & 1))
    return tuple(sorted(faces, key=lambda f: (len(f), f)))


def support_complex(fan: Fan, vertices: Iterable[int]) -> SupportComplex:
    vset = frozenset(int(v) for v in vertices)
    faces = tuple(f for f in fan_faces(fan) if vset.issuperset(f))
    return SupportComplex(dim=fan.dim, vertices=vset, faces=faces)


def complex_from_faces(dim: int, faces: Iterable[Sequence[int]]) -> SupportComplex:
    """Downward closure of an explicit face list (for direct homology use)."""
    closed = set()
    for face in faces:
        members = tuple(sorted(set(int(v) for v in face)))
        for mask in range(1, 1 << len(members)):
            closed.add(
                tuple(members[i] for i in range(len(members)) if mask >> i & 1)
            )
    vertices = frozenset(v for f in closed for v in f)
    return SupportComplex(
        dim=dim,
        vertices=vertices,
        faces=tuple(sorted(closed, key=lambda f: (len(f), f))),
    )


def reduced_homology_ranks(complex_: SupportComplex) -> List[int]:
    """Exact reduced homology ranks in degrees -1 .. dim-1.

    Entry j of the result is the rank in degree j-1.  Computed over the
    rationals from integer boundary matrices by fraction-free elimination;
    the empty complex reports rank 1 in degree -1 and zero elsewhere.
    """
    dim = complex_.dim
    by_deg: Dict[int, List[Tuple[int, ...]]] = {}
    for face in complex_.faces:
        by_deg.setdefault(len(face) - 1, []).append(face)
    for deg in by_deg:
        by_deg[deg].sort()

    # boundary_rank[k] = rank of d_k : C_k -> C_{k-1}; C_{-1} is the
    # augmentation span of the empty face.
    max_deg = max(by_deg) if by_deg else -1
    boundary_rank: Dict[int, int] = {}
    for k in range(0, max_deg + 1):
        faces_k = by_deg.get(k, [])
        faces_km1 = by_deg.get(k - 1, []) if k >= 1 else [()]
        if not faces_k or not faces_km1:
            boundary_rank[k] = 0
            continue
        index = {f: i for i, f in enumerate(faces_km1)}
        rows = [[0] * len(faces_k) for _ in faces_km1]
        for j, face in enumerate(faces_k):
            for drop in range(len(face)):
                sub = face[:drop] + face[drop + 1 :]
                rows[index[sub]][j] = -1 if drop % 2 else 1
        boundary_rank[k] = integer_matrix_rank(rows)

    ranks = []
    for deg in range(-1, dim):
        n_cells = 1 if deg == -1 else len(by_deg.get(deg, []))
        rank_in = boundary_rank.get(deg, 0)  # d_deg out of C_deg
        rank_out = boundary_rank.get(deg + 1, 0)  # d_{deg+1} into C_deg
        ranks.append(n_cells - rank_in - rank_out)
    return ranks


@functools.lru_cache(maxsize=None)
def _chamber_ranks(fan: Fan, vertices: FrozenSet[int]) -> Tuple[int, ...]:
    return tuple(reduced_homology_ranks(support_complex(fan, vertices)))


def default_radius(fan: Fan, coeffs: Sequence[int]) -> int:
    """Box radius max|coeff| + dim + 2 used for chamber enumeration."""
    peak = max((abs(int(c)) for c in coeffs), default=0)
    return peak + fan.dim + 2


def enumerate_chambers(
    fan: Fan, coeffs: Sequence[int], radius: int
) -> List[DegreeChamber]:
    """All distinct negative sets realized by characters in the radius box.

    Deterministic: chambers are sorted by size then by membership, and each
    witness is the first character realizing its chamber in scan order.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    if len(coeffs) != fan.n_rays:
        raise ValueError("one coefficient per ray is required")
    rays = np.array(fan.rays, dtype=np.int64)
    coeff = np.array([int(x) for x in coeffs], dtype=np.int64)
    found = _kernels.chamber_scan(rays, coeff, int(radius))
    chambers = []
    for code, witness in found.items():
        members = frozenset(i for i in range(fan.n_rays) if code >> i & 1)
        chambers.append(DegreeChamber(negative_set=members, witness=witness))
    chambers.sort(key=lambda ch: (len(ch.negative_set), sorted(ch.negative_set)))
    return chambers


def _scope_warning(fan: Fan, coeffs: Sequence[int]) -> None:
    peak = max((abs(int(c)) for c in coeffs), default=0)
    if fan.dim > DEFAULT_SCOPE_DIM or peak > DEFAULT_SCOPE_COEFF:
        warnings.warn(
            f"cohomology oracle called outside its desk-scale scope "
            f"(dim={fan.dim}, max|coeff|={peak}); this is exact but may be slow",
            stacklevel=3,
        )


def has_higher_cohomology(fan: Fan, d: DivisorClass, radius: int | None = None) -> bool:
    """True iff H^i(X, O(d)) != 0 for some i >= 1, decided chamber by chamber."""
    coeffs = divisor_class_to_ray_coeffs(fan, d)
    _scope_warning(fan, coeffs)
    if radius is None:
        radius = default_radius(fan, coeffs)
    for chamber in enumerate_chambers(fan, coeffs, radius):
        ranks = _chamber_ranks(fan, chamber.negative_set)
        # ranks[j] is reduced degree j-1 = cohomological degree j; j >= 1 only.
        if any(ranks[j] for j in range(1, len(ranks))):
            return True
    return False


def higher_cohomology_report(
    fan: Fan, d: DivisorClass, radius: int | None = None
) -> dict:
    """JSON-ready oracle report with one witness per contributing chamber."""
    t0 = time.time()
    coeffs = divisor_class_to_ray_coeffs(fan, d)
    _scope_warning(fan, coeffs)
    if radius is None:
        radius = default_radius(fan, coeffs)
    chambers = enumerate_chambers(fan, coeffs, radius)
    witnesses = []
    for chamber in chambers:
        ranks = _chamber_ranks(fan, chamber.negative_set)
        degrees = [j for j in range(1, len(ranks)) if ranks[j]]
        if degrees:
            witnesses.append(
                {
                    "m": list(chamber.witness),
                    "negative_set": sorted(chamber.negative_set),
                    "nonzero_degree": degrees[0],
                }
            )
    return {
        "divisor": d.to_json(),
        "radius": radius,
        "chambers_checked": len(chambers),
        "has_higher_cohomology": bool(witnesses),
        "witnesses": witnesses,
        "elapsed": round(time.time() - t0, 6),
    }
