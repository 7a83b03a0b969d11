"""Exhaustive re-verification of the counting lemmas for concrete n.

Every verifier restates one finite claim about strongly exceptional
collections on the two-point blowup of P^n and searches a dominating window
for counterexamples.  The windows come from the box lemma ("gl"): a bundle
that can share a collection with the zero class has -1 <= b <= a and
-1+a-b <= c <= a, so enumerating that box with margin 1 covers every
candidate; each docstring notes the specific normalization.

A statement like "such a bundle is forbidden" is always read through the
collection semantics: a bundle is *unusable* next to the zero class when its
difference with zero is forbidden in either direction.  (The one-directional
reading is provably too strong: (1, 2, 0) itself has vanishing higher
cohomology for every n although its negation does not.)
"""

from __future__ import annotations

import enum
import itertools
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .divisors import DivisorClass, check_dimension
from .forbidden import (
    compatible_with_zero,
    forbidden_many,
    is_compatible,
    is_forbidden,
)
from .graphs import Window, build_graph, is_clique, max_clique
from .report import LemmaReport

ZERO = DivisorClass(0, 0, 0)

#: The six classes with a = 0 that can accompany the zero class.
ZERO_SLICE_COMPATIBLE: Tuple[DivisorClass, ...] = (
    DivisorClass(0, -1, 0),
    DivisorClass(0, 0, -1),
    DivisorClass(0, 1, 0),
    DivisorClass(0, 0, 1),
    DivisorClass(0, -1, 1),
    DivisorClass(0, 1, -1),
)


class HighType(enum.Enum):
    """Usability classification of a bundle with large first coordinate."""

    TYPE1 = "type1"  # b = 1
    TYPE2 = "type2"  # c = 1
    FORBIDDEN = "forbidden"
    NOT_HIGH = "not_high"


def classify_high(n: int, d: DivisorClass) -> HighType:
    """Classify a bundle relative to the a > n threshold.

    Bundles with b = 1 and c = 1 simultaneously report TYPE1 (the overlap is
    excluded explicitly wherever the distinction matters).
    """
    check_dimension(n)
    if d.a <= n:
        return HighType.NOT_HIGH
    if d.b == 1 and not is_forbidden(n, d):
        return HighType.TYPE1
    if d.c == 1 and not is_forbidden(n, d):
        return HighType.TYPE2
    return HighType.FORBIDDEN


@dataclass(frozen=True)
class CollectionAnalysis:
    """Counting profile of a candidate collection, normalized at zero."""

    n: int
    k: int  # distinct first coordinates among type-1 high members
    high_count: int
    low_count: int
    very_low_count: int

    @property
    def k_within_remark_bound(self) -> bool:
        return self.k <= self.n + 1


def analyze_collection(n: int, members: Iterable[DivisorClass]) -> CollectionAnalysis:
    members = list(members)
    high = [d for d in members if d.a > n]
    type1 = [d for d in high if classify_high(n, d) is HighType.TYPE1]
    k = len({d.a for d in type1})
    low = [d for d in members if d.a <= n]
    very_low = [d for d in members if d.a < k]
    return CollectionAnalysis(
        n=n,
        k=k,
        high_count=len(high),
        low_count=len(low),
        very_low_count=len(very_low),
    )


# ---------------------------------------------------------------------------
# Batch helpers.
# ---------------------------------------------------------------------------


def _compat_zero_mask(n: int, coords: np.ndarray) -> np.ndarray:
    """Vectorized compatible-with-zero over an (N, 3) coordinate array."""
    if len(coords) == 0:
        return np.zeros(0, dtype=bool)
    return ~forbidden_many(n, coords) & ~forbidden_many(n, -coords)


def _gl_box_members(n: int, a: int, margin: int = 0) -> List[DivisorClass]:
    """Lattice points of the admissible (b, c) box at first coordinate a."""
    out = []
    for b in range(-1 - margin, a + 1 + margin):
        for c in range(-1 + a - b - margin, a + 1 + margin):
            out.append(DivisorClass(a, b, c))
    return out


# ---------------------------------------------------------------------------
# Individual lemma verifiers.
# ---------------------------------------------------------------------------


def verify_lemma_l1(n: int, margin: int) -> LemmaReport:
    """The a = 0 classes usable next to zero are exactly the six listed.

    Scans all (0, b, c) with |b|, |c| <= margin (zero itself excluded: it is
    the same bundle, not a companion).  Any usable class must in fact have
    |b|, |c| <= 1, so the margin only widens the certified ring.
    """
    check_dimension(n)
    if margin < n + 2:
        raise ValueError(f"margin must be >= n + 2 = {n + 2}, got {margin}")
    t0 = time.time()
    expected = set(ZERO_SLICE_COMPATIBLE)
    bad: List[dict] = []
    for b in range(-margin, margin + 1):
        for c in range(-margin, margin + 1):
            d = DivisorClass(0, b, c)
            if d == ZERO:
                continue
            compat = compatible_with_zero(n, d)
            if compat and d not in expected:
                bad.append({"divisor": d.to_json(), "problem": "unexpected_compatible"})
            if not compat and d in expected:
                bad.append({"divisor": d.to_json(), "problem": "expected_compatible"})
    return LemmaReport("l1", n, f"a=0, |b|,|c|<={margin}", bad, time.time() - t0)


def verify_corollary_trzy(n: int, margin: int) -> LemmaReport:
    """At most 3 mutually usable classes share one first coordinate.

    Fixed-a sets translate into the a = 0 slice, so the maximum clique of
    the a = 0 window graph (which must come out exactly 3) bounds every
    slice.
    """
    check_dimension(n)
    t0 = time.time()
    graph = build_graph(n, Window((0, 0), (-margin, margin), (-margin, margin)))
    size, witness = max_clique(graph)
    bad: List[dict] = []
    if size != 3:
        bad.append(
            {
                "problem": f"zero-slice clique number {size} != 3",
                "witness": [v.to_json() for v in witness],
            }
        )
    return LemmaReport("trzy", n, f"a=0, |b|,|c|<={margin}", bad, time.time() - t0)


def verify_lemma_gl(n: int, a_max: int, margin: int) -> LemmaReport:
    """Usable classes with a >= 1 lie in the admissible box.

    Checks -1 <= b <= a, -1+a-b <= c <= a and the symmetric -1+a-c <= b <= a
    for every class in 1 <= a <= a_max, |b|, |c| <= margin that is usable
    next to zero (neither difference direction forbidden).
    """
    check_dimension(n)
    if a_max < 1:
        raise ValueError(f"a_max must be >= 1, got {a_max}")
    t0 = time.time()
    span = np.arange(-margin, margin + 1, dtype=np.int64)
    bb, cc = np.meshgrid(span, span, indexing="ij")
    bad: List[dict] = []
    for a in range(1, a_max + 1):
        coords = np.stack(
            [np.full_like(bb, a).ravel(), bb.ravel(), cc.ravel()], axis=1
        )
        usable = _compat_zero_mask(n, coords)
        for row in coords[usable]:
            _, b, c = (int(x) for x in row)
            in_box = (
                -1 <= b <= a
                and -1 + a - b <= c <= a
                and -1 + a - c <= b <= a
            )
            if not in_box:
                bad.append(
                    {"divisor": [a, b, c], "problem": "usable_outside_box"}
                )
    return LemmaReport(
        "gl", n, f"1<=a<={a_max}, |b|,|c|<={margin}", bad, time.time() - t0
    )


#: The two explicit slice-triples from the three-consecutive-a argument.
CASE1_CLIQUE = (
    DivisorClass(0, 0, 0),
    DivisorClass(0, -1, 0),
    DivisorClass(0, 0, -1),
    DivisorClass(1, 0, 0),
)
CASE2_CLIQUE = (
    DivisorClass(0, 0, 0),
    DivisorClass(0, 1, 0),
    DivisorClass(0, 0, 1),
    DivisorClass(1, 1, 1),
    DivisorClass(1, 1, 0),
    DivisorClass(1, 0, 1),
    DivisorClass(2, 1, 1),
)


def lemma_8_window() -> Window:
    """a in {0,1,2} with (b, c) covering the admissible boxes plus margin 1."""
    return Window((0, 2), (-2, 3), (-2, 3))


def verify_lemma_8(n: int) -> LemmaReport:
    """At most 8 bundles across three consecutive first coordinates.

    Normalized as in the statement: the clique must contain the zero class,
    and the a-window is {0, 1, 2}.  Every member of such a clique lies in
    the admissible box, so the fixed window is dominating.  The two
    explicit witness cliques from the slice case analysis are also
    confirmed.
    """
    check_dimension(n)
    if n < 4:
        raise ValueError(f"the three-slice bound is verified for n >= 4, got {n}")
    t0 = time.time()
    graph = build_graph(n, lemma_8_window())
    size, witness = max_clique(graph, require=ZERO)
    bad: List[dict] = []
    if size > 8:
        bad.append(
            {
                "problem": f"clique of size {size} > 8 containing zero",
                "witness": [v.to_json() for v in witness],
            }
        )
    for name, members in (("case1", CASE1_CLIQUE), ("case2", CASE2_CLIQUE)):
        if not is_clique(graph, members):
            bad.append({"problem": f"{name} witness set is not a clique"})
    return LemmaReport(
        "8", n, f"a in 0..2, b,c in -2..3, zero in clique", bad, time.time() - t0
    )


def verify_lemma_jeden(n: int, a_max: int) -> LemmaReport:
    """High bundles are unusable unless b = 1 or c = 1.

    Scans n < a <= a_max with (b, c) in the admissible box plus margin 1;
    a counterexample is a usable-high class with b != 1 and c != 1.
    """
    check_dimension(n)
    if a_max <= n:
        raise ValueError(f"a_max must exceed n = {n}, got {a_max}")
    t0 = time.time()
    bad: List[dict] = []
    for a in range(n + 1, a_max + 1):
        coords = np.array(
            [d.as_tuple() for d in _gl_box_members(n, a, margin=1)], dtype=np.int64
        )
        usable = _compat_zero_mask(n, coords)
        for row in coords[usable]:
            _, b, c = (int(x) for x in row)
            if b != 1 and c != 1:
                bad.append(
                    {"divisor": [a, b, c], "problem": "usable_high_without_unit"}
                )
    return LemmaReport(
        "jeden", n, f"{n}<a<={a_max}, box+1", bad, time.time() - t0
    )


def _type1_candidates(n: int, a_max: int, need_zero: bool) -> List[DivisorClass]:
    out = []
    for a in range(n + 1, a_max + 1):
        for c in range(a - 2, a + 1):
            d = DivisorClass(a, 1, c)
            if classify_high(n, d) is not HighType.TYPE1:
                continue
            if need_zero and not compatible_with_zero(n, d):
                continue
            out.append(d)
    return out


def _type2_candidates(n: int, a_max: int) -> List[DivisorClass]:
    out = []
    for a in range(n + 1, a_max + 1):
        for b in range(a - 2, a + 1):
            d = DivisorClass(a, b, 1)
            if classify_high(n, d) is HighType.TYPE2:
                out.append(d)
    return out


def verify_lemma_jedwE(n: int, a_max: int) -> LemmaReport:
    """High bundles of both types cannot coexist (n > 3).

    Pairs one type-1 against one type-2 candidate over the admissible boxes,
    skipping classes with b = c = 1 (those carry both types at once); a
    counterexample is a pair with neither difference direction forbidden.
    """
    check_dimension(n)
    if n <= 3:
        raise ValueError(f"the two-type exclusion requires n > 3, got {n}")
    t0 = time.time()
    type1 = [d for d in _type1_candidates(n, a_max, need_zero=False) if d.c != 1]
    type2 = [d for d in _type2_candidates(n, a_max) if d.b != 1]
    bad: List[dict] = []
    for d1 in type1:
        for d2 in type2:
            if is_compatible(n, d1, d2).compatible:
                bad.append(
                    {
                        "type1": d1.to_json(),
                        "type2": d2.to_json(),
                        "problem": "mixed_types_compatible",
                    }
                )
    return LemmaReport(
        "jedwE",
        n,
        f"{n}<a<={a_max}, both type boxes ({len(type1)}x{len(type2)} pairs)",
        bad,
        time.time() - t0,
    )


def _maximal_cliques(adj: List[int], nv: int) -> Iterable[List[int]]:
    """All maximal cliques (Bron-Kerbosch with pivoting) on bitset adjacency."""

    def bk(r: int, p: int, x: int):
        if p == 0 and x == 0:
            yield [i for i in range(nv) if r >> i & 1]
            return
        pux = p | x
        pivot = (pux & -pux).bit_length() - 1
        best_cover = -1
        probe = pux
        while probe:
            u = (probe & -probe).bit_length() - 1
            probe &= probe - 1
            cover = bin(p & adj[u]).count("1")
            if cover > best_cover:
                best_cover = cover
                pivot = u
        cands = p & ~adj[pivot]
        while cands:
            v = (cands & -cands).bit_length() - 1
            cands &= cands - 1
            yield from bk(r | (1 << v), p & adj[v], x & adj[v])
            p &= ~(1 << v)
            x |= 1 << v

    yield from bk(0, (1 << nv) - 1, 0)


def verify_lemma_bound(n: int, a_max: int) -> LemmaReport:
    """Cliques of type-1 highs have at most (distinct a-values) + 2 members.

    Vertices are type-1 high candidates usable next to zero with
    n < a <= a_max and c in the admissible box.  Checks every maximal
    clique against the k + 2 bound, and every compatible pair against
    monotonicity of a - c in a.
    """
    check_dimension(n)
    if n <= 3:
        raise ValueError(f"the type-1 counting bound requires n > 3, got {n}")
    t0 = time.time()
    vertices = _type1_candidates(n, a_max, need_zero=True)
    bad: List[dict] = []
    if vertices:
        adj_bool = np.zeros((len(vertices), len(vertices)), dtype=bool)
        for i, d1 in enumerate(vertices):
            for j in range(i + 1, len(vertices)):
                d2 = vertices[j]
                if is_compatible(n, d1, d2).compatible:
                    adj_bool[i, j] = adj_bool[j, i] = True
                    lo, hi = (d1, d2) if d1.a <= d2.a else (d2, d1)
                    if hi.a > lo.a and hi.a - hi.c < lo.a - lo.c:
                        bad.append(
                            {
                                "pair": [lo.to_json(), hi.to_json()],
                                "problem": "a_minus_c_decreased",
                            }
                        )
        adj = [
            sum(1 << int(j) for j in np.flatnonzero(adj_bool[i]))
            for i in range(len(vertices))
        ]
        for clique in _maximal_cliques(adj, len(vertices)):
            members = [vertices[i] for i in clique]
            distinct_a = len({d.a for d in members})
            if len(members) > distinct_a + 2:
                bad.append(
                    {
                        "clique": [d.to_json() for d in members],
                        "problem": f"{len(members)} members > {distinct_a} + 2",
                    }
                )
    return LemmaReport(
        "bound",
        n,
        f"{n}<a<={a_max}, {len(vertices)} type-1 candidates",
        bad,
        time.time() - t0,
    )


def verify_lemma_pom(n: int, k: int, a_max: Optional[int] = None) -> LemmaReport:
    """Very low members must have b = 0 once a high anchor exists.

    With k distinct type-1 first coordinates there is an anchor
    L = (a_L, 1, c_L), a_L >= n + k.  For every anchor in the window and
    every class B with 0 <= a_B < k in the admissible box (margin 1), a
    counterexample is a B with b != 0 usable next to both zero and L.
    """
    check_dimension(n)
    if n <= 3:
        raise ValueError(f"the very-low constraint requires n > 3, got {n}")
    if not 1 <= k <= n + 1:
        raise ValueError(f"k must be in 1..{n + 1}, got {k}")
    if a_max is None:
        a_max = 3 * n
    if a_max < n + k:
        raise ValueError(f"a_max must be >= n + k = {n + k}, got {a_max}")
    t0 = time.time()
    anchors = [
        DivisorClass(a, 1, c)
        for a in range(n + k, a_max + 1)
        for c in range(a - 2, a + 1)
    ]
    lows = [
        d
        for a_b in range(0, k)
        for d in _gl_box_members(n, a_b, margin=1)
        if d.b != 0
    ]
    bad: List[dict] = []
    for b_class in lows:
        if not compatible_with_zero(n, b_class):
            continue
        for anchor in anchors:
            if is_compatible(n, anchor, b_class).compatible:
                bad.append(
                    {
                        "anchor": anchor.to_json(),
                        "very_low": b_class.to_json(),
                        "problem": "nonzero_b_survives",
                    }
                )
    return LemmaReport(
        "pom",
        n,
        f"k={k}, anchors a in {n + k}..{a_max}, very low a < {k}",
        bad,
        time.time() - t0,
    )


def verify_remark_k(n: int, a_max: int) -> LemmaReport:
    """Usable type-1 pairs never differ by more than n in a.

    Counterexample: two type-1 highs, each usable next to zero, mutually
    compatible, with first coordinates more than n apart.
    """
    check_dimension(n)
    if n <= 3:
        raise ValueError(f"the spread bound requires n > 3, got {n}")
    t0 = time.time()
    vertices = _type1_candidates(n, a_max, need_zero=True)
    bad: List[dict] = []
    for d1, d2 in itertools.combinations(vertices, 2):
        if abs(d1.a - d2.a) <= n:
            continue
        if is_compatible(n, d1, d2).compatible:
            bad.append(
                {
                    "pair": [d1.to_json(), d2.to_json()],
                    "problem": "a_spread_exceeds_n",
                }
            )
    return LemmaReport(
        "uwa", n, f"{n}<a<={a_max}, {len(vertices)} type-1 candidates", bad,
        time.time() - t0,
    )


# ---------------------------------------------------------------------------
# Length bound arithmetic.
# ---------------------------------------------------------------------------


def theorem_bound(n: int, k: int) -> Fraction:
    """Exact value of (k+1) + (8/3)(n-k-1) + 6 + (k+2) = (8n - 2k + 19)/3."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= k <= n + 1:
        raise ValueError(f"k must be in 0..{n + 1}, got {k}")
    return (
        Fraction(k + 1)
        + Fraction(8, 3) * (n - k - 1)
        + Fraction(6)
        + Fraction(k + 2)
    )


def low_bundle_cap(n: int) -> Fraction:
    """Cap (8/3)(n-1) + 6 on members with a <= n (three-slice bound)."""
    return Fraction(8, 3) * (n - 1) + 6


def theorem_chain_holds(n: int, k: int) -> bool:
    """Whether the length bound beats the Grothendieck rank 3n - 1."""
    return theorem_bound(n, k) < 3 * n - 1


def observation_forces_high(n: int) -> bool:
    """Whether the low-member cap alone falls short of rank 3n - 1."""
    return low_bundle_cap(n) < 3 * n - 1


def verify_theorem(n: int) -> LemmaReport:
    """Exact check of the length-bound chain over every k in 1..n+1.

    The chain holds for all those k exactly when n > 20; calling this for
    smaller n raises (the CLI surfaces that as a skip).
    """
    check_dimension(n)
    if n <= 20:
        raise ValueError(f"the aggregated bound requires n > 20, got {n}")
    t0 = time.time()
    bad = [
        {"k": k, "bound": str(theorem_bound(n, k)), "rank": 3 * n - 1}
        for k in range(1, n + 2)
        if not theorem_chain_holds(n, k)
    ]
    return LemmaReport("tw", n, f"k in 1..{n + 1}", bad, time.time() - t0)


def bound_table(n: int) -> List[dict]:
    """Per-k report of the exact bound against the rank, for inspection."""
    rank = 3 * n - 1
    rows = []
    for k in range(0, n + 2):
        value = theorem_bound(n, k)
        rows.append(
            {
                "k": k,
                "bound": str(value),
                "bound_float": float(value),
                "rank": rank,
                "beats_rank": bool(value < rank),
            }
        )
    return rows


# ---------------------------------------------------------------------------
# Orchestration.
# ---------------------------------------------------------------------------

LEMMA_IDS = ("l1", "trzy", "gl", "8", "jeden", "jedwE", "bound", "pom", "uwa", "tw")


def run_verifier(
    lemma_id: str, n: int, a_max: Optional[int] = None
) -> Tuple[Optional[LemmaReport], Optional[str]]:
    """Run one verifier with windows derived from n.

    Returns (report, None) or (None, skip_reason) when n is outside the
    statement's range.
    """
    check_dimension(n)
    if a_max is None:
        a_max = 3 * n
    try:
        if lemma_id == "l1":
            return verify_lemma_l1(n, margin=n + 4), None
        if lemma_id == "trzy":
            return verify_corollary_trzy(n, margin=n + 4), None
        if lemma_id == "gl":
            return verify_lemma_gl(n, a_max=a_max, margin=a_max + 3), None
        if lemma_id == "8":
            return verify_lemma_8(n), None
        if lemma_id == "jeden":
            return verify_lemma_jeden(n, a_max=a_max), None
        if lemma_id == "jedwE":
            return verify_lemma_jedwE(n, a_max=a_max), None
        if lemma_id == "bound":
            return verify_lemma_bound(n, a_max=a_max), None
        if lemma_id == "pom":
            merged = LemmaReport("pom", n, f"k in 1..{n + 1}, a_max={a_max}")
            t0 = time.time()
            for k in range(1, n + 2):
                sub = verify_lemma_pom(n, k, a_max=max(a_max, n + k))
                merged.counterexamples.extend(sub.counterexamples)
            merged.elapsed = time.time() - t0
            return merged, None
        if lemma_id == "uwa":
            return verify_remark_k(n, a_max=a_max), None
        if lemma_id == "tw":
            return verify_theorem(n), None
    except ValueError as exc:
        return None, str(exc)
    raise KeyError(f"unknown lemma id {lemma_id!r}; known: {', '.join(LEMMA_IDS)}")


def verify_all(n: int, a_max: Optional[int] = None) -> Dict[str, Tuple[Optional[LemmaReport], Optional[str]]]:
    """Every verifier at once; out-of-range statements report a skip reason."""
    return {lemma_id: run_verifier(lemma_id, n, a_max) for lemma_id in LEMMA_IDS}
