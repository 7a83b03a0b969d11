"""Classification of forbidden divisor classes by sign patterns.

A divisor class on the two-point blowup of P^n is *forbidden* when it has
nonvanishing higher cohomology.  For this family that happens exactly when
the class admits a five-tuple presentation (see :mod:`excoll.divisors`) whose
negative entries form one cyclic block of length 2, 3 or 5, with the extra
requirement alpha_2 <= -n + 1 whenever alpha_2 is negative.  Two line bundles
are *compatible* (can coexist in a strongly exceptional collection) iff their
difference is not forbidden in either direction.

``is_forbidden`` decides the classification in O(1) per pattern by interval
feasibility; ``brute_force_is_forbidden`` re-decides it by an exhaustive scan
of presentations inside a box and exists purely as an independent oracle for
the interval logic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, Iterable, List, Sequence, Tuple, Union

import numpy as np

from . import _kernels
from .divisors import DivisorClass, check_dimension


@dataclass(frozen=True)
class SignPattern:
    """A cyclic block of negative positions over indices {1..5}."""

    negative_set: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, "negative_set", frozenset(self.negative_set))
        if self.negative_set not in _kernels.PATTERN_SETS:
            raise ValueError(
                f"{set(self.negative_set)} is not a cyclic block of length 2, 3 or 5"
            )

    @property
    def mask(self) -> int:
        return sum(1 << (i - 1) for i in self.negative_set)

    @property
    def length(self) -> int:
        return len(self.negative_set)

    def __iter__(self):
        return iter(sorted(self.negative_set))


#: The eleven admissible sign patterns (5 blocks of length 2, 5 of length 3,
#: and the all-negative block), in a fixed deterministic order.
ALL_PATTERNS: Tuple[SignPattern, ...] = tuple(
    SignPattern(s) for s in _kernels.PATTERN_SETS
)


@dataclass(frozen=True)
class CompatibilityVerdict:
    """Forbiddenness of both difference directions for a pair of bundles."""

    forbidden_forward: bool
    forbidden_backward: bool

    @property
    def compatible(self) -> bool:
        return not (self.forbidden_forward or self.forbidden_backward)


PatternLike = Union[SignPattern, FrozenSet[int], set, Sequence[int]]


def _pattern_mask(pattern: PatternLike) -> int:
    if isinstance(pattern, SignPattern):
        return pattern.mask
    return SignPattern(frozenset(pattern)).mask


def pattern_feasible(n: int, pattern: PatternLike, d: DivisorClass) -> bool:
    """Decide whether some five-tuple presents ``d`` with this sign pattern.

    Positions inside the pattern must be <= -1 (position 2 must even be
    <= -n + 1); positions outside must be >= 0.  Decided exactly, without
    search, via interval bounds on the two free presentation parameters.
    """
    check_dimension(n)
    return _kernels.pattern_feasible_scalar(n, _pattern_mask(pattern), d.a, d.b, d.c)


def is_forbidden(n: int, d: DivisorClass) -> bool:
    """True iff ``d`` has nonvanishing higher cohomology on the n-dim family."""
    check_dimension(n)
    _kernels._check_coords(d.a, d.b, d.c)
    return _kernels.is_forbidden_scalar(n, d.a, d.b, d.c)


def forbidden_many(n: int, classes: Union[np.ndarray, Iterable]) -> np.ndarray:
    """Vectorized :func:`is_forbidden` over an (N, 3) array of coordinates."""
    check_dimension(n)
    arr = np.asarray(
        [d.as_tuple() if isinstance(d, DivisorClass) else tuple(d) for d in classes]
        if not isinstance(classes, np.ndarray)
        else classes,
        dtype=np.int64,
    )
    if arr.ndim != 2 or arr.shape[1] != 3:
        raise ValueError(f"expected an (N, 3) array, got shape {arr.shape}")
    if arr.size and int(np.abs(arr).max()) > _kernels._COORD_LIMIT:
        raise OverflowError("coordinates exceed the supported magnitude")
    return _kernels.forbidden_mask(n, arr)


def is_compatible(n: int, x: DivisorClass, y: DivisorClass) -> CompatibilityVerdict:
    """Check both difference directions of a pair of line bundles."""
    return CompatibilityVerdict(
        forbidden_forward=is_forbidden(n, x - y),
        forbidden_backward=is_forbidden(n, y - x),
    )


def compatible_with_zero(n: int, d: DivisorClass) -> bool:
    """True iff neither ``d`` nor ``-d`` is forbidden."""
    return not is_forbidden(n, d) and not is_forbidden(n, -d)


def completeness_radius(n: int, d: DivisorClass) -> int:
    """Smallest box radius at which the exhaustive oracle is complete.

    Any feasible sign pattern admits a witness five-tuple whose entries all
    have magnitude at most max(|a|,|b|,|c|) + n + 1: the free parameters can
    be pushed to the extreme points of their interval bounds, and every
    finite bound is at most that large.  The +2 below is slack.
    """
    return max(abs(d.a), abs(d.b), abs(d.c)) + n + 2


def brute_force_is_forbidden(n: int, d: DivisorClass, radius: int) -> bool:
    """Exhaustive-oracle version of :func:`is_forbidden`.

    Scans every five-tuple in [-radius, radius]^5 that presents ``d`` (the
    last three entries are forced by the first two through the coordinate
    sums) and tests the sign condition directly on the tuple.  The stated
    radius precondition makes the scan provably equivalent to the interval
    classification.
    """
    check_dimension(n)
    needed = completeness_radius(n, d)
    if radius < needed:
        raise ValueError(
            f"radius {radius} is below the completeness bound {needed} for {d}"
        )
    _kernels._check_coords(d.a, d.b, d.c, radius)
    return _kernels.alpha_box_forbidden(n, d.a, d.b, d.c, radius)


def feasible_patterns(n: int, d: DivisorClass) -> List[SignPattern]:
    """All sign patterns that witness forbiddenness of ``d`` (may be empty)."""
    check_dimension(n)
    return [p for p in ALL_PATTERNS if pattern_feasible(n, p, d)]
