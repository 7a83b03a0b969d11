"""Integer arithmetic on divisor classes of the two-point blowup of P^n.

The Picard group of P^n blown up at two torus-fixed points has rank 3.  We
work in the basis (D_y, D_t, D_u), so a divisor class is an integer triple
(a, b, c).  Torus-invariant divisors come in five linear-equivalence classes
(v, y, z, t, u); a class can also be presented by its five multiplicities
(alpha_1, ..., alpha_5) over (D_v, D_y, D_z, D_t, D_u), with the relations
D_z = D_t + D_y and D_v = D_u + D_y collapsing that presentation onto the
rank-3 basis.  Indices of the five-tuple are cyclic modulo 5.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Tuple


def check_dimension(n: int) -> int:
    """Validate the ambient projective-space dimension (must be >= 2)."""
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"dimension must be an integer, got {n!r}")
    if n < 2:
        raise ValueError(f"dimension must be >= 2, got {n}")
    return n


@dataclass(frozen=True)
class DivisorClass:
    """A Picard-group element a*D_y + b*D_t + c*D_u with integer coordinates."""

    a: int
    b: int
    c: int

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        return DivisorClass(self.a - other.a, self.b - other.b, self.c - other.c)

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(-self.a, -self.b, -self.c)

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def to_json(self) -> list:
        """Serialize as the documented JSON array [a, b, c]."""
        return [self.a, self.b, self.c]

    @staticmethod
    def from_json(data: Iterable[int]) -> "DivisorClass":
        vals = [int(x) for x in data]
        if len(vals) != 3:
            raise ValueError(f"divisor class JSON must have 3 entries, got {vals!r}")
        return DivisorClass(*vals)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"


ZERO = DivisorClass(0, 0, 0)


@dataclass(frozen=True)
class AlphaRep:
    """Multiplicities (alpha_1, ..., alpha_5) over (D_v, D_y, D_z, D_t, D_u).

    Positions are 1-based and cyclic: the successor of index 5 is index 1.
    """

    alpha: Tuple[int, int, int, int, int]

    def __post_init__(self):
        if len(self.alpha) != 5:
            raise ValueError(f"alpha must have exactly 5 entries, got {self.alpha!r}")
        object.__setattr__(self, "alpha", tuple(int(x) for x in self.alpha))

    def at(self, index: int) -> int:
        """Entry at a 1-based cyclic index (index 6 wraps to 1, 0 to 5)."""
        return self.alpha[(index - 1) % 5]

    def negate(self) -> "AlphaRep":
        return AlphaRep(tuple(-x for x in self.alpha))

    def to_json(self) -> list:
        return list(self.alpha)

    @staticmethod
    def from_json(data: Iterable[int]) -> "AlphaRep":
        vals = tuple(int(x) for x in data)
        return AlphaRep(vals)


def alpha_to_basis(rep: AlphaRep) -> DivisorClass:
    """Collapse a five-tuple presentation onto the (D_y, D_t, D_u) basis.

    Substituting D_z = D_t + D_y and D_v = D_u + D_y gives coordinates
    (alpha_1 + alpha_2 + alpha_3, alpha_3 + alpha_4, alpha_1 + alpha_5).
    """
    a1, a2, a3, a4, a5 = rep.alpha
    return DivisorClass(a1 + a2 + a3, a3 + a4, a1 + a5)


def sub(x: DivisorClass, y: DivisorClass) -> DivisorClass:
    """Componentwise difference (the group operation used for compatibility)."""
    return x - y


def negative_block(rep: AlphaRep) -> Optional[Tuple[int, int]]:
    """Locate the negative entries of a five-tuple as one cyclic block.

    Returns (start, length) with a 1-based start index when the set
    {i : alpha_i < 0} is nonempty and cyclically contiguous; the all-negative
    block is reported as (1, 5).  Returns None when there are no negative
    entries or when they do not form a single contiguous block.
    """
    neg = [x < 0 for x in rep.alpha]
    count = sum(neg)
    if count == 0:
        return None
    if count == 5:
        return (1, 5)
    # Walk each candidate start; a valid block begins where the predecessor
    # is nonnegative and covers exactly `count` consecutive positions.
    for start in range(5):
        if neg[start] and not neg[(start - 1) % 5]:
            if all(neg[(start + k) % 5] for k in range(count)):
                return (start + 1, count)
            return None
    return None
