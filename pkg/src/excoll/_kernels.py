"""Hot integer kernels with a numba fast path and a pure-numpy fallback.

Three inner loops dominate every large sweep in this package:

* classifying whole windows of divisor classes as forbidden / not forbidden,
* the exhaustive five-tuple box scan used as an independent oracle for the
  classifier, and
* the character-box scan that enumerates sign chambers for the cohomology
  oracle.

Each kernel exists twice: a ``@njit`` version and a vectorized numpy version
with identical semantics.  The active backend is chosen once at import time
from the ``EXCOLL_BACKEND`` environment variable (``numba``, ``numpy`` or
``auto``; default ``auto`` = numba when importable).  ``python -m
excoll.bench`` times the two implementations against each other.

All integer inputs are validated to stay far below 2**40 so that the int64
arithmetic in both backends (including the +/-INF sentinels) cannot wrap.
"""

from __future__ import annotations

import itertools
import os

import numpy as np

_BACKEND_ENV = "EXCOLL_BACKEND"

# Sentinel "infinity" for interval bounds; small enough that sums of three
# bounds stay inside int64.
_INF = np.int64(1) << np.int64(45)
_COORD_LIMIT = 1 << 30

# The eleven admissible sign patterns: cyclic blocks of length 2, 3 or 5 over
# positions 1..5, encoded as bitmasks (bit i-1 <-> position i negative).
_BLOCKS = []
for _length in (2, 3):
    for _start in range(5):
        _BLOCKS.append(frozenset(((_start + k) % 5) + 1 for k in range(_length)))
_BLOCKS.append(frozenset({1, 2, 3, 4, 5}))

PATTERN_SETS = tuple(_BLOCKS)

PATTERN_MASKS = np.array(
    [sum(1 << (i - 1) for i in block) for block in PATTERN_SETS], dtype=np.int64
)

# Lookup table over all 32 sign masks: 1 iff the mask is one of the eleven.
VALID_MASK_TABLE = np.zeros(32, dtype=np.uint8)
for _m in PATTERN_MASKS:
    VALID_MASK_TABLE[int(_m)] = 1


def _check_coords(*values: int) -> None:
    for v in values:
        if abs(int(v)) > _COORD_LIMIT:
            raise OverflowError(
                f"coordinate {v} exceeds the supported magnitude {_COORD_LIMIT}"
            )


# ---------------------------------------------------------------------------
# Pattern feasibility / forbidden classification.
#
# For a sign pattern P and target class (a, b, c), a witness five-tuple is
# parametrized by s = alpha_1 and t = alpha_3; then alpha_2 = a - s - t,
# alpha_4 = b - t, alpha_5 = c - s.  Every sign constraint is an interval
# bound on s, on t, or on s + t (the alpha_2 <= -n+1 strengthening applies
# when position 2 is in the pattern).  The region {s in [s0,s1], t in
# [t0,t1], s+t in [u0,u1]} contains an integer point iff
#   s0 <= s1,  t0 <= t1,  u0 <= u1,  s0 + t0 <= u1,  u0 <= s1 + t1.
# ---------------------------------------------------------------------------


def _pattern_bounds_py(n, mask, a, b, c):
    inf = int(_INF)
    s_lo, s_hi = -inf, inf
    t_lo, t_hi = -inf, inf
    if mask & 1:  # alpha_1 < 0
        s_hi = min(s_hi, -1)
    else:
        s_lo = max(s_lo, 0)
    if mask & 16:  # alpha_5 < 0
        s_lo = max(s_lo, c + 1)
    else:
        s_hi = min(s_hi, c)
    if mask & 4:  # alpha_3 < 0
        t_hi = min(t_hi, -1)
    else:
        t_lo = max(t_lo, 0)
    if mask & 8:  # alpha_4 < 0
        t_lo = max(t_lo, b + 1)
    else:
        t_hi = min(t_hi, b)
    if mask & 2:  # alpha_2 < 0, strengthened to alpha_2 <= -n+1
        u_lo, u_hi = a + n - 1, inf
    else:
        u_lo, u_hi = -inf, a
    return s_lo, s_hi, t_lo, t_hi, u_lo, u_hi


def pattern_feasible_scalar(n: int, mask: int, a: int, b: int, c: int) -> bool:
    """Exact integer feasibility of one sign pattern for one divisor class."""
    _check_coords(a, b, c)
    s_lo, s_hi, t_lo, t_hi, u_lo, u_hi = _pattern_bounds_py(n, mask, a, b, c)
    return (
        s_lo <= s_hi
        and t_lo <= t_hi
        and u_lo <= u_hi
        and s_lo + t_lo <= u_hi
        and u_lo <= s_hi + t_hi
    )


def is_forbidden_scalar(n: int, a: int, b: int, c: int) -> bool:
    for mask in PATTERN_MASKS:
        if pattern_feasible_scalar(n, int(mask), a, b, c):
            return True
    return False


def _forbidden_mask_numpy(n: int, abc: np.ndarray) -> np.ndarray:
    """Vectorized forbidden test over an (N, 3) array of divisor classes."""
    abc = np.asarray(abc, dtype=np.int64)
    a = abc[:, 0]
    b = abc[:, 1]
    c = abc[:, 2]
    out = np.zeros(len(abc), dtype=bool)
    for mask in (int(m) for m in PATTERN_MASKS):
        inf = np.int64(_INF)
        s_lo = np.full_like(a, -inf)
        s_hi = np.full_like(a, inf)
        t_lo = np.full_like(a, -inf)
        t_hi = np.full_like(a, inf)
        if mask & 1:
            s_hi = np.minimum(s_hi, -1)
        else:
            s_lo = np.maximum(s_lo, 0)
        if mask & 16:
            s_lo = np.maximum(s_lo, c + 1)
        else:
            s_hi = np.minimum(s_hi, c)
        if mask & 4:
            t_hi = np.minimum(t_hi, -1)
        else:
            t_lo = np.maximum(t_lo, 0)
        if mask & 8:
            t_lo = np.maximum(t_lo, b + 1)
        else:
            t_hi = np.minimum(t_hi, b)
        if mask & 2:
            u_lo = a + np.int64(n - 1)
            u_hi = np.full_like(a, inf)
        else:
            u_lo = np.full_like(a, -inf)
            u_hi = a
        feas = (
            (s_lo <= s_hi)
            & (t_lo <= t_hi)
            & (u_lo <= u_hi)
            & (s_lo + t_lo <= u_hi)
            & (u_lo <= s_hi + t_hi)
        )
        out |= feas
    return out


# ---------------------------------------------------------------------------
# Exhaustive five-tuple box oracle.
#
# A five-tuple in [-radius, radius]^5 presents (a, b, c) iff
# alpha_1 + alpha_2 + alpha_3 = a, alpha_3 + alpha_4 = b, alpha_1 + alpha_5 = c,
# so alpha_3, alpha_4, alpha_5 are forced once (alpha_1, alpha_2) are chosen;
# the scan visits exactly the box elements that satisfy the three equations
# and checks the sign condition on each.
# ---------------------------------------------------------------------------


def _alpha_box_forbidden_numpy(n: int, a: int, b: int, c: int, radius: int) -> bool:
    rng = np.arange(-radius, radius + 1, dtype=np.int64)
    a1 = rng[:, None]
    a2 = rng[None, :]
    a3 = a - a1 - a2
    a4 = b - a3
    a5 = np.broadcast_to(np.int64(c) - a1, a3.shape)
    in_box = (
        (np.abs(a3) <= radius) & (np.abs(a4) <= radius) & (np.abs(a5) <= radius)
    )
    a1b = np.broadcast_to(a1, a3.shape)
    a2b = np.broadcast_to(a2, a3.shape)
    mask = (
        (a1b < 0).astype(np.int64)
        | ((a2b < 0).astype(np.int64) << 1)
        | ((a3 < 0).astype(np.int64) << 2)
        | ((a4 < 0).astype(np.int64) << 3)
        | ((a5 < 0).astype(np.int64) << 4)
    )
    ok = VALID_MASK_TABLE[mask].astype(bool)
    ok &= in_box
    # alpha_2 < 0 must additionally satisfy alpha_2 <= -n + 1.
    ok &= (a2b >= 0) | (a2b <= -n + 1)
    return bool(ok.any())


# ---------------------------------------------------------------------------
# Character-box chamber scan.
#
# For a fan with ray matrix R (nrays x dim) and a divisor with ray
# coefficients coeff, the sign chamber of a character m is the bitmask of
# rays with <m, R[r]> < -coeff[r].  The kernel walks the box
# [-radius, radius]^dim and returns every distinct bitmask together with the
# first witness character that realizes it.  The walk keeps running partial
# dot products over the leading dim-1 coordinates and, along the innermost
# coordinate, jumps between the breakpoints where some ray's sign flips, so
# the cost per scanline is O(nrays^2) rather than O(nrays * boxwidth).
# ---------------------------------------------------------------------------


def _check_chamber_args(rays: np.ndarray, coeff: np.ndarray, radius: int) -> None:
    nrays, dim = rays.shape
    if dim < 2:
        raise ValueError("chamber scan expects lattice dimension >= 2")
    if nrays > 20:
        raise ValueError(f"chamber scan supports at most 20 rays, got {nrays}")
    if len(coeff) != nrays:
        raise ValueError("one coefficient per ray is required")
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    _check_coords(radius, *(int(x) for x in coeff))


def _chamber_scan_numpy(rays: np.ndarray, coeff: np.ndarray, radius: int):
    rays = np.asarray(rays, dtype=np.int64)
    coeff = np.asarray(coeff, dtype=np.int64)
    _check_chamber_args(rays, coeff, radius)
    nrays, dim = rays.shape
    width = 2 * radius + 1
    rng = np.arange(-radius, radius + 1, dtype=np.int64)

    # Only the trailing <= 4 coordinates are materialized as a grid; any
    # remaining leading coordinates are looped, which caps peak memory at a
    # (width^4, nrays) slab for every lattice dimension.  The dot products
    # run through float64 matmul, which is exact here because
    # |<m, ray>| <= radius * dim stays far below 2**53.
    tail_dim = min(dim, 4)
    lead_dim = dim - tail_dim
    tail_shape = (width,) * tail_dim
    grids = np.meshgrid(*([rng] * tail_dim), indexing="ij")
    tail = np.stack([g.ravel() for g in grids], axis=1).astype(np.float64)
    tail_dots = tail @ rays[:, lead_dim:].T.astype(np.float64)
    shifts = np.arange(nrays, dtype=np.int64)
    neg_coeff = -coeff.astype(np.float64)
    lead_rays = rays[:, :lead_dim].astype(np.float64)

    seen = {}
    seen_table = np.zeros(1 << nrays, dtype=bool)
    for lead in itertools.product(rng.tolist(), repeat=lead_dim):
        offset = (
            np.asarray(lead, dtype=np.float64) @ lead_rays.T
            if lead_dim
            else np.zeros(nrays)
        )
        codes = (((tail_dots + offset) < neg_coeff).astype(np.int64) << shifts).sum(
            axis=1
        )
        before = seen_table.copy()
        seen_table[codes] = True
        for code in np.flatnonzero(seen_table != before).tolist():
            idx = int(np.flatnonzero(codes == code)[0])
            tail_idx = np.unravel_index(idx, tail_shape)
            witness = tuple(int(x) for x in lead) + tuple(
                int(rng[i]) for i in tail_idx
            )
            seen[code] = witness
    return seen


try:  # pragma: no cover - exercised via the dispatch tests
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    njit = None
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @njit(cache=True)
    def _forbidden_mask_numba_impl(n, abc, pattern_masks, inf):
        out = np.zeros(abc.shape[0], dtype=np.bool_)
        for i in range(abc.shape[0]):
            a = abc[i, 0]
            b = abc[i, 1]
            c = abc[i, 2]
            for j in range(pattern_masks.shape[0]):
                mask = pattern_masks[j]
                s_lo = -inf
                s_hi = inf
                t_lo = -inf
                t_hi = inf
                if mask & 1:
                    if -1 < s_hi:
                        s_hi = -1
                else:
                    if 0 > s_lo:
                        s_lo = 0
                if mask & 16:
                    if c + 1 > s_lo:
                        s_lo = c + 1
                else:
                    if c < s_hi:
                        s_hi = c
                if mask & 4:
                    if -1 < t_hi:
                        t_hi = -1
                else:
                    if 0 > t_lo:
                        t_lo = 0
                if mask & 8:
                    if b + 1 > t_lo:
                        t_lo = b + 1
                else:
                    if b < t_hi:
                        t_hi = b
                if mask & 2:
                    u_lo = a + n - 1
                    u_hi = inf
                else:
                    u_lo = -inf
                    u_hi = a
                if (
                    s_lo <= s_hi
                    and t_lo <= t_hi
                    and u_lo <= u_hi
                    and s_lo + t_lo <= u_hi
                    and u_lo <= s_hi + t_hi
                ):
                    out[i] = True
                    break
        return out

    @njit(cache=True)
    def _alpha_box_forbidden_numba_impl(n, a, b, c, radius, valid_table):
        for a1 in range(-radius, radius + 1):
            a5 = c - a1
            if a5 < -radius or a5 > radius:
                continue
            for a2 in range(-radius, radius + 1):
                if a2 < 0 and a2 > -n + 1:
                    continue
                a3 = a - a1 - a2
                if a3 < -radius or a3 > radius:
                    continue
                a4 = b - a3
                if a4 < -radius or a4 > radius:
                    continue
                mask = 0
                if a1 < 0:
                    mask |= 1
                if a2 < 0:
                    mask |= 2
                if a3 < 0:
                    mask |= 4
                if a4 < 0:
                    mask |= 8
                if a5 < 0:
                    mask |= 16
                if valid_table[mask]:
                    return True
        return False

    @njit(cache=True)
    def _chamber_scan_numba_impl(rays, coeff, radius):
        nrays, dim = rays.shape
        width = 2 * radius + 1
        ncodes = 1 << nrays
        seen = np.zeros(ncodes, dtype=np.bool_)
        witnesses = np.zeros((ncodes, dim), dtype=np.int64)

        m = np.full(dim, -radius, dtype=np.int64)
        # dots[r] = <m[:dim-1] part, R[r]> over the leading coordinates only.
        lead_dots = np.zeros(nrays, dtype=np.int64)
        for r in range(nrays):
            acc = 0
            for k in range(dim - 1):
                acc += m[k] * rays[r, k]
            lead_dots[r] = acc

        breakpoints = np.empty(nrays + 1, dtype=np.int64)
        scan_total = width ** (dim - 1) if dim > 1 else 1

        for _line in range(scan_total):
            # Innermost coordinate: the code is piecewise constant in v with
            # at most one breakpoint per ray; visit one v per segment.
            nbp = 0
            base_code = 0
            for r in range(nrays):
                g = rays[r, dim - 1]
                rhs = -coeff[r] - lead_dots[r]
                if g == 0:
                    if 0 < rhs:
                        base_code |= 1 << r
                elif g > 0:
                    # v*g < rhs  <=>  v < ceil(rhs/g); flips at that v.
                    bp = -((-rhs) // g)  # ceil division
                    if -radius < bp <= radius:
                        breakpoints[nbp] = bp
                        nbp += 1
                else:
                    # v*g < rhs  <=>  v > rhs/g; flips just above floor.
                    bp = rhs // g + 1
                    if -radius < bp <= radius:
                        breakpoints[nbp] = bp
                        nbp += 1
            breakpoints[nbp] = radius + 1
            nbp += 1
            # In-place insertion sort; nbp <= nrays + 1 stays tiny.
            for i in range(1, nbp):
                key = breakpoints[i]
                j = i - 1
                while j >= 0 and breakpoints[j] > key:
                    breakpoints[j + 1] = breakpoints[j]
                    j -= 1
                breakpoints[j + 1] = key
            v = np.int64(-radius)
            for bi in range(nbp):
                nxt = breakpoints[bi]
                if nxt <= v:
                    continue
                code = base_code
                for r in range(nrays):
                    g = rays[r, dim - 1]
                    if g != 0 and v * g + lead_dots[r] < -coeff[r]:
                        code |= 1 << r
                if not seen[code]:
                    seen[code] = True
                    for k in range(dim - 1):
                        witnesses[code, k] = m[k]
                    witnesses[code, dim - 1] = v
                v = nxt

            # Advance the odometer over the leading dim-1 coordinates.
            k = dim - 2
            while k >= 0:
                if m[k] < radius:
                    m[k] += 1
                    for r in range(nrays):
                        lead_dots[r] += rays[r, k]
                    break
                m[k] = -radius
                for r in range(nrays):
                    lead_dots[r] -= (width - 1) * rays[r, k]
                k -= 1

        return seen, witnesses

else:  # pragma: no cover
    _forbidden_mask_numba_impl = None
    _alpha_box_forbidden_numba_impl = None
    _chamber_scan_numba_impl = None


def _forbidden_mask_numba(n: int, abc: np.ndarray) -> np.ndarray:
    abc = np.ascontiguousarray(abc, dtype=np.int64)
    return _forbidden_mask_numba_impl(
        np.int64(n), abc, PATTERN_MASKS, np.int64(_INF)
    )


def _alpha_box_forbidden_numba(n: int, a: int, b: int, c: int, radius: int) -> bool:
    return bool(
        _alpha_box_forbidden_numba_impl(
            np.int64(n),
            np.int64(a),
            np.int64(b),
            np.int64(c),
            np.int64(radius),
            VALID_MASK_TABLE,
        )
    )


def _chamber_scan_numba(rays: np.ndarray, coeff: np.ndarray, radius: int):
    rays = np.ascontiguousarray(rays, dtype=np.int64)
    coeff = np.ascontiguousarray(coeff, dtype=np.int64)
    _check_chamber_args(rays, coeff, radius)
    seen, witnesses = _chamber_scan_numba_impl(rays, coeff, np.int64(radius))
    out = {}
    for code in np.nonzero(seen)[0]:
        out[int(code)] = tuple(int(x) for x in witnesses[code])
    return out


def _select_backend() -> str:
    requested = os.environ.get(_BACKEND_ENV, "auto").strip().lower()
    if requested not in ("auto", "numba", "numpy"):
        raise ValueError(
            f"{_BACKEND_ENV} must be 'auto', 'numba' or 'numpy', got {requested!r}"
        )
    if requested == "numba" and not HAVE_NUMBA:
        raise RuntimeError(f"{_BACKEND_ENV}=numba but numba is not importable")
    if requested == "auto":
        return "numba" if HAVE_NUMBA else "numpy"
    return requested


BACKEND = _select_backend()

if BACKEND == "numba":
    forbidden_mask = _forbidden_mask_numba
    alpha_box_forbidden = _alpha_box_forbidden_numba
    chamber_scan = _chamber_scan_numba
else:
    forbidden_mask = _forbidden_mask_numpy
    alpha_box_forbidden = _alpha_box_forbidden_numpy
    chamber_scan = _chamber_scan_numpy

BACKENDS = {
    "numpy": (
        _forbidden_mask_numpy,
        _alpha_box_forbidden_numpy,
        _chamber_scan_numpy,
    ),
}
if HAVE_NUMBA:
    BACKENDS["numba"] = (
        _forbidden_mask_numba,
        _alpha_box_forbidden_numba,
        _chamber_scan_numba,
    )
