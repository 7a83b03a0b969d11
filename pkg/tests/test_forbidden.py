import itertools

import numpy as np
import pytest

from excoll import (
    ALL_PATTERNS,
    DivisorClass,
    SignPattern,
    brute_force_is_forbidden,
    compatible_with_zero,
    completeness_radius,
    feasible_patterns,
    forbidden_many,
    is_compatible,
    is_forbidden,
    pattern_feasible,
)

D = DivisorClass


def test_exactly_eleven_patterns():
    assert len(ALL_PATTERNS) == 11
    lengths = sorted(p.length for p in ALL_PATTERNS)
    assert lengths == [2] * 5 + [3] * 5 + [5]
    assert len({p.negative_set for p in ALL_PATTERNS}) == 11


@pytest.mark.parametrize("bad", [set(), {1}, {1, 3}, {1, 2, 4}, {1, 2, 3, 4}])
def test_invalid_patterns_rejected(bad):
    with pytest.raises(ValueError):
        SignPattern(frozenset(bad))


def test_pattern_feasible_spot_values():
    # The block {3,4} leaves alpha_5 = c - alpha_1 >= 0 with alpha_1 >= 0, so
    # it fits (0,-2,0) but not (0,-2,-1); the latter needs the length-3 block.
    assert pattern_feasible(5, {3, 4}, D(0, -2, 0))
    assert not pattern_feasible(5, {3, 4}, D(0, -2, -1))
    assert pattern_feasible(5, {3, 4, 5}, D(0, -2, -1))
    assert not pattern_feasible(5, {3, 4}, D(0, 0, 0))
    assert not pattern_feasible(5, {1, 2, 3, 4, 5}, D(3, 1, 1))


def test_is_forbidden_spot_values():
    assert is_forbidden(5, D(0, -1, -1))
    assert not is_forbidden(5, D(0, 0, 0))
    assert is_forbidden(5, D(2, 0, 0))
    assert not is_forbidden(4, D(1, 0, 0))
    # (0,1,1) itself admits no witness pattern; only its negation does.  It
    # is excluded from collections through the backward direction.
    assert not is_forbidden(5, D(0, 1, 1))
    assert is_forbidden(5, D(0, -1, -1))


def test_is_compatible_spot_values():
    assert is_compatible(5, D(0, 0, 0), D(0, 1, 0)).compatible
    verdict = is_compatible(5, D(0, 0, 0), D(0, 1, 1))
    assert not verdict.compatible
    assert is_compatible(5, D(7, 3, -2), D(7, 3, -2)).compatible


def test_compatibility_symmetry():
    classes = [D(a, b, c) for a, b, c in itertools.product(range(-2, 3), repeat=3)]
    for x, y in itertools.combinations(classes[:40], 2):
        fwd = is_compatible(4, x, y)
        back = is_compatible(4, y, x)
        assert fwd.forbidden_forward == back.forbidden_backward
        assert fwd.forbidden_backward == back.forbidden_forward
        assert fwd.compatible == back.compatible


def test_compatibility_translation_invariance():
    shifts = [D(0, 0, 0), D(3, -1, 2), D(-5, 5, 5)]
    pairs = [
        (D(0, 0, 0), D(0, 1, 0)),
        (D(1, 1, 0), D(2, 1, 1)),
        (D(0, 0, 0), D(0, 1, 1)),
        (D(2, -1, 1), D(0, 0, -1)),
    ]
    for x, y in pairs:
        base = is_compatible(5, x, y)
        for t in shifts:
            assert is_compatible(5, x + t, y + t) == base


def test_patterns_without_position_2_are_n_independent():
    no_two = [p for p in ALL_PATTERNS if 2 not in p.negative_set]
    assert len(no_two) == 5
    window = [D(a, b, c) for a, b, c in itertools.product(range(-4, 5), repeat=3)]
    for p in no_two:
        for d in window:
            assert pattern_feasible(2, p, d) == pattern_feasible(9, p, d)


def test_b_c_symmetry():
    # Swapping b and c is induced by the five-tuple permutation (1 3)(4 5),
    # which maps cyclic blocks to cyclic blocks.
    for a, b, c in itertools.product(range(-4, 5), repeat=3):
        assert is_forbidden(4, D(a, b, c)) == is_forbidden(4, D(a, c, b))


def test_brute_force_examples():
    assert brute_force_is_forbidden(4, D(0, -2, 0), 8)
    assert not brute_force_is_forbidden(4, D(0, 0, 0), 8)
    assert not brute_force_is_forbidden(4, D(1, 0, 0), 9)


def test_brute_force_rejects_small_radius():
    with pytest.raises(ValueError):
        brute_force_is_forbidden(4, D(0, -2, 0), 7)
    assert completeness_radius(4, D(0, -2, 0)) == 8


def test_brute_force_matches_classifier():
    # Interval logic against the box scan at the fixed radius 6 + n + 2.
    for n in (3, 4, 5):
        radius = 6 + n + 2
        for a, b, c in itertools.product(range(-6, 7), repeat=3):
            d = D(a, b, c)
            assert is_forbidden(n, d) == brute_force_is_forbidden(n, d, radius)


def test_brute_force_matches_classifier_wide_random():
    # Same agreement on scattered larger coordinates and dimensions.
    import random

    rng = random.Random(411)
    for _ in range(300):
        n = rng.choice((2, 4, 6, 9))
        d = D(rng.randint(-12, 12), rng.randint(-12, 12), rng.randint(-12, 12))
        radius = completeness_radius(n, d)
        assert is_forbidden(n, d) == brute_force_is_forbidden(n, d, radius)
        assert is_forbidden(n, d) == brute_force_is_forbidden(n, d, radius + 3)


def test_box_lemma_property():
    # Classes usable next to zero with 1 <= a lie in the admissible box.
    for n in range(4, 11):
        margin = 2 * n + 2
        span = np.arange(-margin, margin + 1, dtype=np.int64)
        bb, cc = np.meshgrid(span, span, indexing="ij")
        for a in range(1, 2 * n + 1):
            coords = np.stack(
                [np.full_like(bb, a).ravel(), bb.ravel(), cc.ravel()], axis=1
            )
            usable = ~forbidden_many(n, coords) & ~forbidden_many(n, -coords)
            for row in coords[usable]:
                _, b, c = (int(x) for x in row)
                assert -1 <= b <= a
                assert -1 + a - b <= c <= a
                assert -1 + a - c <= b <= a


def test_one_directional_box_lemma_fails():
    # (1, 2, 0) itself is unforbidden for every n although it violates the
    # box; only its negation is forbidden.  This pins the collection reading.
    for n in (4, 7):
        assert not is_forbidden(n, D(1, 2, 0))
        assert is_forbidden(n, D(-1, -2, 0))
        assert not compatible_with_zero(n, D(1, 2, 0))


def test_feasible_patterns_listing():
    pats = feasible_patterns(5, D(0, -1, -1))
    assert frozenset({4, 5}) in {p.negative_set for p in pats}
    assert feasible_patterns(5, D(0, 0, 0)) == []


def test_forbidden_many_matches_scalar():
    coords = [(a, b, c) for a, b, c in itertools.product(range(-3, 4), repeat=3)]
    mask = forbidden_many(5, np.array(coords, dtype=np.int64))
    for (a, b, c), flag in zip(coords, mask):
        assert is_forbidden(5, D(a, b, c)) == bool(flag)


def test_forbidden_many_validates_shape():
    with pytest.raises(ValueError):
        forbidden_many(4, np.zeros((3, 2), dtype=np.int64))


def test_overflow_guard():
    with pytest.raises(OverflowError):
        is_forbidden(4, D(1 << 40, 0, 0))


def test_dimension_validation():
    with pytest.raises(ValueError):
        is_forbidden(1, D(0, 0, 0))
