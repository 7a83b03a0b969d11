import itertools

import pytest

from excoll import AlphaRep, DivisorClass, alpha_to_basis, check_dimension, negative_block, sub


def test_alpha_to_basis_zero():
    assert alpha_to_basis(AlphaRep((0, 0, 0, 0, 0))) == DivisorClass(0, 0, 0)


def test_alpha_to_basis_spot_values():
    # (a, b, c) = (a1+a2+a3, a3+a4, a1+a5)
    assert alpha_to_basis(AlphaRep((0, 1, -1, -1, 0))) == DivisorClass(0, -2, 0)
    assert alpha_to_basis(AlphaRep((0, 1, -1, -1, -1))) == DivisorClass(0, -2, -1)
    assert alpha_to_basis(AlphaRep((1, 0, 0, 0, 1))) == DivisorClass(1, 0, 2)


def test_alpha_to_basis_negation_cancels():
    for alpha in itertools.product((-2, -1, 0, 1, 3), repeat=5):
        rep = AlphaRep(alpha)
        total = alpha_to_basis(rep) + alpha_to_basis(rep.negate())
        assert total == DivisorClass(0, 0, 0)


def test_alpha_to_basis_surjective_witness():
    for a, b, c in itertools.product(range(-4, 5), repeat=3):
        assert alpha_to_basis(AlphaRep((0, a, 0, b, c))) == DivisorClass(a, b, c)


def test_cyclic_indexing():
    rep = AlphaRep((10, 20, 30, 40, 50))
    assert rep.at(1) == 10
    assert rep.at(5) == 50
    assert rep.at(6) == 10
    assert rep.at(0) == 50
    assert rep.at(12) == 20


def test_sub_examples():
    assert sub(DivisorClass(1, 1, 1), DivisorClass(0, 0, 0)) == DivisorClass(1, 1, 1)
    assert sub(DivisorClass(2, 1, 1), DivisorClass(1, 1, 0)) == DivisorClass(1, 0, 1)
    assert sub(DivisorClass(0, 0, 0), DivisorClass(0, 1, -1)) == DivisorClass(0, -1, 1)


def test_group_structure():
    x = DivisorClass(3, -2, 5)
    y = DivisorClass(-1, 7, 0)
    assert x + y == DivisorClass(2, 5, 5)
    assert x - x == DivisorClass(0, 0, 0)
    assert -x == DivisorClass(-3, 2, -5)
    assert (x + y) - y == x


def test_negative_block_examples():
    assert negative_block(AlphaRep((1, 0, 2, 0, 3))) is None
    assert negative_block(AlphaRep((0, 1, -1, -1, 0))) == (3, 2)
    assert negative_block(AlphaRep((1, -1, 0, -1, 1))) is None


def test_negative_block_wraparound_and_full():
    assert negative_block(AlphaRep((-1, 0, 0, 0, -1))) == (5, 2)
    assert negative_block(AlphaRep((-1, -1, 0, 0, -1))) == (5, 3)
    assert negative_block(AlphaRep((-1, -1, -1, -1, -1))) == (1, 5)
    assert negative_block(AlphaRep((0, 0, 0, -1, 0))) == (4, 1)


def test_negative_block_never_contains_nonnegative():
    # Exhaustive over a small alphabet: the reported block covers exactly the
    # negative positions, or no block is reported.
    for alpha in itertools.product((-2, -1, 0, 1), repeat=5):
        rep = AlphaRep(alpha)
        result = negative_block(rep)
        negatives = {i + 1 for i, x in enumerate(alpha) if x < 0}
        if result is None:
            if negatives:
                # must be non-contiguous: some rotation check
                covered = [
                    {((start - 1 + k) % 5) + 1 for k in range(len(negatives))}
                    for start in range(1, 6)
                ]
                assert negatives not in covered
        else:
            start, length = result
            assert 1 <= length <= 5
            block = {((start - 1 + k) % 5) + 1 for k in range(length)}
            assert block == negatives


def test_negative_block_full_is_canonical():
    assert negative_block(AlphaRep((-3, -1, -2, -1, -5))) == (1, 5)


def test_json_round_trip():
    d = DivisorClass(4, -1, 2)
    assert DivisorClass.from_json(d.to_json()) == d
    rep = AlphaRep((1, -2, 3, -4, 5))
    assert AlphaRep.from_json(rep.to_json()) == rep
    with pytest.raises(ValueError):
        DivisorClass.from_json([1, 2])


def test_check_dimension():
    assert check_dimension(2) == 2
    with pytest.raises(ValueError):
        check_dimension(1)
    with pytest.raises(TypeError):
        check_dimension(2.5)
