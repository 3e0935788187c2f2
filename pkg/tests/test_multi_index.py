import math
import random

import pytest

from morava_emss.multi_index import (
    MultiIndex, all_indices, leading_ones, trailing_ones, unit_index, zero_index,
)


def mi(text):
    return MultiIndex.from_string(text)


def test_shift():
    assert mi("101").shift() == mi("010")


def test_shift_n_times_is_zero():
    for I in all_indices(4):
        assert I.shift(4) == zero_index(4)


def test_shift_of_leading_ones():
    for n in (2, 3, 4):
        for k in range(1, n + 1):
            assert leading_ones(n, k).shift() == leading_ones(n, k - 1)


def test_cyclic():
    assert mi("101").cyclic() == mi("011")


def test_cyclic_full_rotation():
    for I in all_indices(3):
        assert I.cyclic(3) == I


def test_cyclic_of_unit_index():
    for n in (2, 3, 5):
        assert unit_index(n, 0).cyclic() == unit_index(n, n - 1)


def test_trailing():
    assert mi("110").trailing(0) == 1
    assert mi("110").trailing(1) == 0
    assert mi("1111").trailing(1) == math.inf
    assert mi("1111").trailing_count(1) == 4


def test_leading():
    assert mi("110").leading(1) == 2
    assert mi("00").leading(0) == 2
    assert mi("011").leading(1) == 0


def test_shift_is_zero_last_after_cyclic():
    for I in all_indices(4):
        rotated = I.cyclic()
        zeroed = MultiIndex(rotated.bits[:-1] + (0,))
        assert I.shift() == zeroed


def test_counts_consistent_under_rotation():
    rng = random.Random(9)
    for _ in range(50):
        n = rng.randrange(2, 7)
        bits = tuple(rng.randrange(2) for _ in range(n))
        I = MultiIndex(bits)
        k = rng.randrange(n)
        rotated = I.cyclic(k)
        expected = 0
        for b in rotated.bits:
            if b != 1:
                break
            expected += 1
        assert rotated.leading(1) == expected


def test_bounds_for_mixed_indices():
    for I in all_indices(4):
        for eps in (0, 1):
            if any(b != eps for b in I.bits):
                assert I.trailing(eps) < 4
                assert I.leading(eps) < 4


def test_addition_disjoint():
    assert mi("100") + mi("001") == mi("101")
    with pytest.raises(ValueError, match="overlap"):
        mi("100") + mi("110")


def test_unshift_inverts_shift_on_trailing_zeros():
    I = mi("0110")
    assert I.unshift().shift() == I.unshift(1).shift(1)
    assert mi("011").unshift() == mi("001")


def test_string_round_trip():
    for I in all_indices(3):
        assert MultiIndex.from_string(str(I)) == I


def test_invalid_entries():
    with pytest.raises(ValueError):
        MultiIndex((0, 2))
    with pytest.raises(ValueError):
        MultiIndex.from_string("10x")
