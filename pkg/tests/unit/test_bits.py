"""Unit tests for core.bits module."""

import pytest
from hypothesis import given
from hypothesis.strategies import integers

from ordertopo.core.bits import (
    check_size,
    complement,
    format_mask,
    full_mask,
    is_subset,
    iter_subsets,
    lowest,
    mask_of,
    members,
    popcount,
)
from ordertopo.errors import CapacityExceeded, OrderTopoError


class TestMasks:
    """Tests for the basic mask helpers."""

    def test_full_mask(self) -> None:
        assert full_mask(0) == 0
        assert full_mask(3) == 0b111

    def test_mask_of_and_members(self) -> None:
        mask = mask_of([3, 0, 1])

        assert mask == 0b1011
        assert members(mask) == [0, 1, 3]

    def test_complement(self) -> None:
        assert complement(0b001, 3) == 0b110

    def test_lowest(self) -> None:
        assert lowest(0b1100) == 2

    def test_format_mask(self) -> None:
        assert format_mask(0b101) == "{0,2}"
        assert format_mask(0) == "{}"


class TestIterSubsets:
    """Tests for iter_subsets."""

    def test_ascending_with_endpoints(self) -> None:
        assert list(iter_subsets(0b101)) == [0b000, 0b001, 0b100, 0b101]

    @given(integers(min_value=0, max_value=(1 << 10) - 1))
    def test_counts_and_containment(self, mask: int) -> None:
        subs = list(iter_subsets(mask))

        assert len(subs) == 1 << popcount(mask)
        assert all(is_subset(s, mask) for s in subs)
        assert subs == sorted(set(subs))


class TestCheckSize:
    """Tests for ground-set size validation."""

    def test_accepts_cap(self) -> None:
        check_size(16)

    def test_rejects_above_cap(self) -> None:
        with pytest.raises(CapacityExceeded, match="ground-set size"):
            check_size(17)

    def test_rejects_negative(self) -> None:
        with pytest.raises(OrderTopoError):
            check_size(-1)
