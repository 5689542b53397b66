"""Subsets of {0..n-1} as integer bitmasks.

A ``SubsetMask`` is a plain ``int`` whose bit ``i`` marks membership of point
``i``. Keeping masks unboxed keeps the predicate code branch-light; the
helpers below validate the ``n`` they are used against.
"""

from collections.abc import Iterable, Iterator

from ordertopo.config import MAX_POINTS
from ordertopo.errors import CapacityExceeded, OrderTopoError

SubsetMask = int


def check_size(n: int) -> None:
    """Reject ground sets outside 0 < n <= MAX_POINTS (n = 0 allowed for counting)."""
    if n < 0:
        raise OrderTopoError(f"ground-set size must be non-negative, got {n}")
    if n > MAX_POINTS:
        raise CapacityExceeded("ground-set size", MAX_POINTS, n)


def full_mask(n: int) -> SubsetMask:
    return (1 << n) - 1


def fits(mask: SubsetMask, n: int) -> bool:
    """Whether only the low ``n`` bits of ``mask`` may be set."""
    return 0 <= mask < (1 << n)


def check_fits(mask: SubsetMask, n: int) -> None:
    if not fits(mask, n):
        raise OrderTopoError(f"mask {mask:#x} does not fit a ground set of size {n}")


def mask_of(points: Iterable[int]) -> SubsetMask:
    mask = 0
    for p in points:
        mask |= 1 << p
    return mask


def iter_bits(mask: SubsetMask) -> Iterator[int]:
    """Yield the members of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def members(mask: SubsetMask) -> list[int]:
    return list(iter_bits(mask))


def popcount(mask: SubsetMask) -> int:
    return mask.bit_count()


def complement(mask: SubsetMask, n: int) -> SubsetMask:
    return full_mask(n) & ~mask


def is_subset(a: SubsetMask, b: SubsetMask) -> bool:
    return a & ~b == 0


def contains(mask: SubsetMask, point: int) -> bool:
    return (mask >> point) & 1 == 1


def iter_subsets(mask: SubsetMask) -> Iterator[SubsetMask]:
    """Yield every subset of ``mask`` (including 0 and ``mask``) in ascending order."""
    sub = 0
    while True:
        yield sub
        if sub == mask:
            return
        sub = (sub - mask) & mask


def lowest(mask: SubsetMask) -> int:
    """Index of the lowest member. ``mask`` must be nonzero."""
    return (mask & -mask).bit_length() - 1


def format_mask(mask: SubsetMask) -> str:
    """Human-readable set notation, e.g. ``{0,2}``."""
    return "{" + ",".join(str(p) for p in iter_bits(mask)) + "}"
