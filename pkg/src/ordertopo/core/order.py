"""Finite posets stored as per-element up-set masks."""

from collections.abc import Callable, Iterable, Iterator, Sequence
from dataclasses import dataclass, field

import numpy as np

from ordertopo.core.bits import (
    SubsetMask,
    check_fits,
    check_size,
    contains,
    full_mask,
    is_subset,
    iter_bits,
    lowest,
)
from ordertopo.core.topology import check_product_size, rectangle
from ordertopo.errors import (
    AxiomViolation,
    ChoiceOutOfBounds,
    EmptySet,
    NotAntisymmetric,
)

ChoiceFunction = Callable[[int, int], int]


@dataclass(frozen=True)
class FinitePoset:
    """A partial order on {0..n-1}; ``up[x]`` is the mask of ↑x."""

    n: int
    up: tuple[SubsetMask, ...]
    down: tuple[SubsetMask, ...] = field(compare=False, repr=False, default=())

    def __post_init__(self) -> None:
        if len(self.down) != self.n:
            down = [0] * self.n
            for x, ups in enumerate(self.up):
                for y in iter_bits(ups):
                    down[y] |= 1 << x
            object.__setattr__(self, "down", tuple(down))

    def le(self, x: int, y: int) -> bool:
        return contains(self.up[x], y)

    def matrix(self) -> np.ndarray:
        """Boolean matrix of the order relation, ``m[x, y]`` iff x <= y."""
        m = np.zeros((self.n, self.n), dtype=bool)
        for x, ups in enumerate(self.up):
            for y in iter_bits(ups):
                m[x, y] = True
        return m


def _transitive_closure(n: int, up: list[SubsetMask]) -> list[SubsetMask]:
    # Warshall on bit rows
    for k in range(n):
        bit = 1 << k
        for x in range(n):
            if up[x] & bit:
                up[x] |= up[k]
    return up


def _check_antisymmetric(up: Sequence[SubsetMask]) -> None:
    for x, ups in enumerate(up):
        for y in iter_bits(ups):
            if y != x and contains(up[y], x):
                raise NotAntisymmetric((min(x, y), max(x, y)))


def poset_from_relation(n: int, pairs: Iterable[tuple[int, int]]) -> FinitePoset:
    """Reflexive-transitive closure of ``pairs``, then an antisymmetry check.

    Raises:
        NotAntisymmetric: the closure contains a cycle x <= y <= x, x != y
    """
    check_size(n)
    up = [1 << x for x in range(n)]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise AxiomViolation("index range", (i, j), f"pair {(i, j)} out of range for n={n}")
        up[i] |= 1 << j
    up = _transitive_closure(n, up)
    _check_antisymmetric(up)
    return FinitePoset(n=n, up=tuple(up))


def poset_from_up_sets(n: int, up: Sequence[SubsetMask]) -> FinitePoset:
    """Validate up-set masks directly (reflexive, transitive, antisymmetric)."""
    check_size(n)
    for x, ups in enumerate(up):
        check_fits(ups, n)
        if not contains(ups, x):
            raise AxiomViolation("reflexivity", (x,))
        for y in iter_bits(ups):
            if not is_subset(up[y], ups):
                raise AxiomViolation("transitivity", (x, y))
    _check_antisymmetric(up)
    return FinitePoset(n=n, up=tuple(up))


def chain(n: int) -> FinitePoset:
    """0 < 1 < ... < n-1."""
    return FinitePoset(n=n, up=tuple(full_mask(n) & ~((1 << x) - 1) for x in range(n)))


def antichain(n: int) -> FinitePoset:
    return FinitePoset(n=n, up=tuple(1 << x for x in range(n)))


def opposite(poset: FinitePoset) -> FinitePoset:
    return FinitePoset(n=poset.n, up=poset.down)


def up_set(poset: FinitePoset, x: int) -> SubsetMask:
    return poset.up[x]


def down_set(poset: FinitePoset, x: int) -> SubsetMask:
    return poset.down[x]


def updown_set(poset: FinitePoset, x: int) -> SubsetMask:
    """↕x = ↑x ∪ ↓x."""
    return poset.up[x] | poset.down[x]


def up_closure(poset: FinitePoset, mask: SubsetMask) -> SubsetMask:
    """↑A, the union of the up-sets of the members of ``mask``."""
    result = 0
    for x in iter_bits(mask):
        result |= poset.up[x]
    return result


def is_chain(poset: FinitePoset, mask: SubsetMask) -> bool:
    check_fits(mask, poset.n)
    return all(is_subset(mask, updown_set(poset, x)) for x in iter_bits(mask))


def is_up_directed(poset: FinitePoset, mask: SubsetMask) -> bool:
    check_fits(mask, poset.n)
    if mask == 0:
        raise EmptySet("is_up_directed")
    items = list(iter_bits(mask))
    return all(
        poset.up[x] & poset.up[y] & mask
        for i, x in enumerate(items)
        for y in items[i + 1:]
    )


def is_down_directed(poset: FinitePoset, mask: SubsetMask) -> bool:
    check_fits(mask, poset.n)
    if mask == 0:
        raise EmptySet("is_down_directed")
    items = list(iter_bits(mask))
    return all(
        poset.down[x] & poset.down[y] & mask
        for i, x in enumerate(items)
        for y in items[i + 1:]
    )


def upper_bounds(poset: FinitePoset, mask: SubsetMask) -> SubsetMask:
    result = full_mask(poset.n)
    for x in iter_bits(mask):
        result &= poset.up[x]
    return result


def lower_bounds(poset: FinitePoset, mask: SubsetMask) -> SubsetMask:
    result = full_mask(poset.n)
    for x in iter_bits(mask):
        result &= poset.down[x]
    return result


def least(poset: FinitePoset, mask: SubsetMask) -> int | None:
    """The least member of ``mask``, if any."""
    for x in iter_bits(mask):
        if is_subset(mask, poset.up[x]):
            return x
    return None


def greatest(poset: FinitePoset, mask: SubsetMask) -> int | None:
    for x in iter_bits(mask):
        if is_subset(mask, poset.down[x]):
            return x
    return None


def sup(poset: FinitePoset, mask: SubsetMask) -> int | None:
    """Least upper bound of a nonempty set, or None."""
    check_fits(mask, poset.n)
    if mask == 0:
        raise EmptySet("sup")
    return least(poset, upper_bounds(poset, mask))


def inf(poset: FinitePoset, mask: SubsetMask) -> int | None:
    """Greatest lower bound of a nonempty set, or None."""
    check_fits(mask, poset.n)
    if mask == 0:
        raise EmptySet("inf")
    return greatest(poset, lower_bounds(poset, mask))


def directed_hull(poset: FinitePoset, mask: SubsetMask, choice: ChoiceFunction) -> SubsetMask:
    """Least fixed point of A_{k+1} = A_k ∪ f(A_k × A_k).

    ``choice`` must return a common upper bound of its two arguments.

    Raises:
        EmptySet: ``mask`` is empty
        ChoiceOutOfBounds: ``choice`` returned a non-upper-bound
    """
    check_fits(mask, poset.n)
    if mask == 0:
        raise EmptySet("directed_hull")
    current = mask
    while True:
        items = list(iter_bits(current))
        grown = current
        for x in items:
            for y in items:
                z = choice(x, y)
                if not (0 <= z < poset.n and poset.le(x, z) and poset.le(y, z)):
                    raise ChoiceOutOfBounds((x, y), z)
                grown |= 1 << z
        if grown == current:
            return current
        current = grown


def join_choice(poset: FinitePoset) -> ChoiceFunction:
    """A choice function picking the least common upper bound, else the lowest one.

    Defined on every pair that has a common upper bound at all.
    """

    def choose(x: int, y: int) -> int:
        bounds = poset.up[x] & poset.up[y]
        best = least(poset, bounds)
        return best if best is not None else lowest(bounds)

    return choose


def product_order(p1: FinitePoset, p2: FinitePoset) -> FinitePoset:
    """Pointwise order on the row-major product carrier."""
    check_product_size(p1.n, p2.n)
    up = tuple(
        rectangle(p1.up[x], p2.up[y], p2.n) for x in range(p1.n) for y in range(p2.n)
    )
    return FinitePoset(n=p1.n * p2.n, up=up)


def restrict(poset: FinitePoset, carrier: Sequence[int]) -> FinitePoset:
    """Induced order on ``carrier`` (ascending), reindexed to {0..len-1}."""
    position = {p: i for i, p in enumerate(carrier)}
    up = []
    for p in carrier:
        mask = 0
        for q in iter_bits(poset.up[p]):
            if q in position:
                mask |= 1 << position[q]
        up.append(mask)
    return FinitePoset(n=len(carrier), up=tuple(up))


def enumerate_chains(poset: FinitePoset) -> Iterator[SubsetMask]:
    """All nonempty chains in ascending mask order."""
    for mask in range(1, 1 << poset.n):
        if is_chain(poset, mask):
            yield mask

