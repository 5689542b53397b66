"""Topologized posets: completeness, convergence, closedness properties.

On finite carriers completeness, chain-compactness and the chain
characterisations are always true (a finite directed set contains its
sup/inf). They are still evaluated by their definitions here; the constant
answers are checked by the audits, never assumed.
"""

from dataclasses import dataclass
from typing import Literal

from ordertopo.core.bits import (
    SubsetMask,
    check_fits,
    contains,
    full_mask,
    is_subset,
    iter_bits,
)
from ordertopo.core.order import (
    FinitePoset,
    enumerate_chains,
    inf,
    is_chain,
    is_down_directed,
    is_up_directed,
    product_order,
    restrict,
    sup,
    updown_set,
)
from ordertopo.core.topology import (
    FiniteTopology,
    closure,
    indiscrete,
    is_closed,
    is_compact_subset,
    open_neighborhoods,
    product_topology,
    subspace_topology,
)
from ordertopo.errors import CapacityExceeded, EmptySet, NotDirected, OrderTopoError

POSPACE_MAX_N = 4

# Constant on finite carriers; exposed for reporting, not computed.
IS_CHAIN_FINITE = True


@dataclass(frozen=True)
class TopologizedPoset:
    poset: FinitePoset
    topology: FiniteTopology

    def __post_init__(self) -> None:
        if self.poset.n != self.topology.n:
            raise OrderTopoError(
                f"poset has {self.poset.n} points but topology has {self.topology.n}"
            )

    @property
    def n(self) -> int:
        return self.poset.n


@dataclass(frozen=True)
class ClosednessProfile:
    """Closedness flags of a topologized poset.

    ``pospace`` is None when the square exceeds the product cap; see
    ``unevaluated`` for the reason.
    """

    up_closed: bool
    down_closed: bool
    updown_closed: bool
    pospace: bool | None
    chain_closed: bool
    weakly_up_closed: bool
    unevaluated: tuple[tuple[str, str], ...] = ()

    @property
    def up_down_closed(self) -> bool:
        return self.up_closed and self.down_closed

    def to_dict(self) -> dict[str, bool | None]:
        return {
            "up_closed": self.up_closed,
            "down_closed": self.down_closed,
            "up_down_closed": self.up_down_closed,
            "updown_closed": self.updown_closed,
            "pospace": self.pospace,
            "chain_closed": self.chain_closed,
            "weakly_up_closed": self.weakly_up_closed,
        }


def _bound_in_closure(tp: TopologizedPoset, mask: SubsetMask, side: Literal["sup", "inf"]) -> bool:
    bound = sup(tp.poset, mask) if side == "sup" else inf(tp.poset, mask)
    return bound is not None and contains(closure(tp.topology, mask), bound)


def is_up_complete(tp: TopologizedPoset) -> bool:
    """Every nonempty up-directed D has sup D in the closure of D."""
    return all(
        _bound_in_closure(tp, d, "sup")
        for d in range(1, 1 << tp.n)
        if is_up_directed(tp.poset, d)
    )


def is_down_complete(tp: TopologizedPoset) -> bool:
    """Every nonempty down-directed D has inf D in the closure of D."""
    return all(
        _bound_in_closure(tp, d, "inf")
        for d in range(1, 1 << tp.n)
        if is_down_directed(tp.poset, d)
    )


def is_complete(tp: TopologizedPoset) -> bool:
    return is_up_complete(tp) and is_down_complete(tp)


def chain_up_complete(tp: TopologizedPoset) -> bool:
    return all(_bound_in_closure(tp, c, "sup") for c in enumerate_chains(tp.poset))


def chain_down_complete(tp: TopologizedPoset) -> bool:
    return all(_bound_in_closure(tp, c, "inf") for c in enumerate_chains(tp.poset))


def chain_complete_equivalent(tp: TopologizedPoset) -> bool:
    """Chain form of completeness: every nonempty chain has sup and inf in its closure."""
    return chain_up_complete(tp) and chain_down_complete(tp)


def poset_is_complete(poset: FinitePoset) -> bool:
    """Order-only completeness: directed sets have sup/inf somewhere in X."""
    for d in range(1, 1 << poset.n):
        if is_up_directed(poset, d) and sup(poset, d) is None:
            return False
        if is_down_directed(poset, d) and inf(poset, d) is None:
            return False
    return True


def anti_discrete(poset: FinitePoset) -> TopologizedPoset:
    return TopologizedPoset(poset, indiscrete(poset.n))


def _converges(
    tp: TopologizedPoset, mask: SubsetMask, x: int, cones: tuple[SubsetMask, ...]
) -> bool:
    return all(
        any(is_subset(mask & cones[d], u) for d in iter_bits(mask))
        for u in open_neighborhoods(tp.topology, x)
    )


def up_converges(tp: TopologizedPoset, mask: SubsetMask, x: int) -> bool:
    """For every open U around x some d in D has D ∩ ↑d ⊆ U.

    Raises:
        EmptySet: D is empty
        NotDirected: D is not up-directed
    """
    check_fits(mask, tp.n)
    if mask == 0:
        raise EmptySet("up_converges")
    if not is_up_directed(tp.poset, mask):
        raise NotDirected(mask, "up")
    return _converges(tp, mask, x, tp.poset.up)


def down_converges(tp: TopologizedPoset, mask: SubsetMask, x: int) -> bool:
    """For every open U around x some d in D has D ∩ ↓d ⊆ U."""
    check_fits(mask, tp.n)
    if mask == 0:
        raise EmptySet("down_converges")
    if not is_down_directed(tp.poset, mask):
        raise NotDirected(mask, "down")
    return _converges(tp, mask, x, tp.poset.down)


def is_up_closed(tp: TopologizedPoset) -> bool:
    return all(is_closed(tp.topology, u) for u in tp.poset.up)


def is_down_closed(tp: TopologizedPoset) -> bool:
    return all(is_closed(tp.topology, d) for d in tp.poset.down)


def is_updown_closed(tp: TopologizedPoset) -> bool:
    return all(is_closed(tp.topology, updown_set(tp.poset, x)) for x in range(tp.n))


def is_chain_closed(tp: TopologizedPoset) -> bool:
    """The closure of every chain is a chain."""
    return all(
        is_chain(tp.poset, closure(tp.topology, c)) for c in enumerate_chains(tp.poset)
    )


def is_weakly_up_closed(tp: TopologizedPoset) -> bool:
    """cl{x} ⊆ ↑x for every x."""
    return all(
        is_subset(closure(tp.topology, 1 << x), tp.poset.up[x]) for x in range(tp.n)
    )


def order_graph(poset: FinitePoset) -> SubsetMask:
    """{(x, y) : x <= y} as a mask over the row-major square."""
    n = poset.n
    result = 0
    for x, ups in enumerate(poset.up):
        for y in iter_bits(ups):
            result |= 1 << (x * n + y)
    return result


def is_pospace(tp: TopologizedPoset) -> bool:
    """The order relation is closed in the product topology of X × X.

    Raises:
        CapacityExceeded: the square has more than 16 points
    """
    if tp.n > POSPACE_MAX_N:
        raise CapacityExceeded("pospace square size", POSPACE_MAX_N**2, tp.n**2)
    square = product_topology(tp.topology, tp.topology)
    return is_closed(square, order_graph(tp.poset))


def closedness_profile(tp: TopologizedPoset) -> ClosednessProfile:
    try:
        pospace: bool | None = is_pospace(tp)
        unevaluated: tuple[tuple[str, str], ...] = ()
    except CapacityExceeded as exc:
        pospace = None
        unevaluated = (("pospace", str(exc)),)
    return ClosednessProfile(
        up_closed=is_up_closed(tp),
        down_closed=is_down_closed(tp),
        updown_closed=is_updown_closed(tp),
        pospace=pospace,
        chain_closed=is_chain_closed(tp),
        weakly_up_closed=is_weakly_up_closed(tp),
        unevaluated=unevaluated,
    )


def is_chain_compact(tp: TopologizedPoset) -> bool:
    """Every closed chain passes the open-cover compactness oracle."""
    return all(
        is_compact_subset(tp.topology, c)
        for c in enumerate_chains(tp.poset)
        if is_closed(tp.topology, c)
    )


def product_topo_poset(tp1: TopologizedPoset, tp2: TopologizedPoset) -> TopologizedPoset:
    """Pointwise order with the Tychonoff product topology."""
    return TopologizedPoset(
        product_order(tp1.poset, tp2.poset), product_topology(tp1.topology, tp2.topology)
    )


def subposet(tp: TopologizedPoset, carrier: SubsetMask) -> TopologizedPoset:
    """Induced order and subspace topology on ``carrier``, reindexed ascending."""
    topology, index_map = subspace_topology(tp.topology, carrier)
    return TopologizedPoset(restrict(tp.poset, index_map), topology)


def closed_subsets(tp: TopologizedPoset) -> list[SubsetMask]:
    """Nonempty closed subsets, ascending."""
    n = tp.n
    return sorted(full_mask(n) & ~u for u in tp.topology.opens if u != full_mask(n))
