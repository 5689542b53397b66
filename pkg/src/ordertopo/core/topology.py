"""Finite topologies on ground sets {0..n-1}.

Topologies are stored extensionally as the sorted tuple of open masks, plus
the Alexandrov table ``min_nbhd`` (the smallest open set around each point).
The specialization preorder is derived from the opens, never the other way
round, so definition-literal predicates always see the real open family.
"""

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from ordertopo.config import COVER_ORACLE_MAX_OPENS, MAX_POINTS
from ordertopo.core.bits import (
    SubsetMask,
    check_fits,
    check_size,
    complement,
    contains,
    full_mask,
    is_subset,
    iter_bits,
    popcount,
)
from ordertopo.errors import (
    CapacityExceeded,
    EmptyCarrier,
    NotATopology,
    OracleBudgetExceeded,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FiniteTopology:
    """A validated topology on {0..n-1}.

    Build instances through :func:`topology_from_opens`,
    :func:`topology_generate` or the named constructors; the dataclass
    constructor performs no validation.
    """

    n: int
    opens: tuple[SubsetMask, ...]
    min_nbhd: tuple[SubsetMask, ...] = field(compare=False)
    _open_set: frozenset[SubsetMask] = field(compare=False, repr=False, default=frozenset())

    def __post_init__(self) -> None:
        if not self._open_set:
            object.__setattr__(self, "_open_set", frozenset(self.opens))

    @property
    def full(self) -> SubsetMask:
        return full_mask(self.n)

    def __contains__(self, mask: object) -> bool:
        return mask in self._open_set

    def __len__(self) -> int:
        return len(self.opens)


@dataclass(frozen=True)
class SeparationProfile:
    """Separation axioms, each evaluated by its literal definition."""

    t0: bool
    t1: bool
    t2: bool

    def to_dict(self) -> dict[str, bool]:
        return {"t0": self.t0, "t1": self.t1, "t2": self.t2}


def _min_nbhds(n: int, opens: Iterable[SubsetMask]) -> tuple[SubsetMask, ...]:
    table = [full_mask(n)] * n
    for u in opens:
        for x in iter_bits(u):
            table[x] &= u
    return tuple(table)


def _trusted(n: int, opens: Iterable[SubsetMask]) -> FiniteTopology:
    ordered = tuple(sorted(set(opens)))
    return FiniteTopology(n=n, opens=ordered, min_nbhd=_min_nbhds(n, ordered))


def _unions_of(basis: Iterable[SubsetMask]) -> set[SubsetMask]:
    family = {0}
    for b in set(basis):
        family |= {u | b for u in family}
    return family


def topology_from_alexandrov(n: int, min_nbhd: Sequence[SubsetMask]) -> FiniteTopology:
    """Topology whose opens are all unions of the given minimal neighborhoods.

    ``min_nbhd`` must come from a preorder (``y in min_nbhd[x]`` implies
    ``min_nbhd[y] ⊆ min_nbhd[x]``); the result is then a topology by
    construction and is not re-validated pairwise.
    """
    check_size(n)
    opens = _unions_of(min_nbhd)
    opens.add(full_mask(n))
    return FiniteTopology(n=n, opens=tuple(sorted(opens)), min_nbhd=tuple(min_nbhd))


def topology_from_opens(n: int, family: Iterable[SubsetMask]) -> FiniteTopology:
    """Validate an open family and derive its minimal-neighborhood table.

    Raises:
        NotATopology: ∅ or X missing, or a pair whose union or
            intersection falls outside the family
    """
    check_size(n)
    opens = sorted(set(family))
    for u in opens:
        check_fits(u, n)
    if not opens or opens[0] != 0:
        raise NotATopology("empty set missing")
    if opens[-1] != full_mask(n):
        raise NotATopology("full set missing")

    present = set(opens)
    for i, u in enumerate(opens):
        for v in opens[i + 1:]:
            if u | v not in present:
                raise NotATopology("not closed under union", (u, v))
            if u & v not in present:
                raise NotATopology("not closed under intersection", (u, v))
    return _trusted(n, opens)


def topology_generate(n: int, subbasis: Iterable[SubsetMask]) -> FiniteTopology:
    """Smallest topology containing ``subbasis``.

    Closes ``subbasis ∪ {X}`` under finite intersections, then takes all
    unions of the resulting base.
    """
    check_size(n)
    base = {full_mask(n)}
    for s in subbasis:
        check_fits(s, n)
        base.add(s)

    frontier = set(base)
    while frontier:
        fresh = {a & b for a in frontier for b in base} - base
        base |= fresh
        frontier = fresh

    return topology_from_opens(n, _unions_of(base))


def discrete(n: int) -> FiniteTopology:
    return topology_from_alexandrov(n, [1 << x for x in range(n)])


def indiscrete(n: int) -> FiniteTopology:
    return topology_from_alexandrov(n, [full_mask(n)] * n)


def sierpinski() -> FiniteTopology:
    """Two points, opens {∅, {1}, X}."""
    return topology_from_opens(2, [0b00, 0b10, 0b11])


def is_discrete(topology: FiniteTopology) -> bool:
    return all(m == 1 << x for x, m in enumerate(topology.min_nbhd))


def closure(topology: FiniteTopology, mask: SubsetMask) -> SubsetMask:
    """Smallest closed superset: all points whose minimal neighborhood meets ``mask``."""
    check_fits(mask, topology.n)
    result = 0
    for x, nbhd in enumerate(topology.min_nbhd):
        if nbhd & mask:
            result |= 1 << x
    return result


def interior(topology: FiniteTopology, mask: SubsetMask) -> SubsetMask:
    """Union of the opens inside ``mask``."""
    check_fits(mask, topology.n)
    result = 0
    for x, nbhd in enumerate(topology.min_nbhd):
        if is_subset(nbhd, mask):
            result |= 1 << x
    return result


def is_open(topology: FiniteTopology, mask: SubsetMask) -> bool:
    check_fits(mask, topology.n)
    return mask in topology


def is_closed(topology: FiniteTopology, mask: SubsetMask) -> bool:
    return is_open(topology, complement(mask, topology.n))


def closed_sets(topology: FiniteTopology) -> list[SubsetMask]:
    """Complements of the opens, ascending."""
    return sorted(complement(u, topology.n) for u in topology.opens)


def open_neighborhoods(topology: FiniteTopology, x: int) -> list[SubsetMask]:
    return [u for u in topology.opens if contains(u, x)]


def closed_neighborhoods(topology: FiniteTopology, x: int) -> list[SubsetMask]:
    """Closed sets containing some open set around ``x``."""
    return [f for f in closed_sets(topology) if is_subset(topology.min_nbhd[x], f)]


def specialization_preorder(topology: FiniteTopology) -> np.ndarray:
    """Boolean matrix ``rel[x, y]`` true iff x lies in the closure of {y}."""
    n = topology.n
    rel = np.zeros((n, n), dtype=bool)
    for y in range(n):
        for x in iter_bits(closure(topology, 1 << y)):
            rel[x, y] = True
    return rel


def rectangle(u: SubsetMask, v: SubsetMask, n2: int) -> SubsetMask:
    """Row-major encoding of ``U × V``: point (x, y) has index x*n2 + y."""
    row = 0
    for y in iter_bits(v):
        row |= 1 << y
    result = 0
    for x in iter_bits(u):
        result |= row << (x * n2)
    return result


def check_product_size(n1: int, n2: int) -> None:
    if n1 * n2 > MAX_POINTS:
        raise CapacityExceeded("product size", MAX_POINTS, n1 * n2)


@lru_cache(maxsize=4096)
def product_topology(t1: FiniteTopology, t2: FiniteTopology) -> FiniteTopology:
    """Tychonoff product with row-major point encoding.

    The smallest open box around (x, y) is ``min_nbhd1[x] × min_nbhd2[y]``;
    the opens are all unions of such boxes.
    """
    check_product_size(t1.n, t2.n)
    n2 = t2.n
    boxes = [
        rectangle(t1.min_nbhd[x], t2.min_nbhd[y], n2)
        for x in range(t1.n)
        for y in range(n2)
    ]
    return topology_from_alexandrov(t1.n * n2, boxes)


def compress(mask: SubsetMask, carrier: Sequence[int]) -> SubsetMask:
    """Reindex ``mask`` ∩ carrier by the ascending enumeration of the carrier."""
    result = 0
    for i, p in enumerate(carrier):
        if contains(mask, p):
            result |= 1 << i
    return result


def expand(mask: SubsetMask, carrier: Sequence[int]) -> SubsetMask:
    """Inverse of :func:`compress`."""
    result = 0
    for i in iter_bits(mask):
        result |= 1 << carrier[i]
    return result


def subspace_topology(
    topology: FiniteTopology, carrier: SubsetMask
) -> tuple[FiniteTopology, tuple[int, ...]]:
    """Trace topology on ``carrier``, reindexed; returns the index map too."""
    check_fits(carrier, topology.n)
    if carrier == 0:
        raise EmptyCarrier()
    index_map = tuple(iter_bits(carrier))
    traces = {compress(u, index_map) for u in topology.opens}
    return _trusted(len(index_map), traces), index_map


def separation_profile(topology: FiniteTopology) -> SeparationProfile:
    n = topology.n
    rel = specialization_preorder(topology)
    t0 = not any(rel[x, y] and rel[y, x] for x in range(n) for y in range(x + 1, n))
    t1 = all(is_closed(topology, 1 << x) for x in range(n))
    t2 = all(
        any(
            contains(u, x) and not contains(closure(topology, u), y)
            for u in topology.opens
        )
        for x in range(n)
        for y in range(n)
        if x != y
    )
    return SeparationProfile(t0=t0, t1=t1, t2=t2)


def is_T1_closed_set(topology: FiniteTopology, mask: SubsetMask) -> bool:
    """Each point outside ``mask`` has an open neighborhood missing ``mask``."""
    check_fits(mask, topology.n)
    outside = complement(mask, topology.n)
    return all(
        any(contains(u, x) and u & mask == 0 for u in topology.opens)
        for x in iter_bits(outside)
    )


def is_T2_closed_set(topology: FiniteTopology, mask: SubsetMask) -> bool:
    """Each point outside ``mask`` has a closed neighborhood missing ``mask``.

    A neighborhood is any superset of an open set containing the point, so
    it suffices to try the closures of the open sets around it.
    """
    check_fits(mask, topology.n)
    outside = complement(mask, topology.n)
    return all(
        any(
            contains(u, x) and closure(topology, u) & mask == 0
            for u in topology.opens
        )
        for x in iter_bits(outside)
    )


def is_compact_subset(topology: FiniteTopology, mask: SubsetMask) -> bool:
    """Open-cover compactness of ``mask``, by enumerating covers.

    Every subfamily of opens covering ``mask`` must contain a subcover of
    at most ``|mask|`` members. Opens are reduced to their distinct nonempty
    traces on ``mask`` first (a subfamily covers iff its traces do).

    Raises:
        OracleBudgetExceeded: more than ``COVER_ORACLE_MAX_OPENS`` opens
    """
    check_fits(mask, topology.n)
    if len(topology.opens) > COVER_ORACLE_MAX_OPENS:
        raise OracleBudgetExceeded(len(topology.opens), COVER_ORACLE_MAX_OPENS)
    if mask == 0:
        return True

    traces = np.array(sorted({u & mask for u in topology.opens} - {0}), dtype=np.int64)
    k = len(traces)
    # unions[s] = union of the traces selected by bit pattern s
    unions = np.zeros(1 << k, dtype=np.int64)
    for i, t in enumerate(traces):
        unions[1 << i: 1 << (i + 1)] = unions[: 1 << i] | t

    # X itself is a trace, so at least one cover exists.
    covers = np.flatnonzero(unions == mask).astype(np.int64)

    # For each cover, pick per point of the mask the lowest member containing it.
    subcover = np.zeros_like(covers)
    for p in iter_bits(mask):
        holders = np.int64(sum(1 << i for i, t in enumerate(traces) if (int(t) >> p) & 1))
        pick = covers & holders
        subcover |= pick & -pick
    sizes = sum(((subcover >> i) & 1 for i in range(k)), np.zeros_like(subcover))
    return bool(np.all(unions[subcover] == mask) and np.all(sizes <= popcount(mask)))
