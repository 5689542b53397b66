"""Finite semilattices and topologized semilattices."""

from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import cached_property, reduce

import numpy as np

from ordertopo.config import COVER_ORACLE_MAX_OPENS, GDELTA_MAX_NEIGHBORHOODS
from ordertopo.core.bits import (
    SubsetMask,
    check_fits,
    check_size,
    complement,
    contains,
    full_mask,
    is_subset,
    iter_bits,
)
from ordertopo.core.order import FinitePoset, inf
from ordertopo.core.topo_poset import TopologizedPoset
from ordertopo.core.topology import (
    FiniteTopology,
    check_product_size,
    closed_neighborhoods,
    interior,
    is_closed,
    is_compact_subset,
    is_open,
    product_topology,
    subspace_topology,
    topology_generate,
)
from ordertopo.errors import (
    AxiomViolation,
    CapacityExceeded,
    EmptySet,
    NotAssociative,
    NotCommutative,
    NotIdempotent,
    OracleBudgetExceeded,
    OrderTopoError,
)

# Constant on finite carriers; exposed for reporting, not computed.
IS_UP_FINITE = True

JOINT_CONTINUITY_MAX_N = 4


@dataclass(frozen=True)
class Semilattice:
    """Idempotent commutative associative operation table on {0..n-1}."""

    n: int
    op: tuple[tuple[int, ...], ...]

    def __call__(self, x: int, y: int) -> int:
        return self.op[x][y]

    def table(self) -> np.ndarray:
        return np.array(self.op, dtype=np.int64).reshape(self.n, self.n)


def semilattice_from_table(n: int, op: Sequence[Sequence[int]]) -> Semilattice:
    """Validate an operation table.

    Raises:
        NotIdempotent, NotCommutative, NotAssociative: with the witnessing
            element, pair or triple
    """
    check_size(n)
    if len(op) != n or any(len(row) != n for row in op):
        raise AxiomViolation("shape", (n,), f"operation table must be {n}x{n}")
    for row in op:
        for v in row:
            if not 0 <= v < n:
                raise AxiomViolation("closure", (v,), f"table entry {v} out of range for n={n}")
    for x in range(n):
        if op[x][x] != x:
            raise NotIdempotent(x, op[x][x])
    for x in range(n):
        for y in range(x + 1, n):
            if op[x][y] != op[y][x]:
                raise NotCommutative(x, y)
    for x in range(n):
        for y in range(n):
            xy = op[x][y]
            for z in range(n):
                if op[xy][z] != op[x][op[y][z]]:
                    raise NotAssociative(x, y, z)
    return Semilattice(n=n, op=tuple(tuple(row) for row in op))


def semilattice_from_poset(poset: FinitePoset) -> Semilattice | None:
    """Meet table of ``poset`` if every pair has an infimum, else None."""
    n = poset.n
    op = [[0] * n for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            m = inf(poset, (1 << x) | (1 << y))
            if m is None:
                return None
            op[x][y] = op[y][x] = m
    return Semilattice(n=n, op=tuple(tuple(row) for row in op))


def chain_semilattice(n: int) -> Semilattice:
    """min on 0 < 1 < ... < n-1."""
    return Semilattice(n=n, op=tuple(tuple(min(x, y) for y in range(n)) for x in range(n)))


def natural_order(sl: Semilattice) -> FinitePoset:
    """x <= y iff xy = x."""
    up = []
    for x in range(sl.n):
        mask = 0
        for y in range(sl.n):
            if sl.op[x][y] == x:
                mask |= 1 << y
        up.append(mask)
    return FinitePoset(n=sl.n, up=tuple(up))


def meet_of_subset(sl: Semilattice, mask: SubsetMask) -> int:
    """a1·a2···ak for the members of a nonempty set."""
    check_fits(mask, sl.n)
    if mask == 0:
        raise EmptySet("meet_of_subset")
    return reduce(sl, iter_bits(mask))


def is_subsemilattice(sl: Semilattice, mask: SubsetMask) -> bool:
    items = list(iter_bits(mask))
    return all(contains(mask, sl.op[x][y]) for i, x in enumerate(items) for y in items[i + 1:])


def generated_subsemilattice(sl: Semilattice, mask: SubsetMask) -> SubsetMask:
    check_fits(mask, sl.n)
    current = mask
    while True:
        items = list(iter_bits(current))
        grown = current
        for i, x in enumerate(items):
            for y in items[i + 1:]:
                grown |= 1 << sl.op[x][y]
        if grown == current:
            return current
        current = grown


def enumerate_subsemilattices(sl: Semilattice) -> Iterator[SubsetMask]:
    """All op-closed subsets, ∅ included, ascending."""
    for mask in range(1 << sl.n):
        if is_subsemilattice(sl, mask):
            yield mask


def product_table(s1: Semilattice, s2: Semilattice) -> Semilattice:
    """Componentwise operation on the row-major product carrier."""
    check_product_size(s1.n, s2.n)
    n2 = s2.n
    size = s1.n * n2
    op = [[0] * size for _ in range(size)]
    for a in range(size):
        x1, y1 = divmod(a, n2)
        for b in range(size):
            x2, y2 = divmod(b, n2)
            op[a][b] = s1.op[x1][x2] * n2 + s2.op[y1][y2]
    return Semilattice(n=size, op=tuple(tuple(row) for row in op))


@dataclass(frozen=True)
class TopologizedSemilattice:
    sl: Semilattice
    topology: FiniteTopology

    def __post_init__(self) -> None:
        if self.sl.n != self.topology.n:
            raise OrderTopoError(
                f"semilattice has {self.sl.n} points but topology has {self.topology.n}"
            )

    @property
    def n(self) -> int:
        return self.sl.n

    @cached_property
    def natural_order(self) -> FinitePoset:
        return natural_order(self.sl)

    @cached_property
    def as_topo_poset(self) -> TopologizedPoset:
        return TopologizedPoset(self.natural_order, self.topology)


@dataclass(frozen=True)
class ContinuityProfile:
    separately_continuous: bool
    jointly_continuous: bool | None
    unevaluated: tuple[tuple[str, str], ...] = ()

    def to_dict(self) -> dict[str, bool | None]:
        return {
            "sep_cont": self.separately_continuous,
            "joint_cont": self.jointly_continuous,
        }


def _preimage(values: Sequence[int], mask: SubsetMask) -> SubsetMask:
    result = 0
    for x, v in enumerate(values):
        if contains(mask, v):
            result |= 1 << x
    return result


def is_separately_continuous(ts: TopologizedSemilattice) -> bool:
    """Every translation x ↦ ax pulls opens back to opens."""
    return all(
        is_open(ts.topology, _preimage(ts.sl.op[a], u))
        for a in range(ts.n)
        for u in ts.topology.opens
    )


def is_jointly_continuous(ts: TopologizedSemilattice) -> bool:
    """The operation X × X → X is continuous for the product topology.

    Raises:
        CapacityExceeded: the square has more than 16 points
    """
    if ts.n > JOINT_CONTINUITY_MAX_N:
        raise CapacityExceeded("joint continuity square size", JOINT_CONTINUITY_MAX_N**2, ts.n**2)
    square = product_topology(ts.topology, ts.topology)
    flat = [v for row in ts.sl.op for v in row]
    return all(is_open(square, _preimage(flat, u)) for u in ts.topology.opens)


def continuity_profile(ts: TopologizedSemilattice) -> ContinuityProfile:
    try:
        joint: bool | None = is_jointly_continuous(ts)
        unevaluated: tuple[tuple[str, str], ...] = ()
    except CapacityExceeded as exc:
        joint = None
        unevaluated = (("joint_cont", str(exc)),)
    return ContinuityProfile(
        separately_continuous=is_separately_continuous(ts),
        jointly_continuous=joint,
        unevaluated=unevaluated,
    )


def closed_subsemilattices(ts: TopologizedSemilattice) -> Iterator[SubsetMask]:
    for mask in enumerate_subsemilattices(ts.sl):
        if is_closed(ts.topology, mask):
            yield mask


def weak_star_topology(ts: TopologizedSemilattice) -> FiniteTopology:
    """Topology generated by the complements of closed subsemilattices."""
    return topology_generate(
        ts.n, [complement(z, ts.n) for z in closed_subsemilattices(ts)]
    )


def is_zar_compact(ts: TopologizedSemilattice) -> bool:
    """The weak• topology passes the open-cover compactness oracle."""
    weak = weak_star_topology(ts)
    return is_compact_subset(weak, full_mask(ts.n))


def is_V_semilattice(ts: TopologizedSemilattice) -> bool:
    """For every x and y ∉ ↓x some z ∉ ↓x has y in the interior of ↑z."""
    order = ts.natural_order
    n = ts.n
    interiors = [interior(ts.topology, order.up[z]) for z in range(n)]
    for x in range(n):
        outside = complement(order.down[x], n)
        for y in iter_bits(outside):
            if not any(contains(interiors[z], y) for z in iter_bits(outside)):
                return False
    return True


def is_lawson(ts: TopologizedSemilattice) -> bool:
    """Minimal-neighborhood criterion: every min_nbhd[x] is a subsemilattice."""
    return all(is_subsemilattice(ts.sl, m) for m in ts.topology.min_nbhd)


def _is_base(topology: FiniteTopology, family: Sequence[SubsetMask]) -> bool:
    for u in topology.opens:
        covered = 0
        for b in family:
            if is_subset(b, u):
                covered |= b
        if covered != u:
            return False
    return True


def is_lawson_literal(ts: TopologizedSemilattice) -> bool:
    """Search subfamilies of open subsemilattices for a base, smallest first.

    Raises:
        OracleBudgetExceeded: more than ``COVER_ORACLE_MAX_OPENS`` opens
    """
    if len(ts.topology.opens) > COVER_ORACLE_MAX_OPENS:
        raise OracleBudgetExceeded(len(ts.topology.opens), COVER_ORACLE_MAX_OPENS)
    candidates = [u for u in ts.topology.opens if is_subsemilattice(ts.sl, u)]
    k = len(candidates)
    for pick in sorted(range(1 << k), key=lambda s: (s.bit_count(), s)):
        family = [candidates[i] for i in iter_bits(pick)]
        if _is_base(ts.topology, family):
            return True
    return False


def subfamily_intersections(masks: Sequence[SubsetMask], full: SubsetMask) -> np.ndarray:
    """Intersections of all nonempty subfamilies, distinct and smallest-first."""
    k = len(masks)
    inter = np.full(1 << k, full, dtype=np.int64)
    for i, m in enumerate(masks):
        inter[1 << i: 1 << (i + 1)] = inter[: 1 << i] & m
    distinct = np.unique(inter[1:])
    sizes = np.array([int(v).bit_count() for v in distinct], dtype=np.int64)
    return distinct[np.lexsort((distinct, sizes))]


def gdelta_separator(ts: TopologizedSemilattice, x: int, y: int) -> SubsetMask | None:
    """Smallest intersection of closed neighborhoods of x that is a
    closed subsemilattice missing y, or None.

    Raises:
        CapacityExceeded: x has more than 16 closed neighborhoods
    """
    nbhds = closed_neighborhoods(ts.topology, x)
    if len(nbhds) > GDELTA_MAX_NEIGHBORHOODS:
        raise CapacityExceeded("closed neighborhoods", GDELTA_MAX_NEIGHBORHOODS, len(nbhds))
    for cand in subfamily_intersections(nbhds, full_mask(ts.n)):
        c = int(cand)
        if not contains(c, y) and is_closed(ts.topology, c) and is_subsemilattice(ts.sl, c):
            return c
    return None


def is_gdelta_separated(ts: TopologizedSemilattice) -> bool:
    return all(
        gdelta_separator(ts, x, y) is not None
        for x in range(ts.n)
        for y in range(ts.n)
        if x != y
    )


def product_semilattice(
    ts1: TopologizedSemilattice, ts2: TopologizedSemilattice
) -> TopologizedSemilattice:
    return TopologizedSemilattice(
        product_table(ts1.sl, ts2.sl), product_topology(ts1.topology, ts2.topology)
    )


def subsemilattice(ts: TopologizedSemilattice, carrier: SubsetMask) -> TopologizedSemilattice:
    """Restriction to an op-closed ``carrier``, reindexed ascending."""
    if not is_subsemilattice(ts.sl, carrier):
        raise AxiomViolation("subsemilattice", (carrier,), f"{carrier:#x} is not op-closed")
    topology, index_map = subspace_topology(ts.topology, carrier)
    position = {p: i for i, p in enumerate(index_map)}
    op = tuple(tuple(position[ts.sl.op[a][b]] for b in index_map) for a in index_map)
    return TopologizedSemilattice(Semilattice(n=len(index_map), op=op), topology)

