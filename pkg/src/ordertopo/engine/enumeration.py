"""Exhaustive enumeration of finite structures.

Topologies are enumerated as preorders (finite topologies are exactly the
Alexandrov topologies of their specialization preorders); posets are the
antisymmetric preorders; semilattices are the posets with all binary meets.
Labeled streams are ordered lexicographically by the tuple of up-set masks,
so every stream is deterministic and restartable.
"""

import itertools
import logging
from collections.abc import Iterator
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from ordertopo.config import ENUM_CAPS
from ordertopo.core.bits import SubsetMask, full_mask, is_subset
from ordertopo.core.morphisms import (
    Multimorphism,
    SemilatticeHom,
    is_homomorphism,
    is_multimorphism,
)
from ordertopo.core.order import FinitePoset
from ordertopo.core.semilattice import (
    Semilattice,
    TopologizedSemilattice,
    semilattice_from_poset,
)
from ordertopo.core.topo_poset import TopologizedPoset
from ordertopo.core.topology import FiniteTopology, topology_from_alexandrov
from ordertopo.errors import CapacityExceeded, OrderTopoError

logger = logging.getLogger(__name__)

Kind = Literal[
    "topology",
    "poset",
    "semilattice",
    "topo_poset",
    "topo_semilattice",
    "hom_pair",
    "multimorphism_pair",
]
KINDS: tuple[Kind, ...] = (
    "topology",
    "poset",
    "semilattice",
    "topo_poset",
    "topo_semilattice",
    "hom_pair",
    "multimorphism_pair",
)
PAIR_KINDS = ("hom_pair", "multimorphism_pair")

Structure = Union[FiniteTopology, FinitePoset, Semilattice, TopologizedPoset, TopologizedSemilattice]


@dataclass(frozen=True)
class EnumSpec:
    """What to enumerate. Pair kinds use ``n`` for X and ``n_y`` for Y."""

    kind: Kind
    n: int
    n_y: int | None = None
    modulo_iso: bool = False
    nonempty: bool = False  # multimorphisms with nonempty values only

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise OrderTopoError(f"unknown structure kind {self.kind!r}")
        cap = ENUM_CAPS[self.kind]
        for size in (self.n, self.n_y if self.n_y is not None else 0):
            if size > cap:
                raise CapacityExceeded(f"{self.kind} enumeration size", cap, size)
            if size < 0:
                raise OrderTopoError(f"size must be non-negative, got {size}")


@dataclass(frozen=True)
class HomPair:
    x: TopologizedSemilattice
    y: TopologizedSemilattice
    h: SemilatticeHom


@dataclass(frozen=True)
class MultimorphismPair:
    x: TopologizedSemilattice
    y: TopologizedSemilattice
    phi: Multimorphism


def _relations(n: int, antisymmetric: bool) -> Iterator[tuple[SubsetMask, ...]]:
    """Up-set tables of all preorders (or partial orders) on n points.

    Rows are chosen in order 0..n-1; each new row is checked for
    transitivity (and antisymmetry) against the rows already fixed.
    """
    rows: list[SubsetMask] = []
    others = [full_mask(n) & ~(1 << x) for x in range(n)]

    def consistent(k: int, row: SubsetMask) -> bool:
        for a in range(k):
            ra = rows[a]
            k_above_a = (ra >> k) & 1
            a_above_k = (row >> a) & 1
            if antisymmetric and k_above_a and a_above_k:
                return False
            if k_above_a and not is_subset(row, ra):
                return False
            if a_above_k and not is_subset(ra, row):
                return False
        return True

    def extend(k: int) -> Iterator[tuple[SubsetMask, ...]]:
        if k == n:
            yield tuple(rows)
            return
        free = others[k]
        sub = 0
        while True:
            row = (1 << k) | sub
            # rows referring to points not yet fixed are rechecked when those points are fixed
            if consistent(k, row):
                rows.append(row)
                yield from extend(k + 1)
                rows.pop()
            if sub == free:
                break
            sub = (sub - free) & free

    yield from extend(0)


def enumerate_preorders(n: int) -> Iterator[tuple[SubsetMask, ...]]:
    return _relations(n, antisymmetric=False)


def topology_from_preorder(n: int, up: tuple[SubsetMask, ...]) -> FiniteTopology:
    """Alexandrov topology whose opens are the up-sets of the preorder."""
    return topology_from_alexandrov(n, up)


def enumerate_topologies(n: int) -> Iterator[FiniteTopology]:
    for up in _relations(n, antisymmetric=False):
        yield topology_from_preorder(n, up)


def enumerate_posets(n: int) -> Iterator[FinitePoset]:
    for up in _relations(n, antisymmetric=True):
        yield FinitePoset(n=n, up=up)


def enumerate_semilattices(n: int) -> Iterator[Semilattice]:
    for poset in enumerate_posets(n):
        sl = semilattice_from_poset(poset)
        if sl is not None:
            yield sl


def enumerate_topo_posets(n: int) -> Iterator[TopologizedPoset]:
    topologies = list(enumerate_topologies(n))
    for poset in enumerate_posets(n):
        for topology in topologies:
            yield TopologizedPoset(poset, topology)


def enumerate_topo_semilattices(n: int) -> Iterator[TopologizedSemilattice]:
    topologies = list(enumerate_topologies(n))
    for sl in enumerate_semilattices(n):
        for topology in topologies:
            yield TopologizedSemilattice(sl, topology)


def enumerate_homomorphisms(sx: Semilattice, sy: Semilattice) -> Iterator[SemilatticeHom]:
    for values in itertools.product(range(sy.n), repeat=sx.n):
        h = SemilatticeHom(map=tuple(values))
        if is_homomorphism(h, sx, sy):
            yield h


def enumerate_multimorphisms(
    sx: Semilattice, sy: Semilattice, nonempty: bool = False
) -> Iterator[Multimorphism]:
    low = 1 if nonempty else 0
    for values in itertools.product(range(low, 1 << sy.n), repeat=sx.n):
        phi = Multimorphism(values=tuple(values))
        if is_multimorphism(phi, sx, sy):
            yield phi


def _single(spec: EnumSpec) -> Iterator[Structure]:
    n = spec.n
    if spec.kind == "topology":
        return enumerate_topologies(n)
    if spec.kind == "poset":
        return enumerate_posets(n)
    if spec.kind == "semilattice":
        return enumerate_semilattices(n)
    if spec.kind == "topo_poset":
        return enumerate_topo_posets(n)
    return enumerate_topo_semilattices(n)


def _pairs(spec: EnumSpec) -> Iterator[HomPair | MultimorphismPair]:
    n_y = spec.n if spec.n_y is None else spec.n_y
    xs = list(enumerate_structures(EnumSpec("topo_semilattice", spec.n, modulo_iso=spec.modulo_iso)))
    ys = list(enumerate_structures(EnumSpec("topo_semilattice", n_y, modulo_iso=spec.modulo_iso)))
    for x in xs:
        for y in ys:
            if spec.kind == "hom_pair":
                for h in enumerate_homomorphisms(x.sl, y.sl):
                    yield HomPair(x, y, h)
            else:
                for phi in enumerate_multimorphisms(x.sl, y.sl, spec.nonempty):
                    yield MultimorphismPair(x, y, phi)


def enumerate_structures(spec: EnumSpec) -> Iterator:
    """Deterministic stream of every structure described by ``spec``.

    With ``modulo_iso`` single-structure kinds yield one canonical
    representative per isomorphism class, ordered by canonical form; pair
    kinds take X and Y up to isomorphism and keep every morphism between
    the representatives.
    """
    if spec.kind in PAIR_KINDS:
        return _pairs(spec)
    if not spec.modulo_iso:
        return _single(spec)
    from ordertopo.engine.canonical import iso_classes

    return iter(iso_classes(_single(spec)))


def count(spec: EnumSpec) -> int:
    total = sum(1 for _ in enumerate_structures(spec))
    logger.info("enumerated %d structures for %s", total, spec)
    return total


def sample_structures(kind: Kind, n: int, count: int, seed: int) -> list[Structure]:
    """``count`` labeled topologized posets or semilattices drawn uniformly with replacement.

    Order (or operation) and topology are drawn independently from the
    labeled lists, so the result depends only on ``seed``.
    """
    if kind not in ("topo_poset", "topo_semilattice"):
        raise OrderTopoError(f"cannot sample structures of kind {kind!r}")
    EnumSpec(kind, n)
    topologies = list(enumerate_topologies(n))
    rng = np.random.default_rng(seed)
    if kind == "topo_poset":
        posets = list(enumerate_posets(n))
        pi = rng.integers(len(posets), size=count).tolist()
        ti = rng.integers(len(topologies), size=count).tolist()
        return [TopologizedPoset(posets[i], topologies[j]) for i, j in zip(pi, ti)]
    sls = list(enumerate_semilattices(n))
    si = rng.integers(len(sls), size=count).tolist()
    ti = rng.integers(len(topologies), size=count).tolist()
    return [TopologizedSemilattice(sls[i], topologies[j]) for i, j in zip(si, ti)]


def expand_class(structure) -> set:
    """Every labeled structure isomorphic to ``structure``."""
    from ordertopo.engine.canonical import permutations, relabel

    return {relabel(structure, p) for p in permutations(structure.n)}
