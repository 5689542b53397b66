"""Canonical forms: the lexicographically least encoding over all relabelings."""

import itertools
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

from ordertopo.config import CANONICAL_MAX_N
from ordertopo.core.order import FinitePoset
from ordertopo.core.semilattice import Semilattice, TopologizedSemilattice
from ordertopo.core.topo_poset import TopologizedPoset
from ordertopo.core.topology import FiniteTopology
from ordertopo.errors import CapacityExceeded, OrderTopoError

Permutation = tuple[int, ...]

_TAGS: dict[type, int] = {
    FiniteTopology: 0,
    FinitePoset: 1,
    Semilattice: 2,
    TopologizedPoset: 3,
    TopologizedSemilattice: 4,
}


@dataclass(frozen=True)
class CanonicalForm:
    key: bytes
    representative: object

    def hex(self) -> str:
        return self.key.hex()


@lru_cache(maxsize=None)
def _mask_table(perm: Permutation) -> tuple[int, ...]:
    """table[m] is the image of mask m under the point map x -> perm[x]."""
    table = [0] * (1 << len(perm))
    for m in range(1, len(table)):
        low = m & -m
        table[m] = table[m ^ low] | (1 << perm[low.bit_length() - 1])
    return tuple(table)


def relabel(structure, perm: Permutation):
    """Image of ``structure`` under the bijection x -> perm[x]."""
    table = _mask_table(tuple(perm))
    if isinstance(structure, FiniteTopology):
        opens = tuple(sorted(table[u] for u in structure.opens))
        min_nbhd = [0] * structure.n
        for x, m in enumerate(structure.min_nbhd):
            min_nbhd[perm[x]] = table[m]
        return FiniteTopology(n=structure.n, opens=opens, min_nbhd=tuple(min_nbhd))
    if isinstance(structure, FinitePoset):
        up = [0] * structure.n
        for x, m in enumerate(structure.up):
            up[perm[x]] = table[m]
        return FinitePoset(n=structure.n, up=tuple(up))
    if isinstance(structure, Semilattice):
        n = structure.n
        op = [[0] * n for _ in range(n)]
        for x in range(n):
            for y in range(n):
                op[perm[x]][perm[y]] = perm[structure.op[x][y]]
        return Semilattice(n=n, op=tuple(tuple(row) for row in op))
    if isinstance(structure, TopologizedPoset):
        return TopologizedPoset(relabel(structure.poset, perm), relabel(structure.topology, perm))
    if isinstance(structure, TopologizedSemilattice):
        return TopologizedSemilattice(relabel(structure.sl, perm), relabel(structure.topology, perm))
    raise OrderTopoError(f"cannot relabel a {type(structure).__name__}")


def _words(masks: Iterable[int]) -> bytes:
    return b"".join(m.to_bytes(2, "big") for m in masks)


def _body(structure) -> bytes:
    # Orders are written as down-set masks and topologies as their sorted
    # closed sets.
    if isinstance(structure, FiniteTopology):
        full = structure.full
        return _words(sorted(full & ~u for u in structure.opens))
    if isinstance(structure, FinitePoset):
        return _words(structure.down)
    if isinstance(structure, Semilattice):
        return bytes(v for row in structure.op for v in row)
    if isinstance(structure, TopologizedPoset):
        return _body(structure.poset) + _body(structure.topology)
    return _body(structure.sl) + _body(structure.topology)


def encode(structure) -> bytes:
    """Byte encoding of a labeled structure: kind tag, size, body."""
    tag = _TAGS.get(type(structure))
    if tag is None:
        raise OrderTopoError(f"cannot encode a {type(structure).__name__}")
    return bytes((tag, structure.n)) + _body(structure)


def permutations(n: int) -> Iterable[Permutation]:
    if n > CANONICAL_MAX_N:
        raise CapacityExceeded("canonical form size", CANONICAL_MAX_N, n)
    return itertools.permutations(range(n))


def canonical_form(structure) -> CanonicalForm:
    """Least encoding over all relabelings, with the relabeled structure.

    Raises:
        CapacityExceeded: more than ``CANONICAL_MAX_N`` points
    """
    best_key: bytes | None = None
    best = structure
    for perm in permutations(structure.n):
        candidate = relabel(structure, perm)
        key = encode(candidate)
        if best_key is None or key < best_key:
            best_key, best = key, candidate
    assert best_key is not None
    return CanonicalForm(key=best_key, representative=best)


def is_isomorphic(a, b) -> bool:
    if type(a) is not type(b) or a.n != b.n:
        return False
    return canonical_form(a).key == canonical_form(b).key


def iso_classes(structures: Iterable) -> list:
    """One canonical representative per class, ordered by canonical key."""
    seen: dict[bytes, object] = {}
    for s in structures:
        form = canonical_form(s)
        seen.setdefault(form.key, form.representative)
    return [seen[k] for k in sorted(seen)]


def automorphisms(structure) -> list[Sequence[int]]:
    """Relabelings that fix the structure."""
    own = encode(structure)
    return [p for p in permutations(structure.n) if encode(relabel(structure, p)) == own]
