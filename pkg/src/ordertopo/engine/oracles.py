"""Brute-force oracles, each diffed against the corresponding fast path."""

import itertools
import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from ordertopo.core.bits import full_mask
from ordertopo.core.semilattice import is_lawson, is_lawson_literal, semilattice_from_table
from ordertopo.core.topology import is_compact_subset, topology_from_opens
from ordertopo.engine.enumeration import (
    EnumSpec,
    count,
    enumerate_structures,
    enumerate_topologies,
)
from ordertopo.errors import AxiomViolation, CapacityExceeded

logger = logging.getLogger(__name__)

RELATION_ORACLE_MAX_N = 5
FAMILY_ORACLE_MAX_N = 4
TABLE_ORACLE_MAX_N = 3
SWEEP_ORACLE_MAX_N = 3


def _cap(what: str, limit: int, n: int) -> None:
    if n > limit:
        raise CapacityExceeded(f"{what} oracle size", limit, n)


def relation_count(n: int, antisymmetric: bool = False) -> int:
    """Count reflexive transitive relations by filtering all 2^(n²−n) candidates."""
    _cap("relation", RELATION_ORACLE_MAX_N, n)
    if n == 0:
        return 1
    off = [(x, y) for x in range(n) for y in range(n) if x != y]
    codes = np.arange(1 << len(off), dtype=np.int64)
    up = [np.full(codes.shape, 1 << x, dtype=np.int64) for x in range(n)]
    for bit, (x, y) in enumerate(off):
        up[x] |= ((codes >> bit) & 1) << y
    ok = np.ones(codes.shape, dtype=bool)
    for x, y in off:
        related = ((up[x] >> y) & 1).astype(bool)
        ok &= ~related | ((up[y] & ~up[x]) == 0)
        if antisymmetric:
            ok &= ~(related & ((up[y] >> x) & 1).astype(bool))
    return int(ok.sum())


def family_count(n: int) -> int:
    """Count topologies by testing every family of subsets."""
    _cap("family", FAMILY_ORACLE_MAX_N, n)
    subsets = 1 << n
    total = 0
    for family in range(1 << subsets):
        opens = [s for s in range(subsets) if (family >> s) & 1]
        try:
            topology_from_opens(n, opens)
        except AxiomViolation:
            continue
        total += 1
    return total


def table_count(n: int) -> int:
    """Count semilattices by validating every n×n operation table."""
    _cap("table", TABLE_ORACLE_MAX_N, n)
    total = 0
    for flat in itertools.product(range(n), repeat=n * n):
        table = [flat[i * n:(i + 1) * n] for i in range(n)]
        try:
            semilattice_from_table(n, table)
        except AxiomViolation:
            continue
        total += 1
    return total


def compactness_disagreements(n: int) -> int:
    """Subsets where the cover oracle denies compactness (always compact when finite)."""
    _cap("cover-compactness", SWEEP_ORACLE_MAX_N, n)
    return sum(
        not is_compact_subset(t, mask)
        for t in enumerate_topologies(n)
        for mask in range(full_mask(n) + 1)
    )


def lawson_disagreements(n: int) -> int:
    _cap("lawson-literal", SWEEP_ORACLE_MAX_N, n)
    return sum(
        is_lawson(ts) != is_lawson_literal(ts)
        for ts in enumerate_structures(EnumSpec("topo_semilattice", n))
    )


@dataclass(frozen=True)
class OracleResult:
    name: str
    n: int
    fast: int
    oracle: int

    @property
    def agree(self) -> bool:
        return self.fast == self.oracle

    def render(self) -> str:
        verdict = "agree" if self.agree else "DISAGREE"
        return f"{self.name} n={self.n}: fast={self.fast} oracle={self.oracle} {verdict}"


ORACLES: dict[str, Callable[[int], tuple[int, int]]] = {
    "relation-count": lambda n: (count(EnumSpec("topology", n)), relation_count(n)),
    "poset-count": lambda n: (count(EnumSpec("poset", n)), relation_count(n, antisymmetric=True)),
    "family-filter": lambda n: (count(EnumSpec("topology", n)), family_count(n)),
    "semilattice-table": lambda n: (count(EnumSpec("semilattice", n)), table_count(n)),
    "cover-compactness": lambda n: (0, compactness_disagreements(n)),
    "lawson-literal": lambda n: (0, lawson_disagreements(n)),
}


def run_oracle(name: str, n: int) -> OracleResult:
    """Run a registered oracle and its fast path.

    Disagreement oracles report 0 on the fast side and the number of
    mismatching instances on the oracle side.
    """
    if name not in ORACLES:
        raise KeyError(name)
    fast, oracle = ORACLES[name](n)
    result = OracleResult(name=name, n=n, fast=fast, oracle=oracle)
    if not result.agree:
        logger.error("oracle disagreement: %s", result.render())
    return result
