"""Predicate-driven witness search."""

import logging
from collections.abc import Iterator
from dataclasses import dataclass
from functools import partial
from typing import Literal

from ordertopo.config import EngineConfig
from ordertopo.engine.canonical import CanonicalForm, canonical_form
from ordertopo.engine.enumeration import EnumSpec, enumerate_structures
from ordertopo.engine.parallel import map_chunks
from ordertopo.engine.predicates import Expr, Structure, parse_expression
from ordertopo.errors import BudgetExceeded, OrderTopoError

logger = logging.getLogger(__name__)

SEARCH_KINDS = ("topo_poset", "topo_semilattice")

# Named searches for questions open in general; finite runs only report exhaustion.
NAMED_EXPRESSIONS: dict[str, tuple[str, str]] = {
    "complete-hausdorff-nonclosed": ("topo_semilattice", "complete & t2 & sep_cont & !pospace"),
    "lawson-hausdorff-nonclosed": ("topo_semilattice", "lawson & t2 & sep_cont & !pospace"),
}


@dataclass(frozen=True)
class SearchResult:
    status: Literal["witness", "exhausted"]
    examined: int
    max_n: int
    witness: Structure | None = None
    canonical: CanonicalForm | None = None

    @property
    def found(self) -> bool:
        return self.status == "witness"


def _matches(expr: Expr, chunk: list[Structure]) -> list[int]:
    """Positions in ``chunk`` whose structure satisfies ``expr``."""
    return [i for i, s in enumerate(chunk) if expr.evaluate(s, {})]


def _stream(spec: EnumSpec) -> Iterator[Structure]:
    for n in range(1, spec.n + 1):
        yield from enumerate_structures(EnumSpec(spec.kind, n, modulo_iso=spec.modulo_iso))


def _compile(expr: str | Expr, kind: str) -> Expr:
    if kind not in SEARCH_KINDS:
        raise OrderTopoError(f"cannot search structures of kind {kind!r}")
    return parse_expression(expr, kind) if isinstance(expr, str) else expr


def find_witness(
    expr: str | Expr,
    spec: EnumSpec,
    budget: int | None = None,
    config: EngineConfig | None = None,
) -> SearchResult:
    """First structure on 1..spec.n points satisfying ``expr``.

    Sizes are searched in increasing order; within a size the stream is in
    canonical order (one representative per class when ``spec.modulo_iso``).
    The answer does not depend on the worker count or chunk size.

    Raises:
        UnknownPredicate: ``expr`` names an unregistered predicate
        BudgetExceeded: the answer needs more than ``budget`` structures
    """
    config = config or EngineConfig()
    tree = _compile(expr, spec.kind)
    examined = 0
    for chunk, hits in map_chunks(partial(_matches, tree), _stream(spec), config, desc="search"):
        if hits:
            position = examined + hits[0] + 1
            if budget is not None and position > budget:
                raise BudgetExceeded(budget)
            witness = chunk[hits[0]]
            logger.info("witness after %d structures", position)
            return SearchResult(
                status="witness",
                examined=position,
                max_n=spec.n,
                witness=witness,
                canonical=canonical_form(witness),
            )
        examined += len(chunk)
        if budget is not None and examined > budget:
            raise BudgetExceeded(budget)
    logger.info("no witness among %d structures", examined)
    return SearchResult(status="exhausted", examined=examined, max_n=spec.n)


def find_all_witnesses(
    expr: str | Expr, spec: EnumSpec, config: EngineConfig | None = None
) -> list[Structure]:
    """Every structure on 1..spec.n points satisfying ``expr``, in stream order."""
    config = config or EngineConfig()
    tree = _compile(expr, spec.kind)
    found: list[Structure] = []
    for chunk, hits in map_chunks(partial(_matches, tree), _stream(spec), config, desc="search"):
        found.extend(chunk[i] for i in hits)
    return found
