"""Structure files (JSON) and DOT export."""

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Literal, Union

import networkx as nx

from ordertopo.core.bits import check_size, format_mask, mask_of, members
from ordertopo.core.order import FinitePoset, poset_from_relation
from ordertopo.core.semilattice import TopologizedSemilattice, semilattice_from_table
from ordertopo.core.topo_poset import TopologizedPoset
from ordertopo.core.topology import (
    FiniteTopology,
    discrete,
    specialization_preorder,
    topology_from_opens,
)
from ordertopo.errors import AxiomViolation, StructureParseError, ValidationError

Structure = Union[TopologizedPoset, TopologizedSemilattice]
FileKind = Literal["poset", "semilattice"]

_KEYS = {"n", "kind", "order", "op", "opens"}


@dataclass(frozen=True)
class ParsedStructure:
    structure: Structure
    kind: FileKind
    opens_defaulted: bool  # no "opens" key; the discrete topology was used


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise StructureParseError(f"{where} must be an integer, got {value!r}")
    return value


def _int_rows(value: Any, where: str) -> list[list[int]]:
    if not isinstance(value, list) or not all(isinstance(row, list) for row in value):
        raise StructureParseError(f"{where} must be a list of lists")
    return [[_int(v, where) for v in row] for row in value]


def _point_mask(points: list[int], n: int) -> int:
    for p in points:
        if not 0 <= p < n:
            raise ValidationError(
                AxiomViolation("index range", (p,), f"point {p} out of range for n={n}")
            )
    return mask_of(points)


def parse_structure(text: str) -> ParsedStructure:
    """Parse and validate a structure document.

    Raises:
        StructureParseError: malformed JSON or a document of the wrong shape
        ValidationError: the document describes an invalid structure
        CapacityExceeded: more points than subsets can encode
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructureParseError(exc.msg, exc.pos) from exc
    if not isinstance(doc, dict):
        raise StructureParseError("top level must be an object")
    unknown = sorted(set(doc) - _KEYS)
    if unknown:
        raise StructureParseError(f"unknown keys {unknown}")
    if "n" not in doc or "kind" not in doc:
        raise StructureParseError('"n" and "kind" are required')

    n = _int(doc["n"], '"n"')
    if n < 1:
        raise StructureParseError(f'"n" must be positive, got {n}')
    check_size(n)
    kind = doc["kind"]
    if kind not in ("poset", "semilattice"):
        raise StructureParseError(f'"kind" must be "poset" or "semilattice", got {kind!r}')
    body_key = "order" if kind == "poset" else "op"
    other_key = "op" if kind == "poset" else "order"
    if other_key in doc:
        raise StructureParseError(f'"{other_key}" is not allowed for kind {kind!r}')
    if body_key not in doc:
        raise StructureParseError(f'"{body_key}" is required for kind {kind!r}')

    try:
        if "opens" in doc:
            opens = [_point_mask(u, n) for u in _int_rows(doc["opens"], '"opens"')]
            topology = topology_from_opens(n, opens)
        else:
            topology = discrete(n)
        if kind == "poset":
            pairs = _int_rows(doc["order"], '"order"')
            if any(len(p) != 2 for p in pairs):
                raise StructureParseError('"order" entries must be [i, j] pairs')
            structure: Structure = TopologizedPoset(
                poset_from_relation(n, [(i, j) for i, j in pairs]), topology
            )
        else:
            table = _int_rows(doc["op"], '"op"')
            structure = TopologizedSemilattice(semilattice_from_table(n, table), topology)
    except AxiomViolation as exc:
        raise ValidationError(exc) from exc
    return ParsedStructure(structure=structure, kind=kind, opens_defaulted="opens" not in doc)


def load_structure(path: str | Path) -> ParsedStructure:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise StructureParseError(f"cannot read {path}: {exc}") from exc
    return parse_structure(text)


def _poset_of(structure: Structure) -> FinitePoset:
    if isinstance(structure, TopologizedSemilattice):
        return structure.natural_order
    return structure.poset


def hasse_edges(poset: FinitePoset) -> list[tuple[int, int]]:
    """Covering pairs x ⋖ y, lexicographic."""
    graph = nx.DiGraph()
    graph.add_nodes_from(range(poset.n))
    graph.add_edges_from(
        (x, y) for x in range(poset.n) for y in members(poset.up[x]) if y != x
    )
    return sorted(nx.transitive_reduction(graph).edges())


def specialization_edges(topology: FiniteTopology) -> list[tuple[int, int]]:
    """Edges x → y of the specialization preorder (x in cl{y}).

    Strict comparabilities are reduced through the quotient by the
    equivalence x ⊑ y ⊑ x; equivalent points keep all their mutual edges.
    """
    rel = specialization_preorder(topology)
    n = topology.n
    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from((x, y) for x in range(n) for y in range(n) if x != y and rel[x, y])
    quotient = nx.condensation(graph)
    reduced = nx.transitive_reduction(quotient)
    block = quotient.graph["mapping"]
    edges = {(x, y) for x, y in graph.edges() if block[x] == block[y]}
    edges |= {
        (x, y)
        for x, y in graph.edges()
        if block[x] != block[y] and reduced.has_edge(block[x], block[y])
    }
    return sorted(edges)


def _digraph(name: str, n: int, edges: list[tuple[int, int]]) -> list[str]:
    lines = [f"digraph {name} {{"]
    lines += [f"  {x};" for x in range(n)]
    lines += [f"  {x} -> {y};" for x, y in edges]
    lines.append("}")
    return lines


def to_dot(structure: Structure, specialization: bool = False) -> str:
    """Hasse diagram as DOT; optionally followed by the specialization preorder."""
    lines = _digraph("hasse", structure.n, hasse_edges(_poset_of(structure)))
    if specialization:
        lines += _digraph("specialization", structure.n, specialization_edges(structure.topology))
    return "\n".join(lines) + "\n"


def to_document(structure: Structure) -> dict[str, Any]:
    doc: dict[str, Any] = {"n": structure.n}
    if isinstance(structure, TopologizedSemilattice):
        doc["kind"] = "semilattice"
        doc["op"] = [list(row) for row in structure.sl.op]
    else:
        doc["kind"] = "poset"
        doc["order"] = [list(e) for e in hasse_edges(structure.poset)]
    doc["opens"] = [members(u) for u in structure.topology.opens]
    return doc


def serialize_structure(structure: Structure) -> str:
    """Canonical, byte-stable serialization (opens ascending by mask)."""
    return json.dumps(to_document(structure)) + "\n"


def describe(structure: Structure) -> str:
    """One-line human summary used in reports."""
    opens = ",".join(format_mask(u) for u in structure.topology.opens)
    if isinstance(structure, TopologizedSemilattice):
        body = "op=" + json.dumps([list(row) for row in structure.sl.op], separators=(",", ":"))
    else:
        body = "order=" + ",".join(f"{x}<{y}" for x, y in hasse_edges(structure.poset))
    return f"n={structure.n} {body} opens={{{opens}}}"
