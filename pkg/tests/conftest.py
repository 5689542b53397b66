"""Pytest configuration and fixtures."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import pytest

from ordertopo.core.order import FinitePoset, antichain, chain, poset_from_relation
from ordertopo.core.semilattice import TopologizedSemilattice, chain_semilattice
from ordertopo.core.topo_poset import TopologizedPoset
from ordertopo.core.topology import FiniteTopology, discrete, indiscrete, sierpinski


@pytest.fixture
def sierpinski_space() -> FiniteTopology:
    """Two points, opens {∅, {1}, X}."""
    return sierpinski()


@pytest.fixture
def sierpinski_chain() -> TopologizedPoset:
    """Chain 0 < 1 with the Sierpiński topology: updown-closed but not up-closed."""
    return TopologizedPoset(chain(2), sierpinski())


@pytest.fixture
def discrete_chain() -> TopologizedPoset:
    return TopologizedPoset(chain(3), discrete(3))


@pytest.fixture
def indiscrete_antichain() -> TopologizedPoset:
    """Two incomparable points that cannot be told apart topologically."""
    return TopologizedPoset(antichain(2), indiscrete(2))


@pytest.fixture
def fan() -> FinitePoset:
    """0 below both 1 and 2."""
    return poset_from_relation(3, [(0, 1), (0, 2)])


@pytest.fixture
def diamond() -> FinitePoset:
    """0 < 1, 2 < 3 with 1 and 2 incomparable."""
    return poset_from_relation(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture
def sierpinski_semilattice() -> TopologizedSemilattice:
    """min on 0 < 1 with the Sierpiński topology."""
    return TopologizedSemilattice(chain_semilattice(2), sierpinski())


@pytest.fixture
def write_structure(tmp_path: Path) -> Callable[..., Path]:
    """Write a structure document (dict or raw text) and return its path."""

    def write(doc: dict[str, Any] | str, name: str = "structure.json") -> Path:
        path = tmp_path / name
        path.write_text(doc if isinstance(doc, str) else json.dumps(doc), encoding="utf-8")
        return path

    return write


@pytest.fixture
def sierpinski_chain_doc() -> dict[str, Any]:
    return {"n": 2, "kind": "poset", "order": [[0, 1]], "opens": [[], [1], [0, 1]]}


@pytest.fixture
def discrete_chain_doc() -> dict[str, Any]:
    return {"n": 3, "kind": "poset", "order": [[0, 1], [1, 2]]}
