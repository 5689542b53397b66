"""Unit tests for formats module."""

import json

import pytest

from ordertopo.core.order import antichain, chain
from ordertopo.core.semilattice import TopologizedSemilattice, chain_semilattice
from ordertopo.core.topo_poset import TopologizedPoset
from ordertopo.core.topology import discrete, indiscrete, sierpinski, topology_from_opens
from ordertopo.engine.enumeration import EnumSpec, enumerate_structures
from ordertopo.errors import StructureParseError, ValidationError
from ordertopo.formats import (
    describe,
    hasse_edges,
    load_structure,
    parse_structure,
    serialize_structure,
    specialization_edges,
    to_dot,
)


class TestParse:
    """Tests for reading structure documents."""

    def test_poset_with_opens(self, sierpinski_chain_doc: dict) -> None:
        parsed = parse_structure(json.dumps(sierpinski_chain_doc))

        assert parsed.kind == "poset"
        assert not parsed.opens_defaulted
        assert parsed.structure == TopologizedPoset(chain(2), sierpinski())

    def test_opens_default_to_discrete(self, discrete_chain_doc: dict) -> None:
        parsed = parse_structure(json.dumps(discrete_chain_doc))

        assert parsed.opens_defaulted
        assert parsed.structure == TopologizedPoset(chain(3), discrete(3))

    def test_empty_order_is_antichain(self) -> None:
        parsed = parse_structure('{"n": 2, "kind": "poset", "order": []}')

        assert parsed.structure.poset == antichain(2)

    def test_missing_order_rejected(self) -> None:
        with pytest.raises(StructureParseError, match='"order" is required'):
            parse_structure('{"n": 2, "kind": "poset"}')

    def test_semilattice(self) -> None:
        text = '{"n": 2, "kind": "semilattice", "op": [[0, 0], [0, 1]], "opens": [[], [1], [0, 1]]}'

        parsed = parse_structure(text)

        assert parsed.structure == TopologizedSemilattice(chain_semilattice(2), sierpinski())

    def test_load_from_file(self, write_structure, sierpinski_chain_doc: dict) -> None:
        path = write_structure(sierpinski_chain_doc)

        assert load_structure(path).structure.n == 2

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(StructureParseError):
            load_structure(tmp_path / "absent.json")


class TestParseErrors:
    """Tests for rejected documents."""

    def test_malformed_json(self) -> None:
        with pytest.raises(StructureParseError) as info:
            parse_structure('{"n": 2,')

        assert info.value.position is not None

    @pytest.mark.parametrize(
        "text",
        [
            "[]",
            '{"n": 2}',
            '{"n": 2, "kind": "lattice"}',
            '{"n": 0, "kind": "poset"}',
            '{"n": true, "kind": "poset"}',
            '{"n": 2, "kind": "poset", "extra": 1}',
            '{"n": 2, "kind": "poset", "op": [[0, 0], [0, 1]]}',
            '{"n": 2, "kind": "semilattice", "order": []}',
            '{"n": 2, "kind": "semilattice"}',
            '{"n": 2, "kind": "poset", "order": [[0, 1, 1]]}',
            '{"n": 2, "kind": "poset", "order": [0, 1]}',
        ],
    )
    def test_shape_errors(self, text: str) -> None:
        with pytest.raises(StructureParseError):
            parse_structure(text)

    @pytest.mark.parametrize(
        "text",
        [
            '{"n": 2, "kind": "poset", "order": [[0, 1], [1, 0]]}',
            '{"n": 2, "kind": "poset", "order": [], "opens": [[], [2], [0, 1]]}',
            '{"n": 2, "kind": "poset", "order": [], "opens": [[0]]}',
            '{"n": 2, "kind": "semilattice", "op": [[0, 1], [0, 1]]}',
        ],
    )
    def test_invalid_structures(self, text: str) -> None:
        with pytest.raises(ValidationError):
            parse_structure(text)


class TestSerialize:
    """Tests for writing structure documents."""

    def test_poset_document(self) -> None:
        text = serialize_structure(TopologizedPoset(chain(2), sierpinski()))

        assert text == '{"n": 2, "kind": "poset", "order": [[0, 1]], "opens": [[], [1], [0, 1]]}\n'

    def test_semilattice_document(self, sierpinski_semilattice: TopologizedSemilattice) -> None:
        text = serialize_structure(sierpinski_semilattice)

        assert text == (
            '{"n": 2, "kind": "semilattice", "op": [[0, 0], [0, 1]], "opens": [[], [1], [0, 1]]}\n'
        )

    def test_corpus_reads_back_from_files(self, write_structure) -> None:
        corpus = []
        for n in (1, 2):
            corpus += enumerate_structures(EnumSpec("topo_poset", n))
            corpus += enumerate_structures(EnumSpec("topo_semilattice", n))
        corpus += enumerate_structures(EnumSpec("topo_poset", 3, modulo_iso=True))
        corpus += enumerate_structures(EnumSpec("topo_semilattice", 3, modulo_iso=True))
        assert len(corpus) >= 50
        assert {s.n for s in corpus} == {1, 2, 3}

        for i, structure in enumerate(corpus):
            text = serialize_structure(structure)
            loaded = load_structure(write_structure(text, name=f"s{i}.json")).structure

            assert loaded == structure
            assert serialize_structure(loaded) == text
            assert to_dot(loaded, specialization=True) == to_dot(structure, specialization=True)


class TestDot:
    """Tests for DOT export and summaries."""

    def test_chain(self) -> None:
        tp = TopologizedPoset(chain(3), discrete(3))

        assert to_dot(tp) == "digraph hasse {\n  0;\n  1;\n  2;\n  0 -> 1;\n  1 -> 2;\n}\n"

    def test_hasse_skips_transitive_pairs(self, diamond) -> None:
        assert (0, 3) not in hasse_edges(diamond)
        assert len(hasse_edges(diamond)) == 4

    def test_specialization(self, sierpinski_chain: TopologizedPoset) -> None:
        text = to_dot(sierpinski_chain, specialization=True)

        assert "digraph specialization {" in text
        assert text.endswith("  0 -> 1;\n}\n")

    def test_specialization_of_indiscrete(self) -> None:
        assert specialization_edges(indiscrete(2)) == [(0, 1), (1, 0)]

    def test_specialization_is_reduced(self) -> None:
        upsets = topology_from_opens(3, [0b000, 0b100, 0b110, 0b111])

        assert specialization_edges(upsets) == [(0, 1), (1, 2)]

    def test_describe(self, sierpinski_chain: TopologizedPoset) -> None:
        assert describe(sierpinski_chain) == "n=2 order=0<1 opens={{},{1},{0,1}}"
