"""
Tests for the ordertopo command line.
"""

import json
from collections.abc import Callable
from pathlib import Path

import pytest

from ordertopo import __version__
from ordertopo.cli import EXIT_CAPACITY, EXIT_INPUT, EXIT_NEGATIVE, EXIT_OK, main

SEPARATING = "updown_closed & !(up_closed & down_closed)"
SIERPINSKI_CHAIN_HEX = "030200010003000000010003"
SIERPINSKI_CHAIN_FILE = '{"n": 2, "kind": "poset", "order": [[0, 1]], "opens": [[], [1], [0, 1]]}\n'


class TestCheckCommand:
    """Tests for `ordertopo check`."""

    def test_single_predicate(
        self, capsys, write_structure: Callable[..., Path], sierpinski_chain_doc: dict
    ) -> None:
        path = write_structure(sierpinski_chain_doc)

        assert main(["check", str(path), "pospace"]) == EXIT_OK
        assert capsys.readouterr().out == "pospace: false\n"

    def test_comma_separated(
        self, capsys, write_structure: Callable[..., Path], sierpinski_chain_doc: dict
    ) -> None:
        path = write_structure(sierpinski_chain_doc)

        main(["check", str(path), "updown_closed,up_closed"])

        assert capsys.readouterr().out == "updown_closed: true\nup_closed: false\n"

    def test_opens_default(
        self, capsys, write_structure: Callable[..., Path], discrete_chain_doc: dict
    ) -> None:
        path = write_structure(discrete_chain_doc)

        assert main(["check", str(path), "complete"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out == "opens: absent, using the discrete topology\ncomplete: true\n"

    def test_semilattice_predicate_on_poset(
        self, capsys, write_structure: Callable[..., Path], sierpinski_chain_doc: dict
    ) -> None:
        path = write_structure(sierpinski_chain_doc)

        assert main(["check", str(path), "lawson"]) == EXIT_OK
        assert capsys.readouterr().out == "lawson: unevaluated (needs a semilattice)\n"

    def test_all_predicates_json(
        self, capsys, write_structure: Callable[..., Path], sierpinski_chain_doc: dict
    ) -> None:
        path = write_structure(sierpinski_chain_doc)

        assert main(["check", str(path), "--all", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["status"] == "ok"
        assert data["results"]["updown_closed"] is True
        assert data["results"]["pospace"] is False
        assert "lawson" not in data["results"]

    def test_malformed_file(self, capsys, write_structure: Callable[..., Path]) -> None:
        path = write_structure('{"n": 2, "kind":')

        assert main(["check", str(path), "t1"]) == EXIT_INPUT
        assert capsys.readouterr().err.startswith("error: invalid structure file")

    def test_invalid_structure(self, write_structure: Callable[..., Path]) -> None:
        path = write_structure({"n": 2, "kind": "poset", "order": [[0, 1], [1, 0]]})

        assert main(["check", str(path)]) == EXIT_INPUT

    def test_unknown_predicate(
        self, capsys, write_structure: Callable[..., Path], sierpinski_chain_doc: dict
    ) -> None:
        path = write_structure(sierpinski_chain_doc)

        assert main(["check", str(path), "t1", "compact", "--json"]) == EXIT_INPUT
        data = json.loads(capsys.readouterr().out)
        assert data == {
            "status": "error",
            "message": "unknown predicate 'compact' at position 1",
            "exit_code": EXIT_INPUT,
        }


class TestSearchCommand:
    """Tests for `ordertopo search`."""

    def test_witness_to_file(self, capsys, tmp_path: Path) -> None:
        out = tmp_path / "witness.json"

        assert main(["search", SEPARATING, "--max-n", "2", "--out", str(out)]) == EXIT_OK
        assert capsys.readouterr().out == (
            f"canonical: {SIERPINSKI_CHAIN_HEX}\n"
            "witness: n=2 order=0<1 opens={{},{1},{0,1}}\n"
        )
        assert out.read_text(encoding="utf-8") == SIERPINSKI_CHAIN_FILE

    def test_witness_to_stdout(self, capsys) -> None:
        assert main(["search", SEPARATING, "--max-n", "2"]) == EXIT_OK
        assert capsys.readouterr().out.endswith(SIERPINSKI_CHAIN_FILE)

    def test_witness_json(self, capsys) -> None:
        assert main(["search", SEPARATING, "--max-n", "2", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert data["status"] == "witness"
        assert data["canonical"] == SIERPINSKI_CHAIN_HEX
        assert data["examined"] == 6

    @pytest.mark.parametrize("expr", ["pospace & !updown_closed", "t2 & !t1"])
    def test_exhausted(self, capsys, expr: str) -> None:
        assert main(["search", expr, "--max-n", "3"]) == EXIT_NEGATIVE
        assert capsys.readouterr().out.startswith("exhausted: no witness among ")

    def test_named_expression(self, capsys) -> None:
        assert main(["search", "lawson-hausdorff-nonclosed", "--max-n", "2"]) == EXIT_NEGATIVE
        assert capsys.readouterr().out.endswith("up to n=2\n")

    def test_budget(self) -> None:
        assert main(["search", SEPARATING, "--max-n", "2", "--budget", "2"]) == EXIT_CAPACITY

    def test_size_cap(self) -> None:
        assert main(["search", SEPARATING, "--max-n", "5"]) == EXIT_CAPACITY

    @pytest.mark.parametrize("expr", ["complete & nope", "t1 &", "t1 & lawson"])
    def test_bad_expression(self, expr: str) -> None:
        assert main(["search", expr, "--max-n", "2"]) == EXIT_INPUT


class TestOtherCommands:
    """Tests for audit, enumerate, export, oracle and version."""

    def test_audit(self, capsys) -> None:
        assert main(["audit", "--max-n", "2"]) == EXIT_OK
        out = capsys.readouterr().out
        assert out.startswith("audit max_n=2\n")
        assert out.endswith("total violations: 0\n")

    def test_audit_section_json(self, capsys) -> None:
        assert main(["audit", "--max-n", "2", "--section", "implications", "--json"]) == EXIT_OK
        data = json.loads(capsys.readouterr().out)
        assert [s["name"] for s in data["sections"]] == ["implications"]

    def test_enumerate(self, capsys) -> None:
        assert main(["enumerate", "--kind", "topology", "--n", "3"]) == EXIT_OK
        assert capsys.readouterr().out == "29\n"

    def test_enumerate_classes(self, capsys) -> None:
        assert main(["enumerate", "--kind", "poset", "--n", "4", "--modulo-iso"]) == EXIT_OK
        assert capsys.readouterr().out == "16\n"

    def test_enumerate_cap(self) -> None:
        assert main(["enumerate", "--kind", "topo_poset", "--n", "5"]) == EXIT_CAPACITY

    def test_export_dot(
        self, capsys, write_structure: Callable[..., Path], discrete_chain_doc: dict
    ) -> None:
        path = write_structure(discrete_chain_doc)

        assert main(["export", str(path), "--dot"]) == EXIT_OK
        assert capsys.readouterr().out == (
            "digraph hasse {\n  0;\n  1;\n  2;\n  0 -> 1;\n  1 -> 2;\n}\n"
        )

    def test_export_json(
        self, capsys, write_structure: Callable[..., Path], sierpinski_chain_doc: dict
    ) -> None:
        path = write_structure(sierpinski_chain_doc)

        assert main(["export", str(path), "--json"]) == EXIT_OK
        assert capsys.readouterr().out == SIERPINSKI_CHAIN_FILE

    def test_export_dot_and_json_conflict(
        self, capsys, write_structure: Callable[..., Path], sierpinski_chain_doc: dict
    ) -> None:
        path = write_structure(sierpinski_chain_doc)

        assert main(["export", str(path), "--dot", "--json"]) == EXIT_INPUT
        assert "mutually exclusive" in json.loads(capsys.readouterr().out)["message"]

    def test_oracle(self, capsys) -> None:
        assert main(["oracle", "--name", "relation-count", "--n", "4"]) == EXIT_OK
        assert capsys.readouterr().out == "relation-count n=4: fast=355 oracle=355 agree\n"

    def test_oracle_cap(self) -> None:
        assert main(["oracle", "--name", "semilattice-table", "--n", "4"]) == EXIT_CAPACITY

    def test_version(self, capsys) -> None:
        assert main(["version"]) == EXIT_OK
        assert capsys.readouterr().out == f"ordertopo {__version__}\n"

    def test_no_command(self) -> None:
        assert main([]) == EXIT_NEGATIVE
