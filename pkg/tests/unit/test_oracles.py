"""Unit tests for engine.oracles module."""

import pytest

from ordertopo.engine.oracles import (
    ORACLES,
    OracleResult,
    compactness_disagreements,
    family_count,
    lawson_disagreements,
    relation_count,
    run_oracle,
    table_count,
)
from ordertopo.errors import CapacityExceeded


class TestCounts:
    """Brute-force counts against known values."""

    @pytest.mark.parametrize("n, expected", [(0, 1), (1, 1), (2, 4), (3, 29), (4, 355)])
    def test_preorders(self, n: int, expected: int) -> None:
        assert relation_count(n) == expected

    @pytest.mark.parametrize("n, expected", [(2, 3), (3, 19), (4, 219)])
    def test_partial_orders(self, n: int, expected: int) -> None:
        assert relation_count(n, antisymmetric=True) == expected

    def test_family_filter(self) -> None:
        assert family_count(2) == 4
        assert family_count(3) == 29

    def test_tables(self) -> None:
        assert table_count(2) == 2
        assert table_count(3) == 9

    def test_disagreements(self) -> None:
        assert compactness_disagreements(3) == 0
        assert lawson_disagreements(3) == 0

    @pytest.mark.parametrize(
        "fn, n",
        [(relation_count, 6), (family_count, 5), (table_count, 4), (lawson_disagreements, 4)],
    )
    def test_caps(self, fn, n: int) -> None:
        with pytest.raises(CapacityExceeded):
            fn(n)


class TestRunOracle:
    """Tests for the oracle registry."""

    @pytest.mark.parametrize("name", sorted(ORACLES))
    def test_agree_at_three(self, name: str) -> None:
        result = run_oracle(name, 3)

        assert result.agree

    def test_render(self) -> None:
        assert run_oracle("relation-count", 3).render() == "relation-count n=3: fast=29 oracle=29 agree"

    def test_render_disagreement(self) -> None:
        result = OracleResult(name="x", n=1, fast=1, oracle=2)

        assert not result.agree
        assert result.render().endswith("DISAGREE")

    def test_unknown_name(self) -> None:
        with pytest.raises(KeyError):
            run_oracle("bogus", 2)
