"""Unit tests for core.semilattice module."""

import pytest
from hypothesis import given
from hypothesis.strategies import DrawFn, composite, integers, lists, sampled_from

from ordertopo.core.order import chain, poset_from_relation
from ordertopo.core.semilattice import (
    Semilattice,
    TopologizedSemilattice,
    chain_semilattice,
    continuity_profile,
    enumerate_subsemilattices,
    gdelta_separator,
    generated_subsemilattice,
    is_gdelta_separated,
    is_jointly_continuous,
    is_lawson,
    is_lawson_literal,
    is_separately_continuous,
    is_subsemilattice,
    is_V_semilattice,
    is_zar_compact,
    meet_of_subset,
    natural_order,
    product_semilattice,
    semilattice_from_poset,
    semilattice_from_table,
    subsemilattice,
)
from ordertopo.core.topology import FiniteTopology, discrete, indiscrete, topology_from_opens
from ordertopo.errors import (
    AxiomViolation,
    EmptySet,
    NotAssociative,
    NotCommutative,
    NotIdempotent,
)


def fan_semilattice() -> Semilattice:
    """0 is the meet of 1 and 2."""
    return semilattice_from_poset(poset_from_relation(3, [(0, 1), (0, 2)]))


@composite
def semilattices(draw: DrawFn) -> Semilattice:
    """Meet tables of random posets with a bottom element below a random forest."""
    n = draw(integers(min_value=1, max_value=5))
    parents = [draw(integers(min_value=0, max_value=k - 1)) for k in range(1, n)]
    # every point above its parent: a rooted tree, so all meets exist
    return semilattice_from_poset(
        poset_from_relation(n, [(parent, k + 1) for k, parent in enumerate(parents)])
    )


class TestTables:
    """Tests for table validation."""

    def test_chain_table(self) -> None:
        sl = semilattice_from_table(2, [[0, 0], [0, 1]])

        assert sl == chain_semilattice(2)
        assert sl(1, 0) == 0

    def test_not_idempotent(self) -> None:
        with pytest.raises(NotIdempotent):
            semilattice_from_table(2, [[1, 0], [0, 1]])

    def test_not_commutative(self) -> None:
        with pytest.raises(NotCommutative):
            semilattice_from_table(2, [[0, 0], [1, 1]])

    def test_not_associative(self) -> None:
        # commutative and idempotent, but (0*1)*2 = 2 while 0*(1*2) = 0
        table = [[0, 2, 1], [2, 1, 0], [1, 0, 2]]
        with pytest.raises(NotAssociative):
            semilattice_from_table(3, table)

    def test_entry_out_of_range(self) -> None:
        with pytest.raises(AxiomViolation, match="out of range"):
            semilattice_from_table(2, [[0, 2], [2, 1]])

    def test_poset_without_meets(self) -> None:
        assert semilattice_from_poset(poset_from_relation(3, [(0, 2), (1, 2)])) is None

    @given(semilattices())
    def test_natural_order_round_trip(self, sl: Semilattice) -> None:
        assert semilattice_from_poset(natural_order(sl)) == sl
        assert semilattice_from_table(sl.n, sl.op) == sl


class TestSubsemilattices:
    """Tests for subsemilattice helpers."""

    def test_meet_of_subset(self) -> None:
        assert meet_of_subset(fan_semilattice(), 0b110) == 0

    def test_meet_of_empty(self) -> None:
        with pytest.raises(EmptySet):
            meet_of_subset(fan_semilattice(), 0)

    def test_generated(self) -> None:
        sl = fan_semilattice()

        assert not is_subsemilattice(sl, 0b110)
        assert generated_subsemilattice(sl, 0b110) == 0b111

    def test_enumeration_includes_empty(self) -> None:
        subs = list(enumerate_subsemilattices(fan_semilattice()))

        assert subs[0] == 0
        assert 0b110 not in subs
        assert len(subs) == 7

    @given(semilattices(), integers(min_value=0, max_value=31), integers(min_value=0, max_value=31))
    def test_hull_monotone(self, sl: Semilattice, a: int, b: int) -> None:
        full = (1 << sl.n) - 1
        small = a & full
        big = small | (b & full)
        hull_small = generated_subsemilattice(sl, small)

        assert is_subsemilattice(sl, hull_small)
        assert hull_small & ~generated_subsemilattice(sl, big) == 0


class TestContinuity:
    """Tests for separate and joint continuity."""

    def test_discrete_is_topological(self) -> None:
        ts = TopologizedSemilattice(fan_semilattice(), discrete(3))

        assert is_separately_continuous(ts)
        assert is_jointly_continuous(ts)

    def test_sierpinski_chain_semilattice(
        self, sierpinski_semilattice: TopologizedSemilattice
    ) -> None:
        profile = continuity_profile(sierpinski_semilattice)

        assert profile.to_dict() == {"sep_cont": True, "joint_cont": True}

    def test_translation_not_continuous(self) -> None:
        # x -> 1*x pulls the open {1} back to {1, 2}
        t = topology_from_opens(3, [0b000, 0b010, 0b111])
        ts = TopologizedSemilattice(chain_semilattice(3), t)

        assert not is_separately_continuous(ts)
        assert not continuity_profile(ts).jointly_continuous


class TestSemilatticeProperties:
    """Tests for the Lawson, V, Zariski and Gdelta properties."""

    def test_lawson_fast_path_matches_literal(
        self, sierpinski_semilattice: TopologizedSemilattice
    ) -> None:
        assert is_lawson(sierpinski_semilattice) == is_lawson_literal(sierpinski_semilattice)

    def test_fan_with_non_subsemilattice_neighborhood(self) -> None:
        t = topology_from_opens(3, [0b000, 0b110, 0b111])
        ts = TopologizedSemilattice(fan_semilattice(), t)

        assert not is_lawson(ts)
        assert not is_lawson_literal(ts)

    def test_zar_compact(self, sierpinski_semilattice: TopologizedSemilattice) -> None:
        assert is_zar_compact(sierpinski_semilattice)

    def test_discrete_is_v_semilattice(self) -> None:
        assert is_V_semilattice(TopologizedSemilattice(chain_semilattice(3), discrete(3)))

    def test_indiscrete_is_not_v_semilattice(self) -> None:
        assert not is_V_semilattice(TopologizedSemilattice(chain_semilattice(2), indiscrete(2)))

    @pytest.mark.parametrize("topology", [discrete(2), indiscrete(2)])
    def test_gdelta_iff_discrete(self, topology: FiniteTopology) -> None:
        ts = TopologizedSemilattice(chain_semilattice(2), topology)

        assert is_gdelta_separated(ts) == (topology == discrete(2))

    def test_separator(self) -> None:
        ts = TopologizedSemilattice(chain_semilattice(2), discrete(2))

        assert gdelta_separator(ts, 0, 1) == 0b01


class TestConstructions:
    """Tests for products and restrictions."""

    def test_product(self, sierpinski_semilattice: TopologizedSemilattice) -> None:
        square = product_semilattice(sierpinski_semilattice, sierpinski_semilattice)

        assert square.n == 4
        assert square.sl(0b01, 0b10) == 0
        assert is_separately_continuous(square)

    def test_restriction(self) -> None:
        ts = TopologizedSemilattice(fan_semilattice(), discrete(3))
        sub = subsemilattice(ts, 0b011)

        assert sub.sl == chain_semilattice(2)
        assert sub.topology == discrete(2)

    def test_restriction_requires_closure(self) -> None:
        ts = TopologizedSemilattice(fan_semilattice(), discrete(3))

        with pytest.raises(AxiomViolation):
            subsemilattice(ts, 0b110)

    @given(sampled_from([0, 1, 2]), lists(integers(0, 2), min_size=1, max_size=3))
    def test_meet_is_lower_bound(self, x: int, ys: list[int]) -> None:
        sl = chain_semilattice(3)
        order = natural_order(sl)
        mask = 0
        for y in ys + [x]:
            mask |= 1 << y

        m = meet_of_subset(sl, mask)

        assert all(order.le(m, y) for y in ys)
        assert order == chain(3)
