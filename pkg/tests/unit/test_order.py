"""Unit tests for core.order module."""

import pytest
from hypothesis import given
from hypothesis.strategies import DrawFn, composite, integers, lists, tuples

from ordertopo.core.order import (
    FinitePoset,
    antichain,
    chain,
    directed_hull,
    enumerate_chains,
    inf,
    is_chain,
    is_down_directed,
    is_up_directed,
    join_choice,
    opposite,
    poset_from_relation,
    poset_from_up_sets,
    product_order,
    restrict,
    sup,
    updown_set,
)
from ordertopo.errors import AxiomViolation, ChoiceOutOfBounds, EmptySet, NotAntisymmetric


@composite
def posets(draw: DrawFn) -> FinitePoset:
    n = draw(integers(min_value=1, max_value=5))
    pairs = draw(lists(tuples(integers(0, n - 1), integers(0, n - 1)), max_size=8))
    return poset_from_relation(n, [(min(i, j), max(i, j)) for i, j in pairs])


class TestConstruction:
    """Tests for poset construction and validation."""

    def test_closure_of_covers_is_chain(self) -> None:
        p = poset_from_relation(3, [(0, 1), (1, 2)])

        assert p == chain(3)
        assert p.up[0] == 0b111
        assert p.down[2] == 0b111

    def test_cycle_rejected(self) -> None:
        with pytest.raises(NotAntisymmetric) as info:
            poset_from_relation(3, [(0, 1), (1, 0)])

        assert info.value.cycle == (0, 1)

    def test_out_of_range_pair(self) -> None:
        with pytest.raises(AxiomViolation, match="out of range"):
            poset_from_relation(2, [(0, 2)])

    def test_up_sets_must_be_transitive(self) -> None:
        with pytest.raises(AxiomViolation):
            poset_from_up_sets(3, [0b011, 0b110, 0b100])

    def test_matrix(self) -> None:
        assert chain(2).matrix().tolist() == [[True, True], [False, True]]

    @given(posets())
    def test_opposite_is_involution(self, p: FinitePoset) -> None:
        assert opposite(opposite(p)) == p
        assert all(opposite(p).le(y, x) for x in range(p.n) for y in range(p.n) if p.le(x, y))


class TestBounds:
    """Tests for sup, inf and directedness."""

    def test_chain_sup_inf(self) -> None:
        p = chain(3)

        assert sup(p, 0b011) == 1
        assert inf(p, 0b110) == 1

    def test_antichain_has_no_sup(self) -> None:
        assert sup(antichain(2), 0b11) is None

    def test_empty_set_rejected(self) -> None:
        with pytest.raises(EmptySet):
            sup(chain(2), 0)

    def test_fan_directedness(self, fan: FinitePoset) -> None:
        assert not is_up_directed(fan, 0b110)
        assert not is_down_directed(fan, 0b110)
        assert is_down_directed(fan, 0b111)
        assert inf(fan, 0b110) == 0

    def test_updown_set(self, fan: FinitePoset) -> None:
        assert updown_set(fan, 1) == 0b011
        assert updown_set(fan, 0) == 0b111


class TestChains:
    """Tests for chain detection and enumeration."""

    def test_is_chain(self, diamond: FinitePoset) -> None:
        assert is_chain(diamond, 0b1011)
        assert not is_chain(diamond, 0b0110)

    def test_enumerate_antichain(self) -> None:
        assert list(enumerate_chains(antichain(2))) == [0b01, 0b10]

    def test_chain_count(self) -> None:
        assert len(list(enumerate_chains(chain(3)))) == 7


class TestDirectedHull:
    """Tests for the directed hull iteration."""

    def test_join_choice_adds_join(self) -> None:
        p = poset_from_relation(3, [(0, 2), (1, 2)])

        assert directed_hull(p, 0b011, join_choice(p)) == 0b111

    def test_hull_of_chain_is_itself(self) -> None:
        p = chain(3)

        assert directed_hull(p, 0b101, join_choice(p)) == 0b101

    def test_bad_choice_rejected(self) -> None:
        p = poset_from_relation(3, [(0, 2), (1, 2)])

        with pytest.raises(ChoiceOutOfBounds):
            directed_hull(p, 0b010, lambda x, y: 0)

    @given(posets(), integers(min_value=1, max_value=31))
    def test_hull_is_up_directed_when_bounded(self, p: FinitePoset, raw: int) -> None:
        mask = raw & ((1 << p.n) - 1) or 1
        top = [x for x in range(p.n) if p.down[x] == (1 << p.n) - 1]
        if not top:
            return
        hull = directed_hull(p, mask, join_choice(p))

        assert hull & mask == mask
        assert is_up_directed(p, hull)


class TestConstructions:
    """Tests for product and restriction."""

    def test_product_of_chains(self) -> None:
        p = product_order(chain(2), chain(2))

        assert p.n == 4
        assert p.up[0] == 0b1111
        assert p.up[1] == 0b1010

    def test_restrict(self) -> None:
        assert restrict(chain(3), [0, 2]) == chain(2)
