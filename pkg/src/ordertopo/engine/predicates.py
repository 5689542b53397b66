"""Predicate registry and the boolean expression language over it.

Grammar (precedence ``!`` > ``&`` > ``|``)::

    expr   := term ('|' term)*
    term   := factor ('&' factor)*
    factor := '!' factor | '(' expr ')' | identifier
"""

from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from pyparsing import (
    Forward,
    Literal,
    ParseException,
    ParserElement,
    Suppress,
    Word,
    ZeroOrMore,
    alphanums,
    alphas,
)

from ordertopo.config import CLI_CHAIN_CAP
from ordertopo.core.semilattice import (
    TopologizedSemilattice,
    is_gdelta_separated,
    is_jointly_continuous,
    is_lawson,
    is_separately_continuous,
    is_V_semilattice,
    is_zar_compact,
)
from ordertopo.core.topo_poset import (
    TopologizedPoset,
    is_chain_closed,
    is_chain_compact,
    is_complete,
    is_down_closed,
    is_down_complete,
    is_pospace,
    is_up_closed,
    is_up_complete,
    is_updown_closed,
    is_weakly_up_closed,
)
from ordertopo.core.topology import is_discrete, separation_profile
from ordertopo.errors import (
    CapacityExceeded,
    ExpressionSyntaxError,
    PredicateKindMismatch,
    UnknownPredicate,
)

Structure = Union[TopologizedPoset, TopologizedSemilattice]

POSET_KINDS = ("topo_poset", "topo_semilattice")
SEMILATTICE_KINDS = ("topo_semilattice",)


@dataclass(frozen=True)
class Predicate:
    name: str
    kinds: tuple[str, ...]
    fn: Callable[[Structure], bool]
    description: str
    subset_sweep: bool = False  # walks all subsets or chains of the carrier


def _tp(s: Structure) -> TopologizedPoset:
    return s.as_topo_poset if isinstance(s, TopologizedSemilattice) else s


def _p(name: str, fn: Callable[[TopologizedPoset], bool], description: str, sweep: bool = False) -> Predicate:
    return Predicate(name, POSET_KINDS, lambda s: fn(_tp(s)), description, sweep)


def _s(name: str, fn: Callable[[TopologizedSemilattice], bool], description: str) -> Predicate:
    return Predicate(name, SEMILATTICE_KINDS, fn, description)


REGISTRY: dict[str, Predicate] = {
    p.name: p
    for p in (
        _p("complete", is_complete, "directed sets have sup/inf in their closure", sweep=True),
        _p("up_complete", is_up_complete, "up-directed sets have sup in their closure", sweep=True),
        _p("down_complete", is_down_complete, "down-directed sets have inf in their closure", sweep=True),
        _p("up_closed", is_up_closed, "every upper cone is closed"),
        _p("down_closed", is_down_closed, "every lower cone is closed"),
        _p(
            "up_down_closed_pair",
            lambda tp: is_up_closed(tp) and is_down_closed(tp),
            "up_closed and down_closed",
        ),
        _p("updown_closed", is_updown_closed, "every union of the two cones of a point is closed"),
        _p("pospace", is_pospace, "order relation closed in the product square"),
        _p("chain_closed", is_chain_closed, "closure of every chain is a chain", sweep=True),
        _p("weakly_up_closed", is_weakly_up_closed, "closure of each point lies in its upper cone"),
        _p("chain_compact", is_chain_compact, "every closed chain is compact", sweep=True),
        _p("t0", lambda tp: separation_profile(tp.topology).t0, "Kolmogorov"),
        _p("t1", lambda tp: separation_profile(tp.topology).t1, "points are closed"),
        _p("t2", lambda tp: separation_profile(tp.topology).t2, "Hausdorff"),
        _p("discrete", lambda tp: is_discrete(tp.topology), "every subset is open"),
        _s("zar_compact", is_zar_compact, "weak-star topology is compact"),
        _s("sep_cont", is_separately_continuous, "operation separately continuous"),
        _s("joint_cont", is_jointly_continuous, "operation jointly continuous"),
        _s("v_semilattice", is_V_semilattice, "V-semilattice"),
        _s("lawson", is_lawson, "base of open subsemilattices"),
        _s("gdelta_separated", is_gdelta_separated, "points separated by closed subsemilattice intersections"),
    )
}


def evaluate_predicate(name: str, structure: Structure) -> bool:
    """Evaluate one registered predicate.

    Raises:
        UnknownPredicate: ``name`` is not registered
        PredicateKindMismatch: the predicate needs a semilattice
        CapacityExceeded: the carrier is too large for the predicate
    """
    pred = REGISTRY.get(name)
    if pred is None:
        raise UnknownPredicate(name, 0)
    kind = "topo_semilattice" if isinstance(structure, TopologizedSemilattice) else "topo_poset"
    if kind not in pred.kinds:
        raise PredicateKindMismatch(name, 0, kind)
    if pred.subset_sweep and structure.n > CLI_CHAIN_CAP:
        raise CapacityExceeded(f"{name} subset sweep size", CLI_CHAIN_CAP, structure.n)
    return pred.fn(structure)


@dataclass(frozen=True)
class Name:
    name: str
    position: int

    def evaluate(self, structure: Structure, facts: dict[str, bool]) -> bool:
        if self.name not in facts:
            facts[self.name] = evaluate_predicate(self.name, structure)
        return facts[self.name]

    def names(self) -> list["Name"]:
        return [self]

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Not:
    child: "Expr"

    def evaluate(self, structure: Structure, facts: dict[str, bool]) -> bool:
        return not self.child.evaluate(structure, facts)

    def names(self) -> list[Name]:
        return self.child.names()

    def __str__(self) -> str:
        return f"!{self.child}"


@dataclass(frozen=True)
class And:
    children: tuple["Expr", ...]

    def evaluate(self, structure: Structure, facts: dict[str, bool]) -> bool:
        return all(c.evaluate(structure, facts) for c in self.children)

    def names(self) -> list[Name]:
        return [n for c in self.children for n in c.names()]

    def __str__(self) -> str:
        return "(" + " & ".join(str(c) for c in self.children) + ")"


@dataclass(frozen=True)
class Or:
    children: tuple["Expr", ...]

    def evaluate(self, structure: Structure, facts: dict[str, bool]) -> bool:
        return any(c.evaluate(structure, facts) for c in self.children)

    def names(self) -> list[Name]:
        return [n for c in self.children for n in c.names()]

    def __str__(self) -> str:
        return "(" + " | ".join(str(c) for c in self.children) + ")"


Expr = Union[Name, Not, And, Or]


@lru_cache(maxsize=1)
def make_grammar() -> ParserElement:
    ident = Word(alphas + "_", alphanums + "_")
    bang = Suppress(Literal("!"))
    lparen = Suppress(Literal("("))
    rparen = Suppress(Literal(")"))
    amp = Suppress(Literal("&"))
    bar = Suppress(Literal("|"))

    expr = Forward()
    factor = Forward()
    negation = bang + factor
    factor <<= negation | (lparen + expr + rparen) | ident
    term = factor + ZeroOrMore(amp + factor)
    expr <<= term + ZeroOrMore(bar + term)

    ident.set_parse_action(lambda s, loc, toks: Name(toks[0], loc))

    def make_not(s, loc, toks):
        return Not(toks[0])

    def make_op(node):
        def action(s, loc, toks):
            if len(toks) == 1:
                return toks[0]
            return node(tuple(toks))

        return action

    negation.set_parse_action(make_not)
    term.set_parse_action(make_op(And))
    expr.set_parse_action(make_op(Or))
    return expr


def parse_expression(text: str, kind: str | None = None) -> Expr:
    """Parse and validate a predicate expression.

    Raises:
        ExpressionSyntaxError: ``text`` is not in the grammar
        UnknownPredicate: an identifier is not registered
        PredicateKindMismatch: an identifier does not apply to ``kind``
    """
    try:
        tree = make_grammar().parse_string(text, parse_all=True)[0]
    except ParseException as exc:
        raise ExpressionSyntaxError(exc.msg, exc.loc) from exc
    for ref in tree.names():
        pred = REGISTRY.get(ref.name)
        if pred is None:
            raise UnknownPredicate(ref.name, ref.position)
        if kind is not None and kind not in pred.kinds:
            raise PredicateKindMismatch(ref.name, ref.position, kind)
    return tree
