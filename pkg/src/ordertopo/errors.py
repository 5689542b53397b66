"""Exception hierarchy.

Every error is a ``ValueError`` so callers that only guard against bad input
keep working. Errors carry their witness as attributes for CLI diagnostics.
"""

from typing import Any


class OrderTopoError(ValueError):
    """Base class for all ordertopo errors."""


class AxiomViolation(OrderTopoError):
    """A structure failed one of its defining axioms."""

    def __init__(self, axiom: str, witness: Any, message: str | None = None) -> None:
        self.axiom = axiom
        self.witness = witness
        super().__init__(message or f"{axiom} violated by {witness!r}")


class NotATopology(AxiomViolation):
    """Open family misses ∅/X or is not closed under union/intersection."""

    def __init__(self, reason: str, pair: tuple[int, ...] | None = None) -> None:
        self.reason = reason
        self.pair = pair
        detail = reason if pair is None else f"{reason}: {pair!r}"
        super().__init__("topology", pair, f"not a topology ({detail})")


class NotAntisymmetric(AxiomViolation):
    def __init__(self, cycle: tuple[int, int]) -> None:
        self.cycle = cycle
        super().__init__(
            "antisymmetry",
            cycle,
            f"relation is not antisymmetric: {cycle[0]} <= {cycle[1]} <= {cycle[0]}",
        )


class NotIdempotent(AxiomViolation):
    def __init__(self, x: int, value: int) -> None:
        super().__init__("idempotency", (x,), f"op[{x}][{x}] = {value}, expected {x}")


class NotCommutative(AxiomViolation):
    def __init__(self, x: int, y: int) -> None:
        super().__init__("commutativity", (x, y), f"op[{x}][{y}] != op[{y}][{x}]")


class NotAssociative(AxiomViolation):
    def __init__(self, x: int, y: int, z: int) -> None:
        super().__init__(
            "associativity", (x, y, z), f"(x*y)*z != x*(y*z) for triple {(x, y, z)}"
        )


class NotAHomomorphism(AxiomViolation):
    def __init__(self, x: int, y: int) -> None:
        super().__init__("homomorphism", (x, y), f"h({x}*{y}) != h({x})*h({y})")


class CapacityExceeded(OrderTopoError):
    """A construction or enumeration would exceed a documented cap."""

    def __init__(self, what: str, limit: int, got: int) -> None:
        self.what = what
        self.limit = limit
        self.got = got
        super().__init__(f"{what}: {got} exceeds the cap of {limit}")


class OracleBudgetExceeded(CapacityExceeded):
    def __init__(self, opens: int, limit: int) -> None:
        super().__init__("cover oracle open count", limit, opens)


class BudgetExceeded(CapacityExceeded):
    def __init__(self, budget: int) -> None:
        super().__init__("search budget", budget, budget + 1)


class EmptyCarrier(OrderTopoError):
    def __init__(self) -> None:
        super().__init__("subspace carrier must be nonempty")


class EmptySet(OrderTopoError):
    def __init__(self, operation: str) -> None:
        self.operation = operation
        super().__init__(f"{operation} requires a nonempty set")


class NotDirected(OrderTopoError):
    def __init__(self, mask: int, direction: str) -> None:
        self.mask = mask
        self.direction = direction
        super().__init__(f"set {mask:#x} is not {direction}-directed")


class ChoiceOutOfBounds(OrderTopoError):
    def __init__(self, pair: tuple[int, int], value: int) -> None:
        self.pair = pair
        self.value = value
        super().__init__(f"choice f{pair} = {value} is not an upper bound of the pair")


class HypothesisUnmet(OrderTopoError):
    def __init__(self, hypothesis: str) -> None:
        self.hypothesis = hypothesis
        super().__init__(f"hypothesis not met: {hypothesis}")


class LemmaViolation(OrderTopoError):
    """A proven statement failed on a concrete instance. Never expected."""

    def __init__(self, statement: str, dump: dict[str, Any]) -> None:
        self.statement = statement
        self.dump = dump
        super().__init__(f"{statement} failed on {dump!r}")


class ProfileMismatch(OrderTopoError):
    def __init__(self, profile: str, morphism: str) -> None:
        self.profile = profile
        super().__init__(f"profile {profile!r} does not accept a {morphism}")


class UnknownPredicate(OrderTopoError):
    def __init__(self, name: str, position: int) -> None:
        self.name = name
        self.position = position
        super().__init__(f"unknown predicate {name!r} at position {position}")


class ExpressionSyntaxError(OrderTopoError):
    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"syntax error at position {position}: {message}")


class StructureParseError(OrderTopoError):
    def __init__(self, message: str, position: int | None = None) -> None:
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"invalid structure file{where}: {message}")


class ValidationError(OrderTopoError):
    """A structure file parsed but describes an invalid structure."""

    def __init__(self, cause: AxiomViolation) -> None:
        self.cause = cause
        super().__init__(str(cause))


class PredicateKindMismatch(OrderTopoError):
    """A registered predicate does not apply to the structure kind searched."""

    def __init__(self, name: str, position: int, kind: str) -> None:
        self.name = name
        self.position = position
        self.kind = kind
        super().__init__(f"predicate {name!r} at position {position} does not apply to {kind}")
