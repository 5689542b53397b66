"""Homomorphisms, multimorphisms and the image-closedness theorem checks."""

import logging
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Literal

from ordertopo.core.bits import (
    SubsetMask,
    contains,
    full_mask,
    is_subset,
    iter_bits,
)
from ordertopo.core.order import FinitePoset, inf
from ordertopo.core.semilattice import (
    Semilattice,
    TopologizedSemilattice,
    is_gdelta_separated,
    is_jointly_continuous,
    is_separately_continuous,
    is_subsemilattice,
    meet_of_subset,
    subfamily_intersections,
)
from ordertopo.core.topo_poset import (
    IS_CHAIN_FINITE,
    is_complete,
    is_down_complete,
    is_weakly_up_closed,
)
from ordertopo.core.topology import (
    FiniteTopology,
    closed_neighborhoods,
    closed_sets,
    closure,
    is_closed,
    is_open,
    is_T1_closed_set,
    is_T2_closed_set,
    separation_profile,
)
from ordertopo.errors import (
    HypothesisUnmet,
    LemmaViolation,
    NotAHomomorphism,
    OrderTopoError,
    ProfileMismatch,
)

logger = logging.getLogger(__name__)

Profile = Literal["cf", "ct", "multi_T1", "multi_T2", "gdelta", "abscl"]

HOM_PROFILES: tuple[Profile, ...] = ("cf", "ct", "gdelta", "abscl")
MULTI_PROFILES: tuple[Profile, ...] = ("multi_T1", "multi_T2")
PROFILES: tuple[Profile, ...] = ("cf", "ct", "multi_T1", "multi_T2", "gdelta", "abscl")

# Profiles whose conclusion is a proven theorem. ``abscl`` is an open question
# and is only reported.
THEOREM_PROFILES: tuple[Profile, ...] = ("cf", "ct", "multi_T1", "multi_T2", "gdelta")


@dataclass(frozen=True)
class SemilatticeHom:
    """A map X → Y given by its value table."""

    map: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.map[x]

    def image(self) -> SubsetMask:
        result = 0
        for v in self.map:
            result |= 1 << v
        return result

    def preimage(self, mask: SubsetMask) -> SubsetMask:
        result = 0
        for x, v in enumerate(self.map):
            if contains(mask, v):
                result |= 1 << x
        return result

    def as_multimorphism(self) -> "Multimorphism":
        return Multimorphism(values=tuple(1 << v for v in self.map))


@dataclass(frozen=True)
class Multimorphism:
    """A multi-valued map X ⇉ Y; ``values[x]`` is the mask Φ(x) ⊆ Y."""

    values: tuple[SubsetMask, ...]

    def image(self, mask: SubsetMask | None = None) -> SubsetMask:
        """Φ(A) = ⋃ Φ(x) over x in A (all of X by default)."""
        result = 0
        for x, v in enumerate(self.values):
            if mask is None or contains(mask, x):
                result |= v
        return result

    def preimage(self, mask: SubsetMask) -> SubsetMask:
        """Φ⁻¹(F) = {x : Φ(x) ∩ F ≠ ∅}."""
        result = 0
        for x, v in enumerate(self.values):
            if v & mask:
                result |= 1 << x
        return result

    def is_nonempty(self) -> bool:
        return all(self.values)


class HypothesisStatus(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    DEGENERATE = "holds (finite-degenerate)"

    @property
    def ok(self) -> bool:
        return self is not HypothesisStatus.FAILS


def _status(value: bool, degenerate: bool = False) -> HypothesisStatus:
    if not value:
        return HypothesisStatus.FAILS
    return HypothesisStatus.DEGENERATE if degenerate else HypothesisStatus.HOLDS


def homomorphism_violation(h: SemilatticeHom, sx: Semilattice, sy: Semilattice) -> tuple[int, int] | None:
    for x in range(sx.n):
        for y in range(x, sx.n):
            if h.map[sx.op[x][y]] != sy.op[h.map[x]][h.map[y]]:
                return (x, y)
    return None


def is_homomorphism(h: SemilatticeHom, sx: Semilattice, sy: Semilattice) -> bool:
    return homomorphism_violation(h, sx, sy) is None


def is_continuous(h: SemilatticeHom, tx: FiniteTopology, ty: FiniteTopology) -> bool:
    """Preimage of every open set is open."""
    return all(is_open(tx, h.preimage(u)) for u in ty.opens)


def is_monotone(h: SemilatticeHom, px: FinitePoset, py: FinitePoset) -> bool:
    return all(
        py.le(h.map[x], h.map[y]) for x in range(px.n) for y in iter_bits(px.up[x])
    )


@dataclass(frozen=True)
class ImageCheck:
    closed: bool
    witness: int | None = None  # a point of cl(image) outside the image


def _image_check(ty: FiniteTopology, image: SubsetMask) -> ImageCheck:
    if is_closed(ty, image):
        return ImageCheck(closed=True)
    missing = closure(ty, image) & ~image
    return ImageCheck(closed=False, witness=next(iter_bits(missing)))


def image_closed(
    h: SemilatticeHom, tsx: TopologizedSemilattice, tsy: TopologizedSemilattice
) -> ImageCheck:
    return _image_check(tsy.topology, h.image())


@dataclass(frozen=True)
class FiberReport:
    """Internals of the fibre-infimum construction for a point c of Y."""

    c: int
    b_c: int
    h_of_b_c: int
    inf_up_preimage: int | None

    @property
    def holds(self) -> bool:
        return self.h_of_b_c == self.c and self.inf_up_preimage == self.b_c


def hom_inf_fiber(
    h: SemilatticeHom,
    tsx: TopologizedSemilattice,
    tsy: TopologizedSemilattice,
    c: int,
) -> FiberReport:
    """Compute b_c = inf h⁻¹(c) and check h(b_c) = c, b_c = inf h⁻¹(↑c).

    Raises:
        NotAHomomorphism: ``h`` does not preserve the operation
        HypothesisUnmet: h not surjective or not continuous, or Y not
            weakly ↑-closed
        LemmaViolation: one of the two equalities fails
    """
    bad = homomorphism_violation(h, tsx.sl, tsy.sl)
    if bad is not None:
        raise NotAHomomorphism(*bad)
    if h.image() != full_mask(tsy.n):
        raise HypothesisUnmet("h is surjective")
    if not is_continuous(h, tsx.topology, tsy.topology):
        raise HypothesisUnmet("h is continuous")
    if not is_weakly_up_closed(tsy.as_topo_poset):
        raise HypothesisUnmet("Y is weakly up-closed")

    fiber = h.preimage(1 << c)
    b_c = meet_of_subset(tsx.sl, fiber)
    up_preimage = h.preimage(tsy.natural_order.up[c])
    report = FiberReport(
        c=c,
        b_c=b_c,
        h_of_b_c=h.map[b_c],
        inf_up_preimage=inf(tsx.natural_order, up_preimage),
    )
    if not report.holds:
        dump = {"X": tsx, "Y": tsy, "h": h.map, "report": report}
        logger.error("fibre infimum equalities failed: %r", dump)
        raise LemmaViolation("h(b_c) = c and b_c = inf h^-1(up c)", dump)
    return report


def _product_set(sy: Semilattice, a: SubsetMask, b: SubsetMask) -> SubsetMask:
    result = 0
    for p in iter_bits(a):
        for q in iter_bits(b):
            result |= 1 << sy.op[p][q]
    return result


def is_multimorphism(phi: Multimorphism, sx: Semilattice, sy: Semilattice) -> bool:
    """Φ(x)·Φ(y) ⊆ Φ(xy) for all x, y."""
    return all(
        is_subset(_product_set(sy, phi.values[x], phi.values[y]), phi.values[sx.op[x][y]])
        for x in range(sx.n)
        for y in range(x, sx.n)
    )


def is_upper_semicontinuous(phi: Multimorphism, tx: FiniteTopology, ty: FiniteTopology) -> bool:
    """Φ⁻¹(F) is closed for every closed F ⊆ Y."""
    return all(is_closed(tx, phi.preimage(f)) for f in closed_sets(ty))


def is_Ti_multimorphism(phi: Multimorphism, ty: FiniteTopology, i: int) -> bool:
    """Every value Φ(x) is T1-closed (i=1) or T2-closed (i=2)."""
    if i == 1:
        check = is_T1_closed_set
    elif i == 2:
        check = is_T2_closed_set
    else:
        raise OrderTopoError(f"separation index must be 1 or 2, got {i}")
    return all(check(ty, v) for v in phi.values)


@dataclass(frozen=True)
class Verdict:
    profile: Profile
    hypotheses: dict[str, HypothesisStatus]
    conclusion: bool
    witness: int | None = None

    @property
    def hypotheses_hold(self) -> bool:
        return all(s.ok for s in self.hypotheses.values())

    @property
    def consistent(self) -> bool:
        return not (self.hypotheses_hold and not self.conclusion)

    def to_dict(self) -> dict:
        return {
            "profile": self.profile,
            "hypotheses": {k: v.value for k, v in self.hypotheses.items()},
            "conclusion": self.conclusion,
            "consistent": self.consistent,
            "witness": self.witness,
        }


# Facts about X or Y alone, memoized per structure.


@lru_cache(maxsize=8192)
def _complete(ts: TopologizedSemilattice) -> HypothesisStatus:
    return _status(is_complete(ts.as_topo_poset), degenerate=True)


@lru_cache(maxsize=8192)
def _hausdorff(ts: TopologizedSemilattice) -> HypothesisStatus:
    return _status(separation_profile(ts.topology).t2)


@lru_cache(maxsize=8192)
def _semitopological(ts: TopologizedSemilattice) -> HypothesisStatus:
    return _status(is_separately_continuous(ts))


@lru_cache(maxsize=8192)
def _topological(ts: TopologizedSemilattice) -> HypothesisStatus:
    return _status(is_jointly_continuous(ts))


@lru_cache(maxsize=8192)
def _gdelta(ts: TopologizedSemilattice) -> HypothesisStatus:
    return _status(is_gdelta_separated(ts))


def verify_theorem(
    profile: Profile,
    tsx: TopologizedSemilattice,
    tsy: TopologizedSemilattice,
    morphism: SemilatticeHom | Multimorphism,
) -> Verdict:
    """Evaluate the hypotheses and the image-closedness conclusion of a theorem.

    Raises:
        ProfileMismatch: unknown profile, or morphism of the wrong kind
    """
    hyps: dict[str, HypothesisStatus] = {}
    if profile in HOM_PROFILES:
        if not isinstance(morphism, SemilatticeHom):
            raise ProfileMismatch(profile, type(morphism).__name__)
        hyps["homomorphism"] = _status(is_homomorphism(morphism, tsx.sl, tsy.sl))
        if profile == "cf":
            hyps["X chain-finite"] = _status(IS_CHAIN_FINITE, degenerate=True)
            hyps["Y Hausdorff"] = _hausdorff(tsy)
            hyps["Y semitopological"] = _semitopological(tsy)
        else:
            hyps["h continuous"] = _status(is_continuous(morphism, tsx.topology, tsy.topology))
            hyps["X complete"] = _complete(tsx)
            if profile == "ct":
                hyps["Y Hausdorff"] = _hausdorff(tsy)
                hyps["Y topological"] = _topological(tsy)
            elif profile == "gdelta":
                hyps["Y Gdelta-separated"] = _gdelta(tsy)
                hyps["Y semitopological"] = _semitopological(tsy)
            else:
                hyps["Y Hausdorff"] = _hausdorff(tsy)
                hyps["Y semitopological"] = _semitopological(tsy)
        image = morphism.image()
    elif profile in MULTI_PROFILES:
        if not isinstance(morphism, Multimorphism):
            raise ProfileMismatch(profile, type(morphism).__name__)
        hyps["multimorphism"] = _status(is_multimorphism(morphism, tsx.sl, tsy.sl))
        if profile == "multi_T1":
            hyps["T1-valued"] = _status(is_Ti_multimorphism(morphism, tsy.topology, 1))
            hyps["X chain-finite"] = _status(IS_CHAIN_FINITE, degenerate=True)
        else:
            hyps["T2-valued"] = _status(is_Ti_multimorphism(morphism, tsy.topology, 2))
            hyps["upper semicontinuous"] = _status(
                is_upper_semicontinuous(morphism, tsx.topology, tsy.topology)
            )
            hyps["X complete"] = _complete(tsx)
        hyps["Y topological"] = _topological(tsy)
        image = morphism.image()
    else:
        raise ProfileMismatch(str(profile), type(morphism).__name__)

    check = _image_check(tsy.topology, image)
    verdict = Verdict(profile=profile, hypotheses=hyps, conclusion=check.closed, witness=check.witness)
    if not verdict.consistent and profile in THEOREM_PROFILES:
        logger.error("theorem %s contradicted: X=%r Y=%r morphism=%r", profile, tsx, tsy, morphism)
    return verdict


@dataclass(frozen=True)
class ClaimReport:
    """Result of checking that Z meets every admissible intersection around y."""

    checked: int
    violations: list[tuple[int, tuple[SubsetMask, ...]]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_gdelta_claim(
    tsx: TopologizedSemilattice, tsy: TopologizedSemilattice, h: SemilatticeHom
) -> ClaimReport:
    """For Z = h(X), each y in cl(Z) and each family of closed neighborhoods
    of y whose intersection is a subsemilattice, check Z ∩ ⋂family ≠ ∅.

    Families are represented by their intersections: every family with a
    given intersection I is contained in the family of all closed
    neighborhoods containing I, which has the same intersection.

    Raises:
        HypothesisUnmet: h is not a continuous homomorphism
    """
    if not is_homomorphism(h, tsx.sl, tsy.sl):
        raise HypothesisUnmet("h is a homomorphism")
    if not is_continuous(h, tsx.topology, tsy.topology):
        raise HypothesisUnmet("h is continuous")
    z = h.image()
    checked = 0
    violations = []
    for y in iter_bits(closure(tsy.topology, z)):
        nbhds = closed_neighborhoods(tsy.topology, y)
        for inter in subfamily_intersections(nbhds, full_mask(tsy.n)):
            meet = int(inter)
            if not is_subsemilattice(tsy.sl, meet):
                continue
            checked += 1
            if z & meet == 0:
                family = tuple(f for f in nbhds if is_subset(meet, f))
                violations.append((y, family))
    if violations:
        logger.error("intersection claim failed for h=%r: %r", h.map, violations)
    return ClaimReport(checked=checked, violations=violations)


@dataclass(frozen=True)
class TransferReport:
    """Whether completeness passes from X to Y along a hom onto a weakly ↑-closed Y."""

    applicable: bool
    x_down_complete: bool = False
    y_down_complete: bool = False
    x_complete: bool = False
    y_complete: bool = False

    @property
    def consistent(self) -> bool:
        if not self.applicable:
            return True
        return (not self.x_down_complete or self.y_down_complete) and (
            not self.x_complete or self.y_complete
        )


def completeness_transfer(
    h: SemilatticeHom, tsx: TopologizedSemilattice, tsy: TopologizedSemilattice
) -> TransferReport:
    applicable = (
        is_homomorphism(h, tsx.sl, tsy.sl)
        and h.image() == full_mask(tsy.n)
        and is_continuous(h, tsx.topology, tsy.topology)
        and is_weakly_up_closed(tsy.as_topo_poset)
    )
    if not applicable:
        return TransferReport(applicable=False)
    return TransferReport(
        applicable=True,
        x_down_complete=is_down_complete(tsx.as_topo_poset),
        y_down_complete=is_down_complete(tsy.as_topo_poset),
        x_complete=is_complete(tsx.as_topo_poset),
        y_complete=is_complete(tsy.as_topo_poset),
    )
