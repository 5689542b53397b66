"""Global audits over enumerated structures.

Each section walks a deterministic stream in chunks, tallies per-chunk
results (possibly in worker processes) and merges them in stream order.
Checks count violations of proven statements and must read 0; findings
report answers to questions that are open at finite scale.
"""

import json
import logging
from collections import Counter
from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass, field
from typing import Any

from ordertopo.config import ENUM_CAPS, EngineConfig
from ordertopo.core.bits import full_mask, iter_bits
from ordertopo.core.morphisms import (
    HOM_PROFILES,
    MULTI_PROFILES,
    THEOREM_PROFILES,
    completeness_transfer,
    hom_inf_fiber,
    is_continuous,
    is_multimorphism,
    verify_gdelta_claim,
    verify_theorem,
)
from ordertopo.core.semilattice import (
    TopologizedSemilattice,
    continuity_profile,
    is_gdelta_separated,
    is_lawson,
    is_lawson_literal,
    is_separately_continuous,
    is_V_semilattice,
    is_zar_compact,
    product_semilattice,
)
from ordertopo.core.topo_poset import (
    TopologizedPoset,
    chain_complete_equivalent,
    closed_subsets,
    closedness_profile,
    is_chain_compact,
    is_complete,
    is_pospace,
    is_up_closed,
    poset_is_complete,
    product_topo_poset,
    subposet,
)
from ordertopo.core.topology import is_discrete, separation_profile
from ordertopo.engine.canonical import canonical_form
from ordertopo.engine.enumeration import (
    EnumSpec,
    HomPair,
    MultimorphismPair,
    enumerate_structures,
    sample_structures,
)
from ordertopo.engine.parallel import map_chunks
from ordertopo.errors import CapacityExceeded, LemmaViolation
from ordertopo.formats import describe

logger = logging.getLogger(__name__)

SWEEP_MAX_N = 3  # exhaustive semilattice and morphism sweeps
PRODUCT_FACTOR_MAX_N = 2


@dataclass
class Tally:
    """Mergeable per-chunk counts plus the first example seen for each key."""

    checked: int = 0
    counts: Counter = field(default_factory=Counter)
    examples: dict[str, Any] = field(default_factory=dict)

    def hit(self, key: str, example: Any = None) -> None:
        self.counts[key] += 1
        if example is not None:
            self.examples.setdefault(key, example)

    def merge(self, other: "Tally") -> "Tally":
        self.checked += other.checked
        self.counts.update(other.counts)
        for key, value in other.examples.items():
            self.examples.setdefault(key, value)
        return self


@dataclass(frozen=True)
class Section:
    name: str
    checked: int
    checks: tuple[tuple[str, int], ...]
    findings: tuple[tuple[str, str], ...] = ()

    @property
    def violations(self) -> int:
        return sum(count for _, count in self.checks)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "checked": self.checked,
            "violations": self.violations,
            "checks": dict(self.checks),
            "findings": dict(self.findings),
        }


@dataclass(frozen=True)
class AuditReport:
    max_n: int
    sections: tuple[Section, ...]

    @property
    def violations(self) -> int:
        return sum(s.violations for s in self.sections)

    def section(self, name: str) -> Section:
        return next(s for s in self.sections if s.name == name)

    def to_dict(self) -> dict[str, Any]:
        return {
            "max_n": self.max_n,
            "violations": self.violations,
            "sections": [s.to_dict() for s in self.sections],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def render_text(self) -> str:
        lines = [f"audit max_n={self.max_n}"]
        for s in self.sections:
            lines.append(f"[{s.name}] checked: {s.checked} violations: {s.violations}")
            lines += [f"  {label}: {count}" for label, count in s.checks]
            lines += [f"  {label}: {status}" for label, status in s.findings]
        lines.append(f"total violations: {self.violations}")
        return "\n".join(lines) + "\n"


def _run(fn: Callable[[list], Tally], items: Iterable, config: EngineConfig, desc: str) -> Tally:
    total = Tally()
    for _, part in map_chunks(fn, items, config, desc=desc):
        total.merge(part)
    return total


def _stream(kind: str, max_n: int, modulo_iso: bool = False) -> Iterator:
    for n in range(1, max_n + 1):
        yield from enumerate_structures(EnumSpec(kind, n, modulo_iso=modulo_iso))


def _witness_status(example: Any, max_n: int) -> str:
    if example is None:
        return f"none up to n={max_n}"
    rep = canonical_form(example).representative
    return f"witness n={rep.n}: {describe(rep)}"


# -- implications --------------------------------------------------------

IMPLICATIONS: tuple[tuple[str, str, str], ...] = (
    ("pospace => up_down_closed", "pospace", "up_down_closed"),
    ("up_down_closed => updown_closed", "up_down_closed", "updown_closed"),
    ("updown_closed => chain_closed", "updown_closed", "chain_closed"),
    ("up_closed | t1 => weakly_up_closed", "up_closed_or_t1", "weakly_up_closed"),
    ("up_down_closed => (complete <=> chain_compact)", "up_down_closed", "complete_iff_chain_compact"),
)

# (label, stronger, weaker): a witness satisfies the weaker flag only.
STRICTNESS: tuple[tuple[str, str, str], ...] = (
    ("pospace <= up_down_closed", "pospace", "up_down_closed"),
    ("up_down_closed <= updown_closed", "up_down_closed", "updown_closed"),
    ("updown_closed <= chain_closed", "updown_closed", "chain_closed"),
    ("up_closed | t1 <= weakly_up_closed", "up_closed_or_t1", "weakly_up_closed"),
)


def implication_flags(tp: TopologizedPoset) -> dict[str, bool]:
    profile = closedness_profile(tp)
    t1 = separation_profile(tp.topology).t1
    return {
        "pospace": bool(profile.pospace),
        "up_down_closed": profile.up_down_closed,
        "updown_closed": profile.updown_closed,
        "chain_closed": profile.chain_closed,
        "weakly_up_closed": profile.weakly_up_closed,
        "up_closed_or_t1": profile.up_closed or t1,
        "complete_iff_chain_compact": is_complete(tp) == is_chain_compact(tp),
    }


def _implications_chunk(chunk: list[TopologizedPoset]) -> Tally:
    tally = Tally()
    for tp in chunk:
        tally.checked += 1
        flags = implication_flags(tp)
        for label, a, b in IMPLICATIONS:
            if flags[a] and not flags[b]:
                tally.hit(label, tp)
        for label, strong, weak in STRICTNESS:
            if flags[weak] and not flags[strong]:
                tally.hit("strict " + label, tp)
    return tally


def implication_audit(max_n: int, config: EngineConfig | None = None) -> Section:
    """Check the closedness implications on every topologized poset with n <= max_n.

    Raises:
        CapacityExceeded: ``max_n`` above the topologized-poset cap
    """
    config = config or EngineConfig()
    if max_n > ENUM_CAPS["topo_poset"]:
        raise CapacityExceeded("implication audit size", ENUM_CAPS["topo_poset"], max_n)
    tally = _run(_implications_chunk, _stream("topo_poset", max_n), config, "implications")
    for label, *_ in IMPLICATIONS:
        if tally.counts[label]:
            logger.error("implication %s violated by %r", label, tally.examples[label])
    return Section(
        name="implications",
        checked=tally.checked,
        checks=tuple((label, tally.counts[label]) for label, *_ in IMPLICATIONS),
        findings=tuple(
            ("strict " + label, _witness_status(tally.examples.get("strict " + label), max_n))
            for label, *_ in STRICTNESS
        ),
    )


# -- finite degeneracy ---------------------------------------------------

def _degeneracy_chunk(chunk: list) -> Tally:
    tally = Tally()
    for s in chunk:
        tally.checked += 1
        if isinstance(s, TopologizedSemilattice):
            if not is_zar_compact(s):
                tally.hit("zar_compact", s)
            continue
        if not is_complete(s):
            tally.hit("complete", s)
        if not chain_complete_equivalent(s):
            tally.hit("chain_complete", s)
        if not is_chain_compact(s):
            tally.hit("chain_compact", s)
        if not poset_is_complete(s.poset):
            tally.hit("order complete", s)
    return tally


DEGENERACY_CHECKS = ("complete", "chain_complete", "chain_compact", "order complete", "zar_compact")


def _degeneracy_items(max_n: int, config: EngineConfig) -> Iterator:
    exhaustive = min(max_n, SWEEP_MAX_N)
    yield from _stream("topo_poset", exhaustive)
    yield from _stream("topo_semilattice", exhaustive)
    if max_n > SWEEP_MAX_N and config.samples:
        n = SWEEP_MAX_N + 1
        yield from sample_structures("topo_poset", n, config.samples, config.seed)
        yield from sample_structures("topo_semilattice", n, config.samples, config.seed + 1)


def degeneracy_audit(max_n: int, config: EngineConfig | None = None) -> Section:
    config = config or EngineConfig()
    tally = _run(_degeneracy_chunk, _degeneracy_items(max_n, config), config, "degeneracy")
    findings = ()
    if max_n > SWEEP_MAX_N and config.samples:
        findings = (("sampled four-point instances", f"{2 * config.samples} (seed {config.seed})"),)
    return Section(
        name="degeneracy",
        checked=tally.checked,
        checks=tuple((key, tally.counts[key]) for key in DEGENERACY_CHECKS),
        findings=findings,
    )


# -- topologized semilattices --------------------------------------------

SEMILATTICE_CHECKS = (
    "sep_cont <=> joint_cont",
    "up_closed & v_semilattice => pospace",
    "lawson fast path == literal",
    "gdelta_separated <=> discrete",
    "t2 => gdelta_separated",
)


def _semilattice_chunk(chunk: list[TopologizedSemilattice]) -> Tally:
    tally = Tally()
    for ts in chunk:
        tally.checked += 1
        tp = ts.as_topo_poset
        continuity = continuity_profile(ts)
        if continuity.separately_continuous != continuity.jointly_continuous:
            tally.hit("sep_cont <=> joint_cont", ts)
        v = is_V_semilattice(ts)
        pospace = is_pospace(tp)
        if v:
            tally.counts["v_semilattices"] += 1
        if is_up_closed(tp) and v and not pospace:
            tally.hit("up_closed & v_semilattice => pospace", ts)
        lawson = is_lawson(ts)
        if lawson:
            tally.counts["lawson"] += 1
        if lawson != is_lawson_literal(ts):
            tally.hit("lawson fast path == literal", ts)
        gdelta = is_gdelta_separated(ts)
        if gdelta != is_discrete(ts.topology):
            tally.hit("gdelta_separated <=> discrete", ts)
        t2 = separation_profile(ts.topology).t2
        if t2 and not gdelta:
            tally.hit("t2 => gdelta_separated", ts)
        if t2 and continuity.separately_continuous and not pospace:
            tally.hit("hausdorff semitopological with non-closed order", ts)
    return tally


def semilattice_audit(max_n: int, config: EngineConfig | None = None) -> Section:
    config = config or EngineConfig()
    size = min(max_n, SWEEP_MAX_N)
    tally = _run(_semilattice_chunk, _stream("topo_semilattice", size), config, "semilattices")
    open_label = "hausdorff semitopological with non-closed order"
    return Section(
        name="semilattices",
        checked=tally.checked,
        checks=tuple((key, tally.counts[key]) for key in SEMILATTICE_CHECKS),
        findings=(
            ("v_semilattices", str(tally.counts["v_semilattices"])),
            ("lawson", str(tally.counts["lawson"])),
            (open_label, _witness_status(tally.examples.get(open_label), size)),
        ),
    )


# -- preservation --------------------------------------------------------

PRESERVATION_CHECKS = (
    "complete product",
    "complete closed subposet",
    "sep_cont product",
)


def _preservation_chunk(chunk: list[tuple[str, Any]]) -> Tally:
    tally = Tally()
    for tag, item in chunk:
        tally.checked += 1
        if tag == "tp_pair":
            if not is_complete(product_topo_poset(*item)):
                tally.hit("complete product", item)
        elif tag == "tp":
            for carrier in closed_subsets(item):
                if carrier and not is_complete(subposet(item, carrier)):
                    tally.hit("complete closed subposet", (item, carrier))
        else:
            if all(is_separately_continuous(t) for t in item) and not is_separately_continuous(
                product_semilattice(*item)
            ):
                tally.hit("sep_cont product", item)
    return tally


def _preservation_items(max_n: int) -> Iterator[tuple[str, Any]]:
    factor = min(max_n, PRODUCT_FACTOR_MAX_N)
    tps = list(_stream("topo_poset", factor))
    for a in tps:
        for b in tps:
            yield "tp_pair", (a, b)
    for tp in _stream("topo_poset", min(max_n, SWEEP_MAX_N)):
        yield "tp", tp
    tss = list(_stream("topo_semilattice", factor))
    for a in tss:
        for b in tss:
            yield "ts_pair", (a, b)


def preservation_audit(max_n: int, config: EngineConfig | None = None) -> Section:
    config = config or EngineConfig()
    tally = _run(_preservation_chunk, _preservation_items(max_n), config, "preservation")
    return Section(
        name="preservation",
        checked=tally.checked,
        checks=tuple((key, tally.counts[key]) for key in PRESERVATION_CHECKS),
    )


# -- theorem sweeps ------------------------------------------------------

def _hom_chunk(chunk: list[HomPair]) -> Tally:
    tally = Tally()
    for pair in chunk:
        x, y, h = pair.x, pair.y, pair.h
        tally.checked += 1
        for profile in HOM_PROFILES:
            _tally_verdict(tally, profile, "hom", verify_theorem(profile, x, y, h), pair)
        if not is_multimorphism(h.as_multimorphism(), x.sl, y.sl):
            tally.hit("single-valued multimorphism", pair)
        continuous = is_continuous(h, x.topology, y.topology)
        if continuous:
            report = verify_gdelta_claim(x, y, h)
            tally.counts["gdelta claim families"] += report.checked
            if not report.ok:
                tally.hit("gdelta claim", pair)
            if not completeness_transfer(h, x, y).consistent:
                tally.hit("completeness transfer", pair)
        if continuous and h.image() == full_mask(y.n) and _weakly_up_closed(y):
            for c in iter_bits(full_mask(y.n)):
                tally.counts["fibres"] += 1
                try:
                    hom_inf_fiber(h, x, y, c)
                except LemmaViolation:
                    tally.hit("fibre infimum", pair)
    return tally


def _weakly_up_closed(ts: TopologizedSemilattice) -> bool:
    return closedness_profile(ts.as_topo_poset).weakly_up_closed


def _multi_chunk(chunk: list[MultimorphismPair]) -> Tally:
    tally = Tally()
    for pair in chunk:
        tally.checked += 1
        modes = ("all", "nonempty") if pair.phi.is_nonempty() else ("all",)
        for profile in MULTI_PROFILES:
            verdict = verify_theorem(profile, pair.x, pair.y, pair.phi)
            for mode in modes:
                _tally_verdict(tally, profile, mode, verdict, pair)
    return tally


def _tally_verdict(tally: Tally, profile: str, mode: str, verdict, pair: Any) -> None:
    tally.counts[f"{profile} {mode} checked"] += 1
    if not verdict.consistent:
        tally.hit(f"{profile} {mode} inconsistent", pair)
    if not verdict.hypotheses_hold and not verdict.conclusion:
        tally.hit(f"{profile} {mode} load-bearing", pair)


def _describe_pair(pair: Any) -> str:
    if pair is None:
        return "none"
    morphism = pair.h.map if isinstance(pair, HomPair) else pair.phi.values
    return f"X[{describe(pair.x)}] Y[{describe(pair.y)}] map={list(morphism)}"


def theorem_audit(max_n: int, config: EngineConfig | None = None) -> Section:
    """Sweep the image-closedness theorems over morphism pairs.

    X and Y range over topologized semilattices up to isomorphism; every
    homomorphism and every multimorphism between the representatives is
    checked.
    """
    config = config or EngineConfig()
    size = min(max_n, SWEEP_MAX_N)
    homs = _run(_hom_chunk, _pair_stream("hom_pair", size), config, "homomorphisms")
    multis = _run(_multi_chunk, _pair_stream("multimorphism_pair", size), config, "multimorphisms")

    checks: list[tuple[str, int]] = []
    findings: list[tuple[str, str]] = [("counted over", "pairs of isomorphism-class representatives")]
    runs = [(p, "hom", homs) for p in HOM_PROFILES]
    runs += [(p, mode, multis) for p in MULTI_PROFILES for mode in ("all", "nonempty")]
    for profile, mode, tally in runs:
        key = f"{profile} {mode}"
        if profile in THEOREM_PROFILES:
            checks.append((f"{key} inconsistent", tally.counts[f"{key} inconsistent"]))
        else:
            findings.append(
                (f"{key} counterexamples", _describe_pair(tally.examples.get(f"{key} inconsistent")))
            )
        findings.append((f"{key} checked", str(tally.counts[f"{key} checked"])))
        bearing = f"{key} load-bearing"
        findings.append(
            (bearing, f"{tally.counts[bearing]}; first: {_describe_pair(tally.examples.get(bearing))}")
        )
    for label in ("single-valued multimorphism", "gdelta claim", "completeness transfer", "fibre infimum"):
        checks.append((label, homs.counts[label]))
    findings.append(("fibres checked", str(homs.counts["fibres"])))
    findings.append(("gdelta claim families", str(homs.counts["gdelta claim families"])))
    return Section(
        name="theorems",
        checked=homs.checked + multis.checked,
        checks=tuple(checks),
        findings=tuple(findings),
    )


def _pair_stream(kind: str, size: int) -> Iterator:
    for n_x in range(1, size + 1):
        for n_y in range(1, size + 1):
            yield from enumerate_structures(EnumSpec(kind, n_x, n_y=n_y, modulo_iso=True))


# -- driver --------------------------------------------------------------

AUDITS: dict[str, Callable[[int, EngineConfig], Section]] = {
    "implications": implication_audit,
    "degeneracy": degeneracy_audit,
    "semilattices": semilattice_audit,
    "preservation": preservation_audit,
    "theorems": theorem_audit,
}


def run_audit(config: EngineConfig | None = None, sections: Iterable[str] | None = None) -> AuditReport:
    """Run the named audit sections (all by default) at ``config.max_n``."""
    config = config or EngineConfig()
    names = list(sections) if sections is not None else list(AUDITS)
    built = []
    for name in names:
        logger.info("audit section %s (max_n=%d)", name, config.max_n)
        built.append(AUDITS[name](config.max_n, config))
    report = AuditReport(max_n=config.max_n, sections=tuple(built))
    if report.violations:
        logger.error("audit found %d violations", report.violations)
    return report
