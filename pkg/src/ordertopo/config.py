"""Engine configuration and capacity caps."""

from dataclasses import dataclass

MAX_POINTS = 16  # subsets are 16-bit masks
COVER_ORACLE_MAX_OPENS = 20
CANONICAL_MAX_N = 8
CLI_CHAIN_CAP = 12
GDELTA_MAX_NEIGHBORHOODS = 16

# Per-kind enumeration caps (largest n accepted by ``enumerate``).
ENUM_CAPS: dict[str, int] = {
    "topology": 6,
    "poset": 6,
    "semilattice": 6,
    "topo_poset": 4,
    "topo_semilattice": 4,
    "hom_pair": 3,
    "multimorphism_pair": 3,
}


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for enumeration, search and audit sweeps.

    Every field is deterministic: two runs with equal configs produce
    byte-identical reports regardless of ``workers``.
    """

    workers: int = 1
    budget: int | None = None  # structure count limit for searches
    max_n: int = 3
    samples: int = 100_000  # sampled four-point degeneracy instances
    seed: int = 0
    chunk_size: int = 256
    progress: bool = False
