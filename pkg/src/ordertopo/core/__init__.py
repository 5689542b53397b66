"""Core mathematics - no I/O, no enumeration."""

from ordertopo.core.morphisms import Multimorphism, SemilatticeHom, verify_theorem
from ordertopo.core.order import FinitePoset, poset_from_relation
from ordertopo.core.semilattice import (
    Semilattice,
    TopologizedSemilattice,
    semilattice_from_table,
)
from ordertopo.core.topo_poset import TopologizedPoset
from ordertopo.core.topology import FiniteTopology, topology_from_opens, topology_generate

__all__ = [
    "FiniteTopology",
    "FinitePoset",
    "Multimorphism",
    "Semilattice",
    "SemilatticeHom",
    "TopologizedPoset",
    "TopologizedSemilattice",
    "poset_from_relation",
    "semilattice_from_table",
    "topology_from_opens",
    "topology_generate",
    "verify_theorem",
]
