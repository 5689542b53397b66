"""Enumeration, canonical forms, predicates, search, audits and oracles."""

from ordertopo.engine.audit import AuditReport, run_audit
from ordertopo.engine.canonical import CanonicalForm, canonical_form, is_isomorphic
from ordertopo.engine.enumeration import EnumSpec, count, enumerate_structures
from ordertopo.engine.oracles import OracleResult, run_oracle
from ordertopo.engine.predicates import REGISTRY, evaluate_predicate, parse_expression
from ordertopo.engine.search import SearchResult, find_all_witnesses, find_witness

__all__ = [
    "AuditReport",
    "CanonicalForm",
    "EnumSpec",
    "OracleResult",
    "REGISTRY",
    "SearchResult",
    "canonical_form",
    "count",
    "enumerate_structures",
    "evaluate_predicate",
    "find_all_witnesses",
    "find_witness",
    "is_isomorphic",
    "parse_expression",
    "run_audit",
    "run_oracle",
]
