"""
🏅 CERTIFICATES
===============
Cordiality reports for finite products and continuum verdicts for a single
bonding relation.

Routes tried by certify_continuum, in order:
  0. not surjective               -> REJECTED(NOT_SURJECTIVE)
  1. disconnected graph           -> DISCONNECTED(2, count)
  2. continuum-valued relation    -> CERTIFIED_ALL_N
  3. decomposition + idempotence  -> CERTIFIED_ALL_N
  4. continuum-valued inverse     -> CERTIFIED_ALL_N
  5. decomposition on the inverse -> CERTIFIED_ALL_N
  6. finite-stage connectivity    -> DISCONNECTED(n, count) or CONNECTED_UP_TO_N(max_n)
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations
from typing import Iterable, List, Optional, Sequence, Tuple

from core.errors import ToolkitError
from core.polytopes import Cell
from core.relation import (Relation, graph_components, inverse, is_continuum_valued,
                           is_idempotent, is_surjective, check_decomposition)
from core.verdict import Verdict, VerdictKind, witness_list
from .mahavier_engine import (ChainSystem, GSet, Semantics, build_gset, gset_connected,
                              gset_difference_point, project_gset)

logger = logging.getLogger(__name__)


class CordialStatus(str, Enum):
    EQUAL = "EQUAL"
    STRICT_SUBSET = "STRICT_SUBSET"


@dataclass(frozen=True)
class CordialityEntry:
    subset: Tuple[int, ...]
    status: CordialStatus
    witness: Optional[Tuple] = None


@dataclass(frozen=True)
class CordialityReport:
    relation: str
    n: int
    entries: Tuple[CordialityEntry, ...] = field(default_factory=tuple)

    @property
    def all_equal(self) -> bool:
        return all(entry.status is CordialStatus.EQUAL for entry in self.entries)

    def entry(self, subset: Sequence[int]) -> CordialityEntry:
        subset = tuple(subset)
        for entry in self.entries:
            if entry.subset == subset:
                return entry
        raise KeyError(subset)


def proper_subsets(n: int) -> List[Tuple[int, ...]]:
    """All proper nonempty coordinate subsets of 1..n, by size then lexicographically"""
    return [subset for size in range(1, n) for subset in combinations(range(1, n + 1), size)]


def direct_gset(s: ChainSystem, subset: Sequence[int]) -> GSet:
    subset = tuple(subset)
    if len(subset) == 1:
        return GSet(1, (Cell.box(1),), None, Semantics.ALL_PAIRS)
    return build_gset(s.restrict(subset), Semantics.ALL_PAIRS)


def cordiality_report(f: Relation, n: int, subsets: Optional[Iterable[Sequence[int]]] = None,
                      lp_pruning: bool = False) -> CordialityReport:
    """Compare projections of K(n) with the G-sets built directly on each sub-chain"""
    if n < 2:
        raise ToolkitError(f"❌ Cordiality needs n >= 2, got {n}")
    chain = ChainSystem.single_function(f, n)
    product = build_gset(chain, Semantics.CONSECUTIVE)
    chosen = proper_subsets(n) if subsets is None else [tuple(sorted(set(s))) for s in subsets]
    entries = []
    for subset in chosen:
        if not subset or subset[0] < 1 or subset[-1] > n:
            raise ToolkitError(f"❌ Subset {list(subset)} is not inside 1..{n}")
        projection = project_gset(product, subset, lp_pruning)
        witness = gset_difference_point(direct_gset(chain, subset), projection)
        status = CordialStatus.EQUAL if witness is None else CordialStatus.STRICT_SUBSET
        entries.append(CordialityEntry(subset, status, witness))
        logger.debug(f"🔍 Subset {list(subset)}: {status.value}")
    report = CordialityReport(f.name, n, tuple(entries))
    logger.info(f"{'✅' if report.all_equal else '⚠️'} Cordiality of {f.name} at n={n}: "
                f"{sum(e.status is CordialStatus.EQUAL for e in entries)}/{len(entries)} subsets equal")
    return report


def _certified(route: str, reason: str) -> Verdict:
    logger.info(f"✅ CERTIFIED_ALL_N via {route}")
    return Verdict(VerdictKind.CERTIFIED_ALL_N, route, reason)


def _structural_routes(f: Relation, groups: Optional[Sequence[Sequence[int]]],
                       suffix: str = "") -> Optional[Verdict]:
    if is_continuum_valued(f):
        return _certified(f"continuum-valued route{suffix}",
                          "every value is an interval and the graph is connected")
    if groups is not None and is_idempotent(f):
        decomposition = check_decomposition(f, groups)
        if decomposition.is_certificate:
            return _certified(f"decomposition route{suffix}",
                              f"idempotent, {decomposition.reason}")
        logger.info(f"⚠️ Decomposition not accepted: {decomposition.reason}")
    return None


def certify_continuum(f: Relation, max_n: int = 5, decomposition: Optional[Sequence[Sequence[int]]] = None,
                      max_workers: int = 4, parallel_threshold: int = 64) -> Verdict:
    if max_n < 2:
        raise ToolkitError(f"❌ max-n must be at least 2, got {max_n}")
    surjective = is_surjective(f)
    if not surjective:
        return Verdict(VerdictKind.REJECTED, "surjectivity check", "NOT_SURJECTIVE",
                       witnesses=witness_list(uncovered_y=surjective.witness))

    components = graph_components(f)
    if components.count > 1:
        logger.info(f"❌ Graph of {f.name} has {components.count} components")
        return Verdict(VerdictKind.DISCONNECTED, "disconnected graph",
                       "the two-coordinate product is the graph itself", n=2,
                       component_count=components.count,
                       witnesses=witness_list(second_component_piece=components.groups[1][0]))

    verdict = _structural_routes(f, decomposition)
    if verdict is not None:
        return verdict
    g = inverse(f)
    if is_continuum_valued(g):
        return _certified("inverse continuum-valued route",
                          "every preimage is an interval and the graph is connected")
    if decomposition is not None and is_idempotent(f):
        verdict = _structural_routes(g, decomposition, " on the inverse")
        if verdict is not None:
            return verdict

    for n in range(2, max_n + 1):
        connectivity = gset_connected(build_gset(ChainSystem.single_function(f, n), Semantics.CONSECUTIVE),
                                      max_workers, parallel_threshold)
        if not connectivity.connected:
            return Verdict(VerdictKind.DISCONNECTED, "finite-stage connectivity",
                           f"K({n}) has {connectivity.component_count} components",
                           n=n, component_count=connectivity.component_count)
    logger.info(f"⚠️ {f.name}: every K(n) up to n={max_n} is connected, no certificate for all n")
    return Verdict(VerdictKind.CONNECTED_UP_TO_N, "finite-stage connectivity",
                   f"K(n) connected for 2 <= n <= {max_n}", n=max_n)
