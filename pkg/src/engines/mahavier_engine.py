"""
🔗 MAHAVIER ENGINE
==================
Finite Mahavier products of a chain of bonding relations.

🏗️  build_gset: union of convex cells, one per consistent choice of pieces
🔍 gset_connected: exact connectivity through pairwise merged feasibility
✂️  project_gset / reverse_gset / gset_equal: sub-chains and reversal

Pair convention: the constraint x_i ∈ f_ij(x_j) (i < j) places the pair
(x_j, x_i) in the graph of f_ij, input coordinate first. Coordinates are
numbered from 1.
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from core.errors import DimensionMismatchError, NotSurjectiveError, ToolkitError
from core.linear_programming import LinearConstraint
from core.pieces import embed_piece
from core.polytopes import Cell, cell_feasible, cells_equal, fm_project, merge_cells, uncovered_point
from core.relation import Relation, composition_power, compose, inverse, symmetric_difference_witness
from core.verdict import CheckResult
from utils.union_find import UnionFind

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class Semantics(str, Enum):
    CONSECUTIVE = "consecutive"
    ALL_PAIRS = "all-pairs"


@dataclass(frozen=True)
class ChainSystem:
    """Finite chain β1 ≺ … ≺ βn with bonding relations

    Either a single relation f (f_ij = f^(j-i)) or an explicit table with an
    entry for every pair i < j.
    """
    labels: Tuple[str, ...]
    function: Optional[Relation] = None
    table: Tuple[Tuple[Pair, Relation], ...] = ()

    def __post_init__(self):
        n = len(self.labels)
        if n < 2:
            raise ToolkitError(f"❌ A chain needs at least 2 coordinates, got {n}", code="BAD_CHAIN")
        if len(set(self.labels)) != n:
            raise ToolkitError(f"❌ Chain labels must be distinct: {list(self.labels)}", code="BAD_CHAIN")
        if (self.function is not None) == bool(self.table):
            raise ToolkitError("❌ Give either a single bonding function or a table", code="BAD_CHAIN")
        if self.function is None:
            present = {pair for pair, _ in self.table}
            expected = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
            missing = sorted(expected - present)
            extra = sorted(present - expected)
            if missing or extra or len(self.table) != len(expected):
                raise ToolkitError(f"❌ Bonding table must list every pair i<j once; "
                                   f"missing {missing}, unexpected {extra}", code="BAD_CHAIN")

    @classmethod
    def single_function(cls, f: Relation, n: int) -> "ChainSystem":
        return cls(tuple(f"β{i}" for i in range(1, n + 1)), function=f)

    @classmethod
    def explicit(cls, table: Mapping[Pair, Relation], labels: Optional[Sequence[str]] = None) -> "ChainSystem":
        if labels is None:
            n = max(j for _, j in table) if table else 0
            labels = [f"β{i}" for i in range(1, n + 1)]
        return cls(tuple(labels), table=tuple(sorted(table.items())))

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def is_single_function(self) -> bool:
        return self.function is not None

    def bonding(self, i: int, j: int) -> Relation:
        if not 1 <= i < j <= self.n:
            raise ToolkitError(f"❌ No bonding relation for pair ({i}, {j}) in a chain of {self.n}")
        if self.function is not None:
            return composition_power(self.function, j - i)
        return dict(self.table)[(i, j)]

    def restrict(self, keep: Sequence[int]) -> "ChainSystem":
        """Sub-chain on the kept coordinates (1-based, increasing, at least two)"""
        keep = list(keep)
        if len(keep) < 2 or any(b <= a for a, b in zip(keep, keep[1:])):
            raise ToolkitError(f"❌ Sub-chain needs at least two increasing coordinates, got {keep}")
        if keep[0] < 1 or keep[-1] > self.n:
            raise ToolkitError(f"❌ Coordinates {keep} outside 1..{self.n}")
        table = {(a + 1, b + 1): self.bonding(keep[a], keep[b])
                 for a in range(len(keep)) for b in range(a + 1, len(keep))}
        return ChainSystem.explicit(table, [self.labels[k - 1] for k in keep])

    def inverse(self) -> "ChainSystem":
        """Chain in reversed order with every bonding relation inverted

        The G-sets of the result are the coordinate reversals of those of
        this chain.
        """
        if self.function is not None:
            return ChainSystem(tuple(reversed(self.labels)), function=inverse(self.function))
        n = self.n
        table = {(n + 1 - j, n + 1 - i): inverse(relation) for (i, j), relation in self.table}
        return ChainSystem.explicit(table, list(reversed(self.labels)))

    def pairs(self, semantics: Semantics) -> List[Pair]:
        if semantics is Semantics.CONSECUTIVE:
            return [(i, i + 1) for i in range(1, self.n)]
        return [(i, j) for i in range(1, self.n + 1) for j in range(i + 1, self.n + 1)]


@dataclass(frozen=True)
class GSet:
    """Union of feasible cells in [0,1]^dim"""
    dim: int
    cells: Tuple[Cell, ...]
    source: Optional[ChainSystem] = None
    semantics: Semantics = Semantics.ALL_PAIRS

    def __len__(self) -> int:
        return len(self.cells)

    def contains_point(self, point: Sequence) -> bool:
        return any(cell.contains_point(point) for cell in self.cells)


@dataclass(frozen=True)
class ConnectivityResult:
    connected: bool
    component_count: int
    components: Tuple[Tuple[int, ...], ...]

    def __bool__(self) -> bool:
        return self.connected


def exactness_check(s: ChainSystem) -> CheckResult:
    """f_ij ∘ f_jk = f_ik for all i < j < k; witness is the first failing triple"""
    for i in range(1, s.n + 1):
        for j in range(i + 1, s.n + 1):
            for k in range(j + 1, s.n + 1):
                composed = compose(s.bonding(i, j), s.bonding(j, k))
                point = symmetric_difference_witness(composed, s.bonding(i, k))
                if point is not None:
                    logger.info(f"❌ Bonding table is not exact at ({i}, {j}, {k})")
                    return CheckResult(False, (i, j, k),
                                       f"f{i}{j}∘f{j}{k} and f{i}{k} differ at {point}")
    return CheckResult(True)


def _dedup_cells(cells: Iterable[Cell]) -> Tuple[Cell, ...]:
    unique: List[Cell] = []
    for cell in cells:
        if any(cell == kept or cells_equal(cell, kept) for kept in unique):
            continue
        unique.append(cell)
    return tuple(unique)


def build_gset(s: ChainSystem, semantics: Semantics = Semantics.CONSECUTIVE) -> GSet:
    """Enumerate piece choices depth-first, pruning infeasible prefixes"""
    started = time.time()
    n = s.n
    choices: List[List[List[LinearConstraint]]] = []
    for i, j in s.pairs(semantics):
        relation = s.bonding(i, j)
        choices.append([embed_piece(piece, j - 1, i - 1, n) for piece in relation.pieces])

    cells: List[Cell] = []
    explored = 0

    def descend(depth: int, prefix: Cell) -> None:
        nonlocal explored
        if depth == len(choices):
            cells.append(prefix)
            return
        for constraints in choices[depth]:
            explored += 1
            candidate = prefix.with_constraints(constraints)
            if cell_feasible(candidate):
                descend(depth + 1, candidate)

    descend(0, Cell.box(n))
    unique = _dedup_cells(cells)
    logger.info(f"✅ Built {semantics.value} G-set of dimension {n}: {len(unique)} cells "
                f"({len(cells)} feasible, {explored} prefixes, {time.time() - started:.3f}s)")
    return GSet(n, unique, s, semantics)


def _pair_intersects(pair: Tuple[Cell, Cell]) -> bool:
    return cell_feasible(merge_cells(*pair)).feasible


def gset_connected(g: GSet, max_workers: int = 4, parallel_threshold: int = 64) -> ConnectivityResult:
    """Connectivity of the cell intersection graph

    Cells are compact and convex, so the union is connected exactly when
    this graph is.
    """
    if not g.cells:
        return ConnectivityResult(False, 0, ())
    index_pairs = [(a, b) for a in range(len(g.cells)) for b in range(a + 1, len(g.cells))]
    cell_pairs = [(g.cells[a], g.cells[b]) for a, b in index_pairs]
    if max_workers > 1 and len(cell_pairs) > parallel_threshold:
        logger.debug(f"🚀 Checking {len(cell_pairs)} cell pairs on {max_workers} threads")
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            meets = list(executor.map(_pair_intersects, cell_pairs))
    else:
        meets = [_pair_intersects(pair) for pair in cell_pairs]

    forest = UnionFind(range(len(g.cells)))
    for (a, b), meet in zip(index_pairs, meets):
        if meet:
            forest.union(a, b)
    components = tuple(tuple(sorted(group)) for group in forest.groups())
    result = ConnectivityResult(len(components) == 1, len(components), components)
    logger.info(f"{'✅' if result.connected else '❌'} G-set of dimension {g.dim} with "
                f"{len(g.cells)} cells has {result.component_count} component(s)")
    return result


def project_gset(g: GSet, keep: Sequence[int], lp_pruning: bool = False) -> GSet:
    projected = []
    for cell in g.cells:
        image = fm_project(cell, keep, lp_pruning)
        if cell_feasible(image):
            projected.append(image)
    return GSet(len(keep), _dedup_cells(projected), None, Semantics.ALL_PAIRS)


def gset_difference_point(a: GSet, b: GSet) -> Optional[Tuple]:
    """A point of a outside b, or None when a ⊆ b"""
    if a.dim != b.dim:
        raise DimensionMismatchError(f"❌ Cannot compare G-sets of dimensions {a.dim} and {b.dim}")
    for cell in a.cells:
        point = uncovered_point(cell, b.cells)
        if point is not None:
            return point
    return None


def gset_equal(a: GSet, b: GSet) -> CheckResult:
    point = gset_difference_point(a, b)
    if point is not None:
        return CheckResult(False, point, "point of the first set outside the second")
    point = gset_difference_point(b, a)
    if point is not None:
        return CheckResult(False, point, "point of the second set outside the first")
    return CheckResult(True)


def reverse_gset(g: GSet) -> GSet:
    """Coordinates reversed: x_i becomes x_(n+1-i)"""
    source = None
    if g.source is not None:
        try:
            source = g.source.inverse()
        except NotSurjectiveError:
            source = None
    return GSet(g.dim, tuple(cell.reversed() for cell in g.cells), source, g.semantics)


def gset_summary(g: GSet) -> Dict[str, object]:
    return {"dim": g.dim, "cells": len(g.cells), "semantics": g.semantics.value}
