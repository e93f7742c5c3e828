"""
Raster Oracle
=============
Brute-force grid approximations used to cross-check the exact engine.

- Relation rasters mark every closed grid square of side 1/k meeting the graph.
- G-set rasters mark grid points (multiples of 1/k) whose constrained pairs are
  all within one step (max metric) of the rasterized graphs. This is an outer
  approximation: the rounded image of every exact point is marked.
- Sample rasters mark grid points lying exactly in the set.

Connectivity of marked grid points uses face adjacency.
"""

import logging
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union

import numpy as np

from core.errors import ToolkitError
from core.intervals import Interval
from core.pieces import Point, Rect
from core.relation import Relation, contains_point
from engines.mahavier_engine import ChainSystem, GSet, Semantics

logger = logging.getLogger(__name__)

MIN_DENOMINATOR = 8
MAX_DENOMINATOR = 256


@dataclass(frozen=True)
class Raster:
    step: Fraction
    dim: int
    bits: np.ndarray
    grid_points: bool = True

    @property
    def denominator(self) -> int:
        return self.step.denominator

    @property
    def marked(self) -> int:
        return int(self.bits.sum())


def step_for(denominator: int) -> Fraction:
    if not MIN_DENOMINATOR <= denominator <= MAX_DENOMINATOR:
        raise ToolkitError(f"❌ Raster step must be 1/k with {MIN_DENOMINATOR} <= k <= {MAX_DENOMINATOR}, "
                           f"got k = {denominator}")
    return Fraction(1, denominator)


def _check_step(step: Fraction) -> int:
    step = Fraction(step)
    if step.numerator != 1:
        raise ToolkitError(f"❌ Raster step must be of the form 1/k, got {step}")
    step_for(step.denominator)
    return step.denominator


def _square_span(lo: Fraction, hi: Fraction, k: int) -> range:
    """Indices i of squares [i/k, (i+1)/k] meeting [lo, hi]"""
    first = max(0, math.ceil(lo * k) - 1)
    last = min(k - 1, math.floor(hi * k))
    return range(first, last + 1)


def relation_raster(r: Relation, step: Fraction = Fraction(1, 64)) -> Raster:
    """k×k squares, axis 0 = x (input), axis 1 = y (output)"""
    k = _check_step(step)
    bits = np.zeros((k, k), dtype=bool)
    for piece in r.pieces:
        if isinstance(piece, Rect):
            xs = _square_span(piece.x.lo, piece.x.hi, k)
            ys = _square_span(piece.y.lo, piece.y.hi, k)
            bits[xs.start:xs.stop, ys.start:ys.stop] = True
            continue
        for i in _square_span(piece.x_range.lo, piece.x_range.hi, k):
            column = piece.clip_x(_column(i, k))
            if column is None:
                continue
            ys = _square_span(column.y_range.lo, column.y_range.hi, k)
            bits[i, ys.start:ys.stop] = True
    return Raster(Fraction(1, k), 2, bits, grid_points=False)


def _column(i: int, k: int) -> Interval:
    return Interval(Fraction(i, k), Fraction(i + 1, k))


def near_graph(r: Relation, step: Fraction) -> np.ndarray:
    """(k+1)×(k+1) grid points whose neighbouring squares meet the graph"""
    squares = relation_raster(r, step).bits
    k = squares.shape[0]
    near = np.zeros((k + 1, k + 1), dtype=bool)
    for dx in (0, 1):
        for dy in (0, 1):
            near[dx:dx + k, dy:dy + k] |= squares
    return near


def on_graph(r: Relation, step: Fraction) -> np.ndarray:
    """(k+1)×(k+1) grid points lying exactly on the graph"""
    k = _check_step(step)
    exact = np.zeros((k + 1, k + 1), dtype=bool)
    for a in range(k + 1):
        for b in range(k + 1):
            exact[a, b] = contains_point(r, (Fraction(a, k), Fraction(b, k)))
    return exact


def _combine(s: ChainSystem, semantics: Semantics, pair_masks: Dict[Tuple[int, int], np.ndarray],
             max_dim: int) -> np.ndarray:
    n = s.n
    if n > max_dim:
        raise ToolkitError(f"❌ Raster oracle supports at most {max_dim} coordinates, got {n}")
    size = next(iter(pair_masks.values())).shape[0]
    bits = np.ones((size,) * n, dtype=bool)
    for (i, j), mask in pair_masks.items():
        # mask is indexed (x_j, x_i), input coordinate first
        shape = [1] * n
        shape[i - 1] = size
        shape[j - 1] = size
        bits &= mask.T.reshape(shape)
    return bits


def _pair_masks(s: ChainSystem, semantics: Semantics, step: Fraction, exact: bool) -> Dict:
    build = on_graph if exact else near_graph
    return {(i, j): build(s.bonding(i, j), step) for i, j in s.pairs(semantics)}


def gset_raster(s: ChainSystem, semantics: Semantics = Semantics.CONSECUTIVE,
                step: Fraction = Fraction(1, 64), max_dim: int = 4) -> Raster:
    """Outer approximation of the G-set on grid points"""
    k = _check_step(step)
    bits = _combine(s, semantics, _pair_masks(s, semantics, step, exact=False), max_dim)
    logger.debug(f"🔍 Raster of dimension {s.n} at step 1/{k}: {int(bits.sum())} marked points")
    return Raster(Fraction(1, k), s.n, bits)


def gset_sample(s: ChainSystem, semantics: Semantics = Semantics.ALL_PAIRS,
                step: Fraction = Fraction(1, 64), max_dim: int = 4) -> Raster:
    """Grid points lying exactly in the G-set"""
    k = _check_step(step)
    bits = _combine(s, semantics, _pair_masks(s, semantics, step, exact=True), max_dim)
    return Raster(Fraction(1, k), s.n, bits)


def raster_oracle(target: Union[Relation, GSet], step: Fraction = Fraction(1, 64), max_dim: int = 4) -> Raster:
    if isinstance(target, Relation):
        return relation_raster(target, step)
    if target.source is None:
        raise ToolkitError("❌ Raster oracle needs a G-set built from a chain system")
    return gset_raster(target.source, target.semantics, step, max_dim)


def flood_components(raster: Raster) -> List[List[Tuple[int, ...]]]:
    """Face-adjacent components of the marked cells, in index order of their first cell"""
    marked = {tuple(int(v) for v in index) for index in np.argwhere(raster.bits)}
    shape = raster.bits.shape
    seen = set()
    components = []
    for start in sorted(marked):
        if start in seen:
            continue
        seen.add(start)
        queue = deque([start])
        component = []
        while queue:
            cell = queue.popleft()
            component.append(cell)
            for axis in range(len(shape)):
                for delta in (-1, 1):
                    neighbour = cell[:axis] + (cell[axis] + delta,) + cell[axis + 1:]
                    if neighbour in marked and neighbour not in seen:
                        seen.add(neighbour)
                        queue.append(neighbour)
        components.append(component)
    return components


def raster_component_count(raster: Raster) -> int:
    return len(flood_components(raster))


def grid_index(raster: Raster, point: Sequence[Fraction]) -> Tuple[int, ...]:
    """Cell holding an exact point: nearest grid point, or the containing square"""
    k = raster.denominator
    if raster.grid_points:
        return tuple(int(round(Fraction(v) * k)) for v in point)
    return tuple(min(k - 1, int(Fraction(v) * k)) for v in point)


def raster_contains(raster: Raster, point: Union[Point, Sequence[Fraction]]) -> bool:
    return bool(raster.bits[grid_index(raster, point)])


def project_raster(raster: Raster, keep: Sequence[int]) -> Raster:
    """Marked cells projected onto the kept coordinates (1-based)"""
    dropped = tuple(axis for axis in range(raster.dim) if axis + 1 not in keep)
    bits = raster.bits.any(axis=dropped) if dropped else raster.bits.copy()
    return Raster(raster.step, len(keep), bits, raster.grid_points)


def dilate(bits: np.ndarray, slack: int) -> np.ndarray:
    """Grow marked cells by slack steps along every axis (max metric)"""
    grown = bits.copy()
    for axis in range(bits.ndim):
        for _ in range(slack):
            shifted = grown.copy()
            forward = [slice(None)] * bits.ndim
            backward = [slice(None)] * bits.ndim
            forward[axis], backward[axis] = slice(1, None), slice(None, -1)
            shifted[tuple(forward)] |= grown[tuple(backward)]
            shifted[tuple(backward)] |= grown[tuple(forward)]
            grown = shifted
    return grown


def raster_subset(inner: Raster, outer: Raster, slack: int = 0) -> bool:
    if inner.bits.shape != outer.bits.shape:
        raise ToolkitError(f"❌ Raster shapes differ: {inner.bits.shape} vs {outer.bits.shape}")
    return not bool((inner.bits & ~dilate(outer.bits, slack)).any())
