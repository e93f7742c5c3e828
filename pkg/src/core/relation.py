"""
CLOSED SET-VALUED RELATIONS ON [0,1]
====================================
🧩 Relation: named finite union of pieces, the closed graph of f: [0,1] -> 2^[0,1]
🔁 Slices, images, inverse and composition with exact rational endpoints
⚖️  Point-set equality, idempotence, surjectivity, graph connectivity
🧪 Continuum-valuedness and decomposition certificates

Graphs are stored input coordinate first: (x, y) with y in f(x).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence, Set, Tuple

from .errors import NotSurjectiveError, RelationRejected, ToolkitError
from .intervals import (HALF, Interval, IntervalSet, format_rational, midpoint,
                        normalize_intervals, uncovered_value)
from .pieces import (Piece, Point, Rect, Segment, embed_piece, format_point, make_segment,
                     piece_intersects, piece_within)
from .polytopes import Cell, uncovered_point
from .verdict import CheckResult, Verdict, VerdictKind, witness_list
from utils.union_find import UnionFind

logger = logging.getLogger(__name__)

UNIT = Interval.unit()


def _canonical(piece: Piece) -> Piece:
    if isinstance(piece, (Rect, Segment)):
        return piece
    raise RelationRejected(f"❌ Not a graph piece: {piece!r}")


@dataclass(frozen=True)
class Relation:
    """Closed graph of a total set-valued function on [0,1]

    Construction rejects piece lists whose x-projection misses part of [0,1];
    the exception's witness is an exact x with an empty value.
    """
    name: str
    pieces: Tuple[Piece, ...]

    def __post_init__(self):
        pieces = tuple(_canonical(piece) for piece in self.pieces)
        if not pieces:
            raise RelationRejected(f"❌ Relation '{self.name}' has no pieces", witness=HALF)
        object.__setattr__(self, "pieces", pieces)
        gap = uncovered_value(x_projection(self), UNIT)
        if gap is not None:
            raise RelationRejected(
                f"❌ Relation '{self.name}' is not total: f({format_rational(gap)}) is empty",
                witness=gap)

    def __len__(self) -> int:
        return len(self.pieces)

    def renamed(self, name: str) -> "Relation":
        return Relation(name, self.pieces)

    def __str__(self) -> str:
        return f"{self.name}: " + " ∪ ".join(str(piece) for piece in self.pieces)


@dataclass(frozen=True)
class ComponentPartition:
    count: int
    groups: Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class Diagnostics:
    total: bool
    surjective: bool
    idempotent: bool
    graph_components: int
    continuum_valued: bool
    witnesses: Tuple[Tuple[str, object], ...] = ()

    @property
    def flags(self) -> Tuple[bool, bool, bool]:
        return (self.idempotent, self.surjective, self.continuum_valued)


def x_projection(r: Relation) -> IntervalSet:
    return normalize_intervals(piece.x_range for piece in r.pieces)


def y_projection(r: Relation) -> IntervalSet:
    return normalize_intervals(piece.y_range for piece in r.pieces)


def contains_point(r: Relation, point: Point) -> bool:
    return any(piece.contains(point) for piece in r.pieces)


def slice_at(r: Relation, x: Fraction) -> IntervalSet:
    """The value f(x) as an exact interval set"""
    x = Fraction(x)
    values = (piece.slice_at(x) for piece in r.pieces)
    return normalize_intervals(value for value in values if value is not None)


def image(r: Relation, a: IntervalSet) -> IntervalSet:
    """f(A): clip every piece to A×[0,1] and project onto y"""
    ranges = []
    for window in a:
        for piece in r.pieces:
            clipped = piece.clip_x(window)
            if clipped is not None:
                ranges.append(clipped.y_range)
    return normalize_intervals(ranges)


def is_surjective(r: Relation) -> CheckResult:
    gap = uncovered_value(y_projection(r), UNIT)
    if gap is None:
        return CheckResult(True)
    return CheckResult(False, gap, f"no x maps to y = {format_rational(gap)}")


def inverse(r: Relation) -> Relation:
    """Graph with coordinates swapped; piece order is preserved"""
    surjective = is_surjective(r)
    if not surjective:
        raise NotSurjectiveError(
            f"❌ '{r.name}' is not surjective (y = {format_rational(surjective.witness)} "
            f"has no preimage), so its inverse is not total", witness=surjective.witness)
    return Relation(f"inverse({r.name})", tuple(piece.swap() for piece in r.pieces))


def _compose_pieces(q: Piece, p: Piece) -> Optional[Piece]:
    """Graph of q∘p for single pieces (p applied first), or None when empty"""
    if isinstance(p, Rect):
        if isinstance(q, Rect):
            if p.y.intersect(q.x) is None:
                return None
            return Rect(p.x, q.y)
        middle = p.y.intersect(q.x_range)
        if middle is None:
            return None
        z_values = (q.y_at(middle.lo), q.y_at(middle.hi))
        return Rect(p.x, Interval(min(z_values), max(z_values)))
    if isinstance(q, Rect):
        x_range = p.x_where_y_in(q.x)
        if x_range is None:
            return None
        return Rect(x_range, q.y)
    middle = p.y_range.intersect(q.x_range)
    if middle is None:
        return None
    return make_segment((p.x_at(middle.lo), q.y_at(middle.lo)),
                        (p.x_at(middle.hi), q.y_at(middle.hi)))


def _simplify(pieces: Iterable[Piece]) -> Tuple[Piece, ...]:
    """Drop exact duplicates and pieces lying inside another single piece"""
    unique = list(dict.fromkeys(pieces))
    kept = []
    for i, piece in enumerate(unique):
        if any(j != i and piece_within(piece, other) for j, other in enumerate(unique)):
            continue
        kept.append(piece)
    return tuple(kept)


def compose(g: Relation, f: Relation) -> Relation:
    """g∘f: pairs (x, z) with some y in f(x) and z in g(y)"""
    pieces = []
    for p in f.pieces:
        for q in g.pieces:
            composed = _compose_pieces(q, p)
            if composed is not None:
                pieces.append(composed)
    return Relation(f"{g.name}∘{f.name}", _simplify(pieces))


@lru_cache(maxsize=256)
def composition_power(f: Relation, k: int) -> Relation:
    """f^k for k >= 1"""
    if k < 1:
        raise ToolkitError(f"❌ Composition power must be positive, got {k}")
    if k == 1:
        return f
    power = compose(f, composition_power(f, k - 1))
    return power.renamed(f"{f.name}^{k}")


def _segment_intersection_x(s: Segment, t: Segment) -> Optional[Fraction]:
    if s.slope == t.slope:
        return None
    x = (t.p[1] - s.p[1] + s.slope * s.p[0] - t.slope * t.p[0]) / (s.slope - t.slope)
    if s.x_range.contains(x) and t.x_range.contains(x):
        return x
    return None


def _uncovered_on_segment(s: Segment, cover: Sequence[Piece]) -> Optional[Point]:
    covered = []
    for other in cover:
        if isinstance(other, Rect):
            window = s.x_where_y_in(other.y)
            if window is not None:
                hit = window.intersect(other.x)
                if hit is not None:
                    covered.append(hit)
        elif other.slope == s.slope and s.y_at(other.p[0]) == other.p[1]:
            hit = s.x_range.intersect(other.x_range)
            if hit is not None:
                covered.append(hit)
        else:
            x = _segment_intersection_x(s, other)
            if x is not None:
                covered.append(Interval.point(x))
    gap = uncovered_value(normalize_intervals(covered), s.x_range)
    return None if gap is None else (gap, s.y_at(gap))


def _uncovered_on_vertical(x: Fraction, ys: Interval, cover: Sequence[Piece]) -> Optional[Point]:
    covered = []
    for other in cover:
        value = other.slice_at(x)
        if value is not None:
            hit = value.intersect(ys)
            if hit is not None:
                covered.append(hit)
    gap = uncovered_value(normalize_intervals(covered), ys)
    return None if gap is None else (x, gap)


def _uncovered_on_horizontal(xs: Interval, y: Fraction, cover: Sequence[Piece]) -> Optional[Point]:
    covered = []
    for other in cover:
        if isinstance(other, Rect):
            if other.y.contains(y):
                hit = other.x.intersect(xs)
                if hit is not None:
                    covered.append(hit)
        elif other.y_range.contains(y):
            x = other.x_at(y)
            if xs.contains(x):
                covered.append(Interval.point(x))
    gap = uncovered_value(normalize_intervals(covered), xs)
    return None if gap is None else (gap, y)


def piece_cell(piece: Piece) -> Cell:
    return Cell.create(2, embed_piece(piece, 0, 1, 2))


def uncovered_on_piece(piece: Piece, cover: Sequence[Piece]) -> Optional[Point]:
    """An exact point of piece outside every cover piece, or None when covered"""
    if isinstance(piece, Segment):
        return _uncovered_on_segment(piece, cover)
    if piece.is_point:
        point = (piece.x.lo, piece.y.lo)
        return None if any(other.contains(point) for other in cover) else point
    if piece.x.is_point:
        return _uncovered_on_vertical(piece.x.lo, piece.y, cover)
    if piece.y.is_point:
        return _uncovered_on_horizontal(piece.x, piece.y.lo, cover)
    witness = uncovered_point(piece_cell(piece), [piece_cell(other) for other in cover])
    return None if witness is None else (witness[0], witness[1])


def symmetric_difference_witness(a: Relation, b: Relation) -> Optional[Point]:
    """A point in exactly one of the two graphs, or None when they are equal"""
    for piece in a.pieces:
        witness = uncovered_on_piece(piece, b.pieces)
        if witness is not None:
            return witness
    for piece in b.pieces:
        witness = uncovered_on_piece(piece, a.pieces)
        if witness is not None:
            return witness
    return None


def equal(a: Relation, b: Relation) -> bool:
    return symmetric_difference_witness(a, b) is None


def is_idempotent(r: Relation) -> CheckResult:
    square = compose(r, r)
    witness = symmetric_difference_witness(square, r)
    if witness is None:
        return CheckResult(True)
    side = "f∘f only" if contains_point(square, witness) else "f only"
    logger.debug(f"🔍 {r.name} is not idempotent: {format_point(witness)} lies in {side}")
    return CheckResult(False, witness, f"{format_point(witness)} lies in {side}")


def graph_components(r: Relation) -> ComponentPartition:
    """Components of the union of pieces via the piece intersection graph"""
    forest = UnionFind(range(len(r.pieces)))
    for i in range(len(r.pieces)):
        for j in range(i + 1, len(r.pieces)):
            if piece_intersects(r.pieces[i], r.pieces[j]):
                forest.union(i, j)
    groups = tuple(tuple(sorted(group)) for group in forest.groups())
    return ComponentPartition(len(groups), groups)


def _boundary_lines(r: Relation) -> Set[Tuple[Fraction, Fraction]]:
    lines = set()
    for piece in r.pieces:
        if isinstance(piece, Rect):
            lines.add((Fraction(0), piece.y.lo))
            lines.add((Fraction(0), piece.y.hi))
        else:
            lines.add((piece.slope, piece.p[1] - piece.slope * piece.p[0]))
    return lines


def slice_breakpoints(r: Relation) -> List[Fraction]:
    """x-values where the combinatorial structure of the slices may change"""
    xs = {Fraction(0), Fraction(1)}
    for piece in r.pieces:
        xs.add(piece.x_range.lo)
        xs.add(piece.x_range.hi)
    lines = sorted(_boundary_lines(r))
    for i, (m1, c1) in enumerate(lines):
        for m2, c2 in lines[i + 1:]:
            if m1 != m2:
                x = (c2 - c1) / (m1 - m2)
                if 0 <= x <= 1:
                    xs.add(x)
    return sorted(xs)


def is_continuum_valued(r: Relation) -> CheckResult:
    """Every value f(x) is a single interval; checked at gap midpoints, then breakpoints"""
    breakpoints = slice_breakpoints(r)
    samples = [midpoint(a, b) for a, b in zip(breakpoints, breakpoints[1:])] + breakpoints
    for x in samples:
        values = slice_at(r, x)
        if not values.is_single_interval:
            return CheckResult(False, x, f"f({format_rational(x)}) = {values}")
    return CheckResult(True)


def value_sets_invariant(r: Relation, xs: Iterable[Fraction]) -> CheckResult:
    """f(A) = A for every sampled value set A = f(x)"""
    for x in xs:
        values = slice_at(r, x)
        if image(r, values) != values:
            return CheckResult(False, Fraction(x), f"f(f({format_rational(Fraction(x))})) differs")
    return CheckResult(True)


def singleton_values_fixed(r: Relation, xs: Iterable[Fraction]) -> CheckResult:
    """Whenever f(x) = {y}, also f(y) = {y}"""
    for x in xs:
        values = slice_at(r, x)
        if values.is_singleton:
            y = values.intervals[0].lo
            if slice_at(r, y) != values:
                return CheckResult(False, Fraction(x), f"f({format_rational(y)}) ≠ {{{format_rational(y)}}}")
    return CheckResult(True)


def validate(r: Relation) -> Diagnostics:
    gap = uncovered_value(x_projection(r), UNIT)
    if gap is not None:
        raise RelationRejected(f"❌ Relation '{r.name}' is not total", witness=gap)
    surjective = is_surjective(r)
    idempotent = is_idempotent(r)
    components = graph_components(r)
    continuum = is_continuum_valued(r)
    witnesses = witness_list(
        uncovered_y=surjective.witness,
        idempotence_counterexample=idempotent.witness,
        disconnected_slice_x=continuum.witness,
        second_component_piece=components.groups[1][0] if components.count > 1 else None,
    )
    diagnostics = Diagnostics(
        total=True,
        surjective=surjective.passed,
        idempotent=idempotent.passed,
        graph_components=components.count,
        continuum_valued=continuum.passed,
        witnesses=witnesses,
    )
    logger.info(f"✅ Validated {r.name}: surjective={diagnostics.surjective} "
                f"idempotent={diagnostics.idempotent} components={diagnostics.graph_components} "
                f"continuum-valued={diagnostics.continuum_valued}")
    return diagnostics


def check_decomposition(r: Relation, groups: Sequence[Iterable[int]]) -> Verdict:
    """Certify that the graph is connected and is a union of total continuum-valued functions"""
    route = "decomposition into continuum-valued functions"
    groups = [sorted(set(group)) for group in groups]
    for k, group in enumerate(groups):
        for index in group:
            if not 0 <= index < len(r.pieces):
                raise ToolkitError(f"❌ Group {k} refers to piece {index}; "
                                   f"'{r.name}' has {len(r.pieces)} pieces", code="BAD_GROUP")
    for k, group in enumerate(groups):
        try:
            member = Relation(f"{r.name}[group {k}]", tuple(r.pieces[i] for i in group))
        except RelationRejected as error:
            return Verdict(VerdictKind.REJECTED, route, f"group {k} is not total",
                           witnesses=witness_list(group=k, x=error.witness))
        continuum = is_continuum_valued(member)
        if not continuum:
            return Verdict(VerdictKind.REJECTED, route,
                           f"group {k} is not continuum-valued ({continuum.detail})",
                           witnesses=witness_list(group=k, x=continuum.witness))
    covered = {index for group in groups for index in group}
    missing = sorted(set(range(len(r.pieces))) - covered)
    if missing:
        return Verdict(VerdictKind.REJECTED, route, f"pieces {missing} belong to no group",
                       witnesses=witness_list(piece=missing[0]))
    components = graph_components(r)
    if components.count != 1:
        return Verdict(VerdictKind.REJECTED, route,
                       f"graph has {components.count} components",
                       component_count=components.count,
                       witnesses=witness_list(second_component_piece=components.groups[1][0]))
    return Verdict(VerdictKind.CERTIFIED, route,
                   f"{len(groups)} continuum-valued group(s) with connected union")
