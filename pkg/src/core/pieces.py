"""
GRAPH PIECES
============
Convex building blocks of a closed graph in the unit square:

- Rect: axis-aligned rectangle, possibly degenerate to a segment or a point
- Segment: non-axis-parallel line segment, endpoints ordered by x

Axis-parallel content is always stored as a Rect (use make_segment to get
the canonical form for arbitrary endpoints).
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple, Union

from .errors import GeometryError
from .intervals import Interval, as_rational, format_rational
from .linear_programming import ConstraintKind, LinearConstraint

Point = Tuple[Fraction, Fraction]


def make_point(x, y) -> Point:
    return (as_rational(x), as_rational(y))


def _check_unit(point: Point) -> None:
    for value in point:
        if value < 0 or value > 1:
            raise GeometryError(f"❌ Coordinate outside [0,1]: {format_point(point)}")


def format_point(point) -> str:
    return "(" + ", ".join(format_rational(Fraction(v)) for v in point) + ")"


@dataclass(frozen=True)
class Rect:
    """x-interval times y-interval"""
    x: Interval
    y: Interval

    @property
    def x_range(self) -> Interval:
        return self.x

    @property
    def y_range(self) -> Interval:
        return self.y

    @property
    def is_point(self) -> bool:
        return self.x.is_point and self.y.is_point

    @property
    def is_area(self) -> bool:
        return not self.x.is_point and not self.y.is_point

    def contains(self, point: Point) -> bool:
        return self.x.contains(point[0]) and self.y.contains(point[1])

    def slice_at(self, x: Fraction) -> Optional[Interval]:
        return self.y if self.x.contains(x) else None

    def clip_x(self, window: Interval) -> Optional["Rect"]:
        x = self.x.intersect(window)
        return None if x is None else Rect(x, self.y)

    def swap(self) -> "Rect":
        return Rect(self.y, self.x)

    def corners(self) -> List[Point]:
        return [(self.x.lo, self.y.lo), (self.x.hi, self.y.lo),
                (self.x.hi, self.y.hi), (self.x.lo, self.y.hi)]

    def __str__(self) -> str:
        return f"Rect {self.x}×{self.y}"


@dataclass(frozen=True)
class Segment:
    """Non-axis-parallel segment from p to q with p.x < q.x"""
    p: Point
    q: Point

    def __post_init__(self):
        p = make_point(*self.p)
        q = make_point(*self.q)
        _check_unit(p)
        _check_unit(q)
        if p[0] == q[0] or p[1] == q[1]:
            raise GeometryError(
                f"❌ Axis-parallel segment {format_point(p)}–{format_point(q)} must be a Rect")
        if p[0] > q[0]:
            p, q = q, p
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @property
    def slope(self) -> Fraction:
        return (self.q[1] - self.p[1]) / (self.q[0] - self.p[0])

    @property
    def x_range(self) -> Interval:
        return Interval(self.p[0], self.q[0])

    @property
    def y_range(self) -> Interval:
        return Interval(min(self.p[1], self.q[1]), max(self.p[1], self.q[1]))

    def y_at(self, x: Fraction) -> Fraction:
        return self.p[1] + self.slope * (x - self.p[0])

    def x_at(self, y: Fraction) -> Fraction:
        return self.p[0] + (y - self.p[1]) / self.slope

    def contains(self, point: Point) -> bool:
        x, y = point
        return self.x_range.contains(x) and self.y_at(x) == y

    def slice_at(self, x: Fraction) -> Optional[Interval]:
        if not self.x_range.contains(x):
            return None
        return Interval.point(self.y_at(x))

    def clip_x(self, window: Interval) -> Optional["Piece"]:
        x = self.x_range.intersect(window)
        if x is None:
            return None
        return make_segment((x.lo, self.y_at(x.lo)), (x.hi, self.y_at(x.hi)))

    def x_where_y_in(self, window: Interval) -> Optional[Interval]:
        """x-interval on which the segment's y lies inside window"""
        y = self.y_range.intersect(window)
        if y is None:
            return None
        a, b = self.x_at(y.lo), self.x_at(y.hi)
        return Interval(min(a, b), max(a, b))

    def swap(self) -> "Segment":
        return Segment((self.p[1], self.p[0]), (self.q[1], self.q[0]))

    def __str__(self) -> str:
        return f"Segment {format_point(self.p)}–{format_point(self.q)}"


Piece = Union[Rect, Segment]


def make_segment(p, q) -> Piece:
    """Canonical piece through two endpoints: Segment, or a (degenerate) Rect"""
    p = make_point(*p)
    q = make_point(*q)
    _check_unit(p)
    _check_unit(q)
    if p[0] == q[0] or p[1] == q[1]:
        return Rect(Interval(min(p[0], q[0]), max(p[0], q[0])),
                    Interval(min(p[1], q[1]), max(p[1], q[1])))
    return Segment(p, q)


def make_rect(x_lo, x_hi, y_lo, y_hi) -> Rect:
    return Rect(Interval(x_lo, x_hi), Interval(y_lo, y_hi))


def point_piece(x, y) -> Rect:
    return make_rect(x, x, y, y)


def piece_contains(piece: Piece, point: Point) -> bool:
    return piece.contains(point)


def _orientation(a: Point, b: Point, c: Point) -> int:
    value = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
    return (value > 0) - (value < 0)


def _on_box(a: Point, b: Point, c: Point) -> bool:
    return (min(a[0], b[0]) <= c[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= c[1] <= max(a[1], b[1]))


def _segments_meet(s: Segment, t: Segment) -> bool:
    o1 = _orientation(s.p, s.q, t.p)
    o2 = _orientation(s.p, s.q, t.q)
    o3 = _orientation(t.p, t.q, s.p)
    o4 = _orientation(t.p, t.q, s.q)
    if o1 != o2 and o3 != o4:
        return True
    if o1 == 0 and _on_box(s.p, s.q, t.p):
        return True
    if o2 == 0 and _on_box(s.p, s.q, t.q):
        return True
    if o3 == 0 and _on_box(t.p, t.q, s.p):
        return True
    if o4 == 0 and _on_box(t.p, t.q, s.q):
        return True
    return False


def _segment_meets_rect(s: Segment, r: Rect) -> bool:
    clipped = s.clip_x(r.x)
    if clipped is None:
        return False
    return clipped.y_range.intersect(r.y) is not None


def piece_intersects(p: Piece, q: Piece) -> bool:
    """Exact test whether two closed pieces share a point"""
    if isinstance(p, Rect) and isinstance(q, Rect):
        return p.x.intersect(q.x) is not None and p.y.intersect(q.y) is not None
    if isinstance(p, Segment) and isinstance(q, Segment):
        return _segments_meet(p, q)
    if isinstance(p, Segment):
        return _segment_meets_rect(p, q)
    return _segment_meets_rect(q, p)


def piece_within(inner: Piece, outer: Piece) -> bool:
    """Whether the point set of inner lies inside outer (both convex)"""
    if isinstance(inner, Rect):
        if isinstance(outer, Rect):
            return outer.x.contains_interval(inner.x) and outer.y.contains_interval(inner.y)
        return inner.is_point and outer.contains((inner.x.lo, inner.y.lo))
    return outer.contains(inner.p) and outer.contains(inner.q)


def piece_bounding_box(piece: Piece) -> Rect:
    return Rect(piece.x_range, piece.y_range)


def swap_piece(piece: Piece) -> Piece:
    return piece.swap()


def embed_piece(piece: Piece, input_index: int, output_index: int, dim: int) -> List[LinearConstraint]:
    """Linear constraints placing (x[input_index], x[output_index]) in the piece (0-based indices)"""
    def row(**weights):
        coeffs = [Fraction(0)] * dim
        for key, weight in weights.items():
            coeffs[input_index if key == "u" else output_index] += weight
        return tuple(coeffs)

    def bounds(key: str, interval: Interval):
        if interval.is_point:
            return [LinearConstraint(row(**{key: 1}), interval.lo, ConstraintKind.EQ)]
        return [LinearConstraint(row(**{key: 1}), interval.hi),
                LinearConstraint(row(**{key: -1}), -interval.lo)]

    if isinstance(piece, Rect):
        return bounds("u", piece.x) + bounds("v", piece.y)
    dx = piece.q[0] - piece.p[0]
    dy = piece.q[1] - piece.p[1]
    line = LinearConstraint(row(u=dy, v=-dx), dy * piece.p[0] - dx * piece.p[1], ConstraintKind.EQ)
    return [line] + bounds("u", piece.x_range)
