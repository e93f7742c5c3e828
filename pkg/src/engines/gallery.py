"""
🖼️  GALLERY
===========
Named families of closed set-valued functions on [0,1], each tagged with the
(idempotent, surjective, continuum-valued) flags that validate() must
reproduce, plus the diagonal-plus-K construction and its random generator.

Diagonal-plus-K: for 0 < a < 1 and a closed set K inside [0,a)×(a,1]
together with (a,a), the graph Δ ∪ K is idempotent and surjective.
"""

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from core.errors import CatalogError, RelationRejected
from core.intervals import HALF, ONE, ZERO, as_rational, format_rational
from core.pieces import Piece, Point, Rect, format_point, make_rect, make_segment, point_piece
from core.relation import Relation, is_idempotent, is_surjective

logger = logging.getLogger(__name__)

DIAGONAL = make_segment((0, 0), (1, 1))
ANTI_DIAGONAL = make_segment((0, 1), (1, 0))
RANDOM_DENOMINATOR = 64
K_PARAMS = ("k_x_lo", "k_x_hi", "k_y_lo", "k_y_hi", "k_segment")


@dataclass(frozen=True)
class ExampleSpec:
    name: str
    params: Tuple[Tuple[str, Fraction], ...] = ()

    @classmethod
    def of(cls, name: str, **params) -> "ExampleSpec":
        return cls(name, tuple(sorted((key, as_rational(value)) for key, value in params.items())))

    def param(self, key: str, default: Optional[Fraction] = None) -> Fraction:
        values = dict(self.params)
        if key in values:
            return values[key]
        if default is None:
            raise CatalogError(f"❌ '{self.name}' needs parameter '{key}'")
        return default


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    builder: Callable[[ExampleSpec], Relation]
    expected: Tuple[bool, bool, bool]
    defaults: Dict[str, Fraction] = field(default_factory=dict)
    optional: Tuple[str, ...] = ()


def _param(spec: ExampleSpec, entry: CatalogEntry, key: str) -> Fraction:
    return spec.param(key, entry.defaults.get(key))


def _check_open_unit(name: str, a: Fraction) -> None:
    if not ZERO < a < ONE:
        raise CatalogError(f"❌ '{name}' needs 0 < a < 1, got a = {format_rational(a)}")


def region_violation(a: Fraction, piece: Piece) -> Optional[Point]:
    """A point of the piece breaking the [0,a)×(a,1] ∪ {(a,a)} rule, or None"""
    def allowed(point: Point) -> bool:
        return point == (a, a) or (point[0] < a and point[1] > a)

    if isinstance(piece, Rect):
        if piece.is_area:
            if piece.x.hi < a and piece.y.lo > a:
                return None
            return (piece.x.hi, piece.y.lo)
        corners = piece.corners()
    else:
        corners = [piece.p, piece.q]
    for corner in corners:
        if not allowed(corner):
            return corner
    return None


def make_diagonal_plus_k(a, k_pieces: Sequence[Piece], name: Optional[str] = None) -> Relation:
    """Δ ∪ K after validating every piece of K against the region rule"""
    a = as_rational(a)
    if not ZERO < a < ONE:
        raise RelationRejected(f"❌ Need 0 < a < 1, got a = {format_rational(a)}")
    for piece in k_pieces:
        point = region_violation(a, piece)
        if point is not None:
            raise RelationRejected(
                f"❌ {piece} leaves the region x < {format_rational(a)} < y at {format_point(point)}",
                witness=point)
    relation = Relation(name or f"diagonal-plus-k(a={format_rational(a)})", (DIAGONAL,) + tuple(k_pieces))
    idempotent = is_idempotent(relation)
    surjective = is_surjective(relation)
    if not (idempotent and surjective):
        raise RelationRejected(f"❌ {relation.name} failed its postcondition "
                               f"(idempotent={idempotent.passed}, surjective={surjective.passed})",
                               witness=idempotent.witness or surjective.witness)
    return relation


def _grid_below(a: Fraction) -> List[Fraction]:
    return [Fraction(k, RANDOM_DENOMINATOR) for k in range(RANDOM_DENOMINATOR + 1)
            if Fraction(k, RANDOM_DENOMINATOR) < a]


def _grid_above(a: Fraction) -> List[Fraction]:
    return [Fraction(k, RANDOM_DENOMINATOR) for k in range(RANDOM_DENOMINATOR + 1)
            if Fraction(k, RANDOM_DENOMINATOR) > a]


def random_diagonal_plus_k(seed: int, a, count: int, include_center: bool = False) -> Relation:
    """Deterministic random K of points, segments and rectangles inside the strict region"""
    a = as_rational(a)
    if count < 1:
        raise CatalogError(f"❌ count must be at least 1, got {count}")
    rng = random.Random(seed)
    xs, ys = _grid_below(a), _grid_above(a)
    pieces: List[Piece] = [point_piece(a, a)] if include_center else []
    while len(pieces) < count:
        kind = rng.choice(("point", "segment", "rect"))
        x1, x2 = sorted((rng.choice(xs), rng.choice(xs)))
        y1, y2 = sorted((rng.choice(ys), rng.choice(ys)))
        if kind == "point":
            pieces.append(point_piece(x1, y1))
        elif kind == "segment":
            if rng.random() < 0.5:
                pieces.append(make_segment((x1, y1), (x2, y2)))
            else:
                pieces.append(make_segment((x1, y2), (x2, y1)))
        else:
            pieces.append(make_rect(x1, x2, y1, y2))
    return make_diagonal_plus_k(a, pieces, f"random-diagonal-plus-k(seed={seed})")


def _constant_zero(spec: ExampleSpec) -> Relation:
    return Relation("constant-zero", (make_rect(0, 1, 0, 0),))


def _identity(spec: ExampleSpec) -> Relation:
    return Relation("identity", (DIAGONAL,))


def _tent(spec: ExampleSpec) -> Relation:
    return Relation("tent", (make_segment((0, 0), (HALF, 1)), make_segment((HALF, 1), (1, 0))))


def _mirror(spec: ExampleSpec) -> Relation:
    return Relation("mirror", (DIAGONAL, ANTI_DIAGONAL))


def _id_or_b(spec: ExampleSpec) -> Relation:
    entry = CATALOG["id-or-B"]
    a, lo, hi = (_param(spec, entry, key) for key in ("a", "b_lo", "b_hi"))
    _check_open_unit(spec.name, a)
    if not ZERO <= lo <= a <= hi <= ONE:
        raise CatalogError("❌ 'id-or-B' needs 0 <= b_lo <= a <= b_hi <= 1")
    return Relation("id-or-B", (make_rect(0, a, lo, hi), make_segment((a, a), (1, 1))))


def _full_on_a_else_b(spec: ExampleSpec) -> Relation:
    entry = CATALOG["full-on-A-else-B"]
    a, lo, hi = (_param(spec, entry, key) for key in ("a", "b_lo", "b_hi"))
    _check_open_unit(spec.name, a)
    if not a < lo <= hi <= ONE:
        raise CatalogError("❌ 'full-on-A-else-B' needs a < b_lo <= b_hi <= 1")
    return Relation("full-on-A-else-B", (make_rect(0, a, 0, 1), make_rect(a, 1, lo, hi)))


def _down_cone(spec: ExampleSpec) -> Relation:
    a = _param(spec, CATALOG["down-cone"], "a")
    _check_open_unit(spec.name, a)
    return Relation("down-cone", (DIAGONAL, make_rect(a, a, 0, a)))


def _up_cone(spec: ExampleSpec) -> Relation:
    a = _param(spec, CATALOG["up-cone"], "a")
    _check_open_unit(spec.name, a)
    return Relation("up-cone", (DIAGONAL, make_rect(a, a, a, 1)))


def _origin_fan(spec: ExampleSpec) -> Relation:
    return Relation("origin-fan", (make_rect(0, 0, 0, 1), DIAGONAL))


def _left_top(spec: ExampleSpec) -> Relation:
    return Relation("left-top", (make_rect(0, 0, 0, 1), make_rect(0, 1, 1, 1)))


def _mid_bar(spec: ExampleSpec) -> Relation:
    return Relation("mid-bar", (make_rect(0, 0, 0, HALF), make_rect(0, 1, HALF, HALF),
                                make_rect(1, 1, HALF, 1)))


def _diagonal_plus_k(spec: ExampleSpec) -> Relation:
    """K is a rectangle or a diagonal of the box [k_x_lo,k_x_hi]×[k_y_lo,k_y_hi]

    k_segment picks the shape: 0 the whole box, 1 the rising diagonal,
    -1 the falling one. Without K parameters the box is [0,a/2]×{(1+a)/2}.
    """
    a = _param(spec, CATALOG["diagonal-plus-k"], "a")
    _check_open_unit(spec.name, a)
    x_lo = spec.param("k_x_lo", ZERO)
    x_hi = spec.param("k_x_hi", a / 2)
    y_lo = spec.param("k_y_lo", (1 + a) / 2)
    y_hi = spec.param("k_y_hi", y_lo)
    shape = spec.param("k_segment", ZERO)
    if not (x_lo <= x_hi and y_lo <= y_hi):
        raise CatalogError("❌ K needs k_x_lo <= k_x_hi and k_y_lo <= k_y_hi")
    if shape == 0:
        k = make_rect(x_lo, x_hi, y_lo, y_hi)
    elif shape == 1:
        k = make_segment((x_lo, y_lo), (x_hi, y_hi))
    elif shape == -1:
        k = make_segment((x_lo, y_hi), (x_hi, y_lo))
    else:
        raise CatalogError(f"❌ k_segment must be 0, 1 or -1, got {format_rational(shape)}")
    return make_diagonal_plus_k(a, [k], "diagonal-plus-k")


def _diagonal_plus_corner(spec: ExampleSpec) -> Relation:
    return make_diagonal_plus_k(HALF, [point_piece(0, 1)], "diagonal-plus-corner")


def _fan_k(spec: ExampleSpec) -> Relation:
    a = HALF
    return make_diagonal_plus_k(a, [point_piece(a, a), make_segment((a, a), (Fraction(1, 4), Fraction(3, 4)))],
                                "fan-k")


CATALOG: Dict[str, CatalogEntry] = {
    entry.name: entry for entry in (
        CatalogEntry("constant-zero", "f(x) = {0}", _constant_zero, (True, False, True)),
        CatalogEntry("identity", "f(x) = {x}", _identity, (True, True, True)),
        CatalogEntry("tent", "tent map through (1/2, 1)", _tent, (False, True, True)),
        CatalogEntry("mirror", "f(x) = {x, 1-x}", _mirror, (True, True, False)),
        CatalogEntry("id-or-B", "f = B on [0,a], identity on [a,1]", _id_or_b, (True, False, True),
                     {"a": HALF, "b_lo": Fraction(1, 4), "b_hi": Fraction(3, 4)}),
        CatalogEntry("full-on-A-else-B", "f = [0,1] on [0,a], B on [a,1]", _full_on_a_else_b,
                     (True, True, True),
                     {"a": Fraction(1, 4), "b_lo": HALF, "b_hi": Fraction(3, 4)}),
        CatalogEntry("down-cone", "f(a) = [0,a], identity elsewhere", _down_cone, (True, True, True),
                     {"a": HALF}),
        CatalogEntry("up-cone", "f(a) = [a,1], identity elsewhere", _up_cone, (True, True, True),
                     {"a": HALF}),
        CatalogEntry("origin-fan", "f(0) = [0,1], f(x) = x otherwise", _origin_fan, (True, True, True)),
        CatalogEntry("left-top", "f(0) = [0,1], f(x) = 1 otherwise", _left_top, (True, True, True)),
        CatalogEntry("mid-bar", "f(0) = [0,1/2], f(1) = [1/2,1], f(x) = 1/2 otherwise", _mid_bar,
                     (True, True, True)),
        CatalogEntry("diagonal-plus-k", "Δ ∪ [0,a/2]×{(1+a)/2}", _diagonal_plus_k, (True, True, False),
                     {"a": HALF}, K_PARAMS),
        CatalogEntry("diagonal-plus-corner", "Δ ∪ {(0,1)}", _diagonal_plus_corner, (True, True, False)),
        CatalogEntry("fan-k", "Δ ∪ segment (1/2,1/2)–(1/4,3/4)", _fan_k, (True, True, False)),
    )
}
ALIASES = {
    "reflection": "mirror",
    "example-6.1": "origin-fan",
    "example-6.2": "left-top",
    "example-6.3": "mid-bar",
    "example-6.4": "mirror",
    "lemma-4.4": "diagonal-plus-k",
}


def catalog_names() -> List[str]:
    return list(CATALOG)


def resolve_name(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in CATALOG:
        raise CatalogError(f"❌ Unknown gallery entry '{name}'; known: {', '.join(CATALOG)}")
    return name


def make_example(spec: ExampleSpec) -> Relation:
    name = resolve_name(spec.name)
    entry = CATALOG[name]
    unknown = {key for key, _ in spec.params} - set(entry.defaults) - set(entry.optional)
    if unknown:
        raise CatalogError(f"❌ '{name}' takes no parameter(s) {sorted(unknown)}")
    relation = entry.builder(spec)
    logger.debug(f"🔍 Built gallery entry {relation}")
    return relation


def expected_flags(name: str) -> Tuple[bool, bool, bool]:
    return CATALOG[resolve_name(name)].expected


def example(name: str, **params) -> Relation:
    return make_example(ExampleSpec.of(name, **params))


def build_gallery(names: Optional[Sequence[str]] = None) -> Dict[str, Relation]:
    return {name: example(name) for name in (names or catalog_names())}


def gallery_params(name: str) -> Mapping[str, Fraction]:
    return dict(CATALOG[resolve_name(name)].defaults)
