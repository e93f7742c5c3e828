"""
🎨 SVG RENDERER
===============
Deterministic SVG drawings of relation graphs and of G-sets of dimension at
most 3 (three coordinate-pair panels side by side for dimension 3).

Cell outlines come from LP optima in the axis and diagonal directions; they
are for display only and never feed a decision.
"""

import logging
import math
from fractions import Fraction
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from core.errors import DimensionMismatchError
from core.pieces import Rect
from core.polytopes import Cell, cell_feasible, cell_max, cell_min, cell_optimum, fm_project
from core.relation import Relation
from engines.mahavier_engine import GSet
from utils.config import RenderConfig

logger = logging.getLogger(__name__)

PREAMBLE = """\
<?xml version="1.0" standalone="no"?>
<svg width="%(width)d" height="%(height)d" viewBox="0 0 %(width)d %(height)d" version="1.1"
    xmlns="http://www.w3.org/2000/svg">
<title>%(title)s</title>
<rect x="0" y="0" width="%(width)d" height="%(height)d" style="fill:#ffffff"/>
"""

POSTAMBLE = """\
</svg>
"""

DIRECTIONS = [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)]


class SVG:
    """Unit-square panels laid out left to right, y axis pointing up"""

    def __init__(self, config: RenderConfig, panels: int = 1, title: str = ""):
        self.config = config
        self.panels = panels
        self.title = title
        self.commands: List[str] = []

    @property
    def width(self) -> int:
        return self.panels * (self.config.size + self.config.margin) + self.config.margin

    @property
    def height(self) -> int:
        return self.config.size + 2 * self.config.margin + 16

    def _num(self, value: float) -> str:
        return f"{value:.{self.config.precision}f}"

    def to_canvas(self, panel: int, x, y) -> Tuple[str, str]:
        size, margin = self.config.size, self.config.margin
        left = margin + panel * (size + margin)
        return self._num(left + float(x) * size), self._num(margin + (1 - float(y)) * size)

    def frame(self, panel: int, label: str) -> None:
        x, y = self.to_canvas(panel, 0, 1)
        size = self.config.size
        self.commands.append(
            f'<rect x="{x}" y="{y}" width="{size}" height="{size}" '
            f'style="fill:none;stroke:{self.config.frame_color};stroke-width:1"/>')
        lx, ly = self.to_canvas(panel, 0, 0)
        self.commands.append(
            f'<text x="{lx}" y="{self._num(float(ly) + 14)}" fill="#666666" font-size="11" '
            f'font-family="monospace" xml:space="preserve">{_escape(label)}</text>')

    def line(self, panel: int, points: Sequence[Tuple], color: str, width: float = 2) -> None:
        coords = " ".join(",".join(self.to_canvas(panel, x, y)) for x, y in points)
        self.commands.append(
            f'<polyline points="{coords}" style="fill:none;stroke:{color};stroke-width:{width}"/>')

    def dot(self, panel: int, x, y, color: str) -> None:
        cx, cy = self.to_canvas(panel, x, y)
        self.commands.append(f'<circle cx="{cx}" cy="{cy}" r="3" style="fill:{color}"/>')

    def polygon(self, panel: int, points: Sequence[Tuple], color: str, opacity: str) -> None:
        coords = " ".join(",".join(self.to_canvas(panel, x, y)) for x, y in points)
        self.commands.append(
            f'<polygon points="{coords}" style="fill:{color};fill-opacity:{opacity};'
            f'stroke:{color};stroke-width:1"/>')

    def shape(self, panel: int, points: Sequence[Tuple], color: str, opacity: str) -> None:
        """Polygon, segment or point depending on how many distinct vertices there are"""
        if len(points) == 1:
            self.dot(panel, points[0][0], points[0][1], color)
        elif len(points) == 2:
            self.line(panel, points, color)
        else:
            self.polygon(panel, points, color, opacity)

    def document(self) -> str:
        header = PREAMBLE % {"width": self.width, "height": self.height, "title": _escape(self.title)}
        return header + "".join(command + "\n" for command in self.commands) + POSTAMBLE

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.document(), encoding="utf-8")
        return path


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def cell_outline(cell: Cell) -> List[Tuple[Fraction, Fraction]]:
    """Distinct LP optima of a 2-D cell in eight directions, ordered by angle"""
    if cell.dim != 2:
        raise DimensionMismatchError(f"❌ Outline needs a 2-D cell, got dimension {cell.dim}")
    if not cell_feasible(cell):
        return []
    vertices = []
    for direction in DIRECTIONS:
        _, point = cell_optimum(cell, [Fraction(v) for v in direction])
        vertex = (point[0], point[1])
        if vertex not in vertices:
            vertices.append(vertex)
    cx = sum(float(v[0]) for v in vertices) / len(vertices)
    cy = sum(float(v[1]) for v in vertices) / len(vertices)
    return sorted(vertices, key=lambda v: (math.atan2(float(v[1]) - cy, float(v[0]) - cx), v))


def draw_relation(svg: SVG, panel: int, r: Relation) -> None:
    color, opacity = svg.config.graph_color, svg.config.cell_opacity
    for piece in r.pieces:
        if isinstance(piece, Rect):
            svg.shape(panel, list(dict.fromkeys(piece.corners())), color, opacity)
        else:
            svg.line(panel, [piece.p, piece.q], color)


def render_relation(r: Relation, config: RenderConfig) -> SVG:
    svg = SVG(config, 1, r.name)
    svg.frame(0, f"{r.name}: horizontal x, vertical f(x)")
    draw_relation(svg, 0, r)
    return svg


def _panel_pairs(dim: int) -> List[Tuple[int, int]]:
    if dim == 2:
        return [(1, 2)]
    return [(1, 2), (1, 3), (2, 3)]


def render_gset(g: GSet, config: RenderConfig, title: str = "") -> SVG:
    if not 1 <= g.dim <= 3:
        raise DimensionMismatchError(f"❌ Can only render G-sets of dimension <= 3, got {g.dim}; "
                                     f"project first")
    if g.dim == 1:
        svg = SVG(config, 1, title)
        svg.frame(0, "x1")
        for cell in g.cells:
            lo, hi = cell_min(cell, [Fraction(1)]), cell_max(cell, [Fraction(1)])
            points = list(dict.fromkeys([(lo, Fraction(0)), (hi, Fraction(0))]))
            svg.shape(0, points, config.cell_color, config.cell_opacity)
        return svg
    pairs = _panel_pairs(g.dim)
    svg = SVG(config, len(pairs), title)
    for panel, keep in enumerate(pairs):
        svg.frame(panel, f"horizontal x{keep[0]}, vertical x{keep[1]}")
        for cell in g.cells:
            flat = cell if g.dim == 2 else fm_project(cell, keep)
            outline = cell_outline(flat)
            if outline:
                svg.shape(panel, outline, config.cell_color, config.cell_opacity)
    return svg


def render_svg(target: Union[Relation, GSet], path: Union[str, Path], config: RenderConfig,
               title: str = "") -> Path:
    svg = render_relation(target, config) if isinstance(target, Relation) else render_gset(target, config, title)
    written = svg.save(path)
    logger.info(f"🎨 Wrote {written}")
    return written
