"""
CONVEX CELLS IN THE UNIT CUBE
=============================
📦 Cell: rational polytope in [0,1]^n given by linear constraints
🔍 Feasibility / optimization through the exact LP
✂️  Fourier–Motzkin projection onto kept coordinates
🧩 Coverage of a cell by a finite union of cells (hyperplane splitting)

Coordinates are numbered from 1 in the public API (x1 … xn).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

from .errors import DimensionMismatchError, GeometryError, InfeasibleCellError
from .linear_programming import ConstraintKind, LinearConstraint, Vector, solve_lp

logger = logging.getLogger(__name__)


def _unit_vector(dim: int, index: int, sign: int = 1) -> Tuple[Fraction, ...]:
    return tuple(Fraction(sign) if j == index else Fraction(0) for j in range(dim))


def box_constraints(dim: int) -> List[LinearConstraint]:
    constraints = []
    for i in range(dim):
        constraints.append(LinearConstraint(_unit_vector(dim, i), Fraction(1)))
        constraints.append(LinearConstraint(_unit_vector(dim, i, -1), Fraction(0)))
    return constraints


def _dedup(constraints: Iterable[LinearConstraint]) -> Tuple[LinearConstraint, ...]:
    seen = set()
    unique = []
    for constraint in constraints:
        key = constraint.normalized()
        if key in seen:
            continue
        seen.add(key)
        unique.append(key)
    return tuple(unique)


@dataclass(frozen=True)
class Cell:
    """Convex polytope {x in [0,1]^dim : constraints}"""
    dim: int
    constraints: Tuple[LinearConstraint, ...]

    def __post_init__(self):
        if self.dim < 1:
            raise GeometryError(f"❌ Cell dimension must be positive, got {self.dim}")
        for constraint in self.constraints:
            if constraint.dim != self.dim:
                raise DimensionMismatchError(
                    f"❌ Constraint of length {constraint.dim} in a {self.dim}-dimensional cell")

    @classmethod
    def create(cls, dim: int, constraints: Iterable[LinearConstraint] = ()) -> "Cell":
        """Cell with the unit box prepended and exact duplicates removed"""
        return cls(dim, _dedup(box_constraints(dim) + list(constraints)))

    @classmethod
    def box(cls, dim: int) -> "Cell":
        return cls.create(dim)

    def with_constraints(self, extra: Iterable[LinearConstraint]) -> "Cell":
        return Cell(self.dim, _dedup(list(self.constraints) + list(extra)))

    def contains_point(self, point: Sequence[Fraction]) -> bool:
        return all(c.satisfied_by(point) for c in self.constraints)

    def permuted(self, order: Sequence[int]) -> "Cell":
        """Coordinate i of the result is coordinate order[i] of this cell (0-based)"""
        return Cell(self.dim, tuple(c.permuted(order) for c in self.constraints))

    def reversed(self) -> "Cell":
        return self.permuted(list(range(self.dim - 1, -1, -1)))


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    witness: Optional[Vector] = None

    def __bool__(self) -> bool:
        return self.feasible


def cell_feasible(cell: Cell) -> FeasibilityResult:
    result = solve_lp(cell.dim, cell.constraints)
    return FeasibilityResult(result.feasible, result.point)


def cell_optimum(cell: Cell, objective: Sequence[Fraction]) -> Tuple[Fraction, Vector]:
    """Exact maximum of objective·x over the cell together with a maximizer"""
    if len(objective) != cell.dim:
        raise DimensionMismatchError(f"❌ Objective of length {len(objective)} for a {cell.dim}-cell")
    result = solve_lp(cell.dim, cell.constraints, objective)
    if not result.feasible:
        raise InfeasibleCellError("❌ Cannot optimize over an infeasible cell")
    return result.value, result.point


def cell_max(cell: Cell, objective: Sequence[Fraction]) -> Fraction:
    return cell_optimum(cell, objective)[0]


def cell_min(cell: Cell, objective: Sequence[Fraction]) -> Fraction:
    return -cell_max(cell, [-Fraction(a) for a in objective])


def merge_cells(a: Cell, b: Cell) -> Cell:
    if a.dim != b.dim:
        raise DimensionMismatchError(f"❌ Cannot merge cells of dimensions {a.dim} and {b.dim}")
    return a.with_constraints(b.constraints)


def cells_intersect(a: Cell, b: Cell) -> bool:
    return cell_feasible(merge_cells(a, b)).feasible


def cell_contains(outer: Cell, inner: Cell) -> bool:
    """inner ⊆ outer, decided constraint by constraint with cell_max over inner"""
    if outer.dim != inner.dim:
        raise DimensionMismatchError(f"❌ Dimension mismatch: {outer.dim} vs {inner.dim}")
    if not cell_feasible(inner):
        return True
    inner_set = set(inner.constraints)
    for constraint in outer.constraints:
        if constraint in inner_set:
            continue
        for coefficients, bound in constraint.halfspaces():
            if cell_max(inner, coefficients) > bound:
                return False
    return True


def cells_equal(a: Cell, b: Cell) -> bool:
    return cell_contains(a, b) and cell_contains(b, a)


def _check_keep(dim: int, keep: Sequence[int]) -> List[int]:
    keep = list(keep)
    if not keep:
        raise GeometryError("❌ Projection needs at least one kept coordinate")
    if any(b <= a for a, b in zip(keep, keep[1:])):
        raise GeometryError(f"❌ Kept coordinates must be strictly increasing: {keep}")
    if keep[0] < 1 or keep[-1] > dim:
        raise GeometryError(f"❌ Kept coordinates {keep} outside 1..{dim}")
    return keep


def _box_rows(dim: int, var: int) -> List[Tuple[List[Fraction], Fraction]]:
    upper = [Fraction(0)] * dim
    upper[var] = Fraction(1)
    lower = [Fraction(0)] * dim
    lower[var] = Fraction(-1)
    return [(upper, Fraction(1)), (lower, Fraction(0))]


def _scaled(row: Tuple[List[Fraction], Fraction]) -> Optional[Tuple[Tuple[Fraction, ...], Fraction]]:
    coeffs, bound = row
    lead = next((a for a in coeffs if a != 0), None)
    if lead is None:
        return None
    scale = abs(lead)
    return tuple(a / scale for a in coeffs), bound / scale


def _box_implied(coeffs: Sequence[Fraction], bound: Fraction) -> bool:
    return sum((a for a in coeffs if a > 0), Fraction(0)) <= bound


def _prune(rows: List[Tuple[List[Fraction], Fraction]]) -> Tuple[List[Tuple[List[Fraction], Fraction]], bool]:
    """Drop duplicates, trivial rows and rows implied by the unit box; flag contradictions"""
    kept = []
    seen = set()
    for row in rows:
        scaled = _scaled(row)
        if scaled is None:
            if row[1] < 0:
                return [], True
            continue
        if scaled in seen or _box_implied(*scaled):
            continue
        seen.add(scaled)
        kept.append((list(scaled[0]), scaled[1]))
    return kept, False


def fm_project(cell: Cell, keep: Sequence[int], lp_pruning: bool = False) -> Cell:
    """Orthogonal projection onto the kept coordinates (1-based, increasing)"""
    keep = _check_keep(cell.dim, keep)
    dim = cell.dim
    kept_zero_based = [k - 1 for k in keep]
    dropped = [j for j in range(dim) if j not in kept_zero_based]

    equalities = [(list(c.coefficients), c.bound) for c in cell.constraints if c.is_equality]
    inequalities = [(list(c.coefficients), c.bound) for c in cell.constraints if not c.is_equality]
    contradiction = False

    for var in dropped:
        inequalities.extend(_box_rows(dim, var))
        pivot_row = next((row for row in equalities if row[0][var] != 0), None)
        if pivot_row is not None:
            equalities.remove(pivot_row)
            p_coeffs, p_bound = pivot_row
            pivot = p_coeffs[var]

            def substitute(row):
                coeffs, bound = row
                a = coeffs[var]
                if a == 0:
                    return row
                factor = a / pivot
                return ([c - factor * pc for c, pc in zip(coeffs, p_coeffs)], bound - factor * p_bound)

            equalities = [substitute(row) for row in equalities]
            inequalities = [substitute(row) for row in inequalities]
        else:
            positive = [row for row in inequalities if row[0][var] > 0]
            negative = [row for row in inequalities if row[0][var] < 0]
            combined = [row for row in inequalities if row[0][var] == 0]
            for p_coeffs, p_bound in positive:
                scale_p = p_coeffs[var]
                for n_coeffs, n_bound in negative:
                    scale_n = -n_coeffs[var]
                    coeffs = [pc / scale_p + nc / scale_n for pc, nc in zip(p_coeffs, n_coeffs)]
                    coeffs[var] = Fraction(0)
                    combined.append((coeffs, p_bound / scale_p + n_bound / scale_n))
            inequalities = combined

        checked_equalities = []
        for coeffs, bound in equalities:
            if not any(coeffs):
                if bound != 0:
                    contradiction = True
                continue
            checked_equalities.append((coeffs, bound))
        equalities = checked_equalities
        inequalities, failed = _prune(inequalities)
        contradiction = contradiction or failed
        if contradiction:
            break
        logger.debug(f"🔍 Eliminated x{var + 1}: {len(equalities)} equalities, "
                     f"{len(inequalities)} inequalities remain")

    new_dim = len(keep)
    if contradiction:
        return Cell.create(new_dim, [LinearConstraint(_unit_vector(new_dim, 0), Fraction(-1))])

    def restrict(coeffs):
        return tuple(coeffs[j] for j in kept_zero_based)

    projected = [LinearConstraint(restrict(c), b, ConstraintKind.EQ) for c, b in equalities]
    projected += [LinearConstraint(restrict(c), b) for c, b in inequalities]
    result = Cell.create(new_dim, projected)
    if lp_pruning:
        result = remove_redundant_constraints(result)
    return result


def remove_redundant_constraints(cell: Cell) -> Cell:
    """Drop inequalities implied by the rest of the system (one LP per constraint)"""
    box = set(box_constraints(cell.dim))
    current = list(cell.constraints)
    for constraint in list(current):
        if constraint.is_equality or constraint in box:
            continue
        others = Cell(cell.dim, tuple(c for c in current if c is not constraint))
        if not cell_feasible(others):
            break
        if cell_max(others, constraint.coefficients) <= constraint.bound:
            current.remove(constraint)
    return Cell(cell.dim, tuple(current))


def uncovered_point(cell: Cell, cover: Sequence[Cell]) -> Optional[Vector]:
    """A point of cell outside every cover cell, or None when the union covers it.

    Cover hyperplanes that strictly cut the cell split it into two halves that
    are checked recursively. When no hyperplane cuts, each touching cover cell
    meets the cell only inside a proper face. Averaging points lying off those
    faces gives an uncovered point p; the midpoint of p and the average of the
    face points is returned, which stays off every face.
    """
    for other in cover:
        if other.dim != cell.dim:
            raise DimensionMismatchError(f"❌ Cover cell of dimension {other.dim} vs {cell.dim}")
    feasible = cell_feasible(cell)
    if not feasible:
        return None
    relevant = [other for other in cover if cells_intersect(cell, other)]
    if not relevant:
        return feasible.witness
    if any(cell_contains(other, cell) for other in relevant):
        return None

    far_points: List[Vector] = []
    face_points: List[Vector] = []
    for other in relevant:
        far_point = face_point = None
        for constraint in other.constraints:
            for coefficients, bound in constraint.halfspaces():
                high, high_point = cell_optimum(cell, coefficients)
                if high <= bound:
                    continue
                negated_low, low_point = cell_optimum(cell, [-a for a in coefficients])
                low = -negated_low
                if low < bound:
                    below = cell.with_constraints([LinearConstraint(coefficients, bound)])
                    above = cell.with_constraints(
                        [LinearConstraint(tuple(-a for a in coefficients), -bound)])
                    witness = uncovered_point(below, relevant)
                    if witness is not None:
                        return witness
                    return uncovered_point(above, relevant)
                if far_point is None:
                    far_point, face_point = high_point, low_point
        far_points.append(far_point)
        face_points.append(face_point)
    far = _average(far_points)
    near = _average(face_points)
    return tuple((p + q) / 2 for p, q in zip(far, near))


def _average(points: Sequence[Vector]) -> Vector:
    return tuple(sum(coords, Fraction(0)) / len(points) for coords in zip(*points))


def cell_in_union(cell: Cell, cover: Sequence[Cell]) -> bool:
    return uncovered_point(cell, cover) is None
