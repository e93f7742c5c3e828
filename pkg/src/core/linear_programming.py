"""
EXACT RATIONAL LINEAR PROGRAMMING
=================================
🔢 Linear constraints over fractions.Fraction
🧮 Equality-elimination presolve with a bounds-only fast path
📐 Phase-1 / phase-2 tableau simplex with Bland's rule (no tolerances)
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import GeometryError
from .intervals import as_rational

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]


class ConstraintKind(str, Enum):
    LE = "<="
    EQ = "="


@dataclass(frozen=True)
class LinearConstraint:
    """coefficients · x (<= or =) bound"""
    coefficients: Vector
    bound: Fraction
    kind: ConstraintKind = ConstraintKind.LE

    def __post_init__(self):
        coefficients = tuple(as_rational(v) for v in self.coefficients)
        if not any(coefficients):
            raise GeometryError("❌ Linear constraint needs a nonzero coefficient")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "bound", as_rational(self.bound))
        object.__setattr__(self, "kind", ConstraintKind(self.kind))

    @property
    def dim(self) -> int:
        return len(self.coefficients)

    @property
    def is_equality(self) -> bool:
        return self.kind is ConstraintKind.EQ

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        return sum((a * x for a, x in zip(self.coefficients, point)), Fraction(0))

    def satisfied_by(self, point: Sequence[Fraction]) -> bool:
        value = self.evaluate(point)
        if self.is_equality:
            return value == self.bound
        return value <= self.bound

    def halfspaces(self) -> List[Tuple[Vector, Fraction]]:
        """The constraint as a list of (a, b) pairs meaning a·x <= b"""
        if self.is_equality:
            negated = tuple(-a for a in self.coefficients)
            return [(self.coefficients, self.bound), (negated, -self.bound)]
        return [(self.coefficients, self.bound)]

    def normalized(self) -> "LinearConstraint":
        """Scale so the first nonzero coefficient has absolute value 1 (sign kept for <=)"""
        lead = next(a for a in self.coefficients if a != 0)
        scale = lead if self.is_equality else abs(lead)
        if scale == 1:
            return self
        return LinearConstraint(tuple(a / scale for a in self.coefficients),
                                self.bound / scale, self.kind)

    def permuted(self, order: Sequence[int]) -> "LinearConstraint":
        """New constraint whose coordinate i is old coordinate order[i] (0-based)"""
        return LinearConstraint(tuple(self.coefficients[j] for j in order), self.bound, self.kind)

    def __str__(self) -> str:
        terms = [f"{a}·x{j + 1}" for j, a in enumerate(self.coefficients) if a != 0]
        return f"{' + '.join(terms)} {self.kind.value} {self.bound}"


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    point: Optional[Vector] = None
    value: Optional[Fraction] = None


class UnboundedProblem(GeometryError):
    code = "UNBOUNDED"


class _Substitution:
    """Eliminated variables expressed as const + coeffs · x over the remaining variables"""

    def __init__(self, dim: int):
        self.dim = dim
        self.exprs: Dict[int, Tuple[List[Fraction], Fraction]] = {}

    def apply(self, coeffs: List[Fraction], bound: Fraction) -> Tuple[List[Fraction], Fraction]:
        coeffs = list(coeffs)
        for var, (expr, const) in self.exprs.items():
            a = coeffs[var]
            if a == 0:
                continue
            coeffs[var] = Fraction(0)
            for j, c in enumerate(expr):
                if c:
                    coeffs[j] += a * c
            bound -= a * const
        return coeffs, bound

    def eliminate(self, coeffs: List[Fraction], bound: Fraction, var: int) -> None:
        pivot = coeffs[var]
        expr = [Fraction(0) if j == var else -a / pivot for j, a in enumerate(coeffs)]
        const = bound / pivot
        for other, (other_expr, other_const) in list(self.exprs.items()):
            a = other_expr[var]
            if a == 0:
                continue
            updated = list(other_expr)
            updated[var] = Fraction(0)
            for j, c in enumerate(expr):
                if c:
                    updated[j] += a * c
            self.exprs[other] = (updated, other_const + a * const)
        self.exprs[var] = (expr, const)

    def complete(self, partial: List[Fraction]) -> List[Fraction]:
        point = list(partial)
        for var, (expr, const) in self.exprs.items():
            point[var] = const + sum((c * point[j] for j, c in enumerate(expr) if c), Fraction(0))
        return point


def solve_lp(dim: int,
             constraints: Sequence[LinearConstraint],
             objective: Optional[Sequence[Fraction]] = None) -> LPResult:
    """Decide feasibility of the system and, given an objective, maximize it exactly.

    Variables are free except where the constraints bound them; every variable
    left after equality elimination must carry a finite lower bound (cells
    always include the unit box).
    """
    subs = _Substitution(dim)
    for constraint in constraints:
        if constraint.dim != dim:
            raise GeometryError(f"❌ Constraint of length {constraint.dim} in a {dim}-variable system")
        if not constraint.is_equality:
            continue
        coeffs, bound = subs.apply(constraint.coefficients, constraint.bound)
        var = next((j for j in range(dim - 1, -1, -1) if coeffs[j] != 0), None)
        if var is None:
            if bound != 0:
                return LPResult(False)
            continue
        subs.eliminate(coeffs, bound, var)

    free = [j for j in range(dim) if j not in subs.exprs]
    lower: Dict[int, Optional[Fraction]] = {j: None for j in free}
    upper: Dict[int, Optional[Fraction]] = {j: None for j in free}
    general: List[Tuple[List[Fraction], Fraction]] = []
    for constraint in constraints:
        if constraint.is_equality:
            continue
        coeffs, bound = subs.apply(constraint.coefficients, constraint.bound)
        support = [j for j in free if coeffs[j] != 0]
        if not support:
            if bound < 0:
                return LPResult(False)
            continue
        if len(support) == 1:
            j = support[0]
            limit = bound / coeffs[j]
            if coeffs[j] > 0:
                upper[j] = limit if upper[j] is None else min(upper[j], limit)
            else:
                lower[j] = limit if lower[j] is None else max(lower[j], limit)
            continue
        general.append((coeffs, bound))

    for j in free:
        if lower[j] is not None and upper[j] is not None and lower[j] > upper[j]:
            return LPResult(False)

    reduced_objective: Optional[List[Fraction]] = None
    if objective is not None:
        reduced_objective, _ = subs.apply([as_rational(v) for v in objective], Fraction(0))

    if not general:
        partial = [Fraction(0)] * dim
        for j in free:
            partial[j] = _pick_bound(j, lower[j], upper[j], reduced_objective)
        point = tuple(subs.complete(partial))
    else:
        point = _solve_general(dim, free, lower, upper, general, reduced_objective, subs)
        if point is None:
            return LPResult(False)

    value = None
    if objective is not None:
        value = sum((as_rational(c) * x for c, x in zip(objective, point)), Fraction(0))
    return LPResult(True, point, value)


def _pick_bound(j: int, lo: Optional[Fraction], hi: Optional[Fraction],
                objective: Optional[List[Fraction]]) -> Fraction:
    direction = objective[j] if objective is not None else Fraction(0)
    if direction > 0:
        if hi is None:
            raise UnboundedProblem(f"❌ Objective unbounded along x{j + 1}")
        return hi
    if direction < 0:
        if lo is None:
            raise UnboundedProblem(f"❌ Objective unbounded along x{j + 1}")
        return lo
    if lo is not None:
        return lo
    if hi is not None:
        return min(hi, Fraction(0))
    return Fraction(0)


def _solve_general(dim, free, lower, upper, general, objective, subs) -> Optional[Vector]:
    """Shift free variables to y = x - lower >= 0 and run the tableau simplex"""
    for j in free:
        if lower[j] is None:
            raise UnboundedProblem(f"❌ Variable x{j + 1} has no lower bound")
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for coeffs, bound in general:
        rows.append([coeffs[j] for j in free])
        rhs.append(bound - sum((coeffs[j] * lower[j] for j in free), Fraction(0)))
    for k, j in enumerate(free):
        if upper[j] is not None:
            row = [Fraction(0)] * len(free)
            row[k] = Fraction(1)
            rows.append(row)
            rhs.append(upper[j] - lower[j])
    cost = [Fraction(0)] * len(free)
    if objective is not None:
        cost = [objective[j] for j in free]
    shifted = _simplex(rows, rhs, cost, optimize=objective is not None)
    if shifted is None:
        return None
    partial = [Fraction(0)] * dim
    for k, j in enumerate(free):
        partial[j] = lower[j] + shifted[k]
    return tuple(subs.complete(partial))


def _pivot(tableau: List[List[Fraction]], objective_row: List[Fraction],
           basis: List[int], row: int, column: int) -> None:
    pivot_row = tableau[row]
    pivot = pivot_row[column]
    if pivot != 1:
        pivot_row[:] = [v / pivot for v in pivot_row]
    for i, other in enumerate(tableau):
        if i == row:
            continue
        factor = other[column]
        if factor:
            other[:] = [a - factor * b for a, b in zip(other, pivot_row)]
    factor = objective_row[column]
    if factor:
        objective_row[:] = [a - factor * b for a, b in zip(objective_row, pivot_row)]
    basis[row] = column


def _minimize(tableau, objective_row, basis, allowed: int) -> bool:
    """Bland's-rule iterations; False when the objective is unbounded below"""
    while True:
        entering = next((j for j in range(allowed) if objective_row[j] < 0), None)
        if entering is None:
            return True
        leaving = None
        best = None
        for i, row in enumerate(tableau):
            a = row[entering]
            if a > 0:
                ratio = row[-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leaving]):
                    best = ratio
                    leaving = i
        if leaving is None:
            return False
        _pivot(tableau, objective_row, basis, leaving, entering)


def _simplex(rows: List[List[Fraction]], rhs: List[Fraction], cost: List[Fraction],
             optimize: bool) -> Optional[List[Fraction]]:
    """max cost·y subject to rows·y <= rhs, y >= 0; None when infeasible"""
    n = len(cost)
    m = len(rows)
    needs_artificial = [b < 0 for b in rhs]
    artificial_count = sum(needs_artificial)
    width = n + m + artificial_count
    tableau: List[List[Fraction]] = []
    basis: List[int] = []
    next_artificial = n + m
    for i, (row, b) in enumerate(zip(rows, rhs)):
        line = list(row) + [Fraction(0)] * (m + artificial_count) + [b]
        line[n + i] = Fraction(1)
        if needs_artificial[i]:
            line = [-v for v in line]
            line[next_artificial] = Fraction(1)
            basis.append(next_artificial)
            next_artificial += 1
        else:
            basis.append(n + i)
        tableau.append(line)

    if artificial_count:
        phase_one = [Fraction(0)] * (width + 1)
        for j in range(n + m, width):
            phase_one[j] = Fraction(1)
        for i, line in enumerate(tableau):
            if needs_artificial[i]:
                phase_one = [a - b for a, b in zip(phase_one, line)]
        _minimize(tableau, phase_one, basis, width)
        if -phase_one[-1] > 0:
            return None
        for i in range(len(tableau) - 1, -1, -1):
            if basis[i] < n + m:
                continue
            column = next((j for j in range(n + m) if tableau[i][j] != 0), None)
            if column is None:
                tableau.pop(i)
                basis.pop(i)
            else:
                _pivot(tableau, phase_one, basis, i, column)

    if optimize and tableau:
        phase_two = [Fraction(0)] * (width + 1)
        for j in range(n):
            phase_two[j] = -cost[j]
        for i, line in enumerate(tableau):
            c = -cost[basis[i]] if basis[i] < n else Fraction(0)
            if c:
                phase_two = [a - c * b for a, b in zip(phase_two, line)]
        if not _minimize(tableau, phase_two, basis, n + m):
            raise UnboundedProblem("❌ Objective unbounded over the feasible region")
    elif optimize and any(c > 0 for c in cost):
        raise UnboundedProblem("❌ Objective unbounded over the feasible region")

    solution = [Fraction(0)] * n
    for i, var in enumerate(basis):
        if var < n:
            solution[var] = tableau[i][-1]
    return solution
