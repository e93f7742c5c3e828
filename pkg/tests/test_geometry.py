#!/usr/bin/env python3
"""
Test Exact Geometry
===================
Interval sets, pieces, the rational LP and convex cells
"""

import random
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.errors import DimensionMismatchError, GeometryError, InfeasibleCellError
from core.intervals import Interval, as_rational, covers, format_rational, normalize_intervals, uncovered_value
from core.linear_programming import ConstraintKind, LinearConstraint, solve_lp
from core.pieces import Rect, Segment, embed_piece, make_rect, make_segment, piece_intersects, piece_within, point_piece
from core.polytopes import (Cell, cell_contains, cell_feasible, cell_in_union, cell_max, cell_min, cell_optimum,
                            cells_equal, cells_intersect, fm_project, remove_redundant_constraints, uncovered_point)
from utils.union_find import UnionFind

EQ = ConstraintKind.EQ


def iv(lo, hi):
    return Interval(F(lo), F(hi))


class TestRationals:
    def test_parse_fraction_strings(self):
        assert as_rational("3/6") == F(1, 2)
        assert as_rational(1) == F(1)
        assert format_rational(F(2, 4)) == "1/2"
        assert format_rational(F(1)) == "1"

    @pytest.mark.parametrize("bad", ["0.5", "1e-3", "1/0", "half", 0.5, True])
    def test_inexact_values_refused(self, bad):
        with pytest.raises(GeometryError):
            as_rational(bad)


class TestIntervals:
    def test_overlapping_merge(self):
        result = normalize_intervals([iv(0, F(1, 2)), iv(F(1, 4), F(3, 4))])
        assert result.intervals == (iv(0, F(3, 4)),)

    def test_point_interval_preserved(self):
        assert normalize_intervals([iv(F(1, 2), F(1, 2))]).intervals == (Interval.point(F(1, 2)),)

    def test_touching_intervals_merge(self):
        result = normalize_intervals([iv(F(1, 4), F(1, 2)), iv(0, F(1, 4))])
        assert result.intervals == (iv(0, F(1, 2)),)

    def test_disjoint_intervals_sorted(self):
        result = normalize_intervals([iv(F(3, 4), 1), iv(0, F(1, 4))])
        assert result.intervals == (iv(0, F(1, 4)), iv(F(3, 4), 1))

    def test_invalid_interval(self):
        with pytest.raises(GeometryError):
            Interval(F(1, 2), F(1, 4))
        with pytest.raises(GeometryError):
            Interval(F(0), F(3, 2))

    def test_covers(self):
        assert covers(normalize_intervals([iv(0, F(1, 2)), iv(F(1, 2), 1)]), iv(0, 1))
        assert not covers(normalize_intervals([iv(0, F(1, 2))]), iv(0, 1))
        assert covers(normalize_intervals([iv(0, 1)]), iv(F(1, 3), F(2, 3)))

    def test_uncovered_value_is_gap_midpoint(self):
        a = normalize_intervals([iv(0, F(1, 4)), iv(F(3, 4), 1)])
        assert uncovered_value(a, iv(0, 1)) == F(1, 2)
        assert uncovered_value(normalize_intervals([]), iv(F(1, 3), 1)) == F(1, 3)


class TestPieces:
    def test_axis_parallel_segment_becomes_rect(self):
        assert make_segment((0, 0), (0, 1)) == make_rect(0, 0, 0, 1)
        assert isinstance(make_segment((0, 1), (1, 0)), Segment)

    def test_segment_endpoints_ordered_by_x(self):
        s = make_segment((1, 0), (0, 1))
        assert s.p == (F(0), F(1))

    def test_diagonals_cross_at_center(self):
        assert piece_intersects(make_segment((0, 0), (1, 1)), make_segment((0, 1), (1, 0)))

    def test_edges_meet_at_corner(self):
        assert piece_intersects(make_rect(0, 0, 0, 1), make_rect(0, 1, 1, 1))

    def test_corner_point_off_diagonal(self):
        assert not piece_intersects(point_piece(0, 1), make_segment((0, 0), (1, 1)))

    def test_parallel_segments_do_not_meet(self):
        assert not piece_intersects(make_segment((0, 0), (F(1, 2), F(1, 2))),
                                    make_segment((F(1, 2), 0), (1, F(1, 2))))

    def test_piece_within(self):
        assert piece_within(point_piece(F(1, 2), F(1, 2)), make_segment((0, 0), (1, 1)))
        assert piece_within(make_rect(0, F(1, 2), 0, 0), make_rect(0, 1, 0, 0))
        assert not piece_within(make_rect(0, 1, 0, 0), make_rect(0, F(1, 2), 0, 0))

    def test_out_of_square_rejected(self):
        with pytest.raises(GeometryError):
            make_segment((0, 0), (2, 1))

    def test_embedding_places_pair_input_first(self):
        constraints = embed_piece(make_segment((0, 0), (1, F(1, 2))), 1, 0, 2)
        cell = Cell.create(2, constraints)
        # input coordinate is x2, output is x1 = x2 / 2
        assert cell.contains_point((F(1, 4), F(1, 2)))
        assert not cell.contains_point((F(1, 2), F(1, 4)))


class TestLinearProgramming:
    def test_zero_constraint_refused(self):
        with pytest.raises(GeometryError):
            LinearConstraint((0, 0), 1)

    def test_infeasible_system(self):
        result = solve_lp(1, [LinearConstraint((1,), 0, EQ), LinearConstraint((1,), 1, EQ)])
        assert not result.feasible


class TestCells:
    def test_diagonal_cell_feasible(self):
        cell = Cell.create(2, [LinearConstraint((1, -1), 0, EQ)])
        result = cell_feasible(cell)
        assert result
        assert cell.contains_point(result.witness)

    def test_contradictory_cell(self):
        cell = Cell.create(1, [LinearConstraint((1,), 0, EQ), LinearConstraint((1,), 1, EQ)])
        assert not cell_feasible(cell)

    def test_chain_of_equalities(self):
        cell = Cell.create(3, [LinearConstraint((1, -1, 0), 0, EQ), LinearConstraint((0, 1, -1), 0, EQ),
                               LinearConstraint((1, 0, 0), 1, EQ)])
        assert cell_feasible(cell).witness == (F(1), F(1), F(1))

    def test_cell_max_examples(self):
        diagonal = Cell.create(2, [LinearConstraint((1, -1), 0, EQ)])
        anti = Cell.create(2, [LinearConstraint((1, 1), 1, EQ)])
        left = Cell.create(2, [LinearConstraint((1, 0), 0, EQ)])
        assert cell_max(diagonal, [1, 0]) == 1
        assert cell_max(anti, [1, 1]) == 1
        assert cell_max(left, [1, 0]) == 0
        assert cell_min(anti, [1, -1]) == -1

    def test_cell_max_of_infeasible_cell(self):
        cell = Cell.create(1, [LinearConstraint((1,), 0, EQ), LinearConstraint((1,), 1, EQ)])
        with pytest.raises(InfeasibleCellError):
            cell_max(cell, [1])

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            Cell.create(2, [LinearConstraint((1, 0, 0), 0)])

    def test_containment_and_intersection(self):
        box = Cell.box(2)
        diagonal = Cell.create(2, [LinearConstraint((1, -1), 0, EQ)])
        corner = Cell.create(2, [LinearConstraint((1, 0), 0, EQ), LinearConstraint((0, 1), 1, EQ)])
        assert cell_contains(box, diagonal)
        assert not cell_contains(diagonal, box)
        assert not cells_intersect(diagonal, corner)
        assert cells_equal(diagonal, diagonal.with_constraints([LinearConstraint((1, 1), 2)]))


class TestProjection:
    def test_chain_projects_to_diagonal(self):
        cell = Cell.create(3, [LinearConstraint((1, -1, 0), 0, EQ), LinearConstraint((0, 1, -1), 0, EQ)])
        expected = Cell.create(2, [LinearConstraint((1, -1), 0, EQ)])
        assert cells_equal(fm_project(cell, [1, 3]), expected)

    def test_inequality_elimination(self):
        # x1 <= x2 <= 1/2 projects onto x1 <= 1/2
        cell = Cell.create(2, [LinearConstraint((1, -1), 0), LinearConstraint((0, 1), F(1, 2))])
        projected = fm_project(cell, [1])
        assert cell_max(projected, [1]) == F(1, 2)
        assert cell_min(projected, [1]) == 0

    def test_infeasible_projection_stays_infeasible(self):
        cell = Cell.create(2, [LinearConstraint((1, 0), 0, EQ), LinearConstraint((1, 0), 1, EQ)])
        assert not cell_feasible(fm_project(cell, [2]))

    def test_lp_pruning_keeps_the_set(self):
        cell = Cell.create(3, [LinearConstraint((1, -1, 0), 0), LinearConstraint((0, 1, -1), 0)])
        plain = fm_project(cell, [1, 3])
        pruned = fm_project(cell, [1, 3], lp_pruning=True)
        assert cells_equal(plain, pruned)

    @pytest.mark.parametrize("keep", [[2, 1], [], [0, 1], [1, 4]])
    def test_bad_keep_lists(self, keep):
        with pytest.raises(GeometryError):
            fm_project(Cell.box(3), keep)

    def test_redundant_constraint_removed(self):
        loose = LinearConstraint((1,), 2)
        cell = Cell.create(1, [loose])
        assert loose not in remove_redundant_constraints(cell).constraints


class TestCoverage:
    def test_two_halves_cover_the_square(self):
        left = Cell.create(2, [LinearConstraint((1, 0), F(1, 2))])
        right = Cell.create(2, [LinearConstraint((-1, 0), -F(1, 2))])
        assert cell_in_union(Cell.box(2), [left, right])

    def test_one_half_leaves_a_witness(self):
        left = Cell.create(2, [LinearConstraint((1, 0), F(1, 2))])
        witness = uncovered_point(Cell.box(2), [left])
        assert witness is not None
        assert witness[0] > F(1, 2)
        assert Cell.box(2).contains_point(witness)
        assert not left.contains_point(witness)

    def test_diagonal_covered_by_two_triangles(self):
        diagonal = Cell.create(2, [LinearConstraint((1, -1), 0, EQ)])
        below = Cell.create(2, [LinearConstraint((-1, 1), 0)])
        above = Cell.create(2, [LinearConstraint((1, -1), 0)])
        assert cell_in_union(diagonal, [below])
        assert cell_in_union(Cell.box(2), [below, above])

    def test_empty_cover(self):
        assert uncovered_point(Cell.box(1), []) is not None


class TestUnionFind:
    def test_groups_in_insertion_order(self):
        forest = UnionFind(range(5))
        forest.union(0, 3)
        forest.union(4, 1)
        assert forest.count() == 3
        assert forest.groups() == [(0, 3), (1, 4), (2,)]
        assert forest.find(3) == forest.find(0)


def random_cell(rng, dim, count):
    """Halfspaces through a random grid point plus slack, so the cell is never empty"""
    centre = [F(rng.randint(1, 7), 8) for _ in range(dim)]
    constraints = []
    for _ in range(count):
        coefficients = [rng.randint(-3, 3) for _ in range(dim)]
        if not any(coefficients):
            coefficients[rng.randrange(dim)] = 1
        bound = sum((a * c for a, c in zip(coefficients, centre)), F(0)) + F(rng.randint(0, 4), 8)
        constraints.append(LinearConstraint(tuple(coefficients), bound))
    return Cell.create(dim, constraints)


def fibre(cell, keep, point):
    """The cell with the kept coordinates pinned to point"""
    pins = [LinearConstraint(tuple(1 if j == k - 1 else 0 for j in range(cell.dim)), value, EQ)
            for k, value in zip(keep, point)]
    return cell.with_constraints(pins)


def grid(dim, k):
    if dim == 0:
        return [()]
    return [(F(i, k),) + rest for i in range(k + 1) for rest in grid(dim - 1, k)]


class TestRandomCells:
    @pytest.mark.parametrize("keep", [(1, 2), (1, 3), (2, 3), (2,)])
    @pytest.mark.parametrize("seed", range(8))
    def test_projection_matches_fibres(self, seed, keep):
        rng = random.Random(seed)
        cell = random_cell(rng, 3, rng.randint(1, 3))
        projected = fm_project(cell, keep, lp_pruning=bool(seed % 2))
        for point in grid(len(keep), 4):
            assert projected.contains_point(point) == bool(cell_feasible(fibre(cell, keep, point)))

    @pytest.mark.parametrize("seed", range(8))
    def test_projection_keeps_cell_points(self, seed):
        rng = random.Random(100 + seed)
        cell = random_cell(rng, 3, 3)
        projected = fm_project(cell, (1, 3))
        for _ in range(4):
            objective = [F(rng.randint(-2, 2)) for _ in range(3)]
            objective[rng.randrange(3)] = F(rng.choice([-1, 1]))
            _, point = cell_optimum(cell, objective)
            assert projected.contains_point((point[0], point[2]))

    @pytest.mark.parametrize("seed", range(12))
    def test_split_cell_is_covered(self, seed):
        rng = random.Random(200 + seed)
        cell = random_cell(rng, 2, 2)
        cut = random_cell(rng, 2, 1).constraints[-1]
        opposite = LinearConstraint(tuple(-a for a in cut.coefficients), -cut.bound)
        halves = [cell.with_constraints([cut]), cell.with_constraints([opposite])]
        assert cell_in_union(cell, halves)

    @pytest.mark.parametrize("seed", range(16))
    def test_coverage_agrees_with_grid(self, seed):
        rng = random.Random(300 + seed)
        cell = random_cell(rng, 2, 2)
        cover = [random_cell(rng, 2, rng.randint(1, 2)) for _ in range(rng.randint(1, 3))]
        uncovered = [p for p in grid(2, 24)
                     if cell.contains_point(p) and not any(c.contains_point(p) for c in cover)]
        witness = uncovered_point(cell, cover)
        if witness is None:
            assert not uncovered
            assert cell_in_union(cell, cover)
        else:
            assert cell.contains_point(witness)
            assert not any(c.contains_point(witness) for c in cover)

    def test_witness_stays_off_a_touching_face(self):
        edge = Cell.create(2, [LinearConstraint((1, 0), 0)])
        witness = uncovered_point(Cell.box(2), [edge])
        assert witness[0] > 0
