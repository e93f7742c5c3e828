#!/usr/bin/env python3
"""
Test Relations
==============
Slices, composition, inverse, idempotence, connectivity and decompositions
"""

import random
import sys
from fractions import Fraction as F
from pathlib import Path

import numpy as np
import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.errors import NotSurjectiveError, RelationRejected, ToolkitError
from core.intervals import Interval, IntervalSet
from core.pieces import make_rect, make_segment
from core.relation import (Relation, compose, composition_power, contains_point, equal, graph_components, image,
                           inverse, is_continuum_valued, is_idempotent, is_surjective, singleton_values_fixed,
                           slice_at, symmetric_difference_witness, validate, value_sets_invariant,
                           check_decomposition, x_projection, y_projection)
from core.verdict import VerdictKind
from engines.gallery import catalog_names, example, expected_flags, random_diagonal_plus_k
from utils.raster_oracle import on_graph


def points(*values):
    return IntervalSet(tuple(Interval.point(F(v)) for v in values))


class TestConstruction:
    def test_non_total_relation_rejected_with_witness(self):
        with pytest.raises(RelationRejected) as caught:
            Relation("half", (make_rect(0, F(1, 2), 0, 1),))
        assert caught.value.witness == F(3, 4)

    def test_empty_relation_rejected(self):
        with pytest.raises(RelationRejected):
            Relation("empty", ())

    def test_projections(self, constant_zero):
        assert x_projection(constant_zero).intervals == (Interval(F(0), F(1)),)
        assert y_projection(constant_zero).intervals == (Interval.point(F(0)),)


class TestSlicesAndImages:
    def test_mirror_slice(self, mirror):
        assert slice_at(mirror, F(1, 4)) == points(F(1, 4), F(3, 4))
        assert slice_at(mirror, F(1, 2)) == points(F(1, 2))

    def test_cone_value_at_apex(self):
        cone = example("down-cone")
        assert slice_at(cone, F(1, 2)).intervals == (Interval(F(0), F(1, 2)),)
        assert image(cone, IntervalSet((Interval.point(F(1, 2)),))).intervals == (Interval(F(0), F(1, 2)),)

    def test_contains_point(self, mirror):
        assert contains_point(mirror, (F(1, 3), F(2, 3)))
        assert not contains_point(mirror, (F(1, 3), F(1, 2)))


class TestSurjectivityAndInverse:
    def test_constant_zero_not_surjective(self, constant_zero):
        result = is_surjective(constant_zero)
        assert not result
        assert result.witness == F(1, 2)

    def test_inverse_of_non_surjective_relation(self, constant_zero):
        with pytest.raises(NotSurjectiveError):
            inverse(constant_zero)

    def test_inverse_is_an_involution(self):
        f = example("left-top")
        assert equal(inverse(inverse(f)), f)
        assert inverse(f).name == "inverse(left-top)"

    def test_inverse_swaps_points(self):
        g = inverse(example("left-top"))
        assert contains_point(g, (F(1), F(1, 3)))
        assert contains_point(g, (F(1, 3), F(0)))
        assert not contains_point(g, (F(1, 3), F(1)))


class TestComposition:
    def test_g_after_f(self, constant_zero):
        left_top = example("left-top")
        square = Relation("square", (make_rect(0, 1, 0, 1),))
        assert equal(compose(left_top, constant_zero), square)
        assert equal(compose(constant_zero, left_top), constant_zero)

    def test_identity_is_neutral(self, tent):
        identity = example("identity")
        assert equal(compose(identity, tent), tent)
        assert equal(compose(tent, identity), tent)

    def test_tent_squared_differs(self, tent):
        square = compose(tent, tent)
        assert square.name == "tent∘tent"
        assert not equal(square, tent)
        assert contains_point(square, (F(1, 4), F(1)))

    def test_powers_of_idempotent_relation(self, mirror):
        cube = composition_power(mirror, 3)
        assert cube.name == "mirror^3"
        assert equal(cube, mirror)

    def test_power_must_be_positive(self, mirror):
        with pytest.raises(ToolkitError):
            composition_power(mirror, 0)


class TestEquality:
    def test_split_diagonal_equals_identity(self):
        split = Relation("split", (make_segment((0, 0), (F(1, 2), F(1, 2))),
                                   make_segment((F(1, 2), F(1, 2)), (1, 1))))
        assert equal(split, example("identity"))

    def test_piece_order_irrelevant(self, mirror):
        assert equal(mirror, Relation("flipped", tuple(reversed(mirror.pieces))))

    def test_difference_witness_in_exactly_one_graph(self, tent):
        identity = example("identity")
        witness = symmetric_difference_witness(tent, identity)
        assert witness is not None
        assert contains_point(tent, witness) != contains_point(identity, witness)


class TestIdempotence:
    @pytest.mark.parametrize("name", catalog_names())
    def test_catalog_idempotence(self, name):
        assert is_idempotent(example(name)).passed == expected_flags(name)[0]

    def test_tent_witness(self, tent):
        result = is_idempotent(tent)
        assert not result
        square = compose(tent, tent)
        assert contains_point(square, result.witness) != contains_point(tent, result.witness)

    @pytest.mark.parametrize("seed", range(200))
    def test_random_diagonal_plus_k(self, seed):
        rng = random.Random(seed)
        relation = random_diagonal_plus_k(seed, F(rng.randint(8, 56), 64), rng.randint(1, 4),
                                          include_center=rng.random() < 0.5)
        assert is_idempotent(relation)
        assert is_surjective(relation)

    @pytest.mark.parametrize("name", [n for n in catalog_names() if expected_flags(n)[:2] == (True, True)])
    def test_inverse_of_surjective_idempotent(self, name):
        assert is_idempotent(inverse(example(name)))

    def test_inverse_of_tent_not_idempotent(self, tent):
        assert not is_idempotent(inverse(tent))

    def test_value_sets_invariant(self, mirror, tent):
        xs = [F(0), F(1, 4), F(1, 2), F(1)]
        assert value_sets_invariant(mirror, xs)
        assert singleton_values_fixed(example("origin-fan"), xs)
        result = singleton_values_fixed(tent, xs)
        assert not result
        assert result.witness == F(1, 4)


class TestConnectivityAndValues:
    def test_corner_point_is_a_second_component(self):
        partition = graph_components(example("diagonal-plus-corner"))
        assert partition.count == 2
        assert partition.groups == ((0,), (1,))

    def test_mirror_graph_connected(self, mirror):
        assert graph_components(mirror).count == 1

    def test_mirror_not_continuum_valued(self, mirror):
        result = is_continuum_valued(mirror)
        assert not result
        assert result.witness == F(1, 4)

    @pytest.mark.parametrize("name", ["origin-fan", "left-top", "mid-bar", "tent", "full-on-A-else-B"])
    def test_continuum_valued_entries(self, name):
        assert is_continuum_valued(example(name))

    def test_validate_flags_and_witnesses(self, constant_zero):
        diagnostics = validate(constant_zero)
        assert diagnostics.flags == (True, False, True)
        assert dict(diagnostics.witnesses)["uncovered_y"] == F(1, 2)


class TestDecomposition:
    def test_mirror_two_lines(self, mirror):
        verdict = check_decomposition(mirror, [[0], [1]])
        assert verdict.kind is VerdictKind.CERTIFIED

    def test_group_not_continuum_valued(self, mirror):
        verdict = check_decomposition(mirror, [[0, 1]])
        assert verdict.kind is VerdictKind.REJECTED
        assert dict(verdict.witnesses)["x"] == F(1, 4)

    def test_uncovered_pieces(self, mirror):
        verdict = check_decomposition(mirror, [[0]])
        assert verdict.kind is VerdictKind.REJECTED
        assert "belong to no group" in verdict.reason

    def test_group_not_total(self):
        verdict = check_decomposition(example("left-top"), [[0], [1]])
        assert verdict.kind is VerdictKind.REJECTED
        assert "not total" in verdict.reason

    def test_disconnected_union(self):
        verdict = check_decomposition(example("diagonal-plus-corner"), [[0, 1]])
        assert verdict.kind is VerdictKind.REJECTED

    def test_bad_index(self, mirror):
        with pytest.raises(ToolkitError) as caught:
            check_decomposition(mirror, [[0], [5]])
        assert caught.value.code == "BAD_GROUP"


TOTAL = catalog_names()
IDEMPOTENT = [name for name in TOTAL if expected_flags(name)[0]]
SURJECTIVE = [name for name in TOTAL if expected_flags(name)[1]]
CONTINUUM_VALUED = [name for name in TOTAL if expected_flags(name)[2]]


def random_xs(rng, count=20, k=48):
    return [F(rng.randint(0, k), k) for _ in range(count)]


class TestRandomSlices:
    @pytest.mark.parametrize("seed", range(12))
    def test_slice_of_composition_is_image_of_slice(self, seed):
        rng = random.Random(seed)
        f, g = example(rng.choice(TOTAL)), example(rng.choice(TOTAL))
        gf = compose(g, f)
        for x in random_xs(rng):
            assert slice_at(gf, x) == image(g, slice_at(f, x))

    @pytest.mark.parametrize("seed", range(12))
    def test_composition_is_associative(self, seed):
        rng = random.Random(50 + seed)
        f, g, h = (example(rng.choice(TOTAL)) for _ in range(3))
        assert equal(compose(h, compose(g, f)), compose(compose(h, g), f))

    @pytest.mark.parametrize("name", IDEMPOTENT)
    def test_idempotent_values_are_invariant(self, name):
        rng = random.Random(name)
        relation = example(name)
        xs = random_xs(rng)
        assert value_sets_invariant(relation, xs)
        assert singleton_values_fixed(relation, xs)

    @pytest.mark.parametrize("seed", range(10))
    def test_random_idempotent_values_are_invariant(self, seed):
        rng = random.Random(seed)
        relation = random_diagonal_plus_k(seed, F(1, 2), 3)
        xs = random_xs(rng, k=64)
        assert value_sets_invariant(relation, xs)
        assert singleton_values_fixed(relation, xs)

    @pytest.mark.parametrize("name", CONTINUUM_VALUED)
    def test_continuum_valued_slices_are_intervals(self, name):
        relation = example(name)
        for x in random_xs(random.Random(name)):
            assert slice_at(relation, x).is_single_interval

    @pytest.mark.parametrize("name", [n for n in TOTAL if n not in CONTINUUM_VALUED])
    def test_split_value_at_the_witness(self, name):
        relation = example(name)
        assert len(slice_at(relation, is_continuum_valued(relation).witness)) > 1


class TestEqualityAgainstGrid:
    @pytest.mark.parametrize("a,b", [(example(name), compose(example(name), example(name))) for name in IDEMPOTENT]
                             + [(example("tent"), compose(example("tent"), example("tent"))),
                                (example("identity"), example("mirror")),
                                (example("down-cone"), example("up-cone")),
                                (example("mirror"), example("example-6.4"))])
    def test_equal_matches_grid_points(self, a, b):
        step = F(1, 32)
        assert equal(a, b) == np.array_equal(on_graph(a, step), on_graph(b, step))

    @pytest.mark.parametrize("name", SURJECTIVE)
    def test_inverse_is_an_involution_on_surjective_entries(self, name):
        f = example(name)
        g = inverse(f)
        assert equal(inverse(g), f)
        rng = random.Random(name)
        for _ in range(20):
            x, y = F(rng.randint(0, 16), 16), F(rng.randint(0, 16), 16)
            assert contains_point(g, (y, x)) == contains_point(f, (x, y))
