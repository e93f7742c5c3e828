#!/usr/bin/env python3
"""
Test Gallery
============
Catalog entries, parameters and the diagonal-plus-K construction
"""

import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.errors import CatalogError, RelationRejected
from core.pieces import make_rect, make_segment, point_piece
from core.relation import is_idempotent, validate
from engines.gallery import (CATALOG, ExampleSpec, build_gallery, catalog_names, example, expected_flags,
                             gallery_params, make_diagonal_plus_k, random_diagonal_plus_k, region_violation)

HALF = F(1, 2)


@pytest.mark.parametrize("name", catalog_names())
def test_expected_flags(name):
    assert validate(example(name)).flags == expected_flags(name)


def test_catalog_order_and_names():
    names = catalog_names()
    assert names[0] == "constant-zero"
    assert {"mirror", "origin-fan", "left-top", "mid-bar", "fan-k"} <= set(names)
    assert list(build_gallery()) == names


def test_reflection_alias():
    assert example("reflection").name == "mirror"
    assert expected_flags("reflection") == (True, True, False)


@pytest.mark.parametrize("name,resolved", [
    ("example-6.1", "origin-fan"),
    ("example-6.2", "left-top"),
    ("example-6.3", "mid-bar"),
    ("example-6.4", "mirror"),
    ("lemma-4.4", "diagonal-plus-k"),
])
def test_named_examples(name, resolved):
    assert example(name) == example(resolved)
    assert validate(example(name)).flags == expected_flags(resolved)


def test_named_example_pieces():
    assert example("example-6.2").pieces == (make_rect(0, 0, 0, 1), make_rect(0, 1, 1, 1))
    assert example("lemma-4.4").pieces[1] == make_rect(0, F(1, 4), F(3, 4), F(3, 4))


def test_unknown_entry():
    with pytest.raises(CatalogError):
        example("no-such-thing")


def test_unknown_parameter():
    with pytest.raises(CatalogError):
        example("mirror", a=HALF)


class TestParameters:
    def test_defaults(self):
        assert gallery_params("down-cone") == {"a": HALF}
        assert gallery_params("mirror") == {}

    def test_spec_params_are_sorted_rationals(self):
        spec = ExampleSpec.of("id-or-B", b_lo="1/8", a="1/4")
        assert spec.params == (("a", F(1, 4)), ("b_lo", F(1, 8)))

    def test_cone_apex_moves(self):
        cone = example("up-cone", a=F(1, 3))
        assert make_rect(F(1, 3), F(1, 3), F(1, 3), 1) in cone.pieces
        assert is_idempotent(cone)

    def test_diagonal_plus_k_parameter(self):
        relation = example("diagonal-plus-k", a=F(1, 4))
        assert make_rect(0, F(1, 8), F(5, 8), F(5, 8)) in relation.pieces

    @pytest.mark.parametrize("name,params", [
        ("down-cone", {"a": 1}),
        ("id-or-B", {"b_lo": F(3, 4)}),
        ("full-on-A-else-B", {"b_lo": F(1, 8)}),
    ])
    def test_invalid_parameters(self, name, params):
        with pytest.raises(CatalogError):
            example(name, **params)


class TestDiagonalPlusK:
    def test_explicit_rect(self):
        relation = example("lemma-4.4", k_x_lo=F(1, 8), k_x_hi=F(1, 4), k_y_lo=F(5, 8), k_y_hi=F(7, 8))
        assert relation.pieces[1] == make_rect(F(1, 8), F(1, 4), F(5, 8), F(7, 8))
        assert is_idempotent(relation)

    def test_explicit_falling_segment_through_center(self):
        relation = example("lemma-4.4", k_x_lo=F(1, 4), k_x_hi=HALF, k_y_lo=HALF, k_y_hi=F(3, 4),
                           k_segment=-1)
        assert relation.pieces[1] == make_segment((HALF, HALF), (F(1, 4), F(3, 4)))
        assert validate(relation).graph_components == 1

    def test_explicit_rising_segment(self):
        relation = example("lemma-4.4", a=F(1, 3), k_x_lo=0, k_x_hi=F(1, 4), k_y_lo=F(1, 2), k_y_hi=1,
                           k_segment=1)
        assert relation.pieces[1] == make_segment((0, F(1, 2)), (F(1, 4), 1))

    def test_explicit_k_outside_region(self):
        with pytest.raises(RelationRejected):
            example("lemma-4.4", k_x_lo=F(1, 4), k_x_hi=F(3, 4))

    @pytest.mark.parametrize("params", [
        {"k_x_lo": F(1, 4), "k_x_hi": F(1, 8)},
        {"k_segment": 2},
    ])
    def test_explicit_k_malformed(self, params):
        with pytest.raises(CatalogError):
            example("lemma-4.4", **params)

    def test_region_accepts_strict_rect(self):
        assert region_violation(HALF, make_rect(0, F(1, 4), F(3, 4), 1)) is None

    def test_region_rejects_touching_rect(self):
        assert region_violation(HALF, make_rect(0, HALF, F(3, 4), 1)) == (HALF, F(3, 4))

    def test_center_point_allowed(self):
        assert region_violation(HALF, point_piece(HALF, HALF)) is None

    def test_segment_to_center_allowed(self):
        assert region_violation(HALF, make_segment((HALF, HALF), (F(1, 4), F(3, 4)))) is None

    def test_piece_outside_region(self):
        with pytest.raises(RelationRejected) as caught:
            make_diagonal_plus_k(HALF, [point_piece(F(3, 4), F(1, 4))])
        assert caught.value.witness == (F(3, 4), F(1, 4))

    def test_a_must_be_interior(self):
        with pytest.raises(RelationRejected):
            make_diagonal_plus_k(1, [])

    def test_random_is_deterministic(self):
        first = random_diagonal_plus_k(7, HALF, 4)
        second = random_diagonal_plus_k(7, HALF, 4)
        assert first == second
        assert first.name == "random-diagonal-plus-k(seed=7)"
        assert len(first.pieces) == 5

    def test_random_with_center(self):
        relation = random_diagonal_plus_k(3, HALF, 2, include_center=True)
        assert relation.pieces[1] == point_piece(HALF, HALF)

    def test_random_off_center_apex(self):
        relation = random_diagonal_plus_k(2, F(1, 3), 5)
        assert is_idempotent(relation)

    def test_random_center_only(self):
        relation = random_diagonal_plus_k(9, HALF, 1, include_center=True)
        assert relation.pieces[1:] == (point_piece(HALF, HALF),)

    def test_random_count(self):
        with pytest.raises(CatalogError):
            random_diagonal_plus_k(0, HALF, 0)


def test_every_entry_has_a_description():
    assert all(entry.description for entry in CATALOG.values())
