#!/usr/bin/env python3
"""
Test Mahavier Engine
====================
Chain systems, G-set construction, connectivity, projection and reversal
"""

import random
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.errors import DimensionMismatchError, ToolkitError
from core.pieces import Rect
from core.relation import compose, contains_point, equal, inverse
from engines.gallery import catalog_names, example, expected_flags
from engines.mahavier_engine import (ChainSystem, Semantics, build_gset, exactness_check, gset_connected,
                                     gset_difference_point, gset_equal, gset_summary, project_gset, reverse_gset)

SURJECTIVE_IDEMPOTENT = [name for name in catalog_names() if expected_flags(name)[:2] == (True, True)]


def K(name, n, semantics=Semantics.CONSECUTIVE):
    return build_gset(ChainSystem.single_function(example(name), n), semantics)


class TestChainSystem:
    def test_single_function_labels_and_powers(self, tent):
        chain = ChainSystem.single_function(tent, 3)
        assert chain.labels == ("β1", "β2", "β3")
        assert chain.is_single_function
        assert equal(chain.bonding(1, 3), compose(tent, tent))

    def test_needs_two_coordinates(self, mirror):
        with pytest.raises(ToolkitError) as caught:
            ChainSystem.single_function(mirror, 1)
        assert caught.value.code == "BAD_CHAIN"

    def test_incomplete_table(self, mirror):
        with pytest.raises(ToolkitError):
            ChainSystem.explicit({(1, 2): mirror, (2, 3): mirror})

    def test_duplicate_labels(self, mirror):
        with pytest.raises(ToolkitError):
            ChainSystem.explicit({(1, 2): mirror}, ["a", "a"])

    def test_unknown_pair(self, mirror):
        with pytest.raises(ToolkitError):
            ChainSystem.single_function(mirror, 3).bonding(2, 1)

    def test_restrict_keeps_labels_and_powers(self, tent):
        sub = ChainSystem.single_function(tent, 4).restrict([1, 3])
        assert sub.labels == ("β1", "β3")
        assert equal(sub.bonding(1, 2), compose(tent, tent))

    def test_inverse_reverses_labels(self, mirror):
        chain = ChainSystem.explicit({(1, 2): mirror, (2, 3): mirror, (1, 3): mirror}, ["a", "b", "c"])
        assert chain.inverse().labels == ("c", "b", "a")

    def test_pairs(self, mirror):
        chain = ChainSystem.single_function(mirror, 3)
        assert chain.pairs(Semantics.CONSECUTIVE) == [(1, 2), (2, 3)]
        assert chain.pairs(Semantics.ALL_PAIRS) == [(1, 2), (1, 3), (2, 3)]


class TestBuild:
    def test_pair_convention_input_second(self, tent):
        g = build_gset(ChainSystem.single_function(tent, 2))
        # x1 ∈ tent(x2)
        assert g.contains_point((F(1), F(1, 2)))
        assert not g.contains_point((F(1, 2), F(1)))

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_mirror_lines_through_center(self, n):
        g = K("mirror", n)
        assert len(g.cells) == 2 ** (n - 1)
        assert gset_connected(g).connected
        assert g.contains_point(tuple(F(1, 2) for _ in range(n)))

    def test_mirror_sign_patterns(self):
        g = K("mirror", 3)
        assert g.contains_point((F(1, 4), F(3, 4), F(1, 4)))
        assert not g.contains_point((F(1, 4), F(1, 2), F(1, 4)))

    def test_corner_point_disconnects(self):
        result = gset_connected(K("diagonal-plus-corner", 2))
        assert not result.connected
        assert result.component_count == 2

    def test_origin_fan_connected(self):
        g = K("origin-fan", 4)
        assert len(g.cells) >= 3
        assert gset_connected(g).connected

    def test_threaded_connectivity_matches(self):
        g = K("mirror", 5)
        threaded = gset_connected(g, max_workers=4, parallel_threshold=8)
        serial = gset_connected(g, max_workers=1)
        assert threaded == serial

    def test_summary(self):
        assert gset_summary(K("mirror", 3)) == {"dim": 3, "cells": 4, "semantics": "consecutive"}


class TestSemantics:
    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("name", SURJECTIVE_IDEMPOTENT)
    def test_consecutive_equals_all_pairs(self, name, n):
        assert gset_equal(K(name, n), K(name, n, Semantics.ALL_PAIRS))


class TestProjection:
    def test_constant_zero_projects_to_a_point(self):
        projected = project_gset(K("constant-zero", 3), [1, 2])
        assert projected.dim == 2
        assert projected.contains_point((F(0), F(0)))
        assert not projected.contains_point((F(0), F(1, 2)))

    def test_direct_set_is_larger(self, constant_zero):
        chain = ChainSystem.single_function(constant_zero, 3)
        direct = build_gset(chain.restrict([1, 2]), Semantics.ALL_PAIRS)
        projected = project_gset(build_gset(chain), [1, 2])
        witness = gset_difference_point(direct, projected)
        assert witness[0] == 0
        assert witness[1] > 0
        assert gset_difference_point(projected, direct) is None

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            gset_difference_point(K("mirror", 2), K("mirror", 3))


class TestReversal:
    @pytest.mark.parametrize("n", [2, 3, 4])
    @pytest.mark.parametrize("name", ["left-top", "mid-bar", "mirror"])
    def test_reverse_is_product_of_inverse(self, name, n):
        f = example(name)
        mirrored = build_gset(ChainSystem.single_function(inverse(f), n))
        assert gset_equal(reverse_gset(K(name, n)), mirrored)

    def test_reverse_twice(self):
        g = K("left-top", 3)
        assert gset_equal(reverse_gset(reverse_gset(g)), g)

    def test_reverse_of_non_surjective_drops_source(self):
        assert reverse_gset(K("constant-zero", 2)).source is None


class TestExactness:
    def test_constant_idempotent_table(self, mirror):
        chain = ChainSystem.explicit({(1, 2): mirror, (2, 3): mirror, (1, 3): mirror})
        assert exactness_check(chain)

    def test_composed_tent_table(self, tent):
        chain = ChainSystem.explicit({(1, 2): tent, (2, 3): tent, (1, 3): compose(tent, tent)})
        assert exactness_check(chain)

    def test_naive_tent_table(self, tent):
        result = exactness_check(ChainSystem.explicit({(1, 2): tent, (2, 3): tent, (1, 3): tent}))
        assert not result
        assert result.witness == (1, 2, 3)

    def test_single_function_always_exact(self, tent):
        assert exactness_check(ChainSystem.single_function(tent, 4))


class TestRandomChains:
    POOL = ["mirror", "tent", "identity", "origin-fan", "left-top", "mid-bar", "down-cone", "constant-zero",
            "fan-k"]

    @pytest.mark.parametrize("seed", range(8))
    def test_either_association_order_is_exact(self, seed):
        rng = random.Random(seed)
        a, b, c = (example(rng.choice(self.POOL)) for _ in range(3))
        base = {(1, 2): a, (2, 3): b, (3, 4): c, (1, 3): compose(a, b), (2, 4): compose(b, c)}
        left = dict(base)
        left[(1, 4)] = compose(compose(a, b), c)
        right = dict(base)
        right[(1, 4)] = compose(a, compose(b, c))
        assert exactness_check(ChainSystem.explicit(left))
        assert exactness_check(ChainSystem.explicit(right))

    @pytest.mark.parametrize("name", catalog_names())
    def test_last_pair_of_k3_is_k2(self, name):
        assert gset_equal(project_gset(K(name, 3), [2, 3]), K(name, 2))

    @pytest.mark.parametrize("name", [n for n in catalog_names() if expected_flags(n)[1]])
    def test_first_pair_of_k3_is_k2_when_surjective(self, name):
        assert gset_equal(project_gset(K(name, 3), [1, 2]), K(name, 2))

    @pytest.mark.parametrize("name", catalog_names())
    def test_k2_is_the_swapped_graph(self, name):
        f = example(name)
        k2 = K(name, 2)
        rng = random.Random(name)
        for _ in range(30):
            x, y = F(rng.randint(0, 16), 16), F(rng.randint(0, 16), 16)
            assert k2.contains_point((y, x)) == contains_point(f, (x, y))
        for piece in f.pieces:
            for corner in (piece.corners() if isinstance(piece, Rect) else [piece.p, piece.q]):
                assert k2.contains_point((corner[1], corner[0]))
