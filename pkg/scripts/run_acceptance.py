#!/usr/bin/env python3
"""
Acceptance Checklist
====================
Runs the end-to-end acceptance checks against the exact engine and the
raster oracle, printing a ✅/❌ line per check.
"""

import sys
import tempfile
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.relation import inverse, is_idempotent  # noqa: E402
from core.verdict import VerdictKind  # noqa: E402
from engines.certificates import CordialStatus, certify_continuum, cordiality_report  # noqa: E402
from engines.gallery import build_gallery, example, expected_flags, random_diagonal_plus_k  # noqa: E402
from engines.mahavier_engine import (ChainSystem, Semantics, build_gset, exactness_check,  # noqa: E402
                                     gset_connected, gset_equal, reverse_gset)
from core.relation import compose, validate  # noqa: E402
from ui.svg_renderer import render_svg  # noqa: E402
from utils.config import RenderConfig  # noqa: E402
from utils.raster_oracle import gset_raster, raster_component_count  # noqa: E402
from utils.relation_io import parse_relation, serialize_relation  # noqa: E402

IDEMPOTENT_SURJECTIVE = ["full-on-A-else-B", "down-cone", "up-cone", "mirror", "origin-fan",
                         "left-top", "mid-bar", "diagonal-plus-k", "fan-k", "identity"]


def K(name, n, semantics=Semantics.CONSECUTIVE):
    return build_gset(ChainSystem.single_function(example(name), n), semantics)


def check_idempotence():
    names = ["id-or-B", "full-on-A-else-B", "down-cone", "up-cone", "mirror", "origin-fan",
             "left-top", "mid-bar"]
    ok = all(is_idempotent(example(name)) for name in names)
    ok = ok and all(is_idempotent(random_diagonal_plus_k(seed, Fraction(1, 2), 3)) for seed in range(200))
    tent = is_idempotent(example("tent"))
    return ok and not tent and tent.witness is not None


def check_inverse_idempotence():
    ok = all(is_idempotent(inverse(example(name))) for name in IDEMPOTENT_SURJECTIVE)
    return ok and not is_idempotent(inverse(example("tent")))


def check_cordiality():
    ok = all(cordiality_report(example(name), 4).all_equal for name in ("left-top", "mirror", "origin-fan"))
    entry = cordiality_report(example("constant-zero"), 3, [(1, 2)]).entry((1, 2))
    return (ok and entry.status is CordialStatus.STRICT_SUBSET
            and entry.witness[0] == 0 and entry.witness[1] > 0)


def check_connectedness():
    for n in range(2, 7):
        g = K("mirror", n)
        if len(g.cells) != 2 ** (n - 1) or not gset_connected(g):
            return False
    corner = gset_connected(K("diagonal-plus-corner", 2))
    fan = K("origin-fan", 4)
    return (not corner.connected and corner.component_count == 2
            and gset_connected(fan).connected and len(fan.cells) >= 3)


def check_semantics_agree():
    return all(gset_equal(K(name, n), K(name, n, Semantics.ALL_PAIRS))
               for name in IDEMPOTENT_SURJECTIVE for n in (2, 3, 4))


def check_reversal():
    for name in ("left-top", "mid-bar", "mirror"):
        f = example(name)
        for n in (2, 3, 4):
            mirrored = build_gset(ChainSystem.single_function(inverse(f), n))
            if not gset_equal(reverse_gset(K(name, n)), mirrored):
                return False
    return True


def check_certificates():
    mirror = certify_continuum(example("mirror"), 5, [[0], [1]])
    return (mirror.kind is VerdictKind.CERTIFIED_ALL_N
            and certify_continuum(example("origin-fan")).kind is VerdictKind.CERTIFIED_ALL_N
            and certify_continuum(example("mid-bar")).kind is VerdictKind.CERTIFIED_ALL_N
            and certify_continuum(example("diagonal-plus-corner")).label == "DISCONNECTED(2, 2)"
            and certify_continuum(example("constant-zero")).label == "REJECTED(NOT_SURJECTIVE)")


def check_exactness():
    mirror, tent = example("mirror"), example("tent")
    constant = ChainSystem.explicit({(1, 2): mirror, (2, 3): mirror, (1, 3): mirror})
    composed = ChainSystem.explicit({(1, 2): tent, (2, 3): tent, (1, 3): compose(tent, tent)})
    naive = ChainSystem.explicit({(1, 2): tent, (2, 3): tent, (1, 3): tent})
    result = exactness_check(naive)
    return bool(exactness_check(constant)) and bool(exactness_check(composed)) and result.witness == (1, 2, 3)


def check_oracle():
    cases = [("mirror", 3, 64), ("origin-fan", 3, 64), ("diagonal-plus-corner", 2, 64), ("mirror", 4, 32)]
    for name, n, k in cases:
        g = K(name, n)
        exact = gset_connected(g).connected
        raster = raster_component_count(gset_raster(g.source, g.semantics, Fraction(1, k))) == 1
        if exact != raster:
            return False
    return True


def check_round_trip():
    for relation in build_gallery().values():
        if parse_relation(serialize_relation(relation)) != relation:
            return False
    with tempfile.TemporaryDirectory() as tmp:
        first = render_svg(example("mirror"), Path(tmp) / "a.svg", RenderConfig()).read_bytes()
        second = render_svg(example("mirror"), Path(tmp) / "b.svg", RenderConfig()).read_bytes()
    return first == second


def check_flags():
    return all(validate(relation).flags == expected_flags(name) for name, relation in build_gallery().items())


def main():
    print("🔗 MAHAVIER TOOLKIT - ACCEPTANCE")
    print("=" * 60)
    checks = [
        ("Idempotence suite", check_idempotence),
        ("Inverse idempotence", check_inverse_idempotence),
        ("Cordiality", check_cordiality),
        ("Connectedness", check_connectedness),
        ("Consecutive vs all-pairs products", check_semantics_agree),
        ("Reversal and inverse", check_reversal),
        ("Certificates", check_certificates),
        ("Exactness", check_exactness),
        ("Raster oracle concordance", check_oracle),
        ("Round trip and SVG determinism", check_round_trip),
        ("Gallery flags", check_flags),
    ]
    passed = 0
    started = time.time()
    for number, (name, check) in enumerate(checks, 1):
        t0 = time.time()
        try:
            ok = check()
        except Exception as e:
            ok = False
            print(f"   ❌ {name} raised {e}")
        passed += ok
        print(f"{'✅' if ok else '❌'} {number:2d}. {name} ({time.time() - t0:.1f}s)")
    print("=" * 60)
    print(f"Passed: {passed}/{len(checks)} checks in {time.time() - started:.1f}s")
    return 0 if passed == len(checks) else 1


if __name__ == "__main__":
    sys.exit(main())
