"""
⌨️  COMMANDS
============
Argument parsing and dispatch for every check. run_command returns a Report
and the process exit code:

    0  true / pass / certified / equal
    1  false / fail / disconnected / strict subset / not certified for all n
    2  usage, document, validation or configuration error
"""

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from core import __version__
from core.errors import RelationFileError, ToolkitError
from core.intervals import as_rational
from core.relation import (Relation, compose, graph_components, inverse, is_continuum_valued,
                           is_idempotent, is_surjective, symmetric_difference_witness, validate)
from core.verdict import VerdictKind, describe_witnesses
from engines.certificates import CordialStatus, certify_continuum, cordiality_report, direct_gset
from engines.gallery import (CATALOG, ALIASES, ExampleSpec, catalog_names, expected_flags,
                             make_example, resolve_name)
from engines.mahavier_engine import (ChainSystem, Semantics, build_gset, exactness_check,
                                     gset_connected, gset_difference_point, project_gset, reverse_gset)
from utils.config import ToolkitConfig, load_config, setup_logging
from utils.raster_oracle import gset_raster, raster_component_count, step_for
from utils.relation_io import load_chain, load_decomposition, load_relation, save_relation
from .reports import EXIT_ERROR, EXIT_FAIL, EXIT_PASS, Report, command_echo
from .svg_renderer import render_svg

logger = logging.getLogger(__name__)


class UsageError(ToolkitError):
    code = "USAGE"


class _Parser(argparse.ArgumentParser):
    """ArgumentParser that raises instead of exiting"""

    def error(self, message):
        raise UsageError(f"❌ {message}")


def _coordinates(text: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated coordinates, got {text!r}")
    if not values:
        raise argparse.ArgumentTypeError("expected at least one coordinate")
    return values


def _subset_list(text: str) -> List[Tuple[int, ...]]:
    return [_coordinates(chunk) for chunk in text.split(";") if chunk.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mahavier-toolkit",
                     description="Exact checks for closed set-valued functions on [0,1] "
                                 "and their finite Mahavier products")
    parser.add_argument("--config", help="YAML config file")
    parser.add_argument("--json", action="store_true", help="machine-readable report")
    parser.add_argument("--log-level", help="override the configured log level")
    parser.add_argument("--version", action="store_true", help="print the toolkit version")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    for name, text in (("validate", "totality, surjectivity, idempotence, components, continuum values"),
                       ("idempotent", "f∘f = f"),
                       ("surjective", "y-projection covers [0,1]"),
                       ("components", "connected components of the graph"),
                       ("continuum-valued", "every value f(x) is an interval")):
        command = sub.add_parser(name, help=text)
        command.add_argument("relation", help=".rel file or gallery name")

    command = sub.add_parser("compose", help="g∘f (f applied first)")
    command.add_argument("g")
    command.add_argument("f")
    command.add_argument("--out", help="write the composition as a .rel file")

    command = sub.add_parser("inverse", help="graph with coordinates swapped")
    command.add_argument("relation")
    command.add_argument("--out", help="write the inverse as a .rel file")

    command = sub.add_parser("equal", help="point-set equality of two graphs")
    command.add_argument("a")
    command.add_argument("b")

    command = sub.add_parser("exactness", help="f_ij∘f_jk = f_ik for a bonding table")
    command.add_argument("chain", help="chain document")

    command = sub.add_parser("mahavier", help="build and inspect K(n) / G(n)")
    command.add_argument("relation")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--semantics", choices=[s.value for s in Semantics], default=Semantics.CONSECUTIVE.value)
    command.add_argument("--connected", action="store_true", help="decide connectedness")
    command.add_argument("--project", type=_coordinates, help="keep these coordinates, e.g. 1,2")
    command.add_argument("--compare-direct", action="store_true",
                         help="compare the projection with the G-set built on the sub-chain")
    command.add_argument("--reverse", action="store_true", help="reverse the coordinate order")
    command.add_argument("--compare-semantics", action="store_true",
                         help="compare consecutive and all-pairs products")

    command = sub.add_parser("cordiality", help="projections of K(n) against direct sub-chain G-sets")
    command.add_argument("relation")
    command.add_argument("--n", type=int, required=True)
    command.add_argument("--subsets", type=_subset_list, help="e.g. '1,2;1,3'; default all proper subsets")

    command = sub.add_parser("certify", help="continuum certificate for every finite product")
    command.add_argument("relation")
    command.add_argument("--max-n", type=int)
    command.add_argument("--decomposition", help="groups document")

    command = sub.add_parser("gallery", help="list, write or check catalog entries")
    command.add_argument("name", nargs="?")
    command.add_argument("--param", action="append", default=[], help="key=p/q")
    command.add_argument("--out", help="write the entry as a .rel file")
    command.add_argument("--check", action="store_true", help="validate expected flags")

    command = sub.add_parser("render", help="SVG of a graph or of a G-set of dimension <= 3")
    command.add_argument("relation")
    command.add_argument("--out", required=True)
    command.add_argument("--n", type=int, help="render K(n) instead of the graph")
    command.add_argument("--semantics", choices=[s.value for s in Semantics], default=Semantics.CONSECUTIVE.value)
    command.add_argument("--project", type=_coordinates)

    command = sub.add_parser("oracle", help="compare exact and raster connectivity")
    command.add_argument("relation")
    command.add_argument("--n", type=int, default=2)
    command.add_argument("--step", type=int, help="grid denominator k (step 1/k)")
    command.add_argument("--semantics", choices=[s.value for s in Semantics], default=Semantics.CONSECUTIVE.value)
    return parser


def resolve_relation(argument: str) -> Relation:
    """A .rel file, or a gallery name (with or without the .rel suffix)"""
    path = Path(argument)
    if path.exists():
        return load_relation(path)
    name = path.stem if path.suffix == ".rel" else argument
    if name in CATALOG or name in ALIASES:
        return make_example(ExampleSpec(name))
    raise RelationFileError(f"❌ No such relation file or gallery entry: {argument}")


def _outcome(report: Report, passed: bool, yes: str, no: str) -> Tuple[Report, int]:
    code = EXIT_PASS if passed else EXIT_FAIL
    return report.finish(yes if passed else no, code), code


def _anchor(report: Report, anchor: str) -> None:
    report.data["anchor"] = anchor
    report.detail(f"🧭 {anchor}")


def _check_command(check: Callable, yes: str, no: str):
    def run(args, config: ToolkitConfig, report: Report) -> Tuple[Report, int]:
        relation = resolve_relation(args.relation)
        result = check(relation)
        report.witness("witness", result.witness)
        if result.detail:
            report.detail(result.detail)
        return _outcome(report, result.passed, yes, no)
    return run


def _validate(args, config, report):
    diagnostics = validate(resolve_relation(args.relation))
    report.data.update(total=diagnostics.total, surjective=diagnostics.surjective,
                       idempotent=diagnostics.idempotent, graph_components=diagnostics.graph_components,
                       continuum_valued=diagnostics.continuum_valued)
    for label, value in diagnostics.witnesses:
        report.witness(label, value)
    for key in ("surjective", "idempotent", "continuum_valued"):
        report.detail(f"{'✅' if report.data[key] else '❌'} {key.replace('_', '-')}")
    report.detail(f"🧩 graph components: {diagnostics.graph_components}")
    return report.finish("VALID", EXIT_PASS), EXIT_PASS


def _components(args, config, report):
    partition = graph_components(resolve_relation(args.relation))
    report.data.update(count=partition.count, groups=[list(group) for group in partition.groups])
    for k, group in enumerate(partition.groups):
        report.detail(f"component {k}: pieces {list(group)}")
    if partition.count > 1:
        _anchor(report, "Thm 5.7: a disconnected graph gives a disconnected product")
    return _outcome(report, partition.count == 1, "CONNECTED(1)", f"DISCONNECTED({partition.count})")


def _compose(args, config, report):
    result = compose(resolve_relation(args.g), resolve_relation(args.f))
    report.detail(str(result))
    if args.out:
        save_relation(result, args.out)
        report.detail(f"💾 {args.out}")
    return report.finish(f"COMPOSED({len(result)} pieces)", EXIT_PASS), EXIT_PASS


def _inverse(args, config, report):
    result = inverse(resolve_relation(args.relation))
    report.detail(str(result))
    if args.out:
        save_relation(result, args.out)
        report.detail(f"💾 {args.out}")
    return report.finish(f"INVERTED({len(result)} pieces)", EXIT_PASS), EXIT_PASS


def _equal(args, config, report):
    point = symmetric_difference_witness(resolve_relation(args.a), resolve_relation(args.b))
    report.witness("point in exactly one graph", point)
    return _outcome(report, point is None, "EQUAL", "NOT_EQUAL")


def _exactness(args, config, report):
    result = exactness_check(load_chain(args.chain))
    report.witness("failing triple", result.witness)
    if result.detail:
        report.detail(result.detail)
    return _outcome(report, result.passed, "EXACT", "NOT_EXACT")


def _engine_options(config: ToolkitConfig) -> Dict[str, int]:
    return {"max_workers": config.mahavier.max_workers,
            "parallel_threshold": config.mahavier.parallel_threshold}


def _mahavier(args, config, report):
    relation = resolve_relation(args.relation)
    semantics = Semantics(args.semantics)
    chain = ChainSystem.single_function(relation, args.n)
    g = build_gset(chain, semantics)
    report.data.update(n=args.n, semantics=semantics.value, cells=len(g.cells))
    report.detail(f"🏗️  {semantics.value} product of dimension {args.n}: {len(g.cells)} cells")

    if args.compare_semantics:
        other = build_gset(chain, Semantics.ALL_PAIRS if semantics is Semantics.CONSECUTIVE
                           else Semantics.CONSECUTIVE)
        _anchor(report, "Lemma 5.6: consecutive and all-pairs products of an idempotent function agree")
        point = gset_difference_point(g, other) or gset_difference_point(other, g)
        report.witness("point in exactly one product", point)
        return _outcome(report, point is None, "EQUAL", "NOT_EQUAL")
    if args.reverse:
        g = reverse_gset(g)
        report.detail("🔁 coordinates reversed")
        _anchor(report, "Thm 5.9: the reversed product is the product of the inverse")
    if args.project:
        g = project_gset(g, args.project, config.geometry.lp_redundancy_pruning)
        report.detail(f"✂️  projected onto {list(args.project)}: {len(g.cells)} cells")
        if args.compare_direct:
            if args.reverse:
                raise UsageError("❌ --compare-direct cannot be combined with --reverse")
            _anchor(report, "Lemma 3.1: projection against the direct product on the sub-chain")
            direct = direct_gset(chain, args.project)
            point = gset_difference_point(direct, g)
            report.witness("point of the direct G-set outside the projection", point)
            return _outcome(report, point is None, "EQUAL", "STRICT_SUBSET")
    elif args.compare_direct:
        raise UsageError("❌ --compare-direct needs --project")
    if args.connected:
        connectivity = gset_connected(g, **_engine_options(config))
        _anchor(report, "Thms 5.3/5.4: finite-stage connectivity")
        report.data.update(components=[list(c) for c in connectivity.components])
        return _outcome(report, connectivity.connected, "CONNECTED",
                        f"DISCONNECTED({args.n}, {connectivity.component_count})")
    return report.finish(f"BUILT({len(g.cells)} cells)", EXIT_PASS), EXIT_PASS


def _cordiality(args, config, report):
    result = cordiality_report(resolve_relation(args.relation), args.n, args.subsets,
                               config.geometry.lp_redundancy_pruning)
    _anchor(report, "Lemma 3.1 / Thm 3.2: cordiality on finite sub-chains")
    for entry in result.entries:
        icon = "✅" if entry.status is CordialStatus.EQUAL else "❌"
        report.detail(f"{icon} {list(entry.subset)}: {entry.status.value}")
        report.witness(f"subset {list(entry.subset)}", entry.witness)
    report.data.update(n=args.n, entries={",".join(map(str, e.subset)): e.status.value for e in result.entries})
    return _outcome(report, result.all_equal, "CORDIAL", "STRICT_SUBSET")


def _certify(args, config, report):
    relation = resolve_relation(args.relation)
    groups = load_decomposition(args.decomposition) if args.decomposition else None
    max_n = args.max_n or config.cli.default_max_n
    verdict = certify_continuum(relation, max_n, groups, **_engine_options(config))
    report.data.update(verdict.as_dict())
    report.detail(f"🧭 {verdict.route_label}: {verdict.reason}")
    for line in describe_witnesses(verdict.witnesses):
        report.detail(f"🔍 {line}")
    if verdict.kind is VerdictKind.CERTIFIED_ALL_N:
        code = EXIT_PASS
    elif verdict.kind is VerdictKind.REJECTED:
        code = EXIT_ERROR
    else:
        code = EXIT_FAIL
    return report.finish(verdict.label, code), code


def _parse_params(pairs: Sequence[str]) -> Dict[str, Fraction]:
    params = {}
    for pair in pairs:
        key, sep, value = pair.partition("=")
        if not sep:
            raise UsageError(f"❌ --param expects key=value, got {pair!r}")
        params[key.strip()] = as_rational(value.strip())
    return params


def _gallery(args, config, report):
    if args.check:
        names = [resolve_name(args.name)] if args.name else catalog_names()
        failures = 0
        for name in names:
            diagnostics = validate(make_example(ExampleSpec(name)))
            expected = expected_flags(name)
            ok = diagnostics.flags == expected
            failures += not ok
            report.detail(f"{'✅' if ok else '❌'} {name}: (idempotent, surjective, continuum-valued) = "
                          f"{diagnostics.flags}, expected {expected}")
        return _outcome(report, failures == 0, f"CHECKED({len(names)})", f"MISMATCH({failures})")
    if not args.name:
        for name in catalog_names():
            entry = CATALOG[name]
            report.detail(f"📚 {name}: {entry.description}")
        return report.finish(f"CATALOG({len(CATALOG)})", EXIT_PASS), EXIT_PASS
    params = _parse_params(args.param)
    relation = make_example(ExampleSpec.of(args.name, **params))
    report.detail(str(relation))
    if args.out:
        save_relation(relation, args.out)
        report.detail(f"💾 {args.out}")
    return report.finish(f"BUILT({relation.name})", EXIT_PASS), EXIT_PASS


def _render(args, config, report):
    relation = resolve_relation(args.relation)
    if args.n is None:
        target = relation
    else:
        target = build_gset(ChainSystem.single_function(relation, args.n), Semantics(args.semantics))
        if args.project:
            target = project_gset(target, args.project, config.geometry.lp_redundancy_pruning)
    path = render_svg(target, args.out, config.render, title=relation.name)
    report.detail(f"🎨 {path}")
    return report.finish("RENDERED", EXIT_PASS), EXIT_PASS


def _oracle(args, config, report):
    relation = resolve_relation(args.relation)
    step = step_for(args.step or config.raster.step_denominator)
    semantics = Semantics(args.semantics)
    chain = ChainSystem.single_function(relation, args.n)
    exact = gset_connected(build_gset(chain, semantics), **_engine_options(config))
    raster = gset_raster(chain, semantics, step, config.raster.max_dim)
    raster_count = raster_component_count(raster)
    report.data.update(exact_components=exact.component_count, raster_components=raster_count,
                       step=step, marked=raster.marked)
    report.detail(f"🔍 exact: {exact.component_count} component(s), "
                  f"raster at step {step}: {raster_count} component(s)")
    return _outcome(report, (exact.component_count == 1) == (raster_count == 1), "AGREE", "DISAGREE")


COMMANDS: Dict[str, Callable] = {
    "validate": _validate,
    "idempotent": _check_command(is_idempotent, "IDEMPOTENT", "NOT_IDEMPOTENT"),
    "surjective": _check_command(is_surjective, "SURJECTIVE", "NOT_SURJECTIVE"),
    "components": _components,
    "continuum-valued": _check_command(is_continuum_valued, "CONTINUUM_VALUED", "NOT_CONTINUUM_VALUED"),
    "compose": _compose,
    "inverse": _inverse,
    "equal": _equal,
    "exactness": _exactness,
    "mahavier": _mahavier,
    "cordiality": _cordiality,
    "certify": _certify,
    "gallery": _gallery,
    "render": _render,
    "oracle": _oracle,
}


def run_command(argv: Sequence[str], configure_logging: bool = False,
                config: Optional[ToolkitConfig] = None) -> Tuple[Report, int]:
    argv = list(argv)
    report = Report(command_echo(argv))
    try:
        args = build_parser().parse_args(argv)
        if args.version:
            report.detail(f"mahavier-toolkit {__version__}")
            return report.finish(__version__, EXIT_PASS), EXIT_PASS
        if not args.command:
            raise UsageError(f"❌ Missing subcommand; choose one of {', '.join(COMMANDS)}")
        config = config or load_config(args.config)
        if configure_logging:
            setup_logging(config, args.log_level)
        logger.debug(f"🚀 {report.command}")
        return COMMANDS[args.command](args, config, report)
    except ToolkitError as error:
        report.witness("witness", error.witness)
        report.detail(str(error))
        logger.error(str(error))
        return report.finish(f"ERROR({error.code})", EXIT_ERROR), EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command, print its report, return the exit code"""
    argv = sys.argv[1:] if argv is None else list(argv)
    report, code = run_command(argv, configure_logging=True)
    print(report.render(as_json="--json" in argv))
    return code
