"""
Relation Documents
==================
📄 .rel files: {name, pieces: [{type: rect, x: [lo, hi], y: [lo, hi]} |
                                 {type: segment, from: [x, y], to: [x, y]}]}
📄 decomposition files: {groups: [[piece indices]]} (0-based)
📄 chain files: {labels?: [...], table: [{pair: [i, j], relation: {...} | file: path}]}

Rationals are always strings ("p/q" or integers). Documents are parsed with
yaml.safe_load, which also reads the JSON that serialize_relation writes.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

import yaml

from core.errors import GeometryError, RelationFileError, ToolkitError
from core.intervals import Interval, as_rational, format_rational
from core.pieces import Piece, Rect, make_segment
from core.relation import Relation
from engines.mahavier_engine import ChainSystem, Semantics

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _load_document(text: str, what: str) -> Dict[str, Any]:
    try:
        document = yaml.safe_load(text)
    except yaml.YAMLError as error:
        raise RelationFileError(f"❌ Syntax error in {what}: {error}")
    if not isinstance(document, dict):
        raise RelationFileError(f"❌ {what} must be a mapping at the top level")
    return document


def _rational(value: Any, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise RelationFileError(f"❌ {where}: rationals must be strings like \"1/2\", got {value!r}")
    try:
        return as_rational(str(value))
    except GeometryError as error:
        raise RelationFileError(f"❌ {where}: {error}")


def _pair(record: Dict[str, Any], key: str, where: str):
    value = record.get(key)
    if not isinstance(value, list) or len(value) != 2:
        raise RelationFileError(f"❌ {where}: '{key}' must be a list of two rationals")
    return tuple(_rational(v, f"{where}.{key}") for v in value)


def parse_piece(record: Any, where: str = "piece") -> Piece:
    if not isinstance(record, dict):
        raise RelationFileError(f"❌ {where} must be a mapping")
    kind = record.get("type")
    try:
        if kind == "rect":
            x_lo, x_hi = _pair(record, "x", where)
            y_lo, y_hi = _pair(record, "y", where)
            return Rect(Interval(x_lo, x_hi), Interval(y_lo, y_hi))
        if kind == "segment":
            return make_segment(_pair(record, "from", where), _pair(record, "to", where))
    except GeometryError as error:
        raise RelationFileError(f"❌ {where}: {error}")
    raise RelationFileError(f"❌ {where}: unknown piece type {kind!r} (use rect or segment)")


def relation_from_document(document: Dict[str, Any], default_name: str = "relation") -> Relation:
    pieces = document.get("pieces")
    if not isinstance(pieces, list) or not pieces:
        raise RelationFileError("❌ Relation document needs a non-empty 'pieces' list")
    name = str(document.get("name", default_name))
    parsed = tuple(parse_piece(record, f"pieces[{k}]") for k, record in enumerate(pieces))
    return Relation(name, parsed)


def parse_relation(text: str, default_name: str = "relation") -> Relation:
    """Parse a relation document; non-total input raises RelationRejected with a witness"""
    return relation_from_document(_load_document(text, "relation document"), default_name)


def piece_record(piece: Piece) -> Dict[str, Any]:
    if isinstance(piece, Rect):
        return {"type": "rect",
                "x": [format_rational(piece.x.lo), format_rational(piece.x.hi)],
                "y": [format_rational(piece.y.lo), format_rational(piece.y.hi)]}
    return {"type": "segment",
            "from": [format_rational(v) for v in piece.p],
            "to": [format_rational(v) for v in piece.q]}


def relation_document(r: Relation) -> Dict[str, Any]:
    return {"name": r.name, "pieces": [piece_record(piece) for piece in r.pieces]}


def serialize_relation(r: Relation) -> str:
    return json.dumps(relation_document(r), indent=2, ensure_ascii=False) + "\n"


def load_relation(path: PathLike) -> Relation:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise RelationFileError(f"❌ Cannot read {path}: {error}")
    relation = parse_relation(text, default_name=path.stem)
    logger.debug(f"📄 Loaded {relation.name} from {path} ({len(relation)} pieces)")
    return relation


def save_relation(r: Relation, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(serialize_relation(r), encoding="utf-8")
    logger.info(f"💾 Wrote {r.name} to {path}")
    return path


def parse_decomposition(text: str) -> List[List[int]]:
    document = _load_document(text, "decomposition document")
    groups = document.get("groups")
    if not isinstance(groups, list) or not all(isinstance(group, list) for group in groups):
        raise RelationFileError("❌ Decomposition document needs 'groups': a list of index lists")
    for group in groups:
        for index in group:
            if isinstance(index, bool) or not isinstance(index, int):
                raise RelationFileError(f"❌ Piece index must be an integer, got {index!r}")
    return [list(group) for group in groups]


def load_decomposition(path: PathLike) -> List[List[int]]:
    try:
        return parse_decomposition(Path(path).read_text(encoding="utf-8"))
    except OSError as error:
        raise RelationFileError(f"❌ Cannot read {path}: {error}")


def parse_chain(text: str, base_dir: Optional[PathLike] = None) -> ChainSystem:
    """Explicit bonding table; relation files are resolved against base_dir"""
    document = _load_document(text, "chain document")
    entries = document.get("table")
    if not isinstance(entries, list) or not entries:
        raise RelationFileError("❌ Chain document needs a non-empty 'table' list")
    base = Path(base_dir) if base_dir is not None else Path(".")
    table = {}
    for k, entry in enumerate(entries):
        if not isinstance(entry, dict):
            raise RelationFileError(f"❌ table[{k}] must be a mapping")
        pair = entry.get("pair")
        if (not isinstance(pair, list) or len(pair) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)):
            raise RelationFileError(f"❌ table[{k}].pair must be two integers [i, j]")
        if "relation" in entry:
            relation = relation_from_document(entry["relation"] if isinstance(entry["relation"], dict) else {},
                                              f"f{pair[0]}{pair[1]}")
        elif "file" in entry:
            relation = load_relation(base / str(entry["file"]))
        else:
            raise RelationFileError(f"❌ table[{k}] needs 'relation' or 'file'")
        table[(pair[0], pair[1])] = relation
    labels = document.get("labels")
    try:
        return ChainSystem.explicit(table, [str(label) for label in labels] if labels else None)
    except ToolkitError as error:
        raise RelationFileError(str(error))


def load_chain(path: PathLike) -> ChainSystem:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as error:
        raise RelationFileError(f"❌ Cannot read {path}: {error}")
    return parse_chain(text, path.parent)


def chain_document(s: ChainSystem) -> Dict[str, Any]:
    return {"labels": list(s.labels),
            "table": [{"pair": [i, j], "relation": relation_document(s.bonding(i, j))}
                      for i, j in s.pairs(Semantics.ALL_PAIRS)]}
