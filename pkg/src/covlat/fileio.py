"""JSON on-disk formats and the workspace that resolves file references.

Formats (all UTF-8 JSON, deterministic field order):

* instance: ``{"base": ["a", ...], "axioms": [["a", ["b", "c"]], ...]}``;
  alternatively a full relation table ``{"base": [...], "table":
  [[["c"], ["a", "b", "c"]], ...]}`` which is accepted only if it already
  satisfies the two cover conditions.
* concrete space: ``{"points": [...], "base": [...],
  "forcing": [["x", "a"], ...]}``.
* morphism: ``{"source": "<instance path>", "target": "<instance path>",
  "pairs": [["a", "x"], ...]}``; paths resolve relative to the morphism
  file.
* operator: ``{"cover": "<instance path>", "kind": "closure" |
  "interior", "table": [[["a"], ["a", "b"]], ...]}`` mapping sorted
  carrier lists to sorted carrier lists.

Subsets always serialize as sorted element lists.
"""

from __future__ import annotations

import json
import os

from .closure import ClosureTable
from .cover import ConcreteSpace, Cover, cover_from_table
from .errors import InputError
from .interior import InteriorTable
from .sets import BaseSet


def _load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc


def _expect(data, key, kind, where):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{where}: missing field {key!r}")
    value = data[key]
    if not isinstance(value, kind):
        raise InputError(f"{where}: field {key!r} has the wrong type")
    return value


def parse_instance(data, where="instance") -> Cover:
    base_names = _expect(data, "base", list, where)
    try:
        base = BaseSet(base_names)
    except ValueError as exc:
        raise InputError(f"{where}: {exc}") from exc
    if "table" in data:
        rows = _expect(data, "table", list, where)
        table = {}
        for row in rows:
            if not (isinstance(row, list) and len(row) == 2):
                raise InputError(f"{where}: table rows must be [subset, cover-set] pairs")
            try:
                key = base.subset(row[0]).mask
                table[key] = base.subset(row[1]).mask
            except Exception as exc:
                raise InputError(f"{where}: {exc}") from exc
        try:
            return cover_from_table(base, table)
        except InputError as exc:
            raise InputError(f"{where}: {exc}") from exc
    axioms = data.get("axioms", [])
    if not isinstance(axioms, list):
        raise InputError(f"{where}: field 'axioms' has the wrong type")
    pairs = []
    for row in axioms:
        if not (isinstance(row, list) and len(row) == 2 and isinstance(row[1], list)):
            raise InputError(f"{where}: axioms must be [element, [elements...]] pairs")
        pairs.append((row[0], row[1]))
    try:
        return Cover.from_axiom_names(base, pairs)
    except Exception as exc:
        raise InputError(f"{where}: {exc}") from exc


def instance_to_json(cover: Cover) -> dict:
    return {
        "base": list(cover.base.elements),
        "axioms": [[head, body] for head, body in cover.axioms.named_pairs()],
    }


def load_instance(path: str) -> Cover:
    return parse_instance(_load_json(path), where=path)


def parse_space(data, where="space") -> ConcreteSpace:
    points = _expect(data, "points", list, where)
    base = BaseSet(_expect(data, "base", list, where))
    forcing = _expect(data, "forcing", list, where)
    pairs = []
    for row in forcing:
        if not (isinstance(row, list) and len(row) == 2):
            raise InputError(f"{where}: forcing rows must be [point, element] pairs")
        pairs.append((row[0], row[1]))
    try:
        return ConcreteSpace(points, base, pairs)
    except (ValueError, InputError) as exc:
        raise InputError(f"{where}: {exc}") from exc


def space_to_json(space: ConcreteSpace) -> dict:
    return {
        "points": list(space.points),
        "base": list(space.base.elements),
        "forcing": sorted([p, a] for p, a in space.forcing),
    }


def load_space(path: str) -> ConcreteSpace:
    return parse_space(_load_json(path), where=path)


class Workspace:
    """Loads and caches instances so that morphism and operator files can
    reference them by path with referential integrity."""

    def __init__(self, anchor_dir: str = "."):
        self.anchor_dir = anchor_dir
        self._covers: dict[str, Cover] = {}

    def _resolve(self, ref: str, relative_to: str | None) -> str:
        if os.path.isabs(ref):
            return ref
        root = os.path.dirname(relative_to) if relative_to else self.anchor_dir
        return os.path.normpath(os.path.join(root, ref))

    def cover(self, ref: str, relative_to: str | None = None) -> Cover:
        path = self._resolve(ref, relative_to)
        if path not in self._covers:
            self._covers[path] = load_instance(path)
        return self._covers[path]

    def relation_file(self, path: str):
        """Returns (relation pairs, source cover, target cover)."""
        data = _load_json(path)
        src = self.cover(_expect(data, "source", str, path), relative_to=path)
        tgt = self.cover(_expect(data, "target", str, path), relative_to=path)
        rows = _expect(data, "pairs", list, path)
        pairs = []
        for row in rows:
            if not (isinstance(row, list) and len(row) == 2):
                raise InputError(f"{path}: pairs must be [source, target] pairs")
            pairs.append((row[0], row[1]))
        return pairs, src, tgt

    def operator_file(self, path: str, kind: str | None = None):
        """Returns a ClosureTable or InteriorTable per the file's kind."""
        data = _load_json(path)
        cover = self.cover(_expect(data, "cover", str, path), relative_to=path)
        file_kind = data.get("kind", kind or "closure")
        if kind is not None and file_kind != kind:
            raise InputError(f"{path}: operator kind {file_kind!r} does not match requested {kind!r}")
        rows = _expect(data, "table", list, path)
        mapping = {}
        for row in rows:
            if not (isinstance(row, list) and len(row) == 2):
                raise InputError(f"{path}: table rows must be [carrier, image] pairs")
            try:
                mapping[cover.base.subset(row[0]).mask] = cover.base.subset(row[1]).mask
            except Exception as exc:
                raise InputError(f"{path}: {exc}") from exc
        try:
            if file_kind == "interior":
                return InteriorTable.from_mapping(cover, mapping)
            if file_kind == "closure":
                return ClosureTable.from_mapping(cover, mapping)
        except Exception as exc:
            raise InputError(f"{path}: {exc}") from exc
        raise InputError(f"{path}: unknown operator kind {file_kind!r}")


def morphism_to_json(pairs, source_ref: str, target_ref: str) -> dict:
    return {
        "source": source_ref,
        "target": target_ref,
        "pairs": sorted([s, t] for s, t in pairs),
    }


def operator_to_json(table, cover_ref: str) -> dict:
    kind = "interior" if isinstance(table, InteriorTable) else "closure"
    base = table.parent.base
    rows = [
        [base.subset_from_mask(m).sorted_members(), base.subset_from_mask(out).sorted_members()]
        for m, out in enumerate(table.table)
    ]
    return {"cover": cover_ref, "kind": kind, "table": rows}


def dump_json(data, path: str | None = None) -> str:
    text = json.dumps(data, indent=2, ensure_ascii=False)
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text
