"""JSON serialization for simplicial sets and finite categories.

Simplicial sets use ``{"trunc_dim", "dims": [{"count", "faces", "degens"}]}``
with ``degens`` omitted for semisimplicial sets.  Outputs of the plus
construction carry an auxiliary ``"plus_pairs"`` table giving, per
dimension, ``[base, surjection values]`` for each simplex.  Categories use
``{"objects", "morphisms": [{"src", "tgt"}], "compose", "ids"}``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any

from freedeg.adjunction import PlusSimplex
from freedeg.category import FiniteCategory, from_table
from freedeg.delta import PosetMap
from freedeg.sset import SemisimplicialSet, SimplicialSet


@dataclass
class InputError(ValueError):
    """Bad input, located by JSON path and (for syntax errors) line/column."""

    message: str
    path: str = "$"
    line: int | None = None
    column: int | None = None

    def __str__(self) -> str:
        where = f"line {self.line} column {self.column}" if self.line else self.path
        return f"{where}: {self.message}"

    def as_dict(self) -> dict:
        d: dict[str, Any] = {"error": self.message, "path": self.path}
        if self.line is not None:
            d["line"], d["column"] = self.line, self.column
        return d


def dumps(doc: Any) -> str:
    """Canonical single-line JSON with a trailing newline."""
    return json.dumps(doc, separators=(",", ":")) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc.msg}", "$", exc.lineno, exc.colno) from None


# -- simplicial sets -------------------------------------------------------


def sset_to_json(X: SemisimplicialSet) -> dict:
    dims = []
    for n in range(X.trunc_dim + 1):
        entry: dict[str, Any] = {"count": X.count(n), "faces": [list(f) for f in X.faces[n]]}
        if isinstance(X, SimplicialSet):
            rows = X.degens[n] if n < len(X.degens) else [()] * X.count(n)
            entry["degens"] = [list(s) for s in rows]
        dims.append(entry)
    doc: dict[str, Any] = {"trunc_dim": X.trunc_dim, "dims": dims}
    if X.labels is not None and all(
        isinstance(lab, PlusSimplex) for level in X.labels for lab in level
    ):
        doc["plus_pairs"] = [
            [[p.base, list(p.surj.values)] for p in level] for level in X.labels
        ]
    return doc


def _int_rows(rows: Any, path: str, width: int | None, bound: int | None) -> tuple:
    if not isinstance(rows, list):
        raise InputError("expected a list", path)
    out = []
    for r, row in enumerate(rows):
        here = f"{path}[{r}]"
        if not isinstance(row, list):
            raise InputError("expected a list of ids", here)
        if width is not None and len(row) != width:
            raise InputError(f"expected {width} entries, got {len(row)}", here)
        for c, v in enumerate(row):
            if not isinstance(v, int) or isinstance(v, bool):
                raise InputError("expected an integer id", f"{here}[{c}]")
            if bound is not None and not 0 <= v < bound:
                raise InputError(f"id {v} out of range 0..{bound - 1}", f"{here}[{c}]")
        out.append(tuple(row))
    return tuple(out)


def sset_from_json(doc: Any, trunc_dim: int | None = None) -> SemisimplicialSet:
    """Parse and check the shape; never reads dimensions above ``trunc_dim``."""
    if not isinstance(doc, dict):
        raise InputError("expected a simplicial-set object")
    if "error" in doc and "dims" not in doc:
        raise InputError(f"upstream error: {doc['error']}")
    D = doc.get("trunc_dim")
    dims = doc.get("dims")
    if not isinstance(D, int) or D < 0:
        raise InputError("trunc_dim must be a nonnegative integer", "$.trunc_dim")
    if not isinstance(dims, list) or len(dims) != D + 1:
        raise InputError(f"dims must list {D + 1} dimensions", "$.dims")
    if trunc_dim is not None:
        if trunc_dim > D:
            raise InputError(f"--trunc-dim {trunc_dim} exceeds the input trunc_dim {D}", "$.trunc_dim")
        D = trunc_dim
    simplicial = all(isinstance(d, dict) and "degens" in d for d in dims[: D + 1])
    counts = []
    for n in range(D + 1):
        entry = dims[n]
        if not isinstance(entry, dict) or not isinstance(entry.get("count"), int):
            raise InputError("expected {count, faces[, degens]}", f"$.dims[{n}]")
        counts.append(entry["count"])
    faces, degens = [], []
    for n in range(D + 1):
        entry = dims[n]
        f = _int_rows(entry.get("faces"), f"$.dims[{n}].faces", n + 1 if n else 0,
                      counts[n - 1] if n else None)
        if len(f) != counts[n]:
            raise InputError(f"count {counts[n]} but {len(f)} face rows", f"$.dims[{n}].faces")
        faces.append(f)
        if simplicial:
            bound = counts[n + 1] if n < D else None
            s = _int_rows(entry.get("degens"), f"$.dims[{n}].degens", n + 1 if n < D else None, bound)
            if len(s) != counts[n]:
                raise InputError(f"count {counts[n]} but {len(s)} degeneracy rows", f"$.dims[{n}].degens")
            if n < D:
                degens.append(s)
    labels = None
    pairs = doc.get("plus_pairs")
    if pairs is not None:
        try:
            labels = tuple(
                tuple(PlusSimplex(b, PosetMap.of(s)) for b, s in pairs[n])
                for n in range(D + 1)
            )
        except (TypeError, ValueError, IndexError) as exc:
            raise InputError(f"bad plus_pairs entry ({exc})", "$.plus_pairs") from None
    if simplicial:
        return SimplicialSet(tuple(faces), labels, tuple(degens))
    return SemisimplicialSet(tuple(faces), labels)


# -- finite categories -----------------------------------------------------


def _plain(obj: Any) -> Any:
    if hasattr(obj, "describe"):
        return obj.describe()
    if isinstance(obj, tuple):
        return [_plain(x) for x in obj]
    if isinstance(obj, (int, str, float)) or obj is None:
        return obj
    return repr(obj)


def category_to_json(C: FiniteCategory) -> dict:
    return {
        "objects": [_plain(o) for o in C.objects],
        "morphisms": [{"src": s, "tgt": t} for s, t, _ in C.morphisms],
        "compose": C.composition_table(),
        "ids": list(C.identities),
    }


def category_from_json(doc: Any) -> FiniteCategory:
    if not isinstance(doc, dict):
        raise InputError("expected a category object")
    for key in ("objects", "morphisms", "compose", "ids"):
        if not isinstance(doc.get(key), list):
            raise InputError(f"missing list {key!r}", f"$.{key}")
    nobj, nmor = len(doc["objects"]), len(doc["morphisms"])
    morphs = []
    for m, entry in enumerate(doc["morphisms"]):
        if not isinstance(entry, dict):
            raise InputError("expected {src, tgt}", f"$.morphisms[{m}]")
        s, t = entry.get("src"), entry.get("tgt")
        for name, v in (("src", s), ("tgt", t)):
            if not isinstance(v, int) or not 0 <= v < nobj:
                raise InputError(f"{name} must be an object index", f"$.morphisms[{m}].{name}")
        morphs.append((s, t))
    compose = doc["compose"]
    if len(compose) != nmor:
        raise InputError(f"compose must have {nmor} rows", "$.compose")
    for g, row in enumerate(compose):
        if not isinstance(row, list) or len(row) != nmor:
            raise InputError(f"expected {nmor} entries", f"$.compose[{g}]")
        for f, h in enumerate(row):
            if h is not None and (not isinstance(h, int) or not 0 <= h < nmor):
                raise InputError("expected a morphism index or null", f"$.compose[{g}][{f}]")
    ids = doc["ids"]
    if len(ids) != nobj or any(not isinstance(i, int) or not 0 <= i < nmor for i in ids):
        raise InputError("ids must give one morphism index per object", "$.ids")
    objects = [o if isinstance(o, (int, str)) else json.dumps(o) for o in doc["objects"]]
    return from_table(objects, morphs, compose, ids)
