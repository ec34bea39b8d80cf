"""Horns, filler search and bounded quasi-category checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from freedeg import delta
from freedeg.adjunction import PlusSimplex, plus, restrict
from freedeg.sset import (
    SemisimplicialSet,
    SimplicialSet,
    TruncationError,
    compatible_boundaries,
)

TRUNCATION_CAVEAT = (
    "only horns of dimension <= max_dim inside a finite truncation were examined; "
    "this does not certify the quasi-category property in higher dimensions"
)


class HornError(ValueError):
    """A horn's faces do not satisfy the compatibility equations."""


@dataclass(frozen=True)
class HornInstance:
    dim: int
    missing_face: int
    faces: tuple[int | None, ...]  # length dim+1, None at missing_face

    @property
    def is_inner(self) -> bool:
        return 0 < self.missing_face < self.dim

    def as_dict(self) -> dict:
        return {"dim": self.dim, "missing_face": self.missing_face, "faces": list(self.faces)}


def horn_is_compatible(X: SemisimplicialSet, h: HornInstance) -> bool:
    n, i = h.dim, h.missing_face
    if len(h.faces) != n + 1 or h.faces[i] is not None:
        return False
    if any(f is None or not 0 <= f < X.count(n - 1) for k, f in enumerate(h.faces) if k != i):
        return False
    if n < 2:
        return True
    F = X.faces[n - 1]
    for k in range(n + 1):
        for j in range(k):
            if i in (j, k):
                continue
            if F[h.faces[k]][j] != F[h.faces[j]][k - 1]:
                return False
    return True


def enumerate_horns(
    X: SemisimplicialSet, n: int, inner_only: bool = True
) -> Iterator[HornInstance]:
    """Every compatible horn of dimension ``n``, by missing face then faces."""
    if not 1 <= n <= X.trunc_dim:
        raise TruncationError(f"horn dimension {n} outside 1..{X.trunc_dim}")
    missing = range(1, n) if inner_only else range(n + 1)
    for i in missing:
        for faces in compatible_boundaries(X, n, missing=i):
            yield HornInstance(n, i, faces)


class FillerIndex:
    """n-simplices keyed by their boundary with one face removed."""

    def __init__(self, X: SemisimplicialSet, n: int, i: int):
        self.n, self.i = n, i
        self.table: dict[tuple[int, ...], list[int]] = {}
        for sid, fs in enumerate(X.faces[n]):
            key = fs[:i] + fs[i + 1 :]
            self.table.setdefault(key, []).append(sid)

    def fillers(self, h: HornInstance) -> list[int]:
        key = h.faces[: self.i] + h.faces[self.i + 1 :]
        return self.table.get(key, [])


def fillers(X: SemisimplicialSet, h: HornInstance) -> list[int]:
    if not horn_is_compatible(X, h):
        raise HornError(f"incompatible horn {h}")
    return FillerIndex(X, h.dim, h.missing_face).fillers(h)


def find_filler(X: SemisimplicialSet, h: HornInstance) -> int | None:
    found = fillers(X, h)
    return found[0] if found else None


@dataclass
class QuasiReport:
    max_dim: int
    checked: int = 0
    unfilled: list[HornInstance] = field(default_factory=list)
    filler_counts: dict[int, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.unfilled

    def entries(self) -> list[dict]:
        return [{"horn": h.as_dict(), "status": "unfilled"} for h in self.unfilled]

    def as_dict(self) -> dict:
        return {
            "max_dim": self.max_dim,
            "checked": self.checked,
            "unfilled": self.entries(),
            "quasi_category_up_to_max_dim": self.ok,
            "caveat": TRUNCATION_CAVEAT,
        }


def quasicheck(X: SimplicialSet, max_dim: int) -> QuasiReport:
    """Search every inner horn of dimension <= max_dim for a filler."""
    if max_dim >= X.trunc_dim:
        raise TruncationError(f"max_dim {max_dim} must be below trunc_dim {X.trunc_dim}")
    report = QuasiReport(max_dim)
    for n in range(2, max_dim + 1):
        for i in range(1, n):
            index = FillerIndex(X, n, i)
            for faces in compatible_boundaries(X, n, missing=i):
                h = HornInstance(n, i, faces)
                report.checked += 1
                found = len(index.fillers(h))
                report.filler_counts[found] = report.filler_counts.get(found, 0) + 1
                if not found:
                    report.unfilled.append(h)
    return report


def horn_report(X: SemisimplicialSet, n: int, inner_only: bool = True) -> list[dict]:
    """Filler status for each horn in the documented JSON shape."""
    out = []
    indices: dict[int, FillerIndex] = {}
    for h in enumerate_horns(X, n, inner_only):
        index = indices.setdefault(h.missing_face, FillerIndex(X, n, h.missing_face))
        found = index.fillers(h)
        entry = {"horn": h.as_dict(), "status": "filled" if found else "unfilled"}
        if found:
            entry["filler"] = found[0]
        out.append(entry)
    return out


# -- the non-quasi-category example ----------------------------------------

COUNTEREXAMPLE_VERTICES = ("x0", "x1", "x2")
COUNTEREXAMPLE_EDGES = {"f01": (1, 0), "f12": (2, 1), "f02": (2, 0), "f03": (2, 0)}
COUNTEREXAMPLE_TRIANGLES = {"T012": ("f12", "f02", "f01"), "T013": ("f12", "f03", "f01")}


def counterexample_generators(trunc_dim: int = 4) -> SemisimplicialSet:
    """Nondegenerate cells of the example: three vertices (x3 is x2),
    edges f01, f12 = f13 and two distinct edges f02, f03 from x0 to x2,
    and 2-simplices T012, T013 sharing the edges f01, f12.

    Faces are listed as ``(d0, d1, d2)``; an edge ``(d0, d1)`` is
    ``(target, source)``.
    """
    edges = list(COUNTEREXAMPLE_EDGES)
    tris = list(COUNTEREXAMPLE_TRIANGLES)
    faces = [
        tuple(() for _ in COUNTEREXAMPLE_VERTICES),
        tuple(COUNTEREXAMPLE_EDGES[e] for e in edges),
        tuple(tuple(edges.index(e) for e in COUNTEREXAMPLE_TRIANGLES[t]) for t in tris),
    ]
    faces += [()] * (trunc_dim - 2)
    labels = [COUNTEREXAMPLE_VERTICES, tuple(edges), tuple(tris)] + [()] * (trunc_dim - 2)
    X = SemisimplicialSet(tuple(faces), tuple(labels))
    X.validate()
    return X


def counterexample_input(trunc_dim: int = 4) -> SimplicialSet:
    """The simplicial set generated by :func:`counterexample_generators`.

    Its simplices are the generating cells with degeneracies adjoined, so
    the generators are exactly its nondegenerate simplices.
    """
    C = plus(counterexample_generators(trunc_dim))
    C.validate()
    return C


def cell(C: SimplicialSet, name: str) -> tuple[int, int]:
    """Locate a named generating cell of :func:`counterexample_input`."""
    gens = counterexample_generators(C.trunc_dim)
    for n in range(3):
        if name in gens.labels[n]:
            base = gens.labels[n].index(name)
            return n, C.labels[n].index(PlusSimplex(base, delta.identity(n)))
    raise KeyError(name)


def matches_nonquasi_pattern(C: SimplicialSet, Cplus: SimplicialSet, h: HornInstance) -> bool:
    """Does a horn in ``Cplus`` have the shape used to show non-fillability?

    Shape: an inner 3-horn missing face 1 whose face 0 (T123) is ``s_1`` of a
    nondegenerate edge, whose faces 2 and 3 (T013, T012) come from 2-simplices
    of C, and whose two long edges f02 = d1 T012 and f03 = d1 T013 differ.
    """
    if h.dim != 3 or h.missing_face != 1:
        return False
    lab = Cplus.labels
    t123, t013, t012 = (lab[2][h.faces[k]] for k in (0, 2, 3))
    if t123.surj.values != (0, 1, 1) or t013.surj.values != (0, 1, 2) or t012.surj.values != (0, 1, 2):
        return False
    f02 = Cplus.faces[2][h.faces[3]][1]
    f03 = Cplus.faces[2][h.faces[2]][1]
    return f02 != f03


def nonquasi_witnesses(trunc_dim: int = 4) -> tuple[SimplicialSet, SimplicialSet, list[HornInstance]]:
    """Unfilled inner 3-horns of ``C_+`` with the non-fillable shape."""
    C = counterexample_input(trunc_dim)
    Cplus = plus(restrict(C))
    index = FillerIndex(Cplus, 3, 1)
    found = []
    for faces in compatible_boundaries(Cplus, 3, missing=1):
        h = HornInstance(3, 1, faces)
        if matches_nonquasi_pattern(C, Cplus, h) and not index.fillers(h):
            found.append(h)
    return C, Cplus, found
