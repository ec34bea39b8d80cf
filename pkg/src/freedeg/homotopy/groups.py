"""Edge-path presentations of the fundamental group and triviality tests.

Words are tuples of nonzero ints: ``g + 1`` is generator ``g`` and
``-(g + 1)`` its inverse.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from freedeg.homotopy.snf import smith_normal_form
from freedeg.sset import SimplicialSet

Word = tuple[int, ...]

DEFAULT_BUDGET = 10_000


class ConnectivityError(ValueError):
    """The simplicial set is not connected."""


class GroupVerdict(str, Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    UNKNOWN = "unknown"


@dataclass
class GroupPresentation:
    generators: list  # labels (edge ids for edge-path presentations)
    relators: list[Word]

    def as_dict(self) -> dict:
        return {"generators": list(self.generators), "relators": [list(r) for r in self.relators]}


def pi1_presentation(X: SimplicialSet, basepoint: int = 0) -> GroupPresentation:
    """Generators are nondegenerate edges off a BFS spanning tree; each
    nondegenerate 2-simplex T contributes ``[d2 T][d0 T][d1 T]^-1``.
    """
    if not 0 <= basepoint < X.count(0):
        raise ValueError(f"basepoint {basepoint} is not a vertex")
    edges = X.nondegenerate(1) if X.trunc_dim >= 1 else []
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(X.count(0))}
    for e in edges:
        tgt, src = X.faces[1][e]
        adj[src].append((tgt, e))
        adj[tgt].append((src, e))
    seen = {basepoint}
    tree = set()
    queue = deque([basepoint])
    while queue:
        v = queue.popleft()
        for w, e in adj[v]:
            if w not in seen:
                seen.add(w)
                tree.add(e)
                queue.append(w)
    if len(seen) != X.count(0):
        raise ConnectivityError(f"{X.count(0) - len(seen)} vertices unreachable from {basepoint}")
    gens = [e for e in edges if e not in tree]
    letter = {e: k + 1 for k, e in enumerate(gens)}
    relators = []
    for T in X.nondegenerate(2) if X.trunc_dim >= 2 else []:
        d0, d1, d2 = X.faces[2][T]
        word = tuple(
            s * letter[e] for e, s in ((d2, 1), (d0, 1), (d1, -1)) if e in letter
        )
        if word:
            relators.append(word)
    return GroupPresentation(gens, relators)


def free_reduce(w: Sequence[int]) -> Word:
    out: list[int] = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = list(free_reduce(w))
    while len(w) > 1 and w[0] == -w[-1]:
        w = w[1:-1]
    return tuple(w)


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def _substitute(w: Word, gen: int, value: Word) -> Word:
    out: list[int] = []
    for x in w:
        if abs(x) == gen:
            out.extend(value if x > 0 else invert(value))
        else:
            out.append(x)
    return tuple(out)


def is_idempotent_relation(w: Word) -> bool:
    """True for cyclic words spelling ``x x = x`` (e.g. ``x x x^-1``)."""
    return len(w) == 3 and len({abs(x) for x in w}) == 1 and abs(sum(1 if x > 0 else -1 for x in w)) == 1


@dataclass
class Simplification:
    presentation: GroupPresentation
    steps: list[str] = field(default_factory=list)


def simplify(P: GroupPresentation) -> Simplification:
    """Idempotent rule first, then Tietze moves that remove generators."""
    steps = []
    rels = [tuple(r) for r in P.relators]
    alive = set(range(1, len(P.generators) + 1))

    def kill(g: int, value: Word = ()) -> None:
        nonlocal rels
        alive.discard(g)
        rels = [_substitute(r, g, value) for r in rels]

    for r in list(rels):
        if is_idempotent_relation(r) and abs(r[0]) in alive:
            g = abs(r[0])
            steps.append(f"idempotent: {P.generators[g - 1]}*{P.generators[g - 1]} = "
                         f"{P.generators[g - 1]} forces it to be trivial")
            kill(g)

    changed = True
    while changed:
        changed = False
        rels = sorted({cyclic_reduce(r) for r in rels if cyclic_reduce(r)}, key=lambda r: (len(r), r))
        for r in rels:
            counts: dict[int, int] = {}
            for x in r:
                counts[abs(x)] = counts.get(abs(x), 0) + 1
            once = [g for g, c in counts.items() if c == 1]
            if not once:
                continue
            g = min(once)
            k = next(i for i, x in enumerate(r) if abs(x) == g)
            rotated = r[k:] + r[:k]
            rest = rotated[1:]
            value = invert(rest) if rotated[0] > 0 else rest
            steps.append(
                f"tietze: eliminate {P.generators[g - 1]} using a relator of length {len(r)}"
            )
            rels.remove(r)
            kill(g, free_reduce(value))
            changed = True
            break

    order = sorted(alive)
    rename = {g: i + 1 for i, g in enumerate(order)}
    rels = [tuple((1 if x > 0 else -1) * rename[abs(x)] for x in r) for r in rels]
    gens = [P.generators[g - 1] for g in order]
    return Simplification(GroupPresentation(gens, rels), steps)


def abelianization(P: GroupPresentation) -> tuple[int, tuple[int, ...]]:
    """``(free rank, torsion coefficients)`` of the abelianized group."""
    n = len(P.generators)
    rows = []
    for r in P.relators:
        row = [0] * n
        for x in r:
            row[abs(x) - 1] += 1 if x > 0 else -1
        rows.append(row)
    form = smith_normal_form(rows, ncols=n)
    return n - form.rank, tuple(d for d in form.diagonal if d > 1)


class BudgetExceeded(RuntimeError):
    pass


def coset_enumeration(P: GroupPresentation, max_cosets: int = DEFAULT_BUDGET) -> int:
    """Index of the trivial subgroup (the group order), by HLT Todd-Coxeter.

    Raises :class:`BudgetExceeded` once more than ``max_cosets`` rows have
    been defined.
    """
    ncols = 2 * len(P.generators)
    rels = [free_reduce(r) for r in P.relators if free_reduce(r)]

    def col(x: int) -> int:
        return 2 * (abs(x) - 1) + (x < 0)

    table: list[list[int | None]] = [[None] * ncols]
    parent = [0]

    def rep(k: int) -> int:
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def define(c: int, x: int) -> None:
        if len(table) >= max_cosets:
            raise BudgetExceeded(f"more than {max_cosets} cosets")
        new = len(table)
        table.append([None] * ncols)
        parent.append(new)
        table[c][x] = new
        table[new][x ^ 1] = c

    def merge(k: int, l: int, queue: list[int]) -> None:
        k, l = rep(k), rep(l)
        if k == l:
            return
        if k > l:
            k, l = l, k
        parent[l] = k
        queue.append(l)

    def coincidence(a: int, b: int) -> None:
        queue: list[int] = []
        merge(a, b, queue)
        while queue:
            e = queue.pop(0)
            for x in range(ncols):
                f = table[e][x]
                if f is None:
                    continue
                table[f][x ^ 1] = None
                e1, f1 = rep(e), rep(f)
                if table[e1][x] is not None:
                    merge(f1, table[e1][x], queue)
                elif table[f1][x ^ 1] is not None:
                    merge(e1, table[f1][x ^ 1], queue)
                else:
                    table[e1][x] = f1
                    table[f1][x ^ 1] = e1

    def scan_and_fill(c: int, w: Word) -> None:
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and table[f][col(w[i])] is not None:
                f = table[f][col(w[i])]
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i and table[b][col(-w[j])] is not None:
                b = table[b][col(-w[j])]
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][col(w[i])] = b
                table[b][col(-w[i])] = f
                return
            define(f, col(w[i]))

    c = 0
    while c < len(table):
        if parent[c] == c:
            for r in rels:
                scan_and_fill(c, r)
                if parent[c] != c:
                    break
            if parent[c] == c:
                for x in range(ncols):
                    if table[c][x] is None:
                        define(c, x)
        c += 1
    return sum(1 for k in range(len(table)) if parent[k] == k)


@dataclass
class GroupAnalysis:
    verdict: GroupVerdict
    steps: list[str]
    abelian_rank: int | None = None
    abelian_torsion: tuple[int, ...] = ()
    order: int | None = None

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "steps": self.steps,
            "abelianization": {"rank": self.abelian_rank, "torsion": list(self.abelian_torsion)},
            "order": self.order,
        }


def analyze_group(P: GroupPresentation, budget: int = DEFAULT_BUDGET) -> GroupAnalysis:
    simp = simplify(P)
    Q = simp.presentation
    steps = list(simp.steps)
    if not Q.generators:
        steps.append("no generators remain")
        return GroupAnalysis(GroupVerdict.TRIVIAL, steps, 0, (), 1)
    rank, torsion = abelianization(Q)
    if rank or torsion:
        steps.append(f"abelianization has rank {rank} and torsion {list(torsion)}")
        return GroupAnalysis(GroupVerdict.NONTRIVIAL, steps, rank, torsion)
    try:
        order = coset_enumeration(Q, budget)
    except BudgetExceeded:
        steps.append(f"coset enumeration exceeded {budget} rows")
        return GroupAnalysis(GroupVerdict.UNKNOWN, steps, rank, torsion)
    steps.append(f"coset enumeration closed with {order} coset(s)")
    verdict = GroupVerdict.TRIVIAL if order == 1 else GroupVerdict.NONTRIVIAL
    return GroupAnalysis(verdict, steps, rank, torsion, order)


def is_trivial_group(P: GroupPresentation, budget: int = DEFAULT_BUDGET) -> GroupVerdict:
    return analyze_group(P, budget).verdict
