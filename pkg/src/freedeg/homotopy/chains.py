"""Normalized chains and integral homology."""

from __future__ import annotations

from dataclasses import dataclass, field

from freedeg.homotopy.snf import Matrix, matmul, smith_normal_form
from freedeg.sset import SimplicialSet, TruncationError


@dataclass
class ChainComplex:
    """``boundaries[n]`` is the matrix of d: C_n -> C_{n-1} (rows index C_{n-1})."""

    ranks: list[int]
    boundaries: list[Matrix]
    basis: list[list[int]] = field(default_factory=list, repr=False)

    @property
    def top_degree(self) -> int:
        return len(self.ranks) - 1

    def boundary_squared_violations(self) -> list[int]:
        bad = []
        for n in range(2, self.top_degree + 1):
            if self.ranks[n - 2] and self.ranks[n] and self.ranks[n - 1]:
                prod = matmul(self.boundaries[n - 1], self.boundaries[n])
                if any(any(row) for row in prod):
                    bad.append(n)
        return bad


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple[int, ...] = ()

    @property
    def is_zero(self) -> bool:
        return self.betti == 0 and not self.torsion

    def as_dict(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self) -> str:
        parts = (["Z^%d" % self.betti] if self.betti > 1 else ["Z"] if self.betti else [])
        parts += [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) or "0"


def normalized_chains(X: SimplicialSet) -> ChainComplex:
    """Chains on nondegenerate simplices; degenerate faces contribute zero."""
    basis = [X.nondegenerate(n) for n in range(X.trunc_dim + 1)]
    position = [{sid: r for r, sid in enumerate(b)} for b in basis]
    boundaries: list[Matrix] = [[]]
    for n in range(1, X.trunc_dim + 1):
        rows = len(basis[n - 1])
        M = [[0] * len(basis[n]) for _ in range(rows)]
        for col, sid in enumerate(basis[n]):
            for i, f in enumerate(X.faces[n][sid]):
                r = position[n - 1].get(f)
                if r is not None:
                    M[r][col] += -1 if i % 2 else 1
        boundaries.append(M)
    return ChainComplex([len(b) for b in basis], boundaries, basis)


def homology(C: ChainComplex, max_deg: int) -> list[HomologyGroup]:
    """H_0 .. H_max_deg; degree max_deg + 1 of the complex must exist."""
    if max_deg + 1 > C.top_degree:
        raise TruncationError(
            f"H_{max_deg} needs chains in degree {max_deg + 1}; complex stops at {C.top_degree}"
        )
    forms = {}
    for n in range(1, max_deg + 2):
        forms[n] = smith_normal_form(C.boundaries[n], ncols=C.ranks[n])
    groups = []
    for n in range(max_deg + 1):
        rank_out = forms[n].rank if n >= 1 else 0
        incoming = forms[n + 1]
        betti = C.ranks[n] - rank_out - incoming.rank
        torsion = tuple(d for d in incoming.diagonal if d > 1)
        groups.append(HomologyGroup(betti, torsion))
    return groups


def reduced_is_zero(groups: list[HomologyGroup]) -> bool:
    return (
        bool(groups)
        and groups[0] == HomologyGroup(1)
        and all(g.is_zero for g in groups[1:])
    )
