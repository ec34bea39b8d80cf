"""Smith normal form over the integers (exact, pure Python ints)."""

from __future__ import annotations

from dataclasses import dataclass

Matrix = list[list[int]]


@dataclass
class SmithForm:
    diagonal: list[int]  # nonzero invariant factors d_1 | d_2 | ...
    D: Matrix
    U: Matrix | None = None  # U @ A @ V == D
    V: Matrix | None = None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return []
    inner = len(B)
    cols = len(B[0]) if B else 0
    return [
        [sum(A[i][k] * B[k][j] for k in range(inner)) for j in range(cols)]
        for i in range(len(A))
    ]


def smith_normal_form(A: Matrix, ncols: int | None = None, transforms: bool = False) -> SmithForm:
    """Diagonalize by unimodular row and column operations.

    Pivots are chosen by minimal absolute value; divisibility of successive
    invariant factors is enforced by folding a non-divisible entry into the
    pivot row.  ``ncols`` is needed only when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    M = [list(row) for row in A]
    U = identity_matrix(m) if transforms else None
    V = identity_matrix(n) if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U is not None:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in M:
            row[i], row[j] = row[j], row[i]
        if V is not None:
            for row in V:
                row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):  # row_dst += c * row_src
        rs, rd = M[src], M[dst]
        for k in range(n):
            if rs[k]:
                rd[k] += c * rs[k]
        if U is not None:
            us, ud = U[src], U[dst]
            for k in range(m):
                if us[k]:
                    ud[k] += c * us[k]

    def add_col(src, dst, c):  # col_dst += c * col_src
        for row in M:
            if row[src]:
                row[dst] += c * row[src]
        if V is not None:
            for row in V:
                if row[src]:
                    row[dst] += c * row[src]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        if U is not None:
            U[i] = [-x for x in U[i]]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                if row[j] and (best is None or abs(row[j]) < best[0]):
                    best = (abs(row[j]), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = M[i][t] // p
                    add_row(t, i, -q)
                    if M[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j]:
                    q = M[t][j] // p
                    add_col(t, j, -q)
                    if M[t][j]:
                        dirty = True
            if dirty:
                # move the smallest leftover in row/column t onto the pivot
                cands = [(abs(M[i][t]), i, t) for i in range(t + 1, m) if M[i][t]]
                cands += [(abs(M[t][j]), t, j) for j in range(t + 1, n) if M[t][j]]
                _, i, j = min(cands)
                if j == t:
                    swap_rows(t, i)
                else:
                    swap_cols(t, j)
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if M[t][t] < 0:
            negate_row(t)
        t += 1

    diagonal = [M[i][i] for i in range(min(m, n)) if M[i][i]]
    return SmithForm(diagonal, M, U, V)
