"""Exact linear algebra over F0 (or Q) and over the integers.

The field routines are generic: entries only need ``+ - * /`` and truthiness,
so they work for :class:`RatFunc` as well as :class:`fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import gcd as igcd
from typing import Any, Callable, List, Optional, Sequence, Tuple

Vector = List[Any]
Matrix = List[List[Any]]


def _size(v) -> int:
    """Rough size of an entry; pivots of small size keep intermediate swell down."""
    num = getattr(v, "num", None)
    if num is None:
        return 0
    return len(num.terms) + len(v.den.terms)


def rref(rows: Sequence[Sequence[Any]], ncols: int, zero: Any) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns ``(nonzero rows, pivot columns)``."""
    M = [[zero + v for v in r] for r in rows if any(r)]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        if r >= len(M):
            break
        best = None
        for i in range(r, len(M)):
            if M[i][c]:
                s = _size(M[i][c])
                if best is None or s < best[0]:
                    best = (s, i)
                    if s <= 2:
                        break
        if best is None:
            continue
        i = best[1]
        M[r], M[i] = M[i], M[r]
        piv = M[r][c]
        inv = (zero + 1) / piv
        M[r] = [v * inv if v else v for v in M[r]]
        M[r][c] = zero + 1
        for k in range(len(M)):
            if k != r and M[k][c]:
                f = M[k][c]
                rowr = M[r]
                M[k] = [a - f * b if b else a for a, b in zip(M[k], rowr)]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence[Any]], ncols: int, zero: Any) -> Matrix:
    """Kernel basis of the matrix, itself in reduced row echelon form."""
    R, piv = rref(rows, ncols, zero)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [zero] * ncols
        v[f] = zero + 1
        for row, p in zip(R, piv):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    if not basis:
        return []
    return rref(basis, ncols, zero)[0]


@dataclass
class AffineSpace:
    """``particular + span(kernel)``; ``particular`` is None when inconsistent."""

    particular: Optional[Vector]
    kernel: Matrix = dc_field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve_linear_system(A: Sequence[Sequence[Any]], b: Sequence[Any], ncols: int, zero: Any) -> AffineSpace:
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(aug, ncols + 1, zero)
    if piv and piv[-1] == ncols:
        return AffineSpace(None, nullspace(A, ncols, zero))
    x = [zero] * ncols
    for row, p in zip(R, piv):
        x[p] = row[ncols]
    return AffineSpace(x, nullspace(A, ncols, zero))


def row_space_equal(A: Matrix, B: Matrix, ncols: int, zero: Any) -> bool:
    return rref(A, ncols, zero)[0] == rref(B, ncols, zero)[0]


def in_row_space(v: Sequence[Any], basis: Matrix, ncols: int, zero: Any) -> bool:
    r1 = rref(basis, ncols, zero)[0]
    r2 = rref(list(basis) + [list(v)], ncols, zero)[0]
    return len(r1) == len(r2)


def reduce_modulo(v: Sequence[Any], reduced: Matrix, pivots: Sequence[int]) -> Vector:
    """Normal form of ``v`` modulo a row space given in reduced echelon form."""
    w = list(v)
    for row, p in zip(reduced, pivots):
        if w[p]:
            f = w[p]
            w = [a - f * b if b else a for a, b in zip(w, row)]
    return w


# ---------------------------------------------------------------------------
# integer matrices
# ---------------------------------------------------------------------------

def integer_kernel(M: Sequence[Sequence[int]], n: int) -> List[List[int]]:
    """Basis of ``{k in Z^n : M k = 0}`` in Hermite normal form."""
    # column operations on [M; I] keep the bottom block unimodular
    rows = [list(r) for r in M]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    cols = list(range(n))
    done = 0
    for r in range(len(rows)):
        if done >= n:
            break
        row = rows[r]
        while True:
            nz = [c for c in range(done, n) if row[cols[c]]]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(row[cols[c]]))
            cols[done], cols[c0] = cols[c0], cols[done]
            pc = cols[done]
            finished = True
            for c in range(done + 1, n):
                cc = cols[c]
                if row[cc]:
                    q = row[cc] // row[pc]
                    _colop(rows, U, cc, pc, q)
                    if row[cc]:
                        finished = False
            if finished:
                done += 1
                break
    kernel = [[U[i][cols[c]] for i in range(n)] for c in range(done, n)]
    return hnf(kernel)


def _colop(rows: List[List[int]], U: List[List[int]], dst: int, src: int, q: int) -> None:
    for row in rows:
        row[dst] -= q * row[src]
    for row in U:
        row[dst] -= q * row[src]


def hnf(vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    """Row-style Hermite normal form of the lattice spanned by ``vectors``."""
    A = [list(v) for v in vectors if any(v)]
    if not A:
        return []
    n = len(A[0])
    out: List[List[int]] = []
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(A)) if A[i][c]]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(A[i][c]))
            A[r], A[i0] = A[i0], A[r]
            clean = True
            for i in range(r + 1, len(A)):
                if A[i][c]:
                    q = A[i][c] // A[r][c]
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
                    if A[i][c]:
                        clean = False
            if clean:
                break
        if r < len(A) and A[r][c]:
            if A[r][c] < 0:
                A[r] = [-a for a in A[r]]
            for i in range(r):
                q = A[i][c] // A[r][c]
                if q:
                    A[i] = [a - q * b for a, b in zip(A[i], A[r])]
            r += 1
    out = [row for row in A[:r]]
    return out


def primitive_int(v: Sequence[int]) -> List[int]:
    g = 0
    for a in v:
        g = igcd(g, a)
    if g == 0:
        return list(v)
    first = next(a for a in v if a)
    if first < 0:
        g = -g
    return [a // g for a in v]
