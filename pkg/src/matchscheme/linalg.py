"""Exact linear algebra over the integers and rationals.

Nothing in here touches floating point. Matrices are lists of lists (or
integer numpy arrays where noted); rationals are ``fractions.Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

Poly = list[int]  # coefficients, lowest degree first


class UnsupportedInstance(ArithmeticError):
    """An exact computation met a case it refuses to approximate."""


# --- integer polynomials -----------------------------------------------------


def _trim(p: Poly) -> Poly:
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def poly_mul(a: Poly, b: Poly) -> Poly:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def poly_sub(a: Poly, b: Poly) -> Poly:
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


def poly_exact_div(a: Poly, b: Poly) -> Poly:
    """``a / b`` for a monic-or-unit-leading ``b``; raises if not exact."""
    a = list(a)
    lead = b[-1]
    if len(a) < len(b):
        if any(a):
            raise ArithmeticError("inexact polynomial division")
        return [0]
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(a[i + len(b) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c
        if c:
            for j, y in enumerate(b):
                a[i + j] -= c * y
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return _trim(q)


def poly_eval(p: Poly, x: int) -> int:
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def charpoly(matrix) -> Poly:
    """det(xI - B) for an integer matrix, by Bareiss elimination on polynomials.

    Every pivot is a leading principal minor of xI - B, hence monic, so the
    elimination never needs a row swap and every division is exact.
    """
    B = [[int(v) for v in row] for row in matrix]
    size = len(B)
    if size == 0:
        return [1]
    M = [[([-B[i][j], 1] if i == j else _trim([-B[i][j]])) for j in range(size)] for i in range(size)]
    prev: Poly = [1]
    for k in range(size - 1):
        pivot = M[k][k]
        for i in range(k + 1, size):
            for j in range(k + 1, size):
                num = poly_sub(poly_mul(pivot, M[i][j]), poly_mul(M[i][k], M[k][j]))
                M[i][j] = poly_exact_div(num, prev)
        prev = pivot
    return M[size - 1][size - 1]


def integer_roots(p: Poly, bound: int) -> dict[int, int]:
    """All roots of ``p`` as ``{root: multiplicity}``, requiring them to be integers.

    Candidates are divisors of the (nonzero) constant term with absolute
    value at most ``bound``; each hit is divided out exactly. Anything left
    over means a non-integral root, and that raises UnsupportedInstance.
    """
    p = _trim(list(p))
    roots: dict[int, int] = {}
    while len(p) > 1 and p[0] == 0:
        p = p[1:]
        roots[0] = roots.get(0, 0) + 1
    for r in range(1, bound + 1):
        if len(p) == 1:
            break
        if p[0] % r:
            continue
        for cand in (r, -r):
            while len(p) > 1 and poly_eval(p, cand) == 0:
                p = poly_exact_div(p, [-cand, 1])
                roots[cand] = roots.get(cand, 0) + 1
    if len(p) > 1:
        raise UnsupportedInstance(f"characteristic polynomial has non-integer roots; residual factor {p}")
    return roots


# --- rational matrices -------------------------------------------------------


def to_fractions(matrix) -> list[list[Fraction]]:
    return [[Fraction(v) for v in row] for row in matrix]


def rref(matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q and the pivot columns."""
    A = to_fractions(matrix)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def nullspace(matrix, cols: int | None = None) -> list[list[Fraction]]:
    """Basis of ``{v : A v = 0}`` (one free variable set to 1 per vector)."""
    if not matrix:
        return [[Fraction(int(i == j)) for j in range(cols)] for i in range(cols)]
    R, pivots = rref(matrix)
    ncols = len(R[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in enumerate(pivots):
            v[pc] = -R[row][f]
        basis.append(v)
    return basis


def solve(matrix, rhs) -> list[Fraction] | None:
    """One exact solution of ``A x = b`` (free variables 0), or None if inconsistent."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    R, pivots = rref(aug)
    ncols = len(aug[0]) - 1
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, pc in enumerate(pivots):
        x[pc] = R[row][-1]
    return x


def matmul_q(A, B) -> list[list[Fraction]]:
    Bt = list(zip(*B))
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in Bt] for row in A]


def matvec_q(A, v) -> list[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in A]


def integer_rank(matrix) -> int:
    """Rank over Q of an integer matrix, by fraction-free (Bareiss) elimination."""
    A = [[int(v) for v in row] for row in matrix]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    prev = 1
    for c in range(cols):
        piv = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        pr = A[r]
        for i in range(r + 1, rows):
            row = A[i]
            f = row[c]
            if f == 0:
                if p != prev:
                    A[i] = [(p * x) // prev for x in row]
                continue
            A[i] = [(p * x - f * y) // prev for x, y in zip(row, pr)]
        prev = p
        r += 1
        if r == rows:
            break
    return r


# --- exact integer matrix products ------------------------------------------

_INT64_SAFE = 2**62


def exact_matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Integer matrix product that never overflows silently.

    Uses int64 when the worst-case accumulated magnitude fits, otherwise
    Python ints through object arrays.
    """
    A = np.asarray(A)
    B = np.asarray(B)
    amax = int(np.abs(A).max()) if A.size else 0
    bmax = int(np.abs(B).max()) if B.size else 0
    if amax * bmax * max(A.shape[-1], 1) < _INT64_SAFE:
        return A.astype(np.int64) @ B.astype(np.int64)
    return A.astype(object) @ B.astype(object)


def common_denominator(values) -> int:
    d = 1
    for v in values:
        d = lcm(d, Fraction(v).denominator)
    return d


def content(values) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g
