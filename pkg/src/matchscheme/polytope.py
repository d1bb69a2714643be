"""The perfect matching polytope of K_2n.

Edges of K_2n are indexed lexicographically: (1,2), (1,3), ..., (2n-1,2n).
The incidence matrix has one row per matching (rank order) and one column
per edge, so column {i,j} is the characteristic vector of F_ij.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .combinatorics import double_factorial, specht_dimension
from .linalg import integer_rank, solve
from .matchings import matching_array
from .report import VerificationReport, verdict

MAX_POLYTOPE_N = 6
MAX_CUT_N = 5


def edge_list(n: int) -> list[tuple[int, int]]:
    """1-based edges of K_2n in lexicographic order."""
    return list(combinations(range(1, 2 * n + 1), 2))


def edge_index(n: int) -> dict[tuple[int, int], int]:
    return {e: k for k, e in enumerate(edge_list(n))}


def incidence_matrix(n: int, transpose: bool = False) -> np.ndarray:
    """0/1 matrix, rows = matchings, columns = edges (or the transpose)."""
    if not 1 <= n <= MAX_POLYTOPE_N:
        raise ValueError(f"incidence matrix limited to n <= {MAX_POLYTOPE_N}")
    arr = matching_array(n).astype(np.int64)
    idx = np.full((2 * n, 2 * n), -1, dtype=np.int64)
    for k, (a, b) in enumerate(edge_list(n)):
        idx[a - 1, b - 1] = idx[b - 1, a - 1] = k
    M = np.zeros((arr.shape[0], comb(2 * n, 2)), dtype=np.int64)
    rows = np.arange(arr.shape[0])
    for v in range(2 * n):
        M[rows, idx[v, arr[:, v]]] = 1
    return M.T.copy() if transpose else M


def affine_rank_formula(n: int) -> int:
    return comb(2 * n, 2) - 2 * n + 1


def rank_check(n: int) -> VerificationReport:
    """rank(M) = C(2n,2) - 2n + 1 = f^(2n) + f^(2n-2,2), rank by exact elimination."""
    if not 2 <= n <= MAX_POLYTOPE_N:
        raise ValueError(f"rank check needs 2 <= n <= {MAX_POLYTOPE_N}")
    M = incidence_matrix(n)
    # eliminate on the short side
    r = integer_rank(M.T.tolist())
    formula = affine_rank_formula(n)
    hooks = specht_dimension((2 * n,)) + specht_dimension((2 * n - 2, 2))
    ok = r == formula == hooks
    return verdict(f"polytope.rank.n{n}", ok, expected={"formula": formula, "specht": hooks}, actual=r)


# --- Edmonds description ---------------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    satisfied: bool
    violated: str | None = None
    witness: object = None
    value: Fraction | None = None

    def __bool__(self) -> bool:
        return self.satisfied


def odd_sets(n: int):
    """Vertex sets S (1-based) with |S| odd and 3 <= |S| <= 2n-3."""
    verts = range(1, 2 * n + 1)
    for s in range(3, 2 * n - 2, 2):
        yield from combinations(verts, s)


def edmonds_membership(x, n: int) -> MembershipResult:
    """Check nonnegativity, degree equations and odd-cut inequalities exactly.

    ``x`` is a sequence over ``edge_list(n)`` or a dict keyed by 1-based edges.
    The first violated constraint is returned as the witness.
    """
    if n > MAX_CUT_N:
        raise ValueError(f"exhaustive odd cuts limited to n <= {MAX_CUT_N}")
    edges = edge_list(n)
    if isinstance(x, dict):
        vals = [Fraction(x.get(e, x.get(e[::-1], 0))) for e in edges]
    else:
        vals = [Fraction(v) for v in x]
        if len(vals) != len(edges):
            raise ValueError(f"expected {len(edges)} edge values, got {len(vals)}")
    for e, v in zip(edges, vals):
        if v < 0:
            return MembershipResult(False, "nonnegativity", e, v)
    for v in range(1, 2 * n + 1):
        s = sum((val for e, val in zip(edges, vals) if v in e), Fraction(0))
        if s != 1:
            return MembershipResult(False, "degree", v, s)
    for S in odd_sets(n):
        inside = set(S)
        s = sum((val for (a, b), val in zip(edges, vals) if (a in inside) != (b in inside)), Fraction(0))
        if s < 1:
            return MembershipResult(False, "odd-cut", S, s)
    return MembershipResult(True)


def incidence_vector(matching, n: int) -> list[int]:
    idx = edge_index(n)
    x = [0] * len(idx)
    for e in matching.pairs():
        x[idx[e]] = 1
    return x


# --- odd cut counting ---------------------------------------------------------------


def single_crossing_formula(n: int, s: int) -> int:
    return double_factorial(s) * double_factorial(2 * n - s)


def single_crossing_scan(n: int, S) -> int:
    """Matchings with exactly one edge leaving the vertex set ``S`` (1-based)."""
    arr = matching_array(n)
    inside = np.zeros(2 * n, dtype=bool)
    inside[[v - 1 for v in S]] = True
    crossing = (inside[None, :] & ~inside[arr]).sum(axis=1)
    return int((crossing == 1).sum())


def odd_cut_single_crossing_count(n: int, s: int, scan: bool | None = None) -> int:
    """s!!(2n-s)!!, confirmed by a scan over all matchings when n <= 5."""
    if s % 2 == 0 or not 3 <= s <= 2 * n - 3:
        raise ValueError(f"need odd s with 3 <= s <= {2 * n - 3}, got {s}")
    value = single_crossing_formula(n, s)
    if scan is None:
        scan = n <= MAX_CUT_N
    if scan:
        counted = single_crossing_scan(n, range(1, s + 1))
        if counted != value:
            raise AssertionError(f"n={n}, s={s}: formula {value} but scan {counted}")
    return value


def odd_cut_scan_check(n: int) -> VerificationReport:
    rows = {s: (single_crossing_formula(n, s), single_crossing_scan(n, range(1, s + 1))) for s in range(3, 2 * n - 2, 2)}
    bad = [{"s": s, "formula": f, "scan": c} for s, (f, c) in rows.items() if f != c]
    return verdict(f"polytope.odd-cut-scan.n{n}", not bad, expected={s: f for s, (f, _) in rows.items()},
                   actual={s: c for s, (_, c) in rows.items()}, witnesses=bad)


def odd_cut_inequality_check(n_max: int = 10) -> VerificationReport:
    """(2n-1)!! - s!!(2n-s)!! > (2n-3)!! for all valid s, 3 <= n <= n_max."""
    bad = []
    for n in range(3, n_max + 1):
        for s in range(3, 2 * n - 2, 2):
            lhs = double_factorial(2 * n - 1) - single_crossing_formula(n, s)
            if not lhs > double_factorial(2 * n - 3):
                bad.append({"n": n, "s": s, "lhs": lhs})
    return verdict(f"polytope.odd-cut-inequality.n<={n_max}", not bad, expected="strict", actual=len(bad),
                   witnesses=bad)


# --- parallel faces ---------------------------------------------------------------


@dataclass
class FaceSplit:
    consistent: bool
    h: list[Fraction] | None = None
    scores: list[Fraction] | None = None
    face_min: list[int] | None = None
    face_max: list[int] | None = None

    @property
    def constant(self) -> bool:
        return self.scores is not None and len(set(self.scores)) == 1


def parallel_faces(z, n: int) -> FaceSplit:
    """Solve M h = z exactly and split the matchings by score min(z) / max(z).

    ``z`` is a family (anything with ``to_array``) or a vector over ranks.
    """
    if n > MAX_CUT_N:
        raise ValueError(f"parallel faces limited to n <= {MAX_CUT_N}")
    z = z.to_array() if hasattr(z, "to_array") else np.asarray(z)
    M = incidence_matrix(n)
    h = solve(M.tolist(), [Fraction(int(v)) for v in z])
    if h is None:
        return FaceSplit(False)
    scores = [sum((Fraction(int(a)) * b for a, b in zip(row, h) if a), Fraction(0)) for row in M]
    lo, hi = min(scores), max(scores)
    return FaceSplit(True, h, scores,
                     [r for r, s in enumerate(scores) if s == lo],
                     [r for r, s in enumerate(scores) if s == hi])


def module_span_check(n: int) -> VerificationReport:
    """Columns of M are killed by every idempotent outside the trivial and standard modules,
    and their span has the dimension of those two modules."""
    from .spectrum import idempotents

    if n > 4:
        raise ValueError("dense span check limited to n <= 4")
    bundle = idempotents(n)
    M = incidence_matrix(n)
    bad = []
    exempt = {(n,), (n - 1, 1)}
    for lam in bundle.partitions:
        if lam in exempt:
            continue
        E = bundle.dense(lam)
        prod = E.num @ M
        if prod.any():
            bad.append({"lam": lam})
    dim = sum(bundle_mult for lam, bundle_mult in zip(bundle.partitions, _mults(n)) if lam in exempt)
    r = integer_rank(M.T.tolist())
    if r != dim:
        bad.append({"rank": r, "module_dim": dim})
    return verdict(f"polytope.module-span.n{n}", not bad, expected=dim, actual=r, witnesses=bad)


def _mults(n: int):
    from .spectrum import character_table

    return character_table(n).multiplicities
