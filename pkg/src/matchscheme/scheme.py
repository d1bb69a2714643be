"""The matching association scheme: sphere sizes, intersection numbers, axioms.

Relations are indexed by partitions of n in the canonical order of
``partitions_of``. Dense N!! x N!! matrices are only ever built for n <= 5;
everything larger goes through the intersection numbers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .combinatorics import Partition, double_factorial, hyperoctahedral_order, partitions_of, z_lambda
from .linalg import exact_matmul
from .matchings import (
    MAX_ENUM_N,
    Matching,
    count_matchings,
    cycle_type_indices,
    identity_matching,
    matching_array,
    representative,
    sphere_labels,
)
from .report import VerificationReport, verdict

MAX_DENSE_N = 5


class SchemeError(AssertionError):
    """A property every association scheme must have was violated."""


def sphere_size(lam: Partition, n: int | None = None) -> int:
    """|H_n| / (2^l(lam) z_lam), the number of matchings at cycle type ``lam`` from e."""
    lam = tuple(lam)
    if n is None:
        n = sum(lam)
    if sum(lam) != n:
        raise ValueError(f"{lam} is not a partition of {n}")
    q, r = divmod(hyperoctahedral_order(n), 2 ** len(lam) * z_lambda(lam))
    if r:
        raise SchemeError(f"sphere size for {lam} is not an integer")
    return q


def sphere_sizes(n: int) -> dict[Partition, int]:
    return {lam: sphere_size(lam, n) for lam in partitions_of(n)}


def neighbors(m: Matching, lam: Partition) -> Iterator[Matching]:
    """All matchings at cycle type ``lam`` from ``m``, in rank order."""
    n = m.n
    parts = partitions_of(n)
    idx = parts.index(tuple(lam))
    arr = matching_array(n)
    hits = np.flatnonzero(cycle_type_indices(arr, m) == idx)
    for r in hits:
        yield Matching(tuple(int(v) for v in arr[r]))


@dataclass(frozen=True)
class IntersectionNumbers:
    """``p[i, j, k]`` = #{z : d(x, z) = i, d(z, y) = j} for any d(x, y) = k."""

    n: int
    partitions: tuple[Partition, ...]
    p: np.ndarray

    def __getitem__(self, key) -> int:
        i, j, k = (self.index(v) if isinstance(v, tuple) else v for v in key)
        return int(self.p[i, j, k])

    def index(self, lam: Partition) -> int:
        return self.partitions.index(tuple(lam))

    @property
    def degrees(self) -> list[int]:
        last = len(self.partitions) - 1
        return [int(self.p[i, i, last]) for i in range(len(self.partitions))]

    def matrix(self, i: int) -> np.ndarray:
        """Left-multiplication matrix of A_i on the basis {A_j}: ``B[k, j] = p[i, j, k]``."""
        return np.ascontiguousarray(self.p[i].T)

    def matrices(self) -> list[np.ndarray]:
        return [self.matrix(i) for i in range(len(self.partitions))]


def _partial_counts(n: int, start: int, stop: int, reps: list[tuple[int, ...]]) -> np.ndarray:
    K = len(partitions_of(n))
    arr = matching_array(n)[start:stop]
    from_e = sphere_labels(n)[start:stop].astype(np.int64)
    out = np.zeros((K, K, K), dtype=np.int64)
    for k, y in enumerate(reps):
        to_y = cycle_type_indices(arr, y).astype(np.int64)
        out[:, :, k] = np.bincount(from_e * K + to_y, minlength=K * K).reshape(K, K)
    return out


def _count_tensor(n: int, reps: list[tuple[int, ...]], jobs: int = 1, chunk: int | None = None) -> np.ndarray:
    total = count_matchings(n)
    if chunk is None:
        chunk = total if jobs <= 1 else -(-total // jobs)
    bounds = [(a, min(a + chunk, total)) for a in range(0, total, chunk)]
    if jobs <= 1:
        parts = [_partial_counts(n, a, b, reps) for a, b in bounds]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_partial_counts, [n] * len(bounds), *zip(*bounds), [reps] * len(bounds)))
    return sum(parts[1:], parts[0])


_PRELOADED: dict[int, IntersectionNumbers] = {}


def preload_intersection_numbers(inter: IntersectionNumbers) -> None:
    """Seed the in-process cache, e.g. from a validated cache file."""
    _PRELOADED[inter.n] = inter


@lru_cache(maxsize=8)
def _intersection_numbers_cached(n: int) -> IntersectionNumbers:
    if n in _PRELOADED:
        return _PRELOADED[n]
    return intersection_numbers(n, use_cache=False)


def intersection_numbers(n: int, jobs: int = 1, chunk: int | None = None, check_representatives: bool | None = None,
                         use_cache: bool = True) -> IntersectionNumbers:
    """Intersection numbers from a scan of all matchings against one representative per sphere.

    For n <= 5 the scan is repeated with a second representative (the
    last-ranked member of each sphere) and the two tensors must agree.
    Per-chunk counts are summed, so the result does not depend on ``jobs``
    or ``chunk``.
    """
    if not 1 <= n <= MAX_ENUM_N:
        raise ValueError(f"n must be in [1, {MAX_ENUM_N}], got {n}")
    if use_cache and jobs == 1 and chunk is None and check_representatives is None:
        return _intersection_numbers_cached(n)
    parts = partitions_of(n)
    reps = [representative(lam).partner for lam in parts]
    p = _count_tensor(n, reps, jobs, chunk)
    if check_representatives is None:
        check_representatives = n <= 5
    if check_representatives:
        labels = sphere_labels(n)
        arr = matching_array(n)
        alt = [tuple(int(v) for v in arr[np.flatnonzero(labels == k)[-1]]) for k in range(len(parts))]
        q = _count_tensor(n, alt, jobs, chunk)
        if not np.array_equal(p, q):
            bad = np.argwhere(p != q)[0]
            raise SchemeError(f"intersection number depends on representative at {tuple(parts[i] for i in bad)}")
    p.setflags(write=False)
    return IntersectionNumbers(n, tuple(parts), p)


# --- dense realisation (n <= 5) ---------------------------------------------


@lru_cache(maxsize=4)
def relation_matrix(n: int) -> np.ndarray:
    """``R[x, y]`` = partition index of d(x, y), over ranks."""
    if not 1 <= n <= MAX_DENSE_N:
        raise ValueError(f"dense matrices are limited to n <= {MAX_DENSE_N}")
    arr = matching_array(n)
    R = np.stack([cycle_type_indices(arr, arr[x]) for x in range(arr.shape[0])]).astype(np.int8)
    R.setflags(write=False)
    return R


def associate_matrix(n: int, lam: Partition) -> np.ndarray:
    idx = partitions_of(n).index(tuple(lam))
    return (relation_matrix(n) == idx).astype(np.int64)


def _witness(parts, i, j, k=None):
    w = {"i": parts[i], "j": parts[j]}
    if k is not None:
        w["k"] = parts[k]
    return w


def verify_scheme_axioms(n: int, dense: bool | None = None) -> VerificationReport:
    """Check symmetry, identity, sum-to-J and the product rule.

    Dense (explicit A_lambda) by default for n <= 4, otherwise on the
    intersection matrices, where commutation and
    ``B_i B_j = sum_k p_ij^k B_k`` are the checkable content.
    """
    if dense is None:
        dense = n <= 4
    parts = partitions_of(n)
    K = len(parts)
    inter = intersection_numbers(n)
    checks: dict[str, bool] = {}
    witnesses: list = []

    if dense:
        R = relation_matrix(n)
        N = R.shape[0]
        A = [(R == i).astype(np.int64) for i in range(K)]
        sym = [i for i in range(K) if not np.array_equal(A[i], A[i].T)]
        checks["symmetric"] = not sym
        witnesses += [{"axiom": "symmetric", "relation": parts[i]} for i in sym]
        checks["identity"] = bool(np.array_equal(A[-1], np.eye(N, dtype=np.int64)))
        if not checks["identity"]:
            witnesses.append({"axiom": "identity", "relation": parts[-1]})
        total = sum(A)
        checks["sum_to_J"] = bool((total == 1).all())
        if not checks["sum_to_J"]:
            x, y = np.argwhere(total != 1)[0]
            witnesses.append({"axiom": "sum_to_J", "entry": (int(x), int(y))})
        prod_ok = True
        for i in range(K):
            for j in range(i, K):
                AB = exact_matmul(A[i], A[j])
                BA = exact_matmul(A[j], A[i])
                combo = sum(int(inter.p[i, j, k]) * A[k] for k in range(K))
                if not (np.array_equal(AB, BA) and np.array_equal(AB, combo)):
                    prod_ok = False
                    diff = np.argwhere(AB != combo)
                    k = int(R[tuple(diff[0])]) if len(diff) else None
                    witnesses.append({"axiom": "product", **_witness(parts, i, j, k)})
        checks["product"] = prod_ok
    else:
        p = inter.p
        deg = inter.degrees
        # A_(1^n) = I means p[last, j, k] = delta_jk
        checks["identity"] = bool(np.array_equal(p[K - 1], np.eye(K, dtype=np.int64)))
        if not checks["identity"]:
            witnesses.append({"axiom": "identity", "relation": parts[-1]})
        # symmetric relations: p_ij^k = p_ji^k and valencies sum to N!!
        sym_bad = np.argwhere(p != p.transpose(1, 0, 2))
        checks["symmetric"] = len(sym_bad) == 0
        if len(sym_bad):
            witnesses.append({"axiom": "symmetric", **_witness(parts, *sym_bad[0])})
        checks["sum_to_J"] = sum(deg) == count_matchings(n) and bool((p.sum(axis=1) == np.array(deg)[:, None]).all())
        if not checks["sum_to_J"]:
            witnesses.append({"axiom": "sum_to_J", "degrees": deg})
        B = inter.matrices()
        prod_ok = True
        for i in range(K):
            for j in range(i, K):
                BiBj = exact_matmul(B[i], B[j])
                BjBi = exact_matmul(B[j], B[i])
                combo = sum(int(p[i, j, k]) * B[k] for k in range(K))
                if not (np.array_equal(BiBj, BjBi) and np.array_equal(BiBj, combo)):
                    prod_ok = False
                    witnesses.append({"axiom": "product", **_witness(parts, i, j)})
        checks["product"] = prod_ok

    ok = all(checks.values())
    return verdict(f"scheme.axioms.n{n}", ok, expected="all axioms hold", actual=checks, witnesses=witnesses,
                   mode="dense" if dense else "intersection-matrices")


def check_intersection_identities(n: int) -> VerificationReport:
    """Commutativity, row sums and k_k p_ij^k = k_i p_kj^i on the tensor."""
    inter = intersection_numbers(n)
    p = inter.p
    deg = np.array(inter.degrees, dtype=np.int64)
    parts = inter.partitions
    K = len(parts)
    witnesses = []
    if (p != p.transpose(1, 0, 2)).any():
        witnesses.append({"identity": "commutative", **_witness(parts, *np.argwhere(p != p.transpose(1, 0, 2))[0])})
    rows = p.sum(axis=1)
    if (rows != deg[:, None]).any():
        i, k = np.argwhere(rows != deg[:, None])[0]
        witnesses.append({"identity": "row-sum", "i": parts[i], "k": parts[k]})
    if not (np.diagonal(p[:, :, K - 1]) == deg).all():
        witnesses.append({"identity": "p_ii^0 = k_i"})
    lhs = deg[None, None, :] * p
    rhs = deg[:, None, None] * p.transpose(2, 1, 0)
    if (lhs != rhs).any():
        witnesses.append({"identity": "triangle", **_witness(parts, *np.argwhere(lhs != rhs)[0])})
    sizes = [sphere_size(lam) for lam in parts]
    if list(deg) != sizes:
        witnesses.append({"identity": "degrees vs sphere-size formula", "scan": list(deg), "formula": sizes})
    return verdict(f"scheme.intersection-identities.n{n}", not witnesses, expected="0 violations",
                   actual=len(witnesses), witnesses=witnesses)


def sphere_partition_check(n: int) -> VerificationReport:
    labels = sphere_labels(n)
    counts = np.bincount(labels, minlength=len(partitions_of(n))).tolist()
    sizes = [sphere_size(lam) for lam in partitions_of(n)]
    ok = counts == sizes and sum(counts) == double_factorial(2 * n - 1)
    return verdict(f"scheme.sphere-partition.n{n}", ok, expected=sizes, actual=counts)


__all__ = [
    "IntersectionNumbers",
    "SchemeError",
    "associate_matrix",
    "check_intersection_identities",
    "intersection_numbers",
    "identity_matching",
    "neighbors",
    "relation_matrix",
    "sphere_partition_check",
    "sphere_size",
    "sphere_sizes",
    "verify_scheme_axioms",
]
