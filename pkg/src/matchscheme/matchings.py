"""Perfect matchings of K_2n: encoding, enumeration, ranking, cycle types.

Vertices are ``0..2n-1`` internally and ``1..2n`` in every text form.
A matching is stored as its partner array (a fixed-point-free involution).

Enumeration order: repeatedly match the smallest unmatched vertex with each
larger unmatched vertex in ascending order. The identity matching
``1-2|3-4|...`` has rank 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np

from .combinatorics import Partition, double_factorial, partitions_of

MAX_MATCHING_N = 12
MAX_ENUM_N = 7

ORDER_TAG = "smallest-unmatched-first-lex"


def _check_n(n: int, limit: int = MAX_MATCHING_N) -> None:
    if not 1 <= n <= limit:
        raise ValueError(f"n must be in [1, {limit}], got {n}")


@dataclass(frozen=True)
class Matching:
    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        if len(p) == 0 or len(p) % 2:
            raise ValueError("a perfect matching needs an even, positive number of vertices")
        for v, w in enumerate(p):
            if not 0 <= w < len(p) or w == v or p[w] != v:
                raise ValueError(f"partner array is not a fixed-point-free involution at vertex {v}")

    @property
    def n(self) -> int:
        return len(self.partner) // 2

    @classmethod
    def from_pairs(cls, pairs, one_based: bool = True) -> "Matching":
        pairs = [tuple(e) for e in pairs]
        off = 1 if one_based else 0
        size = 2 * len(pairs)
        partner = [-1] * size
        for a, b in pairs:
            a, b = a - off, b - off
            if not (0 <= a < size and 0 <= b < size) or a == b:
                raise ValueError(f"bad edge {(a + off, b + off)}")
            if partner[a] != -1 or partner[b] != -1:
                raise ValueError(f"vertex repeated in {(a + off, b + off)}")
            partner[a], partner[b] = b, a
        return cls(tuple(partner))

    @classmethod
    def parse(cls, text: str) -> "Matching":
        """Inverse of ``str``: ``"1-2|3-4"``."""
        pairs = []
        for chunk in text.strip().split("|"):
            a, b = chunk.split("-")
            pairs.append((int(a), int(b)))
        return cls.from_pairs(pairs)

    def pairs(self, one_based: bool = True) -> list[tuple[int, int]]:
        off = 1 if one_based else 0
        return [(v + off, w + off) for v, w in enumerate(self.partner) if v < w]

    def edges(self) -> frozenset[tuple[int, int]]:
        """0-based edge set."""
        return frozenset(self.pairs(one_based=False))

    def relabel(self, sigma: Sequence[int]) -> "Matching":
        """Image under the vertex permutation ``v -> sigma[v]`` (0-based)."""
        partner = [0] * len(self.partner)
        for v, w in enumerate(self.partner):
            partner[sigma[v]] = sigma[w]
        return Matching(tuple(partner))

    def __str__(self) -> str:
        return "|".join(f"{a}-{b}" for a, b in self.pairs())


def identity_matching(n: int) -> Matching:
    _check_n(n)
    return Matching(tuple(v ^ 1 for v in range(2 * n)))


def count_matchings(n: int) -> int:
    return double_factorial(2 * n - 1)


def rank(m: Matching) -> int:
    remaining = list(range(len(m.partner)))
    r = 0
    while remaining:
        v = remaining.pop(0)
        w = m.partner[v]
        idx = remaining.index(w)
        remaining.pop(idx)
        r += idx * double_factorial(len(remaining) - 1)
    return r


def unrank(n: int, r: int) -> Matching:
    _check_n(n)
    total = count_matchings(n)
    if not 0 <= r < total:
        raise ValueError(f"rank {r} out of range [0, {total})")
    remaining = list(range(2 * n))
    partner = [0] * (2 * n)
    while remaining:
        v = remaining.pop(0)
        block = double_factorial(len(remaining) - 2)
        idx, r = divmod(r, block)
        w = remaining.pop(idx)
        partner[v], partner[w] = w, v
    return Matching(tuple(partner))


def enumerate_matchings(n: int, start: int = 0, stop: int | None = None) -> Iterator[Matching]:
    """Matchings with rank in ``[start, stop)``, in rank order.

    Contiguous rank windows can be scanned independently, so callers may
    split ``[0, (2n-1)!!)`` into chunks for separate workers.
    """
    _check_n(n, MAX_ENUM_N)
    total = count_matchings(n)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    yield from _lex_from(list(range(2 * n)), [0] * (2 * n), start, stop)


def _lex_from(vertices: list[int], partner: list[int], start: int, stop: int) -> Iterator[Matching]:
    # skips whole subtrees outside [start, stop)
    def rec(remaining: list[int], offset: int):
        if not remaining:
            yield Matching(tuple(partner))
            return
        v = remaining[0]
        rest = remaining[1:]
        block = double_factorial(len(rest) - 2)
        for idx, w in enumerate(rest):
            lo = offset + idx * block
            if lo + block <= start:
                continue
            if lo >= stop:
                return
            partner[v], partner[w] = w, v
            yield from rec(rest[:idx] + rest[idx + 1:], lo)

    yield from rec(vertices, 0)


@lru_cache(maxsize=8)
def matching_array(n: int) -> np.ndarray:
    """All partner arrays as an ``((2n-1)!!, 2n)`` int8 array, row = rank."""
    _check_n(n, MAX_ENUM_N)
    arr = _build_array(n)
    arr.setflags(write=False)
    return arr


def _build_array(n: int) -> np.ndarray:
    if n == 0:
        return np.zeros((1, 0), dtype=np.int8)
    sub = _build_array(n - 1)
    blocks = []
    for j in range(1, 2 * n):
        rest = np.array([v for v in range(1, 2 * n) if v != j], dtype=np.int8)
        block = np.empty((sub.shape[0], 2 * n), dtype=np.int8)
        block[:, 0] = j
        block[:, j] = 0
        block[:, rest] = rest[sub]
        blocks.append(block)
    return np.concatenate(blocks)


# --- cycle types -------------------------------------------------------------


def cycle_type(m: Matching, other: Matching) -> Partition:
    """Half-lengths of the cycles of the multigraph ``m + other``, sorted.

    A shared edge is a doubled edge, i.e. a 2-cycle, giving a part 1.
    """
    if len(m.partner) != len(other.partner):
        raise ValueError("matchings live on different vertex sets")
    seen = [False] * len(m.partner)
    parts = []
    for start in range(len(m.partner)):
        if seen[start]:
            continue
        length = 0
        v = start
        while True:
            seen[v] = True
            w = m.partner[v]
            seen[w] = True
            v = other.partner[w]
            length += 2
            if v == start:
                break
        parts.append(length // 2)
    return tuple(sorted(parts, reverse=True))


def partition_code(lam: Partition, n: int) -> int:
    """Integer key of a partition: sum of count(L) * (n+1)^(L-1)."""
    base = n + 1
    return sum(base ** (part - 1) for part in lam)


@lru_cache(maxsize=None)
def _code_lookup(n: int) -> tuple[np.ndarray, np.ndarray]:
    codes = np.array([partition_code(lam, n) for lam in partitions_of(n)], dtype=np.int64)
    order = np.argsort(codes)
    return codes[order], order


def cycle_type_indices(batch: np.ndarray, y) -> np.ndarray:
    """Canonical partition index of ``d(z, y)`` for every row ``z`` of ``batch``.

    Works on the permutation ``v -> y[z[v]]``: each cycle of the union
    multigraph with half-length L splits into two orbits of length L.
    """
    batch = np.asarray(batch)
    y = np.asarray(y.partner if isinstance(y, Matching) else y, dtype=np.int64)
    two_n = batch.shape[1]
    n = two_n // 2
    perm = y[batch.astype(np.int64)]
    start = np.broadcast_to(np.arange(two_n), perm.shape)
    orbit = np.zeros(perm.shape, dtype=np.int64)
    cur = perm.copy()
    for step in range(1, n + 1):
        hit = (cur == start) & (orbit == 0)
        orbit[hit] = step
        cur = np.take_along_axis(perm, cur, axis=1)
    if (orbit == 0).any():
        raise AssertionError("orbit longer than n: input rows are not perfect matchings")
    base = n + 1
    # each part L covers 2L vertices of orbit length L
    weights = (base ** (orbit - 1)).astype(np.float64) / (2 * orbit)
    codes = np.rint(weights.sum(axis=1)).astype(np.int64)
    sorted_codes, order = _code_lookup(n)
    pos = np.searchsorted(sorted_codes, codes)
    if (pos >= len(sorted_codes)).any() or (sorted_codes[np.minimum(pos, len(sorted_codes) - 1)] != codes).any():
        raise AssertionError("cycle-type code outside the partition table")
    return order[pos]


@lru_cache(maxsize=8)
def sphere_labels(n: int) -> np.ndarray:
    """Partition index of ``d(e, m)`` for every rank ``m``."""
    labels = cycle_type_indices(matching_array(n), identity_matching(n))
    labels.setflags(write=False)
    return labels


def sphere_of(lam: Partition, n: int) -> list[int]:
    """Ranks of the matchings at cycle type ``lam`` from the identity."""
    _check_n(n, MAX_ENUM_N)
    parts = partitions_of(n)
    lam = tuple(lam)
    if lam not in parts:
        raise ValueError(f"{lam} is not a partition of {n}")
    idx = parts.index(lam)
    return np.flatnonzero(sphere_labels(n) == idx).tolist()


def representative(lam: Partition) -> Matching:
    """Deterministic member of the ``lam``-sphere.

    Each part L takes the next 2L vertices and pairs them shifted by one
    against the identity, closing a 2L-cycle.
    """
    n = sum(lam)
    partner = [0] * (2 * n)
    off = 0
    for part in lam:
        size = 2 * part
        for t in range(part):
            a = off + 2 * t + 1
            b = off + (2 * t + 2) % size
            partner[a], partner[b] = b, a
        off += size
    return Matching(tuple(partner))
