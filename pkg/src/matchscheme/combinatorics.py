"""Integer combinatorics shared by every other module.

Partitions are plain tuples of positive ints in weakly decreasing order.
All counts are Python ints, so nothing here ever rounds.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from math import factorial, prod

Partition = tuple[int, ...]

MAX_PARTITION_N = 12


def partitions_of(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order.

    ``(n)`` comes first and ``(1, ..., 1)`` last. The order is what every
    matrix and file in this package is indexed by.
    """
    if not 1 <= n <= MAX_PARTITION_N:
        raise ValueError(f"n must be in [1, {MAX_PARTITION_N}], got {n}")
    return list(_partitions(n, n))


@lru_cache(maxsize=None)
def _partitions(n: int, largest: int) -> tuple[Partition, ...]:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, largest), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def is_partition(parts, n: int | None = None) -> bool:
    parts = tuple(parts)
    if any(not isinstance(p, int) or p < 1 for p in parts):
        return False
    if any(a < b for a, b in zip(parts, parts[1:])):
        return False
    return n is None or sum(parts) == n


def check_partition(parts, n: int | None = None) -> Partition:
    parts = tuple(parts)
    if not is_partition(parts, n):
        raise ValueError(f"{parts!r} is not a partition" + (f" of {n}" if n is not None else ""))
    return parts


def format_partition(lam: Partition) -> str:
    """Compact exponent notation, e.g. ``(2, 2, 1, 1)`` -> ``"2^2 1^2"``."""
    counts = Counter(lam)
    return " ".join(f"{p}^{c}" if c > 1 else str(p) for p, c in sorted(counts.items(), reverse=True))


def parse_partition(text: str) -> Partition:
    """Accept ``"3,1,1"``, ``"3 1 1"``, ``"(3,1,1)"`` or ``"3 1^2"``."""
    text = text.strip().strip("()[]")
    tokens = text.replace(",", " ").split()
    parts: list[int] = []
    for tok in tokens:
        if "^" in tok:
            base, exp = tok.split("^")
            parts.extend([int(base)] * int(exp))
        else:
            parts.append(int(tok))
    return check_partition(sorted(parts, reverse=True))


def double_factorial(k: int) -> int:
    """k!! for odd ``k``; ``(-1)!! = 0!! = 1``."""
    if k in (-1, 0):
        return 1
    if k < -1 or k % 2 == 0:
        raise ValueError(f"double factorial only defined here for odd k >= -1 (and 0), got {k}")
    return prod(range(1, k + 1, 2))


def hyperoctahedral_order(k: int) -> int:
    """|S_2 wr S_k| = 2^k k!."""
    if k < 0:
        raise ValueError("k must be non-negative")
    return 2**k * factorial(k)


def z_lambda(lam: Partition) -> int:
    """Centralizer order: product of ``i^m_i * m_i!`` over part sizes."""
    lam = check_partition(lam)
    return prod(i**m * factorial(m) for i, m in Counter(lam).items())


def matching_derangement_count(n: int) -> int:
    """Number of perfect matchings of K_2n sharing no edge with a fixed one.

    D_0 = 1, D_1 = 0, D_n = 2(n-1)(D_{n-1} + D_{n-2}).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    a, b = 1, 0
    if n == 0:
        return a
    for k in range(2, n + 1):
        a, b = b, 2 * (k - 1) * (a + b)
    return b


def hook_lengths(shape: Partition) -> list[int]:
    conj = conjugate(shape)
    return [shape[i] - j + conj[j] - i - 1 for i in range(len(shape)) for j in range(shape[i])]


def conjugate(shape: Partition) -> Partition:
    if not shape:
        return ()
    return tuple(sum(1 for p in shape if p > j) for j in range(shape[0]))


def specht_dimension(shape: Partition) -> int:
    """Number of standard Young tableaux of ``shape`` (hook length formula)."""
    shape = check_partition(shape)
    m = sum(shape)
    if m > 24:
        raise ValueError("shape too large (size > 24)")
    dim, rem = divmod(factorial(m), prod(hook_lengths(shape)))
    assert rem == 0
    return dim


def doubled(lam: Partition) -> Partition:
    """2*lam, the partition of 2n labelling the matching irreducible."""
    return tuple(2 * p for p in lam)
