"""Per-n JSON cache of scheme data.

One file ``scheme-n{n}.json`` per n holds the partition order, sphere sizes,
intersection tensor, eigenvalue table, multiplicities, zonal table and
idempotent coefficients. Every exact number is a decimal string. Entries are
validated on load; a bad entry is deleted and rebuilt.
"""

from __future__ import annotations

import fcntl
import json
import logging
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from .combinatorics import double_factorial, parse_partition, partitions_of
from .matchings import ORDER_TAG
from .scheme import IntersectionNumbers, intersection_numbers, preload_intersection_numbers, sphere_size
from .spectrum import (
    CharacterTable,
    character_table,
    idempotents,
    preload_character_table,
    table_violations,
    zonal_table,
)

FORMAT_VERSION = 1
ENV_VAR = "MATCHSCHEME_CACHE_DIR"
BUILD_ID = "matchscheme-1"

log = logging.getLogger(__name__)


class CacheError(ValueError):
    pass


def default_cache_dir() -> Path:
    env = os.environ.get(ENV_VAR)
    if env:
        return Path(env)
    base = os.environ.get("XDG_DATA_HOME") or os.path.join(os.path.expanduser("~"), ".local", "share")
    return Path(base) / "matchscheme"


def entry_path(n: int, directory: Path | str | None = None) -> Path:
    return Path(directory or default_cache_dir()) / f"scheme-n{n}.json"


@contextmanager
def locked(directory: Path):
    """Exclusive advisory lock on the cache directory."""
    directory.mkdir(parents=True, exist_ok=True)
    with open(directory / ".lock", "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


# --- (de)serialisation ---------------------------------------------------------------


def _strs(rows) -> list:
    if isinstance(rows, (list, tuple, np.ndarray)):
        return [_strs(r) for r in rows]
    return str(int(rows)) if not isinstance(rows, Fraction) else str(rows)


def build_entry(n: int, jobs: int = 1) -> dict:
    inter = intersection_numbers(n, jobs=jobs) if jobs > 1 else intersection_numbers(n)
    table = character_table(n)
    zonal = zonal_table(n, table)
    bundle = idempotents(n, table)
    parts = table.partitions
    return {
        "format_version": FORMAT_VERSION,
        "order_tag": ORDER_TAG,
        "build_id": BUILD_ID,
        "n": n,
        "partitions": [",".join(map(str, lam)) for lam in parts],
        "sphere_sizes": [str(sphere_size(lam, n)) for lam in parts],
        "p": _strs(inter.p.tolist()),
        "P": _strs(table.P),
        "multiplicities": _strs(table.multiplicities),
        "zonal": _strs(zonal.omega),
        "idempotents": _strs(bundle.coefficients),
    }


@dataclass(frozen=True)
class SchemeData:
    n: int
    intersection: IntersectionNumbers
    table: CharacterTable


def decode_entry(entry: dict) -> SchemeData:
    """Parse and self-check an entry; raises CacheError on any mismatch."""
    try:
        if entry["format_version"] != FORMAT_VERSION:
            raise CacheError(f"format version {entry['format_version']} != {FORMAT_VERSION}")
        if entry["order_tag"] != ORDER_TAG:
            raise CacheError(f"enumeration order {entry['order_tag']!r} != {ORDER_TAG!r}")
        n = int(entry["n"])
        parts = tuple(parse_partition(s) for s in entry["partitions"])
        if parts != tuple(partitions_of(n)):
            raise CacheError("partition order differs from the canonical order")
        sizes = [int(s) for s in entry["sphere_sizes"]]
        p = np.array([[[int(v) for v in r] for r in plane] for plane in entry["p"]], dtype=np.int64)
        P = tuple(tuple(int(v) for v in row) for row in entry["P"])
        mults = tuple(int(v) for v in entry["multiplicities"])
        zonal = [[Fraction(v) for v in row] for row in entry["zonal"]]
        idem = [[Fraction(v) for v in row] for row in entry["idempotents"]]
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, CacheError):
            raise
        raise CacheError(f"malformed entry: {exc}") from exc
    K = len(parts)
    if p.shape != (K, K, K) or len(P) != K or len(mults) != K:
        raise CacheError("array shapes do not match the partition count")
    N = double_factorial(2 * n - 1)
    if sum(mults) != N:
        raise CacheError(f"multiplicities sum to {sum(mults)}, expected {N}")
    if sizes != [sphere_size(lam, n) for lam in parts] or sizes != [row[0] for row in P]:
        raise CacheError("sphere sizes disagree with the closed form or the trivial column")
    p.setflags(write=False)
    inter = IntersectionNumbers(n, parts, p)
    if inter.degrees != sizes:
        raise CacheError("intersection tensor degrees disagree with sphere sizes")
    rows = np.array(P, dtype=np.int64).T
    # each eigenvalue row must linearise products through the tensor
    if not np.array_equal(rows[:, :, None] * rows[:, None, :], np.einsum("ijk,rk->rij", p, rows)):
        raise CacheError("intersection tensor inconsistent with the eigenvalue table")
    table = CharacterTable(n, parts, P, mults)
    bad = table_violations(table)
    if bad:
        raise CacheError(f"orthogonality self-check failed: {bad[0]}")
    if zonal != [[Fraction(v, k) for v in row] for row, k in zip(P, sizes)]:
        raise CacheError("zonal table inconsistent with P")
    want = [[Fraction(mults[j] * P[mu][j], N * sizes[mu]) for mu in range(K)] for j in range(K)]
    if idem != want:
        raise CacheError("idempotent coefficients inconsistent with P")
    return SchemeData(n, inter, table)


def write_entry(entry: dict, path: Path) -> None:
    """Atomic write: temp file in the same directory, then rename."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(prefix=path.name, suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w") as fh:
            json.dump(entry, fh, indent=1, sort_keys=True)
            fh.write("\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load(n: int, directory: Path | str | None = None, jobs: int = 1, install: bool = True) -> SchemeData:
    """Validated scheme data for ``n``, from the cache if possible.

    A missing or invalid file is rebuilt from scratch and rewritten. With
    ``install`` the result also seeds the in-process caches.
    """
    directory = Path(directory or default_cache_dir())
    path = entry_path(n, directory)
    with locked(directory):
        data = None
        if path.exists():
            try:
                with open(path) as fh:
                    data = decode_entry(json.load(fh))
                if data.n != n:
                    raise CacheError(f"file holds n={data.n}")
            except (CacheError, json.JSONDecodeError) as exc:
                log.warning("discarding cache entry %s: %s", path, exc)
                path.unlink()
                data = None
        if data is None:
            entry = build_entry(n, jobs=jobs)
            data = decode_entry(entry)
            write_entry(entry, path)
    if install:
        preload_intersection_numbers(data.intersection)
        preload_character_table(data.table)
    return data
