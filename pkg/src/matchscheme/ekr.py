"""Intersecting families of perfect matchings: constructions and exact checks.

Families are bitsets over matching ranks. Exact searches run only where
(2n-1)!! is small; everything else goes through the character table.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .combinatorics import double_factorial, partitions_of
from .derangement import AssociateUnion, derangement_union, ratio_bound, single_associate
from .matchings import (
    MAX_ENUM_N,
    Matching,
    count_matchings,
    cycle_type,
    cycle_type_indices,
    identity_matching,
    matching_array,
    rank,
    sphere_labels,
    unrank,
)
from .report import INCONCLUSIVE, VerificationReport, verdict
from .scheme import MAX_DENSE_N, relation_matrix
from .spectrum import idempotents, zonal_n_sphere, zonal_table


# --- families -------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyVector:
    """A set of matchings as a bitmask over ranks (bit r = rank r)."""

    n: int
    bits: int

    @classmethod
    def from_ranks(cls, n: int, ranks) -> "FamilyVector":
        bits = 0
        total = count_matchings(n)
        for r in ranks:
            r = int(r)
            if not 0 <= r < total:
                raise ValueError(f"rank {r} out of range for n={n}")
            bits |= 1 << r
        return cls(n, bits)

    @property
    def cardinality(self) -> int:
        return self.bits.bit_count()

    def __len__(self) -> int:
        return self.cardinality

    def ranks(self) -> list[int]:
        out, b = [], self.bits
        while b:
            low = b & -b
            out.append(low.bit_length() - 1)
            b ^= low
        return out

    def to_array(self) -> np.ndarray:
        v = np.zeros(count_matchings(self.n), dtype=np.int64)
        v[self.ranks()] = 1
        return v

    def matchings(self) -> list[Matching]:
        return [unrank(self.n, r) for r in self.ranks()]


def trivial_family(n: int, i: int, j: int) -> FamilyVector:
    """All matchings containing the edge {i, j} (1-based)."""
    if i == j or not (1 <= i <= 2 * n and 1 <= j <= 2 * n):
        raise ValueError(f"bad edge ({i}, {j}) for n={n}")
    arr = matching_array(n)
    return FamilyVector.from_ranks(n, np.flatnonzero(arr[:, i - 1] == j - 1))


def trivial_families(n: int) -> dict[tuple[int, int], FamilyVector]:
    return {(i, j): trivial_family(n, i, j) for i, j in combinations(range(1, 2 * n + 1), 2)}


def trivial_t_family(n: int, edges) -> FamilyVector:
    """All matchings containing every edge of ``edges`` (1-based, disjoint)."""
    arr = matching_array(n)
    mask = np.ones(arr.shape[0], dtype=bool)
    for a, b in edges:
        mask &= arr[:, a - 1] == b - 1
    return FamilyVector.from_ranks(n, np.flatnonzero(mask))


# --- Lucas cliques ----------------------------------------------------------------


@dataclass(frozen=True)
class LucasClique:
    """2n-1 matchings, pairwise forming Hamiltonian cycles; a 1-factorisation of K_2n."""

    n: int
    matchings: tuple[Matching, ...]
    method: str
    seed: int | None = None

    def verify(self) -> bool:
        n = self.n
        if len(self.matchings) != 2 * n - 1:
            return False
        return all(cycle_type(a, b) == (n,) for a, b in combinations(self.matchings, 2))


class ConstructionError(RuntimeError):
    pass


def _is_prime(k: int) -> bool:
    return k >= 2 and all(k % d for d in range(2, int(k**0.5) + 1))


def _starter_factorisation(n: int) -> list[Matching]:
    """Round-robin factors F_i = {(inf, i)} + {(i+j, i-j) mod 2n-1}; inf is vertex 2n-1."""
    q = 2 * n - 1
    factors = []
    for i in range(q):
        pairs = [(q, i)] + [((i + j) % q, (i - j) % q) for j in range(1, n)]
        factors.append(Matching.from_pairs(pairs, one_based=False))
    # relabel so the first factor is the identity matching
    sigma = [0] * (2 * n)
    for slot, (a, b) in enumerate(sorted(tuple(sorted(p)) for p in factors[0].pairs(one_based=False))):
        sigma[a], sigma[b] = 2 * slot, 2 * slot + 1
    return [f.relabel(sigma) for f in factors]


def _search_factorisation(n: int, seed: int, restarts: int, node_budget: int) -> list[Matching]:
    """Randomised backtracking for 2n-2 Hamiltonian neighbours of e, pairwise Hamiltonian."""
    if n > MAX_ENUM_N:
        raise ConstructionError(f"search fallback needs n <= {MAX_ENUM_N}")
    arr = matching_array(n)
    cyc = partitions_of(n).index((n,))
    cand = np.flatnonzero(sphere_labels(n) == cyc)
    sub = arr[cand]
    adj = []
    for x in range(len(cand)):
        row = np.flatnonzero(cycle_type_indices(sub, sub[x]) == cyc)
        adj.append(sum(1 << int(y) for y in row))
    target = 2 * n - 2
    rng = random.Random(seed)
    for _ in range(restarts):
        order = list(range(len(cand)))
        rng.shuffle(order)
        nodes = 0

        def dfs(chosen: list[int], pool: int):
            nonlocal nodes
            if len(chosen) == target:
                return chosen
            nodes += 1
            if nodes > node_budget or pool.bit_count() < target - len(chosen):
                return None
            for v in order:
                if pool >> v & 1:
                    found = dfs(chosen + [v], pool & adj[v])
                    if found:
                        return found
                    pool &= ~(1 << v)
                    if pool.bit_count() < target - len(chosen):
                        return None
            return None

        found = dfs([], (1 << len(cand)) - 1)
        if found:
            e = identity_matching(n)
            return [e] + [Matching(tuple(int(v) for v in sub[x])) for x in sorted(found)]
    raise ConstructionError(f"no Lucas clique found for n={n} (seed {seed}, {restarts} restarts)")


def lucas_clique(n: int, seed: int = 0, restarts: int = 20, node_budget: int = 200_000) -> LucasClique:
    """A 1-factorisation of K_2n whose factors pairwise form Hamiltonian cycles.

    Uses the round-robin starter when 2n-1 is prime and a seeded randomised
    search otherwise. The result always contains the identity matching and
    is verified before being returned.
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if _is_prime(2 * n - 1):
        clique = LucasClique(n, tuple(_starter_factorisation(n)), "starter")
    else:
        clique = LucasClique(n, tuple(_search_factorisation(n, seed, restarts, node_budget)), "search", seed)
    if not clique.verify():
        raise ConstructionError(f"constructed factorisation for n={n} is not pairwise Hamiltonian")
    return clique


# --- pair statistics and quadratic forms -------------------------------------------


def pair_counts(n: int, ranks, all_pairs: bool = True) -> np.ndarray:
    """``counts[mu]`` = #{(x, y) in S x S : d(x, y) = mu} (ordered pairs, x = y included).

    With ``all_pairs=False`` one member's row is multiplied by |S|, which is
    exact when the stabiliser of S acts transitively on it (trivial families).
    """
    K = len(partitions_of(n))
    ranks = np.asarray(list(ranks))
    rows = matching_array(n)[ranks]
    counts = np.zeros(K, dtype=np.int64)
    sources = range(len(ranks)) if all_pairs else range(1)
    for x in sources:
        counts += np.bincount(cycle_type_indices(rows, rows[x]), minlength=K)
    if not all_pairs:
        counts *= len(ranks)
    return counts


def _quadratic_forms(n: int, counts) -> dict:
    bundle = idempotents(n)
    return {lam: bundle.quadratic_form(lam, counts) for lam in bundle.partitions}


def clique_coclique_check(n: int, seed: int = 0) -> VerificationReport:
    """|C||S| = N!! for a Lucas clique and F_12, and x'E x * y'E y = 0 for every nontrivial E."""
    N = double_factorial(2 * n - 1)
    size_ok = (2 * n - 1) * double_factorial(2 * n - 3) == N
    clique = lucas_clique(n, seed=seed)
    c_ranks = [rank(m) for m in clique.matchings]
    s_ranks = trivial_family(n, 1, 2).ranks()
    xq = _quadratic_forms(n, pair_counts(n, c_ranks))
    yq = _quadratic_forms(n, pair_counts(n, s_ranks, all_pairs=n <= 6))
    products = {lam: xq[lam] * yq[lam] for lam in xq if lam != (n,)}
    bad = [{"lam": lam, "xEx": xq[lam], "yEy": yq[lam]} for lam, v in products.items() if v != 0]
    if not size_ok:
        bad.insert(0, {"arithmetic": "(2n-1)(2n-3)!! != (2n-1)!!"})
    return verdict(f"ekr.clique-coclique.n{n}", not bad, expected=0,
                   actual={lam: v for lam, v in products.items()}, witnesses=bad,
                   xEx=xq, yEy=yq, clique_method=clique.method)


def clique_coclique_dense(n: int, seed: int = 0) -> dict:
    """Same quantities via explicit idempotent matrices (n <= 5)."""
    if n > MAX_DENSE_N:
        raise ValueError(f"dense check limited to n <= {MAX_DENSE_N}")
    bundle = idempotents(n)
    x = FamilyVector.from_ranks(n, [rank(m) for m in lucas_clique(n, seed=seed).matchings]).to_array()
    y = trivial_family(n, 1, 2).to_array()
    out = {}
    for lam in bundle.partitions:
        E = bundle.dense(lam)
        xEx = sum((a * b for a, b in zip(x.tolist(), E.apply(x))), Fraction(0))
        yEy = sum((a * b for a, b in zip(y.tolist(), E.apply(y))), Fraction(0))
        out[lam] = (xEx, yEy)
    return out


def module_method_check(n: int, dense: bool | None = None, seed: int = 0) -> VerificationReport:
    """Trivial families live in the trivial + standard modules, and Lucas cliques see every other one.

    (a) E_lam v_F = 0 for all lam other than (n), (n-1,1): densely for every
        F_ij when n <= 4, otherwise via v'E v = 0 (E is positive semidefinite);
    (b) 1 + 2(n-1) omega_lam^(n) != 0 for those lam;
    (c) 1 + 2(n-1) omega_(n-1,1)^(n) = 0;
    plus the clique sum of omega over an actual Lucas clique equals 1 + 2(n-1) omega^(n).
    """
    if dense is None:
        dense = n <= 4
    parts = partitions_of(n)
    exempt = {(n,), (n - 1, 1)}
    bundle = idempotents(n)
    witnesses = []
    clause_a = True
    if dense:
        fams = trivial_families(n)
        mats = {lam: bundle.dense(lam) for lam in parts if lam not in exempt}
        for edge, fam in fams.items():
            v = fam.to_array()
            for lam, E in mats.items():
                if any(E.apply(v)):
                    clause_a = False
                    witnesses.append({"clause": "a", "edge": edge, "lam": lam})
    else:
        counts = pair_counts(n, trivial_family(n, 1, 2).ranks(), all_pairs=n <= 6)
        for lam in parts:
            if lam not in exempt and bundle.quadratic_form(lam, counts) != 0:
                clause_a = False
                witnesses.append({"clause": "a", "edge": (1, 2), "lam": lam})
    sums = {lam: 1 + 2 * (n - 1) * zonal_n_sphere(lam) for lam in parts}
    clause_b = all(sums[lam] != 0 for lam in parts if lam not in exempt)
    witnesses += [{"clause": "b", "lam": lam} for lam in parts if lam not in exempt and sums[lam] == 0]
    clause_c = sums[(n - 1, 1)] == 0
    if not clause_c:
        witnesses.append({"clause": "c", "value": sums[(n - 1, 1)]})
    clique = lucas_clique(n, seed=seed)
    zt = zonal_table(n)
    labels = [cycle_type(clique.matchings[0], m) for m in clique.matchings]
    omega = {lam: sum((zt.value(lam, mu) for mu in labels), Fraction(0)) for lam in parts}
    clique_ok = all(omega[lam] == sums[lam] for lam in parts)
    if not clique_ok:
        witnesses.append({"clause": "clique-sum", "omega_C": omega, "expected": sums})
    ok = clause_a and clause_b and clause_c and clique_ok
    return verdict(f"ekr.module-method.n{n}", ok, expected="a, b, c hold",
                   actual={"a": clause_a, "b": clause_b, "c": clause_c, "clique_sum": clique_ok},
                   witnesses=witnesses, mode="dense" if dense else "coefficient", omega_C=omega)


# --- exact independent sets ---------------------------------------------------------


@dataclass
class SearchResult:
    size: int
    families: list[FamilyVector]
    complete: bool
    nodes: int
    upper_bound: Fraction | None = None


def _greedy_clique_cover_bound(order: list[int], pool: int, conflict: list[int]) -> tuple[list[int], list[int]]:
    """Colour ``pool`` so that each class is pairwise conflicting (a clique of the graph).

    Returns vertices and their running class counts; the class count bounds
    how many vertices of an independent set the pool can still contribute.
    """
    verts, bounds = [], []
    uncoloured = pool
    colour = 0
    while uncoloured:
        colour += 1
        avail = uncoloured
        while avail:
            # lowest-position vertex in ``order`` among avail
            v = next(x for x in order if avail >> x & 1)
            uncoloured &= ~(1 << v)
            avail &= ~(1 << v)
            avail &= conflict[v]  # next member must conflict with all chosen so far
            verts.append(v)
            bounds.append(colour)
    return verts, bounds


def maximum_independent_sets(conflict: list[int], n_vertices: int, lower: int = 0, enumerate_all: bool = True,
                             budget: int = 5_000_000, stop_at: int | None = None):
    """Branch and bound for maximum independent sets of a graph given as conflict bitsets.

    ``lower`` seeds the incumbent size (must be attainable); ``stop_at`` is a
    proven upper bound that lets exact mode stop early. Returns
    ``(size, list_of_bitsets, complete, nodes)``.
    """
    degree = [c.bit_count() for c in conflict]
    order = sorted(range(n_vertices), key=lambda v: -degree[v])
    best = lower
    found: list[int] = []
    nodes = 0
    aborted = False

    def expand(current: int, size: int, pool: int):
        nonlocal best, found, nodes, aborted
        nodes += 1
        if nodes > budget:
            aborted = True
            return
        if not pool:
            if size > best:
                best, found = size, [current]
            elif size == best and enumerate_all:
                found.append(current)
            return
        verts, bounds = _greedy_clique_cover_bound(order, pool, conflict)
        for v, b in zip(reversed(verts), reversed(bounds)):
            if size + b < best or (size + b == best and not enumerate_all and found):
                return
            if not enumerate_all and stop_at is not None and best >= stop_at and found:
                return
            expand(current | (1 << v), size + 1, pool & ~conflict[v] & ~(1 << v))
            if aborted:
                return
            pool &= ~(1 << v)

    expand(0, 0, (1 << n_vertices) - 1)
    return best, found, not aborted, nodes


def _conflicts(u: AssociateUnion) -> list[int]:
    adj = u.dense_adjacency()
    return [sum(1 << int(y) for y in np.flatnonzero(row)) for row in adj]


def max_independent_set(u: AssociateUnion, mode: str = "exact", budget: int = 5_000_000) -> SearchResult:
    """Independence number of a union of relations.

    ``bound`` returns only the ratio bound; ``exact`` proves the size;
    ``enumerate`` returns every maximum independent set. Exact modes need
    (2n-1)!! <= 1000. An exhausted node budget gives ``complete=False``.
    """
    bound = ratio_bound(u)
    if mode == "bound":
        return SearchResult(int(bound) if bound.denominator == 1 else int(bound), [], False, 0, bound)
    if mode not in ("exact", "enumerate"):
        raise ValueError(f"unknown mode {mode!r}")
    N = u.order
    if N > 1000:
        raise ValueError(f"exact search limited to (2n-1)!! <= 1000, got {N}")
    conflict = _conflicts(u)
    # any trivial family that is independent here is a valid incumbent
    lower = 0
    fam = trivial_family(u.n, 1, 2)
    if all(not (conflict[r] & fam.bits) for r in fam.ranks()):
        # enumerate keeps every set of size >= lower; exact needs one strictly better than it
        lower = fam.cardinality if mode == "enumerate" else fam.cardinality - 1
    stop = int(bound) if mode == "exact" else None
    size, sets, complete, nodes = maximum_independent_sets(
        conflict, N, lower=lower, enumerate_all=(mode == "enumerate"), budget=budget, stop_at=stop
    )
    fams = sorted((FamilyVector(u.n, b) for b in sets), key=lambda f: f.ranks())
    return SearchResult(size, fams, complete, nodes, bound)


def extremal_uniqueness_check(n: int, graph: str = "gamma", budget: int = 5_000_000) -> VerificationReport:
    """alpha = (2n-3)!! and the maximum independent sets are exactly the trivial families."""
    u = derangement_union(n) if graph == "gamma" else single_associate(n)
    res = max_independent_set(u, "enumerate", budget=budget)
    claim = f"ekr.extremal.{graph}.n{n}"
    want = double_factorial(2 * n - 3)
    trivial = {f.bits for f in trivial_families(n).values()}
    got = {f.bits for f in res.families}
    if not res.complete:
        return VerificationReport(claim, INCONCLUSIVE, want, res.size, details={"nodes": res.nodes, "budget": budget})
    ok = res.size == want and got == trivial
    extra = [f.ranks() for f in res.families if f.bits not in trivial]
    missing = sorted(k for k, f in trivial_families(n).items() if f.bits not in got)
    return verdict(claim, ok, expected={"alpha": want, "families": len(trivial)},
                   actual={"alpha": res.size, "families": len(got)},
                   witnesses=[{"non_trivial": extra[:3], "missing": missing}] if not ok else None,
                   nodes=res.nodes, ratio_bound=res.upper_bound)


# --- colouring ---------------------------------------------------------------------


def chromatic_coloring(n: int, samples: int = 50, seed: int = 0) -> tuple[np.ndarray, VerificationReport]:
    """Proper (2n-1)-colouring: a matching's colour is the partner of vertex 1 (values 2..2n).

    Checks properness on every edge for n <= 5, on ``samples`` random
    vertices' full neighbourhoods for n = 6.
    """
    if not 2 <= n <= 6:
        raise ValueError("colouring check supports 2 <= n <= 6")
    arr = matching_array(n)
    colours = arr[:, 0].astype(np.int64)  # partner of vertex 1, 0-based, in 1..2n-1
    u = derangement_union(n)
    bad = []
    if n <= MAX_DENSE_N:
        adj = u.dense_adjacency()
        xs, ys = np.nonzero(adj)
        clash = np.flatnonzero(colours[xs] == colours[ys])
        bad = [(int(xs[i]), int(ys[i])) for i in clash[:3]]
        mode = "all-edges"
    else:
        rng = np.random.default_rng(seed)
        idx = u.indices()
        for x in rng.choice(arr.shape[0], size=samples, replace=False):
            nb = np.flatnonzero(np.isin(cycle_type_indices(arr, arr[x]), idx))
            clash = nb[colours[nb] == colours[x]]
            bad += [(int(x), int(y)) for y in clash[:1]]
        mode = f"sampled-{samples}"
    classes = np.bincount(colours, minlength=2 * n)[1:].tolist()
    clique = lucas_clique(n)
    ok = not bad and len(classes) == 2 * n - 1 and len(clique.matchings) == 2 * n - 1
    rep = verdict(f"ekr.chromatic.n{n}", ok, expected=2 * n - 1, actual=len([c for c in classes if c]),
                  witnesses=[{"edge": e} for e in bad], mode=mode, class_sizes=classes)
    return colours + 1, rep


# --- t-intersecting ------------------------------------------------------------------


def t_intersecting_search(n: int, t: int, budget: int = 5_000_000) -> SearchResult:
    """Largest families whose members pairwise share at least ``t`` edges (n <= 4)."""
    if count_matchings(n) > 120:
        raise ValueError("t-intersecting search is limited to n <= 4")
    if not 1 <= t < n:
        raise ValueError(f"need 1 <= t < n, got t={t}")
    R = relation_matrix(n)
    shared = np.array([lam.count(1) for lam in partitions_of(n)])[R]
    N = R.shape[0]
    incompatible = (shared < t) & ~np.eye(N, dtype=bool)
    conflict = [sum(1 << int(y) for y in np.flatnonzero(row)) for row in incompatible]
    size, sets, complete, nodes = maximum_independent_sets(conflict, N, lower=0, enumerate_all=True, budget=budget)
    fams = sorted((FamilyVector(n, b) for b in sets), key=lambda f: f.ranks())
    return SearchResult(size, fams, complete, nodes, Fraction(double_factorial(2 * (n - t) - 1)))


def trivial_t_families(n: int, t: int) -> list[FamilyVector]:
    out = []
    verts = range(1, 2 * n + 1)
    edges = list(combinations(verts, 2))
    for T in combinations(edges, t):
        used = [v for e in T for v in e]
        if len(set(used)) == 2 * t:
            out.append(trivial_t_family(n, T))
    return out


def t_intersecting_check(n: int, t: int) -> VerificationReport:
    res = t_intersecting_search(n, t)
    want = double_factorial(2 * (n - t) - 1)
    trivial = {f.bits for f in trivial_t_families(n, t)}
    got = {f.bits for f in res.families}
    claim = f"ekr.t-intersecting.n{n}.t{t}"
    if not res.complete:
        return VerificationReport(claim, INCONCLUSIVE, want, res.size)
    ok = res.size == want and got == trivial
    extra = [f.ranks() for f in res.families if f.bits not in trivial]
    return verdict(claim, ok, expected={"size": want, "families": len(trivial)},
                   actual={"size": res.size, "families": len(got)},
                   witnesses=[{"non_trivial": extra[:3]}] if not ok else None, scale="desk-scale only")


def independence_of_trivial_families(n: int) -> VerificationReport:
    """Every F_ij is independent in the derangement graph (members pairwise share an edge)."""
    bad = []
    arr = matching_array(n)
    for (i, j), fam in trivial_families(n).items() if n <= 5 else [((1, 2), trivial_family(n, 1, 2))]:
        rows = arr[fam.ranks()]
        for x in range(0, len(rows), max(1, len(rows) // 8)):
            types = cycle_type_indices(rows, rows[x])
            if any(1 not in partitions_of(n)[k] for k in np.unique(types)):
                bad.append({"edge": (i, j), "member": int(fam.ranks()[x])})
                break
    return verdict(f"ekr.trivial-independent.n{n}", not bad, expected="independent", actual=len(bad),
                   witnesses=bad)


def arithmetic_checks(max_n: int = 12) -> VerificationReport:
    bad = [n for n in range(2, max_n + 1)
           if (2 * n - 1) * double_factorial(2 * n - 3) != double_factorial(2 * n - 1)]
    return verdict(f"ekr.clique-coclique-arithmetic.n<={max_n}", not bad, expected="equality", actual=bad or "equality",
                   witnesses=[{"n": n} for n in bad])
