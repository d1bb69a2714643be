"""The matching derangement graph and other unions of associates.

All spectra here are read off the character table; no graph on N!!
vertices is ever diagonalised.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from .combinatorics import Partition, double_factorial, matching_derangement_count, partitions_of
from .published import GAMMA_SPECTRA
from .linalg import UnsupportedInstance
from .matchings import Matching, matching_array
from .report import INCONCLUSIVE, PASS, VerificationReport, verdict
from .scheme import MAX_DENSE_N, relation_matrix, sphere_size
from .spectrum import character_table


@dataclass(frozen=True)
class AssociateUnion:
    """Graph on all matchings whose edges are the union of the chosen relations."""

    n: int
    relations: tuple[Partition, ...]

    def __post_init__(self):
        if not self.relations:
            raise ValueError("a union needs at least one relation")
        parts = partitions_of(self.n)
        for lam in self.relations:
            if tuple(lam) not in parts:
                raise ValueError(f"{lam} is not a partition of {self.n}")

    @property
    def degree(self) -> int:
        return sum(sphere_size(lam, self.n) for lam in self.relations)

    @property
    def order(self) -> int:
        return double_factorial(2 * self.n - 1)

    def indices(self) -> list[int]:
        parts = partitions_of(self.n)
        return [parts.index(tuple(lam)) for lam in self.relations]

    def adjacent(self, x: Matching, y: Matching) -> bool:
        from .matchings import cycle_type

        return cycle_type(x, y) in self.relations

    def dense_adjacency(self) -> np.ndarray:
        if self.n > MAX_DENSE_N:
            raise ValueError(f"dense adjacency is limited to n <= {MAX_DENSE_N}")
        return np.isin(relation_matrix(self.n), self.indices())


def derangement_union(n: int) -> AssociateUnion:
    """Matchings adjacent when they share no edge: relations with no part 1."""
    if n < 2:
        raise ValueError("the derangement graph needs n >= 2")
    return AssociateUnion(n, tuple(lam for lam in partitions_of(n) if 1 not in lam))


def single_associate(n: int, lam: Partition | None = None) -> AssociateUnion:
    """One relation; defaults to the Hamiltonian relation (n)."""
    return AssociateUnion(n, (tuple(lam) if lam is not None else (n,),))


def depth(lam: Partition) -> int:
    return sum(lam) - lam[0]


@dataclass(frozen=True)
class SpectrumRecord:
    n: int
    eigenvalues: dict[Partition, int]
    multiplicities: dict[Partition, int]

    def least(self) -> tuple[int, list[Partition]]:
        low = min(self.eigenvalues.values())
        return low, [lam for lam, v in self.eigenvalues.items() if v == low]

    def rows(self) -> list[dict]:
        out = []
        for lam, eta in self.eigenvalues.items():
            d = depth(lam)
            if eta == 0:
                consistent = "zero"
            else:
                consistent = "yes" if (eta > 0) == (d % 2 == 0) else "no"
            out.append({"partition": lam, "eigenvalue": eta, "multiplicity": self.multiplicities[lam],
                        "depth": d, "sign_consistent": consistent})
        return out


def spectrum(u: AssociateUnion) -> SpectrumRecord:
    """eta_lam = sum over chosen relations mu of p_mu(lam)."""
    t = character_table(u.n)
    rows = u.indices()
    eig = {lam: sum(t.P[mu][j] for mu in rows) for j, lam in enumerate(t.partitions)}
    mult = dict(zip(t.partitions, t.multiplicities))
    return SpectrumRecord(u.n, eig, mult)


def ratio_bound(u: AssociateUnion) -> Fraction:
    """N!! * (-eta_min) / (degree - eta_min)."""
    low, _ = spectrum(u).least()
    return Fraction(u.order * -low, u.degree - low)


# --- equitable partition -----------------------------------------------------


def _exact_quadratic_roots(trace: Fraction, det: Fraction) -> list[Fraction]:
    disc = trace * trace - 4 * det
    num, den = disc.numerator, disc.denominator
    rn, rd = isqrt(num), isqrt(den)
    if num < 0 or rn * rn != num or rd * rd != den:
        raise ArithmeticError(f"quotient eigenvalues are irrational (discriminant {disc})")
    s = Fraction(rn, rd)
    return sorted({(trace + s) / 2, (trace - s) / 2}, reverse=True)


@dataclass(frozen=True)
class EquitableQuotient:
    n: int
    edge: tuple[int, int]
    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]
    eigenvalues: list[Fraction]
    verified: bool


def equitable_quotient(n: int, i: int, j: int, verify: bool | None = None) -> EquitableQuotient:
    """Quotient of the derangement graph by (F_ij, rest); ``i, j`` are 1-based.

    For n <= 5 the partition is checked to be equitable by counting the
    neighbours of every vertex; a failure raises with the offending rank.
    """
    if i == j or not (1 <= i <= 2 * n and 1 <= j <= 2 * n):
        raise ValueError(f"bad edge ({i}, {j}) for n={n}")
    D = matching_derangement_count(n)
    off = Fraction(D, 2 * (n - 1))
    Q = ((Fraction(0), Fraction(D)), (off, D - off))
    if verify is None:
        verify = n <= MAX_DENSE_N
    if verify:
        arr = matching_array(n)
        inside = arr[:, i - 1] == j - 1
        adj = derangement_union(n).dense_adjacency()
        to_in = adj[:, inside].sum(axis=1)
        to_out = adj[:, ~inside].sum(axis=1)
        expect_in = np.where(inside, 0, int(off))
        expect_out = np.where(inside, D, int(D - off))
        bad = np.flatnonzero((to_in != expect_in) | (to_out != expect_out))
        if len(bad):
            r = int(bad[0])
            raise AssertionError(f"partition not equitable at rank {r}: {int(to_in[r])} in, {int(to_out[r])} out")
    trace = Q[0][0] + Q[1][1]
    det = Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]
    return EquitableQuotient(n, (i, j), Q, _exact_quadratic_roots(trace, det), verify)


# --- checks ------------------------------------------------------------------------


def _unsupported(claim: str, exc: Exception) -> VerificationReport:
    return VerificationReport(claim, INCONCLUSIVE, "integer spectrum", "unsupported instance",
                              details={"reason": str(exc)})


def check_least_eigenvalue_conjecture(n: int) -> VerificationReport:
    try:
        rec = spectrum(derangement_union(n))
    except UnsupportedInstance as exc:
        return _unsupported(f"conj.least-eig.n{n}", exc)
    low, where = rec.least()
    want = Fraction(-matching_derangement_count(n), 2 * (n - 1))
    want = want.numerator if want.denominator == 1 else want
    ok = low == want and (n - 1, 1) in where
    return verdict(f"conj.least-eig.n{n}", ok, expected={"value": want, "at": (n - 1, 1)},
                   actual={"value": low, "at": where})


def check_alternating_sign(n: int) -> VerificationReport:
    """sign(eta_lam) = (-1)^depth(lam); zero eigenvalues are listed, not judged."""
    claim = f"conj.alt-sign.n{n}"
    try:
        rec = spectrum(derangement_union(n))
    except UnsupportedInstance as exc:
        return _unsupported(claim, exc)
    rows = rec.rows()
    wrong = [r for r in rows if r["sign_consistent"] == "no"]
    zeros = [r["partition"] for r in rows if r["sign_consistent"] == "zero"]
    if wrong:
        return verdict(claim, False, expected="sign = (-1)^depth", actual=f"{len(wrong)} mismatches",
                       witnesses=wrong, zero_eigenvalues=zeros)
    status = INCONCLUSIVE if zeros else PASS
    return VerificationReport(claim, status, "sign = (-1)^depth", "all nonzero eigenvalues consistent",
                              details={"zero_eigenvalues": zeros})


def check_published_spectrum(n: int) -> VerificationReport:
    """Compare the derangement-graph spectrum with the published small-n table."""
    if n not in GAMMA_SPECTRA:
        raise ValueError(f"no published spectrum for n={n}")
    got = spectrum(derangement_union(n)).eigenvalues
    want = GAMMA_SPECTRA[n]
    bad = [{"lam": lam, "published": v, "computed": got.get(lam)} for lam, v in want.items() if got.get(lam) != v]
    return verdict(f"published-spectrum.n{n}", not bad and len(got) == len(want), expected=want, actual=got, witnesses=bad)


def degree_identity_check(n: int) -> VerificationReport:
    """Sum of sphere sizes over relations with no part 1 equals the matching derangement count."""
    total = sum(sphere_size(lam, n) for lam in partitions_of(n) if 1 not in lam)
    want = matching_derangement_count(n)
    return verdict(f"derangement.degree.n{n}", total == want, expected=want, actual=total)


def trace_identities_check(n: int) -> VerificationReport:
    """sum m eta = 0 for every union tested, and sum m eta^2 = N!! degree for the derangement graph."""
    t = character_table(n)
    w = []
    for mu in t.partitions[:-1]:
        rec = spectrum(single_associate(n, mu))
        if sum(rec.multiplicities[l] * e for l, e in rec.eigenvalues.items()):
            w.append({"trace": mu})
    u = derangement_union(n)
    rec = spectrum(u)
    if sum(rec.multiplicities[l] * e for l, e in rec.eigenvalues.items()):
        w.append({"trace": "gamma"})
    frob = sum(rec.multiplicities[l] * e * e for l, e in rec.eigenvalues.items())
    if frob != u.order * u.degree:
        w.append({"frobenius": frob, "expected": u.order * u.degree})
    return verdict(f"derangement.trace.n{n}", not w, expected="0 violations", actual=len(w), witnesses=w)
