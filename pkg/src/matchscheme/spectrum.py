"""Character table, zonal spherical functions and primitive idempotents.

The eigenvalues come from an exact simultaneous diagonalisation of the
intersection matrices. Columns are then named by irreducible ``lam`` using
two invariants that are known independently of the eigen-computation: the
multiplicity ``f^{2 lam}`` and the closed-form zonal value on the
``(n)``-sphere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from .combinatorics import (
    Partition,
    double_factorial,
    doubled,
    hyperoctahedral_order,
    partitions_of,
    specht_dimension,
)
from .linalg import (
    UnsupportedInstance,
    charpoly,
    common_denominator,
    exact_matmul,
    integer_roots,
    matvec_q,
    nullspace,
)
from .report import VerificationReport, verdict
from .scheme import MAX_DENSE_N, intersection_numbers, relation_matrix


class DegeneracyError(ArithmeticError):
    """The intersection matrices failed to split the space into lines."""


class LabelingError(ValueError):
    """A column of the eigenvalue table could not be named unambiguously."""


class ConsistencyError(AssertionError):
    pass


# --- closed forms -------------------------------------------------------------


def zonal_n_sphere(lam: Partition) -> Fraction:
    """Zonal spherical function of ``lam`` on the (n)-sphere, by the cell product.

    Cell (i, j) (0-based row, column) contributes ``2j - i``; the corner cell
    is skipped and the product is divided by |H_{n-1}|. Any shape containing
    cell (2, 1) therefore gives 0.
    """
    lam = tuple(lam)
    n = sum(lam)
    num = 1
    for i, row in enumerate(lam):
        for j in range(row):
            if i or j:
                num *= 2 * j - i
    return Fraction(num, hyperoctahedral_order(n - 1))


# --- simultaneous diagonalisation --------------------------------------------


def _split(B: list[list[int]], basis: list[list[Fraction]], roots) -> list[list[list[Fraction]]]:
    """Split the invariant subspace spanned by ``basis`` into eigenspaces of ``B``."""
    size = len(B)
    pieces = []
    for r in roots:
        shifted = [[Fraction(B[i][j] - (r if i == j else 0)) for j in range(size)] for i in range(size)]
        # image of each basis vector under (B - rI), as columns
        cols = [matvec_q(shifted, v) for v in basis]
        image = [[cols[c][i] for c in range(len(basis))] for i in range(size)]
        coeff_basis = nullspace(image, cols=len(basis))
        if coeff_basis:
            piece = [[sum((c * v[i] for c, v in zip(coeffs, basis)), Fraction(0)) for i in range(size)]
                     for coeffs in coeff_basis]
            pieces.append(piece)
    if sum(len(p) for p in pieces) != len(basis):
        raise DegeneracyError("eigenspaces do not fill an invariant subspace")
    return pieces


def joint_eigenvalues(n: int) -> list[list[int]]:
    """Unlabelled columns: one joint eigenvalue vector (indexed by relation) per common eigenline."""
    inter = intersection_numbers(n)
    parts = inter.partitions
    K = len(parts)
    degrees = inter.degrees
    Bs = [inter.matrix(i).tolist() for i in range(K)]
    spaces = [[[Fraction(int(i == j)) for j in range(K)] for i in range(K)]]
    for mu in range(K - 1):  # canonical order, identity relation last and skipped
        if all(len(s) == 1 for s in spaces):
            break
        poly = charpoly(Bs[mu])
        try:
            roots = sorted(integer_roots(poly, degrees[mu]))
        except UnsupportedInstance as exc:
            raise UnsupportedInstance(f"n={n}, relation {parts[mu]}: {exc}") from None
        new = []
        for s in spaces:
            new.extend([s] if len(s) == 1 else _split(Bs[mu], s, roots))
        spaces = new
    if any(len(s) != 1 for s in spaces):
        raise DegeneracyError(f"n={n}: common eigenspaces of dimension {[len(s) for s in spaces]}")
    columns = []
    for (v,) in spaces:
        pivot = next(i for i, x in enumerate(v) if x != 0)
        col = []
        for mu in range(K):
            val = matvec_q(Bs[mu], v)[pivot] / v[pivot]
            if val.denominator != 1:
                raise UnsupportedInstance(f"non-integer eigenvalue {val} for relation {parts[mu]}")
            col.append(int(val))
        columns.append(col)
    return columns


def column_multiplicity(column: list[int], degrees: list[int], N: int) -> int:
    """m = N!! / sum_mu p_mu^2 / k_mu (column orthogonality)."""
    norm = sum(Fraction(p * p, k) for p, k in zip(column, degrees))
    m = Fraction(N) / norm
    if m.denominator != 1:
        raise ConsistencyError(f"multiplicity {m} is not an integer")
    return int(m)


@dataclass(frozen=True)
class CharacterTable:
    """``P[mu][lam]`` is the eigenvalue of A_mu on the eigenspace of irreducible ``lam``.

    Rows and columns both follow ``partitions_of(n)``.
    """

    n: int
    partitions: tuple[Partition, ...]
    P: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]

    @property
    def degrees(self) -> list[int]:
        return [row[0] for row in self.P]  # column 0 is the trivial irreducible (n)

    @property
    def size(self) -> int:
        return double_factorial(2 * self.n - 1)

    def eigenvalue(self, mu: Partition, lam: Partition) -> int:
        return self.P[self.partitions.index(tuple(mu))][self.partitions.index(tuple(lam))]

    def multiplicity(self, lam: Partition) -> int:
        return self.multiplicities[self.partitions.index(tuple(lam))]

    def column(self, lam: Partition) -> list[int]:
        j = self.partitions.index(tuple(lam))
        return [row[j] for row in self.P]


def label_columns(n: int, columns: list[list[int]]) -> CharacterTable:
    """Name each eigenvalue column by the irreducible with the same (m, omega^(n)).

    Raises LabelingError when a column matches no irreducible or more than one,
    or when two columns claim the same irreducible.
    """
    parts = partitions_of(n)
    inter = intersection_numbers(n)
    degrees = inter.degrees
    N = double_factorial(2 * n - 1)
    cycle = parts.index((n,))
    keys = {lam: (specht_dimension(doubled(lam)), zonal_n_sphere(lam)) for lam in parts}
    assigned: dict[Partition, list[int]] = {}
    mults: dict[Partition, int] = {}
    for col in columns:
        m = column_multiplicity(col, degrees, N)
        key = (m, Fraction(col[cycle], degrees[cycle]))
        matches = [lam for lam, k in keys.items() if k == key]
        if len(matches) != 1:
            raise LabelingError(f"n={n}: column with (m, omega) = {key} matches {matches or 'no irreducible'}")
        lam = matches[0]
        if lam in assigned:
            raise LabelingError(f"n={n}: two columns both match {lam}")
        assigned[lam] = col
        mults[lam] = m
    if len(assigned) != len(parts):
        raise LabelingError(f"n={n}: only {len(assigned)} of {len(parts)} columns labelled")
    P = tuple(tuple(assigned[lam][mu] for lam in parts) for mu in range(len(parts)))
    return CharacterTable(n, tuple(parts), P, tuple(mults[lam] for lam in parts))


def label_collisions(n: int) -> list[tuple[Partition, Partition]]:
    """Pairs of irreducibles sharing (f^{2 lam}, omega^(n)); empty means labelling is safe."""
    parts = partitions_of(n)
    keys = [(specht_dimension(doubled(lam)), zonal_n_sphere(lam)) for lam in parts]
    return [(parts[a], parts[b]) for a in range(len(parts)) for b in range(a + 1, len(parts)) if keys[a] == keys[b]]


_PRELOADED: dict[int, CharacterTable] = {}


def preload_character_table(table: CharacterTable) -> None:
    _PRELOADED[table.n] = table


@lru_cache(maxsize=8)
def character_table(n: int) -> CharacterTable:
    if n in _PRELOADED:
        return _PRELOADED[n]
    return label_columns(n, joint_eigenvalues(n))


# --- zonal table ----------------------------------------------------------------


@dataclass(frozen=True)
class ZonalTable:
    """``omega[mu][lam] = p_mu(lam) / k_mu``."""

    n: int
    partitions: tuple[Partition, ...]
    omega: tuple[tuple[Fraction, ...], ...]

    def value(self, lam: Partition, mu: Partition) -> Fraction:
        """Zonal function of irreducible ``lam`` on the ``mu``-sphere."""
        return self.omega[self.partitions.index(tuple(mu))][self.partitions.index(tuple(lam))]


def zonal_table(n: int, table: CharacterTable | None = None) -> ZonalTable:
    table = table or character_table(n)
    degrees = table.degrees
    omega = tuple(tuple(Fraction(p, k) for p in row) for row, k in zip(table.P, degrees))
    parts = table.partitions
    if any(v != 1 for v in omega[-1]):
        raise ConsistencyError("zonal functions are not 1 on the identity sphere")
    cycle_row = omega[parts.index((n,))]
    for lam, v in zip(parts, cycle_row):
        if v != zonal_n_sphere(lam):
            raise ConsistencyError(f"omega_{lam} on the (n)-sphere: table {v} vs closed form {zonal_n_sphere(lam)}")
    return ZonalTable(n, parts, omega)


# --- idempotents --------------------------------------------------------------


@dataclass(frozen=True)
class IdempotentBundle:
    """E_lam = sum_mu coefficients[lam][mu] A_mu."""

    n: int
    partitions: tuple[Partition, ...]
    coefficients: tuple[tuple[Fraction, ...], ...]

    def coefficient(self, lam: Partition, mu: Partition) -> Fraction:
        return self.coefficients[self.partitions.index(tuple(lam))][self.partitions.index(tuple(mu))]

    def dense(self, lam: Partition) -> "DenseMatrix":
        """Explicit E_lam over ranks (n <= 5)."""
        if self.n > MAX_DENSE_N:
            raise ValueError(f"dense idempotents are limited to n <= {MAX_DENSE_N}")
        coeffs = self.coefficients[self.partitions.index(tuple(lam))]
        den = common_denominator(coeffs)
        nums = np.array([int(c * den) for c in coeffs], dtype=np.int64)
        return DenseMatrix(nums[relation_matrix(self.n)], den)

    def quadratic_form(self, lam: Partition, pair_counts) -> Fraction:
        """v^T E_lam v from ``pair_counts[mu]`` = #{(x, y) in S x S : d(x, y) = mu}."""
        coeffs = self.coefficients[self.partitions.index(tuple(lam))]
        return sum((c * int(pair_counts[i]) for i, c in enumerate(coeffs)), Fraction(0))


@dataclass(frozen=True)
class DenseMatrix:
    """Rational matrix stored as integer numerator array over one denominator."""

    num: np.ndarray
    den: int

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        return DenseMatrix(exact_matmul(self.num, other.num), self.den * other.den)

    def apply(self, v) -> list[Fraction]:
        w = exact_matmul(self.num, np.asarray(v, dtype=np.int64).reshape(-1, 1)).ravel()
        return [Fraction(int(x), self.den) for x in w]

    def equals(self, other: "DenseMatrix") -> bool:
        return np.array_equal(
            np.asarray(self.num, dtype=object) * other.den, np.asarray(other.num, dtype=object) * self.den
        )

    def is_zero(self) -> bool:
        return not np.asarray(self.num).any()


def idempotents(n: int, table: CharacterTable | None = None) -> IdempotentBundle:
    table = table or character_table(n)
    N = table.size
    degrees = table.degrees
    parts = table.partitions
    coeffs = tuple(
        tuple(Fraction(table.multiplicities[j] * table.P[mu][j], N * degrees[mu]) for mu in range(len(parts)))
        for j in range(len(parts))
    )
    return IdempotentBundle(n, parts, coeffs)


# --- checks ---------------------------------------------------------------------


def orthogonality_check(n: int) -> VerificationReport:
    """Row sums, first row, trivial column and both orthogonality relations of P."""
    w = table_violations(character_table(n))
    return verdict(f"spectrum.orthogonality.n{n}", not w, expected="0 violations", actual=len(w), witnesses=w)


def table_violations(t: CharacterTable) -> list[str]:
    parts = t.partitions
    K = len(parts)
    N = t.size
    deg = t.degrees
    w = []
    if any(v != 1 for v in t.P[-1]):
        w.append("identity row is not all ones")
    if sum(t.multiplicities) != N:
        w.append(f"multiplicities sum to {sum(t.multiplicities)}")
    for mu in range(K - 1):
        s = sum(m * p for m, p in zip(t.multiplicities, t.P[mu]))
        if s:
            w.append(f"sum_lam m_lam p_{parts[mu]}(lam) = {s}")
    for a in range(K):
        for b in range(K):
            s = sum(Fraction(t.P[mu][a] * t.P[mu][b], deg[mu]) for mu in range(K))
            want = Fraction(N, t.multiplicities[a]) if a == b else 0
            if s != want:
                w.append(f"column orthogonality fails at ({parts[a]}, {parts[b]})")
    # row orthogonality: sum_lam m_lam p_mu(lam) p_nu(lam) = delta N k_mu
    for a in range(K):
        for b in range(K):
            s = sum(m * t.P[a][j] * t.P[b][j] for j, m in enumerate(t.multiplicities))
            if s != (N * deg[a] if a == b else 0):
                w.append(f"row orthogonality fails at ({parts[a]}, {parts[b]})")
    return w


def thrall_check(n: int) -> VerificationReport:
    t = character_table(n)
    want = [specht_dimension(doubled(lam)) for lam in t.partitions]
    got = list(t.multiplicities)
    bad = [{"lam": lam, "m": a, "f2lam": b} for lam, a, b in zip(t.partitions, got, want) if a != b]
    return verdict(f"spectrum.thrall.n{n}", not bad, expected=want, actual=got, witnesses=bad)


def zonal_closed_form_check(n: int) -> VerificationReport:
    """Eigen-derived omega on the (n)-sphere vs the cell product, every lam."""
    t = character_table(n)
    cycle = t.partitions.index((n,))
    k = t.degrees[cycle]
    got = [Fraction(p, k) for p in t.P[cycle]]
    want = [zonal_n_sphere(lam) for lam in t.partitions]
    bad = [{"lam": lam, "table": a, "closed_form": b} for lam, a, b in zip(t.partitions, got, want) if a != b]
    return verdict(f"spectrum.zonal-closed-form.n{n}", not bad, expected=want, actual=got, witnesses=bad)


def inequality_chain_check(n: int) -> VerificationReport:
    """|omega_(n)| > |omega_(n-1,1)| > |omega_lam| on the (n)-sphere for all other lam."""
    if n < 2:
        raise ValueError("needs n >= 2")
    top = abs(zonal_n_sphere((n,)))
    std = abs(zonal_n_sphere((n - 1, 1)))
    others = {lam: abs(zonal_n_sphere(lam)) for lam in partitions_of(n) if lam not in ((n,), (n - 1, 1))}
    bad = [{"lam": lam, "abs_omega": v} for lam, v in others.items() if not v < std]
    if not top > std:
        bad.insert(0, {"lam": (n - 1, 1), "abs_omega": std, "trivial": top})
    return verdict(f"spectrum.inequality-chain.n{n}", not bad, expected=f"{top} > {std} > max(others)",
                   actual=max(others.values(), default=Fraction(0)), witnesses=bad)


def standard_least_eigenvalue_check(n: int) -> VerificationReport:
    """p_(n-1,1)((n)) = -|H_{n-2}| is the unique least eigenvalue of A_(n)."""
    t = character_table(n)
    row = t.P[t.partitions.index((n,))]
    least = min(row)
    where = [lam for lam, v in zip(t.partitions, row) if v == least]
    want = -hyperoctahedral_order(n - 2)
    ok = least == want and where == [(n - 1, 1)]
    return verdict(f"spectrum.A(n)-least.n{n}", ok, expected={"value": want, "at": [(n - 1, 1)]},
                   actual={"value": least, "at": where})


def idempotent_suite_check(n: int) -> VerificationReport:
    """Dense E_lam: idempotent, pairwise orthogonal, summing to I, and A_mu E_lam = p_mu(lam) E_lam."""
    if n > 4:
        raise ValueError("dense idempotent suite is limited to n <= 4")
    t = character_table(n)
    bundle = idempotents(n, t)
    parts = t.partitions
    E = [bundle.dense(lam) for lam in parts]
    w = []
    for a in range(len(parts)):
        for b in range(a, len(parts)):
            prod = E[a] @ E[b]
            if a == b and not prod.equals(E[a]):
                w.append({"square": parts[a]})
            elif a != b and not prod.is_zero():
                w.append({"product": (parts[a], parts[b])})
    den = lcm(*(e.den for e in E))
    total = sum(e.num * (den // e.den) for e in E)
    if not np.array_equal(total, den * np.eye(t.size, dtype=np.int64)):
        w.append({"sum": "not the identity"})
    R = relation_matrix(n)
    for mu_i, mu in enumerate(parts):
        A = DenseMatrix((R == mu_i).astype(np.int64), 1)
        for j, lam in enumerate(parts):
            lhs = A @ E[j]
            rhs = DenseMatrix(E[j].num * t.P[mu_i][j], E[j].den)
            if not lhs.equals(rhs):
                w.append({"eigen": (mu, lam)})
    return verdict(f"spectrum.idempotents.n{n}", not w, expected="0 violations", actual=len(w), witnesses=w)
