"""Exact dense linear algebra over the rationals.

Rank, right kernels, linear solving and determinants are computed by
fraction-free (Bareiss) elimination on integer matrices obtained by
clearing denominators row by row.  Pivoting is deterministic (first
nonzero entry in column order), so echelon forms, kernel bases and
particular solutions are reproducible.

``rank`` optionally short-circuits through a single modular elimination:
the rank modulo a prime is a lower bound, so a full-rank modular verdict
is already exact.  Any deficient modular verdict falls through to the
exact integer elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

# Mersenne prime 2^61 - 1; fixed so results never depend on external state.
_FILTER_PRIME = (1 << 61) - 1

Vector = list[Fraction]


@dataclass(frozen=True)
class RatMatrix:
    """Immutable dense matrix of rationals, stored row major."""

    rows: int
    cols: int
    entries: tuple[tuple[Fraction, ...], ...]

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "RatMatrix":
        data = tuple(tuple(Fraction(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, data)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "RatMatrix":
        return cls(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "RatMatrix":
        return cls.from_rows(
            [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        )

    def row(self, i: int) -> Vector:
        return list(self.entries[i])

    def transpose(self) -> "RatMatrix":
        return RatMatrix.from_rows(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def matvec(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector length {len(v)} != cols {self.cols}")
        return [
            sum((row[j] * Fraction(v[j]) for j in range(self.cols)), Fraction(0))
            for row in self.entries
        ]


@dataclass(frozen=True)
class KernelBasis:
    """Basis of a right null space; dim == len(vectors)."""

    dim: int
    vectors: list[Vector]


def _integer_rows(m: RatMatrix) -> list[list[int]]:
    """Clear denominators row by row (row scaling preserves rank/kernel)."""
    out = []
    for row in m.entries:
        mult = lcm(*(c.denominator for c in row)) if row else 1
        out.append([int(c * mult) for c in row])
    return out


def _exact_div(a: int, b: int) -> int:
    q, r = divmod(a, b)
    assert r == 0, "Bareiss division was not exact"
    return q


def _bareiss_echelon(rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """In-place fraction-free elimination.

    Returns the echelon rows together with the list of pivot columns.  Row
    order follows the deterministic first-nonzero pivot rule.
    """
    nrows = len(rows)
    pivot_cols: list[int] = []
    r = 0
    prev = 1
    for c in range(ncols):
        pivot = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        if pivot != r:
            rows[r], rows[pivot] = rows[pivot], rows[r]
        lead = rows[r][c]
        for i in range(r + 1, nrows):
            if not any(rows[i][c:]):
                continue
            head = rows[i][c]
            for j in range(c + 1, ncols):
                rows[i][j] = _exact_div(lead * rows[i][j] - head * rows[r][j], prev)
            rows[i][c] = 0
        prev = lead
        pivot_cols.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivot_cols


def rank(m: RatMatrix, modular_filter: bool = True) -> int:
    """Exact rank over the rationals."""
    if m.rows == 0 or m.cols == 0:
        return 0
    bound = min(m.rows, m.cols)
    rows = _integer_rows(m)
    if modular_filter:
        mod = _modular_rank(rows, m.cols)
        if mod == bound:
            # Modular rank is a lower bound; a full-rank verdict is exact.
            return mod
    _, pivot_cols = _bareiss_echelon([row[:] for row in rows], m.cols)
    return len(pivot_cols)


def _modular_rank(rows: list[list[int]], ncols: int, p: int = _FILTER_PRIME) -> int:
    work = [[x % p for x in row] for row in rows]
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(work)) if work[i][c]), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        inv = pow(work[r][c], p - 2, p)
        lead_row = work[r]
        for i in range(r + 1, len(work)):
            if work[i][c]:
                f = work[i][c] * inv % p
                work[i] = [(a - f * b) % p for a, b in zip(work[i], lead_row)]
        r += 1
        if r == len(work):
            break
    return r


def kernel_basis(m: RatMatrix) -> KernelBasis:
    """Basis of the right null space, in deterministic order.

    Each basis vector is scaled to a primitive integer vector whose first
    nonzero entry is positive; there is one vector per free column, listed
    in ascending column order.
    """
    if m.cols == 0:
        return KernelBasis(0, [])
    rows = _integer_rows(m)
    echelon, pivot_cols = _bareiss_echelon(rows, m.cols)
    pivot_set = set(pivot_cols)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    vectors: list[Vector] = []
    for fc in free_cols:
        v = [Fraction(0)] * m.cols
        v[fc] = Fraction(1)
        # Back-substitute through the pivot rows in reverse order.
        for i in range(len(pivot_cols) - 1, -1, -1):
            pc = pivot_cols[i]
            acc = sum(
                (echelon[i][j] * v[j] for j in range(pc + 1, m.cols) if v[j]),
                Fraction(0),
            )
            v[pc] = -acc / echelon[i][pc]
        vectors.append(_primitive(v))
    return KernelBasis(len(vectors), vectors)


def _primitive(v: Vector) -> Vector:
    mult = lcm(*(c.denominator for c in v))
    ints = [int(c * mult) for c in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    lead = next(x for x in ints if x)
    if lead < 0:
        g = -g
    return [Fraction(x, g) for x in ints]


def solve(m: RatMatrix, b: Sequence) -> Vector | None:
    """One particular solution of M x = b, or None if inconsistent.

    Free variables are set to zero, so the returned solution is
    deterministic.
    """
    if len(b) != m.rows:
        raise ValueError(f"rhs length {len(b)} != rows {m.rows}")
    rhs = [Fraction(x) for x in b]
    aug_rows = []
    for row, t in zip(m.entries, rhs):
        full = list(row) + [t]
        mult = lcm(*(c.denominator for c in full))
        aug_rows.append([int(c * mult) for c in full])
    echelon, pivot_cols = _bareiss_echelon(aug_rows, m.cols + 1)
    if pivot_cols and pivot_cols[-1] == m.cols:
        return None  # a pivot in the augmented column: inconsistent
    x = [Fraction(0)] * m.cols
    for i in range(len(pivot_cols) - 1, -1, -1):
        pc = pivot_cols[i]
        acc = sum(
            (echelon[i][j] * x[j] for j in range(pc + 1, m.cols) if x[j]),
            Fraction(0),
        )
        x[pc] = (Fraction(echelon[i][m.cols]) - acc) / echelon[i][pc]
    return x


def determinant(m: RatMatrix) -> Fraction:
    """Exact determinant of a square matrix."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    if m.rows == 0:
        return Fraction(1)
    # Track the row multipliers used to clear denominators.
    scale = Fraction(1)
    rows = []
    for row in m.entries:
        mult = lcm(*(c.denominator for c in row))
        scale *= mult
        rows.append([int(c * mult) for c in row])
    n = m.rows
    sign = 1
    prev = 1
    for c in range(n):
        pivot = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            rows[c], rows[pivot] = rows[pivot], rows[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                rows[i][j] = _exact_div(
                    rows[c][c] * rows[i][j] - rows[i][c] * rows[c][j], prev
                )
            rows[i][c] = 0
        prev = rows[c][c]
    return Fraction(sign * prev) / scale


def invert(m: RatMatrix) -> RatMatrix | None:
    """Exact inverse, or None when the matrix is singular."""
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    cols = []
    for k in range(n):
        e = [Fraction(1) if i == k else Fraction(0) for i in range(n)]
        x = solve(m, e)
        if x is None:
            return None
        cols.append(x)
    # All unit vectors lie in the column space, so the matrix is invertible.
    return RatMatrix.from_rows(
        [[cols[j][i] for j in range(n)] for i in range(n)]
    )
