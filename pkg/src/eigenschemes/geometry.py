"""Line geometry of eigenpoint images and configuration checks.

Evaluating the minor tuple at a non-eigenpoint gives the Plucker
coordinates of the line joining the point to its image under the tensor's
form tuple.  This module handles that evaluation, the wedge-map rank test
for decomposability, the linear equations of the underlying line, and two
combinatorial checks on point configurations: no d+1 points of a finite
eigenscheme are collinear, and (in the plane) no kd points lie on a common
degree-k curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import numpy as np

from .linalg import RatMatrix, kernel_basis, rank
from .polynomials import Poly, format_poly, monomial_basis
from .tensors import (
    ProjPoint,
    PSTensor,
    determinantal_generators,
    pair_index,
    triple_index,
)

NUMERIC_RANK_TOL = 1e-8


class IndeterminacyError(ValueError):
    """Raised when the line map is evaluated at a point of its base locus."""


class PluckerVector:
    """Coordinates p_ij (0 <= i < j <= n) of a 2-vector on P^n."""

    __slots__ = ("n", "coords", "exact")

    def __init__(self, n: int, coords):
        coords = tuple(coords)
        if len(coords) != comb(n + 1, 2):
            raise ValueError(
                f"expected {comb(n + 1, 2)} coordinates for n={n}, got {len(coords)}"
            )
        exact = all(isinstance(c, (int, Fraction)) for c in coords)
        if exact:
            coords = tuple(Fraction(c) for c in coords)
        else:
            coords = tuple(complex(c) for c in coords)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("PluckerVector is immutable")

    def coord(self, i: int, j: int):
        """p_ij under the antisymmetric convention p_ji = -p_ij, p_ii = 0."""
        if i == j:
            return Fraction(0) if self.exact else 0j
        if i < j:
            return self.coords[pair_index(self.n).index((i, j))]
        return -self.coords[pair_index(self.n).index((j, i))]

    def is_zero(self, tol: float = 0.0) -> bool:
        if self.exact:
            return all(c == 0 for c in self.coords)
        return all(abs(c) <= tol for c in self.coords)

    def __repr__(self) -> str:
        return f"PluckerVector(n={self.n}, {list(self.coords)})"


def laguerre(t: PSTensor, p: ProjPoint, tol: float = 1e-9) -> PluckerVector:
    """The minor tuple evaluated at a point: the line through P and g(P).

    Eigenpoints are the base locus where every minor vanishes; evaluating
    there raises IndeterminacyError.
    """
    if p.n != t.n:
        raise ValueError(f"point lives in P^{p.n}, tensor in P^{t.n}")
    values = [f.evaluate(p.coords) for f in determinantal_generators(t).entries]
    omega = PluckerVector(t.n, values)
    if omega.is_zero(tol=0.0 if p.exact else tol):
        raise IndeterminacyError("the point is an eigenpoint; the line map is undefined there")
    return omega


def wedge_rows(omega: PluckerVector) -> list[list]:
    """Rows of the map v -> omega wedge v, one per triple i < j < k.

    The (i,j,k) component of omega wedge v is
    p_ij v_k - p_ik v_j + p_jk v_i.
    """
    rows = []
    for i, j, k in triple_index(omega.n):
        row = [Fraction(0) if omega.exact else 0j] * (omega.n + 1)
        row[k] = omega.coord(i, j)
        row[j] = -omega.coord(i, k)
        row[i] = omega.coord(j, k)
        rows.append(row)
    return rows


def _numeric_rank(rows, tol: float) -> int:
    a = np.array(rows, dtype=complex)
    if a.size == 0:
        return 0
    sv = np.linalg.svd(a, compute_uv=False)
    if sv.size == 0 or sv[0] == 0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def rank_A_omega(omega: PluckerVector, tol: float = NUMERIC_RANK_TOL) -> int:
    """Rank of the wedge map; n-1 exactly when omega is decomposable."""
    if omega.is_zero():
        raise ValueError("zero 2-vector has no associated line")
    rows = wedge_rows(omega)
    if not rows:
        # n = 1: the wedge map is identically zero.
        return 0
    if omega.exact:
        return rank(RatMatrix.from_rows(rows))
    scale = max(abs(c) for c in omega.coords)
    scaled = [[v / scale for v in row] for row in rows]
    return _numeric_rank(scaled, tol)


def is_decomposable(omega: PluckerVector, tol: float = NUMERIC_RANK_TOL) -> bool:
    return rank_A_omega(omega, tol) == omega.n - 1


def fiber_line(omega: PluckerVector, tol: float = NUMERIC_RANK_TOL) -> list[list]:
    """Linear equations in P_0..P_n cutting out the line with coordinates omega.

    Raises for non-decomposable input (the rows then cut out a smaller
    locus than a line).  For n = 1 the system is empty: the only line is
    all of P^1.
    """
    if not is_decomposable(omega, tol):
        raise ValueError("2-vector is not decomposable; no line has these coordinates")
    return wedge_rows(omega)


def line_residual(equations: list[list], p: ProjPoint) -> float:
    """max |equation(P)| over the system, on the normalized representative."""
    worst = 0.0
    for row in equations:
        value = sum(complex(c) * complex(x) for c, x in zip(row, p.coords))
        worst = max(worst, abs(value))
    return worst


def line_contains(equations: list[list], p: ProjPoint, tol: float = NUMERIC_RANK_TOL) -> bool:
    exact = p.exact and all(
        isinstance(c, (int, Fraction)) for row in equations for c in row
    )
    if exact:
        return all(
            sum(c * x for c, x in zip(row, p.coords)) == 0 for row in equations
        )
    return line_residual(equations, p) < tol


# ---------------------------------------------------------------------
# Configuration reports.
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class LineIncidence:
    """A spanned line together with the indices of the input points on it."""

    basis: tuple  # two spanning rows (canonical for exact input)
    points: tuple[int, ...]


@dataclass
class ConfigReport:
    """Outcome of the collinearity and plane-curve incidence checks."""

    d: int
    collinear_violations: list[LineIncidence] = field(default_factory=list)
    sharp_witnesses: list[LineIncidence] = field(default_factory=list)
    curve_candidates: list[dict] = field(default_factory=list)
    status: str = "complete"

    def to_json(self) -> dict:
        def line_json(inc: LineIncidence) -> dict:
            basis = []
            for row in inc.basis:
                if all(isinstance(c, Fraction) for c in row):
                    basis.append([str(c) for c in row])
                else:
                    basis.append([[complex(c).real, complex(c).imag] for c in row])
            return {"basis": basis, "points": list(inc.points)}

        return {
            "collinear_violations": [line_json(v) for v in self.collinear_violations],
            "sharp_lines": [line_json(w) for w in self.sharp_witnesses],
            "curve_candidates": [dict(c) for c in self.curve_candidates],
            "status": self.status,
        }


def _rref(rows: list[list[Fraction]]) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form; canonical representative of a row space."""
    work = [list(r) for r in rows]
    nrows, ncols = len(work), len(work[0])
    pivot_row = 0
    for col in range(ncols):
        pivot = next(
            (r for r in range(pivot_row, nrows) if work[r][col] != 0), None
        )
        if pivot is None:
            continue
        work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
        lead = work[pivot_row][col]
        work[pivot_row] = [v / lead for v in work[pivot_row]]
        for r in range(nrows):
            if r != pivot_row and work[r][col] != 0:
                factor = work[r][col]
                work[r] = [a - factor * b for a, b in zip(work[r], work[pivot_row])]
        pivot_row += 1
        if pivot_row == nrows:
            break
    return tuple(tuple(r) for r in work[:pivot_row])


def _exact_line_groups(points: list[ProjPoint]) -> dict:
    groups: dict = {}
    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            key = _rref([list(points[a].coords), list(points[b].coords)])
            groups.setdefault(key, set()).update((a, b))
    return groups


def _numeric_line_groups(points: list[ProjPoint], tol: float) -> list[tuple]:
    vecs = [np.array([complex(c) for c in p.coords]) for p in points]
    vecs = [v / np.linalg.norm(v) for v in vecs]
    found: list[tuple] = []  # (basis pair, member set)

    def on_line(u1, u2, v) -> bool:
        residual = v - u1 * np.vdot(u1, v) - u2 * np.vdot(u2, v)
        return bool(np.linalg.norm(residual) < tol)

    for a in range(len(points)):
        for b in range(a + 1, len(points)):
            if any(a in members and b in members for _, members in found):
                continue
            u1 = vecs[a]
            u2 = vecs[b] - u1 * np.vdot(u1, vecs[b])
            norm = np.linalg.norm(u2)
            if norm < tol:
                raise ValueError("points coincide projectively within tolerance")
            u2 = u2 / norm
            members = frozenset(
                idx for idx, v in enumerate(vecs) if on_line(u1, u2, v)
            )
            found.append(((tuple(u1), tuple(u2)), members))
    return found


def collinearity_report(
    points: list[ProjPoint], d: int, tol: float = NUMERIC_RANK_TOL
) -> ConfigReport:
    """Group points by spanned line; flag lines with too many points.

    A line carrying at least d+1 of the points rules out every finite
    eigenscheme of order d containing them (a violation); a line carrying
    exactly d points is the extremal configuration that does occur (a
    sharpness witness).
    """
    if len(points) < 2:
        raise ValueError("need at least two points")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    n = points[0].n
    if any(p.n != n for p in points):
        raise ValueError("points must share one ambient dimension")
    report = ConfigReport(d=d)
    exact = all(p.exact for p in points)
    if exact:
        if len(set(points)) != len(points):
            raise ValueError("points must be pairwise distinct")
        incidences = [
            LineIncidence(basis, tuple(sorted(members)))
            for basis, members in _exact_line_groups(points).items()
        ]
        for inc in incidences:
            # Every reported incidence must re-verify exactly.
            for idx in inc.points:
                stacked = [list(r) for r in inc.basis] + [list(points[idx].coords)]
                assert rank(RatMatrix.from_rows(stacked)) == 2
    else:
        incidences = [
            LineIncidence(basis, tuple(sorted(members)))
            for basis, members in _numeric_line_groups(points, tol)
        ]
    incidences.sort(key=lambda inc: (-len(inc.points), inc.points))
    for inc in incidences:
        if len(inc.points) >= d + 1:
            report.collinear_violations.append(inc)
        elif len(inc.points) == d:
            report.sharp_witnesses.append(inc)
    return report


class _CapExceeded(Exception):
    pass


class _EchelonTracker:
    """Incremental rank of a growing row list, with undo."""

    def __init__(self, exact: bool, tol: float):
        self.exact = exact
        self.tol = tol
        self._stack: list[bool] = []
        self._rows: list = []

    @property
    def rank(self) -> int:
        return len(self._rows)

    def push(self, row) -> None:
        if self.exact:
            work = list(row)
            for pivot_col, pivot_row in self._rows:
                if work[pivot_col] != 0:
                    factor = work[pivot_col] / pivot_row[pivot_col]
                    work = [a - factor * b for a, b in zip(work, pivot_row)]
            lead = next((c for c, v in enumerate(work) if v != 0), None)
            if lead is None:
                self._stack.append(False)
            else:
                self._rows.append((lead, work))
                self._stack.append(True)
        else:
            v = np.array(row, dtype=complex)
            norm = np.linalg.norm(v)
            if norm > 0:
                v = v / norm
            for u in self._rows:
                v = v - u * np.vdot(u, v)
            residual = np.linalg.norm(v)
            if residual < self.tol:
                self._stack.append(False)
            else:
                self._rows.append(v / residual)
                self._stack.append(True)

    def pop(self) -> None:
        if self._stack.pop():
            self._rows.pop()


def _format_complex_poly(coeffs, basis) -> str:
    parts = []
    for c, m in zip(coeffs, basis):
        c = complex(c)
        if abs(c) < 1e-13:
            continue
        mono = "*".join(
            f"x{i}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(m) if e
        )
        coeff = f"({c.real:.6g}{c.imag:+.6g}j)"
        parts.append(coeff + ("*" + mono if mono else ""))
    return " + ".join(parts) if parts else "0"


def curve_incidence_report(
    points: list[ProjPoint],
    d: int,
    tol: float = NUMERIC_RANK_TOL,
    extension_cap: int = 10_000_000,
) -> ConfigReport:
    """Search the plane for kd-point subsets on a common degree-k curve.

    For each k in 2..d-1, a subset of size kd lies on a degree-k curve
    exactly when its evaluation rows on the degree-k monomials are rank
    deficient; subsets are enumerated depth-first with rank pruning.  Each
    hit is reported with one interpolating curve.  Whether that curve is
    irreducible is not decided here, so hits are candidates, not verdicts.
    A cap on subset extensions turns an oversized search into an explicit
    "inconclusive" status.
    """
    if any(p.n != 2 for p in points):
        raise ValueError("curve incidence requires points in the plane (n = 2)")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    report = ConfigReport(d=d)
    exact = all(p.exact for p in points)
    extensions = 0
    for k in range(2, d):
        size = k * d
        if len(points) < size:
            continue
        kbasis = monomial_basis(3, k)
        ncoef = len(kbasis)
        if exact:
            rows = [
                [Poly.monomial(m).evaluate(p.coords) for m in kbasis] for p in points
            ]
        else:
            rows = [
                [complex(Poly.monomial(m).evaluate(p.coords)) for m in kbasis]
                for p in points
            ]
        tracker = _EchelonTracker(exact, tol)
        chosen: list[int] = []

        def record(subset: tuple[int, ...]) -> None:
            sub_rows = [rows[i] for i in subset]
            if exact:
                kern = kernel_basis(RatMatrix.from_rows(sub_rows))
                assert kern.dim >= 1
                curve = format_poly(
                    Poly(3, {m: c for m, c in zip(kbasis, kern.vectors[0]) if c})
                )
            else:
                _, sv, vh = np.linalg.svd(np.array(sub_rows, dtype=complex))
                assert sv[-1] < tol * max(sv[0], 1.0)
                curve = _format_complex_poly(vh[-1].conj(), kbasis)
            report.curve_candidates.append(
                {
                    "k": k,
                    "curve": curve,
                    "points": list(subset),
                    "irreducibility": "unchecked",
                }
            )

        def walk(start: int) -> None:
            nonlocal extensions
            if len(chosen) == size:
                record(tuple(chosen))
                return
            for idx in range(start, len(points)):
                if len(points) - idx < size - len(chosen):
                    break
                extensions += 1
                if extensions > extension_cap:
                    raise _CapExceeded
                tracker.push(rows[idx])
                if tracker.rank < ncoef:
                    chosen.append(idx)
                    walk(idx + 1)
                    chosen.pop()
                tracker.pop()

        try:
            walk(0)
        except _CapExceeded:
            report.status = "inconclusive"
            break
    return report


def full_report(
    points: list[ProjPoint], d: int, tol: float = NUMERIC_RANK_TOL
) -> ConfigReport:
    """Collinearity everywhere, plus the plane-curve search when n = 2."""
    report = collinearity_report(points, d, tol)
    if points and points[0].n == 2 and d > 2:
        curves = curve_incidence_report(points, d, tol)
        report.curve_candidates = curves.curve_candidates
        report.status = curves.status
    return report


__all__ = [
    "ConfigReport",
    "IndeterminacyError",
    "LineIncidence",
    "PluckerVector",
    "collinearity_report",
    "curve_incidence_report",
    "fiber_line",
    "full_report",
    "is_decomposable",
    "laguerre",
    "line_contains",
    "line_residual",
    "rank_A_omega",
    "wedge_rows",
]
