"""Hilbert functions of minor ideals, predicted and actual.

For a tensor with 0-dimensional eigenscheme the ideal of minors has a
known graded free resolution; its alternating sum predicts the Hilbert
function in closed binomial form.  The actual Hilbert function is computed
independently as a rank: dim (R/I)_e = dim R_e minus the rank of the
multiplication rows {m * f_ij}.  Comparing the two certifies the shape of
the resolution degree by degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .linalg import RatMatrix, rank
from .polynomials import Poly, monomial_basis
from .tensors import DetTuple


@dataclass(frozen=True)
class BettiSummand:
    """One twisted free summand R(-twist)^multiplicity."""

    twist: int
    multiplicity: int


@dataclass(frozen=True)
class BettiTable:
    """Graded free modules F_1, ..., F_n resolving the minor ideal.

    modules[i-1] lists the summands of F_i: for each j in 1..i, a summand
    R(-(j(d-2)+i+1)) with multiplicity C(n+1, i+1).
    """

    n: int
    d: int
    modules: tuple[tuple[BettiSummand, ...], ...]

    def first_betti_total(self) -> int:
        return sum(s.multiplicity for s in self.modules[0])

    def render(self) -> list[str]:
        lines = []
        for i, summands in enumerate(self.modules, start=1):
            parts = []
            for s in summands:
                sup = f"^{s.multiplicity}" if s.multiplicity != 1 else ""
                parts.append(f"R(-{s.twist}){sup}")
            lines.append(f"F_{i} = " + " + ".join(parts))
        return lines


def predicted_betti(n: int, d: int) -> BettiTable:
    """The closed-form Betti table for a 0-dimensional eigenscheme ideal."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    modules = []
    for i in range(1, n + 1):
        mult = comb(n + 1, i + 1)
        summands = tuple(
            BettiSummand(twist=j * (d - 2) + i + 1, multiplicity=mult)
            for j in range(1, i + 1)
        )
        modules.append(summands)
    return BettiTable(n, d, tuple(modules))


def predicted_hilbert(n: int, d: int, e: int) -> int:
    """dim (R/I)_e read off the resolution's alternating sum.

    Each summand R(-a) of F_i contributes (-1)^i C(n+e-a, n); the i = 0
    term is the ambient C(n+e, n).  Stabilizes to w(n,d) once e exceeds
    n(d-2).
    """
    if e < 0:
        raise ValueError(f"degree must be >= 0, got {e}")
    table = predicted_betti(n, d)

    def dim_r(t: int) -> int:
        return comb(n + t, n) if t >= 0 else 0

    total = dim_r(e)
    sign = -1
    for summands in table.modules:
        for s in summands:
            total += sign * s.multiplicity * dim_r(e - s.twist)
        sign = -sign
    return total


def actual_hilbert(ft: DetTuple, e: int) -> int:
    """dim (R/I)_e for the ideal spanned by the tuple, by exact rank.

    The degree-e slice of I is spanned by the rows m * f_ij over monomials
    m of degree e - d; for e < d that span is empty.
    """
    if e < 0:
        raise ValueError(f"degree must be >= 0, got {e}")
    n, d = ft.n, ft.d
    nvars = n + 1
    ambient = comb(n + e, n)
    if e < d or ft.is_zero():
        return ambient
    target = monomial_basis(nvars, e)
    rows = []
    for m in monomial_basis(nvars, e - d):
        shift = Poly.monomial(m)
        for f in ft.entries:
            if f.is_zero():
                continue
            rows.append((shift * f).coefficients_on(target))
    if not rows:
        return ambient
    return ambient - rank(RatMatrix.from_rows(rows))


def stabilization_degree(n: int, d: int) -> int:
    """First degree at which the predicted Hilbert function is constant."""
    return n * (d - 2) + 1


def dimension_probe(ft: DetTuple) -> tuple[bool, int | None]:
    """Whether the tuple cuts out a 0-dimensional scheme, and its degree.

    Samples the actual Hilbert function at the stabilization degree and one
    past it; equality there means the function has flattened onto the
    degree of a finite scheme.
    """
    e_star = stabilization_degree(ft.n, ft.d)
    first = actual_hilbert(ft, e_star)
    second = actual_hilbert(ft, e_star + 1)
    if first == second:
        return True, first
    return False, None


@dataclass(frozen=True)
class HilbertRecord:
    e: int
    predicted: int
    actual: int

    @property
    def agree(self) -> bool:
        return self.predicted == self.actual


def hilbert_table(ft: DetTuple, window: int | None = None) -> list[HilbertRecord]:
    """Predicted-versus-actual comparison for e in [0, window].

    The default window is n(d-2)+2: one degree past stabilization, so both
    the transient and the flat value w(n,d) are exercised.
    """
    if window is None:
        window = stabilization_degree(ft.n, ft.d) + 1
    if window < 0:
        raise ValueError(f"window must be >= 0, got {window}")
    return [
        HilbertRecord(e, predicted_hilbert(ft.n, ft.d, e), actual_hilbert(ft, e))
        for e in range(window + 1)
    ]
