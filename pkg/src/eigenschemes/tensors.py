"""Tensors, their determinantal generators, and projective points.

A partially symmetric tensor of order d on P^n is a tuple of n+1
homogeneous forms of degree d-1; a symmetric tensor is a single degree-d
form whose gradient supplies that tuple.  The eigenscheme of a tensor is
cut out by the 2x2 minors of the matrix with rows (x_0, ..., x_n) and
(g_0, ..., g_n); those minors are the determinantal generators handled
here.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .linalg import RatMatrix, invert, solve
from .polynomials import Poly, monomial_basis, parse_poly

DEFAULT_MEMBERSHIP_TOL = 1e-9


def pair_index(n: int) -> list[tuple[int, int]]:
    """Canonical (lexicographic) order of the index pairs 0 <= i < j <= n."""
    return [(i, j) for i in range(n + 1) for j in range(i + 1, n + 1)]


def triple_index(n: int) -> list[tuple[int, int, int]]:
    return [
        (i, j, k)
        for i in range(n + 1)
        for j in range(i + 1, n + 1)
        for k in range(j + 1, n + 1)
    ]


def w_count(n: int, d: int) -> int:
    """Number of eigenpoints of a general order-d tensor on P^n.

    Equals the geometric series sum_{i=0}^{n} (d-1)^i, i.e.
    ((d-1)^(n+1) - 1) / (d-2) for d >= 3, and n+1 for d = 2.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    if d == 2:
        return n + 1
    value, remainder = divmod((d - 1) ** (n + 1) - 1, d - 2)
    assert remainder == 0
    return value


class ProjPoint:
    """Point of P^n with exact rational or complex floating coordinates.

    Rational points are normalized so the first nonzero coordinate is 1;
    complex points so the largest-modulus coordinate is 1 (first such index
    on ties).
    """

    __slots__ = ("coords", "exact")

    def __init__(self, coords: Sequence):
        vals = list(coords)
        if not vals:
            raise ValueError("empty coordinate vector")
        exact = all(isinstance(c, (int, Fraction)) for c in vals)
        if exact:
            rat = [Fraction(c) for c in vals]
            lead = next((c for c in rat if c != 0), None)
            if lead is None:
                raise ValueError("the zero vector is not a projective point")
            norm: list = [c / lead for c in rat]
        else:
            cx = [complex(c) for c in vals]
            mods = [abs(c) for c in cx]
            top = max(mods)
            if top == 0:
                raise ValueError("the zero vector is not a projective point")
            lead_idx = mods.index(top)
            norm = [c / cx[lead_idx] for c in cx]
        object.__setattr__(self, "coords", tuple(norm))
        object.__setattr__(self, "exact", exact)

    def __setattr__(self, name, value):
        raise AttributeError("ProjPoint is immutable")

    @property
    def n(self) -> int:
        return len(self.coords) - 1

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProjPoint):
            return NotImplemented
        return self.exact == other.exact and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.exact, self.coords))

    def __repr__(self) -> str:
        inner = " : ".join(str(c) for c in self.coords)
        return f"({inner})"


def _check_form(form: Poly, nvars: int, degree: int, what: str) -> None:
    if form.nvars != nvars:
        raise ValueError(f"{what} has {form.nvars} variables, expected {nvars}")
    if not form.is_zero() and form.homogeneous_degree() != degree:
        raise ValueError(f"{what} is not homogeneous of degree {degree}: {form}")


@dataclass(frozen=True)
class PSTensor:
    """Partially symmetric tensor as forms (g_0, ..., g_n) of degree d-1."""

    n: int
    d: int
    forms: tuple[Poly, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        if len(self.forms) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} forms, got {len(self.forms)}")
        for k, g in enumerate(self.forms):
            _check_form(g, self.n + 1, self.d - 1, f"g_{k}")

    @classmethod
    def from_forms(cls, forms: Sequence[Poly], d: int | None = None) -> "PSTensor":
        forms = tuple(forms)
        n = len(forms) - 1
        if d is None:
            degrees = {g.homogeneous_degree() for g in forms if not g.is_zero()}
            if len(degrees) != 1:
                raise ValueError("cannot infer d: forms are zero or of mixed degree")
            d = degrees.pop() + 1
        return cls(n, d, forms)

    def scale(self, c) -> "PSTensor":
        return PSTensor(self.n, self.d, tuple(g.scale(c) for g in self.forms))


@dataclass(frozen=True)
class SymTensor:
    """Symmetric tensor, identified with one homogeneous form of degree d."""

    n: int
    d: int
    f: Poly

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"d must be >= 2, got {self.d}")
        _check_form(self.f, self.n + 1, self.d, "f")

    @classmethod
    def from_form(cls, f: Poly, d: int | None = None) -> "SymTensor":
        if d is None:
            d = f.homogeneous_degree()
            if d is None:
                raise ValueError("cannot infer d from a zero or mixed form")
        return cls(f.nvars - 1, d, f)


@dataclass(frozen=True)
class DetTuple:
    """Candidate determinantal generators (f_ij : 0 <= i < j <= n)."""

    n: int
    d: int
    entries: tuple[Poly, ...]  # aligned with pair_index(n)

    def __post_init__(self):
        pairs = pair_index(self.n)
        if len(self.entries) != len(pairs):
            raise ValueError(
                f"expected {len(pairs)} entries for n={self.n}, got {len(self.entries)}"
            )
        for (i, j), f in zip(pairs, self.entries):
            _check_form(f, self.n + 1, self.d, f"f_{i}{j}")

    def entry(self, i: int, j: int) -> Poly:
        """f_ij for i < j; the antisymmetric extension -f_ji for i > j."""
        if i == j:
            return Poly.zero(self.n + 1)
        if i < j:
            return self.entries[pair_index(self.n).index((i, j))]
        return -self.entries[pair_index(self.n).index((j, i))]

    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.entries)

    def scale(self, c) -> "DetTuple":
        return DetTuple(self.n, self.d, tuple(f.scale(c) for f in self.entries))


def gradient_tensor(t: SymTensor) -> PSTensor:
    """The tuple of partial derivatives of a symmetric tensor."""
    return PSTensor(t.n, t.d, tuple(t.f.partial(i) for i in range(t.n + 1)))


def determinantal_generators(t: PSTensor | SymTensor) -> DetTuple:
    """The 2x2 minors f_ij = x_i g_j - x_j g_i, in canonical pair order.

    A symmetric tensor is treated through its gradient tuple.
    """
    if isinstance(t, SymTensor):
        t = gradient_tensor(t)
    nvars = t.n + 1
    xs = [Poly.variable(nvars, i) for i in range(nvars)]
    entries = [
        xs[i] * t.forms[j] - xs[j] * t.forms[i] for i, j in pair_index(t.n)
    ]
    return DetTuple(t.n, t.d, tuple(entries))


def eigenpoint_residual(t: PSTensor | SymTensor, point: ProjPoint) -> float:
    """max |f_ij(P)| over the determinantal generators, at the normalized P."""
    if point.n != t.n:
        raise ValueError(f"point lives in P^{point.n}, tensor in P^{t.n}")
    worst = 0.0
    for f in determinantal_generators(t).entries:
        worst = max(worst, abs(complex(f.evaluate(point.coords))))
    return worst


def is_eigenpoint(
    t: PSTensor | SymTensor, point: ProjPoint, tol: float = DEFAULT_MEMBERSHIP_TOL
) -> bool:
    """Whether P lies in the eigenscheme of the tensor.

    Exact test for rational points; for complex points the residual of the
    normalized representative is compared against ``tol``.
    """
    if point.n != t.n:
        raise ValueError(f"point lives in P^{point.n}, tensor in P^{t.n}")
    if point.exact:
        gens = determinantal_generators(t)
        return all(f.evaluate(point.coords) == 0 for f in gens.entries)
    return eigenpoint_residual(t, point) < tol


def same_determinantal_equations(
    t: PSTensor, t2: PSTensor
) -> tuple[Fraction, Poly] | None:
    """Witness (c, h) with g'_k = c g_k + x_k h for all k, if one exists.

    Such a witness exists exactly when the two tensors have proportional
    determinantal generators (constant c); h ranges over forms of degree
    d-2.  Returns the deterministic particular solution of the underlying
    linear system, or None when it is inconsistent.
    """
    if (t.n, t.d) != (t2.n, t2.d):
        raise ValueError("tensors must share n and d")
    n, d = t.n, t.d
    nvars = n + 1
    hbasis = monomial_basis(nvars, d - 2)
    gbasis = monomial_basis(nvars, d - 1)
    # Unknowns: [c] + coefficients of h on hbasis.
    ncols = 1 + len(hbasis)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for k in range(nvars):
        for mono in gbasis:
            row = [Fraction(0)] * ncols
            row[0] = t.forms[k].coefficient(mono)
            if mono[k] >= 1:
                lowered = list(mono)
                lowered[k] -= 1
                row[1 + hbasis.index(tuple(lowered))] = Fraction(1)
            rows.append(row)
            rhs.append(t2.forms[k].coefficient(mono))
    sol = solve(RatMatrix.from_rows(rows), rhs)
    if sol is None:
        return None
    c = sol[0]
    h = Poly(nvars, {m: sol[1 + idx] for idx, m in enumerate(hbasis)})
    return c, h


def normalize_matrix(
    linear_forms: Sequence[Poly], second_row: Sequence[Poly]
) -> PSTensor | None:
    """Rewrite a 2x(n+1) matrix with independent linear first row as a tensor.

    If the linear forms l_0, ..., l_n are independent, right multiplication
    by a constant invertible matrix turns the first row into (x_0, ..., x_n);
    the transformed second row is returned as a tensor whose determinantal
    generators cut out the same scheme.  Returns None when the l_i are
    dependent.
    """
    ls = list(linear_forms)
    hs = list(second_row)
    if len(ls) != len(hs):
        raise ValueError("rows must have equal length")
    nvars = len(ls)
    n = nvars - 1
    degrees = {h.homogeneous_degree() for h in hs if not h.is_zero()}
    if len(degrees) > 1:
        raise ValueError("second-row forms have mixed degrees")
    dminus1 = degrees.pop() if degrees else 1
    for k, l in enumerate(ls):
        _check_form(l, nvars, 1, f"l_{k}")
    # Coefficient matrix A with A[i][j] = coefficient of x_j in l_i.
    unit = monomial_basis(nvars, 1)
    a = RatMatrix.from_rows(
        [[l.coefficient(m) for m in unit] for l in ls]
    )
    b = invert(a.transpose())
    if b is None:
        return None
    new_forms = []
    for j in range(nvars):
        acc = Poly.zero(nvars)
        for i in range(nvars):
            coeff = b.entries[i][j]
            if coeff:
                acc = acc + hs[i].scale(coeff)
        new_forms.append(acc)
    return PSTensor(n, dminus1 + 1, tuple(new_forms))


def random_ps_tensor(n: int, d: int, seed: int, bound: int = 20) -> PSTensor:
    """Tensor with independent uniform integer coefficients in [-bound, bound]."""
    rng = random.Random(seed)
    nvars = n + 1
    basis = monomial_basis(nvars, d - 1)
    forms = []
    for _ in range(nvars):
        terms = {m: rng.randint(-bound, bound) for m in basis}
        forms.append(Poly(nvars, terms))
    return PSTensor(n, d, tuple(forms))


def random_sym_tensor(n: int, d: int, seed: int, bound: int = 20) -> SymTensor:
    rng = random.Random(seed)
    nvars = n + 1
    basis = monomial_basis(nvars, d)
    f = Poly(nvars, {m: rng.randint(-bound, bound) for m in basis})
    return SymTensor(n, d, f)


# ---------------------------------------------------------------------
# JSON interchange for tensors and points.
# ---------------------------------------------------------------------


def tensor_to_json(t: PSTensor | SymTensor) -> dict:
    if isinstance(t, SymTensor):
        return {"n": t.n, "d": t.d, "kind": "symmetric", "forms": [str(t.f)]}
    return {
        "n": t.n,
        "d": t.d,
        "kind": "partially_symmetric",
        "forms": [str(g) for g in t.forms],
    }


def tensor_from_json(payload: dict) -> PSTensor | SymTensor:
    try:
        n = int(payload["n"])
        d = int(payload["d"])
        kind = payload["kind"]
        forms = payload["forms"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed tensor payload: {exc}") from exc
    if kind == "symmetric":
        if len(forms) != 1:
            raise ValueError("symmetric tensors carry exactly one form")
        return SymTensor(n, d, parse_poly(forms[0], n + 1))
    if kind == "partially_symmetric":
        if len(forms) != n + 1:
            raise ValueError(f"expected {n + 1} forms, got {len(forms)}")
        return PSTensor(n, d, tuple(parse_poly(s, n + 1) for s in forms))
    raise ValueError(f"unknown tensor kind {kind!r}")


def point_to_json(p: ProjPoint) -> list:
    if p.exact:
        return [str(c) for c in p.coords]
    return [[c.real, c.imag] for c in p.coords]


def point_from_json(payload: Sequence) -> ProjPoint:
    coords: list = []
    for c in payload:
        if isinstance(c, str):
            coords.append(Fraction(c))
        elif isinstance(c, int):
            coords.append(Fraction(c))
        elif isinstance(c, (list, tuple)) and len(c) == 2:
            coords.append(complex(float(c[0]), float(c[1])))
        elif isinstance(c, float):
            coords.append(complex(c, 0.0))
        else:
            raise ValueError(f"bad coordinate {c!r}")
    return ProjPoint(coords)


def trivial_family_dimension(n: int, d: int, symmetric: bool) -> int:
    """Dimension of the family of tensors with identically zero minors.

    Partially symmetric: the tuples (x_0 h, ..., x_n h) with h of degree
    d-2.  Symmetric: the span of (x_0^2 + ... + x_n^2)^(d/2) when d is
    even, nothing when d is odd.
    """
    if symmetric:
        return 1 if d % 2 == 0 else 0
    return comb(n + d - 2, n)
