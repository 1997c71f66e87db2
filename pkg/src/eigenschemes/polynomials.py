"""Sparse multivariate polynomials with exact rational coefficients.

A polynomial lives in Q[x_0, ..., x_{nvars-1}] and is stored as a mapping
from exponent tuples to nonzero Fraction coefficients.  The zero polynomial
is the empty mapping (the variable count is kept explicitly, so degree
bookkeeping stays well defined).

All term ordering is graded reverse lexicographic (grevlex), fixed once so
that printing, monomial bases and linear-system assembly are deterministic
across runs.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

Exponent = tuple[int, ...]

_Rat = int | Fraction


def grevlex_key(exponents: Exponent) -> tuple:
    """Sort key whose ascending order is ascending grevlex.

    Two monomials compare first by total degree; ties are broken so that the
    rightmost differing exponent decides, with the larger exponent losing.
    """
    return (sum(exponents), tuple(-e for e in reversed(exponents)))


def monomial_degree(exponents: Exponent) -> int:
    return sum(exponents)


def monomial_basis(nvars: int, degree: int) -> list[Exponent]:
    """All exponent tuples of the given total degree, descending grevlex.

    The result has exactly C(nvars - 1 + degree, degree) entries.
    """
    if nvars < 1:
        raise ValueError(f"nvars must be >= 1, got {nvars}")
    if degree < 0:
        raise ValueError(f"degree must be >= 0, got {degree}")
    # Stars and bars: positions of the bars determine the exponent tuple.
    monos = []
    for bars in combinations(range(degree + nvars - 1), nvars - 1):
        exps = []
        prev = -1
        for b in bars:
            exps.append(b - prev - 1)
            prev = b
        exps.append(degree + nvars - 2 - prev)
        monos.append(tuple(exps))
    monos.sort(key=grevlex_key, reverse=True)
    assert len(monos) == comb(nvars - 1 + degree, degree)
    return monos


class Poly:
    """Immutable sparse polynomial over the rationals.

    ``terms`` maps exponent tuples (one entry per variable) to nonzero
    coefficients.  Instances should be treated as frozen; all arithmetic
    returns new objects.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[Exponent, _Rat] | None = None):
        if nvars < 1:
            raise ValueError(f"nvars must be >= 1, got {nvars}")
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                if len(mono) != nvars:
                    raise ValueError(
                        f"monomial {mono} has {len(mono)} exponents, expected {nvars}"
                    )
                if any(e < 0 for e in mono):
                    raise ValueError(f"negative exponent in monomial {mono}")
                c = Fraction(coeff)
                if c != 0:
                    clean[tuple(mono)] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, value: _Rat) -> "Poly":
        return cls(nvars, {(0,) * nvars: Fraction(value)})

    @classmethod
    def variable(cls, nvars: int, index: int) -> "Poly":
        if not 0 <= index < nvars:
            raise ValueError(f"variable index {index} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, exponents: Sequence[int], coeff: _Rat = 1) -> "Poly":
        return cls(len(exponents), {tuple(exponents): Fraction(coeff)})

    # -- predicates and bookkeeping -----------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(monomial_degree(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        """True for the zero polynomial and for single-degree polynomials."""
        degrees = {monomial_degree(m) for m in self.terms}
        return len(degrees) <= 1

    def homogeneous_degree(self) -> int | None:
        """The common degree of all terms, or None if zero or mixed."""
        degrees = {monomial_degree(m) for m in self.terms}
        if len(degrees) == 1:
            return degrees.pop()
        return None

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in descending grevlex order (the canonical order)."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def coefficient(self, exponents: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exponents), Fraction(0))

    def coefficients_on(self, basis: Sequence[Exponent]) -> list[Fraction]:
        """Coefficient vector with respect to an explicit monomial basis.

        Raises if the polynomial has a term outside the basis, which would
        silently drop data when assembling linear systems.
        """
        index = {m: k for k, m in enumerate(basis)}
        vec = [Fraction(0)] * len(basis)
        for mono, coeff in self.terms.items():
            if mono not in index:
                raise ValueError(f"term {mono} not spanned by the given basis")
            vec[index[mono]] = coeff
        return vec

    # -- arithmetic ---------------------------------------------------

    def _check_compatible(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(
                f"variable count mismatch: {self.nvars} vs {other.nvars}"
            )

    def __add__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, Fraction(0)) + coeff
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return Poly(self.nvars, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "Poly") -> "Poly":
        self._check_compatible(other)
        out: dict[Exponent, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return Poly(self.nvars, out)

    def scale(self, factor: _Rat) -> "Poly":
        f = Fraction(factor)
        if f == 0:
            return Poly.zero(self.nvars)
        return Poly(self.nvars, {m: c * f for m, c in self.terms.items()})

    def __pow__(self, exponent: int) -> "Poly":
        if exponent < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = Poly.constant(self.nvars, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def partial(self, index: int) -> "Poly":
        """Formal partial derivative with respect to x_index."""
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range for nvars={self.nvars}")
        out: dict[Exponent, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[index]
            if e == 0:
                continue
            new = list(mono)
            new[index] = e - 1
            out[tuple(new)] = coeff * e
        return Poly(self.nvars, out)

    def substitute(self, index: int, value: _Rat) -> "Poly":
        """Replace x_index by a rational constant.

        The variable count is unchanged; the substituted variable simply no
        longer occurs.
        """
        if not 0 <= index < self.nvars:
            raise ValueError(f"variable index {index} out of range for nvars={self.nvars}")
        v = Fraction(value)
        out: dict[Exponent, Fraction] = {}
        for mono, coeff in self.terms.items():
            e = mono[index]
            scaled = coeff * v**e if e else coeff
            if scaled == 0:
                continue
            new = list(mono)
            new[index] = 0
            key = tuple(new)
            acc = out.get(key, Fraction(0)) + scaled
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
        return Poly(self.nvars, out)

    def evaluate(self, point: Sequence):
        """Evaluate at a point.

        Rational coordinates (int/Fraction) give an exact Fraction; any
        float or complex coordinate switches to complex arithmetic.
        """
        if len(point) != self.nvars:
            raise ValueError(
                f"point has {len(point)} coordinates, expected {self.nvars}"
            )
        exact = all(isinstance(c, (int, Fraction)) for c in point)
        if exact:
            total = Fraction(0)
            for mono, coeff in self.terms.items():
                term = coeff
                for c, e in zip(point, mono):
                    if e:
                        term *= Fraction(c) ** e
                total += term
            return total
        coords = [complex(c) for c in point]
        acc = 0j
        for mono, coeff in self.terms.items():
            term = complex(coeff)
            for c, e in zip(coords, mono):
                if e:
                    term *= c**e
            acc += term
        return acc

    # -- comparisons and hashing --------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponent, Fraction]]:
        return iter(self.sorted_terms())

    # -- text form ----------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({self.nvars}, {format_poly(self)!r})"


def poly_sum(polys: Iterable[Poly], nvars: int | None = None) -> Poly:
    total: Poly | None = None
    for p in polys:
        total = p if total is None else total + p
    if total is None:
        if nvars is None:
            raise ValueError("cannot sum an empty sequence without nvars")
        return Poly.zero(nvars)
    return total


# ---------------------------------------------------------------------
# Text format: signed sum of terms  c*x0^a0*x1^a1*...
# The parser accepts omitted '*' and '^1'; the printer always emits the
# canonical descending-grevlex form with explicit '*' between factors.
# ---------------------------------------------------------------------

_TERM_SPLIT = re.compile(r"(?=[+-])")
_COEFF = re.compile(r"^([+-]?)(\d+(?:/\d+)?)?")
_FACTOR = re.compile(r"\*?x(\d+)(?:\^(\d+))?")


def format_poly(p: Poly) -> str:
    if not p.terms:
        return "0"
    parts: list[str] = []
    for mono, coeff in p.sorted_terms():
        factors = "*".join(
            f"x{i}^{e}" if e > 1 else f"x{i}" for i, e in enumerate(mono) if e
        )
        mag = abs(coeff)
        if not factors:
            body = str(mag)
        elif mag == 1:
            body = factors
        else:
            body = f"{mag}*{factors}"
        if not parts:
            parts.append(body if coeff > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if coeff > 0 else '-'} {body}")
    return " ".join(parts)


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse the textual polynomial format.

    Accepted terms look like ``3*x0^2*x1``, ``-1/2x2^3``, ``x1`` or ``7``;
    whitespace is ignored and ``*`` / ``^1`` may be omitted.
    """
    compact = text.replace(" ", "").replace("\t", "")
    if not compact:
        raise ValueError("empty polynomial string")
    terms: dict[Exponent, Fraction] = {}
    for chunk in _TERM_SPLIT.split(compact):
        if not chunk or chunk in "+-":
            if chunk:
                raise ValueError(f"dangling sign in {text!r}")
            continue
        m = _COEFF.match(chunk)
        assert m is not None
        sign = -1 if m.group(1) == "-" else 1
        coeff = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        rest = chunk[m.end() :]
        if rest.startswith("*"):
            if m.group(2) is None:
                raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
            rest = rest[1:]
        exps = [0] * nvars
        pos = 0
        while pos < len(rest):
            fm = _FACTOR.match(rest, pos)
            if fm is None:
                raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
            idx = int(fm.group(1))
            if idx >= nvars:
                raise ValueError(
                    f"variable x{idx} out of range for nvars={nvars} in {text!r}"
                )
            exps[idx] += int(fm.group(2)) if fm.group(2) else 1
            pos = fm.end()
        if m.group(2) is None and pos == 0:
            raise ValueError(f"cannot parse term {chunk!r} in {text!r}")
        mono = tuple(exps)
        terms[mono] = terms.get(mono, Fraction(0)) + sign * coeff
    return Poly(nvars, terms)
