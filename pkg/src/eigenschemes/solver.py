"""Eigenpoint enumeration at desk scale.

Three routes: closed-form eigenpoints of power-sum forms (supports and
roots of unity), exact root splitting of the single minor on the line, and
a chart-by-chart resultant solver in the plane.  The plane solver keeps
all elimination exact (Sylvester determinants interpolated over the
rationals) and goes numeric only at the univariate root-finding step,
after which every candidate is Newton-polished and re-checked against the
full minor tuple.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import comb, isqrt, lcm

import numpy as np

from .hilbert import dimension_probe
from .linalg import RatMatrix, determinant
from .polynomials import Poly
from .tensors import (
    ProjPoint,
    PSTensor,
    SymTensor,
    determinantal_generators,
    eigenpoint_residual,
    gradient_tensor,
    point_to_json,
    w_count,
)

DEFAULT_SOLVER_TOL = 1e-8
DEDUP_TOL = 1e-6
_PREFILTER_REL = 1e-3
# Post-polish acceptance, relative to the largest minor coefficient.  Newton
# leaves simple roots near machine precision and stalls near sqrt(eps) on
# double roots, while candidates that were never roots stall close to the
# prefilter leakage (~1e-3 relative); 1e-6 splits the two regimes with two
# orders of margin on each side.
_KEEP_REL = 1e-6
_NEWTON_CAP = 25


@dataclass(frozen=True)
class EigenpointSet:
    """Solver output: points with multiplicities, residuals and status.

    statuses entries are "exact" (coordinates are rational and verified
    exactly), "polished" (numeric, Newton converged below tolerance) or
    "unpolished" (numeric, kept but above tolerance).  residuals align
    with points; None for exact entries.
    """

    points: tuple[ProjPoint, ...]
    multiplicities: tuple[int, ...]
    residuals: tuple[float | None, ...]
    statuses: tuple[str, ...]
    chart_failures: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def total_multiplicity(self) -> int:
        return sum(self.multiplicities)

    def to_json(self) -> dict:
        payload = {
            "points": [point_to_json(p) for p in self.points],
            "multiplicities": list(self.multiplicities),
            "residuals": list(self.residuals),
            "statuses": list(self.statuses),
        }
        if self.chart_failures:
            payload["chart_failures"] = list(self.chart_failures)
        return payload


def _chordal(p: ProjPoint, q: ProjPoint) -> float:
    """Sine of the angle between the coordinate vectors: 0 iff same point."""
    a = np.array([complex(c) for c in p.coords])
    b = np.array([complex(c) for c in q.coords])
    na = np.linalg.norm(a)
    nb = np.linalg.norm(b)
    cos = abs(np.vdot(a, b)) / (na * nb)
    return float(np.sqrt(max(0.0, 1.0 - min(cos, 1.0) ** 2)))


def fermat_form(n: int, d: int) -> Poly:
    """x_0^d + ... + x_n^d."""
    terms = {}
    for i in range(n + 1):
        e = [0] * (n + 1)
        e[i] = d
        terms[tuple(e)] = Fraction(1)
    return Poly(n + 1, terms)


def fermat_tensor(n: int, d: int) -> SymTensor:
    return SymTensor(n, d, fermat_form(n, d))


def fermat_eigenpoints(n: int, d: int) -> EigenpointSet:
    """All eigenpoints of the power-sum form, by support enumeration.

    On its support a solution satisfies v_i^(d-2) = 1 once the first
    nonzero coordinate is scaled to 1, so the points are indexed by a
    nonempty support and a (d-2)-th root of unity per remaining support
    position.  Exact coordinates for d in {3, 4} (roots 1 and +-1),
    floating complex ones otherwise.  The count is w(n, d).
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 3:
        raise ValueError(f"d must be >= 3, got {d}")
    exact = d in (3, 4)
    if exact:
        roots = [Fraction(1)] if d == 3 else [Fraction(1), Fraction(-1)]
    else:
        roots = [cmath.exp(2j * cmath.pi * a / (d - 2)) for a in range(d - 2)]
    points = []
    for size in range(1, n + 2):
        for support in combinations(range(n + 1), size):
            for tail in product(roots, repeat=size - 1):
                coords: list = [Fraction(0) if exact else 0j] * (n + 1)
                coords[support[0]] = Fraction(1) if exact else 1 + 0j
                for pos, value in zip(support[1:], tail):
                    coords[pos] = value
                points.append(ProjPoint(coords))
    expected = sum(
        comb(n + 1, s) * (d - 2) ** (s - 1) for s in range(1, n + 2)
    )
    assert len(points) == expected == w_count(n, d)
    tensor = gradient_tensor(fermat_tensor(n, d))
    residuals: list[float | None] = []
    statuses = []
    for p in points:
        if p.exact:
            residuals.append(None)
            statuses.append("exact")
        else:
            residuals.append(eigenpoint_residual(tensor, p))
            statuses.append("polished")
    return EigenpointSet(
        tuple(points),
        (1,) * len(points),
        tuple(residuals),
        tuple(statuses),
    )


# ---------------------------------------------------------------------
# P^1: one binary form, handled by root splitting.
# ---------------------------------------------------------------------


def _divisors(value: int, cap: int = 10**12) -> list[int] | None:
    """Positive divisors, or None when the integer is too big to factor here."""
    value = abs(value)
    if value == 0:
        raise ValueError("zero has no divisor list")
    if value > cap:
        return None
    out = []
    for small in range(1, isqrt(value) + 1):
        if value % small == 0:
            out.append(small)
            if small != value // small:
                out.append(value // small)
    return sorted(out)


def _integer_coefficients(coeffs: list[Fraction]) -> list[int]:
    scale = lcm(*(c.denominator for c in coeffs))
    return [int(c * scale) for c in coeffs]


def _rational_roots(coeffs: list[Fraction]) -> tuple[list[tuple[Fraction, int]], list[Fraction]]:
    """Split exact roots (with multiplicity) off a polynomial with c_0 != 0.

    coeffs are ascending.  Returns (roots, remaining ascending coeffs).
    Falls back to no splitting when the integer coefficients are too large
    to enumerate divisors.
    """
    work = list(coeffs)
    ints = _integer_coefficients(work)
    lead_divs = _divisors(ints[-1])
    const_divs = _divisors(ints[0])
    if lead_divs is None or const_divs is None:
        return [], work
    candidates = []
    seen = set()
    for p in const_divs:
        for q in lead_divs:
            for sign in (1, -1):
                r = Fraction(sign * p, q)
                if r not in seen:
                    seen.add(r)
                    candidates.append(r)
    found = []
    for r in sorted(candidates):
        mult = 0
        while len(work) > 1 and _eval_ascending(work, r) == 0:
            work = _deflate(work, r)
            mult += 1
        if mult:
            found.append((r, mult))
    return found, work


def _eval_ascending(coeffs, x):
    total = 0
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _deflate(coeffs: list[Fraction], root: Fraction) -> list[Fraction]:
    """Exact synthetic division by (x - root); remainder must vanish."""
    out = [Fraction(0)] * (len(coeffs) - 1)
    carry = Fraction(0)
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * root
        out[i - 1] = carry
    assert coeffs[0] + carry * root == 0
    return out


def _cluster_roots(roots: list[complex], tol: float) -> list[tuple[complex, int]]:
    """Greedy grouping of nearby roots; the group mean carries the count."""
    groups: list[list[complex]] = []
    for r in sorted(roots, key=lambda z: (z.real, z.imag)):
        for g in groups:
            if abs(r - g[0]) < tol * max(1.0, abs(g[0])):
                g.append(r)
                break
        else:
            groups.append([r])
    return [(sum(g) / len(g), len(g)) for g in groups]


def solve_eigenpoints_p1(
    t: PSTensor, tol: float = DEFAULT_SOLVER_TOL
) -> EigenpointSet:
    """All projective roots of the single minor on P^1, with multiplicity.

    Rational roots are split off exactly; whatever remains goes to the
    numpy companion-matrix root finder and is polished by Newton steps.
    """
    if t.n != 1:
        raise ValueError(f"expected n=1, got n={t.n}")
    f01 = determinantal_generators(t).entries[0]
    if f01.is_zero():
        raise ValueError("the minor vanishes identically: every point is an eigenpoint")
    d = t.d
    coeffs = [f01.coefficient((i, d - i)) for i in range(d + 1)]
    top = max(i for i, c in enumerate(coeffs) if c)
    bottom = min(i for i, c in enumerate(coeffs) if c)
    points: list[ProjPoint] = []
    mults: list[int] = []
    residuals: list[float | None] = []
    statuses: list[str] = []

    def add_exact(p: ProjPoint, m: int) -> None:
        assert f01.evaluate(p.coords) == 0
        points.append(p)
        mults.append(m)
        residuals.append(None)
        statuses.append("exact")

    if top < d:
        add_exact(ProjPoint([Fraction(1), Fraction(0)]), d - top)
    if bottom > 0:
        add_exact(ProjPoint([Fraction(0), Fraction(1)]), bottom)
    reduced = coeffs[bottom : top + 1]
    exact_roots, rest = _rational_roots(reduced)
    for r, m in exact_roots:
        add_exact(ProjPoint([r, Fraction(1)]), m)
    if len(rest) > 1:
        float_desc = _scaled_floats(list(reversed(rest)))
        raw = list(np.roots(float_desc))
        for z, m in _cluster_roots(raw, DEDUP_TOL):
            z = _newton_univariate(rest, z)
            p = ProjPoint([z, 1.0])
            points.append(p)
            mults.append(m)
            res = eigenpoint_residual(t, p)
            residuals.append(res)
            statuses.append("polished" if res < tol else "unpolished")
    assert sum(mults) == d
    return EigenpointSet(
        tuple(points), tuple(mults), tuple(residuals), tuple(statuses)
    )


def _scaled_floats(desc: list[Fraction]) -> list[float]:
    scale = max(abs(c) for c in desc if c)
    return [float(c / scale) for c in desc]


def _newton_univariate(ascending, z0: complex, steps: int = _NEWTON_CAP) -> complex:
    deriv = [c * i for i, c in enumerate(ascending)][1:]
    z = z0
    for _ in range(steps):
        f = complex(_eval_ascending(ascending, z))
        if f == 0:
            break
        df = complex(_eval_ascending(deriv, z))
        if df == 0:
            break
        step = f / df
        if abs(step) < 1e-16 * max(1.0, abs(z)):
            break
        z = z - step
    return z


# ---------------------------------------------------------------------
# P^2: exact resultant elimination per chart, numeric univariate roots.
# ---------------------------------------------------------------------


def _coefficients_in(p: Poly, var: int) -> list[Poly]:
    """p as a polynomial in x_var: list of coefficient polys, ascending."""
    top = max((m[var] for m in p.terms), default=0)
    buckets: list[dict] = [dict() for _ in range(top + 1)]
    for mono, coeff in p.terms.items():
        reduced = list(mono)
        e = reduced[var]
        reduced[var] = 0
        buckets[e][tuple(reduced)] = coeff
    return [Poly(p.nvars, b) for b in buckets]


def _sylvester_determinant_at(
    acoeffs: list[Poly], bcoeffs: list[Poly], var: int, sample: Fraction
) -> Fraction:
    """det of the Sylvester matrix of A, B (in the eliminated variable),
    with the surviving variable specialized to the sample value."""
    m1 = len(acoeffs) - 1
    m2 = len(bcoeffs) - 1
    size = m1 + m2
    avals = [_eval_poly_single(c, var, sample) for c in acoeffs]
    bvals = [_eval_poly_single(c, var, sample) for c in bcoeffs]
    rows = []
    for shift in range(m2):
        row = [Fraction(0)] * size
        for t, v in enumerate(reversed(avals)):
            row[shift + t] = v
        rows.append(row)
    for shift in range(m1):
        row = [Fraction(0)] * size
        for t, v in enumerate(reversed(bvals)):
            row[shift + t] = v
        rows.append(row)
    return determinant(RatMatrix.from_rows(rows))


def _eval_poly_single(p: Poly, var: int, value: Fraction) -> Fraction:
    total = Fraction(0)
    for mono, coeff in p.terms.items():
        total += coeff * value ** mono[var]
    return total


def _interpolate(xs: list[Fraction], ys: list[Fraction]) -> list[Fraction]:
    """Exact coefficients (ascending) of the polynomial through the samples."""
    divided = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            divided[i] = (divided[i] - divided[i - 1]) / (xs[i] - xs[i - j])
    out = [Fraction(0)] * len(xs)
    basis = [Fraction(1)]
    for i, c in enumerate(divided):
        for k, b in enumerate(basis):
            out[k] += c * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for k, b in enumerate(basis):
            nxt[k + 1] += b
            nxt[k] -= xs[i] * b
        basis = nxt
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


_CHART_PAIRS = {0: ((0, 1), (0, 2)), 1: ((0, 1), (1, 2)), 2: ((0, 2), (1, 2))}


def solve_eigenpoints_p2(
    t: PSTensor,
    tol: float = DEFAULT_SOLVER_TOL,
    dedup_tol: float = DEDUP_TOL,
) -> EigenpointSet:
    """Numeric eigenpoints in the plane via chart-wise resultants.

    Requires a finite eigenscheme (probed first).  In the chart x_c = 1
    the two minors involving x_c generate the eigenscheme ideal away from
    x_c = 0, so their resultant — computed exactly and interpolated, then
    handed to the numeric root finder — reaches every eigenpoint in some
    chart.  Candidates are filtered against the second minor, polished by
    damped Newton on the two best-conditioned minors, deduplicated across
    charts, and reported with residuals over the full tuple.
    """
    if t.n != 2:
        raise ValueError(f"expected n=2, got n={t.n}")
    ft = determinantal_generators(t)
    finite, _ = dimension_probe(ft)
    if not finite:
        raise ValueError("eigenscheme is not 0-dimensional; no finite point list exists")
    minors = {pq: ft.entry(*pq) for pq in ((0, 1), (0, 2), (1, 2))}
    failures: list[str] = []
    candidates: list[ProjPoint] = []
    for chart in range(3):
        free_vars = [v for v in range(3) if v != chart]
        avar, bvar = free_vars  # eliminate bvar, keep avar
        pa, pb = _CHART_PAIRS[chart]
        fa = minors[pa].substitute(chart, 1)
        fb = minors[pb].substitute(chart, 1)
        if fa.is_zero() or fb.is_zero():
            failures.append(f"chart {chart}: a chart minor vanishes identically")
            continue
        acoeffs = _coefficients_in(fa, bvar)
        bcoeffs = _coefficients_in(fb, bvar)
        m1, m2 = len(acoeffs) - 1, len(bcoeffs) - 1
        if m1 + m2 == 0:
            failures.append(f"chart {chart}: nothing to eliminate")
            continue
        degree_bound = (m1 + m2) * t.d
        xs = [Fraction(_sample_int(i)) for i in range(degree_bound + 1)]
        ys = [
            _sylvester_determinant_at(acoeffs, bcoeffs, avar, x) for x in xs
        ]
        if all(y == 0 for y in ys):
            failures.append(f"chart {chart}: resultant vanishes identically")
            continue
        resultant = _interpolate(xs, ys)
        roots = list(np.roots(_scaled_floats(list(reversed(resultant)))))
        chart_scale = max(
            float(abs(c)) for f in (fa, fb) for c in f.terms.values()
        )
        cut = _PREFILTER_REL * 10
        for a0 in roots:
            auni = [complex(_eval_poly_complex(c, avar, a0)) for c in acoeffs]
            buni = [complex(_eval_poly_complex(c, avar, a0)) for c in bcoeffs]
            ascale = max(abs(v) for v in auni)
            bscale = max(abs(v) for v in buni)

            def _compatible(other, oscale, z):
                # A minor whose specialization at a0 is (numerically) the
                # zero polynomial constrains nothing.
                if oscale <= 1e-6 * chart_scale:
                    return True
                return abs(_eval_ascending(other, z)) <= cut * oscale

            # Candidate second coordinates come from either specialized
            # minor; each must nearly satisfy the other one.
            pool = [
                (z, buni, bscale) for z in _univariate_roots(auni)
            ] + [
                (z, auni, ascale) for z in _univariate_roots(buni)
            ]
            for b0, other, oscale in pool:
                if not _compatible(other, oscale, b0):
                    continue
                coords = [0j, 0j, 0j]
                coords[chart] = 1 + 0j
                coords[avar] = complex(a0)
                coords[bvar] = complex(b0)
                candidates.append(ProjPoint(coords))
    polished = [_polish(minors, p) for p in candidates]
    scale = max(
        (abs(c) for f in minors.values() for c in f.terms.values()), default=1
    )
    keep: list[tuple[ProjPoint, float]] = []
    for p in polished:
        res = eigenpoint_residual(t, p)
        if res < _KEEP_REL * float(scale):
            keep.append((p, res))
    deduped: list[tuple[ProjPoint, float]] = []
    for p, res in sorted(keep, key=lambda pr: pr[1]):
        if all(_chordal(p, q) > dedup_tol for q, _ in deduped):
            deduped.append((p, res))
    deduped.sort(
        key=lambda pr: tuple(
            (round(complex(c).real, 9), round(complex(c).imag, 9))
            for c in pr[0].coords
        )
    )
    points = tuple(p for p, _ in deduped)
    residuals = tuple(res for _, res in deduped)
    statuses = tuple("polished" if r < tol else "unpolished" for r in residuals)
    return EigenpointSet(
        points,
        (1,) * len(points),
        residuals,
        statuses,
        tuple(failures),
    )


def _sample_int(i: int) -> int:
    # 0, 1, -1, 2, -2, ...
    if i == 0:
        return 0
    half = (i + 1) // 2
    return half if i % 2 else -half


def _eval_poly_complex(p: Poly, var: int, value: complex) -> complex:
    total = 0j
    for mono, coeff in p.terms.items():
        total += complex(coeff) * value ** mono[var]
    return total


def _univariate_roots(ascending: list[complex]) -> list[complex]:
    desc = list(reversed(ascending))
    scale = max((abs(c) for c in desc), default=0.0)
    if scale == 0.0:
        return []
    while desc and abs(desc[0]) < 1e-13 * scale:
        desc.pop(0)
    if len(desc) <= 1:
        return []
    return list(np.roots([c / scale for c in desc]))


def _polish(minors: dict, p: ProjPoint) -> ProjPoint:
    """Damped Newton on the two minors with the largest gradient at p.

    The chart (largest-modulus coordinate) is frozen at the start; on
    failure to improve, the best iterate so far is returned.
    """
    coords = [complex(c) for c in p.coords]
    chart = max(range(3), key=lambda i: abs(coords[i]))
    free = [v for v in range(3) if v != chart]
    ranked = sorted(
        minors.values(),
        key=lambda f: -sum(
            abs(complex(f.partial(v).evaluate(coords))) ** 2 for v in free
        ),
    )
    fs = ranked[:2]

    def residual(c) -> float:
        return max(abs(complex(f.evaluate(c))) for f in fs)

    best = list(coords)
    best_res = residual(best)
    current = list(coords)
    for _ in range(_NEWTON_CAP):
        jac = np.array(
            [[complex(f.partial(v).evaluate(current)) for v in free] for f in fs]
        )
        rhs = np.array([-complex(f.evaluate(current)) for f in fs])
        try:
            delta = np.linalg.solve(jac, rhs)
        except np.linalg.LinAlgError:
            break
        improved = False
        damping = 1.0
        while damping > 1 / 64:
            trial = list(current)
            for pos, v in enumerate(free):
                trial[v] = current[v] + damping * delta[pos]
            if residual(trial) < residual(current):
                current = trial
                improved = True
                break
            damping /= 2
        if not improved:
            break
        if residual(current) < best_res:
            best = list(current)
            best_res = residual(current)
        if best_res < 1e-15:
            break
    return ProjPoint(best)
