"""Deciding which form tuples are determinantal, and recovering tensors.

The membership tests are polynomial identities: a nonzero tuple (f_ij) is
the tuple of 2x2 minors of some tensor exactly when the syzygies
x_i f_jk - x_j f_ik + x_k f_ij vanish, and comes from a gradient exactly
when the derivative identities d_i f_jk - d_j f_ik + d_k f_ij vanish as
well.  Recovery inverts the minor map; because every coefficient equation
of that map relates at most two unknown coefficients, the linear systems
are solved by relation propagation instead of dense elimination.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .linalg import RatMatrix, determinant, kernel_basis, rank
from .polynomials import Exponent, Poly, monomial_basis
from .tensors import (
    DetTuple,
    ProjPoint,
    PSTensor,
    SymTensor,
    determinantal_generators,
    gradient_tensor,
    pair_index,
    triple_index,
    trivial_family_dimension,
)


def koszul_check(ft: DetTuple) -> bool:
    """Whether x_i f_jk - x_j f_ik + x_k f_ij = 0 for all i < j < k.

    Vacuously true for n = 1.
    """
    nvars = ft.n + 1
    xs = [Poly.variable(nvars, i) for i in range(nvars)]
    for i, j, k in triple_index(ft.n):
        syzygy = xs[i] * ft.entry(j, k) - xs[j] * ft.entry(i, k) + xs[k] * ft.entry(i, j)
        if not syzygy.is_zero():
            return False
    return True


def derham_check(ft: DetTuple) -> bool:
    """Whether d_i f_jk - d_j f_ik + d_k f_ij = 0 for all i < j < k."""
    for i, j, k in triple_index(ft.n):
        witness = (
            ft.entry(j, k).partial(i)
            - ft.entry(i, k).partial(j)
            + ft.entry(i, j).partial(k)
        )
        if not witness.is_zero():
            return False
    return True


class TwoTermSolver:
    """Exact solver for linear systems with at most two unknowns per equation.

    Each equation a*x + b*y = c links x and y affinely, so the system is a
    union-find forest whose edges carry relations x = s*root + t.  Adding
    all equations takes near-linear time; afterwards every variable is
    either pinned, expressed through a free class representative, or
    untouched (free on its own).
    """

    def __init__(self):
        self._parent: dict = {}
        self._weight: dict = {}  # var -> (s, t): var = s * parent + t
        self._value: dict = {}  # root -> pinned value
        self.consistent = True

    def touch(self, x) -> None:
        if x not in self._parent:
            self._parent[x] = x
            self._weight[x] = (Fraction(1), Fraction(0))

    def _find(self, x) -> tuple:
        """Root of x's class and (s, t) with x = s*root + t; compresses paths."""
        self.touch(x)
        chain = []
        while self._parent[x] != x:
            chain.append(x)
            x = self._parent[x]
        root = x
        s, t = Fraction(1), Fraction(0)
        for node in reversed(chain):
            sn, tn = self._weight[node]
            s, t = sn * s, sn * t + tn
            self._parent[node] = root
            self._weight[node] = (s, t)
        return root, s, t

    def _pin_root(self, root, value: Fraction) -> None:
        known = self._value.get(root)
        if known is None:
            self._value[root] = value
        elif known != value:
            self.consistent = False

    def add_equation(self, terms, rhs) -> None:
        """Record sum(coeff * var) = rhs; terms has at most two entries."""
        combined: dict = {}
        for var, coeff in terms:
            c = combined.get(var, Fraction(0)) + Fraction(coeff)
            if c:
                combined[var] = c
            else:
                combined.pop(var, None)
        rhs = Fraction(rhs)
        items = list(combined.items())
        if not items:
            if rhs != 0:
                self.consistent = False
            return
        if len(items) == 1:
            (var, a), = items
            root, s, t = self._find(var)
            # a*(s*root + t) = rhs
            self._pin_root(root, (rhs / a - t) / s)
            return
        if len(items) != 2:
            raise ValueError("equation involves more than two unknowns")
        (va, a), (vb, b) = items
        ra, sa, ta = self._find(va)
        rb, sb, tb = self._find(vb)
        c = rhs - a * ta - b * tb
        if ra == rb:
            coeff = a * sa + b * sb
            if coeff == 0:
                if c != 0:
                    self.consistent = False
            else:
                self._pin_root(ra, c / coeff)
            return
        # Attach rb below ra: rb = s*ra + t.
        s = -(a * sa) / (b * sb)
        t = c / (b * sb)
        self._parent[rb] = ra
        self._weight[rb] = (s, t)
        pinned = self._value.pop(rb, None)
        if pinned is not None:
            if s == 0:
                if pinned != t:
                    self.consistent = False
            else:
                self._pin_root(ra, (pinned - t) / s)

    def free_roots(self) -> list:
        """Unpinned class representatives, in first-touched order."""
        seen = []
        for var in self._parent:
            root, _, _ = self._find(var)
            if root not in self._value and root not in seen:
                seen.append(root)
        return seen

    def solution(self, free_values: dict | None = None) -> dict | None:
        """Values for every touched variable; free classes default to 0."""
        if not self.consistent:
            return None
        free_values = free_values or {}
        out = {}
        for var in self._parent:
            root, s, t = self._find(var)
            base = self._value.get(root)
            if base is None:
                base = Fraction(free_values.get(root, 0))
            out[var] = s * base + t
        return out


def _minor_coefficient_equations(n: int, d: int, symmetric: bool):
    """Equations expressing "the minors of the unknown tensor equal (f_ij)".

    Yields (pair position, monomial b, [(unknown, coeff), ...]) where the
    unknowns index coefficients of the sought tensor: (k, m) for the tuple
    case, m alone for the single-form case.  Every equation touches at most
    two unknowns.
    """
    pairs = pair_index(n)
    target = monomial_basis(n + 1, d)
    for pos, (i, j) in enumerate(pairs):
        for b in target:
            terms = []
            if symmetric:
                # coefficient of x^b in x_i d_j(f) - x_j d_i(f)
                if b[i] >= 1:
                    m = list(b)
                    m[i] -= 1
                    m[j] += 1
                    terms.append((tuple(m), Fraction(b[j] + 1)))
                if b[j] >= 1:
                    m = list(b)
                    m[j] -= 1
                    m[i] += 1
                    terms.append((tuple(m), Fraction(-(b[i] + 1))))
            else:
                # coefficient of x^b in x_i g_j - x_j g_i
                if b[i] >= 1:
                    m = list(b)
                    m[i] -= 1
                    terms.append(((j, tuple(m)), Fraction(1)))
                if b[j] >= 1:
                    m = list(b)
                    m[j] -= 1
                    terms.append(((i, tuple(m)), Fraction(-1)))
            yield pos, b, terms


def _solve_minor_system(ft: DetTuple, symmetric: bool) -> dict | None:
    """Propagation solve of the recovery system, with nonzero fallback.

    Returns a full assignment of tensor coefficients, preferring the
    all-free-classes-zero particular solution; when that is identically
    zero but free classes exist, the first free class is set to 1 so the
    zero tuple recovers a nonzero member of its solution family.
    """
    n, d = ft.n, ft.d
    solver = TwoTermSolver()
    if symmetric:
        for m in monomial_basis(n + 1, d):
            solver.touch(m)
    else:
        for k in range(n + 1):
            for m in monomial_basis(n + 1, d - 1):
                solver.touch((k, m))
    for pos, b, terms in _minor_coefficient_equations(n, d, symmetric):
        solver.add_equation(terms, ft.entries[pos].coefficient(b))
        if not solver.consistent:
            return None
    assignment = solver.solution()
    if assignment is None:
        return None
    if all(v == 0 for v in assignment.values()):
        free = solver.free_roots()
        if free:
            assignment = solver.solution({free[0]: Fraction(1)})
    return assignment


def recover_partially_symmetric(ft: DetTuple) -> PSTensor | None:
    """A tensor whose minors reproduce the tuple exactly, or None.

    The solution is unique up to the family (x_0 h, ..., x_n h); the
    propagation order makes the returned representative deterministic.  The
    result is certified by recomputing its minors, so a structurally
    consistent but wrong assignment can never escape.
    """
    assignment = _solve_minor_system(ft, symmetric=False)
    if assignment is None:
        return None
    nvars = ft.n + 1
    forms = []
    for k in range(nvars):
        terms = {
            m: assignment[(k, m)]
            for m in monomial_basis(nvars, ft.d - 1)
            if assignment[(k, m)]
        }
        forms.append(Poly(nvars, terms))
    candidate = PSTensor(ft.n, ft.d, tuple(forms))
    if determinantal_generators(candidate).entries != ft.entries:
        return None
    return candidate


def recover_symmetric(ft: DetTuple) -> SymTensor | None:
    """A single form whose gradient minors reproduce the tuple, or None."""
    assignment = _solve_minor_system(ft, symmetric=True)
    if assignment is None:
        return None
    nvars = ft.n + 1
    f = Poly(nvars, {m: c for m, c in assignment.items() if c})
    candidate = SymTensor(ft.n, ft.d, f)
    gens = determinantal_generators(gradient_tensor(candidate))
    if gens.entries != ft.entries:
        return None
    return candidate


@dataclass(frozen=True)
class CharacterizationVerdict:
    """Outcome of the identity tests plus the certified recovery, if any."""

    koszul_ok: bool
    derham_ok: bool
    recovered: PSTensor | SymTensor | None


def check_equations(ft: DetTuple) -> CharacterizationVerdict:
    """Classify a tuple and, when possible, produce a generating tensor.

    Both identity tests run first; a symmetric recovery is attempted when
    both pass, falling back to the tuple recovery when only the syzygy test
    passes.  For n = 1 both tests are vacuous and recovery itself decides.
    """
    koszul_ok = koszul_check(ft)
    derham_ok = derham_check(ft)
    recovered: PSTensor | SymTensor | None = None
    if koszul_ok and derham_ok:
        recovered = recover_symmetric(ft)
    if recovered is None and koszul_ok:
        recovered = recover_partially_symmetric(ft)
    return CharacterizationVerdict(koszul_ok, derham_ok, recovered)


# ---------------------------------------------------------------------
# Change-of-basis search.
# ---------------------------------------------------------------------


def _symbolic_determinant(entries: list[list[Poly]]) -> Poly:
    """Determinant of a square matrix of polynomials.

    Laplace expansion along the first remaining row, memoized on the
    surviving column set, so the cost is O(size * 2^size) products.
    """
    size = len(entries)
    nvars = entries[0][0].nvars
    cache: dict[tuple[int, ...], Poly] = {}

    def minor(cols: tuple[int, ...]) -> Poly:
        if not cols:
            return Poly.constant(nvars, 1)
        if cols in cache:
            return cache[cols]
        row = size - len(cols)
        acc = Poly.zero(nvars)
        for pos, col in enumerate(cols):
            entry = entries[row][col]
            if entry.is_zero():
                continue
            rest = cols[:pos] + cols[pos + 1 :]
            term = entry * minor(rest)
            acc = acc + term if pos % 2 == 0 else acc - term
        cache[cols] = acc
        return acc

    return minor(tuple(range(size)))


def _nonzero_sample(det: Poly) -> list[Fraction]:
    """A rational point where a nonzero polynomial does not vanish.

    Substitutes one variable at a time; since the per-variable degree is
    bounded by the matrix size, some value in 0..degree keeps the
    polynomial nonzero at each step.
    """
    point: list[Fraction] = []
    current = det
    for index in range(det.nvars):
        bound = max((m[index] for m in current.terms), default=0)
        for candidate in range(bound + 1):
            attempt = current.substitute(index, candidate)
            if not attempt.is_zero():
                point.append(Fraction(candidate))
                current = attempt
                break
        else:
            raise AssertionError("nonzero polynomial vanished on a full grid")
    return point


def basis_change_search(
    hs: list[Poly], symmetric: bool
) -> tuple[RatMatrix, DetTuple] | None:
    """Search for a constant mixing matrix making the forms determinantal.

    The identity constraints are linear in the entries of an N x N matrix M
    (N = number of input forms, one per index pair); the solution space is
    computed exactly, then probed for an invertible element: a few random
    combinations of its basis first, then a symbolic determinant in the
    basis parameters that certifies nonexistence or yields an exact sample.
    Returns (M, mixed tuple) or None.
    """
    if not hs:
        raise ValueError("no forms given")
    nvars = hs[0].nvars
    n = nvars - 1
    npairs = comb(n + 1, 2)
    if len(hs) != npairs:
        raise ValueError(f"expected {npairs} forms for n={n}, got {len(hs)}")
    degrees = {h.homogeneous_degree() for h in hs if not h.is_zero()}
    if len(degrees) != 1:
        raise ValueError("forms must be nonzero-homogeneous of one common degree")
    if any(h.nvars != nvars for h in hs):
        raise ValueError("forms must share one variable count")
    d = degrees.pop()
    pairs = pair_index(n)
    pos_of = {pq: idx for idx, pq in enumerate(pairs)}

    def unknown(row: int, col: int) -> int:
        return row * npairs + col

    rows: list[list[Fraction]] = []

    def add_identity_rows(i: int, j: int, k: int, derivative: bool) -> None:
        # x_i f_jk - x_j f_ik + x_k f_ij  (or the derivative counterpart),
        # with f_pq = sum_q' M[pq][q'] h_q', expanded per monomial.
        contributions: dict[Exponent, dict[int, Fraction]] = {}
        pieces = [(pos_of[(j, k)], i, 1), (pos_of[(i, k)], j, -1), (pos_of[(i, j)], k, 1)]
        for row_pos, var, sign in pieces:
            for q, h in enumerate(hs):
                shifted = h.partial(var) if derivative else h * Poly.variable(nvars, var)
                for mono, coeff in shifted.terms.items():
                    slot = contributions.setdefault(mono, {})
                    key = unknown(row_pos, q)
                    slot[key] = slot.get(key, Fraction(0)) + sign * coeff
        for mono in sorted(contributions):
            slot = contributions[mono]
            row = [Fraction(0)] * (npairs * npairs)
            for key, coeff in slot.items():
                row[key] = coeff
            if any(row):
                rows.append(row)

    for i, j, k in triple_index(n):
        add_identity_rows(i, j, k, derivative=False)
        if symmetric:
            add_identity_rows(i, j, k, derivative=True)

    if rows:
        basis = kernel_basis(RatMatrix.from_rows(rows)).vectors
    else:
        # No constraints (n = 1): every matrix qualifies; use the identity.
        basis = tuple(
            tuple(Fraction(1) if idx == var else Fraction(0) for idx in range(npairs**2))
            for var in range(npairs**2)
        )
    if not basis:
        return None

    def matrix_from(coeffs) -> RatMatrix:
        flat = [Fraction(0)] * (npairs * npairs)
        for c, vec in zip(coeffs, basis):
            if c:
                flat = [f + Fraction(c) * v for f, v in zip(flat, vec)]
        return RatMatrix.from_rows(
            [flat[r * npairs : (r + 1) * npairs] for r in range(npairs)]
        )

    rng = random.Random(0)
    chosen = None
    for _ in range(8):
        coeffs = [rng.randint(-3, 3) for _ in basis]
        m = matrix_from(coeffs)
        if determinant(m) != 0:
            chosen = m
            break
    if chosen is None:
        # Certify: determinant of the generic combination as a polynomial
        # in one parameter per basis vector.
        s = len(basis)
        generic = [
            [
                Poly(
                    s,
                    {
                        tuple(1 if t == v else 0 for t in range(s)): vec[
                            unknown(r, c)
                        ]
                        for v, vec in enumerate(basis)
                        if vec[unknown(r, c)]
                    },
                )
                for c in range(npairs)
            ]
            for r in range(npairs)
        ]
        det = _symbolic_determinant(generic)
        if det.is_zero():
            return None
        chosen = matrix_from(_nonzero_sample(det))
        assert determinant(chosen) != 0
    mixed = tuple(
        sum(
            (h.scale(chosen.entries[p][q]) for q, h in enumerate(hs) if chosen.entries[p][q]),
            Poly.zero(nvars),
        )
        for p in range(npairs)
    )
    return chosen, DetTuple(n, d, mixed)


# ---------------------------------------------------------------------
# Point interpolation.
# ---------------------------------------------------------------------


@dataclass(frozen=True)
class WitnessResult:
    """Outcome of fitting a tensor through prescribed eigenpoints.

    found is true exactly when the solution space is larger than the family
    of tensors whose minors vanish identically; the witness is then a
    deterministic solution outside that family.
    """

    found: bool
    witness: PSTensor | SymTensor | None
    kernel_dim: int
    trivial_dim: int


def _trivial_vectors_ps(n: int, d: int) -> list[tuple[Fraction, ...]]:
    """Coefficient vectors of the tensors (x_0 h, ..., x_n h)."""
    nvars = n + 1
    gbasis = monomial_basis(nvars, d - 1)
    width = nvars * len(gbasis)
    vectors = []
    for h in monomial_basis(nvars, d - 2):
        flat = [Fraction(0)] * width
        for k in range(nvars):
            m = list(h)
            m[k] += 1
            flat[k * len(gbasis) + gbasis.index(tuple(m))] = Fraction(1)
        vectors.append(tuple(flat))
    return vectors


def _trivial_vectors_sym(n: int, d: int) -> list[tuple[Fraction, ...]]:
    """Coefficient vector of (x_0^2 + ... + x_n^2)^(d/2), when d is even."""
    if d % 2:
        return []
    nvars = n + 1
    fbasis = monomial_basis(nvars, d)
    q = poly_sum_of_squares(nvars) ** (d // 2)
    return [tuple(q.coefficient(m) for m in fbasis)]


def poly_sum_of_squares(nvars: int) -> Poly:
    """x_0^2 + ... + x_{nvars-1}^2."""
    terms = {}
    for i in range(nvars):
        e = [0] * nvars
        e[i] = 2
        terms[tuple(e)] = Fraction(1)
    return Poly(nvars, terms)


def fit_tensor_to_points(
    points: list[ProjPoint], d: int, symmetric: bool
) -> WitnessResult:
    """Tensors of order d having every given rational point as an eigenpoint.

    Builds the evaluation system "all minors vanish at every point" in the
    unknown tensor coefficients and reads off its exact kernel.  Tensors
    whose minors vanish identically solve the system for any points, so
    success means the kernel is strictly larger than that family; the
    witness is the first kernel basis vector outside it.
    """
    if not points:
        raise ValueError("no points given")
    n = points[0].n
    if n < 1:
        raise ValueError("points must live in P^n with n >= 1")
    if any(p.n != n for p in points):
        raise ValueError("points must share one ambient dimension")
    if any(not p.exact for p in points):
        raise ValueError("interpolation needs rational coordinates")
    if len(set(points)) != len(points):
        raise ValueError("points must be pairwise distinct")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    nvars = n + 1
    pairs = pair_index(n)
    rows: list[list[Fraction]] = []
    if symmetric:
        fbasis = monomial_basis(nvars, d)
        for p in points:
            coords = p.coords
            for i, j in pairs:
                row = []
                for m in fbasis:
                    ci = Poly.monomial(m).partial(j).evaluate(coords) * coords[i]
                    cj = Poly.monomial(m).partial(i).evaluate(coords) * coords[j]
                    row.append(ci - cj)
                rows.append(row)
        trivial = _trivial_vectors_sym(n, d)
    else:
        gbasis = monomial_basis(nvars, d - 1)
        unknowns = nvars * len(gbasis)
        for p in points:
            coords = p.coords
            evals = [Poly.monomial(m).evaluate(coords) for m in gbasis]
            for i, j in pairs:
                row = [Fraction(0)] * unknowns
                for pos, value in enumerate(evals):
                    row[j * len(gbasis) + pos] += coords[i] * value
                    row[i * len(gbasis) + pos] -= coords[j] * value
                rows.append(row)
        trivial = _trivial_vectors_ps(n, d)
    kernel = kernel_basis(RatMatrix.from_rows(rows))
    kernel_dim = kernel.dim
    trivial_dim = trivial_family_dimension(n, d, symmetric)
    assert len(trivial) == trivial_dim
    found = kernel_dim > trivial_dim
    witness = None
    if found:
        stacked = list(trivial)
        base_rank = rank(RatMatrix.from_rows(stacked)) if stacked else 0
        assert base_rank == trivial_dim
        for vec in kernel.vectors:
            if rank(RatMatrix.from_rows(stacked + [list(vec)])) > trivial_dim:
                witness = _tensor_from_flat(n, d, symmetric, vec)
                break
        assert witness is not None
    return WitnessResult(found, witness, kernel_dim, trivial_dim)


def _tensor_from_flat(
    n: int, d: int, symmetric: bool, flat
) -> PSTensor | SymTensor:
    nvars = n + 1
    if symmetric:
        fbasis = monomial_basis(nvars, d)
        return SymTensor(
            n, d, Poly(nvars, {m: c for m, c in zip(fbasis, flat) if c})
        )
    gbasis = monomial_basis(nvars, d - 1)
    forms = []
    for k in range(nvars):
        chunk = flat[k * len(gbasis) : (k + 1) * len(gbasis)]
        forms.append(Poly(nvars, {m: c for m, c in zip(gbasis, chunk) if c}))
    return PSTensor(n, d, tuple(forms))


# ---------------------------------------------------------------------
# Kernel of the minor map on single forms.
# ---------------------------------------------------------------------


def alpha_kernel(n: int, d: int) -> tuple[int, Poly | None]:
    """Exact kernel of f -> (x_i d_j f - x_j d_i f) on degree-d forms.

    The dimension is 0 for odd d and 1 for even d, in which case the
    generator is (x_0^2 + ... + x_n^2)^(d/2); the returned generator is
    scaled to leading coefficient 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 2:
        raise ValueError(f"d must be >= 2, got {d}")
    nvars = n + 1
    fbasis = monomial_basis(nvars, d)
    solver = TwoTermSolver()
    for m in fbasis:
        solver.touch(m)
    for _, _, terms in _minor_coefficient_equations(n, d, symmetric=True):
        solver.add_equation(terms, 0)
    assert solver.consistent  # homogeneous systems cannot be inconsistent
    free = solver.free_roots()
    dim = len(free)
    generator = None
    if dim == 1:
        assignment = solver.solution({free[0]: Fraction(1)})
        assert assignment is not None
        generator = Poly(nvars, {m: c for m, c in assignment.items() if c})
        lead = generator.sorted_terms()[0][1]
        generator = generator.scale(1 / lead)
    return dim, generator


def eigenvariety_dimension_bound(n: int, d: int) -> int:
    """Upper bound for the dimension of the locus swept by all eigenschemes.

    Counting parameters of the tensor-to-eigenscheme assignment and
    subtracting the dimension of the family of tensors sharing one
    eigenscheme gives (n+1)*C(n+d-1,n) - C(n+d-2,n) - 1; at n = 2 this
    collapses to d^2 + 2d - 1.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if d < 3:
        raise ValueError(f"d must be >= 3, got {d}")
    value = (n + 1) * comb(n + d - 1, n) - comb(n + d - 2, n) - 1
    # Equivalent closed form n(n+d)/(d-1) * C(n+d-2,n) - 1.
    alt, rem = divmod(n * (n + d) * comb(n + d - 2, n), d - 1)
    assert rem == 0 and alt - 1 == value
    return value
