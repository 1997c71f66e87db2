"""One handler per pipeline; the service routes and the CLI both call these.

Handlers accept and return the pydantic models from schemas.py.  A
ValueError out of a handler means the input was malformed or out of range;
everything mathematically meaningful, including negative verdicts, comes
back inside the response model.
"""

from __future__ import annotations

from fractions import Fraction

from ..characterize import (
    basis_change_search,
    check_equations,
    eigenvariety_dimension_bound,
    fit_tensor_to_points,
)
from ..geometry import (
    IndeterminacyError,
    fiber_line,
    full_report,
    laguerre,
    line_contains,
    rank_A_omega,
)
from ..hilbert import dimension_probe, hilbert_table, predicted_betti
from ..polynomials import parse_poly
from ..solver import (
    fermat_eigenpoints,
    solve_eigenpoints_p1,
    solve_eigenpoints_p2,
)
from ..tensors import (
    DetTuple,
    ProjPoint,
    PSTensor,
    SymTensor,
    determinantal_generators,
    gradient_tensor,
    pair_index,
    point_from_json,
    point_to_json,
    random_ps_tensor,
    random_sym_tensor,
    tensor_from_json,
    w_count,
)
from . import schemas


def _load_tensor(payload: schemas.TensorPayload) -> PSTensor | SymTensor:
    return tensor_from_json(payload.model_dump())


def _as_ps(t: PSTensor | SymTensor) -> PSTensor:
    return gradient_tensor(t) if isinstance(t, SymTensor) else t


def _tensor_payload(t: PSTensor | SymTensor) -> schemas.TensorPayload:
    if isinstance(t, SymTensor):
        return schemas.TensorPayload(
            n=t.n, d=t.d, kind="symmetric", forms=[str(t.f)]
        )
    return schemas.TensorPayload(
        n=t.n, d=t.d, kind="partially_symmetric", forms=[str(g) for g in t.forms]
    )


def _scalar_json(v):
    if isinstance(v, Fraction):
        return str(v)
    c = complex(v)
    return [c.real, c.imag]


def count(req: schemas.CountRequest) -> schemas.CountResponse:
    bound = None
    if req.include_bound:
        if req.d < 3:
            raise ValueError("the dimension bound needs d >= 3")
        bound = eigenvariety_dimension_bound(req.n, req.d)
    return schemas.CountResponse(w=w_count(req.n, req.d), dimension_bound=bound)


def generators(req: schemas.GeneratorsRequest) -> schemas.GeneratorsResponse:
    t = _as_ps(_load_tensor(req.tensor))
    ft = determinantal_generators(t)
    return schemas.GeneratorsResponse(
        n=ft.n,
        d=ft.d,
        pairs=[[i, j] for i, j in pair_index(ft.n)],
        forms=[str(f) for f in ft.entries],
    )


def _load_det_tuple(n: int, d: int, forms: list[str]) -> DetTuple:
    expected = len(pair_index(n))
    if len(forms) != expected:
        raise ValueError(f"expected {expected} forms for n={n}, got {len(forms)}")
    return DetTuple(n, d, tuple(parse_poly(s, n + 1) for s in forms))


def equations(req: schemas.CheckEquationsRequest) -> schemas.CheckEquationsResponse:
    ft = _load_det_tuple(req.n, req.d, req.forms)
    verdict = check_equations(ft)
    basis_change = None
    if verdict.recovered is None and req.search:
        hit = basis_change_search(list(ft.entries), req.symmetric)
        if hit is None:
            basis_change = schemas.BasisChangeResult(found=False)
        else:
            matrix, mixed = hit
            mixed_verdict = check_equations(mixed)
            basis_change = schemas.BasisChangeResult(
                found=True,
                matrix=[[str(c) for c in row] for row in matrix.entries],
                koszul=mixed_verdict.koszul_ok,
                derham=mixed_verdict.derham_ok,
            )
    return schemas.CheckEquationsResponse(
        koszul=verdict.koszul_ok,
        derham=verdict.derham_ok,
        recovered=(
            _tensor_payload(verdict.recovered) if verdict.recovered else None
        ),
        basis_change=basis_change,
    )


def fit_points(req: schemas.FitPointsRequest) -> schemas.FitPointsResponse:
    points = [point_from_json(p) for p in req.points]
    result = fit_tensor_to_points(points, req.d, req.symmetric)
    return schemas.FitPointsResponse(
        found=result.found,
        kernel_dim=result.kernel_dim,
        trivial_dim=result.trivial_dim,
        witness=_tensor_payload(result.witness) if result.witness else None,
    )


def hilbert(req: schemas.HilbertRequest) -> schemas.HilbertResponse:
    if (req.tensor is None) == (req.random is None):
        raise ValueError("provide exactly one of 'tensor' and 'random'")
    if req.tensor is not None:
        t = _as_ps(_load_tensor(req.tensor))
    else:
        spec = req.random
        if spec.symmetric:
            t = gradient_tensor(random_sym_tensor(spec.n, spec.d, spec.seed))
        else:
            t = random_ps_tensor(spec.n, spec.d, spec.seed)
    ft = determinantal_generators(t)
    records = hilbert_table(ft, req.window)
    finite, degree = dimension_probe(ft)
    rows = [
        schemas.HilbertRow(
            e=r.e, predicted=r.predicted, actual=r.actual, agree=r.agree
        )
        for r in records
    ]
    return schemas.HilbertResponse(
        n=t.n,
        d=t.d,
        rows=rows,
        zero_dimensional=finite,
        degree=degree,
        all_agree=all(r.agree for r in records),
    )


def betti(req: schemas.BettiRequest) -> schemas.BettiResponse:
    table = predicted_betti(req.n, req.d)
    return schemas.BettiResponse(
        n=req.n,
        d=req.d,
        modules=[
            [
                schemas.BettiSummandModel(twist=s.twist, multiplicity=s.multiplicity)
                for s in summands
            ]
            for summands in table.modules
        ],
        rendered=table.render(),
    )


def _point_list_response(eps, expected: int | None) -> schemas.PointListResponse:
    return schemas.PointListResponse(
        points=[point_to_json(p) for p in eps.points],
        multiplicities=list(eps.multiplicities),
        residuals=list(eps.residuals),
        statuses=list(eps.statuses),
        chart_failures=list(eps.chart_failures),
        count=len(eps.points),
        expected=expected,
    )


def solve(req: schemas.SolveRequest) -> schemas.PointListResponse:
    t = _as_ps(_load_tensor(req.tensor))
    if t.n not in (1, 2):
        raise ValueError("numeric solving is available for n = 1 and n = 2 only")
    expected = w_count(t.n, t.d)
    try:
        if t.n == 1:
            eps = solve_eigenpoints_p1(t, req.tol)
        else:
            eps = solve_eigenpoints_p2(t, req.tol)
    except ValueError as exc:
        return schemas.PointListResponse(
            points=[],
            multiplicities=[],
            residuals=[],
            statuses=[],
            count=0,
            expected=expected,
            error=str(exc),
        )
    return _point_list_response(eps, expected)


def fermat(req: schemas.FermatRequest) -> schemas.PointListResponse:
    eps = fermat_eigenpoints(req.n, req.d)
    return _point_list_response(eps, w_count(req.n, req.d))


def geometry(req: schemas.GeometryRequest) -> schemas.GeometryResponse:
    points = [point_from_json(p) for p in req.points]
    report = full_report(points, req.d, req.tol)
    payload = report.to_json()
    return schemas.GeometryResponse(**payload)


def laguerre_map(req: schemas.LaguerreRequest) -> schemas.LaguerreResponse:
    t = _as_ps(_load_tensor(req.tensor))
    p = point_from_json(req.point)
    pairs = [[i, j] for i, j in pair_index(t.n)]
    try:
        omega = laguerre(t, p, req.tol)
    except IndeterminacyError as exc:
        return schemas.LaguerreResponse(
            pairs=pairs, expected_rank=t.n - 1, error=str(exc)
        )
    rank = rank_A_omega(omega, req.tol)
    line = fiber_line(omega, req.tol) if rank == t.n - 1 else None
    image = ProjPoint([g.evaluate(p.coords) for g in t.forms])
    return schemas.LaguerreResponse(
        pairs=pairs,
        coords=[_scalar_json(c) for c in omega.coords],
        rank=rank,
        expected_rank=t.n - 1,
        line=(
            [[_scalar_json(c) for c in row] for row in line]
            if line is not None
            else None
        ),
        point_on_line=(
            line_contains(line, p, req.tol) if line is not None else None
        ),
        image_on_line=(
            line_contains(line, image, req.tol) if line is not None else None
        ),
    )
