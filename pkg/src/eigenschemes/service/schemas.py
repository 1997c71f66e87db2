"""Request and response models shared by the HTTP service and the CLI.

Every pipeline takes a small JSON document and returns one; the CLI calls
the same handlers in process, so both front ends speak exactly these
shapes.  Mathematical negatives (a failed test, a found violation) are
ordinary response content, not transport errors.
"""

from __future__ import annotations

from typing import Any, Literal

from pydantic import BaseModel, Field

Coordinate = Any  # "3/4", 2, 0.5, or [re, im]


class TensorPayload(BaseModel):
    n: int = Field(ge=1)
    d: int = Field(ge=2)
    kind: Literal["symmetric", "partially_symmetric"]
    forms: list[str]


class CountRequest(BaseModel):
    n: int = Field(ge=1)
    d: int = Field(ge=2)
    include_bound: bool = False


class CountResponse(BaseModel):
    w: int
    dimension_bound: int | None = None


class GeneratorsRequest(BaseModel):
    tensor: TensorPayload


class GeneratorsResponse(BaseModel):
    n: int
    d: int
    pairs: list[list[int]]
    forms: list[str]


class CheckEquationsRequest(BaseModel):
    n: int = Field(ge=1)
    d: int = Field(ge=2)
    forms: list[str]
    search: bool = True
    symmetric: bool = False


class BasisChangeResult(BaseModel):
    found: bool
    matrix: list[list[str]] | None = None
    koszul: bool | None = None
    derham: bool | None = None


class CheckEquationsResponse(BaseModel):
    koszul: bool
    derham: bool
    recovered: TensorPayload | None = None
    basis_change: BasisChangeResult | None = None


class FitPointsRequest(BaseModel):
    points: list[list[Coordinate]]
    d: int = Field(ge=2)
    symmetric: bool = False


class FitPointsResponse(BaseModel):
    found: bool
    kernel_dim: int
    trivial_dim: int
    witness: TensorPayload | None = None


class RandomTensorSpec(BaseModel):
    n: int = Field(ge=1)
    d: int = Field(ge=2)
    seed: int
    symmetric: bool = False


class HilbertRequest(BaseModel):
    tensor: TensorPayload | None = None
    random: RandomTensorSpec | None = None
    window: int | None = Field(default=None, ge=0)


class HilbertRow(BaseModel):
    e: int
    predicted: int
    actual: int
    agree: bool


class HilbertResponse(BaseModel):
    n: int
    d: int
    rows: list[HilbertRow]
    zero_dimensional: bool
    degree: int | None
    all_agree: bool


class BettiRequest(BaseModel):
    n: int = Field(ge=1)
    d: int = Field(ge=2)


class BettiSummandModel(BaseModel):
    twist: int
    multiplicity: int


class BettiResponse(BaseModel):
    n: int
    d: int
    modules: list[list[BettiSummandModel]]
    rendered: list[str]


class SolveRequest(BaseModel):
    tensor: TensorPayload
    tol: float = Field(default=1e-8, gt=0)


class PointListResponse(BaseModel):
    points: list[list[Coordinate]]
    multiplicities: list[int]
    residuals: list[float | None]
    statuses: list[str]
    chart_failures: list[str] = []
    count: int
    expected: int | None = None
    error: str | None = None


class FermatRequest(BaseModel):
    n: int = Field(ge=1)
    d: int = Field(ge=3)


class GeometryRequest(BaseModel):
    points: list[list[Coordinate]]
    d: int = Field(ge=2)
    tol: float = Field(default=1e-8, gt=0)


class GeometryResponse(BaseModel):
    collinear_violations: list[dict]
    sharp_lines: list[dict]
    curve_candidates: list[dict]
    status: str


class LaguerreRequest(BaseModel):
    tensor: TensorPayload
    point: list[Coordinate]
    tol: float = Field(default=1e-8, gt=0)


class LaguerreResponse(BaseModel):
    pairs: list[list[int]]
    coords: list[Coordinate] | None = None
    rank: int | None = None
    expected_rank: int
    line: list[list[Coordinate]] | None = None
    point_on_line: bool | None = None
    image_on_line: bool | None = None
    error: str | None = None
