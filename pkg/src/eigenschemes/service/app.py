"""HTTP façade over the handlers.

Run with: uvicorn eigenschemes.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="eigenschemes",
        description="Exact computations on eigenschemes of partially symmetric tensors.",
        version="0.1.0",
    )

    def run(handler, request):
        try:
            return handler(request)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok"}

    @app.post("/api/count", response_model=schemas.CountResponse, response_model_exclude_none=True)
    def count(req: schemas.CountRequest):
        return run(handlers.count, req)

    @app.post("/api/generators", response_model=schemas.GeneratorsResponse)
    def generators(req: schemas.GeneratorsRequest):
        return run(handlers.generators, req)

    @app.post("/api/check-equations", response_model=schemas.CheckEquationsResponse, response_model_exclude_none=True)
    def equations(req: schemas.CheckEquationsRequest):
        return run(handlers.equations, req)

    @app.post("/api/fit-points", response_model=schemas.FitPointsResponse, response_model_exclude_none=True)
    def fit_points(req: schemas.FitPointsRequest):
        return run(handlers.fit_points, req)

    @app.post("/api/hilbert", response_model=schemas.HilbertResponse)
    def hilbert(req: schemas.HilbertRequest):
        return run(handlers.hilbert, req)

    @app.post("/api/betti", response_model=schemas.BettiResponse)
    def betti(req: schemas.BettiRequest):
        return run(handlers.betti, req)

    @app.post("/api/solve", response_model=schemas.PointListResponse, response_model_exclude_none=True)
    def solve(req: schemas.SolveRequest):
        return run(handlers.solve, req)

    @app.post("/api/fermat", response_model=schemas.PointListResponse, response_model_exclude_none=True)
    def fermat(req: schemas.FermatRequest):
        return run(handlers.fermat, req)

    @app.post("/api/geometry", response_model=schemas.GeometryResponse)
    def geometry(req: schemas.GeometryRequest):
        return run(handlers.geometry, req)

    @app.post("/api/laguerre", response_model=schemas.LaguerreResponse, response_model_exclude_none=True)
    def laguerre(req: schemas.LaguerreRequest):
        return run(handlers.laguerre_map, req)

    return app


app = create_app()
