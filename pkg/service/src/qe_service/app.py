"""HTTP surface of the scoring service.

    POST /score   {"pairs": [{"src": ..., "tgt": ...}, ...]}
                  -> {"scores": [...], "backend": "..."}
    GET  /health  -> {"status": "ok", "backend": "..."} (503 while loading)

Scores come back in request order, one per pair. Requests are capped at
128 pairs (413 beyond that); schema violations, including empty pair
lists and empty texts, answer 400. The service holds no state between
requests: identical requests get identical responses for a fixed
backend.
"""

from __future__ import annotations

import os

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from .backends import ScoringBackend, load_backend

MAX_BATCH_SIZE = 128


class ScorePair(BaseModel):
    src: str = Field(min_length=1)
    tgt: str = Field(min_length=1)


class ScoreRequest(BaseModel):
    pairs: list[ScorePair] = Field(min_length=1)


class ScoreResponse(BaseModel):
    scores: list[float]
    backend: str


class HealthResponse(BaseModel):
    status: str
    backend: str


def create_app(backend: ScoringBackend | None = None) -> FastAPI:
    if backend is None:
        backend = load_backend(os.environ.get("QE_BACKEND", "mock"))
    app = FastAPI(title="qe-service", version="0.1.0")

    @app.exception_handler(RequestValidationError)
    async def schema_violation(request: Request,
                               exc: RequestValidationError) -> JSONResponse:
        # The wire contract promises 400 for schema violations, not
        # FastAPI's default 422.
        return JSONResponse(status_code=400,
                            content={"detail": exc.errors()})

    @app.post("/score", response_model=ScoreResponse)
    async def score(request: ScoreRequest) -> ScoreResponse | JSONResponse:
        if not backend.ready():
            return JSONResponse(status_code=503,
                                content={"detail": "backend loading"})
        if len(request.pairs) > MAX_BATCH_SIZE:
            return JSONResponse(
                status_code=413,
                content={"detail": f"batch of {len(request.pairs)} exceeds "
                                   f"the {MAX_BATCH_SIZE}-pair cap"})
        scores = backend.score_batch([(p.src, p.tgt)
                                      for p in request.pairs])
        return ScoreResponse(scores=scores, backend=backend.identifier)

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse | JSONResponse:
        if not backend.ready():
            return JSONResponse(
                status_code=503,
                content={"status": "loading", "backend": backend.identifier})
        return HealthResponse(status="ok", backend=backend.identifier)

    return app


app = create_app()
