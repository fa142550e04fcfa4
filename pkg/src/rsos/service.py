"""HTTP JSON API over an immutable workspace snapshot.

Every endpoint is a pure function of (snapshot bundle, request); the bundle
is swapped atomically only by POST /api/reload. Validation failures return
422 with ``{"error": {"field": ..., "message": ...}}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .errors import ParseError
from .mining import MinerConfig
from .recommender import (
    MissingMeasurementsError,
    RecommendationRequest,
    recommend,
)
from .taxonomy import render_itemset
from .vision.image import read_pgm
from .vision.measure import (
    BodyMeasurements,
    MeasureConfig,
    NoForegroundError,
    estimate_measurements,
)
from .workspace import (
    Snapshot,
    WorkspaceData,
    WorkspaceError,
    load_snapshot,
    load_workspace,
)


class ApiError(Exception):
    def __init__(self, message: str, field: str | None = None, status: int = 422):
        self.message = message
        self.field = field
        self.status = status
        super().__init__(message)

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.status,
            content={"error": {"field": self.field, "message": self.message}},
        )


@dataclass(frozen=True)
class Bundle:
    """One immutable serving unit: workspace data plus its snapshot."""

    data: WorkspaceData
    snapshot: Snapshot

    @property
    def cfg(self) -> MinerConfig:
        return self.snapshot.cfg


def load_bundle(root: Path, allow_stale: bool = False) -> Bundle:
    snapshot = load_snapshot(root)
    if snapshot is None:
        raise WorkspaceError(f"no snapshot in {root}: run ingest and mine first")
    if not snapshot.is_fresh(root):
        if not allow_stale:
            raise WorkspaceError(
                f"snapshot in {root} is stale: re-run ingest and mine "
                "(or serve with --allow-stale)"
            )
    data = load_workspace(root, snapshot.granularity)  # type: ignore[arg-type]
    return Bundle(data, snapshot)


def _require(body: dict, field: str, kind, label: str):
    if field not in body or body[field] is None:
        raise ApiError(f"{label} is required", field=field)
    value = body[field]
    if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if kind is int and isinstance(value, int) and not isinstance(value, bool):
        return value
    if kind is str and isinstance(value, str):
        return value
    raise ApiError(f"{label} must be a {kind.__name__}", field=field)


def _parse_recommend_request(body) -> RecommendationRequest:
    if not isinstance(body, dict):
        raise ApiError("request body must be a JSON object")
    gender = _require(body, "gender", str, "gender")
    budget = _require(body, "budget", float, "budget")
    if budget <= 0:
        raise ApiError("budget must be > 0", field="budget")
    profession = body.get("profession", "")
    if not isinstance(profession, str):
        raise ApiError("profession must be a string", field="profession")
    category = body.get("category")
    if category is not None and not isinstance(category, str):
        raise ApiError("category must be a string", field="category")
    top_k = body.get("top_k", 10)
    if not isinstance(top_k, int) or isinstance(top_k, bool) or top_k < 1:
        raise ApiError("top_k must be an integer >= 1", field="top_k")
    raw_m = body.get("measurements", {})
    if not isinstance(raw_m, dict):
        raise ApiError("measurements must be an object", field="measurements")
    try:
        measurements = BodyMeasurements.from_dict(raw_m)
    except (TypeError, ValueError) as exc:
        raise ApiError(str(exc), field="measurements") from exc
    try:
        return RecommendationRequest(
            measurements=measurements,
            gender=gender,
            profession=profession,
            budget=budget,
            category=category,
            top_k=top_k,
        )
    except ValueError as exc:
        raise ApiError(str(exc), field="category" if "category" in str(exc) else None) from exc


def create_app(workspace: Path, allow_stale: bool = False) -> FastAPI:
    app = FastAPI(title="rsos", docs_url=None, redoc_url=None)
    # the browser frontend is served separately; it only ever reads this API
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["content-type"],
    )
    app.state.workspace = Path(workspace)
    app.state.bundle = load_bundle(app.state.workspace, allow_stale)

    @app.exception_handler(ApiError)
    async def handle_api_error(_request, exc: ApiError):
        return exc.response()

    @app.get("/api/patterns")
    async def patterns():
        bundle: Bundle = app.state.bundle
        return {
            "frequent": bundle.snapshot.pattern_lines(),
            "higens": bundle.snapshot.higen_lines(),
        }

    @app.get("/api/catalog")
    async def catalog():
        bundle: Bundle = app.state.bundle
        return {
            "catalog": [
                {
                    "outfit_id": e.outfit_id,
                    "name": e.name,
                    "outfit_value": e.outfit_value,
                    "garment_class": e.garment_class,
                    "category": e.category,
                    "gender": e.gender,
                    "price": e.price,
                    "available_sizes": list(e.available_sizes),
                    "in_stock": e.in_stock,
                }
                for e in bundle.data.catalog
            ]
        }

    @app.post("/api/recommend")
    async def recommend_endpoint(request: Request):
        bundle: Bundle = app.state.bundle
        try:
            body = await request.json()
        except Exception:
            raise ApiError("request body must be valid JSON") from None
        req = _parse_recommend_request(body)
        try:
            ranked = recommend(
                req,
                bundle.data.catalog,
                bundle.data.sizing,
                bundle.data.periods,
                bundle.data.tax,
                bundle.cfg,
            )
        except MissingMeasurementsError as exc:
            raise ApiError(str(exc), field="measurements") from exc
        return {
            "recommendations": [
                {
                    "outfit_id": r.entry.outfit_id,
                    "name": r.entry.name,
                    "price": r.entry.price,
                    "size": r.size,
                    "fit_distance": r.fit_distance,
                    "pattern_score": r.pattern_score,
                    "matched_itemset": render_itemset(r.matched_itemset, descending=True),
                    "trend": r.trend_label,
                }
                for r in ranked
            ]
        }

    @app.post("/api/measurements/estimate")
    async def estimate(request: Request, ppcm: float | None = None):
        if ppcm is None or ppcm <= 0:
            raise ApiError("ppcm (pixels per centimeter) must be > 0", field="ppcm")
        body = await request.body()
        try:
            img = read_pgm(body)
        except ParseError as exc:
            raise ApiError(str(exc), field="image") from exc
        try:
            m = estimate_measurements(img, ppcm, MeasureConfig())
        except NoForegroundError as exc:
            raise ApiError(str(exc), field="image") from exc
        return {"measurements": m.to_dict()}

    @app.post("/api/reload")
    async def reload():
        try:
            fresh = load_bundle(app.state.workspace, allow_stale=False)
        except WorkspaceError as exc:
            raise ApiError(str(exc), field=None, status=409) from exc
        app.state.bundle = fresh  # single assignment: atomic swap
        return {"reloaded": True}

    return app


def serve(
    workspace: Path,
    host: str = "127.0.0.1",
    port: int = 8000,
    allow_stale: bool = False,
) -> None:
    """Run the API (blocking). Raises WorkspaceError before binding when the
    snapshot is missing or stale."""
    import uvicorn

    app = create_app(workspace, allow_stale)
    uvicorn.run(app, host=host, port=port, log_level="info")
