"""Read-only HTTP API over the loaded store and prebuilt probe files.

Endpoints (all JSON, all stamped with the probe schema version header):

    GET  /api/probes/{hourly|calendar|map|planner_defaults}
    GET  /api/probes/animation?date=YYYY-MM-DD
    GET  /api/meta
    POST /api/planner/simulate

Simulation requests mirror the planner input fields 1:1; malformed bodies
come back 400 with field-level messages, plans matching zero trips 422
with the filter echo. State is immutable after startup, so concurrent
requests are trivially safe.
"""

from __future__ import annotations

import json
from datetime import date

from fastapi import FastAPI, Query, Request
from fastapi.responses import JSONResponse

from ..errors import EmptyDayError, NoMatchingTripsError
from ..geo import active_backend
from ..planner import PlannerInputError, planner_input_from_dict, planner_output_to_dict
from ..probes import (
    KIND_ANIMATION,
    PROBE_VERSION,
    artifact_to_doc,
    build_animation_probe,
)
from .state import AppState, run_plan

_SCHEMA_HEADER = "X-Probe-Schema-Version"
_STATIC_PROBE_KINDS = ("hourly", "calendar", "map", "planner_defaults")


def create_app(state: AppState) -> FastAPI:
    app = FastAPI(title="ridelens", docs_url=None, redoc_url=None)

    @app.middleware("http")
    async def stamp_schema_version(request: Request, call_next):
        response = await call_next(request)
        response.headers[_SCHEMA_HEADER] = PROBE_VERSION
        return response

    # Registered before the {kind} route so "animation" resolves here.
    @app.get("/api/probes/animation")
    def animation(date_text: str | None = Query(default=None, alias="date")):
        return _animation(state, date_text)

    @app.get("/api/probes/{kind}")
    def probe(kind: str):
        if kind not in _STATIC_PROBE_KINDS:
            return JSONResponse({"error": f"unknown probe kind {kind!r}"}, status_code=404)
        doc = state.probe_docs.get(kind)
        if doc is None:
            return JSONResponse(
                {"error": f"probe {kind!r} not built (run the probes command)"},
                status_code=404,
            )
        return doc

    @app.get("/api/meta")
    def meta():
        return {
            "version": PROBE_VERSION,
            "manifest": state.store.manifest,
            "geo_backend": active_backend(),
            "probes_loaded": sorted(state.probe_docs),
            "settings": {
                "timezone": state.config.timezone,
                "day_start_offset": state.config.day_start_offset,
                "n_shades": state.config.n_shades,
                "planner_defaults": {
                    "platform_cut": state.config.planner.platform_cut,
                    "tpc": state.config.planner.tpc,
                },
            },
        }

    @app.post("/api/planner/simulate")
    async def simulate_endpoint(request: Request):
        try:
            body = await request.json()
        except json.JSONDecodeError as exc:
            return JSONResponse(
                {"errors": [{"field": "body", "message": f"invalid JSON: {exc.msg}"}]},
                status_code=400,
            )
        try:
            inp = planner_input_from_dict(body)
        except PlannerInputError as exc:
            return JSONResponse(
                {"errors": [{"field": f, "message": m} for f, m in exc.field_errors]},
                status_code=400,
            )
        try:
            output = run_plan(state, inp)
        except NoMatchingTripsError as exc:
            return JSONResponse(
                {"error": str(exc), "filters": exc.filters},
                status_code=422,
            )
        doc = planner_output_to_dict(output)
        doc["version"] = PROBE_VERSION
        return doc

    ui_dir = state.config.ui_dir
    if ui_dir is not None and ui_dir.exists():
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app


def _animation(state: AppState, date_text: str | None):
    pings = state.store.pings
    if pings is None or len(pings) == 0:
        return JSONResponse({"error": "no location pings ingested"}, status_code=404)
    offset = state.config.day_start_offset
    if date_text is None:
        doc = state.probe_docs.get(KIND_ANIMATION)
        if doc is not None:
            return doc
        from ..model import shifted_day

        day = shifted_day(pings.pings[-1].ts, offset)
    else:
        try:
            day = date.fromisoformat(date_text)
        except ValueError:
            return JSONResponse(
                {"errors": [{"field": "date", "message": "expected YYYY-MM-DD"}]},
                status_code=400,
            )
    try:
        artifact = build_animation_probe(
            pings,
            state.store.personal_trips,
            day,
            frame_step_s=state.config.frame_step_s,
            day_start_offset=offset,
        )
    except EmptyDayError as exc:
        return JSONResponse({"error": str(exc), "available": exc.available}, status_code=404)
    return artifact_to_doc(artifact)
