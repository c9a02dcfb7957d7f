"""HTTP session service hosting the interactive correction loop.

Endpoints (all JSON unless noted):

    POST   /sessions                    multipart: image_a, image_b PNG files,
                                        optional `config` and `reference` JSON
                                        strings -> 201 {session_id}
    GET    /sessions/{sid}              full session state
    POST   /sessions/{sid}/pins         {"a": id, "b": id} -> state; 409 on conflict
    DELETE /sessions/{sid}/pins/{a}     -> state
    GET    /sessions/{sid}/strokes      stroke sets and pairs
    GET    /sessions/{sid}/inbetween    ?t=0.5&frames=1 -> SVG (or JSON list)
    GET    /sessions/{sid}/overlay/{side}.png   ?colors=pair|id -> PNG
    GET    /healthz

Malformed bodies return 400, unknown sessions 404, pin conflicts 409.
"""

from __future__ import annotations

import json
import os
from pathlib import Path

from fastapi import FastAPI, File, Form, Request, Response, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .config import PipelineConfig, config_from_dict
from .errors import FormatError, InkmatchError, ParameterError, PinConflictError
from .pipeline import SCHEMA_VERSION, stroke_pairs_dict, stroke_set_dict
from .render import encode_png, id_overlay, inbetween_svg, label_overlay
from .session import SessionManager
from .strokes import interpolate

STORE_ENV = "INKMATCH_STORE"


def _parse_reference(raw: str | None):
    if not raw:
        return None
    data = json.loads(raw)
    pairs = data["region_pairs"] if isinstance(data, dict) else data
    return [(int(a), int(b)) for a, b in pairs]


def create_app(manager: SessionManager | None = None, ui_dir: str | Path | None = None) -> FastAPI:
    if manager is None:
        manager = SessionManager(os.environ.get(STORE_ENV) or None)
    app = FastAPI(title="inkmatch session service", version="0.1.0")
    app.state.manager = manager

    @app.exception_handler(RequestValidationError)
    async def _validation_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": str(exc.errors())})

    def _get_session(sid: str):
        try:
            return manager.get(sid)
        except KeyError:
            return None

    def _not_found(sid: str):
        return JSONResponse(status_code=404, content={"detail": f"unknown session {sid!r}"})

    @app.get("/healthz")
    def healthz():
        return {"status": "ok", "schema_version": SCHEMA_VERSION, "sessions": len(manager.ids())}

    @app.post("/sessions", status_code=201)
    def create_session(
        image_a: UploadFile = File(...),
        image_b: UploadFile = File(...),
        config: str | None = Form(default=None),
        reference: str | None = Form(default=None),
    ):
        try:
            cfg = config_from_dict(json.loads(config)) if config else PipelineConfig()
            ref = _parse_reference(reference)
        except (json.JSONDecodeError, ParameterError, KeyError, TypeError, ValueError) as exc:
            return JSONResponse(status_code=400, content={"detail": f"bad config/reference: {exc}"})
        try:
            session = manager.create(image_a.file.read(), image_b.file.read(), cfg, ref)
        except (FormatError, InkmatchError) as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})
        return {"schema_version": SCHEMA_VERSION, "session_id": session.id}

    @app.get("/sessions/{sid}")
    def get_session(sid: str):
        session = _get_session(sid)
        if session is None:
            return _not_found(sid)
        with session.lock:
            return session.state_dict()

    @app.post("/sessions/{sid}/pins")
    def post_pin(sid: str, body: dict):
        session = _get_session(sid)
        if session is None:
            return _not_found(sid)
        if not isinstance(body, dict) or "a" not in body or "b" not in body:
            return JSONResponse(status_code=400, content={"detail": "body must be {a, b}"})
        try:
            manager.pin(sid, int(body["a"]), int(body["b"]))
        except PinConflictError as exc:
            return JSONResponse(status_code=409, content={"detail": str(exc)})
        except (TypeError, ValueError) as exc:
            return JSONResponse(status_code=400, content={"detail": str(exc)})
        with session.lock:
            return session.state_dict()

    @app.delete("/sessions/{sid}/pins/{a}")
    def delete_pin(sid: str, a: int):
        session = _get_session(sid)
        if session is None:
            return _not_found(sid)
        try:
            manager.unpin(sid, a)
        except KeyError as exc:
            return JSONResponse(status_code=404, content={"detail": str(exc)})
        with session.lock:
            return session.state_dict()

    @app.get("/sessions/{sid}/strokes")
    def get_strokes(sid: str):
        session = _get_session(sid)
        if session is None:
            return _not_found(sid)
        with session.lock:
            return {
                "schema_version": SCHEMA_VERSION,
                "strokes_a": stroke_set_dict(session.ka.strokes),
                "strokes_b": stroke_set_dict(session.kb.strokes),
                "pairs": stroke_pairs_dict(session.result),
            }

    @app.get("/sessions/{sid}/inbetween")
    def get_inbetween(sid: str, t: float = 0.5, frames: int = 1):
        session = _get_session(sid)
        if session is None:
            return _not_found(sid)
        if not 0.0 <= t <= 1.0:
            return JSONResponse(status_code=400, content={"detail": "t must be in [0, 1]"})
        if frames < 1 or frames > 64:
            return JSONResponse(status_code=400, content={"detail": "frames must be in 1..64"})
        dims = session.ka.graph.source_dims
        with session.lock:
            pairs = session.result.stroke_pairs
            if frames == 1:
                svg = inbetween_svg(interpolate(pairs, t), dims)
                return Response(content=svg, media_type="image/svg+xml")
            ts = [k / (frames + 1) for k in range(1, frames + 1)]
            return {
                "schema_version": SCHEMA_VERSION,
                "ts": ts,
                "frames": [inbetween_svg(interpolate(pairs, tk), dims) for tk in ts],
            }

    @app.get("/sessions/{sid}/overlay/{side}.png")
    def get_overlay(sid: str, side: str, colors: str = "pair"):
        session = _get_session(sid)
        if session is None:
            return _not_found(sid)
        if side not in ("a", "b"):
            return JSONResponse(status_code=400, content={"detail": "side must be a or b"})
        if colors not in ("pair", "id"):
            return JSONResponse(status_code=400, content={"detail": "colors must be pair or id"})
        graph = session.ka.graph if side == "a" else session.kb.graph
        with session.lock:
            if colors == "id":
                rgb = id_overlay(graph)
            else:
                rgb = label_overlay(graph, session.result.correspondence, side)
        return Response(content=encode_png(rgb), media_type="image/png")

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/ui", StaticFiles(directory=str(ui_dir), html=True), name="ui")

    return app
