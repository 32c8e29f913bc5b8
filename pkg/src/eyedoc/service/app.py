"""HTTP+JSON protocol for the gaze session service.

Endpoints:
    POST   /sessions                    create a session
    GET    /sessions/{id}/events?since=N   short-poll the event log
    PUT    /sessions/{id}/targets       replace the target registry
    POST   /sessions/{id}/gaze          push simulated samples (api source)
    PATCH  /sessions/{id}/config        update interaction config
    DELETE /sessions/{id}               close (drains, flushes, exports)
    GET    /healthz
    GET    /overlay/{file}              static overlay assets, if configured

Errors are {"error": "<code>", "detail": "..."} with codes matching the
operation contracts (UnknownSession, InvalidConfig, SchemaError, BadSeq,
GenerationSkew, WrongSourceKind, NonMonotonicTimestamp, SourceUnavailable).
"""

from __future__ import annotations

from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import FileResponse, JSONResponse

from eyedoc.errors import EyedocError, SchemaError, UnknownSession
from eyedoc.service.config import ServiceConfig
from eyedoc.service.session import SessionManager

ERROR_STATUS = {
    "UnknownSession": 404,
    "InvalidConfig": 400,
    "SchemaError": 400,
    "BadSeq": 400,
    "NonMonotonicTimestamp": 400,
    "GenerationSkew": 409,
    "WrongSourceKind": 409,
    "SourceUnavailable": 503,
    "TrackerUnreachable": 503,
}


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    cfg = config or ServiceConfig()
    manager = SessionManager(cfg)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        manager.shutdown()

    app = FastAPI(
        title="eyedoc gaze service", docs_url=None, redoc_url=None, lifespan=lifespan
    )
    app.state.manager = manager
    app.state.config = cfg
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[cfg.cors_allow_origin],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(EyedocError)
    async def eyedoc_error_handler(request: Request, exc: EyedocError):
        return JSONResponse(
            status_code=ERROR_STATUS.get(exc.code, 400),
            content={"error": exc.code, "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"error": "SchemaError", "detail": "malformed request"},
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    def create_session(body: dict = Body(...)):
        session = manager.create(body)
        return {"id": session.id}

    @app.get("/sessions/{sid}/events")
    def poll_events(sid: str, since: int = 0):
        session = manager.get(sid)
        events, next_seq = session.poll(since)
        return {"events": events, "next_seq": next_seq}

    @app.put("/sessions/{sid}/targets")
    def put_targets(sid: str, body: dict = Body(...)):
        session = manager.get(sid)
        generation = session.put_targets(body)
        return {"generation": generation}

    @app.post("/sessions/{sid}/gaze")
    def push_gaze(sid: str, body: dict = Body(...)):
        session = manager.get(sid)
        if "samples" not in body:
            raise SchemaError("body requires a 'samples' list")
        accepted = session.push_gaze(body["samples"])
        return {"accepted": accepted}

    @app.patch("/sessions/{sid}/config")
    def update_config(sid: str, body: dict = Body(...)):
        session = manager.get(sid)
        session.update_config(body)
        return {"ok": True}

    @app.delete("/sessions/{sid}")
    def delete_session(sid: str):
        exported = manager.close(sid)
        return {"id": sid, "exported": exported}

    if cfg.overlay_dir:
        overlay_root = Path(cfg.overlay_dir).resolve()

        @app.get("/overlay/{name:path}")
        def overlay_asset(name: str):
            path = (overlay_root / name).resolve()
            if overlay_root not in path.parents and path != overlay_root:
                raise UnknownSession("asset outside overlay dir")
            if not path.is_file():
                return JSONResponse(
                    status_code=404,
                    content={"error": "NotFound", "detail": f"no asset {name!r}"},
                )
            return FileResponse(path)

    return app
