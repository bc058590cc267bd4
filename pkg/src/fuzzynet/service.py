"""HTTP service exposing the engine to scripts and the companion UI.

Single-writer discipline: every mutation (diagnose session bookkeeping,
confirm, reject, learn) runs under one lock and appends to the session log;
reads serve a consistent snapshot of the immutable network value.
Similarity, partition, session, and KB payloads are canonical JSON, byte-
identical with the CLI's --json output for the same inputs.
"""
from __future__ import annotations

import threading

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response
from pydantic import BaseModel

from .diagnosis import ETA_DEFAULT, Query, confirm, diagnose, learn_term, reject
from .errors import EngineError, UnknownEntityError
from .network import SemanticNet
from .partition import partition
from .similarity import term_similarity
from .store import FORMAT_VERSION, SessionLog, builtin_sample_kb, canonical_json, dumps_kb

__all__ = ["DEFAULT_PORT", "create_app", "serve"]

DEFAULT_PORT = 7341

_STATUS_BY_CODE = {
    "entity.unknown": 404,
    "session.closed": 409,
    "entity.duplicate": 409,
}


class DiagnoseBody(BaseModel):
    goal: str
    object: str = ""
    context: list[str] = []


class FeedbackBody(BaseModel):
    candidate: str
    eta: float = ETA_DEFAULT


class LearnBody(BaseModel):
    term: str
    procedure: str
    level: str
    attribute: str | None = None


class ServiceState:
    """Mutable server state: current network, sessions, log, writer lock."""

    def __init__(self, net: SemanticNet, log: SessionLog | None = None):
        self.net = net
        self.sessions = {}
        self.log = log
        self.lock = threading.Lock()
        self.counter = 0

    def record(self, event: str, payload: dict) -> None:
        if self.log is not None:
            self.log.append(event, payload)


def _terms_payload(net: SemanticNet) -> dict:
    return {
        "terms": [
            {
                "attribute": attr,
                "term": term,
                "procedures": list(net.user_variable(attr, term).procedures),
            }
            for attr, term in net.terms()
        ]
    }


def _canonical(payload) -> Response:
    return Response(content=canonical_json(payload), media_type="application/json")


def create_app(net: SemanticNet | None = None, log_path=None) -> FastAPI:
    state = ServiceState(
        net if net is not None else builtin_sample_kb(),
        SessionLog(log_path) if log_path else None,
    )
    app = FastAPI(title="fuzzynet", docs_url=None, redoc_url=None)
    app.state.engine = state
    # The companion UI is served from a separate origin and the service has
    # no credentials to protect, so cross-origin reads and mutations are open.
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
        expose_headers=["X-KB-Format-Version"],
    )

    @app.middleware("http")
    async def add_format_version(request, call_next):
        response = await call_next(request)
        response.headers["X-KB-Format-Version"] = str(FORMAT_VERSION)
        return response

    @app.exception_handler(EngineError)
    async def engine_error_handler(request, exc: EngineError):
        return JSONResponse(
            status_code=_STATUS_BY_CODE.get(exc.code, 400), content=exc.to_api_error()
        )

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"code": "request.invalid", "message": str(exc), "entity": None},
        )

    @app.get("/")
    def index():
        return {"service": "fuzzynet", "format_version": FORMAT_VERSION}

    @app.get("/kb")
    def get_kb():
        return Response(content=dumps_kb(state.net), media_type="application/json")

    @app.get("/kb/terms")
    def get_terms():
        return _canonical(_terms_payload(state.net))

    @app.post("/kb/terms")
    def post_term(body: LearnBody):
        with state.lock:
            updated, delta = learn_term(
                state.net, body.term, body.procedure, body.level, body.attribute
            )
            state.net = updated
            state.record("learn", {"delta": delta.to_jsonable()})
        return _canonical(
            {"learned": delta.to_jsonable(), "terms": _terms_payload(state.net)["terms"]}
        )

    @app.get("/similarity")
    def get_similarity(a: str, b: str):
        return _canonical(term_similarity(state.net, a, b).to_jsonable())

    @app.get("/partition")
    def get_partition(theta: float = 0.9):
        return _canonical(partition(state.net, theta).to_jsonable())

    @app.post("/diagnose")
    def post_diagnose(body: DiagnoseBody):
        query = Query(goal=body.goal, obj=body.object, context=tuple(body.context))
        with state.lock:
            state.counter += 1
            session = diagnose(state.net, query, session_id=f"s{state.counter}")
            state.sessions[session.id] = session
            state.record("diagnose", {"session": session.to_jsonable()})
        return _canonical(session.to_jsonable())

    def _session_or_404(session_id: str):
        session = state.sessions.get(session_id)
        if session is None:
            raise UnknownEntityError(f"unknown session {session_id!r}", entity=session_id)
        return session

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return _canonical(_session_or_404(session_id).to_jsonable())

    @app.post("/sessions/{session_id}/confirm")
    def post_confirm(session_id: str, body: FeedbackBody):
        with state.lock:
            session = _session_or_404(session_id)
            updated_net, updated_session, deltas = confirm(
                state.net, session, body.candidate, body.eta
            )
            state.net = updated_net
            state.sessions[session_id] = updated_session
            state.record(
                "confirm",
                {
                    "session_id": session_id,
                    "candidate": body.candidate,
                    "deltas": [delta.to_jsonable() for delta in deltas],
                },
            )
        return _canonical(
            {
                "session": updated_session.to_jsonable(),
                "deltas": [delta.to_jsonable() for delta in deltas],
            }
        )

    @app.post("/sessions/{session_id}/reject")
    def post_reject(session_id: str, body: FeedbackBody):
        with state.lock:
            session = _session_or_404(session_id)
            updated_net, updated_session, deltas = reject(
                state.net, session, body.candidate, body.eta
            )
            state.net = updated_net
            state.sessions[session_id] = updated_session
            state.record(
                "reject",
                {
                    "session_id": session_id,
                    "candidate": body.candidate,
                    "deltas": [delta.to_jsonable() for delta in deltas],
                },
            )
        return _canonical(
            {
                "session": updated_session.to_jsonable(),
                "deltas": [delta.to_jsonable() for delta in deltas],
            }
        )

    return app


def serve(
    net: SemanticNet | None = None,
    port: int = DEFAULT_PORT,
    host: str = "127.0.0.1",
    log_path=None,
) -> None:
    """Run the service with uvicorn (blocking)."""
    import uvicorn

    uvicorn.run(create_app(net, log_path), host=host, port=port, log_level="warning")
