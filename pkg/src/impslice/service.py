"""Local HTTP service exposing the engine to the browser UI and scripts.

Endpoints (JSON bodies, schema_version 1):

    POST /sessions                  {program, state, fuel?}
    POST /sessions/{id}/bwd        {criterion}
    POST /sessions/{id}/fwd        {partial_program, partial_state}
    GET  /sessions/{id}/check?bound=N
    GET  /health

Sessions live in memory with LRU eviction.  A derivation is immutable
once recorded, so request handling needs no locking beyond the session
table itself; the server threads freely share everything else.

When started with a UI directory the server also delivers the static
assets of the slice explorer at ``/``.
"""

from __future__ import annotations

import json
import re
import secrets
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .errors import (CriterionMismatch, EvalError, FuelExhausted, ImpError,
                     JoinError, LatticeMismatch, ParseError, SizeExceeded)
from .jsonio import (SCHEMA_VERSION, check_report_to_json, state_from_json,
                     state_to_json, stats_to_json)
from .lattice import check_prefix
from .oracle import DEFAULT_SIZE_BOUND, check_connection
from .parser import parse_command, parse_partial_command
from .printer import hole_spans, render
from .slicer import bwd_cmd, fwd_cmd
from .syntax import State
from .tracer import DEFAULT_FUEL, Derivation, eval_cmd, trace_stats

MAX_SESSIONS = 256

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".svg": "image/svg+xml",
}


@dataclass(frozen=True, slots=True)
class Session:
    session_id: str
    program_text: str  # canonical rendering; hole spans refer to this
    derivation: Derivation
    created: float


class SessionStore:
    """LRU table of sessions; all access goes through one lock."""

    def __init__(self, capacity: int = MAX_SESSIONS):
        self._capacity = capacity
        self._lock = threading.Lock()
        self._sessions: OrderedDict[str, Session] = OrderedDict()

    def add(self, session: Session) -> None:
        with self._lock:
            self._sessions[session.session_id] = session
            while len(self._sessions) > self._capacity:
                self._sessions.popitem(last=False)

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            session = self._sessions.get(session_id)
            if session is not None:
                self._sessions.move_to_end(session_id)
            return session


class _ApiError(Exception):
    def __init__(self, status: int, payload: dict):
        self.status = status
        self.payload = payload


def _error_payload(err: ImpError) -> tuple[int, dict]:
    if isinstance(err, ParseError):
        return 400, {"error": "parse_error", "message": str(err),
                     "line": err.line, "column": err.column,
                     "expected": list(err.expected)}
    if isinstance(err, FuelExhausted):
        return 422, {"error": "fuel_exhausted", "message": str(err)}
    if isinstance(err, EvalError):
        return 422, {"error": "eval_error", "message": str(err)}
    if isinstance(err, CriterionMismatch):
        return 422, {"error": "criterion_mismatch", "message": str(err)}
    if isinstance(err, (LatticeMismatch, JoinError)):
        return 422, {"error": "lattice_mismatch", "message": str(err)}
    if isinstance(err, SizeExceeded):
        return 422, {"error": "size_exceeded", "message": str(err),
                     "size": err.size}
    return 500, {"error": "internal", "message": str(err)}


def _require(body: dict, field: str):
    if field not in body:
        raise _ApiError(400, {"error": "missing_field", "field": field})
    return body[field]


def _total_state(data) -> State:
    partial = state_from_json(data)
    if any(value is None for _, value in partial.entries):
        raise _ApiError(400, {"error": "parse_error",
                              "message": "input state must be total"})
    return State(partial.entries)


class SliceService:
    """Request handling, separated from HTTP plumbing for testability."""

    def __init__(self):
        self.store = SessionStore()

    # Each handler returns (status, payload).

    def create_session(self, body: dict) -> tuple[int, dict]:
        program_src = _require(body, "program")
        state_data = _require(body, "state")
        fuel = body.get("fuel", DEFAULT_FUEL)
        if not isinstance(fuel, int) or fuel <= 0:
            raise _ApiError(400, {"error": "parse_error",
                                  "message": "fuel must be a positive integer"})
        program = parse_command(program_src)
        state = (_total_state(state_data) if isinstance(state_data, list)
                 else _total_state_from_text(state_data))
        derivation = eval_cmd(state, program, fuel)
        session = Session(secrets.token_hex(8), render(program), derivation,
                          time.time())
        self.store.add(session)
        return 200, {
            "schema_version": SCHEMA_VERSION,
            "session_id": session.session_id,
            "program": session.program_text,
            "input_state": state_to_json(derivation.input),
            "output_state": state_to_json(derivation.output),
            "trace_summary": stats_to_json(trace_stats(derivation)),
        }

    def _session(self, session_id: str) -> Session:
        session = self.store.get(session_id)
        if session is None:
            raise _ApiError(404, {"error": "unknown_session",
                                  "session_id": session_id})
        return session

    def backward(self, session_id: str, body: dict) -> tuple[int, dict]:
        session = self._session(session_id)
        criterion = state_from_json(_require(body, "criterion"))
        outcome = bwd_cmd(session.derivation.trace, criterion)
        spans = hole_spans(session.derivation.program, outcome.program_slice)
        return 200, {
            "schema_version": SCHEMA_VERSION,
            "program_slice": render(outcome.program_slice),
            "input_slice": state_to_json(outcome.input_slice),
            "holes": [{"start": start, "end": end} for start, end in spans],
        }

    def forward(self, session_id: str, body: dict) -> tuple[int, dict]:
        session = self._session(session_id)
        partial_program = parse_partial_command(_require(body, "partial_program"))
        partial_state = state_from_json(_require(body, "partial_state"))
        check_prefix(partial_program, session.derivation.program)
        result = fwd_cmd(session.derivation.trace, partial_state,
                         partial_program)
        return 200, {
            "schema_version": SCHEMA_VERSION,
            "partial_output": state_to_json(result),
        }

    def check(self, session_id: str, bound: int) -> tuple[int, dict]:
        session = self._session(session_id)
        report = check_connection(session.derivation, bound,
                                  label=session.session_id)
        return 200, check_report_to_json(report)

    def health(self) -> tuple[int, dict]:
        return 200, {"status": "ok"}


def _total_state_from_text(text: str) -> State:
    from .parser import parse_state

    if not isinstance(text, str):
        raise _ApiError(400, {"error": "parse_error",
                              "message": "state must be an array or text"})
    return parse_state(text)


_ROUTES = [
    ("POST", re.compile(r"^/sessions$"), "create"),
    ("POST", re.compile(r"^/sessions/([0-9a-f]+)/bwd$"), "bwd"),
    ("POST", re.compile(r"^/sessions/([0-9a-f]+)/fwd$"), "fwd"),
    ("GET", re.compile(r"^/sessions/([0-9a-f]+)/check$"), "check"),
    ("GET", re.compile(r"^/health$"), "health"),
]


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # keep test output quiet
        pass

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length", "0"))
        raw = self.rfile.read(length) if length else b""
        try:
            body = json.loads(raw.decode("utf-8")) if raw else {}
        except (json.JSONDecodeError, UnicodeDecodeError):
            raise _ApiError(400, {"error": "invalid_json"})
        if not isinstance(body, dict):
            raise _ApiError(400, {"error": "invalid_json"})
        return body

    def _dispatch(self, method: str) -> None:
        service: SliceService = self.server.service
        url = urlparse(self.path)
        try:
            for route_method, pattern, name in _ROUTES:
                match = pattern.match(url.path)
                if match and route_method == method:
                    if name == "create":
                        status, payload = service.create_session(self._read_body())
                    elif name == "bwd":
                        status, payload = service.backward(match.group(1),
                                                           self._read_body())
                    elif name == "fwd":
                        status, payload = service.forward(match.group(1),
                                                          self._read_body())
                    elif name == "check":
                        query = parse_qs(url.query)
                        bound = int(query.get("bound", [DEFAULT_SIZE_BOUND])[0])
                        status, payload = service.check(match.group(1), bound)
                    else:
                        status, payload = service.health()
                    self._send_json(status, payload)
                    return
            if method == "GET" and self._serve_static(url.path):
                return
            self._send_json(404, {"error": "not_found", "path": url.path})
        except _ApiError as err:
            self._send_json(err.status, err.payload)
        except ImpError as err:
            status, payload = _error_payload(err)
            self._send_json(status, payload)

    def _serve_static(self, path: str) -> bool:
        ui_dir = self.server.ui_dir
        if ui_dir is None:
            return False
        name = "index.html" if path == "/" else path.lstrip("/")
        candidate = (ui_dir / name).resolve()
        if not str(candidate).startswith(str(ui_dir.resolve())):
            return False
        if not candidate.is_file():
            return False
        body = candidate.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", _CONTENT_TYPES.get(
            candidate.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)
        return True

    def do_GET(self) -> None:
        self._dispatch("GET")

    def do_POST(self) -> None:
        self._dispatch("POST")


class SliceServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address=("127.0.0.1", 0), ui_dir: str | None = None):
        super().__init__(address, _Handler)
        self.service = SliceService()
        self.ui_dir = Path(ui_dir) if ui_dir else None


def serve(port: int = 8765, ui_dir: str | None = None) -> None:
    """Run the service until interrupted."""
    server = SliceServer(("127.0.0.1", port), ui_dir)
    host, bound_port = server.server_address
    print(f"slice service listening on http://{host}:{bound_port}/")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
