"""Local HTTP/JSON session service for the explorer UI.

Sessions are in-memory mutation walks.  Every state-changing request must
win the session's try-lock (and may carry an optimistic `version` token);
losers get 409 and roll back client-side.  Reads never lock: each session
keeps a stack of immutable snapshots, and a GET serializes whichever
snapshot is current when it starts.

POST /api/session            {seed}                -> {id, version}
GET  /api/session/{id}/state                       -> full state
POST /api/session/{id}/mutate  {k, version?}       -> {delta: full state}
POST /api/session/{id}/undo    {version?}          -> {delta: full state}
POST /api/session/{id}/track   {element}           -> {delta: full state}
GET  /api/session/{id}/enumerate?depth=d           -> exchange-graph slice
"""

from __future__ import annotations

import json
import re
import secrets
import threading
from dataclasses import dataclass
from fractions import Fraction
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

from . import jsonio
from .cgvectors import CGState, g_tilde, init_state, step
from .certify import enumerate_seeds
from .errors import (
    FrozenMutation,
    NotLaurent,
    QClusterError,
    TermLimitExceeded,
)
from .jsonio import BadInput
from .seeds import quiver_edges
from .torus import QElement, coefficient_class
from .transport import transport_step

__all__ = ["Engine", "make_server", "serve"]


class Busy(QClusterError):
    """Another writer holds the session."""


class Gone(QClusterError):
    """No such session."""


@dataclass(frozen=True)
class TrackedRow:
    name: str
    expr: QElement | None
    status: str  # polynomial | laurent_only | not_laurent
    failed_at: tuple[int, ...] | None


@dataclass(frozen=True)
class Snapshot:
    cg: CGState
    tracked: tuple[TrackedRow, ...]


def _expr_status(f: QElement) -> str:
    neg = any(x < 0 for exp in f.terms for x in exp)
    return "laurent_only" if neg else "polynomial"


def _edge_obj(mult: Fraction):
    return int(mult) if mult.denominator == 1 else {"num": mult.numerator, "den": mult.denominator}


class Session:
    def __init__(self, sid: str, seed):
        self.id = sid
        self.lock = threading.Lock()
        self.snaps: list[Snapshot] = [Snapshot(init_state(seed), ())]

    @property
    def current(self) -> Snapshot:
        return self.snaps[-1]

    @property
    def version(self) -> int:
        return len(self.snaps) - 1


class Engine:
    """Session store; all public methods return JSON-ready dicts."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    # -- helpers --------------------------------------------------------------

    def _get(self, sid: str) -> Session:
        with self._lock:
            try:
                return self._sessions[sid]
            except KeyError:
                raise Gone(f"no session {sid!r}") from None

    def _state_obj(self, ses: Session, snap: Snapshot, version: int) -> dict:
        seed = snap.cg.seed
        tracked = []
        for row in snap.tracked:
            item = {
                "name": row.name,
                "status": row.status,
                "coefficient_class": coefficient_class(row.expr) if row.expr else None,
                "term_count": row.expr.term_count() if row.expr else 0,
                "failed_at": list(row.failed_at) if row.failed_at else None,
            }
            if row.expr is not None:
                item["element"] = jsonio.element_to_obj(row.expr)
            tracked.append(item)
        return {
            "id": ses.id,
            "version": version,
            "path": list(snap.cg.path),
            "seed": jsonio.seed_to_obj(seed),
            "edges": [[i, j, _edge_obj(m)] for i, j, m in quiver_edges(seed)],
            "c": jsonio.matrix_to_obj(snap.cg.c),
            "g": jsonio.matrix_to_obj(snap.cg.g),
            "g_tilde": jsonio.matrix_to_obj(g_tilde(snap.cg)),
            "tracked": tracked,
        }

    def _locked(self, sid: str, version):
        ses = self._get(sid)
        if not ses.lock.acquire(blocking=False):
            raise Busy("session is being modified")
        if version is not None and version != ses.version:
            ses.lock.release()
            raise Busy(f"version {version} is stale (now {ses.version})")
        return ses

    # -- endpoints ------------------------------------------------------------

    def create(self, obj) -> dict:
        if isinstance(obj, dict) and "seed" in obj:
            obj = obj["seed"]
        seed = jsonio.seed_from_obj(obj)
        sid = secrets.token_hex(8)
        with self._lock:
            self._sessions[sid] = Session(sid, seed)
        return {"id": sid, "version": 0}

    def state(self, sid: str) -> dict:
        ses = self._get(sid)
        snap, version = ses.current, ses.version
        return self._state_obj(ses, snap, version)

    def mutate(self, sid: str, body) -> dict:
        if not isinstance(body, dict) or "k" not in body:
            raise BadInput("mutate needs {k}")
        k = body["k"]
        if not isinstance(k, int):
            raise BadInput("k must be an integer")
        ses = self._locked(sid, body.get("version"))
        try:
            snap = ses.current
            if not 0 <= k < snap.cg.seed.rank:
                raise BadInput(f"index {k} out of range")
            cg = step(snap.cg, k)
            rows = []
            for row in snap.tracked:
                if row.expr is None:
                    rows.append(row)
                    continue
                try:
                    moved = transport_step(row.expr, k)
                except NotLaurent:
                    rows.append(
                        TrackedRow(row.name, None, "not_laurent", cg.path)
                    )
                    continue
                rows.append(TrackedRow(row.name, moved, _expr_status(moved), None))
            ses.snaps.append(Snapshot(cg, tuple(rows)))
            return {"delta": self._state_obj(ses, ses.current, ses.version)}
        finally:
            ses.lock.release()

    def undo(self, sid: str, body) -> dict:
        body = body if isinstance(body, dict) else {}
        ses = self._locked(sid, body.get("version"))
        try:
            if len(ses.snaps) == 1:
                raise BadInput("nothing to undo")
            ses.snaps.pop()
            return {"delta": self._state_obj(ses, ses.current, ses.version)}
        finally:
            ses.lock.release()

    def track(self, sid: str, body) -> dict:
        if not isinstance(body, dict):
            raise BadInput("track needs an element object")
        obj = body.get("element", body)
        name = body.get("name") or f"tracked-{secrets.token_hex(3)}"
        ses = self._locked(sid, body.get("version"))
        try:
            snap = ses.current
            expr = jsonio.element_from_obj(obj, seed=snap.cg.seed)
            if any(row.name == name for row in snap.tracked):
                raise BadInput(f"name {name!r} already tracked")
            row = TrackedRow(name, expr, _expr_status(expr), None)
            ses.snaps.append(Snapshot(snap.cg, snap.tracked + (row,)))
            return {"delta": self._state_obj(ses, ses.current, ses.version)}
        finally:
            ses.lock.release()

    def enumerate(self, sid: str, depth: int, threads: int = 1) -> dict:
        ses = self._get(sid)
        snap = ses.current
        nodes, closed = enumerate_seeds(snap.cg.seed, depth, threads=threads)
        return {
            "closed": closed,
            "count": len(nodes),
            "nodes": [
                {
                    "index": n.index,
                    "path": list(n.path),
                    "parent": n.parent,
                    "step": n.step_k,
                    "edges": [
                        [i, j, _edge_obj(m)] for i, j, m in quiver_edges(n.seed)
                    ],
                    "c": jsonio.matrix_to_obj(n.cg.c),
                    "g": jsonio.matrix_to_obj(n.cg.g),
                    "g_tilde": jsonio.matrix_to_obj(g_tilde(n.cg)),
                }
                for n in nodes
            ],
        }


_ROUTE = re.compile(r"^/api/session/([0-9a-f]+)/(state|mutate|undo|track|enumerate)$")


class Handler(BaseHTTPRequestHandler):
    engine: Engine  # set by make_server

    # -- plumbing ---------------------------------------------------------------

    def log_message(self, fmt, *args):
        pass

    def _send(self, code: int, obj) -> None:
        payload = jsonio.dumps(obj).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.end_headers()
        self.wfile.write(payload)

    def _body(self):
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise BadInput(f"bad JSON body: {exc}") from exc

    def _run(self, fn):
        try:
            self._send(200, fn())
        except Busy as exc:
            self._send(409, {"error": str(exc)})
        except Gone as exc:
            self._send(404, {"error": str(exc)})
        except (BadInput, FrozenMutation, TermLimitExceeded, ValueError) as exc:
            self._send(400, {"error": str(exc)})
        except QClusterError as exc:
            self._send(500, {"error": str(exc)})

    # -- verbs ------------------------------------------------------------------

    def do_OPTIONS(self):
        self._send(200, {})

    def do_GET(self):
        url = urlparse(self.path)
        m = _ROUTE.match(url.path)
        if not m:
            return self._send(404, {"error": "unknown endpoint"})
        sid, action = m.groups()
        if action == "state":
            return self._run(lambda: self.engine.state(sid))
        if action == "enumerate":
            q = parse_qs(url.query)
            try:
                depth = int(q.get("depth", ["4"])[0])
                threads = int(q.get("threads", ["1"])[0])
            except ValueError:
                return self._send(400, {"error": "depth must be an integer"})
            return self._run(lambda: self.engine.enumerate(sid, depth, threads))
        return self._send(405, {"error": f"{action} is POST-only"})

    def do_POST(self):
        url = urlparse(self.path)
        if url.path.rstrip("/") == "/api/session":
            return self._run(lambda: self.engine.create(self._body()))
        m = _ROUTE.match(url.path)
        if not m:
            return self._send(404, {"error": "unknown endpoint"})
        sid, action = m.groups()
        if action == "mutate":
            return self._run(lambda: self.engine.mutate(sid, self._body()))
        if action == "undo":
            return self._run(lambda: self.engine.undo(sid, self._body()))
        if action == "track":
            return self._run(lambda: self.engine.track(sid, self._body()))
        return self._send(405, {"error": f"{action} is GET-only"})


def make_server(host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    engine = Engine()
    handler = type("BoundHandler", (Handler,), {"engine": engine})
    server = ThreadingHTTPServer((host, port), handler)
    server.engine = engine  # type: ignore[attr-defined]
    return server


def serve(host: str = "127.0.0.1", port: int = 8421) -> None:
    server = make_server(host, port)
    print(f"qcluster service on http://{host}:{server.server_address[1]}/api/session")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
