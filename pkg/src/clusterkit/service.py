"""HTTP JSON service: a thin session shell over the seed and Y-seed engines.

Sessions live in memory. Every state transition is performed by the library;
the service only stores history and serializes concurrent access per session.
"""

from __future__ import annotations

import json
import re
import threading
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from itertools import permutations
from pathlib import Path
from urllib.parse import parse_qs, urlparse

from .errors import ClusterKitError, FrozenVertexError, ParseError
from .quiver import ExchangeMatrix, Quiver
from .seed import Seed, exchange_graph
from .ysystem import YSeed


def _yseed_canonical_key(ys: YSeed):
    n = ys.matrix.n
    renders = [r.render() for r in ys.y]
    best = None
    for perm in permutations(range(n)):
        y = [""] * n
        for i in range(n):
            y[perm[i]] = renders[i]
        key = (tuple(y), ys.matrix.permuted(perm).rows)
        if best is None or key < best:
            best = key
    return best


@dataclass
class SessionState:
    """One mutation session: an initial seed and its mutation history."""

    id: str
    mode: str  # "seed" | "yseed"
    history: list  # Seed or YSeed instances; index 0 is the initial state
    moves: list[int] = field(default_factory=list)
    lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def current(self):
        return self.history[-1]

    def mutate(self, vertex: int) -> None:
        self.history.append(self.current.mutate(vertex))
        self.moves.append(vertex)

    def undo(self) -> None:
        if len(self.history) > 1:
            self.history.pop()
            self.moves.pop()

    def returns_to_initial(self) -> bool:
        if len(self.history) < 2:
            return False
        initial, current = self.history[0], self.current
        if self.mode == "seed":
            return initial.canonical_key() == current.canonical_key()
        return _yseed_canonical_key(initial) == _yseed_canonical_key(current)

    def to_json_dict(self) -> dict:
        cur = self.current
        if self.mode == "seed":
            quiver_json = None
            matrix = cur.matrix
            if matrix.principal().is_skew_symmetric():
                quiver_json = matrix.to_quiver().to_json_dict()
            payload = {
                "id": self.id,
                "mode": self.mode,
                "n": matrix.n,
                "m": matrix.m,
                "quiver": quiver_json,
                "matrix": matrix.to_json(),
                "cluster": [r.render() for r in cur.cluster],
                "frozen": list(cur.context.names[matrix.n : matrix.m]),
                "history": list(self.moves),
                "returns_to_initial_up_to_relabeling": self.returns_to_initial(),
            }
        else:
            payload = {
                "id": self.id,
                "mode": self.mode,
                "n": cur.matrix.n,
                "m": cur.matrix.n,
                "quiver": cur.quiver().to_json_dict(),
                "matrix": cur.matrix.to_json(),
                "y": [r.render() for r in cur.y],
                "history": list(self.moves),
                "returns_to_initial_up_to_relabeling": self.returns_to_initial(),
            }
        return payload


class SessionStore:
    def __init__(self):
        self._sessions: dict[str, SessionState] = {}
        self._lock = threading.Lock()

    def create(self, body: dict) -> SessionState:
        if not isinstance(body, dict):
            raise ParseError("request body must be a JSON object")
        if "yseed" in body:
            spec = body["yseed"]
            quiver = _quiver_from(spec)
            if quiver.n_frozen:
                raise ParseError("Y-seed sessions use quivers without frozen vertices")
            state: Seed | YSeed = YSeed.initial(quiver)
            mode = "yseed"
        elif "seed" in body:
            state = Seed.from_json_dict(body["seed"])
            mode = "seed"
        elif "quiver" in body or "matrix" in body:
            state = Seed.initial_geometric(_quiver_source_from(body))
            mode = "seed"
        else:
            raise ParseError("expected one of: seed, quiver, matrix, yseed")
        session = SessionState(id=uuid.uuid4().hex[:12], mode=mode, history=[state])
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, sid: str) -> SessionState | None:
        with self._lock:
            return self._sessions.get(sid)


def _quiver_from(spec) -> Quiver:
    if isinstance(spec, dict) and "arrows" in spec:
        return Quiver.from_json_dict(spec)
    if isinstance(spec, dict) and "quiver" in spec:
        return Quiver.from_json_dict(spec["quiver"])
    if isinstance(spec, dict) and "matrix" in spec:
        return ExchangeMatrix.from_json(spec["matrix"]).to_quiver()
    if isinstance(spec, list):
        return ExchangeMatrix.from_json(spec).to_quiver()
    raise ParseError("cannot interpret quiver specification")


def _quiver_source_from(body: dict):
    if "quiver" in body:
        return Quiver.from_json_dict(body["quiver"])
    return ExchangeMatrix.from_json(body["matrix"])


class _Handler(BaseHTTPRequestHandler):
    store: SessionStore
    static_dir: Path | None = None

    # quieter logs for a desk tool
    def log_message(self, fmt, *args):  # noqa: N802
        pass

    def _send_json(self, code: int, payload: dict) -> None:
        data = json.dumps(payload, sort_keys=True).encode()
        self.send_response(code)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(data)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(data)

    def _read_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        if length == 0:
            return {}
        raw = self.rfile.read(length)
        try:
            return json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON body: {exc}") from exc

    def do_OPTIONS(self):  # noqa: N802
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self):  # noqa: N802
        url = urlparse(self.path)
        m = re.fullmatch(r"/sessions/([0-9a-f]+)", url.path)
        if m:
            session = self.store.get(m.group(1))
            if session is None:
                return self._send_json(404, {"error": "unknown session"})
            with session.lock:
                return self._send_json(200, session.to_json_dict())
        m = re.fullmatch(r"/sessions/([0-9a-f]+)/exchange-graph", url.path)
        if m:
            session = self.store.get(m.group(1))
            if session is None:
                return self._send_json(404, {"error": "unknown session"})
            if session.mode != "seed":
                return self._send_json(422, {"error": "exchange graphs need a seed session"})
            params = parse_qs(url.query)
            try:
                budget = int(params.get("budget", ["500"])[0])
            except ValueError:
                return self._send_json(422, {"error": "budget must be an integer"})
            with session.lock:
                graph, exceeded = exchange_graph(session.current, budget)
            if exceeded:
                return self._send_json(200, {"exceeded": True})
            return self._send_json(
                200,
                {
                    "exceeded": False,
                    "vertices": graph.n_vertices,
                    "edges": graph.n_edges,
                    "graph": graph.to_json_dict(),
                },
            )
        return self._serve_static(url.path)

    def do_POST(self):  # noqa: N802
        url = urlparse(self.path)
        try:
            if url.path == "/sessions":
                session = self.store.create(self._read_body())
                return self._send_json(201, {"id": session.id})
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/mutate", url.path)
            if m:
                session = self.store.get(m.group(1))
                if session is None:
                    return self._send_json(404, {"error": "unknown session"})
                body = self._read_body()
                if "vertex" not in body or not isinstance(body["vertex"], int):
                    return self._send_json(422, {"error": "body needs an integer 'vertex'"})
                with session.lock:
                    try:
                        session.mutate(body["vertex"])
                    except FrozenVertexError as exc:
                        return self._send_json(409, {"error": str(exc)})
                    except IndexError as exc:
                        return self._send_json(422, {"error": str(exc)})
                    return self._send_json(200, session.to_json_dict())
            m = re.fullmatch(r"/sessions/([0-9a-f]+)/undo", url.path)
            if m:
                session = self.store.get(m.group(1))
                if session is None:
                    return self._send_json(404, {"error": "unknown session"})
                with session.lock:
                    session.undo()
                    return self._send_json(200, session.to_json_dict())
            return self._send_json(404, {"error": "no such endpoint"})
        except ParseError as exc:
            return self._send_json(422, {"error": str(exc)})
        except ClusterKitError as exc:
            return self._send_json(422, {"error": str(exc)})

    def _serve_static(self, path: str):
        if self.static_dir is None:
            return self._send_json(404, {"error": "no such endpoint"})
        rel = path.lstrip("/") or "index.html"
        target = (self.static_dir / rel).resolve()
        if not str(target).startswith(str(self.static_dir.resolve())) or not target.is_file():
            return self._send_json(404, {"error": "not found"})
        types = {
            ".html": "text/html",
            ".js": "application/javascript",
            ".css": "text/css",
            ".svg": "image/svg+xml",
            ".png": "image/png",
        }
        data = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type", types.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(data)))
        self.end_headers()
        self.wfile.write(data)


def make_server(host: str = "127.0.0.1", port: int = 8060, static_dir: str | None = None):
    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "store": SessionStore(),
            "static_dir": Path(static_dir) if static_dir else _default_static_dir(),
        },
    )
    return ThreadingHTTPServer((host, port), handler)


def _default_static_dir() -> Path | None:
    candidate = Path(__file__).resolve().parents[2] / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def run_server(host: str = "127.0.0.1", port: int = 8060, static_dir: str | None = None) -> None:
    server = make_server(host, port, static_dir)
    where = f"http://{host}:{port}"
    print(f"clusterkit service listening on {where}", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
