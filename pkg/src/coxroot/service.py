"""HTTP JSON service: graph analysis plus stateful numbers-game sessions.

Sessions are in-memory, capped by an LRU bound with idle eviction, and
hold a *tree* of positions (undo keeps history, so a human can branch
into what-if lines).  The cursor names the current branch node; firing
advances it (reusing an existing child when the same node is re-fired
from the same spot), undo moves to the parent, auto extends the branch
through the pure play engine.

All math is delegated to the graph/game modules; this layer only
translates: node indices are 1-based on the wire, words are serialized
in firing order, and positions serialize as Scalar strings ("-1/5",
"0.25") so exact coordinates survive JSON.  Errors are {code, detail}
with 404 for unknown sessions, 409 for illegal moves or undo at the
root, and 422 for validation failures (carrying the graph error code).
"""

import itertools
import threading
import time
from collections import OrderedDict

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .document import parse_graph_document
from .errors import CoxrootError, NotConnected
from .game import fire, legal_moves, play
from .graph import INFINITY
from .rep import word_length_and_reduce
from .roots import s_mult
from .scalars import render_scalar

DEFAULT_PORT = 8733
PORT_ENV_VAR = "COXROOT_PORT"
SESSION_CAP = 256
IDLE_SECONDS = 3600.0
DEFAULT_AUTO_STEPS = 1000
MAX_AUTO_STEPS = 100000


class ApiError(Exception):
    """An error with an HTTP status and a stable machine code."""

    def __init__(self, status, code, detail):
        super().__init__(detail)
        self.status = status
        self.code = code
        self.detail = detail


class HistoryNode:
    __slots__ = ("id", "parent", "fired", "position", "children")

    def __init__(self, node_id, parent, fired, position):
        self.id = node_id
        self.parent = parent
        self.fired = fired
        self.position = position
        self.children = []


class Session:
    """One game: a graph, a history tree of positions, and a cursor."""

    def __init__(self, session_id, graph, position):
        self.id = session_id
        self.graph = graph
        self.lock = threading.Lock()
        self.touched = time.monotonic()
        self._ids = itertools.count()
        self.root = self._new_node(None, None, position)
        self.cursor = self.root

    def _new_node(self, parent, fired, position):
        node = HistoryNode(f"b{next(self._ids)}", parent, fired, position)
        if parent is not None:
            parent.children.append(node)
        return node

    def advance(self, fired, position):
        """Move the cursor along a fire, reusing an existing branch child."""
        for child in self.cursor.children:
            if child.fired == fired:
                self.cursor = child
                return
        self.cursor = self._new_node(self.cursor, fired, position)

    def fired_sequence(self):
        """Fired nodes from the root to the cursor, in firing order."""
        fired = []
        node = self.cursor
        while node.parent is not None:
            fired.append(node.fired)
            node = node.parent
        fired.reverse()
        return fired

    def state(self):
        graph = self.graph
        position = self.cursor.position
        fired = self.fired_sequence()
        _, reduced = word_length_and_reduce(graph, list(reversed(fired)))
        return {
            "position": [render_scalar(x) for x in position],
            "legal_moves": [i + 1 for i in legal_moves(graph, position)],
            "is_terminal": not legal_moves(graph, position),
            "fired": [i + 1 for i in fired],
            "reduced_word": [i + 1 for i in reversed(reduced)],
            "branch_id": self.cursor.id,
        }


class SessionStore:
    """LRU map of sessions with idle eviction; all access goes through get."""

    def __init__(self, cap=SESSION_CAP, idle_seconds=IDLE_SECONDS):
        self.cap = cap
        self.idle_seconds = idle_seconds
        self._lock = threading.Lock()
        self._sessions = OrderedDict()
        self._ids = itertools.count(1)

    def create(self, graph, position):
        with self._lock:
            self._evict_idle()
            while len(self._sessions) >= self.cap:
                self._sessions.popitem(last=False)
            session = Session(f"s{next(self._ids)}", graph, position)
            self._sessions[session.id] = session
            return session

    def get(self, session_id):
        with self._lock:
            session = self._sessions.get(session_id)
            if session is None:
                raise ApiError(404, "UnknownSession", f"no session {session_id!r}")
            session.touched = time.monotonic()
            self._sessions.move_to_end(session_id)
            return session

    def _evict_idle(self):
        now = time.monotonic()
        stale = [sid for sid, session in self._sessions.items()
                 if now - session.touched > self.idle_seconds]
        for sid in stale:
            del self._sessions[sid]


def _build_graph(payload):
    if not isinstance(payload, dict) or "graph" not in payload:
        raise ApiError(422, "JsonError", "request body needs a 'graph' object")
    try:
        return parse_graph_document(payload["graph"]).build()
    except CoxrootError as exc:
        raise ApiError(422, exc.code, exc.detail) from None


def _parse_position(graph, payload):
    raw = payload.get("position")
    if not isinstance(raw, list) or len(raw) != graph.n:
        raise ApiError(422, "JsonError",
                       f"'position' must be an array of {graph.n} values")
    try:
        return tuple(graph.ctx.parse(value) for value in raw)
    except CoxrootError as exc:
        raise ApiError(422, exc.code, exc.detail) from None


def _analysis(graph):
    components = graph.on_components()
    unital = [graph.is_unital_on_cyclic(c) for c in components]
    f_values = [graph.f_value(c) if ok else None
                for c, ok in zip(components, unital)]
    smult = []
    for x in range(graph.n):
        spot = components.index(graph.component_of(x))
        if unital[spot]:
            smult.append([render_scalar(k) for k in s_mult(graph, x).k_values])
        else:
            smult.append(None)
    bonds = []
    for i, j in graph.edges:
        p, q = graph.edge_label(i, j)
        m = graph.m_order(i, j)
        bonds.append({"i": i + 1, "j": j + 1,
                      "p": render_scalar(p), "q": render_scalar(q),
                      "m": "inf" if m is INFINITY else m})
    try:
        matrix_type = graph.classify_matrix_type()
    except NotConnected:
        matrix_type = None
    return {
        "n": graph.n,
        "labels": list(graph.labels),
        "mode": graph.mode,
        "connected": graph.is_connected(),
        "matrix_type": matrix_type,
        "components": [[x + 1 for x in c] for c in components],
        "unital": unital,
        "f_values": f_values,
        "odd_asymmetries": [[i + 1, j + 1] for i, j in graph.odd_asymmetries],
        "s_mult": smult,
        "bonds": bonds,
    }


def create_app(store=None):
    app = FastAPI(title="coxroot game service")
    sessions = store if store is not None else SessionStore()

    @app.exception_handler(ApiError)
    async def _api_error(request, exc):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code, "detail": exc.detail})

    @app.exception_handler(CoxrootError)
    async def _domain_error(request, exc):
        return JSONResponse(status_code=422,
                            content={"code": exc.code, "detail": exc.detail})

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.post("/api/sessions", status_code=201)
    def create_session(payload: dict):
        graph = _build_graph(payload)
        position = _parse_position(graph, payload)
        session = sessions.create(graph, position)
        with session.lock:
            return {"id": session.id, "state": session.state()}

    @app.get("/api/sessions/{session_id}")
    def get_session(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            return session.state()

    @app.post("/api/sessions/{session_id}/fire")
    def fire_move(session_id: str, payload: dict):
        session = sessions.get(session_id)
        node = payload.get("node")
        if not isinstance(node, int) or isinstance(node, bool) \
                or not 1 <= node <= session.graph.n:
            raise ApiError(422, "JsonError",
                           f"'node' must be an integer in 1..{session.graph.n}")
        with session.lock:
            position = session.cursor.position
            if node - 1 not in legal_moves(session.graph, position):
                raise ApiError(409, "IllegalMove",
                               f"node {node} is not legal at the current position")
            session.advance(node - 1, fire(session.graph, position, node - 1))
            return session.state()

    @app.post("/api/sessions/{session_id}/undo")
    def undo(session_id: str):
        session = sessions.get(session_id)
        with session.lock:
            if session.cursor.parent is None:
                raise ApiError(409, "UndoAtRoot", "already at the initial position")
            session.cursor = session.cursor.parent
            return session.state()

    @app.post("/api/sessions/{session_id}/auto")
    def auto(session_id: str, payload: dict | None = None):
        payload = payload or {}
        session = sessions.get(session_id)
        strategy = payload.get("strategy", "first_legal")
        if strategy not in ("first_legal", "random"):
            raise ApiError(422, "JsonError",
                           "'strategy' must be \"first_legal\" or \"random\"")
        max_steps = payload.get("max_steps", DEFAULT_AUTO_STEPS)
        if not isinstance(max_steps, int) or isinstance(max_steps, bool) \
                or not 1 <= max_steps <= MAX_AUTO_STEPS:
            raise ApiError(422, "JsonError",
                           f"'max_steps' must be an integer in 1..{MAX_AUTO_STEPS}")
        seed = payload.get("seed", 0)
        if not isinstance(seed, int) or isinstance(seed, bool):
            raise ApiError(422, "JsonError", "'seed' must be an integer")
        with session.lock:
            record = play(session.graph, session.cursor.position,
                          strategy=strategy, max_steps=max_steps, seed=seed)
            position = session.cursor.position
            for node in record.fired:
                position = fire(session.graph, position, node)
                session.advance(node, position)
            state = session.state()
            state["auto_outcome"] = record.outcome
            return state

    @app.post("/api/analyze")
    def analyze(payload: dict):
        return _analysis(_build_graph(payload))

    return app
