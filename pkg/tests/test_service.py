import threading
import time

from fastapi.testclient import TestClient

from coxroot.game import play
from coxroot.scalars import render_scalar
from coxroot.service import MAX_AUTO_STEPS, SessionStore, create_app

from conftest import fixture_json, load_graph

A2_DOC = fixture_json("a2.json")
ASYM_DOC = fixture_json("asym_m3.json")
PQ4_DOC = fixture_json("dihedral_pq4.json")
NONUNITAL_DOC = fixture_json("nonunital_triangle.json")


def make_client(store=None):
    return TestClient(create_app(store))


def start(client, doc=A2_DOC, position=("1", "1")):
    response = client.post("/api/sessions",
                           json={"graph": doc, "position": list(position)})
    assert response.status_code == 201
    body = response.json()
    return body["id"], body["state"]


def test_health():
    client = make_client()
    response = client.get("/api/health")
    assert response.status_code == 200
    assert response.json() == {"status": "ok"}


def test_session_lifecycle():
    client = make_client()
    sid, state = start(client)
    assert state == {"position": ["1", "1"], "legal_moves": [1, 2],
                     "is_terminal": False, "fired": [], "reduced_word": [],
                     "branch_id": "b0"}

    state = client.post(f"/api/sessions/{sid}/fire", json={"node": 1}).json()
    assert state["position"] == ["-1", "2"]
    assert state["legal_moves"] == [2]
    assert state["fired"] == [1] and state["reduced_word"] == [1]

    state = client.post(f"/api/sessions/{sid}/fire", json={"node": 2}).json()
    state = client.post(f"/api/sessions/{sid}/fire", json={"node": 1}).json()
    assert state["position"] == ["-1", "-1"]
    assert state["is_terminal"] is True and state["legal_moves"] == []
    assert state["fired"] == [1, 2, 1] and state["reduced_word"] == [1, 2, 1]

    again = client.get(f"/api/sessions/{sid}").json()
    assert again == state


def test_fire_illegal_move_409():
    client = make_client()
    sid, _ = start(client, position=("-1", "2"))
    response = client.post(f"/api/sessions/{sid}/fire", json={"node": 1})
    assert response.status_code == 409
    assert response.json()["code"] == "IllegalMove"


def test_fire_node_validation_422():
    client = make_client()
    sid, _ = start(client)
    for node in (0, 3, "x", None, True):
        response = client.post(f"/api/sessions/{sid}/fire", json={"node": node})
        assert response.status_code == 422
        assert response.json()["code"] == "JsonError"


def test_undo_and_branch_reuse():
    client = make_client()
    sid, state = start(client)
    assert state["branch_id"] == "b0"

    b1 = client.post(f"/api/sessions/{sid}/fire", json={"node": 1}).json()
    b2 = client.post(f"/api/sessions/{sid}/fire", json={"node": 2}).json()
    assert (b1["branch_id"], b2["branch_id"]) == ("b1", "b2")

    state = client.post(f"/api/sessions/{sid}/undo").json()
    assert state["branch_id"] == "b1" and state["fired"] == [1]
    state = client.post(f"/api/sessions/{sid}/undo").json()
    assert state["branch_id"] == "b0" and state["fired"] == []

    response = client.post(f"/api/sessions/{sid}/undo")
    assert response.status_code == 409
    assert response.json()["code"] == "UndoAtRoot"

    # re-firing the same node steps back into the recorded branch
    state = client.post(f"/api/sessions/{sid}/fire", json={"node": 1}).json()
    assert state["branch_id"] == "b1"
    # a different node from the root opens a sibling branch
    client.post(f"/api/sessions/{sid}/undo")
    state = client.post(f"/api/sessions/{sid}/fire", json={"node": 2}).json()
    assert state["branch_id"] == "b3"


def test_auto_play():
    client = make_client()
    sid, _ = start(client)
    state = client.post(f"/api/sessions/{sid}/auto", json={}).json()
    assert state["auto_outcome"] == "terminated"
    assert state["fired"] == [1, 2, 1]
    assert state["position"] == ["-1", "-1"] and state["is_terminal"] is True
    # auto advanced through history nodes, so undo walks back through them
    state = client.post(f"/api/sessions/{sid}/undo").json()
    assert state["fired"] == [1, 2]


def test_auto_step_limit():
    client = make_client()
    sid, _ = start(client, doc=PQ4_DOC)
    state = client.post(f"/api/sessions/{sid}/auto", json={"max_steps": 5}).json()
    assert state["auto_outcome"] == "step_limit"
    assert len(state["fired"]) == 5


def test_auto_validation():
    client = make_client()
    sid, _ = start(client)
    bad_bodies = [
        {"strategy": "clever"},
        {"max_steps": 0},
        {"max_steps": MAX_AUTO_STEPS + 1},
        {"max_steps": True},
        {"seed": "x"},
    ]
    for body in bad_bodies:
        response = client.post(f"/api/sessions/{sid}/auto", json=body)
        assert response.status_code == 422
        assert response.json()["code"] == "JsonError"


def test_create_terminal_position():
    client = make_client()
    _, state = start(client, position=("-1", "0"))
    assert state["is_terminal"] is True and state["legal_moves"] == []


def test_create_validation_errors():
    client = make_client()
    response = client.post("/api/sessions", json={"position": ["1", "1"]})
    assert response.status_code == 422
    assert response.json()["code"] == "JsonError"

    bad_graph = {"n": 1, "entries": [{"i": 1, "j": 1, "value": "3"}]}
    response = client.post("/api/sessions",
                           json={"graph": bad_graph, "position": ["1"]})
    assert response.status_code == 422
    assert response.json()["code"] == "DiagonalNotTwo"

    response = client.post("/api/sessions",
                           json={"graph": A2_DOC, "position": ["1"]})
    assert response.status_code == 422

    response = client.post("/api/sessions",
                           json={"graph": A2_DOC, "position": ["1", "1/0"]})
    assert response.status_code == 422
    assert response.json()["code"] == "ValueSyntaxError"


def test_unknown_session_404():
    client = make_client()
    response = client.get("/api/sessions/s999")
    assert response.status_code == 404
    assert response.json()["code"] == "UnknownSession"


def test_exact_scalars_survive_the_wire():
    client = make_client()
    sid, _ = start(client, doc=ASYM_DOC)
    state = client.post(f"/api/sessions/{sid}/fire", json={"node": 1}).json()
    assert state["position"] == ["-1", "5"]
    state = client.post(f"/api/sessions/{sid}/fire", json={"node": 2}).json()
    assert state["position"] == ["1/4", "-5"]


def test_auto_replays_identically_to_the_engine():
    client = make_client()
    sid, _ = start(client, doc=ASYM_DOC, position=("1", "1"))
    state = client.post(f"/api/sessions/{sid}/auto", json={}).json()
    graph = load_graph("asym_m3.json")
    record = play(graph, (1, 1))
    assert state["auto_outcome"] == record.outcome
    assert state["fired"] == [i + 1 for i in record.fired]
    assert state["position"] == [render_scalar(x) for x in record.final]


def test_lru_cap_evicts_oldest():
    client = make_client(store=SessionStore(cap=2))
    sid1, _ = start(client)
    sid2, _ = start(client)
    sid3, _ = start(client)
    assert client.get(f"/api/sessions/{sid1}").status_code == 404
    assert client.get(f"/api/sessions/{sid2}").status_code == 200
    assert client.get(f"/api/sessions/{sid3}").status_code == 200


def test_idle_eviction():
    client = make_client(store=SessionStore(cap=8, idle_seconds=0.0))
    sid1, _ = start(client)
    time.sleep(0.01)
    sid2, _ = start(client)  # creation sweeps idle sessions
    assert client.get(f"/api/sessions/{sid1}").status_code == 404
    assert client.get(f"/api/sessions/{sid2}").status_code == 200


def test_sessions_are_isolated_across_threads():
    client = make_client()
    outcomes = {}

    def worker(node):
        sid, _ = start(client)
        state = client.post(f"/api/sessions/{sid}/fire", json={"node": node}).json()
        outcomes[sid] = (node, state["fired"])

    threads = [threading.Thread(target=worker, args=(1 + spot % 2,))
               for spot in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(outcomes) == 8
    for node, fired in outcomes.values():
        assert fired == [node]


def test_analyze():
    client = make_client()
    response = client.post("/api/analyze", json={"graph": ASYM_DOC})
    assert response.status_code == 200
    assert response.json() == {
        "n": 2,
        "labels": ["1", "2"],
        "mode": "exact",
        "connected": True,
        "matrix_type": "plus",
        "components": [[1, 2]],
        "unital": [True],
        "f_values": [2],
        "odd_asymmetries": [[1, 2]],
        "s_mult": [["4", "1"], ["1", "1/4"]],
        "bonds": [{"i": 1, "j": 2, "p": "4", "q": "1/4", "m": 3}],
    }


def test_analyze_disconnected():
    client = make_client()
    doc = {"n": 2, "entries": []}
    body = client.post("/api/analyze", json={"graph": doc}).json()
    assert body["connected"] is False and body["matrix_type"] is None
    assert body["components"] == [[1], [2]]
    assert body["bonds"] == []


def test_analyze_nonunital():
    client = make_client()
    body = client.post("/api/analyze", json={"graph": NONUNITAL_DOC}).json()
    assert body["unital"] == [False]
    assert body["f_values"] == [None]
    assert body["s_mult"] == [None, None, None]


def test_analyze_infinite_bond():
    client = make_client()
    body = client.post("/api/analyze", json={"graph": PQ4_DOC}).json()
    assert body["bonds"][0]["m"] == "inf"
    assert body["matrix_type"] == "zero"
