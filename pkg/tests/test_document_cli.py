import json

import pytest
from click.testing import CliRunner

from coxroot.cli import main
from coxroot.document import (GraphDocument, parse_graph_document,
                              parse_graph_file)
from coxroot.errors import (DiagonalNotTwo, IoError, JsonError,
                            ValueSyntaxError)

from conftest import FIXTURE_DIR, fixture_json, fixture_path

runner = CliRunner()

ALL_FIXTURES = ["a2.json", "b2.json", "g2.json", "asym_m3.json",
                "dihedral_pq4.json", "example48.json",
                "nonunital_triangle.json", "example312_reconstruction.json"]


def run(*args):
    return runner.invoke(main, list(args))


# ----------------------------------------------------------- documents

def test_serialize_round_trip_is_identity():
    raw = fixture_json("a2.json")
    doc = parse_graph_document(raw)
    assert doc.serialize() == raw


@pytest.mark.parametrize("name", ALL_FIXTURES)
def test_all_fixtures_parse_and_round_trip(name):
    doc = parse_graph_file(fixture_path(name))
    once = doc.serialize()
    again = parse_graph_document(once).serialize()
    assert once == again
    doc.build()


def test_numeric_entry_values_are_canonicalized():
    doc = parse_graph_document({
        "n": 2,
        "entries": [{"i": 1, "j": 2, "value": -1},
                    {"i": 2, "j": 1, "value": -0.25}],
    })
    values = {(i, j): v for i, j, v in doc.entries}
    assert values[(0, 1)] == "-1"
    assert values[(1, 0)] == "-0.25"


def test_explicit_diagonal_entries_pass_through_to_validation():
    doc = parse_graph_document({
        "n": 1, "entries": [{"i": 1, "j": 1, "value": "3"}]})
    with pytest.raises(DiagonalNotTwo):
        doc.build()
    doc = parse_graph_document({
        "n": 1, "entries": [{"i": 1, "j": 1, "value": "2"}]})
    assert doc.build().n == 1


def test_document_shape_errors():
    bad_documents = [
        [],                                        # not an object
        {"entries": []},                           # missing n
        {"n": True, "entries": []},                # boolean n
        {"n": 0, "entries": []},                   # n < 1
        {"n": "2", "entries": []},                 # n not an int
        {"n": 2},                                  # missing entries
        {"n": 2, "entries": {}},                   # entries not a list
        {"n": 2, "entries": ["x"]},                # entry not an object
        {"n": 2, "entries": [{"i": 1, "j": 2}]},   # entry missing value
        {"n": 2, "entries": [{"i": 0, "j": 2, "value": "-1"}]},   # i out of range
        {"n": 2, "entries": [{"i": 1, "j": 3, "value": "-1"}]},   # j out of range
        {"n": 2, "entries": [{"i": True, "j": 2, "value": "-1"}]},
        {"n": 2, "entries": [{"i": 1, "j": 2, "value": "-1"},
                             {"i": 1, "j": 2, "value": "-2"}]},   # duplicate pair
        {"n": 2, "entries": [], "labels": ["only-one"]},
        {"n": 2, "entries": [], "labels": ["a", 2]},
        {"n": 2, "entries": [], "mode": "fuzzy"},
        {"n": 2, "entries": [], "tolerance": 0},
        {"n": 2, "entries": [], "tolerance": True},
        {"n": 2, "entries": [], "tolerance": "tight"},
        {"n": 2, "entries": [{"i": 1, "j": 2, "value": [1]}]},
        {"n": 2, "entries": [{"i": 1, "j": 2, "value": True}]},
    ]
    for obj in bad_documents:
        with pytest.raises(JsonError):
            parse_graph_document(obj)


def test_document_bad_scalar_string_names_the_entry():
    with pytest.raises(ValueSyntaxError) as info:
        parse_graph_document(
            {"n": 2, "entries": [{"i": 1, "j": 2, "value": "-1/0"}]})
    assert "entries[0]" in str(info.value)


def test_parse_graph_file_io_error():
    with pytest.raises(IoError):
        parse_graph_file(FIXTURE_DIR / "no_such_file.json")


def test_parse_graph_file_reports_json_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"n": 2,\n  "entries": [}\n}')
    with pytest.raises(JsonError) as info:
        parse_graph_file(path)
    assert "line 2" in str(info.value)


def test_document_defaults():
    doc = GraphDocument(2, [(0, 1, "-1"), (1, 0, "-1")])
    assert doc.to_table() == [[2, "-1"], ["-1", 2]]
    assert doc.build().labels == ("1", "2")
    assert "labels" not in doc.serialize()


# ---------------------------------------------------------- CLI: happy paths

def test_cli_validate_json():
    result = run("validate", str(fixture_path("a2.json")), "--json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload == {
        "valid": True, "n": 2, "mode": "exact", "labels": ["1", "2"],
        "bonds": [{"i": 1, "j": 2, "p": "1", "q": "1", "m": 3}],
    }


def test_cli_validate_human():
    result = run("validate", str(fixture_path("example48.json")))
    assert result.exit_code == 0
    assert "valid E-GCM graph: n=2, mode=exact" in result.output
    assert "m = inf" in result.output


def test_cli_classify_json():
    result = run("classify", str(fixture_path("asym_m3.json")), "--json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload == {
        "type": "plus",
        "m": [[None, 3], [3, None]],
        "odd_asymmetries": [[1, 2]],
        "components": [[1, 2]],
        "unital": [True],
        "f_values": [2],
    }


def test_cli_classify_nonunital_human():
    result = run("classify", str(fixture_path("nonunital_triangle.json")))
    assert result.exit_code == 0
    assert "not unital" in result.output


def test_cli_roots_json():
    result = run("roots", str(fixture_path("asym_m3.json")), "--json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload["exhausted"] is True
    assert payload["count"] == 12 and payload["positive_count"] == 6
    first = payload["roots"][0]
    assert first == {"vector": ["1", "0"], "witness": [], "origin": 1, "sign": 1}


def test_cli_roots_max_count_failure():
    result = run("roots", str(fixture_path("dihedral_pq4.json")),
                 "--max-count", "5", "--json")
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload["error"]["code"] == "LimitExceeded"


def test_cli_smult_json():
    result = run("smult", str(fixture_path("asym_m3.json")), "--node", "2",
                 "--json")
    assert result.exit_code == 0
    payload = json.loads(result.output)
    assert payload == {"node": 2, "finite": True, "K_values": ["1", "1/4"],
                       "cycle": None}


def test_cli_smult_human_golden():
    result = run("smult", str(fixture_path("asym_m3.json")), "--node", "2")
    assert result.output.splitlines() == [
        "S(alpha_2) = {1, 1/4} . alpha_2  (2 values)"]


def test_cli_smult_nonunital():
    result = run("smult", str(fixture_path("nonunital_triangle.json")),
                 "--node", "1", "--json")
    payload = json.loads(result.output)
    assert payload["finite"] is False and payload["K_values"] is None
    assert payload["cycle"][0] == payload["cycle"][-1]


def test_cli_inversions_json():
    result = run("inversions", str(fixture_path("asym_m3.json")),
                 "--word", "2", "--json")
    payload = json.loads(result.output)
    assert payload == {
        "word": [2], "count": 2, "length": 1, "f1": 2, "f2": 2,
        "lower": 2, "upper": 2,
        "roots": [["0", "1"], ["0", "1/4"]],
    }


def test_cli_reduce_json():
    result = run("reduce", str(fixture_path("a2.json")),
                 "--word", "1,1,2", "--json")
    payload = json.loads(result.output)
    assert payload == {"input": [1, 1, 2], "reduced": [2], "length": 1,
                       "was_reduced": False}


def test_cli_reduce_then_inversions_invariant():
    # N(w) of an unreduced word equals N of its reduced form
    graph_file = str(fixture_path("g2.json"))
    word = "1,1,2,1,2"
    reduced = json.loads(run("reduce", graph_file, "--word", word,
                             "--json").output)["reduced"]
    original = json.loads(run("inversions", graph_file, "--word", word,
                              "--json").output)
    again = json.loads(run("inversions", graph_file, "--word",
                           ",".join(str(x) for x in reduced), "--json").output)
    assert original == again


def test_cli_factor_json():
    result = run("factor", str(fixture_path("b2.json")),
                 "--word", "2,1,2", "--node", "1", "--json")
    payload = json.loads(result.output)
    assert payload == {
        "kind": "factored", "sign": 1, "K": "1", "x": 1, "path": [1],
        "er_sequences": [{"root": 1, "partners": [2]}],
        "trailing_reflection": False, "expanded": [2, 1, 2], "length": 3,
    }


def test_cli_factor_not_multiple():
    result = run("factor", str(fixture_path("a2.json")),
                 "--word", "2", "--node", "1", "--json")
    payload = json.loads(result.output)
    assert payload["kind"] == "not_multiple"


def test_cli_dominance_json():
    result = run("dominance", str(fixture_path("a2.json")),
                 "--alpha", "1", "--beta", "2", "--json")
    payload = json.loads(result.output)
    assert payload == {"alpha": 1, "beta": 2, "bound": 6,
                       "dominates_up_to_bound": False, "witness": [1]}


def test_cli_game_json():
    result = run("game", str(fixture_path("a2.json")), "--position", "1,1",
                 "--json")
    payload = json.loads(result.output)
    assert payload == {
        "outcome": "terminated", "steps": 3, "fired": [1, 2, 1],
        "reduced": True, "initial": ["1", "1"], "final": ["-1", "-1"],
    }


def test_cli_game_human_golden():
    result = run("game", str(fixture_path("a2.json")), "--position", "1,1")
    assert result.output.splitlines() == [
        "terminated in 3 steps; word s1 s2 s1 reduced",
        "final position: (-1, -1)",
    ]


def test_cli_game_moves_and_cycle():
    result = run("game", str(fixture_path("example48.json")),
                 "--position", "-1,1/2", "--json")
    payload = json.loads(result.output)
    assert payload["outcome"] == "stuck_never" and payload["steps"] == 2

    result = run("game", str(fixture_path("a2.json")), "--position", "1,1",
                 "--moves", "2", "--json")
    payload = json.loads(result.output)
    assert payload["outcome"] == "step_limit" and payload["fired"] == [2]


def test_cli_finite_json():
    result = run("finite", str(fixture_path("a2.json")), "--json")
    payload = json.loads(result.output)
    assert payload == {"verdict": "finite", "steps": 3,
                       "matrix_type": None, "roots_exhausted": None}


def test_cli_finite_infinite_evidence():
    result = run("finite", str(fixture_path("dihedral_pq4.json")),
                 "--max-steps", "200", "--json")
    payload = json.loads(result.output)
    assert payload["verdict"] == "infinite_evidence"
    assert payload["matrix_type"] == "zero"
    assert payload["roots_exhausted"] is False


def test_cli_version():
    result = run("--version")
    assert result.exit_code == 0
    assert "0.1.0" in result.output


# ------------------------------------------------------- CLI: error paths

def test_cli_domain_error_human(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(
        {"n": 1, "entries": [{"i": 1, "j": 1, "value": "3"}]}))
    result = run("validate", str(path))
    assert result.exit_code == 1
    assert "error: DiagonalNotTwo" in result.output


def test_cli_domain_error_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(
        {"n": 2, "entries": [{"i": 1, "j": 2, "value": "1"}]}))
    result = run("validate", str(path), "--json")
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload["error"]["code"] == "PositiveOffDiagonal"
    assert payload["error"]["detail"]


def test_cli_missing_file_is_domain_error():
    result = run("classify", "definitely_not_here.json", "--json")
    assert result.exit_code == 1
    assert json.loads(result.output)["error"]["code"] == "IoError"


def test_cli_illegal_user_move():
    result = run("game", str(fixture_path("a2.json")), "--position", "1,1",
                 "--moves", "1,1", "--json")
    assert result.exit_code == 1
    payload = json.loads(result.output)
    assert payload["error"]["code"] == "IllegalUserMove"
    assert "move 2" in payload["error"]["detail"]


def test_cli_usage_errors_exit_two():
    result = run("game", str(fixture_path("a2.json")), "--position", "1,1,1")
    assert result.exit_code == 2
    result = run("reduce", str(fixture_path("a2.json")), "--word", "1,x")
    assert result.exit_code == 2
    result = run("reduce", str(fixture_path("a2.json")), "--word", "3")
    assert result.exit_code == 2
    result = run("game", str(fixture_path("a2.json")), "--position", "1,1",
                 "--moves", "9")
    assert result.exit_code == 2
