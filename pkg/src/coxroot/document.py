"""Reading and writing the JSON graph-file format.

A graph document is a JSON object: `n` (matrix size), optional `labels`
(n strings), `entries` (a list of {i, j, value} with 1-based indices and
the value written as a Scalar string: "-5", "-1/5", "-0.809..."),
optional `mode` ("exact"/"float") and `tolerance`.  Omitted off-diagonal
entries are 0; the diagonal is fixed at 2 and explicit diagonal entries
are passed through so the matrix validator can reject anything else.

Syntactic problems raise JsonError (shape) or ValueSyntaxError (a bad
scalar string); semantic validation belongs to validate_and_build.
Parsing then serializing a canonical document is the identity.
"""

import json

from .errors import IoError, JsonError, ValueSyntaxError
from .graph import validate_and_build
from .scalars import parse_scalar, render_scalar


class GraphDocument:
    """The parsed form of a graph file, still at the JSON boundary.

    Entries are kept as (i, j, value-string) with 0-based indices,
    sorted; building the EGCMGraph happens in ``build``.
    """

    __slots__ = ("n", "labels", "entries", "mode", "tolerance")

    def __init__(self, n, entries, labels=None, mode=None, tolerance=None):
        self.n = n
        self.entries = sorted(entries)
        self.labels = list(labels) if labels is not None else None
        self.mode = mode
        self.tolerance = tolerance

    def to_table(self):
        """The full n x n table of raw values (strings and ints)."""
        table = [[2 if i == j else 0 for j in range(self.n)] for i in range(self.n)]
        for i, j, value in self.entries:
            table[i][j] = value
        return table

    def build(self, k_max=None):
        kwargs = {"mode": self.mode, "tolerance": self.tolerance,
                  "labels": self.labels}
        if k_max is not None:
            kwargs["k_max"] = k_max
        return validate_and_build(self.to_table(), **kwargs)

    def serialize(self):
        """The canonical JSON-ready dict (1-based indices, string values)."""
        out = {"n": self.n,
               "entries": [{"i": i + 1, "j": j + 1, "value": value}
                           for i, j, value in self.entries]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        if self.mode is not None:
            out["mode"] = self.mode
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        return out

    def __repr__(self):
        return f"GraphDocument(n={self.n}, entries={len(self.entries)})"


def parse_graph_document(obj):
    """A GraphDocument from a decoded JSON object; JsonError on bad shape."""
    if not isinstance(obj, dict):
        raise JsonError("graph document must be a JSON object")
    if "n" not in obj:
        raise JsonError("graph document is missing 'n'")
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise JsonError(f"'n' must be a positive integer, got {n!r}")
    if "entries" not in obj:
        raise JsonError("graph document is missing the 'entries' array")
    raw_entries = obj["entries"]
    if not isinstance(raw_entries, list):
        raise JsonError("'entries' must be an array")
    entries = []
    seen = set()
    for spot, item in enumerate(raw_entries):
        if not isinstance(item, dict) or not {"i", "j", "value"} <= set(item):
            raise JsonError(f"entries[{spot}] must be an object with i, j, value")
        i, j, value = item["i"], item["j"], item["value"]
        for name, index in (("i", i), ("j", j)):
            if not isinstance(index, int) or isinstance(index, bool) \
                    or not 1 <= index <= n:
                raise JsonError(
                    f"entries[{spot}].{name} must be an integer in 1..{n}, "
                    f"got {index!r}")
        if (i, j) in seen:
            raise JsonError(f"entries[{spot}] repeats the pair ({i}, {j})")
        seen.add((i, j))
        value = _canonical_value(spot, value)
        entries.append((i - 1, j - 1, value))
    labels = obj.get("labels")
    if labels is not None:
        if (not isinstance(labels, list) or len(labels) != n
                or not all(isinstance(lab, str) for lab in labels)):
            raise JsonError(f"'labels' must be an array of {n} strings")
    mode = obj.get("mode")
    if mode is not None and mode not in ("exact", "float"):
        raise JsonError(f"'mode' must be \"exact\" or \"float\", got {mode!r}")
    tolerance = obj.get("tolerance")
    if tolerance is not None:
        if isinstance(tolerance, bool) or not isinstance(tolerance, (int, float)) \
                or tolerance <= 0:
            raise JsonError(f"'tolerance' must be a positive number, got {tolerance!r}")
        tolerance = float(tolerance)
    return GraphDocument(n, entries, labels=labels, mode=mode, tolerance=tolerance)


def _canonical_value(spot, value):
    """Validate an entry value and return it as a Scalar string."""
    if isinstance(value, bool) or not isinstance(value, (str, int, float)):
        raise JsonError(f"entries[{spot}].value must be a string or number")
    try:
        parse_scalar(value)
    except ValueSyntaxError as exc:
        raise ValueSyntaxError(f"entries[{spot}]: {exc}") from None
    if isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value)
    return render_scalar(value)


def parse_graph_file(path):
    """Load and parse a graph document from a JSON file."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc.strerror or exc}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise JsonError(
            f"{path} is not valid JSON: {exc.msg} "
            f"(line {exc.lineno}, column {exc.colno})") from None
    return parse_graph_document(obj)
