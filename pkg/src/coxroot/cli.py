"""Command-line front door: validation, analyses, game play, service.

Words on the command line (and in all CLI output) are written in firing
/ application order: `--word 2,5` means "apply s_2 first, then s_5",
i.e. the group element s_5 s_2.  Node numbers are 1-based.  Every
subcommand takes `--json` for machine-readable output; exit status is 0
on success, 1 on a domain error (the error code appears on stderr, or
in an {"error": {code, detail}} object with --json), 2 on usage errors.
"""

import json as jsonlib
import os

import click

from .document import parse_graph_file
from .errors import CoxrootError
from .game import DEFAULT_MAX_STEPS, finite_group_test, play
from .graph import INFINITY
from .rep import (expand_factorization, factor_scalar_action, simple_root,
                  word_length_and_reduce)
from .roots import (dominance_test, enumerate_roots, inversion_set,
                    n_bounds_report, s_mult)
from .scalars import render_scalar
from .service import DEFAULT_PORT, PORT_ENV_VAR, create_app


def _guarded(as_json, body):
    try:
        body()
    except CoxrootError as exc:
        if as_json:
            click.echo(jsonlib.dumps(
                {"error": {"code": exc.code, "detail": exc.detail}}, indent=2))
        else:
            click.echo(f"error: {exc.code}: {exc.detail}", err=True)
        raise SystemExit(1)


def _load_graph(path):
    return parse_graph_file(path).build()


def _parse_csv(text, what):
    try:
        return [int(part) for part in text.replace(" ", "").split(",") if part]
    except ValueError:
        raise click.UsageError(f"{what} must be comma-separated integers, "
                               f"got {text!r}")


def _parse_word(text, graph, what="--word"):
    """External firing-order letters -> internal product-order word."""
    letters = _parse_csv(text, what)
    for letter in letters:
        if not 1 <= letter <= graph.n:
            raise click.UsageError(f"{what}: node {letter} is out of 1..{graph.n}")
    return [letter - 1 for letter in reversed(letters)]


def _external_word(word):
    """Internal product-order word -> external firing-order letters."""
    return [letter + 1 for letter in reversed(word)]


def _node_index(node, graph, what="--node"):
    if not 1 <= node <= graph.n:
        raise click.UsageError(f"{what}: node {node} is out of 1..{graph.n}")
    return node - 1


def _parse_position(text, graph):
    parts = [part for part in text.replace(" ", "").split(",") if part]
    if len(parts) != graph.n:
        raise click.UsageError(
            f"--position needs {graph.n} comma-separated values, got {len(parts)}")
    return tuple(graph.ctx.parse(part) for part in parts)


def _vector_str(vector):
    return "(" + ", ".join(render_scalar(c) for c in vector) + ")"


def _word_str(external_letters):
    if not external_letters:
        return "(identity)"
    return " ".join(f"s{letter}" for letter in external_letters)


def _m_entry(graph, i, j):
    if i == j:
        return None
    m = graph.m_order(i, j)
    return "inf" if m is INFINITY else m


def _bond_rows(graph):
    rows = []
    for i, j in graph.edges:
        p, q = graph.edge_label(i, j)
        rows.append({"i": i + 1, "j": j + 1, "p": render_scalar(p),
                     "q": render_scalar(q), "m": _m_entry(graph, i, j)})
    return rows


def _emit(as_json, payload, lines):
    if as_json:
        click.echo(jsonlib.dumps(payload, indent=2))
    else:
        for line in lines:
            click.echo(line)


@click.group()
@click.version_option(package_name="coxroot")
def main():
    """Asymmetric Coxeter-group toolkit: E-GCM graphs, roots, numbers game.

    GRAPH_FILE arguments are JSON graph documents; see the fixtures/
    directory for the format.  Words are written in firing order
    (first-applied letter first) with 1-based node numbers.
    """


@main.command()
@click.argument("graph_file")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def validate(graph_file, as_json):
    """Validate a graph file and report the recognized bonds."""
    def body():
        graph = _load_graph(graph_file)
        payload = {"valid": True, "n": graph.n, "mode": graph.mode,
                   "labels": list(graph.labels), "bonds": _bond_rows(graph)}
        lines = [f"valid E-GCM graph: n={graph.n}, mode={graph.mode}"]
        for bond in payload["bonds"]:
            lines.append(f"  {bond['i']} -- {bond['j']}: "
                         f"(p, q) = ({bond['p']}, {bond['q']}), m = {bond['m']}")
        if not payload["bonds"]:
            lines.append("  (no edges)")
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def classify(graph_file, as_json):
    """Matrix type, bond orders, ON-components, unitality, odd asymmetries."""
    def body():
        graph = _load_graph(graph_file)
        matrix_type = graph.classify_matrix_type()
        components = graph.on_components()
        unital = [graph.is_unital_on_cyclic(c) for c in components]
        payload = {
            "type": matrix_type,
            "m": [[_m_entry(graph, i, j) for j in range(graph.n)]
                  for i in range(graph.n)],
            "odd_asymmetries": [[i + 1, j + 1] for i, j in graph.odd_asymmetries],
            "components": [[x + 1 for x in c] for c in components],
            "unital": unital,
            "f_values": [graph.f_value(c) if ok else None
                         for c, ok in zip(components, unital)],
        }
        lines = [f"type: {matrix_type}"]
        for i in range(graph.n):
            for j in range(i + 1, graph.n):
                lines.append(f"  m({i + 1},{j + 1}) = {_m_entry(graph, i, j)}")
        for spot, component in enumerate(components):
            nodes = ",".join(str(x + 1) for x in component)
            if unital[spot]:
                lines.append(f"ON-component {{{nodes}}}: unital, "
                             f"f = {payload['f_values'][spot]}")
            else:
                lines.append(f"ON-component {{{nodes}}}: not unital "
                             f"(infinite scalar-multiple sets)")
        if payload["odd_asymmetries"]:
            pairs = ", ".join(f"({i},{j})" for i, j in payload["odd_asymmetries"])
            lines.append(f"odd asymmetries: {pairs}")
        else:
            lines.append("odd asymmetries: none")
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--max-length", type=int, default=None,
              help="stop after this orbit depth")
@click.option("--max-count", type=int, default=None,
              help="fail once this many roots are found")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def roots(graph_file, max_length, max_count, as_json):
    """Enumerate the root system breadth-first."""
    def body():
        graph = _load_graph(graph_file)
        root_set = enumerate_roots(graph, max_length=max_length, max_count=max_count)
        positive = root_set.positive_roots()
        payload = {
            "exhausted": root_set.exhausted,
            "depth": root_set.depth,
            "count": len(root_set),
            "positive_count": len(positive),
            "roots": [{"vector": [render_scalar(c) for c in r.vector],
                       "witness": _external_word(r.word),
                       "origin": r.origin + 1,
                       "sign": r.sign}
                      for r in root_set],
        }
        status = "exhausted" if root_set.exhausted else "not exhausted"
        lines = [f"{len(root_set)} roots ({len(positive)} positive) "
                 f"after depth {root_set.depth}; {status}"]
        shown = 50
        for r in list(root_set)[:shown]:
            witness = _word_str(_external_word(r.word))
            lines.append(f"  {_vector_str(r.vector)}  =  {witness} . "
                         f"alpha_{r.origin + 1}")
        if len(root_set) > shown:
            lines.append(f"  ... ({len(root_set) - shown} more)")
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--node", type=int, required=True, help="node x (1-based)")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def smult(graph_file, node, as_json):
    """The scalar-multiple set S(alpha_x) of a simple root."""
    def body():
        graph = _load_graph(graph_file)
        x = _node_index(node, graph)
        result = s_mult(graph, x)
        if result.finite:
            payload = {"node": node, "finite": True,
                       "K_values": [render_scalar(k) for k in result.k_values],
                       "cycle": None}
            ks = ", ".join(payload["K_values"])
            lines = [f"S(alpha_{node}) = {{{ks}}} . alpha_{node}  "
                     f"({len(result.k_values)} values)"]
        else:
            cycle = [x + 1 for x in result.certificate.nodes]
            payload = {"node": node, "finite": False, "K_values": None,
                       "cycle": cycle}
            arrows = " -> ".join(str(x) for x in cycle)
            lines = [f"S(alpha_{node}) is infinite: non-unital ON-cycle "
                     f"{arrows} (Pi = {render_scalar(result.certificate.pi)})"]
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--word", required=True, help="letters in firing order, e.g. 2,5")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def inversions(graph_file, word, as_json):
    """The inversion set N(w) and its f-value bounds."""
    def body():
        graph = _load_graph(graph_file)
        internal = _parse_word(word, graph)
        report = n_bounds_report(graph, internal)
        inv = inversion_set(graph, internal)
        payload = {
            "word": _external_word(inv.word),
            "count": report["exact_count"],
            "length": report["length"],
            "f1": report["f1"], "f2": report["f2"],
            "lower": report["lower"], "upper": report["upper"],
            "roots": [[render_scalar(c) for c in v] for v in inv.vectors],
        }
        lines = [f"|N(w)| = {payload['count']} for w = "
                 f"{_word_str(payload['word'])} (length {payload['length']}); "
                 f"bounds {payload['lower']} <= {payload['count']} <= "
                 f"{payload['upper']} (f1={payload['f1']}, f2={payload['f2']})"]
        for v in inv.vectors:
            lines.append(f"  {_vector_str(v)}")
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--word", required=True, help="letters in firing order, e.g. 2,5")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def reduce(graph_file, word, as_json):
    """A reduced word for the same group element, with certified length."""
    def body():
        graph = _load_graph(graph_file)
        internal = _parse_word(word, graph)
        length, reduced = word_length_and_reduce(graph, internal)
        payload = {"input": _parse_csv(word, "--word"),
                   "reduced": _external_word(reduced),
                   "length": length,
                   "was_reduced": length == len(internal)}
        note = "input was already reduced" if payload["was_reduced"] \
            else f"input had {len(internal)} letters"
        lines = [f"reduced word: {_word_str(payload['reduced'])} "
                 f"(length {length}; {note})"]
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--word", required=True, help="letters in firing order, e.g. 2,5")
@click.option("--node", type=int, required=True, help="node i of alpha_i")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def factor(graph_file, word, node, as_json):
    """Factor w through link words when w.alpha_i is K times a simple root."""
    def body():
        graph = _load_graph(graph_file)
        internal = _parse_word(word, graph)
        i = _node_index(node, graph)
        result = factor_scalar_action(graph, internal, i)
        if result.kind == "not_multiple":
            payload = {"kind": "not_multiple",
                       "word": _external_word(result.word), "node": node}
            lines = [f"w.alpha_{node} is not a scalar multiple of a simple root"]
            _emit(as_json, payload, lines)
            return
        expanded = expand_factorization(graph, result)
        payload = {
            "kind": "factored",
            "sign": result.sign,
            "K": render_scalar(result.k),
            "x": result.x + 1,
            "path": [p + 1 for p in result.path.nodes],
            "er_sequences": [{"root": seq.root + 1,
                              "partners": [b + 1 for b in seq.partners]}
                             for seq in result.er_sequences],
            "trailing_reflection": result.trailing_reflection,
            "expanded": _external_word(expanded),
            "length": len(result.word),
        }
        sign = "" if result.sign > 0 else "-"
        lines = [f"w.alpha_{node} = {sign}{render_scalar(result.k)} "
                 f"alpha_{result.x + 1}",
                 f"  path: {' -> '.join(str(p) for p in payload['path'])}"]
        for spot, seq in enumerate(payload["er_sequences"]):
            partners = ",".join(str(b) for b in seq["partners"]) or "none"
            lines.append(f"  S_{spot}: root {seq['root']}, partners: {partners}")
        if result.trailing_reflection:
            lines.append(f"  trailing reflection: s{node}")
        lines.append(f"  expanded: {_word_str(payload['expanded'])}")
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--alpha", type=int, required=True, help="node of the candidate dominator")
@click.option("--beta", type=int, required=True, help="node of the candidate dominated")
@click.option("--bound", type=int, default=6, show_default=True,
              help="search all elements up to this length")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def dominance(graph_file, alpha, beta, bound, as_json):
    """Bounded test whether S(alpha_a) dominates S(alpha_b)."""
    def body():
        graph = _load_graph(graph_file)
        a = simple_root(graph, _node_index(alpha, graph, "--alpha"))
        b = simple_root(graph, _node_index(beta, graph, "--beta"))
        result = dominance_test(graph, a, b, bound)
        payload = {"alpha": alpha, "beta": beta, "bound": bound,
                   "dominates_up_to_bound": result.dominates_up_to_bound,
                   "witness": (_external_word(result.witness)
                               if result.witness is not None else None)}
        if result.dominates_up_to_bound:
            lines = [f"S(alpha_{alpha}) dominates S(alpha_{beta}) for all "
                     f"elements of length <= {bound} (bounded semi-decision)"]
        else:
            lines = [f"S(alpha_{alpha}) does not dominate S(alpha_{beta}): "
                     f"w = {_word_str(payload['witness'])} sends "
                     f"alpha_{alpha} negative but alpha_{beta} positive"]
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--position", required=True, help="initial values, e.g. 1,1")
@click.option("--strategy", type=click.Choice(["first_legal", "random"]),
              default="first_legal", show_default=True)
@click.option("--seed", type=int, default=None, help="seed for --strategy random")
@click.option("--max-steps", type=int, default=DEFAULT_MAX_STEPS, show_default=True)
@click.option("--moves", default=None, help="fire exactly these nodes, e.g. 1,2,1")
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def game(graph_file, position, strategy, seed, max_steps, moves, as_json):
    """Play the numbers game from a position."""
    def body():
        graph = _load_graph(graph_file)
        pos = _parse_position(position, graph)
        if moves is not None:
            chosen = [_node_index(x, graph, "--moves") for x in
                      _parse_csv(moves, "--moves")]
            record = play(graph, pos, strategy=chosen, max_steps=max_steps)
        elif strategy == "random":
            record = play(graph, pos, strategy="random",
                          max_steps=max_steps, seed=seed if seed is not None else 0)
        else:
            record = play(graph, pos, max_steps=max_steps)
        length, _ = word_length_and_reduce(graph, record.word)
        fired = [x + 1 for x in record.fired]
        payload = {
            "outcome": record.outcome,
            "steps": record.steps,
            "fired": fired,
            "reduced": length == record.steps,
            "initial": [render_scalar(c) for c in record.initial],
            "final": [render_scalar(c) for c in record.final],
        }
        word = _word_str(fired if record.steps <= 20
                         else fired[:20]) + ("" if record.steps <= 20 else " ...")
        if record.outcome == "terminated":
            status = f"terminated in {record.steps} steps"
        elif record.outcome == "stuck_never":
            status = (f"position repeated after {record.steps} steps; "
                      f"the game can never terminate")
        else:
            status = f"step limit reached after {record.steps} steps"
        reduced_note = "reduced" if payload["reduced"] else "NOT reduced"
        lines = [f"{status}; word {word} {reduced_note}",
                 f"final position: {_vector_str(record.final)}"]
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.argument("graph_file")
@click.option("--max-steps", type=int, default=10000, show_default=True)
@click.option("--json", "as_json", is_flag=True, help="machine-readable output")
def finite(graph_file, max_steps, as_json):
    """Finiteness test: play the all-ones position."""
    def body():
        graph = _load_graph(graph_file)
        result = finite_group_test(graph, max_steps=max_steps)
        payload = {"verdict": result.verdict,
                   "steps": result.record.steps,
                   "matrix_type": result.matrix_type,
                   "roots_exhausted": result.roots_exhausted}
        if result.verdict == "finite":
            lines = [f"finite: the all-ones play terminated in "
                     f"{result.record.steps} steps (longest element length)"]
        elif result.verdict == "infinite_evidence":
            detail = []
            if result.record.outcome == "stuck_never":
                detail.append("the play provably never terminates")
            else:
                detail.append(f"no termination within {max_steps} steps")
            if result.matrix_type:
                detail.append(f"matrix type {result.matrix_type}")
            if result.roots_exhausted is False:
                detail.append("root enumeration does not close")
            lines = ["infinite evidence: " + "; ".join(detail)]
        else:
            lines = [f"inconclusive within {max_steps} steps "
                     f"(matrix type {result.matrix_type})"]
        _emit(as_json, payload, lines)
    _guarded(as_json, body)


@main.command()
@click.option("--port", type=int, default=None,
              help=f"port (default: ${PORT_ENV_VAR} or {DEFAULT_PORT})")
@click.option("--host", default="127.0.0.1", show_default=True)
def serve(port, host):
    """Run the HTTP game service."""
    import uvicorn
    if port is None:
        port = int(os.environ.get(PORT_ENV_VAR, DEFAULT_PORT))
    click.echo(f"coxroot game service on http://{host}:{port}/api")
    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
