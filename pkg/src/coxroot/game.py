"""The numbers game: the contragredient action of W on positions.

A position is a tuple of coordinates x_i = <lambda, alpha_i> for a
functional lambda in V*.  Firing node i applies s_i contragrediently
(<s_i.lambda, v> = <lambda, s_i.v>), which in coordinates is

    x_i -> -x_i,    x_j -> x_j - a_ij x_i   (j != i, a_ij from row i),

and is legal only when x_i is strictly positive.  Play stops in -D (all
coordinates <= 0), where no move is legal.  Strong convergence makes the
outcome strategy-independent: either every maximal legal play from a
position terminates, at the same position in the same number of steps,
or none does.  That licenses two shortcuts here: a repeated position
proves the game never terminates (exact mode tracks visited positions),
and a single strategy suffices to decide goodness up to a step bound.

The fired sequence (i_1, ..., i_p) of any legal play spells the reduced
word s_{i_p} ... s_{i_1}; PlayRecord.word returns it in product order.

Membership in the Tits cone U = union of wD is semi-decided through
goodness of -lambda (lambda in U iff -lambda is good), except for rank-2
graphs with pq = 4 where the exact cone is known in closed form:
U = {x omega_1 + y omega_2 : y > -(p/2) x, or x = y = 0}.
"""

import math
import random

from .errors import IllegalUserMove, LimitExceeded, NotConnected
from .roots import enumerate_roots
from .rep import word_length_and_reduce

DEFAULT_MAX_STEPS = 100000
DIVERGENCE_LIMIT = 1e12
CYCLE_CACHE_LIMIT = 100000

# caps for the root-enumeration probe inside finite_group_test
_PROBE_MAX_LENGTH = 24
_PROBE_MAX_COUNT = 4000


def normalize_position(graph, pos):
    """Coordinates coerced into the graph's scalar mode, as a tuple."""
    assert len(pos) == graph.n
    return tuple(graph.ctx.coerce(c) for c in pos)


def pairing(pos, vector):
    """<lambda, v> = sum x_i c_i for v = sum c_i alpha_i."""
    return sum(x * c for x, c in zip(pos, vector))


def fire(graph, pos, i):
    """The position after firing node i (legality is not checked here)."""
    assert 0 <= i < graph.n
    out = list(pos)
    xi = pos[i]
    out[i] = -xi
    for j, aij in graph.row_pairs[i]:
        out[j] -= aij * xi
    return tuple(out)


def legal_moves(graph, pos):
    """Nodes with strictly positive coordinate, in ascending order."""
    ctx = graph.ctx
    zero = ctx.zero()
    return [i for i in range(graph.n) if ctx.gt(pos[i], zero)]


def in_d(graph, pos):
    ctx = graph.ctx
    zero = ctx.zero()
    return all(ctx.ge(x, zero) for x in pos)


def in_minus_d(graph, pos):
    ctx = graph.ctx
    zero = ctx.zero()
    return all(ctx.le(x, zero) for x in pos)


class PlayRecord:
    """A legal play: initial and final positions, fired nodes, outcome.

    outcome is "terminated" (final position in -D), "step_limit" (bound
    hit, user moves exhausted, or float coordinates diverging), or
    "stuck_never" (a position repeated, so by strong convergence no play
    from here ever terminates).  ``fired`` is in firing order; ``word``
    is the same sequence as a product-order group word (last fired acts
    leftmost), always reduced.
    """

    __slots__ = ("initial", "fired", "final", "outcome")

    def __init__(self, initial, fired, final, outcome):
        self.initial = initial
        self.fired = tuple(fired)
        self.final = final
        self.outcome = outcome

    @property
    def steps(self):
        return len(self.fired)

    @property
    def word(self):
        return list(reversed(self.fired))

    def __repr__(self):
        return (f"PlayRecord(outcome={self.outcome!r}, steps={self.steps}, "
                f"final={self.final!r})")


def play(graph, pos, strategy="first_legal", max_steps=DEFAULT_MAX_STEPS, seed=None):
    """Fire until no move is legal, the step bound hits, or a cycle shows.

    strategy: "first_legal" (lowest legal node), "random" (requires a
    seed), or an explicit sequence of nodes.  A user sequence raises
    IllegalUserMove (with the offending step) if it fires a non-positive
    node, and ends in "step_limit" if it runs out before termination.
    """
    pos = normalize_position(graph, pos)
    moves = None
    rng = None
    if isinstance(strategy, (list, tuple)):
        moves = list(strategy)
    elif strategy == "random":
        assert seed is not None, "the random strategy takes an explicit seed"
        rng = random.Random(seed)
    else:
        assert strategy == "first_legal", f"unknown strategy {strategy!r}"
    if graph.ctx.exact and _integral_rows(graph):
        return _play_scaled(graph, pos, moves, rng, max_steps)
    return _play_generic(graph, pos, moves, rng, max_steps)


def _play_generic(graph, pos, moves, rng, max_steps):
    ctx = graph.ctx
    current = pos
    fired = []
    seen = {current} if ctx.exact else None
    outcome = None
    while True:
        legal = legal_moves(graph, current)
        if not legal:
            outcome = "terminated"
            break
        if len(fired) >= max_steps:
            outcome = "step_limit"
            break
        node = _choose(legal, moves, rng, len(fired))
        if node is None:
            outcome = "step_limit"
            break
        current = fire(graph, current, node)
        fired.append(node)
        if seen is not None:
            if current in seen:
                outcome = "stuck_never"
                break
            if len(seen) < CYCLE_CACHE_LIMIT:
                seen.add(current)
        elif max(abs(x) for x in current) > DIVERGENCE_LIMIT:
            outcome = "step_limit"
            break
    record = PlayRecord(pos, fired, current, outcome)
    assert outcome != "terminated" or in_minus_d(graph, current)
    return record


def _choose(legal, moves, rng, step):
    if moves is not None:
        if step >= len(moves):
            return None
        node = moves[step]
        if node not in legal:
            raise IllegalUserMove(
                f"move {step + 1} fires node {node + 1}, whose coordinate "
                f"is not positive", step=step, node=node)
        return node
    if rng is not None:
        return rng.choice(legal)
    return legal[0]


def _integral_rows(graph):
    return all(entry.denominator == 1
               for row in graph.a for entry in row)


def _play_scaled(graph, pos, moves, rng, max_steps):
    """Exact play on an integer lattice: scale out denominators, run in int.

    Requires integral matrix entries; then firing preserves the lattice
    (1/L) Z^n where L clears the initial coordinates' denominators, and
    legality/termination are plain integer sign tests.
    """
    scale = math.lcm(*(c.denominator for c in pos)) if pos else 1
    rows = tuple(tuple((j, int(aij)) for j, aij in graph.row_pairs[i])
                 for i in range(graph.n))
    current = tuple(int(c * scale) for c in pos)
    fired = []
    seen = {current}
    outcome = None
    while True:
        legal = [i for i, x in enumerate(current) if x > 0]
        if not legal:
            outcome = "terminated"
            break
        if len(fired) >= max_steps:
            outcome = "step_limit"
            break
        node = _choose(legal, moves, rng, len(fired))
        if node is None:
            outcome = "step_limit"
            break
        out = list(current)
        xi = current[node]
        out[node] = -xi
        for j, aij in rows[node]:
            out[j] -= aij * xi
        current = tuple(out)
        fired.append(node)
        if current in seen:
            outcome = "stuck_never"
            break
        if len(seen) < CYCLE_CACHE_LIMIT:
            seen.add(current)
    final = tuple(graph.ctx.coerce(x) / scale for x in current)
    record = PlayRecord(pos, fired, final, outcome)
    assert outcome != "terminated" or in_minus_d(graph, final)
    return record


# --------------------------------------------------------- goodness

class GoodnessResult:
    """verdict "good" (with the terminating record) or "not_good_up_to_bound".

    Not-good is a semi-decision unless the attached record's outcome is
    "stuck_never", which certifies the game can never terminate.
    """

    __slots__ = ("verdict", "record")

    def __init__(self, verdict, record):
        self.verdict = verdict
        self.record = record

    @property
    def good(self):
        return self.verdict == "good"

    def __repr__(self):
        return f"GoodnessResult({self.verdict!r}, steps={self.record.steps})"


def is_good_position(graph, pos, max_steps=DEFAULT_MAX_STEPS):
    """Whether some (hence, by strong convergence, any) play terminates.

    A position already in -D is good with an empty record.
    """
    pos = normalize_position(graph, pos)
    if in_minus_d(graph, pos):
        return GoodnessResult("good", PlayRecord(pos, [], pos, "terminated"))
    record = play(graph, pos, max_steps=max_steps)
    if record.outcome == "terminated":
        return GoodnessResult("good", record)
    return GoodnessResult("not_good_up_to_bound", record)


class TitsConeResult:
    """Membership verdict for the Tits cone U, with the probing record.

    Verdicts: "member" / "non_member_up_to_bound" from the goodness
    semi-decision on -lambda, or the exact "member_rank2_closed_form" /
    "non_member_rank2_closed_form" when the rank-2 pq = 4 formula
    applies.
    """

    __slots__ = ("verdict", "record")

    def __init__(self, verdict, record=None):
        self.verdict = verdict
        self.record = record

    @property
    def member(self):
        return self.verdict in ("member", "member_rank2_closed_form")

    def __repr__(self):
        return f"TitsConeResult({self.verdict!r})"


def tits_cone_member(graph, pos, max_steps=DEFAULT_MAX_STEPS):
    """lambda in U iff -lambda is good; rank-2 pq = 4 is decided exactly."""
    pos = normalize_position(graph, pos)
    ctx = graph.ctx
    if graph.n == 2 and graph.is_edge(0, 1):
        product = graph.a[0][1] * graph.a[1][0]
        if ctx.eq(product, ctx.coerce(4)):
            x, y = pos
            p = -graph.a[0][1]
            inside = (ctx.gt(y, -(p * x) / 2)
                      or (ctx.is_zero(x) and ctx.is_zero(y)))
            verdict = "member_rank2_closed_form" if inside else "non_member_rank2_closed_form"
            return TitsConeResult(verdict)
    goodness = is_good_position(graph, tuple(-x for x in pos), max_steps=max_steps)
    if goodness.good:
        return TitsConeResult("member", goodness.record)
    return TitsConeResult("non_member_up_to_bound", goodness.record)


# --------------------------------------------------- finiteness test

class FiniteGroupResult:
    """verdict "finite", "infinite_evidence", or "inconclusive".

    Finite comes with the terminated play from the all-ones position (its
    step count is the length of the longest element).  Infinite evidence
    is either a certified never-terminating play, or non-termination plus
    a non-exhausting root enumeration plus matrix type zero or minus.
    """

    __slots__ = ("verdict", "record", "matrix_type", "roots_exhausted")

    def __init__(self, verdict, record, matrix_type=None, roots_exhausted=None):
        self.verdict = verdict
        self.record = record
        self.matrix_type = matrix_type
        self.roots_exhausted = roots_exhausted

    def __repr__(self):
        return f"FiniteGroupResult({self.verdict!r}, type={self.matrix_type!r})"


def finite_group_test(graph, max_steps=DEFAULT_MAX_STEPS):
    """Play the all-ones position: termination proves W finite.

    All-ones lies in D and is nonzero, so a terminated play certifies
    D intersect -U != {0}, which forces W finite.  The fired sequence is
    then a reduced word for the longest element.  Non-termination within
    the bound is inconclusive on its own; it hardens to infinite
    evidence when the root enumeration also refuses to close and the
    matrix type is zero or minus (both types have infinite W), or
    immediately when the play certifies it can never terminate.
    """
    if not graph.is_connected():
        raise NotConnected("the finiteness test needs a connected graph")
    ones = normalize_position(graph, [1] * graph.n)
    record = play(graph, ones, max_steps=max_steps)
    if record.outcome == "terminated":
        length, _ = word_length_and_reduce(graph, record.word)
        assert length == record.steps, "fired sequences spell reduced words"
        return FiniteGroupResult("finite", record)
    matrix_type = graph.classify_matrix_type()
    try:
        probe = enumerate_roots(graph, max_length=_PROBE_MAX_LENGTH,
                                max_count=_PROBE_MAX_COUNT)
        exhausted = probe.exhausted
    except LimitExceeded:
        exhausted = False
    if record.outcome == "stuck_never":
        return FiniteGroupResult("infinite_evidence", record,
                                 matrix_type=matrix_type,
                                 roots_exhausted=exhausted)
    if not exhausted and matrix_type in ("zero", "minus"):
        return FiniteGroupResult("infinite_evidence", record,
                                 matrix_type=matrix_type,
                                 roots_exhausted=exhausted)
    return FiniteGroupResult("inconclusive", record,
                             matrix_type=matrix_type,
                             roots_exhausted=exhausted)
