"""The geometric representation: reflections, words, and factorization.

Vectors in V are coefficient tuples over the simple-root basis (alpha_i).
The generator s_i acts by S_i(v) = v - 2B(alpha_i, v) alpha_i with
B(alpha_i, alpha_j) = a_ij / 2, which changes only coordinate i:
c_i -> c_i - sum_j a_ij c_j.

Word convention: a GroupWord is a list of node indices in product order,
[i_1, ..., i_p] meaning s_{i_1} s_{i_2} ... s_{i_p}.  Applying a word to
a vector composes right-to-left, so the LAST letter acts first:
apply_word([1, 2], v) = S_1(S_2(v)).  The inverse word is the reverse.

Besides the action itself this module provides the closed forms for
powers of a dihedral pair acting on a simple root (exact 2x2 matrix
powering, or the regime formulas for pq = 4, pq > 4, pq < 4), the link
words v_ji, descent-based word reduction, and the factorization of any
w with w.alpha_i = K alpha_x into ER-sequence words and link words along
an ON-path, built by the inductive peeling argument that proves the
factorization exists.
"""

import math
import warnings
from fractions import Fraction

from .errors import InfiniteBond, NoEdge
from .graph import INFINITY, ERSequence
from .scalars import FLOAT

# float-mode words longer than this trigger a precision warning
PRECISION_WARN_LENGTH = 64


def simple_root(graph, i):
    """The coefficient tuple of alpha_i."""
    assert 0 <= i < graph.n
    zero, one = graph.ctx.zero(), graph.ctx.one()
    return tuple(one if j == i else zero for j in range(graph.n))


def reflect(graph, i, v):
    """S_i(v): only coordinate i changes, to c_i - sum_j a_ij c_j."""
    assert 0 <= i < graph.n and len(v) == graph.n
    ci = -v[i]
    for j, aij in graph.row_pairs[i]:
        ci -= aij * v[j]
    out = list(v)
    out[i] = ci
    return tuple(out)


def apply_word(graph, word, v):
    """w.v: apply the letters right-to-left (last letter first)."""
    if graph.mode == FLOAT and len(word) > PRECISION_WARN_LENGTH:
        warnings.warn(
            f"applying a float-mode word of length {len(word)} "
            f"(> {PRECISION_WARN_LENGTH}); coordinates may drift",
            RuntimeWarning, stacklevel=2)
    for letter in reversed(word):
        v = reflect(graph, letter, v)
    return v


def inverse_word(word):
    """The inverse of a word of involutions: the reversed letter list."""
    return list(reversed(word))


def root_sign(graph, v):
    """+1 if all coordinates >= 0, -1 if all <= 0, else 0 (mixed).

    Roots are never mixed; 0 only arises for non-root vectors.
    """
    ctx = graph.ctx
    zero = ctx.zero()
    nonneg = all(ctx.ge(c, zero) for c in v)
    nonpos = all(ctx.le(c, zero) for c in v)
    if nonneg and not nonpos:
        return 1
    if nonpos and not nonneg:
        return -1
    return 0


def scalar_multiple_of_simple(graph, v):
    """(x, K) with v = K alpha_x and K != 0, or None."""
    ctx = graph.ctx
    support = [j for j in range(graph.n) if not ctx.is_zero(v[j])]
    if len(support) != 1:
        return None
    x = support[0]
    return x, v[x]


def element_matrix(graph, word):
    """The matrix of sigma(w): column j holds the coordinates of w.alpha_j."""
    cols = [apply_word(graph, word, simple_root(graph, j)) for j in range(graph.n)]
    return tuple(tuple(cols[j][r] for j in range(graph.n)) for r in range(graph.n))


def matrices_equal(graph, m1, m2):
    ctx = graph.ctx
    return all(ctx.eq(a, b) for r1, r2 in zip(m1, m2) for a, b in zip(r1, r2))


# ------------------------------------------ closed-form dihedral powers

def dihedral_power(graph, i, j, k, with_extra_sj=False):
    """(s_i s_j)^k . alpha_i, or s_j (s_i s_j)^k . alpha_i when flagged.

    The orbit stays in span(alpha_i, alpha_j); with p = -a_ij, q = -a_ji
    and r = pq the coefficients follow three regimes:

    r = 4:  (2k+1) alpha_i + kq alpha_j   (with s_j: (k+1)q)
    r > 4:  via lam, mu = (r - 2 +- sqrt(r(r-4)))/2
    r < 4:  via theta = pi/m_ij:
            [sin(2(k+1)theta) + sin(2k theta)] / sin(2 theta) etc.

    In exact mode the closed forms are realized by exact 2x2 matrix
    powering of X = [S_i][S_j] restricted to the span, which equals the
    trigonometric expressions.
    """
    assert k >= 0
    if not graph.is_edge(i, j):
        raise NoEdge(f"nodes {i + 1} and {j + 1} are not adjacent")
    ctx = graph.ctx
    aij, aji = graph.a[i][j], graph.a[j][i]
    if ctx.exact:
        # X = [S_i][S_j] on (c_i, c_j) coordinates
        x = ((aij * aji - 1, aij), (-aji, -1))
        ci, cj = _mat2_pow_times_e1(x, k)
        if with_extra_sj:
            ci, cj = ci, -aji * ci - cj
    else:
        p, q = -aij, -aji
        r = p * q
        kk = k + 1 if with_extra_sj else k
        if ctx.eq(r, 4.0):
            ci = 2.0 * k + 1.0
            cj = q * kk
        elif r > 4.0:
            s = math.sqrt(r * (r - 4.0))
            lam = (r - 2.0 + s) / 2.0
            mu = (r - 2.0 - s) / 2.0
            ci = ((lam + 1.0) * lam ** k - (mu + 1.0) * mu ** k) / s
            cj = q * (lam ** kk - mu ** kk) / s
        else:
            theta = math.pi / graph.m_order(i, j)
            d = math.sin(2.0 * theta)
            ci = (math.sin(2.0 * (k + 1) * theta) + math.sin(2.0 * k * theta)) / d
            cj = q * math.sin(2.0 * kk * theta) / d
    out = [graph.ctx.zero()] * graph.n
    out[i], out[j] = ci, cj
    return tuple(out)


def _mat2_pow_times_e1(x, k):
    """First column of x^k for a 2x2 matrix over exact scalars."""
    # square-and-multiply on the full matrix, then read off column 1
    one, zero = Fraction(1), Fraction(0)
    result = ((one, zero), (zero, one))
    base = x
    while k:
        if k & 1:
            result = _mat2_mul(result, base)
        base = _mat2_mul(base, base)
        k >>= 1
    return result[0][0], result[1][0]


def _mat2_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


# ----------------------------------------------------------- link words

def link_word(graph, j, i):
    """The element v_ji as a word of length m_ij - 1.

    Odd m_ij:  v_ji = (s_i s_j)^((m-1)/2), acting by alpha_i -> K_ji alpha_j.
    Even m_ij: v_ji = s_j (s_i s_j)^((m-2)/2), acting by alpha_i -> alpha_i
    (m = 2, i.e. a non-adjacent pair, gives the single letter [j]).
    """
    assert i != j
    m = graph.m_order(i, j)
    if m is INFINITY:
        raise InfiniteBond(f"m[{i + 1}][{j + 1}] is infinite")
    if m % 2 == 1:
        return [i, j] * ((m - 1) // 2)
    return [j] + [i, j] * ((m - 2) // 2)


# ------------------------------------------------------------ reduction

def word_length_and_reduce(graph, word):
    """Certified length and a reduced word for the same group element.

    Processes letters left to right, growing a reduced prefix u.  The
    extension u s_i lengthens iff u.alpha_i is a positive root; otherwise
    exactly one letter of u can be deleted: scanning r from the end of u,
    the deletion point is the first (and only) r where
    s_{j_{r+1}} ... s_{j_q} . alpha_i is a positive multiple of
    alpha_{j_r}, because s_{j_r} sends a positive root negative only if
    the root is a positive multiple of alpha_{j_r}.
    """
    prefix = []
    for letter in word:
        assert 0 <= letter < graph.n
        beta = apply_word(graph, prefix, simple_root(graph, letter))
        sign = root_sign(graph, beta)
        assert sign != 0, "images of simple roots are never mixed-sign"
        if sign > 0:
            prefix.append(letter)
            continue
        beta = simple_root(graph, letter)
        for r in range(len(prefix) - 1, -1, -1):
            jr = prefix[r]
            if _positive_multiple_of(graph, beta, jr):
                del prefix[r]
                break
            beta = reflect(graph, jr, beta)
        else:
            raise AssertionError("a descent always has a deletion point")
    return len(prefix), prefix


def _positive_multiple_of(graph, v, x):
    ctx = graph.ctx
    if not ctx.gt(v[x], ctx.zero()):
        return False
    return all(ctx.is_zero(v[j]) for j in range(graph.n) if j != x)


def is_reduced(graph, word):
    length, _ = word_length_and_reduce(graph, word)
    return length == len(word)


# -------------------------------------------------------- factorization

class FactorResult:
    """Outcome of factor_scalar_action.

    kind is "not_multiple" or "factored".  When factored:
    w.alpha_i = sign * K * alpha_x with K = Pi of ``path`` > 0, and
    w = w_{S_p} v_{i_p,i_{p-1}} ... v_{i_1,i_0} w_{S_0} (times a trailing
    s_i when sign is -1), where path = (i_0, ..., i_p), i_0 = i, i_p = x,
    and er_sequences = (S_0, ..., S_p) are rooted along the path.
    """

    def __init__(self, kind, word=None, origin=None, sign=None, k=None,
                 x=None, path=None, er_sequences=None):
        self.kind = kind
        self.word = word
        self.origin = origin
        self.sign = sign
        self.k = k
        self.x = x
        self.path = path
        self.er_sequences = tuple(er_sequences) if er_sequences else None

    @property
    def trailing_reflection(self):
        return self.kind == "factored" and self.sign < 0

    def __repr__(self):
        if self.kind != "factored":
            return "FactorResult(not_multiple)"
        return (f"FactorResult(sign={'+' if self.sign > 0 else '-'}, K={self.k!r}, "
                f"path={list(self.path.nodes)}, x={self.x})")


def factor_scalar_action(graph, word, i):
    """Factor w through ER-sequences and link words when w.alpha_i = K alpha_x.

    Reduces the word first.  If the image is not a scalar multiple of a
    simple root the result has kind "not_multiple".  Otherwise the
    factorization is built by the inductive construction: the last letter
    j of a reduced w cannot be i; splitting w = u * v_J over J = {i, j}
    (stripping right descents within J) forces v_J = v_ji, which either
    fixes alpha_i (even m_ij: j joins S_0's partners) or moves it to
    K_ji alpha_j (odd m_ij: the path gains the step i -> j); recursion on
    the shorter u finishes.  A negative multiple is handled by factoring
    w s_i and recording a trailing s_i.
    """
    length, w = word_length_and_reduce(graph, word)
    ctx = graph.ctx
    beta = apply_word(graph, w, simple_root(graph, i))
    hit = scalar_multiple_of_simple(graph, beta)
    if hit is None:
        return FactorResult("not_multiple", word=w, origin=i)
    x, k_signed = hit
    if ctx.gt(k_signed, ctx.zero()):
        sign, target = 1, w
    else:
        sign = -1
        shorter, target = word_length_and_reduce(graph, w + [i])
        assert shorter == length - 1, "a negative image means s_i is a descent"
    path_nodes, ers = _construct_factorization(graph, target, i)
    path = graph.on_path(path_nodes)
    assert path_nodes[-1] == x
    assert ctx.eq(path.pi, abs(k_signed))
    assert length == _factorization_length(graph, path_nodes, ers) + (1 if sign < 0 else 0)
    return FactorResult("factored", word=w, origin=i, sign=sign, k=path.pi,
                        x=x, path=path, er_sequences=ers)


def _construct_factorization(graph, w, i):
    """(path nodes, ER-sequences) for reduced w with w.alpha_i = K alpha_x, K > 0."""
    if not w:
        return [i], [ERSequence(i)]
    j = w[-1]
    assert j != i, "s_i cannot be a right descent when w.alpha_i is positive"
    u = list(w)
    stripped = []
    while True:
        descents = [t for t in (i, j)
                    if root_sign(graph, apply_word(graph, u, simple_root(graph, t))) < 0]
        if not descents:
            break
        assert len(descents) == 1, "v_J is shorter than the longest dihedral element"
        t = descents[0]
        shorter, u = word_length_and_reduce(graph, u + [t])
        stripped.append(t)
    v_j = list(reversed(stripped))
    assert v_j == link_word(graph, j, i), "the J-factor is exactly the link word v_ji"
    m = graph.m_order(i, j)
    if m % 2 == 1:
        tail_path, tail_ers = _construct_factorization(graph, u, j)
        return [i] + tail_path, [ERSequence(i)] + tail_ers
    tail_path, tail_ers = _construct_factorization(graph, u, i)
    head = ERSequence(i, (j,) + tail_ers[0].partners)
    return tail_path, [head] + list(tail_ers[1:])


def _factorization_length(graph, path_nodes, ers):
    total = 0
    for a, b in zip(path_nodes, path_nodes[1:]):
        total += graph.m_order(a, b) - 1
    for seq in ers:
        for partner in seq.partners:
            total += graph.m_order(seq.root, partner) - 1
    return total


def expand_factorization(graph, result):
    """Re-expand a FactorResult to a word equal to the reduced input word.

    Concatenates, right to left, w_{S_0}, v_{i_1,i_0}, w_{S_1}, ...,
    v_{i_p,i_{p-1}}, w_{S_p} (and the trailing s_i for negative sign);
    an ER-sequence S = (root a; partners b_1..b_t) expands to
    v_{b_t,a} ... v_{b_1,a}.
    """
    assert result.kind == "factored"
    nodes = result.path.nodes
    ers = result.er_sequences

    def er_letters(seq):
        letters = []
        for partner in reversed(seq.partners):
            letters += link_word(graph, partner, seq.root)
        return letters

    letters = er_letters(ers[-1])
    for t in range(len(nodes) - 1, 0, -1):
        letters += link_word(graph, nodes[t], nodes[t - 1])
        letters += er_letters(ers[t - 1])
    if result.sign < 0:
        letters += [result.origin]
    return letters
