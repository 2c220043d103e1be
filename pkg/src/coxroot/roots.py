"""Root systems, scalar-multiple sets, inversion sets, and dominance.

The root system is the orbit Phi = {w.alpha_i} of the simple roots.  Here
it is materialized breadth-first: level d holds the roots whose shortest
witness word has d letters, and the expansion is resumable, so a RootSet
can be grown to a length bound, to closure, or until a count limit trips.

On top of enumeration sit the structures that do not need it:
s_mult reads the scalar-multiple set S(alpha_x) = {K : K alpha_x in Phi+}
straight off the graph's simple ON-paths (finite exactly when the ON
component is unital ON-cyclic), inversion sets are built by the
one-letter-at-a-time recursion N(w s_i) = s_i(N(w)) |_| S(alpha_i) along a
reduced word, the report for f1 * l(w) <= |N(w)| <= f2 * l(w) takes its
f-values from the ON-components the word touches, rho maps a positive
root w.alpha_i to w.alpha_i^std in the standardized graph, and dominance
(S(a) dom S(b) iff w.a negative forces w.b negative) is semi-decided by a
breadth-first counterexample search over group elements up to a length
bound.
"""

from .errors import InfiniteInversionSet, LimitExceeded, NegativeRoot, NotFinite
from .graph import validate_and_build
from .rep import (apply_word, element_matrix, root_sign, simple_root,
                  word_length_and_reduce)


class Root:
    """A root vector with its shortest witness: vector = word . alpha_origin."""

    __slots__ = ("vector", "word", "origin", "sign")

    def __init__(self, vector, word, origin, sign):
        self.vector = vector
        self.word = word
        self.origin = origin
        self.sign = sign

    @property
    def depth(self):
        return len(self.word)

    def __repr__(self):
        return f"Root({self.vector!r}, word={self.word}, origin={self.origin})"


class RootSet:
    """A deduplicated, breadth-first materialization of the orbit Phi.

    Level d of the expansion contains the roots at witness depth d; the
    frontier holds the outermost completed level so expansion can resume.
    ``exhausted`` is set only when a full generator sweep over the
    frontier adds nothing new.  Witnesses are shortest, ties broken
    lexicographically, because generators are applied in ascending order
    to a lexicographically ordered frontier.
    """

    def __init__(self, graph):
        self.graph = graph
        self.roots = []
        self.exhausted = False
        self.depth = 0
        self._frontier = []
        self._by_vector = {} if graph.ctx.exact else None
        self._ray_reps = None
        for i in range(graph.n):
            root = Root(simple_root(graph, i), [], i, 1)
            self.roots.append(root)
            self._frontier.append(root)
            if self._by_vector is not None:
                self._by_vector[root.vector] = root

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def find(self, vector):
        """The stored Root equal to ``vector`` (within tolerance), or None."""
        if self._by_vector is not None:
            return self._by_vector.get(vector)
        ctx = self.graph.ctx
        for root in self.roots:
            if all(ctx.eq(a, b) for a, b in zip(root.vector, vector)):
                return root
        return None

    def positive_roots(self):
        return [r for r in self.roots if r.sign > 0]

    def expand(self, max_length=None, max_count=None):
        """Grow the set level by level; returns self.

        Stops at closure (setting ``exhausted``) or once the frontier
        depth reaches ``max_length``.  If a new root would push the size
        past ``max_count``, raises LimitExceeded carrying the partial set.
        """
        graph = self.graph
        while not self.exhausted and (max_length is None or self.depth < max_length):
            next_level = []
            for t in range(graph.n):
                for parent in self._frontier:
                    vector = apply_word(graph, [t], parent.vector)
                    if self.find(vector) is not None:
                        continue
                    if max_count is not None and len(self.roots) >= max_count:
                        raise LimitExceeded(
                            f"root enumeration passed max_count={max_count} "
                            f"at depth {self.depth + 1}", partial=self)
                    sign = root_sign(graph, vector)
                    assert sign != 0, "orbit vectors are roots, never mixed-sign"
                    root = Root(vector, [t] + parent.word, parent.origin, sign)
                    self.roots.append(root)
                    next_level.append(root)
                    if self._by_vector is not None:
                        self._by_vector[vector] = root
            if not next_level:
                self.exhausted = True
                break
            self._frontier = next_level
            self.depth += 1
            self._ray_reps = None
        return self

    # ---------------------------------------------------------- rays

    def ray_classes(self):
        """Indices of ``roots`` bucketed by mutual positive-scalar-multiplicity."""
        if self._ray_reps is None:
            reps, buckets = [], []
            for idx, root in enumerate(self.roots):
                for spot, rep in enumerate(reps):
                    if _positive_ratio(self.graph.ctx, rep.vector, root.vector) is not None:
                        buckets[spot].append(idx)
                        break
                else:
                    reps.append(root)
                    buckets.append([idx])
            self._ray_reps = (reps, buckets)
        return self._ray_reps[1]

    def multiples_of(self, base):
        """All K with K * base present and positive, sorted descending."""
        ks = []
        for root in self.positive_roots():
            ratio = _positive_ratio(self.graph.ctx, base, root.vector)
            if ratio is not None:
                ks.append(ratio)
        return self.graph.distinct_scalars(ks)


def _positive_ratio(ctx, base, vector):
    """K > 0 with vector = K * base, or None."""
    ratio = None
    for a, b in zip(base, vector):
        if ctx.is_zero(a) != ctx.is_zero(b):
            return None
        if ratio is None and not ctx.is_zero(a):
            ratio = b / a
    if ratio is None or not ctx.gt(ratio, ctx.zero()):
        return None
    if all(ctx.eq(b, ratio * a) for a, b in zip(base, vector)):
        return ratio
    return None


def enumerate_roots(graph, max_length=None, max_count=None):
    """Breadth-first orbit of the simple roots under the generators."""
    return RootSet(graph).expand(max_length=max_length, max_count=max_count)


# ------------------------------------------------------- S(alpha_x)

class SMultSet:
    """The set S(alpha_x) = {K alpha_x} intersect Phi+ as its K values.

    Finite exactly when the ON-component of node x is unital ON-cyclic;
    then the K values are the distinct Pi products over simple ON-paths
    ending at x.  Otherwise ``certificate`` holds a non-unital simple
    ON-cycle through the component (its powers produce infinitely many
    distinct multiples) and ``k_values`` is None.
    """

    __slots__ = ("node", "k_values", "finite", "certificate")

    def __init__(self, node, k_values, finite, certificate=None):
        self.node = node
        self.k_values = tuple(k_values) if k_values is not None else None
        self.finite = finite
        self.certificate = certificate

    def __len__(self):
        assert self.finite
        return len(self.k_values)

    def __repr__(self):
        if not self.finite:
            return f"SMultSet(node={self.node}, infinite, cycle={self.certificate!r})"
        return f"SMultSet(node={self.node}, K={list(self.k_values)})"


def s_mult(graph, x):
    """S(alpha_x), straight from the graph's simple ON-paths ending at x."""
    assert 0 <= x < graph.n
    component = graph.component_of(x)
    cycle = graph.nonunital_cycle(component)
    if cycle is not None:
        return SMultSet(x, None, False, certificate=cycle)
    ks = graph.distinct_scalars([p.pi for p in graph.simple_on_paths(x)])
    assert any(graph.ctx.eq(k, graph.ctx.one()) for k in ks)
    return SMultSet(x, ks, True)


# ---------------------------------------------------- inversion sets

class InversionSet:
    """N(w) = {alpha in Phi+ : w.alpha in Phi-} for a reduced word w."""

    __slots__ = ("word", "vectors")

    def __init__(self, word, vectors):
        self.word = word
        self.vectors = tuple(vectors)

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def contains(self, ctx, vector):
        return any(all(ctx.eq(a, b) for a, b in zip(v, vector)) for v in self.vectors)

    def __repr__(self):
        return f"InversionSet(word={self.word}, size={len(self.vectors)})"


def inversion_set(graph, word):
    """N(w), built letter by letter: N(w s_i) = s_i(N(w)) |_| S(alpha_i).

    The word is reduced first; along a reduced word every one-letter
    extension ascends, which is exactly when the recursion step applies.
    Finite only when every letter's ON-component is unital ON-cyclic.
    """
    _, reduced = word_length_and_reduce(graph, word)
    smults = {}
    for letter in set(reduced):
        sm = s_mult(graph, letter)
        if not sm.finite:
            raise InfiniteInversionSet(
                f"node {letter + 1} lies in a non-unital ON-component, "
                f"so N(w) is infinite")
        smults[letter] = sm
    vectors = []
    for letter in reduced:
        alpha = simple_root(graph, letter)
        new = [tuple(k * c for c in alpha) for k in smults[letter].k_values]
        vectors = [apply_word(graph, [letter], v) for v in vectors] + new
    inv = InversionSet(reduced, vectors)
    if graph.ctx.exact:
        assert len(set(inv.vectors)) == len(inv.vectors), \
            "the recursion's union is disjoint"
    return inv


def n_bounds_report(graph, word):
    """The two-sided bound f1 * l(w) <= |N(w)| <= f2 * l(w), spelled out.

    f1 and f2 are the min and max f-values over the ON-components that
    contain a letter of the reduced word.  For the empty word both are
    None and the bounds are trivially 0 <= 0 <= 0.
    """
    inv = inversion_set(graph, word)
    length = len(inv.word)
    touched = sorted({graph.component_of(letter) for letter in inv.word})
    fs = [graph.f_value(component) for component in touched]
    f1 = min(fs) if fs else None
    f2 = max(fs) if fs else None
    lower = f1 * length if fs else 0
    upper = f2 * length if fs else 0
    assert lower <= len(inv) <= upper
    return {"f1": f1, "f2": f2, "length": length,
            "lower": lower, "upper": upper, "exact_count": len(inv)}


# ------------------------------------------------- finiteness, Phi+

def group_is_finite(graph):
    """Whether W is finite: every ordinary connected component has type plus."""
    for nodes in _ordinary_components(graph):
        sub = _subgraph(graph, nodes)
        if sub.classify_matrix_type() != "plus":
            return False
    return True


def _ordinary_components(graph):
    seen = set()
    components = []
    for start in range(graph.n):
        if start in seen:
            continue
        stack, nodes = [start], []
        seen.add(start)
        while stack:
            u = stack.pop()
            nodes.append(u)
            for v in range(graph.n):
                if v not in seen and graph.is_edge(u, v):
                    seen.add(v)
                    stack.append(v)
        components.append(sorted(nodes))
    return components


def _subgraph(graph, nodes):
    table = [[graph.a[i][j] for j in nodes] for i in nodes]
    return validate_and_build(table, mode=graph.mode, tolerance=graph.ctx.eps,
                              k_max=graph.k_max)


def positive_root_bounds(graph):
    """|Phi+| against f1 |Phi_std+| <= |Phi+| <= f2 |Phi_std+| (finite W only).

    f1 and f2 here range over all ON-components of the graph.  Also the
    length of the longest element equals |Phi_std+| (its inversion set is
    all of Phi+), which the standard count reports.
    """
    if not group_is_finite(graph):
        raise NotFinite("the Weyl group is infinite; positive-root counts diverge")
    count = len(enumerate_roots(graph).positive_roots())
    std = graph.standardize()
    std_count = len(enumerate_roots(std).positive_roots())
    fs = [graph.f_value(component) for component in graph.on_components()]
    f1, f2 = min(fs), max(fs)
    assert f1 * std_count <= count <= f2 * std_count
    return {"count": count, "std_count": std_count, "f1": f1, "f2": f2}


# ------------------------------------------------------------- rho

def rho_map(graph, word, origin):
    """rho(S(w.alpha_i)) = w.alpha_i^std, in the standardized graph.

    The input witness must name a positive root; the image is independent
    of which witness of the ray class is used (the tests exercise that
    independence; this function just computes one image).
    """
    vector = apply_word(graph, word, simple_root(graph, origin))
    if root_sign(graph, vector) <= 0:
        raise NegativeRoot(f"witness maps alpha_{origin + 1} to a non-positive root")
    std = graph.standardize()
    return apply_word(std, word, simple_root(std, origin))


# ------------------------------------------------------- dominance

class DominanceClass:
    """A ray class of Psi+, named by a representative positive root."""

    __slots__ = ("vector", "word", "origin")

    def __init__(self, vector, word, origin):
        self.vector = vector
        self.word = word
        self.origin = origin

    def rho_image(self, graph):
        return rho_map(graph, self.word, self.origin)

    def __repr__(self):
        return f"DominanceClass({self.vector!r})"


def dominance_class_for_node(graph, x):
    """The class of the simple root alpha_x."""
    return DominanceClass(simple_root(graph, x), [], x)


class DominanceResult:
    """Outcome of the bounded counterexample search.

    ``dominates_up_to_bound`` means no w with l(w) <= bound sends alpha
    negative while keeping beta positive; it is a semi-decision, not a
    proof.  A witness word (product order) is attached when one exists.
    """

    __slots__ = ("dominates_up_to_bound", "bound", "witness")

    def __init__(self, dominates_up_to_bound, bound, witness=None):
        self.dominates_up_to_bound = dominates_up_to_bound
        self.bound = bound
        self.witness = witness

    def __repr__(self):
        if self.dominates_up_to_bound:
            return f"DominanceResult(dominates up to {self.bound})"
        return f"DominanceResult(witness={self.witness})"


def dominance_test(graph, alpha, beta, bound):
    """Search for w with w.alpha negative and w.beta positive, l(w) <= bound.

    S(alpha) dominates S(beta) iff no such w exists.  Group elements are
    enumerated breadth-first over reduced words, deduplicated by matrix,
    so the walk grows with the group rather than with words.
    """
    ctx = graph.ctx
    seen = _MatrixStore(graph)
    identity = element_matrix(graph, [])
    seen.add(identity)
    frontier = [([], identity)]
    gens = [element_matrix(graph, [t]) for t in range(graph.n)]
    for _ in range(bound):
        next_frontier = []
        for word, matrix in frontier:
            for t in range(graph.n):
                grown = _mat_mul(matrix, gens[t])
                if seen.add(grown):
                    new_word = word + [t]
                    wa = _mat_vec(grown, alpha)
                    if root_sign(graph, wa) < 0:
                        wb = _mat_vec(grown, beta)
                        sign = root_sign(graph, wb)
                        assert sign != 0
                        if sign > 0:
                            return DominanceResult(False, bound, witness=new_word)
                    next_frontier.append((new_word, grown))
        if not next_frontier:
            break
        frontier = next_frontier
    return DominanceResult(True, bound)


class _MatrixStore:
    """Deduplicates element matrices; exact by key, float by scan."""

    def __init__(self, graph):
        self.graph = graph
        if graph.ctx.exact:
            self._keys, self._items = set(), None
        else:
            self._keys, self._items = None, []

    def add(self, matrix):
        """True if the matrix was new."""
        if self._keys is not None:
            if matrix in self._keys:
                return False
            self._keys.add(matrix)
            return True
        ctx = self.graph.ctx
        for other in self._items:
            if all(ctx.eq(a, b) for ra, rb in zip(matrix, other) for a, b in zip(ra, rb)):
                return False
        self._items.append(matrix)
        return True


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(n)) for c in range(n))
                 for r in range(n))


def _mat_vec(m, v):
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)
