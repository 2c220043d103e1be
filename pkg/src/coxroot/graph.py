"""E-GCM graphs: validation, bond orders, ON-structure, classification.

An E-generalized Cartan matrix A is a real n x n matrix with 2's on the
diagonal and nonpositive off-diagonal entries such that a_ij = 0 iff
a_ji = 0, and every nonzero off-diagonal product satisfies
a_ij * a_ji >= 4 (bond order m_ij = infinity) or a_ij * a_ji =
4cos^2(pi/k) for an integer k >= 3 (bond order m_ij = k).  Non-adjacent
pairs have m_ij = 2.  The pair (graph, A) determines a Coxeter group
with one generator per node and relation orders m_ij.

Beyond validation this module derives the structure the root-system
results run on: odd-neighbor edges and their K-values, Pi-products of
ON-paths, ON-components, unital-ON-cyclic detection with certificate
cycles, per-component f-values, the (+)/(0)/(-) matrix-type trichotomy,
and standardization to the symmetric matrix -2cos(pi/m_ij).
"""

import math
from fractions import Fraction

from . import lp
from .errors import (
    AsymmetricZeroPair,
    DiagonalNotTwo,
    InvalidPath,
    NotConnected,
    NotOddNeighbors,
    NotUnitalONCyclic,
    PositiveOffDiagonal,
    UnrecognizedBond,
)
from .scalars import EXACT, FLOAT, DEFAULT_EPS, ScalarContext, parse_scalar, rational_syntax

INFINITY = math.inf

# the only finite bond orders whose 4cos^2(pi/k) is rational
_EXACT_BONDS = {Fraction(1): 3, Fraction(2): 4, Fraction(3): 6}

DEFAULT_K_MAX = 1000


class ONPath:
    """A path of odd neighbors, with its Pi-product of K-values.

    Pi multiplies one K-factor per step: the step from node u to node v
    contributes K_vu, so a path P from gamma_i to gamma_x acts on roots
    by w_P . alpha_i = Pi_P alpha_x.  The length-zero path has Pi = 1.
    """

    __slots__ = ("nodes", "pi")

    def __init__(self, nodes, pi):
        self.nodes = tuple(nodes)
        self.pi = pi

    @property
    def is_simple(self):
        """No repeated nodes, except that start = end (a cycle) is allowed."""
        inner = self.nodes[1:] if self.nodes[0] == self.nodes[-1] and len(self.nodes) > 1 else self.nodes
        return len(set(inner)) == len(inner)

    def __len__(self):
        return len(self.nodes) - 1

    def __iter__(self):
        return iter(self.nodes)

    def __eq__(self, other):
        return isinstance(other, ONPath) and self.nodes == other.nodes

    def __hash__(self):
        return hash(self.nodes)

    def __repr__(self):
        return f"ONPath({list(self.nodes)}, pi={self.pi!r})"


class ERSequence:
    """A root node together with a list of even-related partner nodes.

    Each partner gamma_j has even m_ij with the root node gamma_i (m = 2,
    i.e. non-adjacency, counts as even).  The associated group element
    w_S = v_{j_t,i} ... v_{j_1,i} fixes alpha_i.
    """

    __slots__ = ("root", "partners")

    def __init__(self, root, partners=()):
        self.root = root
        self.partners = tuple(partners)

    def __eq__(self, other):
        return (isinstance(other, ERSequence)
                and self.root == other.root and self.partners == other.partners)

    def __repr__(self):
        return f"ERSequence(root={self.root}, partners={list(self.partners)})"


def _infer_mode(raw_entries):
    for value in raw_entries:
        if isinstance(value, float):
            return FLOAT
        if isinstance(value, str) and not rational_syntax(value):
            return FLOAT
        if isinstance(value, (int, Fraction)) or isinstance(value, str):
            continue
        return FLOAT
    return EXACT


def _cos2_value(k):
    c = math.cos(math.pi / k)
    return 4.0 * c * c


def _bond_order(ctx, product, k_max):
    """Resolve an off-diagonal product to a bond order m >= 3 or infinity.

    Exact mode admits only the rational products 1, 2, 3 (m = 3, 4, 6)
    besides >= 4; float mode searches k <= k_max and rejects products
    whose tolerance window covers more than one candidate.
    """
    if ctx.exact:
        if product >= 4:
            return INFINITY
        return _EXACT_BONDS.get(product)
    if product > 4 or ctx.eq(product, 4.0):
        return INFINITY
    hits = []
    for k in range(3, k_max + 1):
        value = _cos2_value(k)
        if ctx.eq(product, value):
            hits.append(k)
        elif value > product + 4.0 * ctx.eps:
            # 4cos^2(pi/k) increases with k and every equality window is
            # at most 4*eps wide, so no later k can match either
            break
    if len(hits) == 1:
        return hits[0]
    return None


class EGCMGraph:
    """A validated E-GCM with its derived graph structure.

    Immutable after construction; build instances with validate_and_build.
    Nodes are 0-based indices internally; ``labels`` carries the display
    names (defaults to "1".."n").
    """

    def __init__(self, entries, ctx, labels, k_max):
        self.ctx = ctx
        self.n = len(entries)
        self.a = tuple(tuple(row) for row in entries)
        self.labels = tuple(labels)
        self.k_max = k_max
        self._validate()
        self._derive()
        self._std = None

    # ------------------------------------------------------- validation

    def _validate(self):
        ctx = self.ctx
        two = ctx.coerce(2)
        for i in range(self.n):
            if not ctx.eq(self.a[i][i], two):
                raise DiagonalNotTwo(
                    f"a[{i + 1}][{i + 1}] = {self.a[i][i]} (diagonal entries must be 2)")
        for i in range(self.n):
            for j in range(self.n):
                if i == j:
                    continue
                if ctx.gt(self.a[i][j], ctx.zero()):
                    raise PositiveOffDiagonal(
                        f"a[{i + 1}][{j + 1}] = {self.a[i][j]} > 0")
        for i in range(self.n):
            for j in range(i + 1, self.n):
                zij = ctx.is_zero(self.a[i][j])
                zji = ctx.is_zero(self.a[j][i])
                if zij != zji:
                    raise AsymmetricZeroPair(
                        f"exactly one of a[{i + 1}][{j + 1}], a[{j + 1}][{i + 1}] is zero")

    def _derive(self):
        ctx = self.ctx
        self._m = {}
        edges = []
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if ctx.is_zero(self.a[i][j]):
                    self._m[(i, j)] = 2
                    continue
                product = self.a[i][j] * self.a[j][i]
                m = _bond_order(ctx, product, self.k_max)
                if m is None:
                    raise UnrecognizedBond(
                        f"a[{i + 1}][{j + 1}]*a[{j + 1}][{i + 1}] = {product} "
                        f"is not 4cos^2(pi/k) for any admissible k <= {self.k_max}")
                self._m[(i, j)] = m
                edges.append((i, j))
        self.edges = tuple(edges)
        self.odd_edges = tuple((i, j) for (i, j) in edges
                               if self._m[(i, j)] is not INFINITY and self._m[(i, j)] % 2 == 1)
        self.odd_asymmetries = tuple((i, j) for (i, j) in self.odd_edges
                                     if ctx.ne(self.a[i][j], self.a[j][i]))
        # neighbor structure used by reflections and firing
        self.row_pairs = tuple(
            tuple((j, self.a[i][j]) for j in range(self.n)
                  if j != i and not ctx.is_zero(self.a[i][j]))
            for i in range(self.n))
        self._derive_components()

    def _derive_components(self):
        adj = [[] for _ in range(self.n)]
        for i, j in self.odd_edges:
            adj[i].append(j)
            adj[j].append(i)
        self._odd_adj = tuple(tuple(sorted(nbrs)) for nbrs in adj)
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack, comp = [start], []
            seen[start] = True
            while stack:
                u = stack.pop()
                comp.append(u)
                for v in self._odd_adj[u]:
                    if not seen[v]:
                        seen[v] = True
                        stack.append(v)
            comps.append(tuple(sorted(comp)))
        self._components = tuple(sorted(comps))
        self._component_index = [None] * self.n
        for idx, comp in enumerate(self._components):
            for u in comp:
                self._component_index[u] = idx

    # --------------------------------------------------------- accessors

    @property
    def mode(self):
        return self.ctx.mode

    def entry(self, i, j):
        return self.a[i][j]

    def m_order(self, i, j):
        """Bond order m_ij: 2 for non-adjacent pairs, an int >= 3, or inf."""
        assert i != j
        return self._m[(i, j) if i < j else (j, i)]

    def is_edge(self, i, j):
        return i != j and self.m_order(i, j) != 2

    def edge_label(self, i, j):
        """The (p, q) = (-a_ij, -a_ji) label of an edge."""
        return (-self.a[i][j], -self.a[j][i])

    def odd_neighbors(self, i):
        return self._odd_adj[i]

    def on_components(self):
        """Partition of the nodes into ON-components (tuples of indices)."""
        return self._components

    def component_of(self, x):
        return self._components[self._component_index[x]]

    def is_connected(self):
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v, _ in self.row_pairs[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == self.n

    # --------------------------------------------------- K and Pi values

    def k_value(self, i, j):
        """K_ji = -a_ji / (2cos(pi/m_ij)), the factor with v_ji.alpha_i = K_ji alpha_j.

        Defined for odd neighbors only.  Equals sqrt(a_ji/a_ij); in exact
        mode the only odd bond is m = 3, where K_ji = -a_ji.
        """
        m = self.m_order(i, j)
        if m is INFINITY or m % 2 == 0:
            raise NotOddNeighbors(f"m[{i + 1}][{j + 1}] = {m} is not odd")
        if self.ctx.exact:
            assert m == 3
            return -self.a[j][i]
        return -self.a[j][i] / (2.0 * math.cos(math.pi / m))

    def pi_product(self, nodes):
        """Pi of the ON-path along ``nodes``; 1 for a length-zero path."""
        nodes = list(nodes)
        if not nodes:
            raise InvalidPath("a path must contain at least one node")
        for u in nodes:
            if not 0 <= u < self.n:
                raise InvalidPath(f"no such node: {u}")
        pi = self.ctx.one()
        for u, v in zip(nodes, nodes[1:]):
            m = self.m_order(u, v) if u != v else 2
            if m is INFINITY or m % 2 == 0:
                raise InvalidPath(
                    f"nodes {u + 1} and {v + 1} are not odd neighbors (m = {m})")
            pi = pi * self.k_value(u, v)
        return pi

    def on_path(self, nodes):
        return ONPath(nodes, self.pi_product(nodes))

    # --------------------------------------------------- ON-path queries

    def simple_on_paths(self, end):
        """All ON-paths with pairwise-distinct nodes ending at ``end``.

        Includes the length-zero path [end].  Enumeration is depth-first,
        extending at the front over ascending odd neighbors, so the output
        order is deterministic.
        """
        assert 0 <= end < self.n
        out = []

        def grow(path):
            out.append(self.on_path(path))
            for u in self._odd_adj[path[0]]:
                if u not in path:
                    grow([u] + path)

        grow([end])
        return out

    def simple_on_cycles(self, component):
        """All simple ON-cycles within a component, one orientation each,
        as ONPath objects with start = end."""
        comp = set(component)
        cycles = []

        def grow(path):
            start = path[0]
            for u in self._odd_adj[path[-1]]:
                if u not in comp:
                    continue
                if u == start and len(path) >= 3:
                    # canonical orientation: second node smaller than last
                    if path[1] < path[-1]:
                        cycles.append(self.on_path(path + [start]))
                elif u not in path and u > start:
                    grow(path + [u])

        for start in sorted(comp):
            grow([start])
        return cycles

    def is_unital_on_cyclic(self, component):
        """True iff every simple ON-cycle inside the component has Pi = 1.

        Vacuously true without cycles, and always true when the component
        has no odd asymmetries (all K-values are then 1).
        """
        return self.nonunital_cycle(component) is None

    def nonunital_cycle(self, component):
        """A simple ON-cycle with Pi != 1 inside the component, or None.

        Checked via spanning-tree gauge potentials: fix phi(root) = 1 and
        phi(v) = phi(u) * K_vu along tree edges; every simple cycle then
        has Pi = 1 iff each non-tree odd edge (u, v) satisfies
        phi(u) * K_vu = phi(v), because reversing a step inverts its
        K-factor (K_ij K_ji = 1).  A failing edge closes a fundamental
        cycle, returned as the certificate.
        """
        comp = sorted(component)
        if len(comp) <= 1:
            return None
        root = comp[0]
        phi = {root: self.ctx.one()}
        parent = {root: None}
        order = [root]
        for u in order:
            for v in self._odd_adj[u]:
                if v in phi or v not in component:
                    continue
                phi[v] = phi[u] * self.k_value(u, v)
                parent[v] = u
                order.append(v)
        assert len(phi) == len(comp), "component is ON-connected"
        for u in comp:
            for v in self._odd_adj[u]:
                if v <= u or v not in phi or parent.get(v) == u or parent.get(u) == v:
                    continue
                if not self.ctx.eq(phi[u] * self.k_value(u, v), phi[v]):
                    cycle = self._tree_path(parent, v, u) + [v]
                    path = self.on_path(cycle)
                    assert self.ctx.ne(path.pi, self.ctx.one())
                    return path
        return None

    @staticmethod
    def _tree_path(parent, a, b):
        """Path from a to b through the spanning tree given by parent pointers."""
        up_a, up_b = [a], [b]
        while parent[up_a[-1]] is not None:
            up_a.append(parent[up_a[-1]])
        while parent[up_b[-1]] is not None:
            up_b.append(parent[up_b[-1]])
        pa, pb = up_a[::-1], up_b[::-1]  # root .. a / root .. b
        t = 0
        while t + 1 < min(len(pa), len(pb)) and pa[t + 1] == pb[t + 1]:
            t += 1
        return pa[t:][::-1] + pb[t + 1:]

    def f_value(self, component):
        """|S(alpha_x)| for any node x of a unital ON-cyclic component.

        Counts the pairwise-distinct Pi-values over simple ON-paths ending
        at a fixed node (the count is node-independent).  Undefined on
        non-unital components, where the scalar-multiple sets are infinite.
        """
        if not self.is_unital_on_cyclic(component):
            raise NotUnitalONCyclic(
                f"component {tuple(x + 1 for x in sorted(component))} has a "
                f"non-unital simple ON-cycle")
        x = min(component)
        values = [p.pi for p in self.simple_on_paths(x)]
        return len(self.distinct_scalars(values))

    def distinct_scalars(self, values):
        """Deduplicate scalars under the context's equality."""
        if self.ctx.exact:
            return sorted(set(values), reverse=True)
        out = []
        for v in sorted(values, reverse=True):
            if not out or self.ctx.ne(out[-1], v):
                out.append(v)
        return out

    # ---------------------------------------------------- classification

    def classify_matrix_type(self):
        """Vinberg trichotomy of a connected E-GCM: 'plus', 'zero' or 'minus'.

        plus:  some v > 0 has Av > 0;  zero: some v > 0 has Av = 0 (and
        nullity 1);  minus: some v > 0 has Av < 0.  Decided by exact
        rational feasibility with strict inequalities replaced by
        margin-1 slacks (the cones are scale-invariant, so the margin
        loses nothing); float entries are rationalized exactly first.
        """
        if not self.is_connected():
            raise NotConnected("matrix type is defined for connected graphs")
        a = [[Fraction(v) for v in row] for row in self.a]
        n = self.n
        row_sums = [sum(row) for row in a]
        # substitute v = w + 1 (w >= 0) so that "v >= 1" is implicit
        plus = [(a[i], lp.GE, 1 - row_sums[i]) for i in range(n)]
        zero = [(a[i], lp.EQ, -row_sums[i]) for i in range(n)]
        minus = [(a[i], lp.LE, -1 - row_sums[i]) for i in range(n)]
        ok_plus, _ = lp.feasible(plus, n)
        ok_zero, _ = lp.feasible(zero, n)
        ok_minus, _ = lp.feasible(minus, n)
        assert [ok_plus, ok_zero, ok_minus].count(True) == 1, \
            "exactly one of the three systems is feasible on a connected E-GCM"
        if ok_zero:
            assert lp.rational_rank(a) == n - 1, "zero type has nullity 1"
            return "zero"
        return "plus" if ok_plus else "minus"

    # ---------------------------------------------------- standardization

    def standardize(self):
        """The symmetric matrix of the same Coxeter group:
        a_ij = -2cos(pi/m_ij) for finite bonds, -2 for infinite ones.

        Exact mode is kept only when every off-diagonal value is rational,
        i.e. all m_ij lie in {2, 3, infinity}; otherwise the result is a
        float-mode graph with this graph's tolerance.  The result is
        cached (graphs are immutable).
        """
        if self._std is not None:
            return self._std
        finite_ms = {m for m in self._m.values() if m is not INFINITY}
        exact_ok = finite_ms <= {2, 3}
        mode = EXACT if exact_ok else FLOAT
        table = [[None] * self.n for _ in range(self.n)]
        for i in range(self.n):
            table[i][i] = 2
        for i in range(self.n):
            for j in range(i + 1, self.n):
                m = self._m[(i, j)]
                if m == 2:
                    value = 0
                elif m is INFINITY:
                    value = -2
                elif exact_ok:
                    value = -1  # -2cos(pi/3)
                else:
                    value = -2.0 * math.cos(math.pi / m)
                table[i][j] = table[j][i] = value
        self._std = validate_and_build(table, mode=mode, tolerance=self.ctx.eps,
                                       k_max=self.k_max, labels=self.labels)
        assert all(self._std.m_order(i, j) == self.m_order(i, j)
                   for i in range(self.n) for j in range(i + 1, self.n))
        return self._std

    def __repr__(self):
        return f"EGCMGraph(n={self.n}, mode={self.mode})"


def validate_and_build(table, mode=None, tolerance=None, k_max=DEFAULT_K_MAX,
                       labels=None):
    """Parse and validate a raw entry table into an EGCMGraph.

    table: square matrix of scalars (strings, ints, Fractions or floats).
    mode: "exact" / "float" to override the inference (exact iff every
    entry is in rational syntax).  tolerance: float-mode epsilon.
    """
    n = len(table)
    assert n >= 1, "the matrix must have at least one node"
    for row in table:
        assert len(row) == n, "the matrix must be square"
    flat = [v for row in table for v in row]
    if mode is None:
        mode = _infer_mode(flat)
    ctx = ScalarContext(mode, DEFAULT_EPS if tolerance is None else tolerance)
    entries = [[ctx.parse(v) for v in row] for row in table]
    if labels is None:
        labels = [str(i + 1) for i in range(n)]
    assert len(labels) == n
    return EGCMGraph(entries, ctx, labels, k_max)
