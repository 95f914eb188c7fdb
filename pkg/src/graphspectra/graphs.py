"""Graphs, diffusion pairs, and their Laplacian-type matrices.

A diffusion pair is a finite simple graph together with distinct positive
integer edge labels; edge {u,v} with label a carries the symbolic weight
Y^a.  Everything here is exact: matrices hold ints or Fractions, never
floats.  Vertices are 1-based and edges are stored as (u, v) with u < v.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError
from .unipoly import UniPoly


def _normalize_edge(u, v):
    if u == v:
        raise ValidationError(f"self-loop at vertex {u}")
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Finite simple undirected graph on vertices 1..n."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError("vertex count must be positive")
        normalized = set()
        for e in self.edges:
            u, v = e
            e = _normalize_edge(u, v)
            if not (1 <= e[0] and e[1] <= self.n):
                raise ValidationError(f"edge {e} outside 1..{self.n}")
            if e in normalized:
                raise ValidationError(f"duplicate edge {e}")
            normalized.add(e)
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def of(cls, n, edge_list):
        return cls(n, frozenset(_normalize_edge(u, v) for u, v in edge_list))

    @property
    def m(self):
        return len(self.edges)

    def sorted_edges(self):
        return sorted(self.edges)

    def neighbors(self, u):
        return {b if a == u else a for a, b in self.edges if u in (a, b)}

    def degree(self, u):
        return sum(1 for e in self.edges if u in e)

    def degree_sequence(self):
        return tuple(sorted(self.degree(u) for u in range(1, self.n + 1)))

    def components(self):
        """Vertex sets of connected components, as sorted tuples."""
        seen = set()
        comps = []
        adj = {u: set() for u in range(1, self.n + 1)}
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        for s in range(1, self.n + 1):
            if s in seen:
                continue
            stack, comp = [s], set()
            while stack:
                u = stack.pop()
                if u in comp:
                    continue
                comp.add(u)
                stack.extend(adj[u] - comp)
            seen |= comp
            comps.append(tuple(sorted(comp)))
        return comps

    def is_connected(self):
        return len(self.components()) == 1

    def component_count(self):
        return len(self.components())


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph: parallel edges kept, loops dropped on construction."""

    n: int
    edges: tuple = ()  # sorted tuple of (u, v) pairs, repeats = multiplicity

    def __post_init__(self):
        cleaned = []
        for u, v in self.edges:
            if u == v:
                continue
            e = _normalize_edge(u, v)
            if not (1 <= e[0] and e[1] <= self.n):
                raise ValidationError(f"edge {(u, v)} outside 1..{self.n}")
            cleaned.append(e)
        object.__setattr__(self, "edges", tuple(sorted(cleaned)))

    def multiplicity(self, u, v):
        e = _normalize_edge(u, v)
        return sum(1 for f in self.edges if f == e)

    def laplacian(self):
        """Integer Laplacian with multiplicities as edge weights."""
        L = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            L[u - 1][v - 1] -= 1
            L[v - 1][u - 1] -= 1
            L[u - 1][u - 1] += 1
            L[v - 1][v - 1] += 1
        return L


@dataclass(frozen=True)
class DiffusionPair:
    """A graph plus a positive integer label per edge (symbolic weight Y^label)."""

    graph: Graph
    labels: tuple = ()  # sorted tuple of ((u, v), label)
    subset_sum_distinct: bool | None = None

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(sorted(self.labels)))

    def label_map(self):
        return dict(self.labels)

    def label(self, u, v):
        return self.label_map()[_normalize_edge(u, v)]

    def label_values(self):
        return [a for _, a in self.labels]

    @property
    def total_weight(self):
        """Sum of all edge labels: the Y-degree bound of the spectral polynomial."""
        return sum(a for _, a in self.labels)

    def relabeled(self, new_labels, **kwargs):
        """Same graph with a different label assignment (sorted-edge order)."""
        return build_diffusion_pair(
            self.graph.n,
            [(u, v, a) for (u, v), a in zip(self.graph.sorted_edges(), new_labels)],
            **kwargs,
        )


def build_diffusion_pair(n, weighted_edges, require_distinct_labels=True,
                         check_subset_sums=False):
    """Validate and build a diffusion pair from (u, v, label) triples.

    Distinct labels are required by default; disable only for oracle-style
    uses (e.g. uniform weights).  With check_subset_sums=True the strictly
    stronger distinct-subset-sum property is verified and recorded.
    """
    edges = []
    labels = []
    for u, v, a in weighted_edges:
        e = _normalize_edge(u, v)
        if not isinstance(a, int) or a <= 0:
            raise ValidationError(f"label {a!r} on edge {e} is not a positive integer")
        edges.append(e)
        labels.append((e, a))
    graph = Graph.of(n, edges)
    if len(edges) != len(set(edges)):
        raise ValidationError("duplicate edge in weighted edge list")
    values = [a for _, a in labels]
    if require_distinct_labels and len(set(values)) != len(values):
        raise ValidationError("duplicate label (labels must be pairwise distinct)")
    ssd = None
    if check_subset_sums:
        ssd = is_subset_sum_distinct(values)
        if not ssd:
            raise ValidationError("labels do not have distinct subset sums")
    return DiffusionPair(graph, tuple(labels), ssd)


def symbolic_laplacian(dp):
    """Matrix over Z[Y]: entry (a,b) = -Y^{label(ab)} on edges, row sums zero."""
    n = dp.graph.n
    L = [[UniPoly.zero() for _ in range(n)] for _ in range(n)]
    for (u, v), a in dp.labels:
        w = UniPoly.monomial(1, a)
        L[u - 1][v - 1] = L[u - 1][v - 1] - w
        L[v - 1][u - 1] = L[v - 1][u - 1] - w
        L[u - 1][u - 1] = L[u - 1][u - 1] + w
        L[v - 1][v - 1] = L[v - 1][v - 1] + w
    return L


def level_laplacian(dp, q, r):
    """Exact Laplacian at level r: the symbolic matrix evaluated at Y = q^(1-r).

    q must be at least 2.  For r = 1 this is the ordinary combinatorial
    Laplacian; for r > 1 the entries are genuine rationals.
    """
    if q < 2:
        raise ValidationError("q must be at least 2")
    y = Fraction(q) ** (1 - r)
    n = dp.graph.n
    L = [[Fraction(0)] * n for _ in range(n)]
    for (u, v), a in dp.labels:
        w = y ** a
        L[u - 1][v - 1] -= w
        L[v - 1][u - 1] -= w
        L[u - 1][u - 1] += w
        L[v - 1][v - 1] += w
    return L


def laplacian_matrix(g):
    """Unweighted integer Laplacian of a plain graph."""
    L = [[0] * g.n for _ in range(g.n)]
    for u, v in g.edges:
        L[u - 1][v - 1] -= 1
        L[v - 1][u - 1] -= 1
        L[u - 1][u - 1] += 1
        L[v - 1][v - 1] += 1
    return L


def edge_set_laplacian(n, pairs):
    """Sum of single-edge Laplacians over the given pair set; positive semidefinite."""
    L = [[0] * n for _ in range(n)]
    for u, v in pairs:
        u, v = _normalize_edge(u, v)
        if v > n:
            raise ValidationError(f"pair {(u, v)} outside 1..{n}")
        L[u - 1][v - 1] -= 1
        L[v - 1][u - 1] -= 1
        L[u - 1][u - 1] += 1
        L[v - 1][v - 1] += 1
    return L


def seminorm_sq(v, pairs):
    """Sum of (v_k - v_l)^2 over pairs (1-based indices); equals v^T U(E) v."""
    total = 0
    for k, l in pairs:
        if not (1 <= k <= len(v) and 1 <= l <= len(v)):
            raise ValidationError(f"pair {(k, l)} outside vector of length {len(v)}")
        d = v[k - 1] - v[l - 1]
        total += d * d
    return total


def quotient_graph(g, S):
    """Identify all vertices of S with one vertex; drop loops, keep multiplicities.

    The merged vertex gets the smallest index after compacting, matching the
    relabeling (V \\ S first in order, merged vertex last).
    """
    S = set(S)
    if not S:
        raise ValidationError("S must be nonempty")
    if not S <= set(range(1, g.n + 1)):
        raise ValidationError("S contains vertices outside the graph")
    rest = [u for u in range(1, g.n + 1) if u not in S]
    index = {u: i + 1 for i, u in enumerate(rest)}
    star = len(rest) + 1
    edges = []
    for u, v in g.edges:
        a = index.get(u, star)
        b = index.get(v, star)
        if a != b:
            edges.append((a, b))
    return Multigraph(star, tuple(edges))


def cartesian_product(g, h):
    """Box product: (u,x) ~ (v,y) iff u=v and x~y, or x=y and u~v.

    Vertex (u, x) maps to index (u-1)*h.n + x, so the product Laplacian is
    the Kronecker sum L(g) (x) I + I (x) L(h).
    """
    def idx(u, x):
        return (u - 1) * h.n + x

    edges = []
    for u in range(1, g.n + 1):
        for x, y in h.edges:
            edges.append((idx(u, x), idx(u, y)))
    for u, v in g.edges:
        for x in range(1, h.n + 1):
            edges.append((idx(u, x), idx(v, x)))
    return Graph.of(g.n * h.n, edges)


def sum_distinct_labels(m, scheme="powers_of_two", custom=None):
    """Label list for m edges under the named scheme.

    powers_of_two yields (1, 2, 4, ...), which has pairwise distinct subset
    sums; a custom list is validated for positivity and distinctness only:
    run is_subset_sum_distinct separately if decoding will rely on it.
    """
    if m < 1:
        raise ValidationError("need at least one edge")
    if scheme == "powers_of_two":
        return [1 << i for i in range(m)]
    if scheme == "custom":
        if custom is None or len(custom) != m:
            raise ValidationError("custom scheme needs exactly m labels")
        if any((not isinstance(a, int)) or a <= 0 for a in custom):
            raise ValidationError("custom labels must be positive integers")
        if len(set(custom)) != m:
            raise ValidationError("custom labels must be distinct")
        return list(custom)
    raise ValidationError(f"unknown scheme {scheme!r}")


def is_subset_sum_distinct(labels):
    """True iff all 2^m subset sums are pairwise distinct."""
    labels = list(labels)
    if len(labels) > 24:
        raise ValidationError("subset-sum check capped at 24 labels")
    sums = {0}
    for a in labels:
        shifted = {s + a for s in sums}
        if sums & shifted:
            return False
        sums |= shifted
    return True


# ---------------------------------------------------------------------------
# Isomorphism and canonical forms


def _refine_colors(g):
    """1-dimensional color refinement; returns a stable vertex coloring."""
    colors = {u: g.degree(u) for u in range(1, g.n + 1)}
    adj = {u: g.neighbors(u) for u in range(1, g.n + 1)}
    while True:
        signature = {
            u: (colors[u], tuple(sorted(colors[w] for w in adj[u])))
            for u in range(1, g.n + 1)
        }
        palette = {sig: i for i, sig in enumerate(sorted(set(signature.values())))}
        new = {u: palette[signature[u]] for u in signature}
        if new == colors:
            return colors
        colors = new


def is_isomorphic(g1, g2):
    """Backtracking vertex-bijection search with degree and adjacency pruning."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if g1.degree_sequence() != g2.degree_sequence():
        return False
    c1, c2 = _refine_colors(g1), _refine_colors(g2)
    if sorted(c1.values()) != sorted(c2.values()):
        return False
    n = g1.n
    adj1 = {u: g1.neighbors(u) for u in range(1, n + 1)}
    adj2 = {u: g2.neighbors(u) for u in range(1, n + 1)}
    # Map most-constrained vertices first.
    order = sorted(range(1, n + 1), key=lambda u: (-g1.degree(u), c1[u], u))
    mapping = {}
    used = set()

    def extend(i):
        if i == n:
            return True
        u = order[i]
        for v in range(1, n + 1):
            if v in used or c1[u] != c2[v]:
                continue
            ok = True
            for w in adj1[u]:
                if w in mapping and mapping[w] not in adj2[v]:
                    ok = False
                    break
            if ok:
                for w in range(1, n + 1):
                    if w in mapping and w not in adj1[u] and mapping[w] in adj2[v]:
                        ok = False
                        break
            if ok:
                mapping[u] = v
                used.add(v)
                if extend(i + 1):
                    return True
                del mapping[u]
                used.remove(v)
        return False

    return extend(0)


def canonical_form(g):
    """Canonical edge list: equal for two graphs iff they are isomorphic.

    Vertices are placed color class by color class (refined colors are
    isomorphism-invariant), maximizing the concatenated adjacency-bit code
    with branch-and-bound on prefixes.  Twin vertices (identical adjacency
    up to each other) yield identical subtrees and are collapsed.
    """
    n = g.n
    colors = _refine_colors(g)
    adj = {u: g.neighbors(u) for u in range(1, n + 1)}
    by_color = {}
    for u in range(1, n + 1):
        by_color.setdefault(colors[u], []).append(u)
    block_order = sorted(by_color)
    best = {"code": None, "order": None}

    def search(placed, code):
        if best["code"] is not None:
            ref = best["code"][: len(code)]
            if code < ref:
                return
        if len(placed) == n:
            if best["code"] is None or code > best["code"]:
                best["code"] = code
                best["order"] = list(placed)
            return
        placed_set = set(placed)
        block = next(c for c in block_order
                     if any(u not in placed_set for u in by_color[c]))
        candidates = [u for u in by_color[block] if u not in placed_set]
        pruned = []
        for u in candidates:
            if any(adj[u] - {w} == adj[w] - {u} for w in pruned):
                continue
            pruned.append(u)
        scored = sorted(
            ((tuple(1 if p in adj[u] else 0 for p in placed), u) for u in pruned),
            reverse=True)
        for bits, u in scored:
            search(placed + [u], code + bits)

    search([], ())
    order = best["order"]
    relabel = {u: i + 1 for i, u in enumerate(order)}
    return tuple(sorted(_normalize_edge(relabel[u], relabel[v]) for u, v in g.edges))


def relabel_graph(g, permutation):
    """Apply a vertex permutation given as a dict old -> new."""
    return Graph.of(g.n, [(permutation[u], permutation[v]) for u, v in g.edges])


# ---------------------------------------------------------------------------
# Text format
#
# Line 1: "n m"; then m lines "u v alpha" (alpha optional on input, always
# written); '#' starts a comment line.  Writing is canonical (edges sorted),
# so write -> read -> write round-trips bit-exactly.


def graph_to_text(obj):
    if isinstance(obj, DiffusionPair):
        graph, label_map = obj.graph, obj.label_map()
    else:
        graph, label_map = obj, {e: 1 for e in obj.edges}
    lines = [f"{graph.n} {graph.m}"]
    for u, v in graph.sorted_edges():
        lines.append(f"{u} {v} {label_map[(u, v)]}")
    return "\n".join(lines) + "\n"


def graph_from_text(text):
    """Parse the graph format; returns a DiffusionPair (labels default to 1).

    Duplicate labels are accepted here (defaulted labels collide); callers
    that need distinctness should rebuild with build_diffusion_pair.
    """
    rows = [ln.strip() for ln in text.splitlines()]
    rows = [ln for ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise ValidationError("empty graph file")
    head = rows[0].split()
    if len(head) != 2:
        raise ValidationError(f"bad header {rows[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(rows) - 1 != m:
        raise ValidationError(f"expected {m} edge lines, found {len(rows) - 1}")
    weighted = []
    for ln in rows[1:]:
        parts = ln.split()
        if len(parts) == 2:
            u, v, a = int(parts[0]), int(parts[1]), 1
        elif len(parts) == 3:
            u, v, a = int(parts[0]), int(parts[1]), int(parts[2])
        else:
            raise ValidationError(f"bad edge line {ln!r}")
        weighted.append((u, v, a))
    return build_diffusion_pair(n, weighted, require_distinct_labels=False)


def write_graph(obj, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph_to_text(obj))


def read_graph(path):
    with open(path, encoding="utf-8") as fh:
        return graph_from_text(fh.read())
