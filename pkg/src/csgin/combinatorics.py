"""Graphs, hypergraphs, label graphs of degree families and forest recognition."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx

from .algebra import RingConfig
from .groebner import MonomialIdeal

ENUMERATION_CAP = 16


@dataclass(frozen=True)
class Hypergraph:
    """s-uniform hypergraph on the vertex set [n]; a graph when s == 2."""

    n: int
    s: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("hypergraph needs at least one vertex")
        if self.s < 1:
            raise ValueError("uniformity must be positive")
        clean = set()
        for e in self.edges:
            e = tuple(sorted(set(int(v) for v in e)))
            if len(e) != self.s:
                raise ValueError(f"edge {e} does not have exactly {self.s} vertices")
            if e[0] < 1 or e[-1] > self.n:
                raise ValueError(f"edge {e} leaves the vertex set [1, {self.n}]")
            clean.add(e)
        object.__setattr__(self, "edges", tuple(sorted(clean)))

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def is_complete(self) -> bool:
        return len(self.edges) == _binom_count(self.n, self.s)

    def relabel(self, perm: dict[int, int]) -> "Hypergraph":
        return type(self)(self.n, self.s, tuple(tuple(perm[v] for v in e) for e in self.edges))


def _binom_count(n: int, k: int) -> int:
    from math import comb

    return comb(n, k)


class Graph(Hypergraph):
    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        super().__init__(n, 2, tuple(tuple(e) for e in edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={list(self.edges)})"

    def relabel(self, perm: dict[int, int]) -> "Graph":
        return Graph(self.n, [tuple(perm[v] for v in e) for e in self.edges])

    def with_edge(self, e: Sequence[int]) -> "Graph":
        return Graph(self.n, list(self.edges) + [tuple(e)])


def complete_hypergraph(n: int, s: int) -> Hypergraph:
    return Hypergraph(n, s, tuple(itertools.combinations(range(1, n + 1), s)))


def path_graph(n: int) -> Graph:
    return Graph(n, [(k, k + 1) for k in range(1, n)])


def all_graphs(n: int) -> list[Graph]:
    """Every labeled simple graph on [n], in order of edge-set bitmask."""
    pairs = list(itertools.combinations(range(1, n + 1), 2))
    out = []
    for mask in range(1 << len(pairs)):
        out.append(Graph(n, [pr for k, pr in enumerate(pairs) if mask >> k & 1]))
    return out


# ---------------------------------------------------------------- file format


def parse_hypergraph_text(text: str) -> Hypergraph:
    """First line ``n s``, then one edge per line; ``#`` starts a comment."""
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty hypergraph file")
    try:
        head = [int(t) for t in lines[0].split()]
        n, s = head
        edges = [tuple(int(t) for t in line.split()) for line in lines[1:]]
    except ValueError:
        raise ValueError("malformed hypergraph file: expected integers, header 'n s'") from None
    if s == 2:
        return Graph(n, edges)
    return Hypergraph(n, s, tuple(edges))


def load_hypergraph(path: str | Path) -> Hypergraph:
    return parse_hypergraph_text(Path(path).read_text())


def format_hypergraph(H: Hypergraph) -> str:
    lines = [f"{H.n} {H.s}"] + [" ".join(map(str, e)) for e in H.edges]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- connectivity


def _is_connected(vertices: Sequence[int], adj: dict[int, set[int]]) -> bool:
    vs = set(vertices)
    start = vertices[0]
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w in vs and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(vs)


def connected_subsets(G: Hypergraph, cap: int = ENUMERATION_CAP) -> list[tuple[int, ...]]:
    """Nonempty A with G_A connected, ordered by size then lexicographically."""
    if G.n > cap:
        raise ValueError(f"subset enumeration capped at n <= {cap}, got n = {G.n}")
    adj: dict[int, set[int]] = {v: set() for v in G.vertices}
    for e in G.edges:
        for a in e:
            adj[a].update(v for v in e if v != a)
    out = []
    for size in range(1, G.n + 1):
        for A in itertools.combinations(G.vertices, size):
            if _is_connected(A, adj):
                out.append(A)
    return out


def predicted_exponent_tuples(A: Sequence[int], m: int) -> list[tuple[int, ...]]:
    """Row tuples (i_j)_{j in A} with every i_j in [m] and sum <= m(|A| - 1)."""
    bound = m * (len(A) - 1)
    return [t for t in itertools.product(range(1, m + 1), repeat=len(A)) if sum(t) <= bound]


def predict_gin_generators(G: Hypergraph, m: int, prime: int | None = None) -> MonomialIdeal:
    """Monomial ideal predicted as the gin of the generalized binomial edge ideal I_G(m)."""
    if m < 2:
        raise ValueError("need at least two rows")
    ring = RingConfig.uniform(G.n, m) if prime is None else RingConfig.uniform(G.n, m, prime)
    monos = []
    for A in connected_subsets(G):
        if len(A) < 2:
            continue
        for rows in predicted_exponent_tuples(A, m):
            monos.append(ring.monomial(zip(rows, A)))
    return MonomialIdeal(ring, tuple(monos))


# ---------------------------------------------------------------- label graphs


@dataclass(frozen=True)
class LabeledMultigraph:
    """Vertices 1..r (positions in a degree family); edges (l, k, label) with l < k."""

    r: int
    edges: tuple[tuple[int, int, int], ...]


def build_label_graph(family: Sequence[Iterable[int]]) -> LabeledMultigraph:
    sets = [frozenset(A) for A in family]
    if any(not A for A in sets):
        raise ValueError("degree family members must be nonempty")
    edges = []
    for l, k in itertools.combinations(range(len(sets)), 2):
        for j in sorted(sets[l] & sets[k]):
            edges.append((l + 1, k + 1, j))
    return LabeledMultigraph(len(sets), tuple(edges))


def is_single_cycle(lm: LabeledMultigraph) -> bool:
    """Whether the multigraph is one cycle through all its vertices (a 2-cycle counts)."""
    if lm.r < 2 or len(lm.edges) != lm.r:
        return False
    deg = [0] * (lm.r + 1)
    for a, b, _ in lm.edges:
        deg[a] += 1
        deg[b] += 1
    if any(d != 2 for d in deg[1:]):
        return False
    G = nx.MultiGraph()
    G.add_nodes_from(range(1, lm.r + 1))
    G.add_edges_from((a, b) for a, b, _ in lm.edges)
    return nx.is_connected(G)


def has_nonconstant_label_cycle(
    lm: LabeledMultigraph,
) -> tuple[bool, list[tuple[int, int, int]] | None]:
    """Whether some cycle (parallel edges count) carries two different labels.

    Any two edges of a 2-connected block lie on a common cycle, so the answer
    is yes iff some block holds two labels.  Edges are subdivided so that
    parallel edges become ordinary cycles for networkx.
    """
    H = nx.Graph()
    H.add_nodes_from(("v", i) for i in range(1, lm.r + 1))
    for idx, (a, b, _) in enumerate(lm.edges):
        H.add_edge(("v", a), ("e", idx))
        H.add_edge(("e", idx), ("v", b))
    blocks = []
    for comp in nx.biconnected_components(H):
        idxs = sorted(node[1] for node in comp if node[0] == "e")
        blocks.append((idxs, comp))
    blocks.sort(key=lambda t: t[0])
    for idxs, comp in blocks:
        labels = {lm.edges[i][2] for i in idxs}
        if len(labels) < 2:
            continue
        e1 = idxs[0]
        e2 = next(i for i in idxs if lm.edges[i][2] != lm.edges[e1][2])
        sub = H.subgraph(comp)
        p1, p2 = list(nx.node_disjoint_paths(sub, ("e", e1), ("e", e2)))[:2]
        ring_nodes = p1 + list(reversed(p2))[1:-1]
        cycle = [lm.edges[node[1]] for node in ring_nodes if node[0] == "e"]
        return True, cycle
    return False, None


# ---------------------------------------------------------------- forests of complete hypergraphs


def complete_clusters(vertices: Iterable[int], edges: Iterable[frozenset], s: int) -> list[frozenset]:
    """Inclusion-maximal B (|B| >= s) with every s-subset of B an edge."""
    E = set(frozenset(e) for e in edges)
    verts = sorted(vertices)
    found: set[frozenset] = set()

    def grow(B: tuple[int, ...]):
        extended = False
        for v in verts:
            if v <= B[-1]:
                continue
            if all(frozenset(c + (v,)) in E for c in itertools.combinations(B, s - 1)):
                extended = True
                grow(B + (v,))
        found.add(frozenset(B))
        return extended

    for e in sorted(tuple(sorted(e)) for e in E):
        grow(e)
    maximal = [B for B in found if not any(B < C for C in found)]
    return sorted(maximal, key=lambda B: (-len(B), sorted(B)))


@dataclass
class ForestResult:
    is_forest: bool
    trace: list[dict]


def is_forest_of_complete(H: Hypergraph) -> ForestResult:
    """Decide whether H is a forest of complete s-uniform hypergraphs.

    A leaf cluster B (all s-subsets of B are edges) is peeled off when the
    remaining edges meet it in at most one common vertex; isolated vertices
    are peeled directly.  Backtracks over the choice of leaf.
    """
    s = H.s
    memo: dict = {}

    def solve(V: frozenset, E: frozenset):
        key = (V, E)
        if key in memo:
            return memo[key]
        memo[key] = None
        full = frozenset(frozenset(c) for c in itertools.combinations(sorted(V), s))
        if E == full:
            memo[key] = [{"step": "complete", "vertices": sorted(V)}]
            return memo[key]
        covered = frozenset().union(*E) if E else frozenset()
        isolated = sorted(V - covered)
        if isolated:
            v = isolated[0]
            rest = solve(V - {v}, E)
            if rest is not None:
                memo[key] = [{"step": "isolated", "vertex": v}] + rest
            return memo[key]
        for B in complete_clusters(V, E, s):
            E2 = frozenset(frozenset(c) for c in itertools.combinations(sorted(B), s))
            E1 = E - E2
            touch: set[int] = set()
            ok = True
            for e in E1:
                inter = e & B
                if len(inter) > 1:
                    ok = False
                    break
                touch |= inter
            if not ok or len(touch) > 1:
                continue
            A = (V - B) | touch
            rest = solve(frozenset(A), E1)
            if rest is not None:
                memo[key] = [
                    {"step": "glue", "cluster": sorted(B), "shared": sorted(touch)}
                ] + rest
                return memo[key]
        return None

    if H.n > ENUMERATION_CAP:
        raise ValueError(f"forest search capped at n <= {ENUMERATION_CAP}")
    trace = solve(frozenset(H.vertices), frozenset(frozenset(e) for e in H.edges))
    return ForestResult(trace is not None, trace or [])


def is_forest_of_clusters(clusters: Sequence[Iterable[int]]) -> ForestResult:
    """Forest test for a fixed family of complete clusters of any sizes.

    Repeatedly removes a cluster meeting the union of the others in at most
    one vertex.  Removing a leaf never blocks another, so greedy is exact.
    """
    remaining = [frozenset(c) for c in clusters]
    trace = []
    while len(remaining) > 1:
        for k, C in enumerate(remaining):
            others = frozenset().union(*(remaining[:k] + remaining[k + 1 :]))
            shared = C & others
            if len(shared) <= 1:
                trace.append({"step": "glue", "cluster": sorted(C), "shared": sorted(shared)})
                remaining.pop(k)
                break
        else:
            return ForestResult(False, trace)
    if remaining:
        trace.append({"step": "complete", "vertices": sorted(remaining[0])})
    return ForestResult(True, trace)


# ---------------------------------------------------------------- obstruction family


def window(j: int, m: int) -> tuple[int, ...]:
    """The m consecutive indices j, j+1, ..., j+m-1."""
    return tuple(range(j, j + m))


def obstruction_hypergraph(m: int, t: int, n: int) -> Hypergraph:
    """Chain of t windows of size m glued at single vertices, closed back to vertex 1."""
    if m < 3:
        raise ValueError("obstruction family needs m >= 3")
    if t < 1:
        raise ValueError("obstruction family needs t >= 1")
    if (t + 1) * (m - 1) + 1 > n:
        raise ValueError(f"need (t+1)(m-1)+1 <= n, got m={m}, t={t}, n={n}")
    edges = [window(l * (m - 1) + 2 - m, m) for l in range(1, t + 1)]
    last = set(window((t + 1) * (m - 1) + 2 - m, m))
    last.discard((t + 1) * (m - 1) + 1)
    last.add(1)
    edges.append(tuple(sorted(last)))
    return Hypergraph(n, m, tuple(edges))


def window_hypergraph(starts: Sequence[int], m: int, n: int) -> Hypergraph:
    """m-uniform hypergraph whose edges are the windows starting at ``starts``."""
    if any(j < 1 or j > n - m + 1 for j in starts):
        raise ValueError("window leaves the vertex set")
    return Hypergraph(n, m, tuple(window(j, m) for j in starts))
