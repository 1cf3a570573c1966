"""Exact half-integral fractional matchings and vertex covers on finite graphs.

Everything here is computed over exact rationals.  The optimization engine is
the bipartite double cover: each vertex v becomes a left copy v+ and a right
copy v-, each edge uv becomes the two copies u+v- and v+u-.  A maximum
matching there folds back to an optimal half-integral fractional matching of
the original graph, and a minimum vertex cover there (via Koenig's theorem,
or min-cut in the vertex-weighted case) folds back to an optimal half-integral
fractional vertex cover.  The sandwich

    fmn(G) >= matching(D)/2  and  fvcn(G) <= cover(D)/2,
    fmn(G) <= fvcn(G),       and  matching(D) = cover(D)

proves both folded objects optimal, so no external LP theory is trusted at
runtime; every returned object is also re-validated against its definition.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import FormatError

HALF = Fraction(1, 2)

# Above this size the double-cover matching is delegated to scipy's C
# implementation; below it a plain Hopcroft-Karp avoids csr setup overhead.
_SCIPY_EDGE_THRESHOLD = 4000


# ---------------------------------------------------------------------------
# graphs


@dataclass(frozen=True)
class FiniteGraph:
    """A finite graph with optional exact vertex weights and self-loops.

    Edges are stored normalized (u < v, deduplicated).  Self-loops are only
    legal in weighted mode, where they encode a diagonal positivity constraint
    forcing f(v) >= 1/2 in any fractional vertex cover.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    weights: Optional[tuple[Fraction, ...]] = None
    loops: tuple[int, ...] = ()

    @staticmethod
    def build(
        n: int,
        edges: Iterable[tuple[int, int]],
        weights: Optional[Sequence[Fraction]] = None,
        loops: Iterable[int] = (),
    ) -> "FiniteGraph":
        if n < 0:
            raise FormatError("vertex count must be nonnegative", "n")
        norm = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise FormatError(f"edge ({u},{v}) out of range", "edges")
            if u == v:
                raise FormatError(f"self-loop at {u} not allowed in edge list", "edges")
            norm.add((u, v) if u < v else (v, u))
        loops = tuple(sorted(set(loops)))
        if loops and weights is None:
            raise FormatError("self-loops are only supported in weighted mode", "loops")
        for v in loops:
            if not 0 <= v < n:
                raise FormatError(f"loop vertex {v} out of range", "loops")
        w = None
        if weights is not None:
            if len(weights) != n:
                raise FormatError("need one weight per vertex", "weights")
            w = tuple(Fraction(x) for x in weights)
            if any(x < 0 for x in w):
                raise FormatError("vertex weights must be nonnegative", "weights")
        return FiniteGraph(n, tuple(sorted(norm)), w, loops)

    @property
    def weighted(self) -> bool:
        return self.weights is not None

    def require_simple(self) -> None:
        if self.loops:
            raise FormatError("operation requires a simple (loop-free) graph", "loops")

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def vertex_weight(self, v: int) -> Fraction:
        return self.weights[v] if self.weights is not None else Fraction(1)

    def to_edge_list_text(self) -> str:
        lines = [f"{self.n} {len(self.edges)}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    @staticmethod
    def from_edge_list_text(text: str) -> "FiniteGraph":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise FormatError("empty edge list", "line 1")
        head = lines[0].split()
        if len(head) != 2:
            raise FormatError("header must be 'n m'", "line 1")
        try:
            n, m = int(head[0]), int(head[1])
        except ValueError:
            raise FormatError("header must be two integers", "line 1") from None
        if len(lines) - 1 != m:
            raise FormatError(f"expected {m} edge lines, found {len(lines) - 1}", "header")
        edges = []
        for k, ln in enumerate(lines[1:], start=2):
            parts = ln.split()
            if len(parts) != 2:
                raise FormatError("edge line must be 'u v'", f"line {k}")
            try:
                u, v = int(parts[0]), int(parts[1])
            except ValueError:
                raise FormatError("edge endpoints must be integers", f"line {k}") from None
            edges.append((u, v))
        return FiniteGraph.build(n, edges)


# ---------------------------------------------------------------------------
# certificates


@dataclass(frozen=True)
class HalfCover:
    """A half-integral fractional vertex cover with its exact total weight."""

    values: tuple[Fraction, ...]
    weight: Fraction

    def validate(self, g: FiniteGraph) -> None:
        if len(self.values) != g.n:
            raise AssertionError("cover has wrong length")
        for f in self.values:
            if f not in (Fraction(0), HALF, Fraction(1)):
                raise AssertionError(f"cover value {f} not in {{0, 1/2, 1}}")
        for u, v in g.edges:
            if self.values[u] + self.values[v] < 1:
                raise AssertionError(f"edge ({u},{v}) uncovered")
        for v in g.loops:
            if self.values[v] < HALF:
                raise AssertionError(f"loop at {v} demands f(v) >= 1/2")
        total = sum((g.vertex_weight(v) * self.values[v] for v in range(g.n)), Fraction(0))
        if total != self.weight:
            raise AssertionError("stored weight disagrees with recomputed sum")


@dataclass(frozen=True)
class HalfMatching:
    """A half-integral fractional matching, values aligned with graph.edges."""

    values: tuple[Fraction, ...]
    weight: Fraction

    def validate(self, g: FiniteGraph) -> None:
        if len(self.values) != len(g.edges):
            raise AssertionError("matching has wrong length")
        for m in self.values:
            if m not in (Fraction(0), HALF, Fraction(1)):
                raise AssertionError(f"matching value {m} not in {{0, 1/2, 1}}")
        load = [Fraction(0)] * g.n
        for (u, v), m in zip(g.edges, self.values):
            load[u] += m
            load[v] += m
        for v, l in enumerate(load):
            if l > 1:
                raise AssertionError(f"vertex {v} overloaded: {l}")
        if sum(self.values, Fraction(0)) != self.weight:
            raise AssertionError("stored weight disagrees with recomputed sum")

    def is_perfect(self, g: FiniteGraph) -> bool:
        return self.weight == Fraction(g.n, 2)


@dataclass(frozen=True)
class GraphPeninsula:
    """Witness (A, B) for a density-zero trap in a finite graph.

    No edge has an endpoint in A and the other in A or B; `narrow` means
    |A| > (n - |B|) / 2, which rules out a perfect fractional matching.
    """

    A: tuple[int, ...]
    B: tuple[int, ...]
    kind: str  # "peninsula" | "narrow"

    def validate(self, g: FiniteGraph) -> None:
        sa, sb = set(self.A), set(self.B)
        if not sa:
            raise AssertionError("A must be nonempty")
        if sa & sb:
            raise AssertionError("A and B must be disjoint")
        for u, v in g.edges:
            if (u in sa and (v in sa or v in sb)) or (v in sa and (u in sa or u in sb)):
                raise AssertionError(f"edge ({u},{v}) meets A x (A u B)")
        bound = Fraction(g.n - len(self.B), 2)
        if self.kind == "narrow":
            if not len(self.A) > bound:
                raise AssertionError("narrow requires |A| > (n-|B|)/2")
        elif self.kind == "peninsula":
            if not len(self.A) >= bound:
                raise AssertionError("peninsula requires |A| >= (n-|B|)/2")
        else:
            raise AssertionError(f"unknown kind {self.kind!r}")


# ---------------------------------------------------------------------------
# bipartite matching engines


def _hopcroft_karp(nl: int, nr: int, adj: list[list[int]]) -> tuple[int, list[int], list[int]]:
    """Maximum matching of a bipartite graph given left adjacency lists.

    Returns (size, match_l, match_r) with -1 for unmatched vertices.
    """
    INF = float("inf")
    match_l = [-1] * nl
    match_r = [-1] * nr
    size = 0
    while True:
        dist = [0 if match_l[u] == -1 else INF for u in range(nl)]
        q = deque(u for u in range(nl) if match_l[u] == -1)
        reachable_free = False
        while q:
            u = q.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    reachable_free = True
                elif dist[w] == INF:
                    dist[w] = dist[u] + 1
                    q.append(w)
        if not reachable_free:
            break

        def dfs(u: int) -> bool:
            for v in adj[u]:
                w = match_r[v]
                if w == -1 or (dist[w] == dist[u] + 1 and dfs(w)):
                    match_l[u] = v
                    match_r[v] = u
                    return True
            dist[u] = INF
            return False

        for u in range(nl):
            if match_l[u] == -1 and dfs(u):
                size += 1
    return size, match_l, match_r


def _double_cover_matching(g: FiniteGraph) -> tuple[int, list[int], list[int]]:
    """Maximum matching in the bipartite double cover of a simple graph."""
    g.require_simple()
    n = g.n
    if n == 0 or not g.edges:
        return 0, [-1] * n, [-1] * n
    if len(g.edges) >= _SCIPY_EDGE_THRESHOLD:
        from scipy.sparse import csr_matrix
        from scipy.sparse.csgraph import maximum_bipartite_matching

        e = np.asarray(g.edges, dtype=np.int32)
        rows = np.concatenate([e[:, 0], e[:, 1]])
        cols = np.concatenate([e[:, 1], e[:, 0]])
        bi = csr_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
        ml = maximum_bipartite_matching(bi, perm_type="column")
        match_l = [int(x) for x in ml]
        match_r = [-1] * n
        for u, v in enumerate(match_l):
            if v != -1:
                match_r[v] = u
        size = sum(1 for v in match_l if v != -1)
        return size, match_l, match_r
    adj = g.adjacency()
    return _hopcroft_karp(n, n, adj)


def _koenig_cover(g: FiniteGraph, match_l: list[int], match_r: list[int]) -> tuple[set[int], set[int]]:
    """Minimum vertex cover of the double cover from a maximum matching.

    Alternating BFS from unmatched left copies; cover = (L \\ Z) u (R n Z).
    """
    adj = g.adjacency()
    n = g.n
    visited_l = [False] * n
    visited_r = [False] * n
    q = deque()
    for u in range(n):
        if match_l[u] == -1:
            visited_l[u] = True
            q.append(u)
    while q:
        u = q.popleft()
        for v in adj[u]:
            if not visited_r[v]:
                visited_r[v] = True
                w = match_r[v]
                if w != -1 and not visited_l[w]:
                    visited_l[w] = True
                    q.append(w)
    cover_l = {u for u in range(n) if not visited_l[u]}
    cover_r = {v for v in range(n) if visited_r[v]}
    return cover_l, cover_r


# ---------------------------------------------------------------------------
# Dinic max-flow for the vertex-weighted case


class _Dinic:
    def __init__(self, n: int):
        self.n = n
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list[int] = []

    def add_edge(self, u: int, v: int, cap: int) -> None:
        self.head[u].append(len(self.to))
        self.to.append(v)
        self.cap.append(cap)
        self.head[v].append(len(self.to))
        self.to.append(u)
        self.cap.append(0)

    def max_flow(self, s: int, t: int) -> int:
        flow = 0
        while True:
            level = [-1] * self.n
            level[s] = 0
            q = deque([s])
            while q:
                u = q.popleft()
                for eid in self.head[u]:
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] < 0:
                        level[v] = level[u] + 1
                        q.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def dfs(u: int, pushed: int) -> int:
                if u == t:
                    return pushed
                while it[u] < len(self.head[u]):
                    eid = self.head[u][it[u]]
                    v = self.to[eid]
                    if self.cap[eid] > 0 and level[v] == level[u] + 1:
                        got = dfs(v, min(pushed, self.cap[eid]))
                        if got:
                            self.cap[eid] -= got
                            self.cap[eid ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = dfs(s, 1 << 62)
                if not pushed:
                    break
                flow += pushed

    def source_side(self, s: int) -> set[int]:
        seen = {s}
        q = deque([s])
        while q:
            u = q.popleft()
            for eid in self.head[u]:
                v = self.to[eid]
                if self.cap[eid] > 0 and v not in seen:
                    seen.add(v)
                    q.append(v)
        return seen


def _weighted_cover(g: FiniteGraph) -> HalfCover:
    """Min-weight half-integral cover via min-cut on the weighted double cover."""
    n = g.n
    weights = [g.vertex_weight(v) for v in range(n)]
    scale = lcm(*[w.denominator for w in weights]) if n else 1
    caps = [int(w * scale) for w in weights]
    inf = sum(caps) * 2 + 1
    s, t = 2 * n, 2 * n + 1
    net = _Dinic(2 * n + 2)
    for v in range(n):
        net.add_edge(s, v, caps[v])          # v+ capacity
        net.add_edge(n + v, t, caps[v])      # v- capacity
    for u, v in g.edges:
        net.add_edge(u, n + v, inf)
        net.add_edge(v, n + u, inf)
    for v in g.loops:
        net.add_edge(v, n + v, inf)
    net.max_flow(s, t)
    reach = net.source_side(s)
    values = []
    for v in range(n):
        half_units = (0 if v in reach else 1) + (1 if (n + v) in reach else 0)
        values.append(Fraction(half_units, 2))
    weight = sum((weights[v] * values[v] for v in range(n)), Fraction(0))
    cover = HalfCover(tuple(values), weight)
    cover.validate(g)
    return cover


# ---------------------------------------------------------------------------
# public operations


def fmn_half(g: FiniteGraph) -> HalfMatching:
    """Maximum-weight half-integral fractional matching of a simple graph."""
    size, match_l, _ = _double_cover_matching(g)
    pair = {}
    for u, v in enumerate(match_l):
        if v != -1:
            pair[(u, v)] = True
    values = []
    for u, v in g.edges:
        m = Fraction(0)
        if (u, v) in pair:
            m += HALF
        if (v, u) in pair:
            m += HALF
        values.append(m)
    matching = HalfMatching(tuple(values), Fraction(size, 2))
    matching.validate(g)
    return matching


def fvcn_half(g: FiniteGraph) -> HalfCover:
    """Minimum-weight half-integral fractional vertex cover.

    Unweighted simple graphs go through Koenig's construction on the double
    cover; vertex-weighted graphs (the block-positivity case, possibly with
    loops) go through an exact integer min-cut.
    """
    if g.weighted or g.loops:
        return _weighted_cover(g)
    size, match_l, match_r = _double_cover_matching(g)
    cover_l, cover_r = _koenig_cover(g, match_l, match_r)
    values = tuple(
        Fraction((1 if v in cover_l else 0) + (1 if v in cover_r else 0), 2)
        for v in range(g.n)
    )
    cover = HalfCover(values, sum(values, Fraction(0)))
    cover.validate(g)
    # Koenig: |cover| = |matching|, so the folded weights agree exactly.
    assert cover.weight == Fraction(size, 2)
    return cover


def fvcn_value(g: FiniteGraph) -> Fraction:
    """Exact fvcn without materializing the cover (fast path)."""
    if g.weighted or g.loops:
        return _weighted_cover(g).weight
    size, _, _ = _double_cover_matching(g)
    return Fraction(size, 2)


def check_duality(g: FiniteGraph) -> bool:
    """Self-test: optimal matching weight equals optimal cover weight."""
    return fmn_half(g).weight == fvcn_half(g).weight


def _induced_without(g: FiniteGraph, removed: set[int]) -> FiniteGraph:
    keep = [v for v in range(g.n) if v not in removed]
    remap = {v: i for i, v in enumerate(keep)}
    edges = [(remap[u], remap[v]) for u, v in g.edges if u not in removed and v not in removed]
    return FiniteGraph.build(len(keep), edges)


def uniquely_half_covered(g: FiniteGraph) -> tuple[bool, Optional[HalfCover]]:
    """Whether the constant-1/2 function is the only half cover of weight <= n/2.

    Returns (verdict, witness); the witness is a valid non-constant cover of
    weight at most n/2 whenever the verdict is False.
    """
    g.require_simple()
    n = g.n
    if n == 0:
        return True, None
    half_n = Fraction(n, 2)
    base = fvcn_half(g)
    if base.weight < half_n:
        return False, base
    adj = g.adjacency()
    for v in range(n):
        neigh = set(adj[v])
        removed = neigh | {v}
        rest = _induced_without(g, removed)
        # f(v) = 0 forces f on N(v) to be 1; the remainder is covered optimally.
        if len(neigh) + fvcn_value(rest) <= half_n:
            keep = [u for u in range(n) if u not in removed]
            sub = fvcn_half(rest)
            values = [Fraction(0)] * n
            for u in neigh:
                values[u] = Fraction(1)
            for i, u in enumerate(keep):
                values[u] = sub.values[i]
            values[v] = Fraction(0)
            witness = HalfCover(tuple(values), sum(values, Fraction(0)))
            witness.validate(g)
            assert witness.weight <= half_n
            return False, witness
    return True, None


def graph_peninsula(g: FiniteGraph) -> Optional[GraphPeninsula]:
    """Extract a density-zero trap certificate from an optimal half cover.

    narrow  <=> fvcn(G) < n/2,
    peninsula (non-strict) <=> G is not uniquely half-covered.
    """
    g.require_simple()
    n = g.n
    if n == 0:
        return None
    cover = fvcn_half(g)
    if cover.weight < Fraction(n, 2):
        cert = _peninsula_from_cover(cover, "narrow")
        cert.validate(g)
        return cert
    uhc, witness = uniquely_half_covered(g)
    if not uhc:
        cert = _peninsula_from_cover(witness, "peninsula")
        cert.validate(g)
        return cert
    return None


def _peninsula_from_cover(cover: HalfCover, kind: str) -> GraphPeninsula:
    A = tuple(v for v, f in enumerate(cover.values) if f == 0)
    B = tuple(v for v, f in enumerate(cover.values) if f == HALF)
    return GraphPeninsula(A, B, kind)


def half_integral_perfect_matching(g: FiniteGraph) -> Optional[HalfMatching]:
    """A half-integral matching of weight n/2, when one exists."""
    g.require_simple()
    m = fmn_half(g)
    if m.weight != Fraction(g.n, 2):
        return None
    return m


def is_bipartite(g: FiniteGraph) -> bool:
    adj = g.adjacency()
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for v in adj[u]:
                if color[v] == -1:
                    color[v] = color[u] ^ 1
                    q.append(v)
                elif color[v] == color[u]:
                    return False
    return True


def non_bipartite_if_uhc(g: FiniteGraph) -> bool:
    """Non-bipartiteness check, the testable half of the UHC implication."""
    return not is_bipartite(g)


def is_connected(g: FiniteGraph) -> bool:
    if g.n <= 1:
        return True
    adj = g.adjacency()
    seen = [False] * g.n
    seen[0] = True
    q = deque([0])
    count = 1
    while q:
        u = q.popleft()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                count += 1
                q.append(v)
    return count == g.n
