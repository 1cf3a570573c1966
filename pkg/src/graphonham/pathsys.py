"""Constructive path machinery: odd walks, binary-tree path decompositions,
and the low-degree covering path system.

The covering construction sweeps the low-degree vertices in ascending degree
order, grants each one two fresh neighbors, decomposes the resulting binary
forest into paths whose endpoints are leaves (hence high degree), and then
merges paths that share an unused common neighbor until no pair is mergeable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Optional

from .errors import BipartiteOrDisconnected, GreedyStuck, NotBinaryTree
from .fracmatch import FiniteGraph


@dataclass(frozen=True)
class PathSystem:
    """Vertex-disjoint paths over a host graph."""

    paths: tuple[tuple[int, ...], ...]

    def vertices(self) -> set[int]:
        return {v for p in self.paths for v in p}

    def validate(self, host: FiniteGraph) -> None:
        seen: set[int] = set()
        eset = set(host.edges)
        for p in self.paths:
            if not p:
                raise AssertionError("empty path")
            for v in p:
                if v in seen:
                    raise AssertionError(f"vertex {v} appears in two paths")
                seen.add(v)
            for a, b in zip(p, p[1:]):
                if ((a, b) if a < b else (b, a)) not in eset:
                    raise AssertionError(f"({a},{b}) is not a host edge")


# ---------------------------------------------------------------------------
# odd walks


def odd_walk(h: FiniteGraph, i: int, j: int) -> list[int]:
    """A walk of odd length at most 2|V| - 1 from i to j.

    Needs a connected non-bipartite host: a spanning tree is 2-colored by
    depth and any same-color non-tree edge closes an odd cycle; whichever of
    the tree path / the detour through that edge has odd parity is returned.
    """
    n = h.n
    if not (0 <= i < n and 0 <= j < n):
        raise BipartiteOrDisconnected("endpoint out of range")
    adj = h.adjacency()
    parent = [-1] * n
    depth = [-1] * n
    depth[0] = 0
    order = [0]
    q = deque([0])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if depth[v] == -1:
                depth[v] = depth[u] + 1
                parent[v] = u
                order.append(v)
                q.append(v)
    if len(order) != n:
        raise BipartiteOrDisconnected("graph is disconnected")
    odd_edge = None
    for u, v in h.edges:
        if depth[u] % 2 == depth[v] % 2:
            odd_edge = (u, v)
            break
    if odd_edge is None:
        raise BipartiteOrDisconnected("graph is bipartite")

    def tree_path(a: int, b: int) -> list[int]:
        pa, pb = [a], [b]
        x, y = a, b
        while depth[x] > depth[y]:
            x = parent[x]
            pa.append(x)
        while depth[y] > depth[x]:
            y = parent[y]
            pb.append(y)
        while x != y:
            x = parent[x]
            y = parent[y]
            pa.append(x)
            pb.append(y)
        return pa[:-1] + pb[::-1]

    direct = tree_path(i, j)
    if (len(direct) - 1) % 2 == 1:
        return direct
    u, v = odd_edge
    detour = tree_path(i, u) + tree_path(v, j)
    assert (len(detour) - 1) % 2 == 1 and len(detour) - 1 <= 2 * n - 1
    return detour


# ---------------------------------------------------------------------------
# binary-tree decomposition


def _rooted_children(t: FiniteGraph, root: int) -> list[list[int]]:
    adj = t.adjacency()
    children: list[list[int]] = [[] for _ in range(t.n)]
    seen = [False] * t.n
    seen[root] = True
    q = deque([root])
    while q:
        u = q.popleft()
        for v in sorted(adj[u]):
            if not seen[v]:
                seen[v] = True
                children[u].append(v)
                q.append(v)
    return children


def _decompose_rooted(root: int, children: list[list[int]]) -> list[list[int]]:
    """Paths partitioning a rooted binary forest tree; endpoints are leaves.

    The root (two children) sits in the middle of its path; every internal
    vertex continues its path through its first child and spawns the second
    child as a new sub-root.
    """
    paths: list[list[int]] = []
    stack = [root]
    while stack:
        r = stack.pop()
        kids = children[r]
        if not kids:
            paths.append([r])
            continue
        assert len(kids) == 2
        left = _spine(kids[0], children, stack)
        right = _spine(kids[1], children, stack)
        paths.append(left[::-1] + [r] + right)
    return paths


def _spine(v: int, children: list[list[int]], stack: list[int]) -> list[int]:
    seq = [v]
    cur = v
    while children[cur]:
        a, b = children[cur]
        stack.append(b)
        seq.append(a)
        cur = a
    return seq


def decompose_binary_tree(t: FiniteGraph) -> PathSystem:
    """Partition a binary tree into paths whose endpoint union is its leaf set.

    Binary tree here means: exactly one vertex of degree 2 (the root), any
    number of degree-3 internal vertices, any number of degree-1 leaves.
    """
    t.require_simple()
    n = t.n
    if n < 3 or len(t.edges) != n - 1:
        raise NotBinaryTree("not a tree of order at least 3")
    deg = t.degrees()
    roots = [v for v in range(n) if deg[v] == 2]
    if len(roots) != 1 or any(d not in (1, 2, 3) for d in deg) or deg.count(2) != 1:
        raise NotBinaryTree("degrees must be one 2, rest in {1, 3}")
    adj = t.adjacency()
    reach = {0}
    q = deque([0])
    while q:
        u = q.popleft()
        for v in adj[u]:
            if v not in reach:
                reach.add(v)
                q.append(v)
    if len(reach) != n:
        raise NotBinaryTree("tree must be connected")
    children = _rooted_children(t, roots[0])
    paths = _decompose_rooted(roots[0], children)
    system = PathSystem(tuple(tuple(p) for p in paths))
    system.validate(t)
    assert system.vertices() == set(range(n))
    leaves = {v for v in range(n) if deg[v] == 1}
    endpoints = {p[0] for p in system.paths} | {p[-1] for p in system.paths}
    assert endpoints == leaves
    return system


# ---------------------------------------------------------------------------
# low-degree covering system


def low_degree_path_system(g: FiniteGraph, alpha) -> PathSystem:
    """Cover every vertex of degree < alpha*n by short disjoint paths whose
    endpoints have degree >= alpha*n.

    Vertices of degree below twice the ceiling threshold are processed in
    ascending degree order; each receives two not-yet-used neighbors, forming
    a binary forest whose leaves automatically have high degree.  The forest
    is decomposed into paths, single-leaf paths are dropped (they contain no
    low-degree vertex), and remaining paths are merged greedily through
    unused common neighbors of their endpoints to drive the path count below
    2/alpha.

    Raises GreedyStuck when a low-degree vertex has fewer than two fresh
    neighbors; that means the input is outside the light-tail regime the
    construction is designed for, and is reported rather than masked.
    """
    g.require_simple()
    n = g.n
    alpha = Fraction(alpha)
    if not 0 < alpha < Fraction(1, 2):
        raise ValueError("alpha must lie in (0, 1/2)")
    if n < 3:
        raise ValueError("need at least 3 vertices")
    theta = ceil(alpha * n)  # integer degree threshold for "low"
    deg = g.degrees()
    adj = [sorted(s) for s in _sorted_adjacency(g)]
    low = sorted(
        (v for v in range(n) if deg[v] < 2 * theta), key=lambda v: (deg[v], v)
    )
    if not low:
        return PathSystem(())
    low_rank = {v: r for r, v in enumerate(low)}
    used: set[int] = set()  # earlier chosen fresh neighbors
    children: list[list[int]] = [[] for _ in range(n)]
    for r, v in enumerate(low):
        fresh = [
            w
            for w in adj[v]
            if w not in used and not (w in low_rank and low_rank[w] < r)
        ]
        if len(fresh) < 2:
            raise GreedyStuck(v)
        pick = fresh[:2]  # lowest index, deterministic
        children[v] = pick
        used.update(pick)
    roots = [v for v in low if v not in used]
    paths: list[list[int]] = []
    for root in roots:
        paths.extend(_decompose_rooted(root, children))
    # single-leaf paths carry no low-degree vertex; they are not needed
    paths = [p for p in paths if len(p) > 1]
    merged = _merge_paths(g, paths, theta)
    system = PathSystem(tuple(tuple(p) for p in merged))
    system.validate(g)
    return system


def _sorted_adjacency(g: FiniteGraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def _merge_paths(g: FiniteGraph, paths: list[list[int]], theta: int) -> list[list[int]]:
    """First-fit merging through an unused degree->=theta common neighbor."""
    adj = _sorted_adjacency(g)
    deg = g.degrees()
    while True:
        in_system = {v for p in paths for v in p}
        paths.sort(key=len)
        done = True
        for ai in range(len(paths)):
            for bi in range(ai + 1, len(paths)):
                hit = _mergeable(paths[ai], paths[bi], adj, deg, theta, in_system)
                if hit is None:
                    continue
                pa, pb, w = hit
                rest = [paths[k] for k in range(len(paths)) if k not in (ai, bi)]
                paths = rest + [pa + [w] + pb]
                done = False
                break
            if not done:
                break
        if done:
            return paths


def _mergeable(pa, pb, adj, deg, theta, in_system):
    for a_end in (pa[::-1], pa[:]):  # orient pa to end at the probed endpoint
        for b_end in (pb[:], pb[::-1]):
            x, y = a_end[-1], b_end[0]
            common = (adj[x] & adj[y]) - in_system
            for w in sorted(common):
                if deg[w] >= theta:
                    return a_end, b_end, w
    return None


@dataclass(frozen=True)
class PathSystemCheck:
    min_three_vertices: bool   # (a)
    low_degree_covered: bool   # (b)
    endpoint_degrees: bool     # (c)
    covered_vertex_count: int  # (d), reported not asserted
    few_paths: bool            # (e)

    def all_asserted(self) -> bool:
        return (
            self.min_three_vertices
            and self.low_degree_covered
            and self.endpoint_degrees
            and self.few_paths
        )


def check_path_system(g: FiniteGraph, system: PathSystem, alpha) -> PathSystemCheck:
    """Validate the covering-path-system contract against its host graph."""
    alpha = Fraction(alpha)
    n = g.n
    deg = g.degrees()
    theta = ceil(alpha * n)
    covered = system.vertices()
    system.validate(g)
    return PathSystemCheck(
        min_three_vertices=all(len(p) >= 3 for p in system.paths),
        low_degree_covered=all(v in covered for v in range(n) if deg[v] < theta),
        endpoint_degrees=all(
            deg[p[0]] >= theta and deg[p[-1]] >= theta for p in system.paths
        ),
        covered_vertex_count=len(covered),
        few_paths=len(system.paths) < 2 / alpha,
    )
