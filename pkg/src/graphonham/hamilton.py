"""Hamiltonicity decisions: cheap certified obstructions, a rotation
heuristic, and an exact bitmask dynamic program for small graphs.

Verdict soundness contract: a `hamiltonian` verdict always carries a witness
cycle that is re-validated edge by edge; a `not_hamiltonian` verdict carries
the obstruction that was itself re-validated (or came from an exhaustive
search); `unknown` is a first-class outcome and is never coerced.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .fracmatch import FiniteGraph, fvcn_value, graph_peninsula, is_connected

STATUS_HAMILTONIAN = "hamiltonian"
STATUS_NOT_HAMILTONIAN = "not_hamiltonian"
STATUS_UNKNOWN = "unknown"

OBSTRUCTION_DISCONNECTED = "disconnected"
OBSTRUCTION_MIN_DEGREE = "min_degree_below_2"
OBSTRUCTION_NARROW = "narrow_graph_peninsula"
OBSTRUCTION_EXHAUSTED = "exact_search_exhausted"

#: Above this the exact bitmask DP is not attempted.
DP_VERTEX_CAP = 24
DEFAULT_BACKTRACK_BUDGET = 200_000


@dataclass(frozen=True)
class HamiltonVerdict:
    status: str
    witness: Optional[tuple[int, ...]] = None
    obstruction: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "witness": list(self.witness) if self.witness else None,
            "obstruction": self.obstruction,
        }


def validate_cycle(g: FiniteGraph, cycle) -> bool:
    """Spanning, no repeats, consecutive pairs (wrap included) all edges."""
    if len(cycle) != g.n or g.n < 3:
        return False
    if len(set(cycle)) != g.n:
        return False
    eset = set(g.edges)
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if ((a, b) if a < b else (b, a)) not in eset:
            return False
    return True


def cheap_obstructions(g: FiniteGraph) -> Optional[str]:
    """First certified necessary-condition failure, if any.

    Checked in order: connectivity, minimum degree 2, then a narrow trap
    (fvcn < n/2, which already rules out a perfect fractional matching).
    """
    if not is_connected(g):
        return OBSTRUCTION_DISCONNECTED
    if g.n == 0 or min(g.degrees()) < 2:
        return OBSTRUCTION_MIN_DEGREE
    if g.n >= 3 and fvcn_value(g) < Fraction(g.n, 2):
        cert = graph_peninsula(g)
        assert cert is not None and cert.kind == "narrow"
        cert.validate(g)
        return OBSTRUCTION_NARROW
    return None


# ---------------------------------------------------------------------------
# exact search


def _adjacency_bits(g: FiniteGraph) -> list[int]:
    adj = [0] * g.n
    for u, v in g.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return adj


def _dp_layers(adj: list[int], n: int):
    """Reachability DP over vertex subsets, vectorized per layer.

    Layer L holds the sorted masks of size L reachable by a path from vertex
    0, each with the bitmask of feasible path endpoints.  A mask gains the
    endpoint w exactly when w is outside the mask and adjacent to one of its
    current endpoints, so the whole layer transitions with one vectorized
    pass per vertex, merged by a single sort/reduce.
    """
    layers = [(np.array([1], dtype=np.int32), np.array([1], dtype=np.int32))]
    adj_arr = [np.int32(a & ((1 << 31) - 1)) for a in adj]
    for _ in range(n - 1):
        masks, ends = layers[-1]
        chunks_m: list[np.ndarray] = []
        chunks_b: list[np.ndarray] = []
        for w in range(n):
            wb = np.int32(1 << w)
            sel = ((masks & wb) == 0) & ((ends & adj_arr[w]) != 0)
            cnt = int(sel.sum())
            if cnt == 0:
                continue
            chunks_m.append(masks[sel] | wb)
            chunks_b.append(np.full(cnt, wb, dtype=np.int32))
        if not chunks_m:
            return layers
        allm = np.concatenate(chunks_m)
        allb = np.concatenate(chunks_b)
        order = np.argsort(allm, kind="stable")
        allm, allb = allm[order], allb[order]
        uniq, first = np.unique(allm, return_index=True)
        layers.append((uniq, np.bitwise_or.reduceat(allb, first)))
    return layers


def _compact(chunks_m, chunks_b):
    allm = np.concatenate(chunks_m)
    allb = np.concatenate(chunks_b)
    order = np.argsort(allm, kind="stable")
    allm, allb = allm[order], allb[order]
    uniq, first = np.unique(allm, return_index=True)
    merged = np.bitwise_or.reduceat(allb, first)
    return [uniq], [merged]


def _reconstruct(layers, adj: list[int], n: int, last: int) -> list[int]:
    path = [last]
    mask = (1 << n) - 1
    v = last
    for level in range(n - 1, 0, -1):
        masks, ends = layers[level - 1]
        prev_mask = mask ^ (1 << v)
        idx = int(np.searchsorted(masks, prev_mask))
        assert masks[idx] == prev_mask
        cands = int(ends[idx]) & adj[v]
        assert cands
        u = (cands & -cands).bit_length() - 1
        path.append(u)
        mask = prev_mask
        v = u
    path.reverse()
    assert path[0] == 0
    return path


def _exact_dp(g: FiniteGraph) -> HamiltonVerdict:
    n = g.n
    adj = _adjacency_bits(g)
    layers = _dp_layers(adj, n)
    if len(layers) == n:
        masks, ends = layers[-1]
        full = (1 << n) - 1
        idx = int(np.searchsorted(masks, full))
        if idx < len(masks) and masks[idx] == full:
            closable = int(ends[idx]) & adj[0] & ~1
            if closable:
                last = (closable & -closable).bit_length() - 1
                cycle = _reconstruct(layers, adj, n, last)
                verdict = HamiltonVerdict(STATUS_HAMILTONIAN, tuple(cycle))
                assert validate_cycle(g, verdict.witness)
                return verdict
    return HamiltonVerdict(STATUS_NOT_HAMILTONIAN, obstruction=OBSTRUCTION_EXHAUSTED)


def _backtrack(g: FiniteGraph, budget: int) -> HamiltonVerdict:
    import sys

    n = g.n
    adj_sets = [sorted(s) for s in _neighbor_lists(g)]
    in_path = [False] * n
    path = [0]
    in_path[0] = True
    nodes = 0
    adj_bits = _adjacency_bits(g)
    # recursion tracks the path, one frame per vertex
    sys.setrecursionlimit(max(sys.getrecursionlimit(), 2 * n + 200))

    def rec() -> Optional[bool]:
        # True = cycle found (path holds it), None = budget exhausted
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            return None
        v = path[-1]
        if len(path) == n:
            return True if (adj_bits[0] >> v) & 1 else False
        for w in adj_sets[v]:
            if in_path[w]:
                continue
            path.append(w)
            in_path[w] = True
            res = rec()
            if res:
                return True
            path.pop()
            in_path[w] = False
            if res is None:
                return None
        return False

    res = rec()
    if res is True:
        verdict = HamiltonVerdict(STATUS_HAMILTONIAN, tuple(path))
        assert validate_cycle(g, verdict.witness)
        return verdict
    if res is False:
        return HamiltonVerdict(STATUS_NOT_HAMILTONIAN, obstruction=OBSTRUCTION_EXHAUSTED)
    return HamiltonVerdict(STATUS_UNKNOWN)


def exact_hamilton(g: FiniteGraph, budget: int = DEFAULT_BACKTRACK_BUDGET) -> HamiltonVerdict:
    """Exact decision: bitmask DP up to 24 vertices, budgeted backtracking above.

    The DP answer is unconditional; the backtracking answer is exact unless
    the node budget runs out, in which case the verdict is `unknown`.
    """
    g.require_simple()
    if g.n < 3:
        return HamiltonVerdict(STATUS_NOT_HAMILTONIAN, obstruction=OBSTRUCTION_EXHAUSTED)
    if g.n <= DP_VERTEX_CAP:
        return _exact_dp(g)
    return _backtrack(g, budget)


# ---------------------------------------------------------------------------
# rotation heuristic


def _neighbor_lists(g: FiniteGraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for u, v in g.edges:
        adj[u].add(v)
        adj[v].add(u)
    return adj


def posa_heuristic(
    g: FiniteGraph,
    seed: int = 0,
    max_rotations: Optional[int] = None,
    restarts: int = 20,
) -> Optional[tuple[int, ...]]:
    """Randomized longest-path growth with endpoint rotations.

    Sound but incomplete: any returned cycle is verified spanning; returning
    None proves nothing.  When the working path closes into a non-spanning
    cycle, the cycle is reopened at a vertex with an outside neighbor and
    growth continues.
    """
    n = g.n
    if n < 3:
        return None
    adj = _neighbor_lists(g)
    if max_rotations is None:
        max_rotations = 50 * n
    rng = random.Random(seed)
    for _ in range(restarts):
        start = rng.randrange(n)
        path = [start]
        in_path = [False] * n
        in_path[start] = True
        rotations = 0
        while rotations <= max_rotations:
            tail = path[-1]
            fresh = [w for w in adj[tail] if not in_path[w]]
            if fresh:
                w = rng.choice(fresh)
                path.append(w)
                in_path[w] = True
                continue
            closes = path[0] in adj[tail]
            if closes and len(path) == n:
                assert validate_cycle(g, path)
                return tuple(path)
            if closes:
                # non-spanning cycle: reopen at a vertex that sees outside
                reopened = False
                for idx, c in enumerate(path):
                    out = [w for w in adj[c] if not in_path[w]]
                    if out:
                        path = path[idx + 1:] + path[: idx + 1]
                        w = rng.choice(out)
                        path.append(w)
                        in_path[w] = True
                        reopened = True
                        break
                if reopened:
                    continue
                break  # component exhausted, restart
            # rotation: tail's neighbors are all internal
            pivots = [w for w in adj[tail] if w != path[-2]]
            if not pivots:
                break
            v = rng.choice(pivots)
            i = path.index(v)
            path[i + 1:] = reversed(path[i + 1:])
            rotations += 1
    return None


# ---------------------------------------------------------------------------
# pipeline


def classify(
    g: FiniteGraph,
    budget: int = DEFAULT_BACKTRACK_BUDGET,
    seed: int = 0,
    posa_restarts: int = 20,
    max_rotations: Optional[int] = None,
) -> HamiltonVerdict:
    """cheap obstructions -> rotation heuristic -> exact search -> unknown."""
    g.require_simple()
    if g.n < 3:
        return HamiltonVerdict(STATUS_NOT_HAMILTONIAN, obstruction=OBSTRUCTION_MIN_DEGREE)
    obs = cheap_obstructions(g)
    if obs is not None:
        return HamiltonVerdict(STATUS_NOT_HAMILTONIAN, obstruction=obs)
    cycle = posa_heuristic(g, seed=seed, restarts=posa_restarts, max_rotations=max_rotations)
    if cycle is not None:
        return HamiltonVerdict(STATUS_HAMILTONIAN, cycle)
    if g.n <= DP_VERTEX_CAP:
        return _exact_dp(g)
    if budget > 0:
        return _backtrack(g, budget)
    return HamiltonVerdict(STATUS_UNKNOWN)
