"""Two-stage random graph generation from a graphon, with replayable seeding.

Stage one draws n i.i.d. latent types; stage two flips one coin per vertex
pair, row-major over i < j, with success probability equal to the kernel at
the two types.  Each (seed, trial_index) pair keys its own pair of
counter-based Philox streams (one for types, one for edges), so trials can
run in any order, in parallel, and still replay bit-exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import numpy as np

from .errors import FormatError
from .fracmatch import FiniteGraph
from .graphon import Graphon, PowerFamilyGraphon, StepGraphon

_TYPE_CHANNEL = 0
_EDGE_CHANNEL = 1


def _stream(seed: int, trial_index: int, channel: int) -> np.random.Generator:
    if not 0 <= trial_index < 1 << 62:
        raise FormatError("trial_index out of range", "trial_index")
    key = np.array(
        [np.uint64(seed & (1 << 64) - 1), np.uint64((trial_index << 1) | channel)],
        dtype=np.uint64,
    )
    return np.random.Generator(np.random.Philox(key=key))


@dataclass(frozen=True)
class VertexType:
    """Latent type of one vertex: block index plus offset within the block.

    For the analytic family there are no blocks; `block` is None and `offset`
    is the position in [0, 1).
    """

    block: Optional[int]
    offset: float


@dataclass(frozen=True)
class SampledGraph:
    """One sampled graph together with its latent types and replay key."""

    model: Graphon
    n: int
    edges: np.ndarray  # (m, 2) int32, u < v
    type_block: Optional[np.ndarray]  # int64 per vertex, None for power family
    type_offset: np.ndarray  # float64 per vertex
    seed: int
    trial_index: int

    @property
    def types(self) -> list[VertexType]:
        if self.type_block is None:
            return [VertexType(None, float(o)) for o in self.type_offset]
        return [
            VertexType(int(b), float(o))
            for b, o in zip(self.type_block, self.type_offset)
        ]

    def degrees(self) -> np.ndarray:
        if len(self.edges) == 0:
            return np.zeros(self.n, dtype=np.int64)
        return np.bincount(self.edges.ravel(), minlength=self.n)

    def adjacency_sets(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[int(u)].add(int(v))
            adj[int(v)].add(int(u))
        return adj

    def to_finite_graph(self) -> FiniteGraph:
        return FiniteGraph.build(self.n, [(int(u), int(v)) for u, v in self.edges])

    def sidecar_dict(self) -> dict:
        d = {
            "seed": self.seed,
            "trial_index": self.trial_index,
            "n": self.n,
            "model": self.model.to_dict(),
            "type_offset": [float(o) for o in self.type_offset],
        }
        if self.type_block is not None:
            d["type_block"] = [int(b) for b in self.type_block]
        return d


def _cumulative_masses(g: StepGraphon) -> np.ndarray:
    cum = np.cumsum(np.array([float(m) for m in g.block_masses], dtype=np.float64))
    cum[-1] = 1.0  # guard against float drift; u lives in [0, 1)
    return cum


def _sample_type_arrays(
    g: Graphon, n: int, seed: int, trial_index: int
) -> tuple[Optional[np.ndarray], np.ndarray]:
    if n < 1:
        raise FormatError("n must be at least 1", "n")
    gen = _stream(seed, trial_index, _TYPE_CHANNEL)
    u = gen.random(n)
    if isinstance(g, PowerFamilyGraphon):
        return None, u
    cum = _cumulative_masses(g)
    block = np.searchsorted(cum, u, side="right").astype(np.int64)
    low = np.concatenate([[0.0], cum[:-1]])
    width = cum[block] - low[block]
    offset = np.where(width > 0, (u - low[block]) / np.where(width > 0, width, 1.0), 0.0)
    return block, offset


def sample_types(g: Graphon, n: int, seed: int, trial_index: int = 0) -> list[VertexType]:
    """Stage one alone: n i.i.d. latent types, deterministic in the key."""
    block, offset = _sample_type_arrays(g, n, seed, trial_index)
    if block is None:
        return [VertexType(None, float(o)) for o in offset]
    return [VertexType(int(b), float(o)) for b, o in zip(block, offset)]


def _edge_probabilities(
    g: Graphon, block: Optional[np.ndarray], offset: np.ndarray,
    iu: np.ndarray, ju: np.ndarray,
) -> np.ndarray:
    if isinstance(g, StepGraphon):
        dens = np.array([[float(d) for d in row] for row in g.densities])
        return dens[block[iu], block[ju]]
    p = (offset[iu] * offset[ju]) ** float(g.beta)
    return np.clip(p, 0.0, 1.0)


def sample_graph(g: Graphon, n: int, seed: int, trial_index: int = 0) -> SampledGraph:
    """Both stages; consumes exactly C(n, 2) edge coins in row-major i < j order."""
    block, offset = _sample_type_arrays(g, n, seed, trial_index)
    gen = _stream(seed, trial_index, _EDGE_CHANNEL)
    iu, ju = np.triu_indices(n, k=1)
    coins = gen.random(len(iu))
    p = _edge_probabilities(g, block, offset, iu, ju)
    sel = coins < p
    edges = np.column_stack([iu[sel], ju[sel]]).astype(np.int32)
    return SampledGraph(g, n, edges, block, offset, seed, trial_index)


def edge_stream_offset(n: int, i: int, j: int) -> int:
    """Position of pair {i, j} (i < j) in the row-major coin stream."""
    if not 0 <= i < j < n:
        raise FormatError("need 0 <= i < j < n", "pair")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)

def edge_coin(seed: int, trial_index: int, offset: int) -> float:
    """The offset-th edge coin of a trial, regenerated from the counter alone.

    Philox emits four 64-bit words per counter tick, so advancing the raw
    counter by offset // 4 and discarding offset % 4 draws lands exactly on
    the requested position; this is what makes per-pair accounting testable.
    """
    key = np.array(
        [np.uint64(seed & (1 << 64) - 1), np.uint64((trial_index << 1) | _EDGE_CHANNEL)],
        dtype=np.uint64,
    )
    bg = np.random.Philox(key=key)
    bg.advance(offset // 4)
    gen = np.random.Generator(bg)
    return float(gen.random(offset % 4 + 1)[-1])


def degree_concentration_report(graph: SampledGraph) -> float:
    """max over vertices of |deg(i)/n - kernel degree at the vertex's type|."""
    n = graph.n
    deg = graph.degrees() / n
    g = graph.model
    if isinstance(g, StepGraphon):
        block_deg = np.array([float(d) for d in g.block_degrees()])
        expected = block_deg[graph.type_block]
    else:
        expected = graph.type_offset ** float(g.beta) / (float(g.beta) + 1.0)
    return float(np.max(np.abs(deg - expected)))


# ---------------------------------------------------------------------------
# file interface: edge-list text plus a structured sidecar


def write_graph(graph: SampledGraph, path: str) -> str:
    """Write edge-list text to `path` and the sidecar to `path + '.meta.json'`."""
    import json

    with open(path, "w", encoding="utf-8") as fh:
        fh.write(graph.to_finite_graph().to_edge_list_text())
    meta = path + ".meta.json"
    with open(meta, "w", encoding="utf-8") as fh:
        json.dump(graph.sidecar_dict(), fh, indent=1)
    return meta


def load_graph(path: str) -> FiniteGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return FiniteGraph.from_edge_list_text(fh.read())
