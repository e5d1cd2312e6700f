"""Synaptic weight initialisation strategies.

Three ways to fill a weight vector from a [low, high] range:

* uniform   -- independent uniform draws;
* barabasi_albert -- grow a preferential-attachment graph, map node degrees
  linearly onto the range, keep the best-connected 80% of nodes and cycle
  through that degree-ordered pool;
* erdos_renyi -- same degree-to-weight extraction, but over a graph whose
  edges are independent coin flips, so the degree (and hence weight)
  distribution is homogeneous instead of heavy-tailed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

__all__ = [
    "WeightRange",
    "Graph",
    "UniformRandom",
    "BarabasiAlbert",
    "ErdosRenyi",
    "InitMethod",
    "uniform_weights",
    "barabasi_albert",
    "erdos_renyi",
    "degrees_to_weights",
    "draw_weights",
]


@dataclass(frozen=True)
class WeightRange:
    low: float
    high: float

    def __post_init__(self):
        if not (0 <= self.low < self.high):
            raise ValueError(f"need 0 <= low < high, got [{self.low}, {self.high}]")

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.low + self.high)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph: no self-loops, no duplicate edges."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=np.int64)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class UniformRandom:
    pass


@dataclass(frozen=True)
class BarabasiAlbert:
    n: int = 40
    m: int = 2

    def __post_init__(self):
        if not (1 <= self.m < self.n):
            raise ValueError(f"need 1 <= m < n, got m={self.m}, n={self.n}")


@dataclass(frozen=True)
class ErdosRenyi:
    n: int = 40
    p: float = 76.0 / 780.0  # matches BarabasiAlbert(40, 2)'s expected edge count

    def __post_init__(self):
        if not (0 <= self.p <= 1):
            raise ValueError(f"need 0 <= p <= 1, got p={self.p}")


InitMethod = Union[UniformRandom, BarabasiAlbert, ErdosRenyi]

KEEP_FRACTION = 0.8


def method_name(method: InitMethod) -> str:
    if isinstance(method, UniformRandom):
        return "uniform"
    if isinstance(method, BarabasiAlbert):
        return "barabasi_albert"
    if isinstance(method, ErdosRenyi):
        return "erdos_renyi"
    raise TypeError(f"not an init method: {method!r}")


def uniform_weights(count: int, wrange: WeightRange, seed: int) -> np.ndarray:
    """count independent draws, uniform on [low, high]."""
    if count < 0:
        raise ValueError("count must be non-negative")
    rng = np.random.default_rng(seed)
    return _uniform_from_rng(count, wrange, rng)


def _uniform_from_rng(count: int, wrange: WeightRange, rng) -> np.ndarray:
    return wrange.low + (wrange.high - wrange.low) * rng.random(count)


def barabasi_albert(n: int, m: int, seed: int) -> Graph:
    """Preferential-attachment graph with exactly (n - m) * m edges.

    The seed graph is m isolated nodes; each subsequent node attaches m
    distinct edges to existing nodes picked with probability proportional to
    degree + 1 (the offset makes the degree-zero seed nodes reachable).
    Degrees are frozen while one node picks its targets.
    """
    if not (1 <= m < n):
        raise ValueError(f"need 1 <= m < n, got m={m}, n={n}")
    rng = np.random.default_rng(seed)
    return _ba_from_rng(n, m, rng)


def _ba_from_rng(n: int, m: int, rng) -> Graph:
    degree = np.zeros(n, dtype=np.int64)
    edges: list[tuple[int, int]] = []
    for v in range(m, n):
        kernel = (degree[:v] + 1).astype(np.float64)
        targets: list[int] = []
        for _ in range(m):
            p = kernel / kernel.sum()
            t = int(rng.choice(v, p=p))
            targets.append(t)
            kernel[t] = 0.0  # distinct targets for this node
        for t in targets:
            edges.append((t, v))
            degree[t] += 1
            degree[v] += 1
    return Graph(n, tuple(edges))


def erdos_renyi(n: int, p: float, seed: int) -> Graph:
    """Each of the n(n-1)/2 unordered pairs is an edge with probability p."""
    if not (0 <= p <= 1):
        raise ValueError(f"need 0 <= p <= 1, got p={p}")
    rng = np.random.default_rng(seed)
    return _er_from_rng(n, p, rng)


def _er_from_rng(n: int, p: float, rng) -> Graph:
    iu, ju = np.triu_indices(n, k=1)
    mask = rng.random(iu.size) < p
    edges = tuple((int(u), int(v)) for u, v in zip(iu[mask], ju[mask]))
    return Graph(n, edges)


def degrees_to_weights(
    graph: Graph, wrange: WeightRange, keep_fraction: float = KEEP_FRACTION
) -> np.ndarray:
    """Degree-ordered weight pool.

    Node degrees map linearly onto [low, high] (a degree-regular graph maps
    everything to the midpoint).  Nodes sort by degree descending, node id
    breaking ties, and the first ceil(keep_fraction * n) weights survive.
    """
    if graph.n < 2:
        raise ValueError("graph must have at least 2 nodes")
    if not (0 < keep_fraction <= 1):
        raise ValueError("keep_fraction must be in (0, 1]")
    deg = graph.degrees()
    d_min, d_max = int(deg.min()), int(deg.max())
    if d_max == d_min:
        weights = np.full(graph.n, wrange.midpoint)
    else:
        weights = wrange.low + (deg - d_min) / (d_max - d_min) * (
            wrange.high - wrange.low
        )
    order = np.lexsort((np.arange(graph.n), -deg))
    keep = math.ceil(keep_fraction * graph.n)
    return weights[order][:keep]


def draw_weights(
    method: InitMethod, count: int, wrange: WeightRange, seed: int
) -> np.ndarray:
    """Weight vector of the requested length for one initialisation method.

    Uniform delegates to uniform_weights with the same seed.  The graph
    methods build their graph, extract the degree-ordered pool, and assign
    pool entries to synapses in pool order, cycling when the pool is shorter
    than the synapse count; the cycle offset is drawn from the same stream.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if isinstance(method, UniformRandom):
        return uniform_weights(count, wrange, seed)
    rng = np.random.default_rng(seed)
    if isinstance(method, BarabasiAlbert):
        graph = _ba_from_rng(method.n, method.m, rng)
    elif isinstance(method, ErdosRenyi):
        graph = _er_from_rng(method.n, method.p, rng)
    else:
        raise TypeError(f"not an init method: {method!r}")
    pool = degrees_to_weights(graph, wrange)
    if pool.size == 0:
        raise ValueError("degree pool is empty; graph too small")
    offset = int(rng.integers(pool.size))
    if count == 0:
        return np.empty(0, dtype=np.float64)
    idx = (offset + np.arange(count)) % pool.size
    return pool[idx]
