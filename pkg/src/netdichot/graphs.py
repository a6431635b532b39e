"""Dense graph containers shared by every other module.

Three kinds of graph are used throughout:

``ValuedGraph``
    symmetric, nonnegative tie strengths with an empty diagonal.
``DirectedBinaryGraph``
    0/1 arcs, as produced by censoring each node's outbound ties.
``UndirectedBinaryGraph``
    symmetric 0/1 edges, as produced by thresholding or by symmetrizing a
    censored graph.

All three store a dense ``n x n`` float matrix that is made read-only on
construction. A zero entry always means "no tie".
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

import numpy as np


class GraphValidationError(ValueError):
    """Raised when a matrix or edge list violates a graph invariant."""


def _frozen(matrix) -> np.ndarray:
    arr = np.array(matrix, dtype=float, copy=True)
    arr.setflags(write=False)
    return arr


def _check_square(arr: np.ndarray) -> int:
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise GraphValidationError(f"expected a square matrix, got shape {arr.shape}")
    return arr.shape[0]


@dataclass(frozen=True, eq=False)
class ValuedGraph:
    """Undirected graph with nonnegative real tie values."""

    weights: np.ndarray

    def __post_init__(self):
        w = _frozen(self.weights)
        _check_square(w)
        if not np.all(np.isfinite(w)):
            raise GraphValidationError("tie values must be finite")
        if np.any(w < 0):
            i, j = np.argwhere(w < 0)[0]
            raise GraphValidationError(f"negative tie value {w[i, j]} at ({i}, {j})")
        if np.any(np.diag(w) != 0):
            raise GraphValidationError("self-loops are not allowed")
        if not np.array_equal(w, w.T):
            raise GraphValidationError("valued graph must be symmetric")
        object.__setattr__(self, "weights", w)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    @property
    def support(self) -> np.ndarray:
        """Boolean adjacency of the positive ties."""
        return self.weights > 0

    def upper_entries(self) -> list[tuple[int, int, float]]:
        """Nonzero ``(i, j, w)`` with ``i < j``, sorted by ``(i, j)``."""
        iu, ju = np.nonzero(np.triu(self.weights, 1))
        return [(int(i), int(j), float(self.weights[i, j])) for i, j in zip(iu, ju)]


@dataclass(frozen=True, eq=False)
class DirectedBinaryGraph:
    """0/1 arcs; ``arcs[i, j] == 1`` is an arc from ``i`` to ``j``."""

    arcs: np.ndarray

    def __post_init__(self):
        a = _frozen(self.arcs)
        _check_square(a)
        if not np.all((a == 0) | (a == 1)):
            raise GraphValidationError("arc matrix must be 0/1")
        if np.any(np.diag(a) != 0):
            raise GraphValidationError("self-loops are not allowed")
        object.__setattr__(self, "arcs", a)

    @property
    def n(self) -> int:
        return self.arcs.shape[0]

    @property
    def weights(self) -> np.ndarray:
        return self.arcs


@dataclass(frozen=True, eq=False)
class UndirectedBinaryGraph:
    """Symmetric 0/1 edges."""

    edges: np.ndarray

    def __post_init__(self):
        e = _frozen(self.edges)
        _check_square(e)
        if not np.all((e == 0) | (e == 1)):
            raise GraphValidationError("edge matrix must be 0/1")
        if np.any(np.diag(e) != 0):
            raise GraphValidationError("self-loops are not allowed")
        if not np.array_equal(e, e.T):
            raise GraphValidationError("undirected edge matrix must be symmetric")
        object.__setattr__(self, "edges", e)

    @property
    def n(self) -> int:
        return self.edges.shape[0]

    @property
    def weights(self) -> np.ndarray:
        return self.edges


AnyGraph = Union[ValuedGraph, DirectedBinaryGraph, UndirectedBinaryGraph]
UndirectedGraph = Union[ValuedGraph, UndirectedBinaryGraph]


def build_valued_graph(n: int, entries: Iterable[tuple[int, int, float]]) -> ValuedGraph:
    """Build a valued graph from ``(i, j, w)`` triples.

    Each triple sets both ``(i, j)`` and ``(j, i)``. Pairs not listed are 0.
    Listing the same unordered pair twice is an error.
    """
    if n < 1:
        raise GraphValidationError(f"node count must be positive, got {n}")
    w = np.zeros((n, n))
    seen = set()
    for i, j, val in entries:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise GraphValidationError(f"node index out of range in ({i}, {j}) for n={n}")
        if i == j:
            raise GraphValidationError(f"self-loop at node {i}")
        if val < 0:
            raise GraphValidationError(f"negative tie value {val} at ({i}, {j})")
        key = (min(i, j), max(i, j))
        if key in seen:
            raise GraphValidationError(f"duplicate pair {key}")
        seen.add(key)
        w[i, j] = w[j, i] = val
    return ValuedGraph(w)


def symmetrize_or(g: DirectedBinaryGraph) -> UndirectedBinaryGraph:
    """Undirected edge wherever either (or both) arcs are present."""
    return UndirectedBinaryGraph(np.maximum(g.arcs, g.arcs.T))


def is_directed(g: AnyGraph) -> bool:
    return isinstance(g, DirectedBinaryGraph)


class GraphStats(NamedTuple):
    density: float
    mean_degree: float
    isolates: int


def graph_stats(g: AnyGraph) -> GraphStats:
    """Density, mean (out)degree and isolate count.

    Density is nonzero unordered pairs over ``n(n-1)/2`` for undirected
    graphs and arcs over ``n(n-1)`` for directed ones. A node is isolated
    when it has no tie in either direction.
    """
    n = g.n
    if n < 2:
        raise GraphValidationError("graph statistics need at least two nodes")
    nz = g.weights > 0
    if is_directed(g):
        arcs = int(nz.sum())
        density = arcs / (n * (n - 1))
        mean_degree = arcs / n
    else:
        pairs = int(np.triu(nz, 1).sum())
        density = pairs / (n * (n - 1) / 2)
        mean_degree = 2 * pairs / n
    touched = nz.any(axis=0) | nz.any(axis=1)
    return GraphStats(density, mean_degree, int(n - touched.sum()))
