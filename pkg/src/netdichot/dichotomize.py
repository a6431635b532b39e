"""Binary versions of a valued graph.

Two routes are provided: a single global threshold, and censoring each
node's outbound ties to its ``k`` strongest (the "name up to k friends"
construction) followed by OR-symmetrization.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .graphs import DirectedBinaryGraph, UndirectedBinaryGraph, ValuedGraph, symmetrize_or
from .seeding import rng_for


class Method(str, Enum):
    THRESHOLD = "threshold"
    CENSOR = "censor"


def threshold_graph(g: ValuedGraph, t: float) -> UndirectedBinaryGraph:
    """Edge wherever the tie value is strictly greater than ``t``."""
    if t < 0:
        raise ValueError(f"threshold must be nonnegative, got {t}")
    return UndirectedBinaryGraph((g.weights > t).astype(float))


def outbound_order(g: ValuedGraph, seed: int) -> np.ndarray:
    """Per-row preference rank of every target (0 = strongest tie).

    Equal values are ordered by a seeded random key, drawn once for the
    whole matrix so that the order is the same for every ``k``.
    """
    w = g.weights
    keys = rng_for(seed, 0).random(w.shape)
    order = np.lexsort((keys, -w), axis=-1)
    rank = np.empty_like(order)
    rows = np.arange(w.shape[0])[:, None]
    rank[rows, order] = np.arange(w.shape[1])[None, :]
    return rank


def censor_topk(g: ValuedGraph, k: int, seed: int = 0) -> DirectedBinaryGraph:
    """Arcs from each node to its ``k`` largest positive ties.

    Zero ties are never selected, so a node with fewer than ``k`` positive
    ties keeps all of them and no more.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    rank = outbound_order(g, seed)
    arcs = (rank < k) & (g.weights > 0)
    return DirectedBinaryGraph(arcs.astype(float))


def censor_then_symmetrize(g: ValuedGraph, k: int, seed: int = 0) -> UndirectedBinaryGraph:
    return symmetrize_or(censor_topk(g, k, seed))


def dichotomize(g: ValuedGraph, method, param, seed: int = 0) -> UndirectedBinaryGraph:
    method = Method(method)
    if method is Method.THRESHOLD:
        return threshold_graph(g, float(param))
    return censor_then_symmetrize(g, int(param), seed)


def ladder(kind, g: ValuedGraph, steps: int, include_floor: bool = False) -> list:
    """Parameter ladder for a sweep.

    ``censor`` gives ``k = 1 .. min(steps, n - 1)``. ``threshold`` gives
    ``steps`` cutpoints at the quantiles ``i / (steps + 1)``, ``i = 1..steps``,
    of the positive tie values (linear interpolation), with repeated
    cutpoints dropped. With ``include_floor`` the threshold ladder is
    prefixed with 0, the cut that keeps every positive tie; without it a
    graph whose positive ties all share one value can never be recovered.
    """
    if steps < 1:
        raise ValueError(f"steps must be at least 1, got {steps}")
    method = Method(kind)
    if method is Method.CENSOR:
        return list(range(1, min(steps, g.n - 1) + 1))
    pos = g.weights[np.triu_indices(g.n, 1)]
    pos = pos[pos > 0]
    if pos.size == 0:
        raise ValueError("threshold ladder needs at least one positive tie")
    qs = np.arange(1, steps + 1) / (steps + 1)
    cuts = [float(c) for c in dict.fromkeys(np.quantile(pos, qs).tolist())]
    return ([0.0] if include_floor else []) + cuts
