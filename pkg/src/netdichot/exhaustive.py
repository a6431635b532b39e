"""Exhaustive search over all undirected binary graphs on a few nodes.

The best binary approximation of a valued graph under a statistic is found
by scoring every one of the ``2**(n(n-1)/2)`` candidate graphs. Statistics
for the candidates are computed in batches with dense array code
(Floyd-Warshall distances, block-inverse Laplacians) that shares nothing
with :mod:`netdichot.metrics` beyond the definitions, so the search also
serves as a cross-check of the per-graph code.

Rank randomization uses the same seeds as :func:`netdichot.compare.sweep`,
so for a given ``seed`` and ``replicates`` the objective of a candidate is
exactly what the sweep would report for that graph.
"""

from __future__ import annotations

import numpy as np

from .compare import (
    ALL_STATISTICS,
    TIE_RTOL,
    Statistic,
    _rank_seed,
    diameter_discrepancy,
    rank_discrepancy,
    rank_scores,
    value_discrepancy,
)
from .graphs import UndirectedBinaryGraph, ValuedGraph
from .metrics import node_statistics

DEFAULT_MAX_N = 6
_BATCH = 1024


def candidate_adjacency(n: int, codes: np.ndarray) -> np.ndarray:
    """Adjacency stack for the graphs whose upper-triangle bits are ``codes``."""
    iu, ju = np.triu_indices(n, 1)
    bits = (codes[:, None] >> np.arange(iu.size)[None, :]) & 1
    adj = np.zeros((codes.size, n, n))
    adj[:, iu, ju] = bits
    adj[:, ju, iu] = bits
    return adj


def batch_statistics(adj: np.ndarray) -> dict:
    """Node statistics for a stack of binary adjacency matrices ``(B, n, n)``."""
    nb, n, _ = adj.shape
    eye = np.eye(n, dtype=bool)

    d = np.where(adj > 0, 1.0, np.inf)
    d[:, eye] = 0.0
    for k in range(n):
        d = np.minimum(d, d[:, :, k, None] + d[:, None, k, :])
    with np.errstate(divide="ignore"):
        inv_d = 1.0 / d
    inv_d[~np.isfinite(inv_d)] = 0.0
    inv_d[:, eye] = 0.0
    harmonic = inv_d.sum(axis=2) + inv_d.sum(axis=1)

    reach = np.isfinite(d)
    size = reach.sum(axis=2, keepdims=True)
    block = reach / size
    lap = -adj.copy()
    lap[:, np.arange(n), np.arange(n)] = adj.sum(axis=2)
    # within each component L + J/m is invertible and its inverse is L+ + J/m
    x = np.linalg.inv(lap + block) - block
    diag = np.einsum("bii->bi", x)
    r = diag[:, :, None] + diag[:, None, :] - 2 * x
    off = reach & ~eye
    with np.errstate(divide="ignore"):
        gmat = np.where(off, 1.0 / np.where(off, r, 1.0), 0.0)
    ohmic = gmat.sum(axis=2)

    # current on arc (i, j) for a unit injection at a, extraction at b is
    # adj_ij * ((x_ia - x_ja) - (x_ib - x_jb))
    p = adj[:, :, :, None] * (x[:, :, None, :] - x[:, None, :, :])
    flow = np.abs(p[..., :, None] - p[..., None, :]).sum(axis=2)  # (B, i, a, b)
    a_idx = np.arange(n)
    pair_ok = (a_idx[:, None] < a_idx[None, :])[None, None] & reach[:, None, :, :]
    not_end = (a_idx[:, None, None] != a_idx[None, :, None]) & (a_idx[:, None, None] != a_idx[None, None, :])
    betw = 0.5 * (flow * (pair_ok & not_end[None])).sum(axis=(2, 3))

    geo_diam = np.where(off, np.where(np.isfinite(d), d, 0.0), 0.0).max(axis=(1, 2))
    ohm_diam = np.where(off, r, 0.0).max(axis=(1, 2))
    return {
        "harmonic": harmonic,
        "ohmic_closeness": ohmic,
        "ohmic_betweenness": betw,
        "geodesic_diameter": geo_diam,
        "ohmic_diameter": ohm_diam,
    }


def brute_force_all(
    g: ValuedGraph,
    statistics=ALL_STATISTICS,
    seed: int = 0,
    replicates: int = 1,
    max_n: int = DEFAULT_MAX_N,
) -> dict:
    """Best binary graph and its objective for each statistic.

    The objective of a candidate is the mean over replicates of the same
    discrepancy :func:`~netdichot.compare.sweep` uses, with the same rank
    seeds. Ties in the objective go to the candidate with fewer edges, then
    to the smaller bit code.
    """
    n = g.n
    if n > max_n:
        raise ValueError(f"exhaustive search refused: n={n} exceeds max_n={max_n}")
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    statistics = tuple(Statistic(s) for s in statistics)
    val = node_statistics(g)
    npairs = n * (n - 1) // 2
    total = 1 << npairs

    val_ranks = {
        (s, r): rank_scores(getattr(val, s.source), _rank_seed(seed, r, s), TIE_RTOL)
        for s in statistics
        if s.kind == "rank"
        for r in range(replicates)
    }
    best = {s: (np.inf, None) for s in statistics}
    for lo in range(0, total, _BATCH):
        codes = np.arange(lo, min(lo + _BATCH, total), dtype=np.int64)
        adj = candidate_adjacency(n, codes)
        st = batch_statistics(adj)
        edges = adj.sum(axis=(1, 2)) / 2
        for s in statistics:
            if s.kind == "rank":
                obj = np.zeros(codes.size)
                for r in range(replicates):
                    rb = rank_scores(st[s.source], _rank_seed(seed, r, s), TIE_RTOL)
                    obj += rank_discrepancy(rb, val_ranks[s, r])
                obj /= replicates
            elif s.kind == "value":
                obj = value_discrepancy(st[s.source], getattr(val, s.source))
            else:
                db = np.repeat(st[s.source][:, None], replicates, axis=1)
                obj = diameter_discrepancy(db, getattr(val, s.source)).mean(axis=1)
            i = int(np.lexsort((codes, edges, obj))[0])
            cur = best[s]
            cand = (float(obj[i]), int(edges[i]), int(codes[i]))
            if cur[1] is None or cand < (cur[0], cur[1][0], cur[1][1]):
                best[s] = (cand[0], (cand[1], cand[2]))

    out = {}
    for s, (obj, (_, code)) in best.items():
        adj = candidate_adjacency(n, np.array([code], dtype=np.int64))[0]
        out[s.value] = (UndirectedBinaryGraph(adj), obj)
    return out


def brute_force_best_binary(
    g: ValuedGraph,
    statistic,
    max_n: int = DEFAULT_MAX_N,
    seed: int = 0,
    replicates: int = 1,
) -> tuple[UndirectedBinaryGraph, float]:
    """Binary graph on the same nodes that best matches ``g`` under ``statistic``."""
    stat = Statistic(statistic)
    return brute_force_all(g, (stat,), seed=seed, replicates=replicates, max_n=max_n)[stat.value]
