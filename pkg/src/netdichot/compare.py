"""Agreement between a valued graph and its binary versions.

Node statistics of a binary graph are compared with those of the valued
graph either by rank (a discrepancy that weights the top of the ranking
most heavily) or by value after fitting a single scale factor that converts
binary units into valued units. :func:`sweep` runs the comparison over a
ladder of thresholds or outdegree caps and picks the best rung for each
statistic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Sequence, Union

import numpy as np

from .dichotomize import Method, dichotomize
from .graphs import ValuedGraph, graph_stats
from .metrics import NodeStatistics, node_statistics
from .seeding import derive_seed, rng_for

# scores closer than this (relative to the largest magnitude) count as tied
TIE_RTOL = 1e-9


class Statistic(str, Enum):
    GEO_RANK = "GeoRank"
    OHM_RANK = "OhmRank"
    OHM_BETW_RANK = "OhmBetwRank"
    GEO_VALUE = "GeoValue"
    OHM_VALUE = "OhmValue"
    GEO_DIAM = "GeoDiam"
    OHM_DIAM = "OhmDiam"

    @property
    def kind(self) -> str:
        """``rank``, ``value`` or ``diam``."""
        for suffix in ("Rank", "Value", "Diam"):
            if self.value.endswith(suffix):
                return suffix.lower()
        raise AssertionError(self.value)

    @property
    def source(self) -> str:
        """Field of :class:`~netdichot.metrics.NodeStatistics` this statistic reads."""
        return {
            Statistic.GEO_RANK: "harmonic",
            Statistic.OHM_RANK: "ohmic_closeness",
            Statistic.OHM_BETW_RANK: "ohmic_betweenness",
            Statistic.GEO_VALUE: "harmonic",
            Statistic.OHM_VALUE: "ohmic_closeness",
            Statistic.GEO_DIAM: "geodesic_diameter",
            Statistic.OHM_DIAM: "ohmic_diameter",
        }[self]


ALL_STATISTICS = tuple(Statistic)


def rank_scores(scores, seed: int, rtol: float = 0.0) -> np.ndarray:
    """Ranks ``1..n`` by descending score, ties broken at random.

    Works along the last axis, so a stack of score vectors can be ranked at
    once; every row uses the same seeded tie-break keys. Scores whose gap to
    the next lower score is at most ``rtol`` times the row's largest
    magnitude fall into the same tied block.
    """
    s = np.asarray(scores, dtype=float)
    if np.isnan(s).any():
        raise ValueError("cannot rank NaN scores")
    n = s.shape[-1]
    order = np.argsort(-s, axis=-1, kind="stable")
    ss = np.take_along_axis(s, order, axis=-1)
    scale = np.abs(s).max(axis=-1, keepdims=True) if n else 0.0
    breaks = (ss[..., :-1] - ss[..., 1:]) > rtol * scale
    block_sorted = np.concatenate(
        [np.zeros(s.shape[:-1] + (1,), dtype=np.int64), np.cumsum(breaks, axis=-1)], axis=-1
    )
    block = np.empty_like(block_sorted)
    np.put_along_axis(block, order, block_sorted, axis=-1)
    keys = np.broadcast_to(rng_for(seed, 0).random(n), s.shape)
    final = np.lexsort((keys, block), axis=-1)
    ranks = np.empty(s.shape, dtype=np.int64)
    np.put_along_axis(ranks, final, np.broadcast_to(np.arange(1, n + 1), s.shape), axis=-1)
    return ranks


def rank_discrepancy(ra, rb) -> Union[float, np.ndarray]:
    """``mean_i (ra_i - rb_i)**2 / sqrt(ra_i * rb_i)`` along the last axis."""
    ra = np.asarray(ra, dtype=float)
    rb = np.asarray(rb, dtype=float)
    if ra.shape[-1] != rb.shape[-1]:
        raise ValueError(f"rankings have different lengths {ra.shape[-1]} and {rb.shape[-1]}")
    d = ((ra - rb) ** 2 / np.sqrt(ra * rb)).mean(axis=-1)
    return float(d) if np.ndim(d) == 0 else d


def value_discrepancy(stat_bin, stat_val) -> Union[float, np.ndarray]:
    """Mean squared residual after the best scalar fit of binary onto valued.

    The scale ``c = <bin, val> / <bin, bin>`` (0 when ``bin`` is all zero)
    converts binary-graph units into valued-graph units. Broadcasts along
    leading axes.
    """
    b = np.asarray(stat_bin, dtype=float)
    v = np.asarray(stat_val, dtype=float)
    if b.shape[-1] != v.shape[-1]:
        raise ValueError(f"statistics have different lengths {b.shape[-1]} and {v.shape[-1]}")
    if not np.any(v):
        raise ValueError("valued-graph statistic is identically zero")
    # rescale by a power of two (exact) so <b, b> cannot underflow
    _, exponent = np.frexp(np.abs(b).max(axis=-1, keepdims=True))
    b = np.ldexp(b, -exponent)
    bb = (b * b).sum(axis=-1)
    bv = (b * v).sum(axis=-1)
    c = np.divide(bv, bb, out=np.zeros_like(bb, dtype=float), where=bb > 0)
    res = ((np.expand_dims(c, -1) * b - v) ** 2).mean(axis=-1)
    return float(res) if np.ndim(res) == 0 else res


def diameter_discrepancy(diam_bin, diam_val) -> np.ndarray:
    """Per-replicate squared deviation of diameters with one shared scale.

    The scale is fitted jointly over the replicate axis (the last axis),
    since a per-replicate fit of a single number always succeeds exactly.
    """
    b = np.asarray(diam_bin, dtype=float)
    v = np.broadcast_to(np.asarray(diam_val, dtype=float), b.shape)
    bb = (b * b).sum(axis=-1)
    c = np.divide((b * v).sum(axis=-1), bb, out=np.zeros_like(bb, dtype=float), where=bb > 0)
    return (np.expand_dims(c, -1) * b - v) ** 2


def _rank_seed(seed: int, replicate: int, statistic: Statistic) -> int:
    # keyed on the statistic's position in ALL_STATISTICS so that sweeping a
    # subset of statistics reproduces the same assortment. Valued and binary
    # rankings share the seed, so identical scores give identical ranks.
    return derive_seed(seed, 2, replicate, ALL_STATISTICS.index(statistic))


def _tiebreak_seed(seed: int, replicate: int) -> int:
    return derive_seed(seed, 1, replicate)


class Record(NamedTuple):
    method: str
    parameter: float
    replicate: int
    statistic: str
    discrepancy: float


class Cell(NamedTuple):
    parameter: float
    replicate: int
    mean_degree: float
    density: float


class Optimum(NamedTuple):
    statistic: str
    method: str
    parameter: float
    discrepancy: float
    mean_degree: float


@dataclass
class SweepResult:
    method: Method
    params: list
    replicates: int
    statistics: tuple
    seed: int
    records: list = field(default_factory=list)
    cells: list = field(default_factory=list)
    optima: dict = field(default_factory=dict)

    def curve(self, statistic) -> np.ndarray:
        """Mean discrepancy across replicates at each ladder rung."""
        stat = Statistic(statistic).value
        table = np.zeros((len(self.params), self.replicates))
        pindex = {p: i for i, p in enumerate(self.params)}
        for rec in self.records:
            if rec.statistic == stat:
                table[pindex[rec.parameter], rec.replicate] = rec.discrepancy
        return table.mean(axis=1)


def _sparsest_first(method: Method, params: Sequence) -> list[int]:
    # rung indices ordered from the sparsest binary graph to the densest
    idx = sorted(range(len(params)), key=lambda i: params[i])
    return idx[::-1] if method is Method.THRESHOLD else idx


def _select_optima(result: SweepResult) -> None:
    degree = np.zeros((len(result.params), result.replicates))
    pindex = {p: i for i, p in enumerate(result.params)}
    for cell in result.cells:
        degree[pindex[cell.parameter], cell.replicate] = cell.mean_degree
    order = _sparsest_first(result.method, result.params)
    for stat in result.statistics:
        curve = result.curve(stat)
        best = min(order, key=lambda i: (curve[i], order.index(i)))
        result.optima[stat.value] = Optimum(
            stat.value, result.method.value, result.params[best], float(curve[best]), float(degree[best].mean())
        )


def sweep_graphs(
    graphs: Sequence[ValuedGraph],
    method,
    params: Sequence,
    statistics=ALL_STATISTICS,
    seed: int = 0,
) -> SweepResult:
    """Sweep where replicate ``r`` compares against ``graphs[r]``.

    Passing the same graph repeatedly re-randomizes only tie breaking; passing
    independent draws from a generator adds generative variation.
    """
    method = Method(method)
    params = list(dict.fromkeys(params))
    if not params:
        raise ValueError("empty parameter ladder")
    if not graphs:
        raise ValueError("need at least one replicate")
    statistics = tuple(Statistic(s) for s in statistics)
    reps = len(graphs)
    result = SweepResult(method, params, reps, statistics, seed)

    cache: dict[int, NodeStatistics] = {}
    val_stats = []
    for g in graphs:
        if id(g) not in cache:
            cache[id(g)] = node_statistics(g)
        val_stats.append(cache[id(g)])
    val_ranks = {
        (r, s): rank_scores(getattr(val_stats[r], s.source), _rank_seed(seed, r, s), TIE_RTOL)
        for r in range(reps)
        for s in statistics
        if s.kind == "rank"
    }

    diam = {s: np.zeros((len(params), reps)) for s in statistics if s.kind == "diam"}
    for pi, p in enumerate(params):
        for r, g in enumerate(graphs):
            bg = dichotomize(g, method, p, _tiebreak_seed(seed, r))
            st = graph_stats(bg)
            result.cells.append(Cell(p, r, st.mean_degree, st.density))
            bstats = node_statistics(bg)
            for s in statistics:
                if s.kind == "rank":
                    rb = rank_scores(getattr(bstats, s.source), _rank_seed(seed, r, s), TIE_RTOL)
                    disc = rank_discrepancy(rb, val_ranks[r, s])
                elif s.kind == "value":
                    disc = value_discrepancy(getattr(bstats, s.source), getattr(val_stats[r], s.source))
                else:
                    diam[s][pi, r] = getattr(bstats, s.source)
                    continue
                result.records.append(Record(method.value, p, r, s.value, float(disc)))
        for s, table in diam.items():
            dv = np.array([getattr(val_stats[r], s.source) for r in range(reps)])
            for r, disc in enumerate(diameter_discrepancy(table[pi], dv)):
                result.records.append(Record(method.value, p, r, s.value, float(disc)))
    _select_optima(result)
    return result


def sweep(
    g: ValuedGraph,
    method,
    params: Sequence,
    replicates: int = 10,
    statistics=ALL_STATISTICS,
    seed: int = 0,
) -> SweepResult:
    """Dichotomize ``g`` at every rung and compare each statistic.

    Replicates differ only in the seeds used for censoring tie-breaks and
    for random rank assortment. Rank statistics use :func:`rank_discrepancy`,
    value statistics :func:`value_discrepancy` and diameters
    :func:`diameter_discrepancy`. The optimum for each statistic minimizes
    the mean over replicates; exact ties go to the sparsest rung.
    """
    if replicates < 1:
        raise ValueError("replicates must be at least 1")
    return sweep_graphs([g] * replicates, method, params, statistics, seed)
