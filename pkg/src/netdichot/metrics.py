"""Geodesic and Ohmic node statistics.

Binary graphs use unit edge lengths and unit conductances. Valued graphs
use conductance ``w`` and geodesic length ``1 / w``, so a strong tie is a
short path and a good conductor.

Distances are returned as dense arrays with ``inf`` marking unreachable
pairs; conductances are dense arrays with 0 across components.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
import scipy.linalg
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from .graphs import AnyGraph, is_directed

# cap on the size of the edge x node current block held in memory at once
_CHUNK_ENTRIES = 1 << 22


class ConductanceError(ArithmeticError):
    """A component Laplacian could not be inverted reliably."""


class Diameter(NamedTuple):
    value: float
    excluded_unreachable: bool


def geodesic_distances(g: AnyGraph) -> np.ndarray:
    """All-pairs shortest path lengths, ``inf`` where unreachable."""
    w = g.weights
    lengths = np.zeros_like(w)
    pos = w > 0
    lengths[pos] = 1.0 / w[pos]
    return shortest_path(csr_matrix(lengths), method="D", directed=is_directed(g))


def harmonic_closeness(d: np.ndarray) -> np.ndarray:
    """``sum_j 1/d(i,j) + 1/d(j,i)``; unreachable pairs contribute 0."""
    with np.errstate(divide="ignore"):
        inv = 1.0 / d
    inv[~np.isfinite(inv)] = 0.0
    np.fill_diagonal(inv, 0.0)
    return inv.sum(axis=1) + inv.sum(axis=0)


def components(g: AnyGraph) -> list[np.ndarray]:
    """Node index arrays of the (weakly) connected components."""
    _, labels = connected_components(csr_matrix(g.weights > 0), directed=False)
    return [np.flatnonzero(labels == c) for c in np.unique(labels)]


def _grounded_inverse(wc: np.ndarray) -> np.ndarray:
    """Inverse of a connected component's Laplacian grounded at one node.

    Returns an ``m x m`` matrix with the grounded row and column set to 0.
    Potential differences, and hence resistances and currents, computed
    from it agree with those from the Moore-Penrose pseudoinverse; grounding
    avoids the cancellation the pseudoinverse suffers when some ties are
    many orders of magnitude weaker than others.
    """
    m = wc.shape[0]
    out = np.zeros((m, m))
    if m == 1:
        return out
    deg = wc.sum(axis=1)
    ground = int(np.argmax(deg))
    keep = np.delete(np.arange(m), ground)
    lap = np.diag(deg) - wc
    lg = lap[np.ix_(keep, keep)]
    try:
        cf = scipy.linalg.cho_factor(lg, lower=True, check_finite=True)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConductanceError(
            f"grounded Laplacian of a {m}-node component is not positive definite "
            f"(min degree {deg.min():.3g}, max degree {deg.max():.3g})"
        ) from exc
    if np.diag(cf[0]).min() <= 0:
        raise ConductanceError(f"zero pivot in grounded Laplacian of a {m}-node component")
    inv = scipy.linalg.cho_solve(cf, np.eye(m - 1))
    if not np.all(np.isfinite(inv)):
        raise ConductanceError("non-finite entries in grounded Laplacian inverse")
    inv = 0.5 * (inv + inv.T)
    out[np.ix_(keep, keep)] = inv
    return out


def _component_inverses(g: AnyGraph):
    w = g.weights
    if is_directed(g):
        w = np.maximum(w, w.T)
    for idx in components(g):
        if idx.size > 1:
            wc = w[np.ix_(idx, idx)]
            yield idx, wc, _grounded_inverse(wc)


def _resistance_from_inverse(x: np.ndarray) -> np.ndarray:
    d = np.diag(x)
    r = d[:, None] + d[None, :] - 2 * x
    np.fill_diagonal(r, 0.0)
    return np.maximum(r, 0.0)


def effective_resistance(g: AnyGraph) -> np.ndarray:
    """Effective resistance matrix, ``inf`` across components."""
    n = g.n
    r = np.full((n, n), np.inf)
    np.fill_diagonal(r, 0.0)
    for idx, _, x in _component_inverses(g):
        r[np.ix_(idx, idx)] = _resistance_from_inverse(x)
    return r


def conductance_from_resistance(r: np.ndarray) -> np.ndarray:
    with np.errstate(divide="ignore"):
        gmat = 1.0 / r
    gmat[~np.isfinite(gmat)] = 0.0
    np.fill_diagonal(gmat, 0.0)
    return gmat


def effective_conductance(g: AnyGraph) -> np.ndarray:
    """Equivalent conductance ``1 / R_ij``; 0 across components and on the diagonal."""
    return conductance_from_resistance(effective_resistance(g))


def laplacian_pinv(g: AnyGraph) -> np.ndarray:
    """Moore-Penrose pseudoinverse of the weighted Laplacian, block by component."""
    n = g.n
    out = np.zeros((n, n))
    for idx, _, x in _component_inverses(g):
        m = idx.size
        proj = np.eye(m) - 1.0 / m
        out[np.ix_(idx, idx)] = proj @ x @ proj
    return out


def laplacian(g: AnyGraph) -> np.ndarray:
    w = g.weights
    if is_directed(g):
        w = np.maximum(w, w.T)
    return np.diag(w.sum(axis=1)) - w


def ohmic_closeness(gmat: np.ndarray) -> np.ndarray:
    """Row sums of the equivalent-conductance matrix."""
    return np.asarray(gmat).sum(axis=1)


def _pairwise_abs_sum(f: np.ndarray) -> np.ndarray:
    """``sum_{a<b} |f[a] - f[b]|`` for every row of ``f``."""
    m = f.shape[1]
    s = np.sort(f, axis=1)
    return s @ (2 * np.arange(m) - (m - 1)).astype(float)


def _betweenness_component(wc: np.ndarray, x: np.ndarray) -> np.ndarray:
    m = wc.shape[0]
    out = np.zeros(m)
    ii, jj = np.nonzero(np.triu(wc, 1))
    if ii.size == 0:
        return out
    step = max(1, _CHUNK_ENTRIES // m)
    for lo in range(0, ii.size, step):
        ei, ej = ii[lo:lo + step], jj[lo:lo + step]
        # row e holds the current on edge e for a unit injection at each node
        f = wc[ei, ej][:, None] * (x[ei] - x[ej])
        total = _pairwise_abs_sum(f)
        rows = np.arange(ei.size)
        without_i = total - np.abs(f - f[rows, ei][:, None]).sum(axis=1)
        without_j = total - np.abs(f - f[rows, ej][:, None]).sum(axis=1)
        np.add.at(out, ei, 0.5 * without_i)
        np.add.at(out, ej, 0.5 * without_j)
    return out


def ohmic_betweenness_fp(g: AnyGraph) -> np.ndarray:
    """Fixed-power current-flow betweenness (meaningful as a ranking).

    For every unordered connected pair ``{a, b}`` the circuit is driven so
    that it dissipates 1 W, which scales the unit-current solution by
    ``sqrt(G_ab)``. Each node other than ``a`` and ``b`` scores its
    throughput (half the absolute current on its incident edges) times
    ``1 / sqrt(G_ab)``. The two factors cancel, so a pair contributes its
    unit-current throughput; the sum over pairs is accumulated edge by
    edge from sorted potential differences.
    """
    out = np.zeros(g.n)
    for idx, wc, x in _component_inverses(g):
        out[idx] = _betweenness_component(wc, x)
    return out


def geodesic_diameter(d: np.ndarray) -> Diameter:
    """Largest finite off-diagonal distance."""
    off = ~np.eye(d.shape[0], dtype=bool)
    finite = np.isfinite(d) & off
    if not finite.any():
        raise ValueError("diameter undefined: no pair of nodes is connected")
    return Diameter(float(d[finite].max()), bool((~finite & off).any()))


def ohmic_diameter(gmat: np.ndarray) -> Diameter:
    """Largest effective resistance ``1 / G_ij`` over connected pairs."""
    off = ~np.eye(gmat.shape[0], dtype=bool)
    conn = (gmat > 0) & off
    if not conn.any():
        raise ValueError("diameter undefined: no pair of nodes is connected")
    return Diameter(float((1.0 / gmat[conn]).max()), bool((~conn & off).any()))


STATISTIC_FIELDS = ("harmonic", "ohmic_closeness", "ohmic_betweenness", "geodesic_diameter", "ohmic_diameter")


class NodeStatistics(NamedTuple):
    harmonic: np.ndarray
    ohmic_closeness: np.ndarray
    ohmic_betweenness: np.ndarray
    geodesic_diameter: float
    ohmic_diameter: float


def node_statistics(g: AnyGraph) -> NodeStatistics:
    """Every statistic at once, sharing the circuit solves.

    Diameters of an edgeless graph are reported as 0.
    """
    n = g.n
    d = geodesic_distances(g)
    r = np.full((n, n), np.inf)
    np.fill_diagonal(r, 0.0)
    betw = np.zeros(n)
    for idx, wc, x in _component_inverses(g):
        r[np.ix_(idx, idx)] = _resistance_from_inverse(x)
        betw[idx] = _betweenness_component(wc, x)
    gmat = conductance_from_resistance(r)
    off = ~np.eye(n, dtype=bool)
    finite = np.isfinite(d) & off
    geo_diam = float(d[finite].max()) if finite.any() else 0.0
    conn = np.isfinite(r) & off
    ohm_diam = float(r[conn].max()) if conn.any() else 0.0
    if math.isinf(ohm_diam):
        raise ConductanceError("infinite resistance inside a component")
    return NodeStatistics(harmonic_closeness(d), ohmic_closeness(gmat), betw, geo_diam, ohm_diam)
