import itertools

import numpy as np
import pytest

from netdichot import UndirectedBinaryGraph, ValuedGraph
from netdichot.compare import ALL_STATISTICS, sweep
from netdichot.dichotomize import ladder
from netdichot.exhaustive import (
    batch_statistics,
    brute_force_all,
    brute_force_best_binary,
    candidate_adjacency,
)
from netdichot.metrics import node_statistics

from conftest import random_valued


@pytest.mark.parametrize("n", [3, 4, 5])
def test_batch_statistics_match_per_graph(n):
    codes = np.arange(1 << (n * (n - 1) // 2), dtype=np.int64)
    adj = candidate_adjacency(n, codes)
    batch = batch_statistics(adj)
    for b in range(0, codes.size, max(1, codes.size // 64)):
        ref = node_statistics(UndirectedBinaryGraph(adj[b]))
        for key in ("harmonic", "ohmic_closeness", "ohmic_betweenness"):
            np.testing.assert_allclose(batch[key][b], getattr(ref, key), atol=1e-9)
        assert batch["geodesic_diameter"][b] == pytest.approx(ref.geodesic_diameter)
        assert batch["ohmic_diameter"][b] == pytest.approx(ref.ohmic_diameter, abs=1e-9)


def test_candidate_adjacency_enumerates_all_graphs():
    adj = candidate_adjacency(4, np.arange(64, dtype=np.int64))
    assert len({a.tobytes() for a in adj}) == 64
    assert np.all(adj == adj.transpose(0, 2, 1))


def test_refuses_large_n():
    with pytest.raises(ValueError, match="max_n"):
        brute_force_best_binary(random_valued(7, 0), "GeoRank")


def test_binary_valued_graph_is_its_own_best():
    a = np.zeros((5, 5))
    for i, j in [(0, 1), (1, 2), (2, 3), (1, 4)]:
        a[i, j] = a[j, i] = 1
    best = brute_force_all(ValuedGraph(a))
    for stat, (bg, obj) in best.items():
        assert obj == pytest.approx(0.0, abs=1e-12), stat


def test_objective_matches_plain_loop():
    # independent search: per-graph statistics plus the public sweep at one rung
    g = random_valued(4, 11, density=0.9)
    best = brute_force_all(g, seed=3)
    for stat in ("OhmValue", "GeoValue"):
        from netdichot.compare import value_discrepancy

        src = "ohmic_closeness" if stat == "OhmValue" else "harmonic"
        val = getattr(node_statistics(g), src)
        objs = []
        for bits in itertools.product([0, 1], repeat=6):
            a = np.zeros((4, 4))
            a[np.triu_indices(4, 1)] = bits
            a = a + a.T
            objs.append(value_discrepancy(getattr(node_statistics(UndirectedBinaryGraph(a)), src), val))
        assert best[stat][1] == pytest.approx(min(objs), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("seed", range(6))
def test_oracle_dominates_sweeps(seed):
    n = 4 + seed % 3
    g = random_valued(n, 100 + seed, density=0.8)
    thr = sweep(g, "threshold", ladder("threshold", g, 12, include_floor=True), replicates=2, seed=seed)
    cen = sweep(g, "censor", ladder("censor", g, 12), replicates=1, seed=seed)
    best2 = brute_force_all(g, seed=seed, replicates=2)
    best1 = brute_force_all(g, seed=seed, replicates=1)
    for s in ALL_STATISTICS:
        assert best2[s.value][1] <= thr.optima[s.value].discrepancy + 1e-9
        assert best1[s.value][1] <= cen.optima[s.value].discrepancy + 1e-9
