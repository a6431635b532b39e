import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from netdichot import DirectedBinaryGraph, UndirectedBinaryGraph, ValuedGraph
from netdichot.config import ConfigError, ExperimentConfig, load_config
from netdichot.io import (
    InputFormatError,
    fmt,
    read_dense_matrix,
    read_graph,
    read_weighted_edgelist,
    symmetrize_weights,
    write_dense_matrix,
    write_graph,
)

from conftest import random_valued


def test_fmt():
    assert fmt(3) == "3"
    assert fmt(np.int64(4)) == "4"
    assert fmt(True) == "1"
    assert fmt(0.1) == "0.1"
    assert fmt(np.float64(2.0)) == "2.0"
    assert fmt(float("inf")) == "inf"
    assert float(fmt(1 / 3)) == 1 / 3


def test_edgelist_with_header_and_symmetrization(tmp_path):
    p = tmp_path / "e.csv"
    p.write_text("from,to,value\n0,1,2\n1,0,4\n1,2,3\n")
    a = read_weighted_edgelist(p)
    assert a.shape == (3, 3) and a[1, 0] == 4 and a[2, 1] == 0
    assert read_weighted_edgelist(p, rule="mean").weights[0, 1] == 3
    assert read_weighted_edgelist(p, rule="sum").weights[0, 1] == 6
    assert read_weighted_edgelist(p, rule="max").weights[1, 2] == 3
    assert read_weighted_edgelist(p, rule="mean").weights[1, 2] == 1.5
    with pytest.raises(ValueError):
        symmetrize_weights(a, "min")


@pytest.mark.parametrize("body,msg", [
    ("0,1,-2\n", "nonnegative"),
    ("0,0,1\n", "self-loop"),
    ("0,1\n", "expected"),
    ("0,1,1\n0,x,2\n", "malformed"),
    ("0,1,1\n0,1,2\n", "duplicate"),
    ("0,1,nan\n", "finite"),
])
def test_edgelist_errors_name_the_line(tmp_path, body, msg):
    p = tmp_path / "bad.csv"
    p.write_text(body)
    with pytest.raises(InputFormatError, match=msg) as exc:
        read_weighted_edgelist(p)
    assert "bad.csv:" in str(exc.value)


def test_edgelist_node_count_from_meta(tmp_path):
    p = tmp_path / "e.csv"
    p.write_text("# nodes=5\n0,1,1\n")
    assert read_weighted_edgelist(p).shape == (5, 5)
    with pytest.raises(InputFormatError, match="out of range"):
        read_weighted_edgelist(p, n=1)


def test_dense_matrix(tmp_path):
    p = tmp_path / "m.csv"
    p.write_text("1,0.5,-0.2\n0.5,1,0.3\n-0.2,0.3,1\n")
    with pytest.raises(InputFormatError, match="negative"):
        read_dense_matrix(p)
    with pytest.warns(UserWarning, match="clamped 1"):
        g = read_dense_matrix(p, clamp_negative=True)
    np.testing.assert_array_equal(g.weights, [[0, 0.5, 0], [0.5, 0, 0.3], [0, 0.3, 0]])
    q = tmp_path / "asym.csv"
    q.write_text("0,1\n2,0\n")
    with pytest.raises(InputFormatError, match="symmetric"):
        read_dense_matrix(q)
    r = tmp_path / "ragged.csv"
    r.write_text("0,1\n1\n")
    with pytest.raises(InputFormatError, match="square"):
        read_dense_matrix(r)


def test_dense_matrix_round_trip(tmp_path):
    g = random_valued(7, 3)
    write_dense_matrix(g, tmp_path / "m.csv")
    np.testing.assert_array_equal(read_dense_matrix(tmp_path / "m.csv").weights, g.weights)


@settings(max_examples=25, deadline=None)
@given(n=st.integers(2, 12), seed=st.integers(0, 2**32 - 1))
def test_graph_round_trip_exact(tmp_path_factory, n, seed):
    d = tmp_path_factory.mktemp("rt")
    g = random_valued(n, seed)
    write_graph(g, d / "g.csv")
    back = read_graph(d / "g.csv")
    assert isinstance(back, ValuedGraph)
    np.testing.assert_array_equal(back.weights, g.weights)


def test_binary_graph_round_trip(tmp_path):
    arcs = np.array([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    for g in (DirectedBinaryGraph(arcs), UndirectedBinaryGraph(np.maximum(arcs, arcs.T))):
        write_graph(g, tmp_path / "b.csv")
        back = read_graph(tmp_path / "b.csv")
        assert type(back) is type(g)
        np.testing.assert_array_equal(back.weights, g.weights)


def test_read_graph_missing(tmp_path):
    with pytest.raises(FileNotFoundError, match="not found"):
        read_graph(tmp_path / "nope.csv")


def test_config_validation_and_round_trip(tmp_path):
    with pytest.raises(ConfigError):
        ExperimentConfig()
    with pytest.raises(ConfigError):
        ExperimentConfig(generation={"n": 10}, input="x.csv")
    with pytest.raises(ConfigError):
        ExperimentConfig(generation={"n": 10}, methods=["bogus"])
    with pytest.raises(ConfigError):
        ExperimentConfig(generation={"n": 10, "gamma_geo": 1})
    with pytest.raises(ConfigError, match="unknown config keys"):
        ExperimentConfig.from_dict({"generation": {"n": 10}, "colour": 1})
    cfg = ExperimentConfig(generation={"n": 10}, replicates=3)
    assert ExperimentConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg


def test_load_config_resolves_relative_input(tmp_path):
    (tmp_path / "sub").mkdir()
    (tmp_path / "sub" / "cfg.json").write_text(json.dumps({"input": "g.csv"}))
    cfg = load_config(tmp_path / "sub" / "cfg.json")
    assert cfg.input == str((tmp_path / "sub" / "g.csv").resolve())
    (tmp_path / "bad.json").write_text("{")
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_config(tmp_path / "bad.json")
