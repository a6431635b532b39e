"""Running configured experiments end to end."""

from __future__ import annotations

from pathlib import Path

from . import __version__
from .compare import SweepResult, sweep_graphs
from .config import ExperimentConfig
from .contagion import LmConfig, MseResult, mse_experiment
from .dichotomize import Method, ladder
from .graphs import ValuedGraph
from .io import edgelist_meta, read_dense_matrix, read_graph, read_weighted_edgelist, write_results
from .netgen import generate
from .seeding import derive_seed

MANIFEST_VERSION = 1


def read_input_graph(path, fmt: str = "edgelist", rule: str = "mean", clamp_negative: bool = False) -> ValuedGraph:
    """Valued graph from a raw edge list, a canonical graph file or a dense matrix."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"input file not found: {path}")
    if fmt == "matrix":
        return read_dense_matrix(path, clamp_negative=clamp_negative)
    meta = edgelist_meta(path)
    if "kind" in meta:
        g = read_graph(path)
        if not isinstance(g, ValuedGraph):
            raise ValueError(f"{path} holds a {meta['kind']} graph, not a valued one")
        return g
    return read_weighted_edgelist(path, rule=rule)


def replicate_graphs(cfg: ExperimentConfig) -> list[ValuedGraph]:
    if cfg.mode == "ingest":
        g = read_input_graph(cfg.input, cfg.input_format, cfg.symmetrize, cfg.clamp_negative)
        return [g] * cfg.replicates
    gen = cfg.gen_config()
    if cfg.replicate_mode == "redraw":
        return [generate(gen, derive_seed(gen.seed, r))[0] for r in range(cfg.replicates)]
    return [generate(gen)[0]] * cfg.replicates


def run_sweep(cfg: ExperimentConfig) -> list[SweepResult]:
    graphs = replicate_graphs(cfg)
    results = []
    for m in cfg.methods:
        method = Method(m)
        params = ladder(method, graphs[0], cfg.ladder_steps,
                        include_floor=cfg.threshold_floor and method is Method.THRESHOLD)
        results.append(sweep_graphs(graphs, method, params, cfg.statistics, seed=cfg.seed))
    return results


def run_contagion(cfg: ExperimentConfig) -> MseResult:
    g = replicate_graphs(cfg)[0]
    lm = LmConfig(**{"seed": cfg.seed, **(cfg.lm or {})})
    return mse_experiment(g, lm, ladder(Method.CENSOR, g, cfg.ladder_steps), cfg.lm_replicates)


def manifest(cfg: ExperimentConfig, command: str, **extra) -> dict:
    return {
        "manifest_version": MANIFEST_VERSION,
        "package": "netdichot",
        "version": __version__,
        "command": command,
        "config": cfg.to_dict(),
        **extra,
    }


def run_and_write(cfg: ExperimentConfig, command: str, out_dir=None) -> list[Path]:
    out_dir = Path(out_dir or cfg.out)
    if command == "sweep":
        results = run_sweep(cfg)
        extra = {"ladders": {r.method.value: r.params for r in results}}
    elif command == "contagion":
        results = run_contagion(cfg)
        extra = {"ladders": {"censor": results.ladder}}
    else:
        raise ValueError(f"unknown experiment command {command!r}")
    return write_results(results, out_dir, manifest(cfg, command, **extra))
