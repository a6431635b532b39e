"""Command-line entry point.

    netdichot generate   --seed 7 --n 50 --sigma-alpha 2.5 --out run/
    netdichot ingest     eies.csv --rule mean --out eies_graph.csv
    netdichot dichotomize graph.csv --method censor --param 3 --out bin.csv
    netdichot metrics    graph.csv --out stats/
    netdichot sweep      --config eies.json --out results/
    netdichot contagion  --config contagion.json --out results/
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from . import __version__
from .config import ConfigError, ExperimentConfig, load_config
from .dichotomize import Method, censor_topk, dichotomize
from .experiment import read_input_graph, run_and_write
from .io import InputFormatError, fmt, read_graph, write_dense_matrix, write_graph, write_manifest
from .metrics import node_statistics
from .netgen import Family, GenConfig, Geometry, generate, parameter_grid


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, help="master random seed")
    p.add_argument("--config", help="JSON experiment config or a previous run's manifest.json")
    p.add_argument("--out", help="output file or directory")
    p.add_argument("--replicates", type=int, help="replicates per sweep cell")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="netdichot", description=__doc__.splitlines()[0] or None)
    parser.add_argument("--version", action="version", version=f"netdichot {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    gen = sub.add_parser("generate", parents=[common], help="draw a valued graph from the latent-variable model")
    gen.add_argument("--n", type=int, default=50, help="number of nodes")
    gen.add_argument("--family", choices=[f.value for f in Family], default="gamma")
    gen.add_argument("--sigma-alpha", type=float, default=1.0, help="spread of node effects")
    gen.add_argument("--geometry", choices=[g.value for g in Geometry], default="none")
    gen.add_argument("--strength", type=float, default=0.0, help="distance coefficient or |cluster propensity|")
    gen.add_argument("--chi", type=float, default=0.0, help="assortative mixing")
    gen.add_argument("--mu-base", type=float, default=0.0, help="mean tie of the variance-heterogeneity family")
    gen.add_argument("--c-var", type=float, default=1.0, help="shape of the node scales in that family")
    gen.add_argument("--grid", action="store_true", help="write the full parameter grid to grid.json instead")
    gen.add_argument("--grid-index", type=int, help="draw the graph for this entry of the parameter grid")
    gen.add_argument("--small-grid", action="store_true", help="leave out the contagion-only node counts")
    gen.add_argument("--format", choices=["edgelist", "matrix"], default="edgelist")

    ing = sub.add_parser("ingest", parents=[common], help="convert an edge list or matrix to a canonical graph file")
    ing.add_argument("path")
    ing.add_argument("--format", choices=["edgelist", "matrix"], default="edgelist")
    ing.add_argument("--rule", choices=["mean", "sum", "max"], default="mean", help="arc symmetrization rule")
    ing.add_argument("--clamp", action="store_true", help="set negative matrix entries to 0 instead of failing")

    dich = sub.add_parser("dichotomize", parents=[common], help="threshold or censor a valued graph")
    dich.add_argument("graph")
    dich.add_argument("--method", choices=[m.value for m in Method], required=True)
    dich.add_argument("--param", type=float, required=True, help="threshold value or outdegree cap k")
    dich.add_argument("--no-symmetrize", action="store_true", help="keep the directed censored graph")

    met = sub.add_parser("metrics", parents=[common], help="per-node geodesic and Ohmic statistics")
    met.add_argument("graph")

    for name, text in (("sweep", "compare dichotomizations over a ladder"),
                       ("contagion", "MSE of the contagion coefficient under censoring")):
        sp = sub.add_parser(name, parents=[common], help=text)
        sp.add_argument("--graph", help="valued graph file (instead of --config)")
        sp.add_argument("--steps", type=int, help="ladder length")
        if name == "sweep":
            sp.add_argument("--method", action="append", choices=[m.value for m in Method],
                            help="dichotomization method (repeatable; default both)")
    return parser


def _gen_config(args) -> GenConfig:
    if args.config:
        data = json.loads(Path(args.config).read_text())
        if "manifest_version" in data:
            data = data["config"]
        data = data.get("generation", data)
        cfg = GenConfig.from_dict(data)
    elif args.grid_index is not None:
        grid = parameter_grid(include_large=not args.small_grid, seed=args.seed or 0)
        cfg = grid[args.grid_index]
    else:
        cfg = GenConfig.with_strength(
            args.geometry, args.strength, n=args.n, family=args.family, sigma_alpha=args.sigma_alpha,
            chi=args.chi, mu_base=args.mu_base, c_var=args.c_var,
        )
    if args.seed is not None and args.grid_index is None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    return cfg


def cmd_generate(args) -> int:
    out = Path(args.out or ".")
    out.mkdir(parents=True, exist_ok=True)
    if args.grid:
        grid = parameter_grid(include_large=not args.small_grid, seed=args.seed or 0)
        (out / "grid.json").write_text(json.dumps([c.to_dict() for c in grid], indent=1) + "\n")
        print(f"wrote {len(grid)} configs to {out / 'grid.json'}")
        return 0
    cfg = _gen_config(args)
    g, latents = generate(cfg)
    if args.format == "matrix":
        write_dense_matrix(g, out / "graph_matrix.csv")
    else:
        write_graph(g, out / "graph.csv")
    (out / "latents.json").write_text(json.dumps(latents.to_dict()) + "\n")
    write_manifest(out, {"command": "generate", "generation": cfg.to_dict(), "version": __version__})
    return 0


def cmd_ingest(args) -> int:
    g = read_input_graph(args.path, args.format, args.rule, args.clamp)
    write_graph(g, args.out or "graph.csv")
    return 0


def cmd_dichotomize(args) -> int:
    g = read_graph(args.graph)
    seed = args.seed or 0
    method = Method(args.method)
    if method is Method.CENSOR:
        k = int(args.param)
        bg = censor_topk(g, k, seed) if args.no_symmetrize else dichotomize(g, method, k, seed)
    else:
        bg = dichotomize(g, method, args.param, seed)
    write_graph(bg, args.out or "binary.csv")
    return 0


def cmd_metrics(args) -> int:
    g = read_graph(args.graph)
    st = node_statistics(g)
    lines = ["node,harmonic,ohmic_closeness,ohmic_betweenness"]
    lines += [
        f"{i},{fmt(st.harmonic[i])},{fmt(st.ohmic_closeness[i])},{fmt(st.ohmic_betweenness[i])}"
        for i in range(g.n)
    ]
    text = "\n".join(lines) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "metrics.csv").write_text(text)
        summary = {"geodesic_diameter": st.geodesic_diameter, "ohmic_diameter": st.ohmic_diameter}
        (out / "metrics_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    else:
        sys.stdout.write(text)
    return 0


def _experiment_config(args) -> ExperimentConfig:
    if args.config:
        cfg = load_config(args.config)
    elif args.graph:
        cfg = ExperimentConfig(input=str(Path(args.graph).resolve()))
    else:
        raise ConfigError("give --config or --graph")
    updates = {}
    if args.seed is not None:
        updates["seed"] = args.seed
    if args.replicates is not None:
        updates["replicates"] = args.replicates
        updates["lm_replicates"] = args.replicates
    if args.steps is not None:
        updates["ladder_steps"] = args.steps
    if getattr(args, "method", None):
        updates["methods"] = list(dict.fromkeys(args.method))
    if args.out:
        updates["out"] = args.out
    return dataclasses.replace(cfg, **updates) if updates else cfg


def cmd_experiment(args) -> int:
    cfg = _experiment_config(args)
    paths = run_and_write(cfg, args.command)
    for p in paths:
        print(p)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "ingest": cmd_ingest,
    "dichotomize": cmd_dichotomize,
    "metrics": cmd_metrics,
    "sweep": cmd_experiment,
    "contagion": cmd_experiment,
}


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"netdichot: error: {exc}", file=sys.stderr)
        return 1
    except (ConfigError, InputFormatError, ValueError, ArithmeticError) as exc:
        print(f"netdichot: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
