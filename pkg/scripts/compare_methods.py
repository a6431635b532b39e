"""Threshold against censoring optima on one valued graph, table style.

With ``--graph`` the graph is read from a file (for example an ingested
EIES edge list); otherwise high-heterogeneity 32-node Poisson graphs are
drawn for each ``--seeds`` value. Prints, per statistic, both optimal
discrepancies and which method wins.

    python scripts/compare_methods.py --seeds 0 1 2 3
    python scripts/compare_methods.py --graph eies.csv
"""

import argparse

from netdichot.compare import ALL_STATISTICS, sweep
from netdichot.dichotomize import ladder
from netdichot.experiment import read_input_graph
from netdichot.netgen import GenConfig, sample_graph


def table(g, seed, steps, replicates):
    thr = sweep(g, "threshold", ladder("threshold", g, steps, include_floor=True), replicates, seed=seed)
    cen = sweep(g, "censor", ladder("censor", g, steps), replicates, seed=seed)
    wins = 0
    print(f"{'statistic':<12} {'threshold':>12} {'(t)':>8} {'censor':>12} {'(k)':>4}  winner")
    for s in ALL_STATISTICS:
        a, b = thr.optima[s.value], cen.optima[s.value]
        winner = "threshold" if a.discrepancy < b.discrepancy else ("tie" if a.discrepancy == b.discrepancy else "censor")
        wins += winner == "threshold"
        print(f"{s.value:<12} {a.discrepancy:12.4g} {a.parameter:8.3g} {b.discrepancy:12.4g} {b.parameter:4d}  {winner}")
    return wins


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--graph")
    ap.add_argument("--rule", default="mean")
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--steps", type=int, default=24)
    ap.add_argument("--replicates", type=int, default=10)
    args = ap.parse_args()

    if args.graph:
        g = read_input_graph(args.graph, rule=args.rule)
        print(f"thresholding strictly better on {table(g, args.seeds[0], args.steps, args.replicates)}/7")
        return
    for seed in args.seeds:
        g, _ = sample_graph(GenConfig(n=32, family="poisson", sigma_alpha=10.0, seed=seed))
        print(f"\nseed {seed}")
        print(f"thresholding strictly better on {table(g, seed, args.steps, args.replicates)}/7")


if __name__ == "__main__":
    main()
