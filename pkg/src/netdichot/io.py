"""Reading networks and writing results.

Canonical graph files are weighted edge lists::

    # nodes=32
    # kind=valued
    src,dst,weight
    0,1,3
    ...

Undirected graphs list each pair once with ``src < dst``; rows are sorted
by ``(src, dst)``. Reals are written in their shortest round-trip form, so
a write/read cycle is exact.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import warnings
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .compare import SweepResult
from .contagion import MseResult
from .graphs import AnyGraph, DirectedBinaryGraph, UndirectedBinaryGraph, ValuedGraph

log = logging.getLogger(__name__)

SYMMETRIZE_RULES = ("mean", "sum", "max")
GRAPH_KINDS = {
    ValuedGraph: "valued",
    UndirectedBinaryGraph: "undirected-binary",
    DirectedBinaryGraph: "directed-binary",
}


class InputFormatError(ValueError):
    """A graph file could not be parsed."""


def fmt(x) -> str:
    """Locale-independent number formatting: integers plain, reals in shortest round-trip form."""
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if x is None:
        return ""
    xf = float(x)
    if math.isinf(xf):
        return "inf" if xf > 0 else "-inf"
    return repr(xf)


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _parse_edge_rows(path: Path):
    meta = {}
    rows = []
    seen_data = False
    with open(path, newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text:
                continue
            if text.startswith("#"):
                body = text[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = value.strip()
                continue
            parts = [p.strip() for p in text.split(",")]
            if len(parts) != 3:
                raise InputFormatError(f"{path}:{lineno}: expected 'src,dst,weight', got {text!r}")
            try:
                src, dst, w = int(parts[0]), int(parts[1]), float(parts[2])
            except ValueError:
                if not seen_data and not any(_is_number(p) for p in parts):
                    seen_data = True  # header row
                    continue
                raise InputFormatError(f"{path}:{lineno}: malformed row {text!r}") from None
            seen_data = True
            if src < 0 or dst < 0:
                raise InputFormatError(f"{path}:{lineno}: negative node id")
            if src == dst:
                raise InputFormatError(f"{path}:{lineno}: self-loop at node {src}")
            if not math.isfinite(w) or w < 0:
                raise InputFormatError(f"{path}:{lineno}: tie value must be finite and nonnegative, got {w}")
            rows.append((lineno, src, dst, w))
    return meta, rows


def edgelist_meta(path) -> dict:
    """``key=value`` pairs from the ``#`` comment lines of an edge list."""
    return _parse_edge_rows(Path(path))[0]


def symmetrize_weights(matrix: np.ndarray, rule: str = "mean") -> ValuedGraph:
    """Combine the two arc values of each pair into one undirected tie."""
    a = np.asarray(matrix, dtype=float)
    if rule == "mean":
        w = 0.5 * (a + a.T)
    elif rule == "sum":
        w = a + a.T
    elif rule == "max":
        w = np.maximum(a, a.T)
    else:
        raise ValueError(f"unknown symmetrization rule {rule!r}; choose from {SYMMETRIZE_RULES}")
    return ValuedGraph(w)


def read_weighted_edgelist(
    path, n: Optional[int] = None, rule: Optional[str] = None
) -> Union[np.ndarray, ValuedGraph]:
    """Read ``src,dst,weight`` rows (0-based ids, optional header).

    Returns the directed weight matrix, or a :class:`ValuedGraph` when a
    symmetrization ``rule`` (``mean``, ``sum`` or ``max``) is given. The node
    count comes from ``n``, a ``# nodes=N`` comment, or the largest id.
    """
    path = Path(path)
    meta, rows = _parse_edge_rows(path)
    if n is None:
        n = int(meta["nodes"]) if "nodes" in meta else (max(max(s, d) for _, s, d, _ in rows) + 1 if rows else 0)
    a = np.zeros((n, n))
    seen = set()
    for lineno, s, d, w in rows:
        if s >= n or d >= n:
            raise InputFormatError(f"{path}:{lineno}: node id out of range for n={n}")
        if (s, d) in seen:
            raise InputFormatError(f"{path}:{lineno}: duplicate arc {s}->{d}")
        seen.add((s, d))
        a[s, d] = w
    return a if rule is None else symmetrize_weights(a, rule)


def read_dense_matrix(path, clamp_negative: bool = False, atol: float = 1e-9) -> ValuedGraph:
    """Read an ``n x n`` comma-separated matrix of tie values.

    The diagonal is ignored. Negative entries are rejected unless
    ``clamp_negative`` is set, in which case they become 0 and a warning
    reports how many were clamped.
    """
    path = Path(path)
    try:
        rows = [
            [float(x) for x in line.split(",")]
            for line in Path(path).read_text().splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
    except ValueError as exc:
        raise InputFormatError(f"{path}: non-numeric matrix entry ({exc})") from None
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputFormatError(f"{path}: matrix is not square ({n} rows, row lengths {sorted({len(r) for r in rows})})")
    a = np.array(rows, dtype=float).reshape(n, n)
    np.fill_diagonal(a, 0.0)
    if not np.all(np.isfinite(a)):
        raise InputFormatError(f"{path}: non-finite matrix entry")
    asym = np.abs(a - a.T).max() if n else 0.0
    if asym > atol:
        raise InputFormatError(f"{path}: matrix is not symmetric (max |a_ij - a_ji| = {asym:.3g})")
    a = np.triu(a, 1) + np.triu(a, 1).T
    neg = a < 0
    if neg.any():
        count = int(np.triu(neg, 1).sum())
        if not clamp_negative:
            raise InputFormatError(f"{path}: {count} negative entries (use clamping to set them to 0)")
        a[neg] = 0.0
        msg = f"{path}: clamped {count} negative entries to 0"
        log.warning(msg)
        warnings.warn(msg, stacklevel=2)
    return ValuedGraph(a)


def write_dense_matrix(g: ValuedGraph, path) -> None:
    with open(path, "w", newline="") as fh:
        for row in g.weights:
            fh.write(",".join(fmt(x) for x in row) + "\n")


def write_graph(g: AnyGraph, path) -> None:
    """Write the canonical edge-list file for any graph type."""
    kind = GRAPH_KINDS[type(g)]
    w = g.weights
    if isinstance(g, DirectedBinaryGraph):
        ii, jj = np.nonzero(w)
    else:
        ii, jj = np.nonzero(np.triu(w, 1))
    with open(path, "w", newline="") as fh:
        fh.write(f"# nodes={g.n}\n# kind={kind}\nsrc,dst,weight\n")
        for i, j in zip(ii, jj):
            val = w[i, j]
            fh.write(f"{i},{j},{fmt(int(val)) if kind != 'valued' else fmt(val)}\n")


def read_graph(path) -> AnyGraph:
    """Read a canonical graph file written by :func:`write_graph`.

    Files without a ``kind`` comment are read as valued edge lists with
    ``max`` symmetrization (exact for files that list each pair once).
    """
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"graph file not found: {path}")
    meta, _ = _parse_edge_rows(path)
    kind = meta.get("kind", "valued")
    a = read_weighted_edgelist(path)
    if kind == "directed-binary":
        return DirectedBinaryGraph(a)
    if kind == "undirected-binary":
        return UndirectedBinaryGraph(np.maximum(a, a.T))
    if kind == "valued":
        return symmetrize_weights(a, "max")
    raise InputFormatError(f"{path}: unknown graph kind {kind!r}")


def _write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([v if isinstance(v, str) else fmt(v) for v in row])


def write_sweep_results(results: Sequence[SweepResult], out_dir) -> list[Path]:
    """``records.csv``, ``optima.csv`` and ``cells.csv`` for one or more sweeps."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "records.csv", out / "optima.csv", out / "cells.csv"]
    _write_csv(
        paths[0],
        ("method", "parameter", "replicate", "statistic", "discrepancy"),
        (tuple(rec) for res in results for rec in res.records),
    )
    _write_csv(
        paths[1],
        ("statistic", "method", "parameter", "discrepancy", "mean_degree"),
        (tuple(o) for res in results for o in res.optima.values()),
    )
    _write_csv(
        paths[2],
        ("method", "parameter", "replicate", "mean_degree", "density"),
        ((res.method.value,) + tuple(c) for res in results for c in res.cells),
    )
    return paths


def write_contagion_results(result: MseResult, out_dir) -> list[Path]:
    """``contagion.csv`` (one row per fit) and ``contagion_summary.csv`` (one row per k)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "contagion.csv", out / "contagion_summary.csv"]

    def ratio_of(k):
        return 1.0 if k is None else result.ratio[k]

    _write_csv(
        paths[0],
        ("k", "replicate", "beta_hat", "se", "tstat", "mse_ratio"),
        (("valued" if rec.k is None else rec.k, rec.replicate, rec.beta_hat, rec.se, rec.tstat, ratio_of(rec.k))
         for rec in result.records),
    )
    _write_csv(
        paths[1],
        ("k", "mse", "mse_ratio", "excluded"),
        [("valued", result.mse_valued, 1.0, result.excluded[None])]
        + [(k, result.mse[k], result.ratio[k], result.excluded[k]) for k in result.ladder],
    )
    return paths


def write_manifest(out_dir, payload: dict) -> Path:
    path = Path(out_dir) / "manifest.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def write_results(results, out_dir, manifest: Optional[dict] = None) -> list[Path]:
    """Write sweep or contagion results plus ``manifest.json``."""
    if isinstance(results, MseResult):
        paths = write_contagion_results(results, out_dir)
    else:
        if isinstance(results, SweepResult):
            results = [results]
        paths = write_sweep_results(results, out_dir)
    paths.append(write_manifest(out_dir, manifest or {}))
    return paths

