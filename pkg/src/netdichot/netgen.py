"""Latent-variable generators for valued undirected networks.

Tie means follow

    mu_ij = a_i + a_j + chi * a_i * a_j - gamma * |d_i - d_j| + lam * [c_i == c_j]

with node effects ``a``, optional positions ``d`` (ring or Gaussian cloud)
and optional cluster labels ``c``. The mean is pushed above zero with
:func:`positivize` and a tie is drawn from a Gamma family (mean mu, unit
variance) or a Poisson family. A third family draws Gaussian ties whose
variance, rather than mean, carries the node heterogeneity.
"""

from __future__ import annotations

import itertools
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .graphs import ValuedGraph
from .seeding import derive_seed, rng_for


class Family(str, Enum):
    GAMMA = "gamma"
    POISSON = "poisson"
    VARIANCE_HETERO = "variance_hetero"


class Geometry(str, Enum):
    NONE = "none"
    RING = "ring"
    CLOUD = "cloud"
    CLUSTER_ATTRACT = "cluster_attract"
    CLUSTER_REPEL = "cluster_repel"

    @property
    def spatial(self) -> bool:
        return self in (Geometry.RING, Geometry.CLOUD)

    @property
    def clustered(self) -> bool:
        return self in (Geometry.CLUSTER_ATTRACT, Geometry.CLUSTER_REPEL)


N_CLUSTERS = 3

# exp() of anything below this is subnormal; positivize floors here so its
# output stays a normal positive float
_LOG_TINY = float(np.log(np.finfo(float).tiny))
# drawn ties below this are stored as 0 so that sums of reciprocal tie
# values along paths cannot overflow
TIE_FLOOR = 1e-250


@dataclass(frozen=True)
class GenConfig:
    """Generative parameters for one network family.

    ``gamma_geo`` only acts with ring/cloud geometry and ``lam`` only with
    cluster geometry; the other must be left at 0. Attracting clusters take
    ``lam >= 0`` and repelling clusters ``lam <= 0``. ``mu_offset`` is added
    to every tie mean and exists for calibration runs.
    """

    n: int = 50
    family: Family = Family.GAMMA
    sigma_alpha: float = 1.0
    geometry: Geometry = Geometry.NONE
    gamma_geo: float = 0.0
    lam: float = 0.0
    chi: float = 0.0
    mu_base: float = 0.0
    c_var: float = 1.0
    mu_offset: float = 0.0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "family", Family(self.family))
        object.__setattr__(self, "geometry", Geometry(self.geometry))
        if self.n < 2:
            raise ValueError(f"need at least 2 nodes, got n={self.n}")
        if self.sigma_alpha < 0:
            raise ValueError("sigma_alpha must be nonnegative")
        if self.gamma_geo < 0:
            raise ValueError("gamma_geo must be nonnegative")
        if self.c_var <= 0:
            raise ValueError("c_var must be positive")
        if self.gamma_geo != 0 and not self.geometry.spatial:
            raise ValueError(f"gamma_geo has no effect with geometry {self.geometry.value}")
        if self.lam != 0 and not self.geometry.clustered:
            raise ValueError(f"lam has no effect with geometry {self.geometry.value}")
        if self.geometry is Geometry.CLUSTER_ATTRACT and self.lam < 0:
            raise ValueError("attracting clusters need lam >= 0")
        if self.geometry is Geometry.CLUSTER_REPEL and self.lam > 0:
            raise ValueError("repelling clusters need lam <= 0")

    @classmethod
    def with_strength(cls, geometry, strength: float, **kw) -> "GenConfig":
        """Config whose geometry strength is routed to ``gamma_geo`` or ``lam``."""
        geometry = Geometry(geometry)
        if geometry.spatial:
            kw["gamma_geo"] = strength
        elif geometry is Geometry.CLUSTER_ATTRACT:
            kw["lam"] = strength
        elif geometry is Geometry.CLUSTER_REPEL:
            kw["lam"] = -strength
        return cls(geometry=geometry, **kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["family"] = self.family.value
        d["geometry"] = self.geometry.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GenConfig":
        return cls(**d)


@dataclass(frozen=True, eq=False)
class LatentState:
    alpha: np.ndarray
    positions: Optional[np.ndarray] = None
    clusters: Optional[np.ndarray] = None

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha.tolist(),
            "positions": None if self.positions is None else self.positions.tolist(),
            "clusters": None if self.clusters is None else self.clusters.tolist(),
        }


def sample_latents(config: GenConfig, seed: Optional[int] = None) -> LatentState:
    """Draw node effects, positions and cluster labels.

    Ring positions are deterministic (equally spaced on the unit circle,
    starting at angle 0); cloud positions are standard bivariate normal;
    cluster labels are uniform on {1, 2, 3}.
    """
    seed = config.seed if seed is None else seed
    n = config.n
    alpha = rng_for(seed, 0).normal(0.0, config.sigma_alpha, size=n)
    positions = clusters = None
    if config.geometry is Geometry.RING:
        theta = 2 * np.pi * np.arange(n) / n
        positions = np.column_stack([np.cos(theta), np.sin(theta)])
    elif config.geometry is Geometry.CLOUD:
        positions = rng_for(seed, 1).standard_normal((n, 2))
    elif config.geometry.clustered:
        clusters = rng_for(seed, 2).integers(1, N_CLUSTERS + 1, size=n)
    return LatentState(alpha, positions, clusters)


def link_param(latents: LatentState, i: int, j: int, config: GenConfig) -> float:
    """Tie mean ``mu_ij`` before the positivity transform."""
    if i == j:
        raise ValueError("link parameter is undefined on the diagonal")
    a = latents.alpha
    mu = a[i] + a[j] + config.chi * a[i] * a[j] + config.mu_offset
    if latents.positions is not None:
        mu -= config.gamma_geo * float(np.linalg.norm(latents.positions[i] - latents.positions[j]))
    if latents.clusters is not None and latents.clusters[i] == latents.clusters[j]:
        mu += config.lam
    return float(mu)


def link_matrix(latents: LatentState, config: GenConfig) -> np.ndarray:
    """All ``mu_ij`` at once; the diagonal is meaningless and set to 0."""
    a = latents.alpha
    mu = a[:, None] + a[None, :] + config.chi * np.outer(a, a) + config.mu_offset
    if latents.positions is not None:
        diff = latents.positions[:, None, :] - latents.positions[None, :, :]
        mu = mu - config.gamma_geo * np.sqrt((diff**2).sum(axis=-1))
    if latents.clusters is not None:
        mu = mu + config.lam * (latents.clusters[:, None] == latents.clusters[None, :])
    np.fill_diagonal(mu, 0.0)
    return mu


def positivize(mu):
    """``exp(mu - 1)`` below 1 and the identity from 1 up.

    Continuous, nondecreasing and strictly positive. Works elementwise on
    arrays and returns a float for scalar input.
    """
    mu_arr = np.asarray(mu, dtype=float)
    out = np.where(mu_arr >= 1, mu_arr, np.exp(np.maximum(np.minimum(mu_arr, 1.0) - 1.0, _LOG_TINY)))
    return float(out) if out.ndim == 0 else out


def _fill_symmetric(n: int, seed: int, draw_row) -> np.ndarray:
    # one stream per row keeps each pair's draw independent of other rows
    w = np.zeros((n, n))
    for i in range(n - 1):
        row = draw_row(rng_for(seed, 3, i), i)
        w[i, i + 1:] = row
        w[i + 1:, i] = row
    return w


def sample_graph(config: GenConfig, seed: Optional[int] = None) -> tuple[ValuedGraph, LatentState]:
    """Draw a Gamma- or Poisson-family valued graph and its latents.

    Gamma ties are ``Gamma(shape=m**2, scale=1) / m`` with ``m`` the
    positivized mean, giving mean ``m`` and variance 1. Poisson ties are
    ``Poisson(m)``.
    """
    seed = config.seed if seed is None else seed
    if config.family is Family.VARIANCE_HETERO:
        raise ValueError("use sample_variance_hetero_graph for the variance-heterogeneity family")
    latents = sample_latents(config, seed)
    m = positivize(link_matrix(latents, config))

    if config.family is Family.GAMMA:
        def draw(rng, i):
            mi = m[i, i + 1:]
            y = rng.gamma(mi**2) / mi
            return np.where(y < TIE_FLOOR, 0.0, y)
    elif config.family is Family.POISSON:
        def draw(rng, i):
            return rng.poisson(m[i, i + 1:]).astype(float)
    else:
        raise ValueError(f"unknown family {config.family!r}")
    return ValuedGraph(_fill_symmetric(config.n, seed, draw)), latents


def variance_hetero_draws(config: GenConfig, seed: Optional[int] = None) -> tuple[np.ndarray, np.ndarray]:
    """Raw Gaussian ties ``Z`` (symmetric, zero diagonal) and the node scales.

    ``Z_ij = mu_base + eps_ij`` with ``eps_ij ~ N(0, s_i * s_j)`` and
    ``s_i ~ Gamma(c, 1) / c`` so that every ``s_i`` has mean 1.
    """
    seed = config.seed if seed is None else seed
    if config.c_var <= 0:
        raise ValueError("c_var must be positive")
    scale = rng_for(seed, 0).gamma(config.c_var, 1.0, size=config.n) / config.c_var
    sd = np.sqrt(scale)

    def draw(rng, i):
        return config.mu_base + sd[i] * sd[i + 1:] * rng.standard_normal(config.n - i - 1)

    return _fill_symmetric(config.n, seed, draw), scale


def sample_variance_hetero_graph(config: GenConfig, seed: Optional[int] = None) -> ValuedGraph:
    """Variance-heterogeneity graph with ties passed through :func:`positivize`."""
    if config.family is not Family.VARIANCE_HETERO:
        raise ValueError(f"config family is {config.family.value}, not variance_hetero")
    z, _ = variance_hetero_draws(config, seed)
    w = positivize(z)
    np.fill_diagonal(w, 0.0)
    return ValuedGraph(w)


def generate(config: GenConfig, seed: Optional[int] = None) -> tuple[ValuedGraph, Optional[LatentState]]:
    """Dispatch on family. The variance family returns only its node scales."""
    if config.family is Family.VARIANCE_HETERO:
        z, scale = variance_hetero_draws(config, seed)
        w = positivize(z)
        np.fill_diagonal(w, 0.0)
        return ValuedGraph(w), LatentState(alpha=scale)
    return sample_graph(config, seed)


GRID_NODES = (50, 100, 200, 300, 400, 500, 600)
LINEAR_MODEL_ONLY_NODES = (300, 400, 500, 600)
GRID_SIGMA_ALPHA = (0.1, 0.5, 1, 2.5, 10, 100)
GRID_GEOMETRY = (Geometry.NONE, Geometry.RING, Geometry.CLOUD, Geometry.CLUSTER_ATTRACT, Geometry.CLUSTER_REPEL)
GRID_STRENGTH = (0.25, 3)
GRID_CHI = (0, 0.5, -0.5)
GRID_FAMILY = (Family.GAMMA, Family.POISSON)


def linear_model_only(config: GenConfig) -> bool:
    """Grid sizes that are only used for the contagion experiments."""
    return config.n in LINEAR_MODEL_ONLY_NODES


def parameter_grid(include_large: bool = True, seed: int = 0) -> list[GenConfig]:
    """Cross product of the simulation grid.

    Geometry strength is applied as ``gamma_geo`` for ring/cloud and as
    ``|lam|`` for clusters; geometry ``none`` takes no strength. Each config
    gets its own seed derived from ``seed`` and its grid index.
    """
    nodes = GRID_NODES if include_large else tuple(n for n in GRID_NODES if n not in LINEAR_MODEL_ONLY_NODES)
    shapes = [(Geometry.NONE, 0.0)] + [
        (geo, s) for geo in GRID_GEOMETRY if geo is not Geometry.NONE for s in GRID_STRENGTH
    ]
    out = []
    for idx, (n, sa, (geo, s), chi, fam) in enumerate(
        itertools.product(nodes, GRID_SIGMA_ALPHA, shapes, GRID_CHI, GRID_FAMILY)
    ):
        out.append(GenConfig.with_strength(
            geo, s, n=n, sigma_alpha=float(sa), chi=float(chi), family=fam, seed=derive_seed(seed, idx)
        ))
    return out
