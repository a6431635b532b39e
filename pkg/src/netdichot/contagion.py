"""Two-step linear contagion model on a valued network.

Outcomes are generated as

    Y1_i = mu + gamma * Y0_i + beta * sum_j W_ij Y0_j + eps_i

with ``W`` the valued tie matrix, then the contagion coefficient ``beta``
is re-estimated by OLS using either ``W`` itself or a binary version of it.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import NamedTuple, Optional, Sequence

import numpy as np

from .dichotomize import censor_then_symmetrize
from .graphs import UndirectedGraph, ValuedGraph
from .seeding import derive_seed, rng_for

COLUMNS = ("intercept", "prior_outcome", "exposure")


class IdentifiabilityError(ValueError):
    """The regression design does not have full column rank."""


@dataclass(frozen=True)
class LmConfig:
    mu_lm: float = 0.0
    gamma_lm: float = 0.5
    beta: float = 0.1
    sigma_eps: float = 1.0
    rho_deg: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.sigma_eps < 0:
            raise ValueError("sigma_eps must be nonnegative")
        if not -1 <= self.rho_deg <= 1:
            raise ValueError("rho_deg must lie in [-1, 1]")

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True, eq=False)
class ContagionPanel:
    y0: np.ndarray
    y1: np.ndarray
    config: LmConfig
    graph_id: str = ""


class FitResult(NamedTuple):
    coef: np.ndarray      # (mu, gamma, beta)
    se: np.ndarray
    sigma2: float
    condition: float

    @property
    def beta(self) -> float:
        return float(self.coef[2])

    @property
    def beta_se(self) -> float:
        return float(self.se[2])


def _standardize(x: np.ndarray) -> np.ndarray:
    sd = x.std()
    return np.zeros_like(x) if sd == 0 else (x - x.mean()) / sd


def simulate_two_step(
    g: ValuedGraph, cfg: LmConfig, seed: Optional[int] = None, graph_id: str = ""
) -> ContagionPanel:
    """Draw ``Y0`` correlated with weighted degree, then ``Y1`` from the model.

    ``Y0 = rho * z(degree) + sqrt(1 - rho**2) * N(0, 1)`` where ``z`` is the
    standardized weighted degree.
    """
    seed = cfg.seed if seed is None else seed
    rng = rng_for(seed, 0)
    w = g.weights
    deg = _standardize(w.sum(axis=1))
    rho = cfg.rho_deg
    y0 = rho * deg + math.sqrt(1 - rho * rho) * rng.standard_normal(g.n)
    eps = rng.standard_normal(g.n) * cfg.sigma_eps
    y1 = cfg.mu_lm + cfg.gamma_lm * y0 + cfg.beta * (w @ y0) + eps
    return ContagionPanel(y0, y1, cfg, graph_id)


def design_matrix(panel: ContagionPanel, adjacency: UndirectedGraph) -> np.ndarray:
    return np.column_stack([np.ones_like(panel.y0), panel.y0, adjacency.weights @ panel.y0])


def _collinear_column(x: np.ndarray, tol: float) -> str:
    for k in reversed(range(x.shape[1])):
        if np.linalg.matrix_rank(np.delete(x, k, axis=1), tol=tol) == np.linalg.matrix_rank(x, tol=tol):
            return COLUMNS[k]
    return COLUMNS[-1]


def ols_fit(panel: ContagionPanel, adjacency: UndirectedGraph) -> FitResult:
    """OLS of ``Y1`` on ``[1, Y0, A @ Y0]`` with conventional standard errors.

    A fit that interpolates the data to rounding error is reported with
    zero residual variance.
    """
    n = panel.y0.size
    if n < 4:
        raise ValueError(f"need at least 4 nodes to fit 3 coefficients, got {n}")
    x = design_matrix(panel, adjacency)
    y = panel.y1
    # scale columns so the rank test is not fooled by units
    norms = np.linalg.norm(x, axis=0)
    if np.any(norms == 0):
        raise IdentifiabilityError(f"column '{COLUMNS[int(np.argmin(norms))]}' is identically zero")
    xs = x / norms
    sv = np.linalg.svd(xs, compute_uv=False)
    tol = sv[0] * max(x.shape) * np.finfo(float).eps
    if sv[-1] <= tol:
        raise IdentifiabilityError(f"design is rank deficient; column '{_collinear_column(xs, tol)}' is collinear")
    coef_s, *_ = np.linalg.lstsq(xs, y, rcond=None)
    coef = coef_s / norms
    resid = y - x @ coef
    rss = float(resid @ resid)
    if math.sqrt(rss) <= 1e-12 * max(float(np.linalg.norm(y)), 1.0):
        rss = 0.0
    sigma2 = rss / (n - 3)
    cov_s = sigma2 * np.linalg.inv(xs.T @ xs)
    se = np.sqrt(np.maximum(np.diag(cov_s), 0.0)) / norms
    return FitResult(coef, se, sigma2, float(sv[0] / sv[-1]))


def _matches_truth(estimate: float, truth: float) -> bool:
    return abs(estimate - truth) <= 1e-9 * max(abs(truth), 1.0)


def beta_tstat(fit: FitResult, beta_true: float) -> float:
    """``(beta_hat - beta_true) / se(beta_hat)``.

    An exact fit has zero standard error; it gives 0 when the estimate equals
    the truth to rounding error and raises otherwise.
    """
    diff = fit.beta - beta_true
    if fit.beta_se > 0:
        return diff / fit.beta_se
    if _matches_truth(fit.beta, beta_true):
        return 0.0
    raise ZeroDivisionError("beta standard error is zero but the estimate differs from the truth")


class ContagionRecord(NamedTuple):
    k: Optional[int]          # None for the valued-adjacency fit
    replicate: int
    beta_hat: float
    se: float
    tstat: float


@dataclass
class MseResult:
    ladder: list
    replicates: int
    beta: float
    records: list = field(default_factory=list)
    mse_valued: float = math.nan
    mse: dict = field(default_factory=dict)
    ratio: dict = field(default_factory=dict)
    excluded: dict = field(default_factory=dict)

    @property
    def min_ratio(self) -> float:
        finite = [r for r in self.ratio.values() if not math.isnan(r)]
        return min(finite) if finite else math.nan

    @property
    def best_k(self) -> Optional[int]:
        if not self.ratio:
            return None
        return min(self.ratio, key=lambda k: (self.ratio[k] if not math.isnan(self.ratio[k]) else math.inf, k))

    @property
    def ratio_is_infinite(self) -> bool:
        return self.mse_valued == 0


def _ratio(mse_k: float, mse_valued: float) -> float:
    if math.isnan(mse_k) or math.isnan(mse_valued):
        return math.nan
    if mse_valued == 0:
        return 1.0 if mse_k == 0 else math.inf
    return mse_k / mse_valued


def mse_experiment(
    g: ValuedGraph,
    cfg: LmConfig,
    ladder: Sequence[int],
    replicates: int,
    graph_id: str = "",
) -> MseResult:
    """Mean squared error of ``beta_hat`` under censoring, relative to valued.

    Each replicate draws a fresh panel on ``g`` and fits it with ``g`` and
    with every censored-and-symmetrized version (fresh tie-break seed per
    replicate and ``k``). Failed fits are counted in ``excluded`` and left
    out of the means. Estimates equal to ``beta`` up to rounding count as
    exact; when every valued fit is exact the ratio is reported as ``inf``
    (``ratio_is_infinite``).
    """
    if replicates < 2:
        raise ValueError("replicates must be at least 2")
    ladder = list(ladder)
    out = MseResult(ladder, replicates, cfg.beta)
    sq_valued = []
    sq = {k: [] for k in ladder}
    out.excluded = {k: 0 for k in [None] + ladder}
    for r in range(replicates):
        panel = simulate_two_step(g, cfg, derive_seed(cfg.seed, 0, r), graph_id)
        for k in [None] + ladder:
            adj = g if k is None else censor_then_symmetrize(g, k, derive_seed(cfg.seed, 1, r, k))
            try:
                fit = ols_fit(panel, adj)
            except IdentifiabilityError:
                out.excluded[k] += 1
                continue
            try:
                t = beta_tstat(fit, cfg.beta)
            except ZeroDivisionError:
                t = math.copysign(math.inf, fit.beta - cfg.beta)
            out.records.append(ContagionRecord(k, r, fit.beta, fit.beta_se, t))
            err = 0.0 if _matches_truth(fit.beta, cfg.beta) else (fit.beta - cfg.beta) ** 2
            (sq_valued if k is None else sq[k]).append(err)
    out.mse_valued = float(np.mean(sq_valued)) if sq_valued else math.nan
    for k in ladder:
        out.mse[k] = float(np.mean(sq[k])) if sq[k] else math.nan
        out.ratio[k] = _ratio(out.mse[k], out.mse_valued)
    return out
