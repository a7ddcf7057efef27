"""Gradient projection ascent on the simplex with Barzilai-Borwein trial steps.

Each iteration forms the projected direction g = proj(x + alpha*∇f(x)) - x,
backtracks along it with an Armijo test, and picks the next trial step from
the BB1 quotient of the last two iterates and gradients.
"""
from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import asdict, dataclass, field
from typing import NamedTuple

import numpy as np

from .hypergraph import Hypergraph
from .simplex import _repair, gradient_map, project_simplex, sample_uniform
from .tensor import value_and_gradient


class Status(str, enum.Enum):
    RESIDUAL_CONVERGED = "ResidualConverged"
    FSTALL_CONVERGED = "FStallConverged"
    MAX_ITERS = "MaxIters"
    LINE_SEARCH_FAILED = "LineSearchFailed"

    def __str__(self):
        return self.value


class ConfigError(ValueError):
    pass


class InfeasibleStart(ValueError):
    pass


class LineSearchFailed(RuntimeError):
    """No backtrack count up to ``max_backtracks`` passed the Armijo test.

    ``run`` holds the trajectory up to the failing iteration when raised
    from :func:`solve`.
    """

    def __init__(self, msg, run=None):
        super().__init__(msg)
        self.run = run


@dataclass(frozen=True)
class SolverConfig:
    eta: float = 0.01
    beta: float = 0.5
    alpha0: float = 1.0
    alpha_min: float = 1e-3
    alpha_max: float = 1e3
    tol_residual: float = 1e-8
    tol_fstall: float = 1e-8
    max_iters: int = 1000
    max_backtracks: int = 60
    n_starts: int = 10
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.eta <= 0.5:
            raise ConfigError(f"eta must lie in (0, 1/2], got {self.eta}")
        if not 0 < self.beta < 1:
            raise ConfigError(f"beta must lie in (0, 1), got {self.beta}")
        if not 0 < self.alpha_min <= self.alpha0 <= self.alpha_max:
            raise ConfigError(
                f"need 0 < alpha_min <= alpha0 <= alpha_max, got {self.alpha_min}, {self.alpha0}, {self.alpha_max}"
            )
        if self.tol_residual < 0 or self.tol_fstall < 0:
            raise ConfigError("tolerances must be nonnegative")
        if self.max_iters < 0 or self.max_backtracks < 0:
            raise ConfigError("iteration caps must be nonnegative")
        if self.n_starts < 1:
            raise ConfigError(f"n_starts must be >= 1, got {self.n_starts}")

    def as_dict(self):
        return asdict(self)


class IterRecord(NamedTuple):
    """One accepted step. ``f`` and ``g_norm`` are taken at the iterate the step leaves."""

    c: int
    f: float
    g_norm: float
    alpha: float
    rho: float
    backtracks: int
    # feasibility of the iterate the step leaves
    x_min: float
    sum_err: float


@dataclass
class SolverRun:
    x_final: np.ndarray
    lambda_hat: float
    residual: float
    iterations: int
    status: Status
    trace: list[IterRecord] | None = None
    start_index: int = 0
    alphas: list[float] = field(default_factory=list, repr=False)


def bb_step(s, y, alpha_min: float, alpha_max: float, fallback: float | None = None) -> float:
    """|<s,s>/<s,y>| clamped to [alpha_min, alpha_max].

    Returns ``fallback`` (default ``alpha_max``) when <s,y> is zero or the
    quotient is not finite.
    """
    s = np.asarray(s, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if s.shape != y.shape:
        raise ValueError(f"s and y differ in shape: {s.shape} vs {y.shape}")
    if fallback is None:
        fallback = alpha_max
    sty = float(s @ y)
    if sty == 0.0:
        return float(fallback)
    with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
        q = abs(float(s @ s) / sty)
    if not math.isfinite(q):
        return float(fallback)
    return min(max(q, alpha_min), alpha_max)


def line_search(G: Hypergraph, x, g, f_x: float, grad_x, cfg: SolverConfig):
    """Backtrack along ``g`` until f(x + rho g) - f(x) >= eta * rho * <g, ∇f(x)>.

    Returns ``(rho, x_next, f_next, j, grad_next)`` with rho = beta**j for the
    smallest passing j. The gradient at ``x_next`` comes out of the same
    sweep that evaluates ``f_next``.
    """
    # <g, ∇f> >= ||g||^2/alpha >= 0 in exact arithmetic; clamp rounding noise
    slope = max(float(g @ grad_x), 0.0)
    grad_next = np.empty_like(grad_x)
    rho = 1.0
    for j in range(cfg.max_backtracks + 1):
        x_next = _repair(x + rho * g)
        f_next, _ = value_and_gradient(G, x_next, out=grad_next)
        if f_next - f_x >= cfg.eta * rho * slope:
            return rho, x_next, f_next, j, grad_next
        rho *= cfg.beta
    raise LineSearchFailed(
        f"Armijo test failed after {cfg.max_backtracks} backtracks (||g||={np.linalg.norm(g):.3e}, slope={slope:.3e})"
    )


def _check_start(x0, n):
    x = np.array(x0, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != n:
        raise InfeasibleStart(f"start must have length {n}, got shape {x.shape}")
    if not np.isfinite(x).all() or x.min() < 0 or abs(x.sum() - 1.0) > 1e-9:
        raise InfeasibleStart("start point must be nonnegative and sum to 1")
    return _repair(x)


def solve(G: Hypergraph, x0, cfg: SolverConfig | None = None, trace: bool = False, start_index: int = 0) -> SolverRun:
    """Run gradient projection ascent from ``x0`` until a stopping rule fires.

    Rules are checked in order at the top of every iteration c:
    ||proj(x + ∇f) - x|| <= tol_residual, then (c >= 4)
    |f(x_c) - f(x_{c-4})| <= tol_fstall, then c >= max_iters.
    """
    cfg = cfg or SolverConfig()
    x = _check_start(x0, G.n)
    f, grad = value_and_gradient(G, x)
    alpha = cfg.alpha0
    f_hist = deque([f], maxlen=5)
    records = [] if trace else None
    alphas = []
    c = 0
    while True:
        step1 = project_simplex(x + grad) - x
        residual = float(np.linalg.norm(step1))
        if residual <= cfg.tol_residual:
            status = Status.RESIDUAL_CONVERGED
            break
        if c >= 4 and abs(f - f_hist[0]) <= cfg.tol_fstall:
            status = Status.FSTALL_CONVERGED
            break
        if c >= cfg.max_iters:
            status = Status.MAX_ITERS
            break

        g = step1 if alpha == 1.0 else project_simplex(x + alpha * grad) - x
        try:
            rho, x_next, f_next, j, grad_next = line_search(G, x, g, f, grad, cfg)
        except LineSearchFailed as exc:
            run = SolverRun(x, f, residual, c, Status.LINE_SEARCH_FAILED, records, start_index, alphas)
            raise LineSearchFailed(f"iteration {c}: {exc}", run) from None

        alphas.append(alpha)
        if records is not None:
            records.append(
                IterRecord(c, f, float(np.linalg.norm(g)), alpha, rho, j, float(x.min()), abs(float(x.sum()) - 1.0))
            )
        alpha = bb_step(x_next - x, grad_next - grad, cfg.alpha_min, cfg.alpha_max)
        x, f, grad = x_next, f_next, grad_next
        c += 1
        f_hist.append(f)

    return SolverRun(x, f, residual, c, status, records, start_index, alphas)


def start_points(n: int, cfg: SolverConfig) -> list[np.ndarray]:
    """The ``cfg.n_starts`` uniform simplex samples used by :func:`multi_start`.

    Start i draws from its own PCG64 stream spawned off ``SeedSequence(cfg.seed)``,
    so each start depends only on (seed, i).
    """
    seqs = np.random.SeedSequence(cfg.seed).spawn(cfg.n_starts)
    return [sample_uniform(n, np.random.default_rng(s)) for s in seqs]


def _rank_key(run: SolverRun):
    return (-run.lambda_hat, run.residual, run.start_index)


def multi_start(G: Hypergraph, cfg: SolverConfig | None = None, trace: bool = False):
    """Solve from ``cfg.n_starts`` random starts and keep the best.

    Best means largest lambda_hat, then smallest residual, then lowest start
    index. Returns ``(best, runs)``.
    """
    cfg = cfg or SolverConfig()
    runs = [solve(G, x0, cfg, trace=trace, start_index=i) for i, x0 in enumerate(start_points(G.n, cfg))]
    return min(runs, key=_rank_key), runs


def criticality_residual(G: Hypergraph, x) -> float:
    """||proj(x + ∇f(x)) - x||, zero exactly at critical points."""
    return float(np.linalg.norm(gradient_map(G, x, 1.0)))
