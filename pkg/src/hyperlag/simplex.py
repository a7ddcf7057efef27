"""Euclidean projection onto the probability simplex and uniform sampling from it."""
from __future__ import annotations

import numpy as np

from .hypergraph import Hypergraph
from .tensor import weight_gradient


class NonFiniteInput(ValueError):
    pass


# points this close to the simplex are returned as-is; it keeps projection
# idempotent despite the few-ulp drift left by _repair
_FIXED_POINT_TOL = 1e-14


def _repair(x: np.ndarray) -> np.ndarray:
    # push the rounding residual of sum(x) into the largest entry
    resid = x.sum() - 1.0
    if resid != 0.0:
        x[np.argmax(x)] -= resid
    return x


def project_simplex(a) -> np.ndarray:
    """Return argmin ||x - a|| over {x >= 0, sum(x) = 1}.

    Sort-based O(n log n) method: with b the entries of ``a`` in decreasing
    order, take the largest j with j*b_j + 1 - (b_1 + ... + b_j) > 0, shift
    by lam = (1 - (b_1 + ... + b_j)) / j and clip at zero. Inputs that are
    already nonnegative with unit sum (to 1e-14) come back unchanged.
    """
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 1 or a.shape[0] == 0:
        raise ValueError(f"expected a non-empty vector, got shape {a.shape}")
    if not np.isfinite(a).all():
        raise NonFiniteInput("cannot project a vector with NaN or inf entries")
    if a.min() >= 0.0 and abs(a.sum() - 1.0) <= _FIXED_POINT_TOL:
        return a.copy()
    b = np.sort(a)[::-1]
    csum = np.cumsum(b)
    j = np.arange(1, a.shape[0] + 1)
    ell = np.flatnonzero(j * b + 1.0 - csum > 0)[-1] + 1
    lam = (1.0 - csum[ell - 1]) / ell
    return _repair(np.maximum(a + lam, 0.0))


def sample_uniform(n: int, rng: np.random.Generator) -> np.ndarray:
    """A point uniformly distributed on the simplex (normalized exponentials)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    e = rng.standard_exponential(n)
    return _repair(e / e.sum())


def gradient_map(G: Hypergraph, x, alpha: float, grad=None) -> np.ndarray:
    """g^alpha(x) = proj(x + alpha * ∇f(x)) - x.

    Zero exactly at critical points. Pass ``grad`` to reuse a gradient
    already computed at ``x``.
    """
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    x = np.asarray(x, dtype=np.float64)
    if grad is None:
        grad = weight_gradient(G, x)
    return project_simplex(x + alpha * grad) - x
