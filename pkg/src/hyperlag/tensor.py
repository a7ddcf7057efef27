"""Weight polynomial and its gradient straight from the incidence matrix.

For an r-graph with edge set E,

    f(x) = sum_{e in E} prod_{i in e} x_i            (= (1/r) A x^r)
    g_j(x) = sum_{e ∋ j} prod_{i in e, i != j} x_i   (= A x^{r-1})

The adjacency tensor is never formed. Leave-one-out products come from
per-edge prefix/suffix products, so nothing is ever divided by a weight and
the cost is Θ(m r). Edges are accumulated in stored order, so results are
bit-reproducible for a given backend.
"""
from __future__ import annotations

import numpy as np

from ._accel import USE_NUMBA, njit
from .hypergraph import Hypergraph


class DimensionMismatch(ValueError):
    pass


@njit
def _value_kernel(edges, x):
    m, r = edges.shape
    total = 0.0
    for e in range(m):
        p = 1.0
        for k in range(r):
            p *= x[edges[e, k]]
        total += p
    return total


@njit
def _value_grad_kernel(edges, x, grad):
    m, r = edges.shape
    prefix = np.empty(r)
    total = 0.0
    for j in range(grad.shape[0]):
        grad[j] = 0.0
    for e in range(m):
        p = 1.0
        for k in range(r):
            prefix[k] = p
            p *= x[edges[e, k]]
        total += p
        s = 1.0
        for k in range(r - 1, -1, -1):
            grad[edges[e, k]] += prefix[k] * s
            s *= x[edges[e, k]]
    return total


def _value_numpy(edges, x):
    if edges.shape[0] == 0:
        return 0.0
    return float(np.prod(x[edges], axis=1).sum())


def _value_grad_numpy(edges, x, grad):
    m, r = edges.shape
    if m == 0:
        grad[:] = 0.0
        return 0.0
    y = x[edges]
    ones = np.ones((m, 1))
    prefix = np.cumprod(np.hstack([ones, y[:, :-1]]), axis=1)
    suffix = np.cumprod(np.hstack([ones, y[:, :0:-1]]), axis=1)[:, ::-1]
    loo = prefix * suffix
    grad[:] = np.bincount(edges.ravel(), weights=loo.ravel(), minlength=x.shape[0])
    return float((prefix[:, -1] * y[:, -1]).sum())


if USE_NUMBA:
    _value_impl, _value_grad_impl = _value_kernel, _value_grad_kernel
else:
    _value_impl, _value_grad_impl = _value_numpy, _value_grad_numpy


def _as_vector(G: Hypergraph, x) -> np.ndarray:
    x = np.ascontiguousarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != G.n:
        raise DimensionMismatch(f"expected a vector of length {G.n}, got shape {x.shape}")
    return x


def weight_value(G: Hypergraph, x) -> float:
    """f(x): sum over edges of the product of their weights. ``x`` need not be feasible."""
    return float(_value_impl(G.edges, _as_vector(G, x)))


def weight_gradient(G: Hypergraph, x) -> np.ndarray:
    """∇f(x), the vector of leave-one-out edge products scattered onto vertices."""
    x = _as_vector(G, x)
    grad = np.empty(G.n)
    _value_grad_impl(G.edges, x, grad)
    return grad


def value_and_gradient(G: Hypergraph, x, out: np.ndarray | None = None):
    """Fused f(x) and ∇f(x) in one pass over the edges.

    ``out`` (length n) receives the gradient when given.
    """
    x = _as_vector(G, x)
    grad = np.empty(G.n) if out is None else out
    f = _value_grad_impl(G.edges, x, grad)
    return float(f), grad
