"""Uniform hypergraphs stored as a compact incidence matrix.

Vertices are 1-based at every external boundary (constructor input, ``.hg``
files, :meth:`Hypergraph.edge_list`) and 0-based in ``Hypergraph.edges``.
"""
from __future__ import annotations

import io
import itertools
import math
import os
from dataclasses import dataclass

import numpy as np


class HypergraphError(ValueError):
    """Base class for invalid hypergraph input."""


class EdgeArity(HypergraphError):
    pass


class VertexOutOfRange(HypergraphError):
    pass


class RepeatedVertexInEdge(HypergraphError):
    pass


class DuplicateEdge(HypergraphError):
    pass


class HypergraphFormatError(HypergraphError):
    """Malformed ``.hg`` text."""


@dataclass(frozen=True, eq=False)
class Hypergraph:
    """An r-uniform hypergraph on vertices ``0..n-1``.

    ``edges`` is the ``(m, r)`` incidence matrix, each row strictly increasing.
    The array is read-only; build instances through :func:`new_hypergraph`
    or the generators so the invariants hold.
    """

    r: int
    n: int
    edges: np.ndarray

    @property
    def m(self) -> int:
        return int(self.edges.shape[0])

    def edge_list(self) -> list[list[int]]:
        """Edges as 1-based vertex lists, in stored order."""
        return (self.edges + 1).tolist()

    def __eq__(self, other):
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.r == other.r and self.n == other.n and np.array_equal(self.edges, other.edges)

    def __hash__(self):
        return hash((self.r, self.n, self.edges.tobytes()))

    def __repr__(self):
        return f"Hypergraph(r={self.r}, n={self.n}, m={self.m})"


def _freeze(r: int, n: int, edges0: np.ndarray) -> Hypergraph:
    edges0 = np.ascontiguousarray(edges0, dtype=np.int64).reshape(-1, r)
    edges0.setflags(write=False)
    return Hypergraph(r=int(r), n=int(n), edges=edges0)


def _validate(r: int, n: int, edges0: np.ndarray) -> np.ndarray:
    """Sort rows and check the invariants on a 0-based ``(m, r)`` array."""
    edges0 = np.sort(edges0, axis=1)
    if edges0.size:
        bad = (edges0 < 0) | (edges0 >= n)
        if bad.any():
            row = int(np.flatnonzero(bad.any(axis=1))[0])
            raise VertexOutOfRange(f"edge {row} has a vertex outside 1..{n}: {(edges0[row] + 1).tolist()}")
        rep = np.diff(edges0, axis=1) == 0
        if rep.any():
            row = int(np.flatnonzero(rep.any(axis=1))[0])
            raise RepeatedVertexInEdge(f"edge {row} repeats a vertex: {(edges0[row] + 1).tolist()}")
        _, first, counts = np.unique(edges0, axis=0, return_index=True, return_counts=True)
        if (counts > 1).any():
            row = int(first[np.flatnonzero(counts > 1)[0]])
            raise DuplicateEdge(f"edge {(edges0[row] + 1).tolist()} appears more than once")
    return edges0


def _check_order(r, n):
    if int(r) != r or r < 2:
        raise HypergraphError(f"edge size r must be an integer >= 2, got {r}")
    if int(n) != n or n < 1:
        raise HypergraphError(f"vertex count n must be a positive integer, got {n}")


def new_hypergraph(r: int, n: int, raw_edges) -> Hypergraph:
    """Validate 1-based edges and return a :class:`Hypergraph`.

    Each edge is sorted; edges keep their given order. Raises
    :class:`EdgeArity`, :class:`VertexOutOfRange`,
    :class:`RepeatedVertexInEdge` or :class:`DuplicateEdge`.
    """
    _check_order(r, n)
    if isinstance(raw_edges, np.ndarray):
        arr = raw_edges.astype(np.int64, copy=False)
        if arr.size == 0:
            arr = arr.reshape(0, r)
        if arr.ndim != 2 or arr.shape[1] != r:
            raise EdgeArity(f"expected an (m, {r}) edge array, got shape {arr.shape}")
    else:
        rows = [list(e) for e in raw_edges]
        for i, e in enumerate(rows):
            if len(e) != r:
                raise EdgeArity(f"edge {i} has {len(e)} vertices, expected {r}: {e}")
        arr = np.array(rows, dtype=np.int64).reshape(len(rows), r)
    return _freeze(r, n, _validate(r, n, arr - 1))


def toy_hypergraph() -> Hypergraph:
    """The 12-vertex, 13-edge 3-graph made of three K_4^3 cliques joined by {4, 8, 12}."""
    cols = [
        [1, 1, 1, 2, 5, 5, 5, 6, 9, 9, 9, 10, 4],
        [2, 2, 3, 3, 6, 6, 7, 7, 10, 10, 11, 11, 8],
        [3, 4, 4, 4, 7, 8, 8, 8, 11, 12, 12, 12, 12],
    ]
    return new_hypergraph(3, 12, np.array(cols).T)


def gen_complete(n: int, r: int) -> Hypergraph:
    """K_n^r with edges in lexicographic order."""
    if r < 1 or n < 1 or r > n:
        raise HypergraphError(f"complete graph needs 1 <= r <= n, got n={n}, r={r}")
    m = math.comb(n, r)
    flat = np.fromiter(
        itertools.chain.from_iterable(itertools.combinations(range(n), r)),
        dtype=np.int64,
        count=m * r,
    )
    # r = 1 is allowed here although new_hypergraph requires r >= 2
    return _freeze(r, n, flat.reshape(m, r))


_ICOSAHEDRON_FACES = np.array(
    [
        [0, 11, 5], [0, 5, 1], [0, 1, 7], [0, 7, 10], [0, 10, 11],
        [1, 5, 9], [5, 11, 4], [11, 10, 2], [10, 7, 6], [7, 1, 8],
        [3, 9, 4], [3, 4, 2], [3, 2, 6], [3, 6, 8], [3, 8, 9],
        [4, 9, 5], [2, 4, 11], [6, 2, 10], [8, 6, 7], [9, 8, 1],
    ],
    dtype=np.int64,
)


def _subdivide(n: int, faces: np.ndarray) -> tuple[int, np.ndarray]:
    a, b, c = faces[:, 0], faces[:, 1], faces[:, 2]
    m = faces.shape[0]
    pairs = np.concatenate([np.stack([a, b], 1), np.stack([b, c], 1), np.stack([c, a], 1)])
    pairs.sort(axis=1)
    # one midpoint per undirected mesh edge
    _, inv = np.unique(pairs, axis=0, return_inverse=True)
    mid = n + inv.reshape(-1)
    ab, bc, ca = mid[:m], mid[m : 2 * m], mid[2 * m :]
    new_faces = np.concatenate(
        [
            np.stack([a, ab, ca], 1),
            np.stack([b, ab, bc], 1),
            np.stack([c, ca, bc], 1),
            np.stack([ab, bc, ca], 1),
        ]
    )
    return n + int(inv.max()) + 1, new_faces


def gen_icosphere(level: int) -> Hypergraph:
    """Faces of the icosahedron after ``level`` rounds of 4-way subdivision.

    Purely combinatorial: n = 10*4**level + 2, m = 20*4**level.
    """
    if level < 0:
        raise HypergraphError(f"level must be >= 0, got {level}")
    n, faces = 12, _ICOSAHEDRON_FACES
    for _ in range(level):
        n, faces = _subdivide(n, faces)
    return _freeze(3, n, np.sort(faces, axis=1))


def gen_frankl_star(t: int) -> Hypergraph:
    """The t+2 disjoint triples plus every triple meeting each of them at most once.

    Block k (1-based) is {3k-2, 3k-1, 3k}. Blocks come first, then the
    transversal triples in lexicographic order.
    """
    if t < 1:
        raise HypergraphError(f"t must be >= 1, got {t}")
    k = t + 2
    n = 3 * k
    blocks = np.arange(n, dtype=np.int64).reshape(k, 3)
    # a transversal triple picks three distinct blocks and one vertex in each
    trans = [
        (3 * p + i, 3 * q + j, 3 * s + l)
        for p, q, s in itertools.combinations(range(k), 3)
        for i in range(3)
        for j in range(3)
        for l in range(3)
    ]
    trans = np.array(trans, dtype=np.int64).reshape(-1, 3)
    trans = trans[np.lexsort(trans.T[::-1])]
    return _freeze(3, n, np.concatenate([blocks, trans]))


# enumerate-and-pick below this many candidate edges, rejection sampling above
_DENSE_LIMIT = 1_000_000


def gen_random(n: int, r: int, m: int, seed: int) -> Hypergraph:
    """``m`` distinct r-subsets of ``1..n`` drawn uniformly, reproducible from ``seed``."""
    _check_order(r, n)
    total = math.comb(n, r)
    if m < 0 or m > total:
        raise HypergraphError(f"cannot draw {m} distinct edges from C({n},{r}) = {total}")
    rng = np.random.default_rng(seed)
    if total <= _DENSE_LIMIT:
        pick = rng.choice(total, size=m, replace=False)
        flat = np.fromiter(
            itertools.chain.from_iterable(itertools.combinations(range(n), r)),
            dtype=np.int64,
            count=total * r,
        )
        return _freeze(r, n, flat.reshape(total, r)[pick])

    seen: set[tuple[int, ...]] = set()
    rows: list[tuple[int, ...]] = []
    while len(rows) < m:
        batch = np.sort(rng.integers(0, n, size=(2 * (m - len(rows)) + 8, r)), axis=1)
        ok = (np.diff(batch, axis=1) > 0).all(axis=1)
        for row in map(tuple, batch[ok].tolist()):
            if row not in seen:
                seen.add(row)
                rows.append(row)
                if len(rows) == m:
                    break
    return _freeze(r, n, np.array(rows, dtype=np.int64).reshape(m, r))


def degrees(G: Hypergraph) -> np.ndarray:
    """Number of edges containing each vertex (index 0 is vertex 1)."""
    return np.bincount(G.edges.ravel(), minlength=G.n)


def parse_hg(text: str) -> Hypergraph:
    """Parse ``.hg`` text: ``r n m`` header then m lines of 1-based vertices."""
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if s and not s.startswith("#"):
            lines.append((lineno, s))
    if not lines:
        raise HypergraphFormatError("missing 'r n m' header")
    lineno, header = lines[0]
    try:
        r, n, m = (int(tok) for tok in header.split())
    except ValueError:
        raise HypergraphFormatError(f"line {lineno}: header must be three integers 'r n m', got {header!r}") from None
    body = lines[1:]
    if len(body) != m:
        raise HypergraphFormatError(f"header declares {m} edges but {len(body)} edge lines follow")
    rows = []
    for lineno, s in body:
        try:
            rows.append([int(tok) for tok in s.split()])
        except ValueError:
            raise HypergraphFormatError(f"line {lineno}: non-integer vertex in {s!r}") from None
    return new_hypergraph(r, n, rows)


def read_hg(path) -> Hypergraph:
    with open(path, encoding="utf-8") as fh:
        return parse_hg(fh.read())


def format_hg(G: Hypergraph, comment: str | None = None) -> str:
    buf = io.StringIO()
    if comment:
        for line in comment.splitlines():
            buf.write(f"# {line}\n")
    buf.write(f"{G.r} {G.n} {G.m}\n")
    if G.m:
        np.savetxt(buf, G.edges + 1, fmt="%d")
    return buf.getvalue()


def write_hg(G: Hypergraph, path, comment: str | None = None) -> None:
    path = os.fspath(path)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_hg(G, comment))
