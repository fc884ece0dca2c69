"""Triangle enumeration and implicit products with the triangle tensor.

The (symmetric, 0/1) triangle indicator tensor is never materialized: every
product is an accumulation over the canonical triangle list, so all costs are
linear in the number of triangles.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True, eq=False)
class TriangleSet:
    """Canonical triangle list of a graph: rows (i, j, k) with i < j < k."""

    n: int
    triples: np.ndarray  # shape (count, 3), int64

    def __post_init__(self) -> None:
        self.triples.setflags(write=False)

    @property
    def count(self) -> int:
        return len(self.triples)


def enumerate_triangles(g: Graph) -> TriangleSet:
    """All triangles of ``g`` via sorted neighbor-list intersection.

    Each triangle appears exactly once, from its lexicographically smallest
    edge; the work per edge is bounded by the two endpoint degrees.
    """
    indptr, indices = g.indptr, g.indices
    chunks: list[np.ndarray] = []
    for i in range(g.n):
        nbrs = indices[indptr[i] : indptr[i + 1]]
        fwd = nbrs[nbrs > i]
        for j in fwd:
            nj = indices[indptr[j] : indptr[j + 1]]
            common = np.intersect1d(fwd, nj, assume_unique=True)
            ks = common[common > j]
            if len(ks):
                tri = np.empty((len(ks), 3), dtype=np.int64)
                tri[:, 0] = i
                tri[:, 1] = j
                tri[:, 2] = ks
                chunks.append(tri)
    if chunks:
        triples = np.vstack(chunks)
    else:
        triples = np.empty((0, 3), dtype=np.int64)
    return TriangleSet(n=g.n, triples=triples)


def _check_len(ts: TriangleSet, vec: np.ndarray, name: str) -> np.ndarray:
    vec = np.asarray(vec, dtype=np.float64)
    if vec.shape != (ts.n,):
        raise ValueError(f"{name} has length {vec.shape}, expected ({ts.n},)")
    return vec


# Accumulate in fixed-size blocks so the gather/scatter temporaries stay
# cache-resident regardless of the triangle count.
_BLOCK = 32768


def tensor_bilinear(ts: TriangleSet, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """z with z_i = sum_{j,k} T(i,j,k) * y(j) * x(k).

    Per canonical triangle (a, b, c) each corner accumulates both ordered
    pairs of the other two corners, which realizes the fully symmetric
    tensor. Runtime is proportional to the triangle count.
    """
    x = _check_len(ts, x, "x")
    y = _check_len(ts, y, "y")
    z = np.zeros(ts.n)
    for lo in range(0, ts.count, _BLOCK):
        a, b, c = ts.triples[lo : lo + _BLOCK].T
        idx = np.concatenate([a, b, c])
        w = np.concatenate(
            [
                y[b] * x[c] + y[c] * x[b],
                y[a] * x[c] + y[c] * x[a],
                y[a] * x[b] + y[b] * x[a],
            ]
        )
        z += np.bincount(idx, weights=w, minlength=ts.n)
    return z


def tensor_row_sums(ts: TriangleSet, x: np.ndarray) -> np.ndarray:
    """Row sums of the matrix T[x], i.e. tensor_bilinear(ts, x, ones).

    T[x] is symmetric, so these are also its column sums; the reinforced
    power iteration needs them every step to renormalize columns.
    """
    x = _check_len(ts, x, "x")
    z = np.zeros(ts.n)
    for lo in range(0, ts.count, _BLOCK):
        a, b, c = ts.triples[lo : lo + _BLOCK].T
        idx = np.concatenate([a, b, c])
        w = np.concatenate([x[b] + x[c], x[a] + x[c], x[a] + x[b]])
        z += np.bincount(idx, weights=w, minlength=ts.n)
    return z


def reinforced_matrix_apply(
    g: Graph, ts: TriangleSet, x: np.ndarray, y: np.ndarray, gamma: float
) -> np.ndarray:
    """(gamma * T[x] + A) @ y without forming T[x]."""
    if gamma < 0:
        raise ValueError("gamma must be nonnegative")
    y = _check_len(ts, y, "y")
    return gamma * tensor_bilinear(ts, x, y) + g.adjacency @ y


def triangle_edges(ts: TriangleSet) -> set[tuple[int, int]]:
    """The set of edges (u < v) participating in at least one triangle."""
    out: set[tuple[int, int]] = set()
    for a, b, c in ts.triples:
        out.add((int(a), int(b)))
        out.add((int(a), int(c)))
        out.add((int(b), int(c)))
    return out
