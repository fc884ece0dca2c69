"""Simple undirected graphs in compressed adjacency form.

Graphs are loaded from whitespace-delimited edge lists, cleaned (self loops
and duplicate edges removed), and stored as CSR-style sorted neighbor arrays.
Original node identifiers survive as an index <-> label bijection so that
experiment reports can name nodes the way the input file did.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

log = logging.getLogger("trilink")

Label = int | str


class DataError(Exception):
    """Input data violates the expected format or is unusable."""


class ParseError(DataError):
    """A malformed line in an edge-list stream."""


@dataclass(frozen=True)
class EdgeList:
    """Raw edge records with original node labels, pre-deduplication.

    ``times`` is None for static inputs; otherwise one integer timestamp per
    pair. Self loops are dropped at parse time; duplicates are kept so that
    temporal splitting can see every occurrence.
    """

    pairs: tuple[tuple[Label, Label], ...]
    times: tuple[int, ...] | None = None
    self_loops_dropped: int = 0

    def __post_init__(self) -> None:
        if self.times is not None and len(self.times) != len(self.pairs):
            raise ValueError("times and pairs length mismatch")

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[Label, Label]]:
        return iter(self.pairs)

    @property
    def has_timestamps(self) -> bool:
        return self.times is not None


def _token(tok: str) -> Label:
    # Node IDs are opaque; integer-looking tokens become ints so labels
    # round-trip the common numeric formats.
    try:
        return int(tok)
    except ValueError:
        return tok


def load_edge_list(source, has_timestamps: bool = False) -> EdgeList:
    """Parse an edge-list stream into an :class:`EdgeList`.

    ``source`` may be a path or an open text/byte stream. Lines hold "u v"
    (or "u v t" with ``has_timestamps``); '#'/'%' lines and blank lines are
    skipped. Self-loop records are dropped and counted; duplicates are kept.
    """
    if isinstance(source, (str, Path)):
        with open(source, "r", encoding="utf-8") as fh:
            return load_edge_list(fh, has_timestamps)
    want = 3 if has_timestamps else 2
    pairs: list[tuple[Label, Label]] = []
    times: list[int] = []
    loops = 0
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        line = raw.strip()
        if not line or line[0] in "#%":
            continue
        fields = line.split()
        if len(fields) != want:
            raise ParseError(
                f"line {lineno}: expected {want} fields, got {len(fields)}: {line!r}"
            )
        u, v = _token(fields[0]), _token(fields[1])
        if has_timestamps:
            try:
                t = int(fields[2])
            except ValueError:
                raise ParseError(f"line {lineno}: non-integer timestamp {fields[2]!r}")
        if u == v:
            loops += 1
            continue
        pairs.append((u, v))
        if has_timestamps:
            times.append(t)
    if loops:
        log.debug("dropped %d self-loop record(s)", loops)
    return EdgeList(tuple(pairs), tuple(times) if has_timestamps else None, loops)


@dataclass(frozen=True, eq=False)
class Graph:
    """Immutable undirected simple graph.

    ``indices[indptr[i]:indptr[i+1]]`` is the sorted neighbor list of dense
    node ``i``; ``labels[i]`` is its original identifier. Safe to share
    read-only across workers; never mutate the arrays.
    """

    indptr: np.ndarray
    indices: np.ndarray
    labels: tuple[Label, ...]

    def __post_init__(self) -> None:
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @cached_property
    def degrees(self) -> np.ndarray:
        d = np.diff(self.indptr)
        d.setflags(write=False)
        return d

    @cached_property
    def adjacency(self) -> sp.csr_matrix:
        """0/1 adjacency as float CSR (copy-backed, indices sorted)."""
        a = sp.csr_matrix(
            (np.ones(len(self.indices)), self.indices.copy(), self.indptr.copy()),
            shape=(self.n, self.n),
        )
        a.has_sorted_indices = True
        return a

    @cached_property
    def label_index(self) -> dict[Label, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def _check_node(self, i: int) -> None:
        if not 0 <= i < self.n:
            raise IndexError(f"node {i} out of range [0, {self.n})")

    def neighbors(self, i: int) -> np.ndarray:
        """Sorted neighbor indices of ``i`` (read-only view)."""
        self._check_node(i)
        return self.indices[self.indptr[i] : self.indptr[i + 1]]

    def degree(self, i: int) -> int:
        self._check_node(i)
        return int(self.indptr[i + 1] - self.indptr[i])

    def has_edge(self, i: int, j: int) -> bool:
        self._check_node(i)
        self._check_node(j)
        row = self.neighbors(i)
        k = np.searchsorted(row, j)
        return k < len(row) and row[k] == j

    def edge_array(self) -> np.ndarray:
        """All edges as an (m, 2) array with u < v, lexicographically sorted."""
        src = np.repeat(np.arange(self.n), self.degrees)
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])


def build_graph(edges: EdgeList | Iterable[tuple[Label, Label]]) -> Graph:
    """Build a simple undirected graph, assigning dense indices in
    first-appearance order and collapsing duplicate/reversed records."""
    pairs = edges.pairs if isinstance(edges, EdgeList) else tuple(edges)
    if not pairs:
        raise DataError("cannot build a graph from an empty edge list")
    index: dict[Label, int] = {}
    seen: set[tuple[int, int]] = set()
    dedup: list[tuple[int, int]] = []
    loops = dups = 0
    for u, v in pairs:
        if u == v:
            loops += 1
            continue
        iu = index.setdefault(u, len(index))
        iv = index.setdefault(v, len(index))
        key = (iu, iv) if iu < iv else (iv, iu)
        if key in seen:
            dups += 1
            continue
        seen.add(key)
        dedup.append(key)
    if loops or dups:
        log.debug("build_graph removed %d self-loop(s), %d duplicate(s)", loops, dups)
    if not dedup:
        raise DataError("edge list contains no usable edges")
    n = len(index)
    e = np.asarray(dedup, dtype=np.int64)
    und = np.vstack([e, e[:, ::-1]])
    order = np.lexsort((und[:, 1], und[:, 0]))
    und = und[order]
    indptr = np.zeros(n + 1, dtype=np.int64)
    indptr[1:] = np.cumsum(np.bincount(und[:, 0], minlength=n))
    labels = [None] * n
    for lab, i in index.items():
        labels[i] = lab
    return Graph(indptr=indptr, indices=und[:, 1].copy(), labels=tuple(labels))


def to_edge_list(g: Graph) -> EdgeList:
    """Edges of ``g`` as original-label pairs (canonical dense order)."""
    arr = g.edge_array()
    return EdgeList(tuple((g.labels[u], g.labels[v]) for u, v in arr))


def write_edge_list(path, edges: EdgeList | Graph) -> None:
    if isinstance(edges, Graph):
        edges = to_edge_list(edges)
    with open(path, "w", encoding="utf-8") as fh:
        if edges.times is None:
            for u, v in edges.pairs:
                fh.write(f"{u} {v}\n")
        else:
            for (u, v), t in zip(edges.pairs, edges.times):
                fh.write(f"{u} {v} {t}\n")


def subgraph(g: Graph, nodes: np.ndarray) -> Graph:
    """Induced subgraph on sorted dense ``nodes``, densely re-indexed."""
    nodes = np.asarray(nodes, dtype=np.int64)
    a = g.adjacency[nodes][:, nodes].tocsr()
    a.sort_indices()
    return Graph(
        indptr=a.indptr.astype(np.int64),
        indices=a.indices.astype(np.int64),
        labels=tuple(g.labels[i] for i in nodes),
    )


def largest_connected_component(g: Graph) -> Graph:
    """Induced subgraph on the largest component (ties: smallest member
    index wins), re-indexed with the original labels carried along."""
    ncomp, comp = connected_components(g.adjacency, directed=False)
    if ncomp == 1:
        return g
    sizes = np.bincount(comp, minlength=ncomp)
    # np.unique returns first-occurrence positions, i.e. each component's
    # smallest dense index.
    comp_ids, first = np.unique(comp, return_index=True)
    best = comp_ids[np.lexsort((first[comp_ids], -sizes[comp_ids]))[0]]
    return subgraph(g, np.flatnonzero(comp == best))


def edge_neighborhood(g: Graph, u: int, v: int) -> np.ndarray:
    """Union of the endpoints' neighborhoods minus both endpoints.

    (u, v) need not be an edge of ``g``; held-out pairs are scored too.
    """
    if u == v:
        raise ValueError("edge neighborhood requires two distinct endpoints")
    nb = np.union1d(g.neighbors(u), g.neighbors(v))
    return nb[(nb != u) & (nb != v)]
