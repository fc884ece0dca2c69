"""Generalized preferential attachment graphs for synthetic experiments.

Growth starts from a small clique. Each event either inserts a fresh node
with one degree-proportional edge, or (with the configured probability) adds
a new edge whose endpoints are both drawn proportionally to degree.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import EdgeList, Graph, build_graph

# An edge event that cannot find a free slot after this many draws degrades
# to a node event, which always succeeds (keeps generation total, e.g. when
# the current graph is complete).
_MAX_EDGE_RETRIES = 50


@dataclass(frozen=True)
class GpaParams:
    p_edge: float
    steps: int
    seed_clique: int = 5
    rng_seed: int = 0

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_edge <= 1.0:
            raise ValueError("p_edge must be in [0, 1]")
        if self.steps < 0:
            raise ValueError("steps must be nonnegative")
        if self.seed_clique < 2:
            raise ValueError("seed clique needs at least 2 nodes")


def generate_gpa(params: GpaParams) -> Graph:
    """Grow a graph by degree-proportional attachment; deterministic per seed.

    Every event adds exactly one edge, so the result is always connected and
    simple; node labels are 0..n-1 in creation order.
    """
    rng = np.random.default_rng(params.rng_seed)
    c = params.seed_clique
    edges: list[tuple[int, int]] = [(i, j) for i in range(c) for j in range(i + 1, c)]
    edge_set = set(edges)
    # stubs lists every edge endpoint, so a uniform draw from it is a
    # degree-proportional node draw.
    stubs: list[int] = [x for e in edges for x in e]
    n = c
    for _ in range(params.steps):
        added = False
        if rng.random() < params.p_edge:
            for _ in range(_MAX_EDGE_RETRIES):
                a = stubs[rng.integers(len(stubs))]
                b = stubs[rng.integers(len(stubs))]
                if a == b:
                    continue
                key = (a, b) if a < b else (b, a)
                if key in edge_set:
                    continue
                edges.append(key)
                edge_set.add(key)
                stubs.extend(key)
                added = True
                break
        if not added:
            t = stubs[rng.integers(len(stubs))]
            key = (t, n)
            edges.append(key)
            edge_set.add(key)
            stubs.extend(key)
            n += 1
    return build_graph(EdgeList(tuple(edges)))
