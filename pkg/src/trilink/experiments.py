"""Dataset splitting, success-probability / AUC evaluation, and the trial
harnesses for pairwise and standard link prediction.

A split always keeps the original edge universe intact: train edges and
held-out test edges partition the input, the train side is rebuilt and
reduced to its largest connected component, and test edges whose endpoints
fell out of that component stay in the record but are flagged unusable.
"""

from __future__ import annotations

import hashlib
import json
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.stats import rankdata

from .diffusion import (
    DiffusionParams,
    ScoreVector,
    make_seed,
    pagerank,
    pagerank_many,
    pair_seeded_pagerank,
    trpr,
)
from .graph import DataError, EdgeList, Graph, Label, build_graph, largest_connected_component
from .local import LOCAL_METHODS, score_all_nodes
from .triangles import TriangleSet, enumerate_triangles, triangle_edges

log = logging.getLogger("trilink")


# ---------------------------------------------------------------------------
# policies and reports


@dataclass(frozen=True)
class EvalPolicy:
    """k: top-k cutoff; truth_mode: 'and' needs both wedge edges held out,
    'or' exactly one (the other in train); candidate_rule: which nodes are
    struck from the ranking ('either' = adjacent to either seed endpoint,
    'both' = adjacent to both). None derives the rule from the truth mode,
    which keeps ground-truth nodes rankable in both modes."""

    k: int = 5
    truth_mode: str = "and"
    candidate_rule: str | None = None

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.truth_mode not in ("and", "or"):
            raise ValueError("truth_mode must be 'and' or 'or'")
        if self.candidate_rule not in (None, "either", "both"):
            raise ValueError("candidate_rule must be None, 'either' or 'both'")

    @property
    def rule(self) -> str:
        if self.candidate_rule is not None:
            return self.candidate_rule
        return "either" if self.truth_mode == "and" else "both"


@dataclass(frozen=True)
class TrialReport:
    """One scored trial: rank of the best ground-truth node and the top-k hit
    indicator. best_rank is -1 when no ground-truth node was rankable."""

    method: str
    k: int
    seed_u: Label
    seed_v: Label
    truth_count: int
    best_rank: int
    sp: int


@dataclass(frozen=True, eq=False)
class SplitDataset:
    """A train graph plus held-out test edges (original labels)."""

    train: Graph
    test_pairs: tuple[tuple[Label, Label], ...]
    protocol: str
    rng_seed: int | None = None
    meta: dict = field(default_factory=dict)

    @cached_property
    def test_adjacency(self) -> dict[int, set[int]]:
        """Test edges mapped to train dense indices; pairs with an endpoint
        outside the train component are excluded (they are unusable)."""
        idx = self.train.label_index
        adj: dict[int, set[int]] = {}
        for u, v in self.test_pairs:
            iu, iv = idx.get(u), idx.get(v)
            if iu is None or iv is None:
                continue
            adj.setdefault(iu, set()).add(iv)
            adj.setdefault(iv, set()).add(iu)
        return adj

    @property
    def unusable_test_edges(self) -> int:
        idx = self.train.label_index
        return sum(1 for u, v in self.test_pairs if u not in idx or v not in idx)


# ---------------------------------------------------------------------------
# splits


def _assemble(train_pairs, test_pairs, protocol, rng_seed=None, meta=None, min_nodes=3) -> SplitDataset:
    train = largest_connected_component(build_graph(EdgeList(tuple(train_pairs))))
    if train.n < min_nodes:
        raise DataError(f"train component too small ({train.n} nodes)")
    return SplitDataset(
        train=train,
        test_pairs=tuple(test_pairs),
        protocol=protocol,
        rng_seed=rng_seed,
        meta=meta or {},
    )


def split_holdout(g: Graph, test_fraction: float, rng_seed) -> SplitDataset:
    """Hold out a uniformly random fraction of the edges as test data."""
    if not 0.0 < test_fraction < 1.0:
        raise ValueError("test_fraction must be in (0, 1)")
    edges = g.edge_array()
    m = len(edges)
    t = max(1, round(test_fraction * m))
    if t >= m:
        raise DataError("holdout would leave no training edges")
    perm = np.random.default_rng(rng_seed).permutation(m)
    test_mask = np.zeros(m, dtype=bool)
    test_mask[perm[:t]] = True
    lab = g.labels
    train_pairs = [(lab[u], lab[v]) for u, v in edges[~test_mask]]
    test_pairs = [(lab[u], lab[v]) for u, v in edges[test_mask]]
    seed_int = rng_seed if isinstance(rng_seed, int) else None
    return _assemble(train_pairs, test_pairs, "holdout", seed_int, {"fraction": test_fraction})


def split_temporal(edges: EdgeList, train_fraction: float) -> SplitDataset:
    """Time-ordered split: the earliest fraction of the unique edges trains.

    Duplicate records collapse to their earliest timestamp; ordering ties
    fall back to input position. Pure function of the input, no randomness.
    """
    if not edges.has_timestamps:
        raise DataError("temporal split requires timestamps")
    if not 0.0 < train_fraction < 1.0:
        raise ValueError("train_fraction must be in (0, 1)")
    first: dict[tuple[Label, Label], tuple[int, int]] = {}
    for pos, ((u, v), t) in enumerate(zip(edges.pairs, edges.times)):
        key = (u, v) if repr(u) <= repr(v) else (v, u)
        if key not in first or (t, pos) < first[key]:
            first[key] = (t, pos)
    ordered = sorted(first.items(), key=lambda kv: kv[1])
    cut = math.ceil(train_fraction * len(ordered))
    if cut >= len(ordered):
        raise DataError("temporal split would leave no test edges")
    train_pairs = [k for k, _ in ordered[:cut]]
    test_pairs = [k for k, _ in ordered[cut:]]
    return _assemble(train_pairs, test_pairs, "temporal", None, {"fraction": train_fraction})


def split_loeto(g: Graph, seed_edge: tuple[int, int]) -> SplitDataset:
    """Leave one edge's triangles out: for every node closing a triangle with
    the seed edge, hold out both of its wedge edges."""
    u, v = seed_edge
    if not g.has_edge(u, v):
        raise ValueError(f"seed edge ({u}, {v}) is not an edge")
    wedge_nodes = np.intersect1d(g.neighbors(u), g.neighbors(v), assume_unique=True)
    if len(wedge_nodes) == 0:
        raise ValueError(f"seed edge ({u}, {v}) participates in no triangle")
    removed = set()
    for w in wedge_nodes:
        w = int(w)
        removed.add((min(u, w), max(u, w)))
        removed.add((min(v, w), max(v, w)))
    lab = g.labels
    train_pairs = []
    test_pairs = []
    for a, b in g.edge_array():
        pair = (lab[a], lab[b])
        if (int(a), int(b)) in removed:
            test_pairs.append(pair)
        else:
            train_pairs.append(pair)
    # A 2-node train component is a legal (if useless) outcome here; the
    # harness discards such trials rather than erroring.
    return _assemble(
        train_pairs, test_pairs, "loeto", None, {"seed_edge": (lab[u], lab[v])}, min_nodes=2
    )


# ---------------------------------------------------------------------------
# ground truth, candidates, metrics


def ground_truth(split: SplitDataset, seed_edge: tuple[int, int], policy: EvalPolicy) -> frozenset[int]:
    """Nodes (train indices) that complete a triangle with the seed edge
    according to the policy's truth mode."""
    u, v = seed_edge
    adj = split.test_adjacency
    tu = adj.get(u, set())
    tv = adj.get(v, set())
    if policy.truth_mode == "and":
        truth = tu & tv
    else:
        train = split.train
        truth = {w for w in tu - tv if train.has_edge(v, w)}
        truth |= {w for w in tv - tu if train.has_edge(u, w)}
    return frozenset(truth - {u, v})


def candidate_nodes(train: Graph, u: int, v: int, rule: str = "either") -> np.ndarray:
    """Rankable nodes for a seed edge: everything except the endpoints and
    the nodes the rule strikes (train-adjacent to either endpoint, or to
    both)."""
    mask = np.ones(train.n, dtype=bool)
    if rule == "either":
        mask[train.neighbors(u)] = False
        mask[train.neighbors(v)] = False
    elif rule == "both":
        both = np.intersect1d(train.neighbors(u), train.neighbors(v), assume_unique=True)
        mask[both] = False
    else:
        raise ValueError(f"unknown candidate rule {rule!r}")
    mask[u] = mask[v] = False
    return np.flatnonzero(mask)


def _best_truth_rank(values: np.ndarray, candidates: np.ndarray, truth: frozenset[int]) -> int:
    """1-based rank (within candidates, score descending, index ascending) of
    the best ground-truth node, or -1 if none is rankable."""
    order = np.lexsort((candidates, -values[candidates]))
    ranked = candidates[order]
    member = np.isin(ranked, np.fromiter(truth, dtype=np.int64, count=len(truth)))
    if not member.any():
        return -1
    return int(np.argmax(member)) + 1


def success_probability(
    scores: ScoreVector | np.ndarray,
    split: SplitDataset,
    seed_edge: tuple[int, int],
    policy: EvalPolicy,
) -> TrialReport:
    """Top-k hit indicator for one scored seed edge."""
    u, v = seed_edge
    truth = ground_truth(split, seed_edge, policy)
    if not truth:
        raise ValueError("ground truth is empty; filter such trials before scoring")
    values = scores.values if isinstance(scores, ScoreVector) else np.asarray(scores)
    cands = candidate_nodes(split.train, u, v, policy.rule)
    best = _best_truth_rank(values, cands, truth)
    method = scores.method if isinstance(scores, ScoreVector) else "scores"
    lab = split.train.labels
    return TrialReport(
        method=method,
        k=policy.k,
        seed_u=lab[u],
        seed_v=lab[v],
        truth_count=len(truth),
        best_rank=best,
        sp=int(0 < best <= policy.k),
    )


def auc(scores: ScoreVector | np.ndarray, positives: Iterable[int], candidates: np.ndarray) -> float:
    """Probability that a random positive outranks a random negative among
    the candidates, ties counted half (Mann-Whitney)."""
    values = scores.values if isinstance(scores, ScoreVector) else np.asarray(scores)
    candidates = np.asarray(candidates, dtype=np.int64)
    pos = np.asarray(sorted(set(int(p) for p in positives)), dtype=np.int64)
    if len(pos) == 0:
        raise ValueError("no positive examples")
    is_pos = np.isin(candidates, pos)
    if len(pos) != int(is_pos.sum()):
        raise ValueError("positives must be a subset of candidates")
    n_neg = len(candidates) - len(pos)
    if n_neg == 0:
        raise ValueError("no negative examples")
    ranks = rankdata(values[candidates])
    u_stat = ranks[is_pos].sum() - len(pos) * (len(pos) + 1) / 2.0
    return float(u_stat / (len(pos) * n_neg))


# ---------------------------------------------------------------------------
# pairwise method registry


@dataclass(eq=False)
class TrialContext:
    """Everything a predictor may look at for one trial. All methods in a
    trial receive the same context object."""

    train: Graph
    params: DiffusionParams
    u: int
    v: int
    truth: frozenset[int]
    candidates: np.ndarray
    cache: dict
    _triangles: TriangleSet | None = None

    @property
    def triangles(self) -> TriangleSet:
        if self._triangles is None:
            self._triangles = _triangles_cached(self.train, self.cache)
        return self._triangles

    def digest(self) -> str:
        h = hashlib.sha256()
        payload = (
            self.train.n,
            self.train.m,
            int(self.u),
            int(self.v),
            tuple(int(c) for c in self.candidates),
            tuple(sorted(int(t) for t in self.truth)),
        )
        h.update(repr(payload).encode())
        return h.hexdigest()


def _triangles_cached(train: Graph, cache: dict) -> TriangleSet:
    ts = cache.get("triangles")
    if ts is None:
        ts = enumerate_triangles(train)
        cache["triangles"] = ts
    return ts


def _single_values(ctx: TrialContext, node: int) -> np.ndarray:
    key = ("single", node)
    vals = ctx.cache.get(key)
    if vals is None:
        vals = pagerank(ctx.train, make_seed(ctx.train, "single", node), ctx.params).values
        ctx.cache[key] = vals
    return vals


PairwiseMethod = Callable[[TrialContext], np.ndarray]
PAIRWISE_METHODS: dict[str, PairwiseMethod] = {}


def _register(tag: str):
    def deco(fn: PairwiseMethod) -> PairwiseMethod:
        PAIRWISE_METHODS[tag] = fn
        return fn

    return deco


@_register("pairseed")
def _m_pairseed(ctx: TrialContext) -> np.ndarray:
    return pair_seeded_pagerank(ctx.train, ctx.u, ctx.v, ctx.params).values


@_register("ss")
def _m_single_low(ctx: TrialContext) -> np.ndarray:
    return _single_values(ctx, min(ctx.u, ctx.v))


@_register("ss-high")
def _m_single_high(ctx: TrialContext) -> np.ndarray:
    return _single_values(ctx, max(ctx.u, ctx.v))


@_register("max")
def _m_max(ctx: TrialContext) -> np.ndarray:
    return np.maximum(_single_values(ctx, ctx.u), _single_values(ctx, ctx.v))


@_register("mul")
def _m_mul(ctx: TrialContext) -> np.ndarray:
    return _single_values(ctx, ctx.u) * _single_values(ctx, ctx.v)


@_register("trpr")
def _m_trpr(ctx: TrialContext) -> np.ndarray:
    seed = make_seed(ctx.train, "pair", ctx.u, ctx.v)
    return trpr(ctx.train, ctx.triangles, seed, ctx.params, weighted=False).values


@_register("trprw")
def _m_trprw(ctx: TrialContext) -> np.ndarray:
    seed = make_seed(ctx.train, "pair", ctx.u, ctx.v)
    return trpr(ctx.train, ctx.triangles, seed, ctx.params, weighted=True).values


def _make_local(tag: str) -> PairwiseMethod:
    def fn(ctx: TrialContext) -> np.ndarray:
        return score_all_nodes(ctx.train, (ctx.u, ctx.v), tag).values

    return fn


for _tag in LOCAL_METHODS:
    PAIRWISE_METHODS[_tag] = _make_local(_tag)


@_register("oracle")
def _m_oracle(ctx: TrialContext) -> np.ndarray:
    # Harness upper bound: score 1 exactly on the ground truth.
    vals = np.zeros(ctx.train.n)
    vals[list(ctx.truth)] = 1.0
    return vals


@_register("antioracle")
def _m_antioracle(ctx: TrialContext) -> np.ndarray:
    vals = np.zeros(ctx.train.n)
    vals[list(ctx.truth)] = -1.0
    return vals


DEFAULT_PAIRWISE_METHODS = (
    "pairseed",
    "ss",
    "max",
    "mul",
    "trpr",
    "trprw",
    "js",
    "aa",
    "pa",
    "js-max",
    "js-mul",
    "aa-max",
    "aa-mul",
)


def _resolve_methods(methods) -> list[tuple[str, PairwiseMethod]]:
    out = []
    for m in methods:
        if isinstance(m, str):
            if m not in PAIRWISE_METHODS:
                raise ValueError(f"unknown method {m!r}")
            out.append((m, PAIRWISE_METHODS[m]))
        else:
            name, fn = m
            out.append((name, fn))
    return out


# ---------------------------------------------------------------------------
# pairwise experiment harness


@dataclass(frozen=True)
class PairwiseSummaryRow:
    method: str
    k: int
    trials: int
    discards: int
    mean_sp: float


@dataclass(eq=False)
class PairwiseResult:
    summary: list[PairwiseSummaryRow]
    details: list[TrialReport]
    metadata: dict


def _eligible_seed_edges(split: SplitDataset, policy: EvalPolicy) -> list[tuple[int, int]]:
    out = []
    for u, v in split.train.edge_array():
        if ground_truth(split, (int(u), int(v)), policy):
            out.append((int(u), int(v)))
    return out


def run_pairwise_experiment(
    data: Graph | EdgeList,
    protocol: str,
    methods: Sequence = DEFAULT_PAIRWISE_METHODS,
    *,
    k_values: Sequence[int] = (5, 25),
    trials: int = 500,
    fraction: float | None = None,
    truth_mode: str = "and",
    candidate_rule: str | None = None,
    params: DiffusionParams = DiffusionParams(),
    rng_seed: int = 0,
    threads: int | None = None,
    allow_empty_truth: bool = False,
) -> PairwiseResult:
    """Run the pairwise link prediction protocol.

    holdout/temporal: one split is drawn, then ``trials`` seed edges are
    sampled (uniformly, among train edges with nonempty ground truth unless
    ``allow_empty_truth``) and every method scores the same trial. loeto: a
    fresh triangles-out split per trial; invalid draws (seed endpoints or all
    truth lost to the component reduction) are discarded and resampled.
    Results are deterministic for a given master seed, independent of
    ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if protocol not in ("holdout", "temporal", "loeto"):
        raise ValueError(f"unknown protocol {protocol!r}")
    named = _resolve_methods(methods)
    k_values = tuple(int(k) for k in k_values)
    base_policy = EvalPolicy(k=min(k_values), truth_mode=truth_mode, candidate_rule=candidate_rule)
    root = np.random.SeedSequence(rng_seed)
    children = root.spawn(trials + 1)

    if protocol == "temporal":
        if not (isinstance(data, EdgeList) and data.has_timestamps):
            raise DataError("temporal protocol needs a timestamped edge list")
        split = split_temporal(data, 0.7 if fraction is None else fraction)
    else:
        g = data if isinstance(data, Graph) else largest_connected_component(build_graph(data))
        if protocol == "holdout":
            split = split_holdout(g, 0.3 if fraction is None else fraction, children[0])

    shared_cache: dict = {}

    if protocol in ("holdout", "temporal"):
        if allow_empty_truth:
            eligible = [(int(u), int(v)) for u, v in split.train.edge_array()]
        else:
            eligible = _eligible_seed_edges(split, base_policy)
        if not eligible:
            raise DataError("no eligible seed edges in the training graph")

        def make_trial(i: int):
            rng = np.random.default_rng(children[i + 1])
            u, v = eligible[rng.integers(len(eligible))]
            truth = ground_truth(split, (u, v), base_policy)
            return split, u, v, truth, shared_cache, 0

    else:  # loeto
        ts_full = enumerate_triangles(g)
        tri_edge_list = sorted(triangle_edges(ts_full))
        if not tri_edge_list:
            raise DataError("graph has no triangles; cannot run the triangles-out protocol")

        def make_trial(i: int):
            rng = np.random.default_rng(children[i + 1])
            rejected = 0
            for _ in range(50):
                u, v = tri_edge_list[rng.integers(len(tri_edge_list))]
                lsplit = split_loeto(g, (u, v))
                idx = lsplit.train.label_index
                tu, tv = idx.get(g.labels[u]), idx.get(g.labels[v])
                truth = None
                if tu is not None and tv is not None:
                    truth = ground_truth(lsplit, (tu, tv), base_policy)
                if not truth:
                    rejected += 1
                    continue
                return lsplit, tu, tv, truth, {}, rejected
            return None

    def run_trial(i: int):
        made = make_trial(i)
        if made is None:
            return None, None, 50
        tsplit, u, v, truth, cache, rejected = made
        cands = candidate_nodes(tsplit.train, u, v, base_policy.rule)
        ctx = TrialContext(
            train=tsplit.train,
            params=params,
            u=u,
            v=v,
            truth=truth,
            candidates=cands,
            cache=cache,
        )
        lab = tsplit.train.labels
        reports = []
        for name, fn in named:
            if truth:
                best = _best_truth_rank(np.asarray(fn(ctx)), cands, truth)
            else:
                best = -1
            for k in k_values:
                reports.append(
                    TrialReport(
                        method=name,
                        k=k,
                        seed_u=lab[u],
                        seed_v=lab[v],
                        truth_count=len(truth),
                        best_rank=best,
                        sp=int(0 < best <= k),
                    )
                )
        return reports, ctx.digest(), rejected

    n_workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as ex:
            outcomes = list(ex.map(run_trial, range(trials)))
    else:
        outcomes = [run_trial(i) for i in range(trials)]

    details: list[TrialReport] = []
    digests: list[str | None] = []
    failed = 0
    discards = 0
    for reports, digest, rejected in outcomes:
        discards += rejected
        if reports is None:
            failed += 1
            continue
        details.extend(reports)
        digests.append(digest)

    completed = trials - failed
    summary = []
    for name, _ in named:
        for k in k_values:
            hits = [r.sp for r in details if r.method == name and r.k == k]
            mean_sp = float(np.mean(hits)) if hits else 0.0
            summary.append(PairwiseSummaryRow(name, k, completed, discards, mean_sp))

    metadata = {
        "protocol": protocol,
        "fraction": split.meta.get("fraction") if protocol != "loeto" else None,
        "trials_requested": trials,
        "trials_completed": completed,
        "discards": discards,
        "k_values": list(k_values),
        "methods": [name for name, _ in named],
        "truth_mode": truth_mode,
        "candidate_rule": base_policy.rule,
        "alpha": params.alpha,
        "iterations": params.iterations,
        "rng_seed": rng_seed,
        "allow_empty_truth": allow_empty_truth,
        "trial_digests": digests,
    }
    if protocol != "loeto":
        metadata["train_nodes"] = split.train.n
        metadata["train_edges"] = split.train.m
        metadata["test_edges"] = len(split.test_pairs)
        metadata["unusable_test_edges"] = split.unusable_test_edges
    return PairwiseResult(summary=summary, details=details, metadata=metadata)


# ---------------------------------------------------------------------------
# standard link prediction harness


@dataclass(eq=False)
class NodeContext:
    """Per-node context for the standard link prediction methods."""

    train: Graph
    params: DiffusionParams
    node: int
    candidates: np.ndarray
    positives: frozenset[int]
    cache: dict

    @property
    def triangles(self) -> TriangleSet:
        return _triangles_cached(self.train, self.cache)

    def singles(self, nodes: Sequence[int]) -> dict[int, np.ndarray]:
        """Single-seed PageRank vectors, batch-solved and cached."""
        missing = [i for i in nodes if ("single", i) not in self.cache]
        if missing:
            seeds = np.zeros((self.train.n, len(missing)))
            for col, i in enumerate(missing):
                seeds[i, col] = 1.0
            sols = pagerank_many(self.train, seeds, self.params)
            for col, i in enumerate(missing):
                self.cache[("single", i)] = sols[:, col]
        return {i: self.cache[("single", i)] for i in nodes}


NodeMethod = Callable[[NodeContext], np.ndarray]
LINKPRED_METHODS: dict[str, NodeMethod] = {}


def _register_lp(tag: str):
    def deco(fn: NodeMethod) -> NodeMethod:
        LINKPRED_METHODS[tag] = fn
        return fn

    return deco


@_register_lp("single")
def _lp_single(ctx: NodeContext) -> np.ndarray:
    return ctx.singles([ctx.node])[ctx.node]


@_register_lp("sum")
def _lp_sum(ctx: NodeContext) -> np.ndarray:
    # Aggregating the pair-seed vectors of all incident edges collapses, by
    # linearity, to one solve with the degree-weighted closed neighborhood.
    seed = make_seed(ctx.train, "weighted-star", ctx.node)
    return pagerank(ctx.train, seed, ctx.params).values


@_register_lp("max")
def _lp_max(ctx: NodeContext) -> np.ndarray:
    i = ctx.node
    nbrs = [int(j) for j in ctx.train.neighbors(i)]
    vecs = ctx.singles([i] + nbrs)
    xi = vecs[i]
    pair_vectors = [(xi + vecs[j]) / 2.0 for j in nbrs]
    return np.maximum.reduce(pair_vectors)


@_register_lp("max-singles")
def _lp_max_singles(ctx: NodeContext) -> np.ndarray:
    i = ctx.node
    nbrs = [int(j) for j in ctx.train.neighbors(i)]
    vecs = ctx.singles([i] + nbrs)
    return np.maximum.reduce([vecs[j] for j in [i] + nbrs])


@_register_lp("star")
def _lp_star(ctx: NodeContext) -> np.ndarray:
    seed = make_seed(ctx.train, "star", ctx.node)
    return pagerank(ctx.train, seed, ctx.params).values


@_register_lp("trpr")
def _lp_trpr(ctx: NodeContext) -> np.ndarray:
    seed = make_seed(ctx.train, "star", ctx.node)
    return trpr(ctx.train, ctx.triangles, seed, ctx.params).values


@_register_lp("oracle")
def _lp_oracle(ctx: NodeContext) -> np.ndarray:
    vals = np.zeros(ctx.train.n)
    vals[list(ctx.positives)] = 1.0
    return vals


DEFAULT_LINKPRED_METHODS = ("single", "sum", "max", "star", "trpr")
LINKPRED_BASELINE = "single"


@dataclass(frozen=True)
class LinkpredNodeRow:
    node: Label
    degree: int
    method: str
    auc: float


@dataclass(frozen=True)
class LinkpredSummaryRow:
    method: str
    mean_auc: float
    mean_delta_vs_baseline: float
    mean_dist_to_diag: float


@dataclass(eq=False)
class LinkpredResult:
    nodes: list[LinkpredNodeRow]
    summary: list[LinkpredSummaryRow]
    metadata: dict


def run_standard_linkpred(
    g: Graph,
    *,
    test_fraction: float = 0.2,
    num_nodes: int = 100,
    methods: Sequence = DEFAULT_LINKPRED_METHODS,
    params: DiffusionParams = DiffusionParams(),
    rng_seed: int = 0,
    threads: int | None = None,
) -> LinkpredResult:
    """Standard link prediction with neighborhood seeding strategies.

    After a random holdout split, the top-degree training nodes are scored
    per method by AUC over their non-neighbors, with the node's held-out
    partners as positives. The summary compares every method to the
    single-seed baseline, including the mean signed distance to the y = x
    diagonal of the method-vs-baseline AUC scatter.
    """
    named = []
    has_baseline = False
    for m in methods:
        if isinstance(m, str):
            if m not in LINKPRED_METHODS:
                raise ValueError(f"unknown method {m!r}")
            named.append((m, LINKPRED_METHODS[m]))
            has_baseline = has_baseline or m == LINKPRED_BASELINE
        else:
            named.append(m)
    if not has_baseline:
        named.insert(0, (LINKPRED_BASELINE, LINKPRED_METHODS[LINKPRED_BASELINE]))

    root = np.random.SeedSequence(rng_seed)
    split = split_holdout(g, test_fraction, root.spawn(1)[0])
    train = split.train
    adj = split.test_adjacency

    order = np.lexsort((np.arange(train.n), -train.degrees))
    cohort = [int(i) for i in order[:num_nodes]]
    if len(cohort) < num_nodes:
        log.warning("cohort shrunk to %d nodes (graph too small)", len(cohort))

    cache: dict = {}
    # Prefetch every single-seed vector the methods will ask for in one
    # deterministic batch, so threading cannot change batch composition.
    needed = set(cohort)
    if any(isinstance(m, str) and m in ("max", "max-singles") for m in methods):
        for i in cohort:
            needed.update(int(j) for j in train.neighbors(i))
    prefetch = sorted(needed)
    seeds = np.zeros((train.n, len(prefetch)))
    seeds[prefetch, np.arange(len(prefetch))] = 1.0
    sols = pagerank_many(train, seeds, params)
    for col, i in enumerate(prefetch):
        cache[("single", i)] = sols[:, col]
    skipped = 0
    rows: list[LinkpredNodeRow] = []
    per_method: dict[str, list[float]] = {name: [] for name, _ in named}
    baseline_aucs: list[float] = []

    def eval_node(i: int):
        mask = np.ones(train.n, dtype=bool)
        mask[train.neighbors(i)] = False
        mask[i] = False
        cands = np.flatnonzero(mask)
        positives = frozenset(adj.get(i, set()))
        if not positives or len(positives) >= len(cands):
            return None
        ctx = NodeContext(
            train=train, params=params, node=i, candidates=cands,
            positives=positives, cache=cache,
        )
        return [(name, auc(np.asarray(fn(ctx)), positives, cands)) for name, fn in named]

    n_workers = threads if threads and threads > 0 else (os.cpu_count() or 1)
    if n_workers > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as ex:
            results = list(ex.map(eval_node, cohort))
    else:
        results = [eval_node(i) for i in cohort]

    for i, res in zip(cohort, results):
        if res is None:
            skipped += 1
            continue
        scores = dict(res)
        baseline_aucs.append(scores[LINKPRED_BASELINE])
        for name, a in res:
            rows.append(LinkpredNodeRow(train.labels[i], train.degree(i), name, a))
            per_method[name].append(a)

    base = np.asarray(baseline_aucs)
    summary = []
    for name, _ in named:
        vals = np.asarray(per_method[name])
        delta = vals - base
        summary.append(
            LinkpredSummaryRow(
                method=name,
                mean_auc=float(vals.mean()) if len(vals) else float("nan"),
                mean_delta_vs_baseline=float(delta.mean()) if len(vals) else float("nan"),
                mean_dist_to_diag=float((delta / math.sqrt(2.0)).mean()) if len(vals) else float("nan"),
            )
        )

    metadata = {
        "protocol": "holdout",
        "test_fraction": test_fraction,
        "num_nodes_requested": num_nodes,
        "cohort_size": len(cohort),
        "nodes_skipped_no_positives": skipped,
        "methods": [name for name, _ in named],
        "alpha": params.alpha,
        "iterations": params.iterations,
        "rng_seed": rng_seed,
        "train_nodes": train.n,
        "train_edges": train.m,
        "test_edges": len(split.test_pairs),
        "unusable_test_edges": split.unusable_test_edges,
    }
    return LinkpredResult(nodes=rows, summary=summary, metadata=metadata)


# ---------------------------------------------------------------------------
# report files


def _write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(str(x) for x in row) + "\n")


def write_pairwise_reports(result: PairwiseResult, out_dir, prefix: str = "pairwise") -> dict:
    """Emit summary/detail CSVs plus a replayable metadata sidecar; returns
    the written paths."""
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "summary": os.path.join(out_dir, f"{prefix}_summary.csv"),
        "detail": os.path.join(out_dir, f"{prefix}_detail.csv"),
        "metadata": os.path.join(out_dir, f"{prefix}_metadata.json"),
    }
    _write_csv(
        paths["summary"],
        ["method", "k", "trials", "discards", "mean_sp"],
        ((r.method, r.k, r.trials, r.discards, r.mean_sp) for r in result.summary),
    )
    _write_csv(
        paths["detail"],
        ["method", "k", "seed_u", "seed_v", "truth_count", "best_rank", "sp"],
        (
            (r.method, r.k, r.seed_u, r.seed_v, r.truth_count, r.best_rank, r.sp)
            for r in result.details
        ),
    )
    with open(paths["metadata"], "w", encoding="utf-8") as fh:
        json.dump(result.metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return paths


def write_linkpred_reports(result: LinkpredResult, out_dir, prefix: str = "linkpred") -> dict:
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "nodes": os.path.join(out_dir, f"{prefix}_nodes.csv"),
        "summary": os.path.join(out_dir, f"{prefix}_summary.csv"),
        "metadata": os.path.join(out_dir, f"{prefix}_metadata.json"),
    }
    _write_csv(
        paths["nodes"],
        ["node", "degree", "method", "auc"],
        ((r.node, r.degree, r.method, r.auc) for r in result.nodes),
    )
    _write_csv(
        paths["summary"],
        ["method", "mean_auc", "mean_delta_vs_baseline", "mean_dist_to_diag"],
        (
            (r.method, r.mean_auc, r.mean_delta_vs_baseline, r.mean_dist_to_diag)
            for r in result.summary
        ),
    )
    with open(paths["metadata"], "w", encoding="utf-8") as fh:
        json.dump(result.metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return paths
