#!/usr/bin/env python3
"""Benchmark every pairwise predictor on a synthetic graph under the three
evaluation protocols.

Each trial hides some edges, picks a seed edge from the training graph, asks
every method to rank the candidate nodes, and scores a hit if a true
triangle-completing node lands in the top k. The protocols differ in how
edges are hidden:

  holdout   30% of edges held out uniformly at random
  loeto     for one seed edge, both wedge edges of each of its triangles
  temporal  the latest edges by timestamp (needs timestamped input)
"""

import numpy as np

from trilink import (
    GpaParams,
    generate_gpa,
    run_pairwise_experiment,
    to_edge_list,
    EdgeList,
)

METHODS = ["pairseed", "ss", "max", "mul", "trpr", "trprw", "js", "aa", "pa", "aa-mul"]
TRIALS = 200

g = generate_gpa(GpaParams(p_edge=0.7, steps=2000, rng_seed=42))
print(f"preferential-attachment graph: {g.n} nodes, {g.m} edges\n")

# --- random holdout ----------------------------------------------------------

res = run_pairwise_experiment(
    g, "holdout", METHODS, k_values=(5, 25), trials=TRIALS, rng_seed=7
)
print(f"holdout (30% hidden), {TRIALS} trials, "
      f"{res.metadata['discards']} discards")
print(f"{'method':>10} {'sp@5':>7} {'sp@25':>7}")
by = {(r.method, r.k): r.mean_sp for r in res.summary}
for m in METHODS:
    print(f"{m:>10} {by[(m, 5)]:7.3f} {by[(m, 25)]:7.3f}")

# --- triangles-out -------------------------------------------------------------

res = run_pairwise_experiment(g, "loeto", METHODS, k_values=(5,), trials=TRIALS, rng_seed=7)
print(f"\ntriangles-out, {TRIALS} trials, {res.metadata['discards']} discards")
by = {(r.method, r.k): r.mean_sp for r in res.summary}
for m in METHODS:
    print(f"{m:>10} {by[(m, 5)]:7.3f}")

# --- temporal -------------------------------------------------------------------

# Fake arrival times: reuse the generator's creation order as a timestamp.
# Requiring BOTH wedge edges to arrive late is nearly impossible on a sparse
# growing graph, so temporal runs use the OR metric: the candidate already
# knows one endpoint, and the closing edge arrives in the test window.
el = to_edge_list(g)
stamped = EdgeList(el.pairs, tuple(range(len(el.pairs))))
res = run_pairwise_experiment(
    stamped, "temporal", METHODS, k_values=(5, 25), trials=TRIALS, rng_seed=7,
    fraction=0.8, truth_mode="or",
)
print(f"\ntemporal (first 80% trains, OR metric), {TRIALS} trials")
print(f"{'method':>10} {'sp@5':>7} {'sp@25':>7}")
by = {(r.method, r.k): r.mean_sp for r in res.summary}
for m in METHODS:
    print(f"{m:>10} {by[(m, 5)]:7.3f} {by[(m, 25)]:7.3f}")

print("\nnotes: sp@25 >= sp@5 for every method by construction; diffusion "
      "methods degrade gracefully when the local scores see empty "
      "edge neighborhoods.")
