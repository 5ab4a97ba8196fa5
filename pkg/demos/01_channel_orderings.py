"""Pairwise channel orderings: degraded, less noisy, more capable.

Walks the classic binary-symmetric / binary-erasure comparisons: BSC noise
levels order totally, while a BEC and a BSC compare only up to thresholds in
the erasure rate (4*eps*(1-eps) for less noisy, h(eps) for more capable).
"""

import numpy as np

from nestedcast import BroadcastSpec, SearchConfig, bec, bsc, is_degraded, is_less_noisy, is_more_capable, ordering_graph
from nestedcast.probkit import binary_entropy

cfg = SearchConfig(pairs=20_000, lines=400)

print("== BSC cascade: smaller crossover dominates in every sense ==")
v = is_degraded(bsc(0.1), bsc(0.2))
print(f"BSC(0.1) -> BSC(0.2) degraded: {v.holds}; degrading kernel:\n{np.round(v.certificate, 4)}")
print("BSC(0.1) less noisy than BSC(0.2):", is_less_noisy(bsc(0.1), bsc(0.2), cfg).describe())
print("BSC(0.2) more capable than BSC(0.1):", is_more_capable(bsc(0.2), bsc(0.1), cfg).describe())

print()
print("== BEC(e) vs BSC(0.1): the orderings split at analytic thresholds ==")
print(f"less-noisy threshold 4*0.1*0.9 = {4 * 0.1 * 0.9:.3f}, "
      f"more-capable threshold h(0.1) = {binary_entropy(0.1):.3f}")
for e in (0.3, 0.42, 0.55):
    ln = is_less_noisy(bec(e), bsc(0.1), cfg)
    mc = is_more_capable(bec(e), bsc(0.1), cfg)
    print(f"  e = {e}: less noisy -> {ln.holds:10s} more capable -> {mc.holds}")
ln = is_less_noisy(bsc(0.1), bec(0.3), cfg)
w = ln.certificate
print(f"reverse direction fails with a binary-cloud witness: lam={w.lam:.3f}, "
      f"p1={np.round(w.p1, 3)}, p2={np.round(w.p2, 3)}, "
      f"I(U;Y_bsc) - I(U;Y_bec) = {w.gap(bsc(0.1).rows, bec(0.3).rows):.5f}")

print()
print("== ordering graph of a three-receiver channel ==")
bc = BroadcastSpec.of([bsc(0.05), bsc(0.12), bec(0.3)], private=[0])
graph = ordering_graph(bc, cfg)
print(graph.table_text())
print()
print("\n".join(graph.edge_lines()))
print()
print(graph.to_dot())
