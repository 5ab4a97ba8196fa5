"""Rate polygons for a fixed coding distribution.

A cloud center carrying the common message plus satellites refining it
induces, for each receiver, a handful of mutual-information numbers; every
region formula is just a labeled list of halfspaces over them.
"""

import numpy as np

from nestedcast import BroadcastSpec, MarkovChain, bsc, eval_mi_table, region_cor1, region_superposition, region_thm2

print("== two receivers, one auxiliary ==")
bc = BroadcastSpec.of([bsc(0.1), bsc(0.2)], private=[0])
chain = MarkovChain.of([0.5, 0.5], [bsc(0.25).rows])
mi = eval_mi_table(chain, bc)
print(f"I(U;Y2) = {mi.iu_y(0, 2):.5f}   I(X;Y1|U) = {mi.ix_y_given_u(0, 1):.5f}   "
      f"I(X;Y1) = {mi.ix_y(1):.5f}")
poly = region_superposition(bc, mi)
print(poly.to_text())
print("the sum constraint is inactive here: the rectangle corner sits below it")

print()
print("== three receivers: full splitting vs a single split point ==")
rng = np.random.default_rng(1)
bc3 = BroadcastSpec.of([bsc(0.05), bsc(0.15), bsc(0.3)], private=[0])
chain3 = MarkovChain.of(
    rng.dirichlet(np.ones(3)),
    [rng.dirichlet(np.ones(3), size=3), rng.dirichlet(np.ones(2), size=3)],
)
mi3 = eval_mi_table(chain3, bc3)
full = region_thm2(bc3, mi3)
print(full.to_text())
print()
grouped = region_cor1(bc3, mi3, 2)
print("single split point l=2 on the same chain:")
print(grouped.to_text())
print()
print("full splitting contains the grouped region:",
      all(full.contains(*v, tol=1e-9) for v in grouped.vertices))
