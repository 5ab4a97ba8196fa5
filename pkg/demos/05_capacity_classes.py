"""Capacity-class reports end to end.

Three channels: a two-receiver pair (always classifiable), a cascade built
to satisfy the one-indirect-group class, and an incomparable mix for which
no class matches and only the inner bound is reported.
"""

import numpy as np

from nestedcast import BroadcastSpec, SearchConfig, bec, bsc
from nestedcast.classify import capacity_report

cfg = SearchConfig(multistarts=3, ascent_iters=10, lambdas=(0.0, 0.5, 1.0, 2.0, 1000.0))

print("== two receivers: the two-critical-receiver class always applies ==")
bc = BroadcastSpec.of([bsc(0.1), bsc(0.2)], private=[0])
print(capacity_report(bc, cfg).to_text())

print()
print("== one-indirect-group class by cascade construction ==")
rng = np.random.default_rng(2)
w1 = bsc(0.05).rows
free = bec(0.4).rows                      # unconstrained common receiver
c2 = w1 @ rng.dirichlet(np.ones(2), size=2)   # degraded from the private receiver
c3 = w1 @ rng.dirichlet(np.ones(2), size=2)
bc2 = BroadcastSpec.of([w1, free, c2, c3], private=[0])
print(capacity_report(bc2, cfg).to_text())

print()
print("== no class: incomparable common receivers ==")
bc3 = BroadcastSpec.of([bsc(0.1), bec(0.5), bsc(0.08)], private=[0])
print(capacity_report(bc3, cfg).to_text())
