"""Eliminating the split rates, exactly.

The reliability constraints of the rate-splitting scheme live in
(R0, R1, split rates) space; Fourier-Motzkin elimination over exact
rationals projects them onto the (R0, R1) plane, and the nested-sum
structure keeps the projection closed form.  The verifiers below confirm
the two projection identities on random exact instantiations, then the grid
oracle cross-checks the closed form against split-rate feasibility on a
real channel/chain pair.
"""

from fractions import Fraction

import numpy as np

from nestedcast import BroadcastSpec, MarkovChain, bsc, eval_mi_table
from nestedcast.fme import eliminate, verify_lemma2, verify_lemma3
from nestedcast.regions import split_feasible, splitrate_template, thm2_contains_exact

print("== the symbolic system and one elimination step ==")
sym = splitrate_template(3, 1)
print(f"variables: {sym.variables}; {len(sym.rows)} inequalities")
out = eliminate(sym, "R1_2")
print("after dropping the split rate:")
for r in out.rows:
    terms = " + ".join(
        f"{c}*{v}" for c, v in zip(r.coeffs, out.variables) if c != 0
    )
    print(f"  {terms or '0'} <= {r.rhs}")

print()
print("== mechanical verification of the projection identities ==")
for k, l, K in ((2, 2, 4), (2, 3, 5), (1, 3, 6)):
    print(verify_lemma2(k, l, K, trials=100, seed=3).text())
for k, K in ((2, 4), (1, 6)):
    print(verify_lemma3(k, K, trials=100, seed=3).text())

print()
print("== grid oracle on a real instance ==")
bc = BroadcastSpec.of([bsc(0.05), bsc(0.15), bsc(0.25)], private=[0])
rng = np.random.default_rng(7)
chain = MarkovChain.of(
    rng.dirichlet(np.ones(2)),
    [np.array([[0.95, 0.05], [0.1, 0.9]]), np.array([[0.9, 0.1], [0.05, 0.95]])],
)
mi = eval_mi_table(chain, bc)
step = Fraction(1, 100)
pts = disagree = 0
r0 = Fraction(0)
while r0 <= Fraction(1, 2):
    r1 = Fraction(0)
    while r1 <= Fraction(1, 2):
        pts += 1
        if thm2_contains_exact(bc, mi, r0, r1) != split_feasible(bc, mi, r0, r1):
            disagree += 1
        r1 += step
    r0 += step
print(f"{pts} exact grid points, {disagree} disagreements between the closed-form "
      "region and split-rate feasibility")
