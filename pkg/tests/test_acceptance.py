"""Acceptance criteria, one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines and timings.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from nestedcast import (
    BroadcastSpec,
    MarkovChain,
    bec,
    bsc,
    eval_mi_table,
    is_degraded,
    is_less_noisy,
    is_more_capable,
    region_cor1,
    region_jointdec,
    region_superposition,
    region_thm2,
)
from nestedcast.classify import capacity_report
from nestedcast.fme import verify_lemma2, verify_lemma3
from nestedcast.optimize import compare_schemes, embed_chain
from nestedcast.probkit import binary_entropy
from nestedcast.regions import SchemeId, split_feasible, thm2_contains_exact

from conftest import degrade, fast_cfg, random_bc, random_chain

F = Fraction


def _report(n: int, msg: str):
    print(f"\ncriterion {n}: PASS  {msg}")


# -------------------------------------------------------------------------
# 1. FME projection-identity verification, exact, every (K, L, l) with K <= 6
# -------------------------------------------------------------------------

def test_criterion_1_fme_projection_identities():
    t0 = time.perf_counter()
    runs = 0
    for K in range(2, 7):
        for L in range(1, K):
            k = L + 1
            for l in range(k, K):
                rep = verify_lemma2(k, l, K, trials=100, seed=1000 + 7 * K + l)
                assert rep.ok, rep.text()
                runs += 1
            rep3 = verify_lemma3(k, K, trials=100, seed=2000 + K + L)
            assert rep3.ok, rep3.text()
            runs += 1
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0, f"projection verification took {elapsed:.1f}s"
    _report(1, f"{runs} projection-identity configurations x 100 exact trials in {elapsed:.1f}s")


# -------------------------------------------------------------------------
# 2. Closed-form region vs split-rate lift on a 0.005-bit grid
# -------------------------------------------------------------------------

def _low_noise_chain(rng, levels) -> MarkovChain:
    """Binary chain with small-crossover kernels, so information survives the
    composition and the rate region has real area to grid over."""
    top = rng.dirichlet(np.ones(2))
    kernels = []
    for _ in range(levels):
        a, b = rng.uniform(0.0, 0.12, size=2)
        kernels.append(np.array([[1 - a, a], [b, 1 - b]]))
    return MarkovChain.of(top, kernels)


def test_criterion_2_closed_form_vs_split_lift():
    t0 = time.perf_counter()
    rng = np.random.default_rng(8282)
    step = F(5, 1000)
    total_pts = 0
    disagreements = 0
    for trial in range(20):
        K = int(rng.choice([3, 4, 5]))
        L = int(rng.integers(1, K - 1)) if K > 3 else 1
        bc = BroadcastSpec.of(
            [bsc(float(rng.uniform(0.02, 0.3))) for _ in range(K)], private=range(L)
        )
        chain = _low_noise_chain(rng, K - L)
        mi = eval_mi_table(chain, bc)
        max_r0 = F(min(mi.iu_y(K - c, c) for c in bc.common_set)) + 2 * step
        max_r1 = F(min(mi.ix_y_given_u(0, s) for s in bc.private_set)) + 2 * step
        r0 = F(0)
        while r0 <= max_r0:
            r1 = F(0)
            while r1 <= max_r1:
                total_pts += 1
                if thm2_contains_exact(bc, mi, r0, r1) != split_feasible(bc, mi, r0, r1):
                    disagreements += 1
                r1 += step
            r0 += step
    elapsed = time.perf_counter() - t0
    assert disagreements == 0, f"{disagreements} grid disagreements"
    assert elapsed < 300.0, f"grid oracle took {elapsed:.1f}s"
    _report(2, f"20 instances, {total_pts} exact grid points, 0 disagreements in {elapsed:.1f}s")


# -------------------------------------------------------------------------
# 3. Ordering ground truth: BSC crossover order, BEC/BSC thresholds
# -------------------------------------------------------------------------

def _bisect(lo, hi, pred, iters=14):
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_criterion_3_ordering_ground_truth():
    t0 = time.perf_counter()
    cfg = fast_cfg()
    levels = [0.05, 0.1, 0.2, 0.3, 0.45]
    for i, a in enumerate(levels):
        for b in levels[i + 1:]:
            assert is_degraded(bsc(a), bsc(b)).yes
            assert is_less_noisy(bsc(a), bsc(b), cfg).yes
            assert is_more_capable(bsc(a), bsc(b), cfg).yes
            assert is_degraded(bsc(b), bsc(a)).holds == "no"
            assert is_less_noisy(bsc(b), bsc(a), cfg).holds == "no"
            assert is_more_capable(bsc(b), bsc(a), cfg).holds == "no"
    eps = 0.1

    # tester bisections over the erasure rate
    ln_tester = _bisect(0.2, 0.5, lambda e: is_less_noisy(bec(e), bsc(eps), cfg).holds != "no")
    mc_tester = _bisect(0.3, 0.6, lambda e: is_more_capable(bec(e), bsc(eps), cfg).holds != "no")

    # independent oracle: dense-grid brute force over the input simplex
    p = np.linspace(0.0, 1.0, 4001)
    hb = np.vectorize(binary_entropy)
    h_p = hb(p)
    h_mix = hb(p * (1 - 2 * eps) + eps)

    def bec_less_noisy(e):
        delta = (1 - e) * h_p - (h_mix - binary_entropy(eps))
        d2 = delta[:-2] - 2 * delta[1:-1] + delta[2:]
        return d2.max() <= 1e-12

    def bec_more_capable(e):
        g = (h_mix - binary_entropy(eps)) - (1 - e) * h_p
        return g.max() <= 1e-12

    ln_oracle = _bisect(0.2, 0.5, bec_less_noisy)
    mc_oracle = _bisect(0.3, 0.6, bec_more_capable)

    assert abs(ln_tester - 0.36) <= 0.01, ln_tester
    assert abs(ln_oracle - 0.36) <= 0.01, ln_oracle
    assert abs(mc_tester - binary_entropy(eps)) <= 0.01, mc_tester
    assert abs(mc_oracle - binary_entropy(eps)) <= 0.01, mc_oracle
    elapsed = time.perf_counter() - t0
    assert elapsed < 120.0
    _report(
        3,
        f"BSC order exact; less-noisy threshold {ln_tester:.4f} (oracle {ln_oracle:.4f}, "
        f"analytic 0.36), more-capable {mc_tester:.4f} (oracle {mc_oracle:.4f}, "
        f"analytic {binary_entropy(eps):.4f}) in {elapsed:.1f}s",
    )


# -------------------------------------------------------------------------
# 4. Implication chain on 200 random pairs
# -------------------------------------------------------------------------

def test_criterion_4_implication_chain():
    t0 = time.perf_counter()
    rng = np.random.default_rng(4242)
    cfg = fast_cfg()
    violations = 0
    degraded_seen = ln_seen = 0
    for t in range(200):
        nx = int(rng.choice([2, 3]))
        ws = rng.dirichlet(np.ones(int(rng.choice([2, 3, 4]))), size=nx)
        if t % 2 == 0:
            wc = degrade(ws, rng, n_out=int(rng.choice([2, 3, 4])))
        else:
            wc = rng.dirichlet(np.ones(int(rng.choice([2, 3, 4]))), size=nx)
        d = is_degraded(ws, wc)
        ln = is_less_noisy(ws, wc, cfg)
        mc = is_more_capable(ws, wc, cfg)
        degraded_seen += d.yes
        ln_seen += ln.yes
        if d.yes and not ln.yes:
            violations += 1
        if ln.yes and not mc.yes:
            violations += 1
    elapsed = time.perf_counter() - t0
    assert violations == 0
    assert degraded_seen >= 50 and ln_seen >= degraded_seen  # the chain was exercised
    _report(
        4,
        f"200 pairs, {degraded_seen} degraded / {ln_seen} less-noisy positives, "
        f"0 implication violations in {elapsed:.1f}s",
    )


# -------------------------------------------------------------------------
# 5. Scheme containment and the no-splitting specialization
# -------------------------------------------------------------------------

def test_criterion_5_scheme_containment():
    t0 = time.perf_counter()
    rng = np.random.default_rng(55)
    for _ in range(100):
        K = int(rng.integers(2, 6))
        L = int(rng.integers(1, K))
        bc = random_bc(rng, K, L)
        one = random_chain(rng, 1, [int(rng.integers(2, 5))], 2)
        sup = region_superposition(bc, eval_mi_table(one, bc))
        full = region_thm2(bc, eval_mi_table(embed_chain(one, K - L), bc))
        for v in sup.vertices:
            assert full.contains(*v, tol=1e-9)
        for v in full.vertices:
            assert sup.contains(*v, tol=1e-9)
    for _ in range(50):
        K = int(rng.integers(2, 6))
        L = int(rng.integers(1, K))
        bc = random_bc(rng, K, L)
        mi = eval_mi_table(random_chain(rng, 1, [3], 2), bc)
        assert region_cor1(bc, mi, K).labeled_set() == region_superposition(bc, mi).labeled_set()
    elapsed = time.perf_counter() - t0
    _report(
        5,
        "100 embedded-chain equality checks and 50 exact labeled-set matches "
        f"in {elapsed:.1f}s",
    )


# -------------------------------------------------------------------------
# 6. Joint decoding covers the indirect-decoding corner (two-case argument)
# -------------------------------------------------------------------------

def _cor2_class_instance(rng, weak_free=False):
    """Cascade construction: private receivers form a degradation chain down
    to r = L, every common receiver but the first degrades r further, the
    first common receiver is unconstrained.  With ``weak_free`` the
    unconstrained receiver is made very noisy, which drives the corner
    argument into its first case."""
    K = int(rng.choice([3, 4, 5]))
    L = int(rng.integers(1, K - 1))
    mats = [rng.dirichlet(np.ones(int(rng.integers(2, 4))), size=2)]
    for _ in range(L - 1):
        mats.append(degrade(mats[-1], rng))
    w_r = mats[-1]
    if weak_free:
        free = degrade(degrade(degrade(w_r, rng), rng), rng)
    else:
        free = rng.dirichlet(np.ones(int(rng.integers(2, 4))), size=2)
    mats.append(free)
    for _ in range(K - L - 1):
        mats.append(degrade(w_r, rng, n_out=int(rng.integers(2, 4))))
    return BroadcastSpec.of(mats, private=range(L)), L


def test_criterion_6_joint_decoding_covers_indirect_corner():
    t0 = time.perf_counter()
    rng = np.random.default_rng(66)
    case_counts = [0, 0]
    for t in range(25):
        bc, L = _cor2_class_instance(rng, weak_free=(t % 2 == 0))
        K = bc.K
        chain = random_chain(rng, 2, [4, 4], 2)
        mi = eval_mi_table(chain, bc)
        indirect = region_cor1(bc, mi, L + 1)
        a = min(h.rhs for h in indirect.halfspaces if (h.a0, h.a1) == (1, 0))
        r1s = [h.rhs for h in indirect.halfspaces if (h.a0, h.a1) == (0, 1)]
        r1s += [h.rhs - a for h in indirect.halfspaces if (h.a0, h.a1) == (1, 1)]
        corner = (a, max(0.0, min(r1s)))
        assert indirect.contains(*corner, tol=1e-9)
        case1 = all(mi.iu_y(0, c) >= mi.iu_y(0, L + 1) for c in range(L + 2, K + 1))
        if case1:
            case_counts[0] += 1
            joint = region_jointdec(bc, eval_mi_table(chain, bc))
        else:
            case_counts[1] += 1
            joint = region_jointdec(bc, eval_mi_table(chain.collapsed(), bc))
        assert joint.contains(*corner, tol=1e-9), (corner, case1)
    elapsed = time.perf_counter() - t0
    assert case_counts[0] >= 3 and case_counts[1] >= 3, case_counts
    _report(
        6,
        f"25 corner points covered (case split {case_counts[0]}/{case_counts[1]}) "
        f"in {elapsed:.1f}s",
    )


def test_criterion_6_soft_union_agreement():
    t0 = time.perf_counter()
    rng = np.random.default_rng(67)
    cfg = fast_cfg(
        multistarts=2, ascent_iters=8, lambdas=(0.0, 0.5, 1.0, 2.0, 10.0), seed=11
    )
    worst = 0.0
    for _ in range(5):
        bc, L = _cor2_class_instance(rng)
        table = compare_schemes(bc, SchemeId("jointdec"), SchemeId("cor1", l=L + 1), cfg)
        for row in table.rows:
            worst = max(worst, abs(row.gap))
            assert abs(row.gap) <= 0.01, (row.lam, row.gap)
    elapsed = time.perf_counter() - t0
    _report(6, f"(soft) joint vs indirect union supports within {worst:.4f} bits/lam in {elapsed:.1f}s")


# -------------------------------------------------------------------------
# 7. Adding a dominated receiver leaves the capacity union unchanged
# -------------------------------------------------------------------------

def test_criterion_7_added_receiver_invariance():
    t0 = time.perf_counter()
    cfg = fast_cfg(multistarts=2, ascent_iters=8, lambdas=(0.0, 0.5, 1.0, 2.0, 10.0))

    # matched two-critical-receiver instance; the new common receiver is
    # strictly less noisy than the most-noisy one (cascade construction)
    base = BroadcastSpec.of([bsc(0.05), bsc(0.1), bsc(0.2)], private=[0])
    bigger = BroadcastSpec.of([bsc(0.05), bsc(0.1), bsc(0.15), bsc(0.2)], private=[0])
    rep_a = capacity_report(base, cfg)
    rep_b = capacity_report(bigger, cfg)
    assert rep_a.claims_capacity and rep_b.claims_capacity
    worst = max(abs(rep_a.region.support(l) - rep_b.region.support(l)) for l in cfg.lambdas)
    assert worst <= 0.01, worst

    # matched two-group instance (l = 2): the added receiver joins the
    # indirect group above its most-noisy member
    base3 = BroadcastSpec.of([bsc(0.05), bec(0.45), bsc(0.1), bsc(0.15)], private=[0])
    bigger3 = BroadcastSpec.of(
        [bsc(0.05), bec(0.45), bec(0.3), bsc(0.1), bsc(0.15)], private=[0]
    )
    rep_c = capacity_report(base3, cfg)
    rep_d = capacity_report(bigger3, cfg)
    assert rep_c.claims_capacity and rep_d.claims_capacity
    worst3 = max(abs(rep_c.region.support(l) - rep_d.region.support(l)) for l in cfg.lambdas)
    assert worst3 <= 0.01, worst3
    elapsed = time.perf_counter() - t0
    _report(7, f"support shifts {worst:.5f} / {worst3:.5f} bits per direction in {elapsed:.1f}s")


# -------------------------------------------------------------------------
# 8. Two-receiver sanity: always a claim, correct private-rate endpoint
# -------------------------------------------------------------------------

def test_criterion_8_two_receiver_sanity():
    t0 = time.perf_counter()
    rng = np.random.default_rng(88)
    cfg = fast_cfg(multistarts=2, ascent_iters=8, lambdas=(0.0, 1.0, 1000.0))
    for _ in range(3):
        bc = random_bc(rng, 2, 1)
        rep = capacity_report(bc, cfg)
        assert rep.claims_capacity
        assert rep.matched[0].kind == "thm1-iii"
    bc = BroadcastSpec.of([bsc(0.1), bsc(0.2)], private=[0])
    rep = capacity_report(bc, cfg)
    assert rep.matched[0].kind == "thm1-iii"
    p0 = next(p for p in rep.region.points if p.lam == 0.0)
    assert p0.corner[0] == pytest.approx(0.0, abs=1e-9)
    assert p0.corner[1] == pytest.approx(0.531, abs=0.01)
    elapsed = time.perf_counter() - t0
    _report(
        8,
        f"two-receiver reports claim the two-critical-receiver class; private-rate "
        f"endpoint {p0.corner[1]:.4f} in {elapsed:.1f}s",
    )
