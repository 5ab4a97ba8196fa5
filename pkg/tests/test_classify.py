import numpy as np
import pytest

from nestedcast import BroadcastSpec, bec, bsc
from nestedcast.classify import capacity_report, classify_theorem1, classify_theorem3
from nestedcast.ordering import ordering_graph

from conftest import fast_cfg

CFG = fast_cfg()
UCFG = fast_cfg(lambdas=(0.0, 1.0, 1000.0), multistarts=2, ascent_iters=6)


def kinds(report):
    return [m.kind for m in report.matched]


def test_k2_always_case_iii(rng):
    for _ in range(5):
        w1 = rng.dirichlet(np.ones(3), size=2)
        w2 = rng.dirichlet(np.ones(2), size=2)
        bc = BroadcastSpec.of([w1, w2], private=[0])
        rep = classify_theorem1(bc, CFG)
        assert "thm1-iii" in kinds(rep)
        m = rep.matched[0]
        assert m.witnesses == {"j": 2, "r": 1}


def test_bsc_cascade_case_i():
    bc = BroadcastSpec.of([bsc(0.05), bsc(0.1), bsc(0.2)], private=[0])
    rep = classify_theorem1(bc, CFG)
    ks = kinds(rep)
    assert "thm1-i" in ks
    m = next(m for m in rep.matched if m.kind == "thm1-i")
    assert m.witnesses == {"r": 1}


def test_case_ii_and_iii_two_private():
    bc = BroadcastSpec.of([bsc(0.05), bsc(0.1), bsc(0.3)], private=[0, 1])
    rep = classify_theorem1(bc, CFG)
    ks = kinds(rep)
    assert "thm1-ii" in ks and "thm1-iii" in ks
    mii = next(m for m in rep.matched if m.kind == "thm1-ii")
    assert mii.witnesses == {"j": 3}
    miii = next(m for m in rep.matched if m.kind == "thm1-iii")
    assert miii.witnesses == {"j": 3, "r": 2}


def test_theorem3_at_top_reduces_to_case_iii():
    bc = BroadcastSpec.of([bsc(0.05), bsc(0.1), bsc(0.3)], private=[0, 1])
    rep = classify_theorem3(bc, 3, CFG)
    assert kinds(rep) == ["thm3"]
    m = rep.matched[0]
    assert m.witnesses["l"] == 3 and "equivalent to thm1-iii" in m.tags
    assert m.formula.kind == "thm3" and m.formula.l == 3


def test_example_l2_class_k4():
    # one unordered common receiver decodes indirectly; the rest are
    # degraded versions of the private receiver
    bc = BroadcastSpec.of([bsc(0.05), bec(0.45), bsc(0.1), bsc(0.15)], private=[0])
    rep = classify_theorem3(bc, 2, CFG)
    assert kinds(rep) == ["thm3"]
    m = rep.matched[0]
    assert m.witnesses["group1"] == (2,)
    assert m.formula.kind == "cor2"


FIG5_INSTANCES = {
    2: [bsc(0.05), bec(0.5), bsc(0.08), bsc(0.09), bsc(0.1), bsc(0.11)],
    3: [bsc(0.05), bec(0.45), bec(0.6), bsc(0.09), bsc(0.1), bsc(0.11)],
    4: [bsc(0.05), bec(0.45), bec(0.5), bec(0.65), bsc(0.1), bsc(0.12)],
    5: [bsc(0.05), bec(0.45), bec(0.5), bec(0.55), bec(0.7), bsc(0.1)],
}


@pytest.mark.parametrize("l_true", sorted(FIG5_INSTANCES))
def test_six_receiver_classes_match_exactly_their_l(l_true):
    bc = BroadcastSpec.of(FIG5_INSTANCES[l_true], private=[0])
    graph = ordering_graph(bc, CFG)
    for l in (2, 3, 4, 5):
        rep = classify_theorem3(bc, l, CFG, graph=graph)
        if l == l_true:
            assert rep.matched, f"l={l} should match"
            assert rep.matched[0].witnesses["l"] == l
        else:
            assert not rep.matched, f"l={l} should not match (built for {l_true})"


def test_capacity_report_cor2_class(rng):
    # cascade construction: private chain ending at the weakest private r,
    # every common receiver except the first degraded from r, the first
    # common receiver unconstrained
    from conftest import degrade

    w1 = rng.dirichlet(np.ones(3), size=2)
    w2 = degrade(w1, rng)  # r = 2, degraded from Y1
    free = rng.dirichlet(np.ones(2), size=2)  # unconstrained common receiver
    c2 = degrade(w2, rng)
    c3 = degrade(w2, rng)
    bc = BroadcastSpec.of([w1, w2, free, c2, c3], private=[0, 1])
    rep = capacity_report(bc, UCFG)
    assert rep.claims_capacity
    l_vals = [m.witnesses.get("l") for m in rep.matched if m.kind == "thm3"]
    assert 3 in l_vals  # l = L+1
    assert rep.formula is not None and rep.region is not None
    if rep.formula.kind == "cor2":
        assert rep.formula.r == 2


def test_capacity_report_no_class():
    bc = BroadcastSpec.of([bsc(0.1), bec(0.5), bsc(0.08)], private=[0])
    rep = capacity_report(bc, UCFG)
    assert not rep.claims_capacity
    assert rep.region is not None  # inner bound still attached
    assert "no capacity claim" in rep.to_text()


def test_case_i_implies_cor2_class_and_region_containment():
    bc = BroadcastSpec.of([bsc(0.05), bsc(0.1), bsc(0.15), bsc(0.2)], private=[0])
    graph = ordering_graph(bc, CFG)
    t1 = classify_theorem1(bc, CFG, graph=graph)
    assert "thm1-i" in kinds(t1)
    t3 = classify_theorem3(bc, 2, CFG, graph=graph)  # l = L+1
    assert t3.matched, "case-i channels satisfy the one-indirect-group class"
    # union-level containment: the cor2 region is at least the sup region
    from nestedcast.optimize import union_region
    from nestedcast.regions import SchemeId

    sup = union_region(bc, SchemeId("sup"), UCFG)
    cor2 = union_region(bc, SchemeId("cor2", r=1), UCFG)
    for lam in UCFG.lambdas:
        assert cor2.support(lam) >= sup.support(lam) - 0.01


def test_sampled_caveat_and_strict_mode():
    bc = BroadcastSpec.of([bec(0.3), bsc(0.1), bsc(0.15)], private=[0])
    rep = classify_theorem1(bc, CFG)
    mi_ = next(m for m in rep.matched if m.kind == "thm1-i")
    assert mi_.sampled  # the BEC-over-BSC dominance is sampling-certified
    assert any("sampled" in c for c in rep.caveats)
    strict = classify_theorem1(bc, CFG.with_(strict_orders=True))
    assert "thm1-i" not in kinds(strict)
    # the BSC pair is degradation-ordered, so the two-critical-receiver
    # pattern still matches with LP-certified evidence only
    assert "thm1-iii" in kinds(strict)
    assert not strict.caveats


def test_agreement_check_between_matched_formulas():
    bc = BroadcastSpec.of([bsc(0.1), bsc(0.2)], private=[0])
    rep = capacity_report(bc, UCFG.with_(verify_agreement=True))
    assert rep.agreement_gap is not None
    assert rep.agreement_gap <= 0.02


def test_matched_witnesses_reverify_from_evidence():
    # every matched class must re-check against the verdicts shipped with it
    bc = BroadcastSpec.of([bsc(0.05), bsc(0.1), bsc(0.2)], private=[0])
    rep = classify_theorem1(bc, CFG)
    g = rep.evidence

    def holds(rel, i, j):
        return g.verdict("degraded", i, j).yes or g.verdict(rel, i, j).yes

    for m in rep.matched:
        if m.kind == "thm1-i":
            r = m.witnesses["r"]
            assert all(holds("more_capable", s, r) for s in bc.private_set if s != r)
            assert all(holds("less_noisy", r, c) for c in bc.common_set)
        if m.kind == "thm1-ii":
            j = m.witnesses["j"]
            assert all(holds("less_noisy", c, j) for c in bc.common_set if c != j)
            assert all(holds("less_noisy", s, j) for s in bc.private_set)
        if m.kind == "thm1-iii":
            j, r = m.witnesses["j"], m.witnesses["r"]
            assert all(holds("less_noisy", c, j) for c in bc.common_set if c != j)
            assert all(holds("more_capable", s, r) for s in bc.private_set if s != r)


def test_k2_report_emits_km2_union():
    bc = BroadcastSpec.of([bsc(0.1), bsc(0.2)], private=[0])
    rep = capacity_report(bc, UCFG)
    assert rep.claims_capacity
    assert kinds(rep)[0] == "thm1-iii"
    v0 = rep.region.support(0.0)
    assert v0 == pytest.approx(0.5310044, abs=0.01)
