import numpy as np
import pytest

from nestedcast import BroadcastSpec, bsc, eval_mi_table
from nestedcast.optimize import compare_schemes, embed_chain, support_value, union_region
from nestedcast.regions import SchemeId, region_special

from conftest import fast_cfg, random_bc

CFG = fast_cfg()


def k2_bc():
    return BroadcastSpec.of([bsc(0.1), bsc(0.2)], private=[0])


def test_support_private_rate_direction():
    # lam = 0 maximizes the private rate; a constant cloud attains
    # max_p I(X;Y_1) = 1 - h(0.1)
    sp = support_value(k2_bc(), SchemeId("km2"), 0.0, CFG)
    assert sp.value == pytest.approx(0.5310044, abs=1e-3)
    assert sp.corner[0] == pytest.approx(0.0, abs=1e-9)


def test_support_common_rate_direction():
    # for large lam, value/lam approaches the best common rate min_i I(U;Y_i)
    sp = support_value(k2_bc(), SchemeId("km2"), 1000.0, CFG)
    assert sp.value / 1000.0 == pytest.approx(1 - 0.7219280949, abs=2e-3)  # 1 - h(0.2)


def test_support_km2_sum_direction_worked_value():
    sp = support_value(k2_bc(), SchemeId("km2"), 1.0, CFG)
    assert sp.value >= 0.531 - 0.01


def test_support_point_consistency():
    sp = support_value(k2_bc(), SchemeId("km2"), 1.0, CFG)
    mi = eval_mi_table(sp.chain, k2_bc())
    poly = region_special(k2_bc(), mi, SchemeId("km2"))
    v, _ = poly.support(1.0)
    assert v == pytest.approx(sp.value, abs=1e-9)
    assert poly.contains(*sp.corner, tol=1e-9)


def test_multistart_monotonicity():
    vals = []
    for m in (1, 2, 4):
        cfg = fast_cfg(multistarts=m)
        vals.append(support_value(k2_bc(), SchemeId("sup"), 0.7, cfg).value)
    assert vals[0] <= vals[1] + 1e-12 <= vals[2] + 2e-12


def test_seed_determinism():
    a = support_value(k2_bc(), SchemeId("km2"), 0.5, CFG)
    b = support_value(k2_bc(), SchemeId("km2"), 0.5, CFG)
    assert a.value == b.value and a.corner == b.corner
    assert np.array_equal(a.chain.top, b.chain.top)
    c = support_value(k2_bc(), SchemeId("km2"), 0.5, fast_cfg(seed=7))
    assert c.value == pytest.approx(a.value, abs=5e-3)  # same problem, other seed


def test_union_identical_receivers_degenerates():
    bc = BroadcastSpec.of([bsc(0.1), bsc(0.1), bsc(0.1)], private=[0])
    rep = union_region(bc, SchemeId("sup"), fast_cfg(lambdas=(0.0, 0.5, 1.0, 1.5, 2.0, 1000.0)))
    c = 0.5310044
    # all corners lie on (or under) the single sum line R0 + R1 = capacity
    for p in rep.points:
        if p.lam <= 2.0:
            assert p.corner[0] + p.corner[1] <= c + 1e-6
    assert rep.support(1.0) == pytest.approx(c, abs=5e-3)
    assert rep.gap <= 0.01


def test_union_cor1_top_equals_sup():
    bc = k2_bc()
    cfg = fast_cfg(lambdas=(0.0, 1.0, 1000.0))
    a = union_region(bc, SchemeId("cor1", l=2), cfg)
    b = union_region(bc, SchemeId("sup"), cfg)
    for pa, pb in zip(a.points, b.points):
        assert pa.value == pytest.approx(pb.value, abs=1e-6)


def test_inner_hull_inside_outer():
    rep = union_region(k2_bc(), SchemeId("km2"), CFG)
    for r0, r1 in rep.inner_vertices:
        for p in rep.points:
            assert p.lam * r0 + r1 <= p.value + 1e-9


def test_union_containment_thm2_over_sup(rng):
    for _ in range(10):
        K = int(rng.integers(2, 4))
        L = int(rng.integers(1, K))
        bc = random_bc(rng, K, L, n_out=2)
        cfg = fast_cfg(lambdas=(0.0, 1.0, 1000.0), multistarts=2, ascent_iters=5)
        sup = union_region(bc, SchemeId("sup"), cfg)
        # every sup corner is achievable for the full-splitting scheme under
        # the embedded chain
        for p in sup.points:
            chain = embed_chain(p.chain, K - L)
            poly = region_special(bc, eval_mi_table(chain, bc), SchemeId("thm2"))
            assert poly.contains(*p.corner, tol=1e-9)


def test_union_containment_chain_cor1_between(rng):
    bc = random_bc(rng, 4, 1, n_out=2)
    cfg = fast_cfg(lambdas=(0.0, 1.0), multistarts=2, ascent_iters=5)
    cor = union_region(bc, SchemeId("cor1", l=2), cfg)
    for p in cor.points:
        chain = embed_chain(p.chain, 3)
        poly = region_special(bc, eval_mi_table(chain, bc), SchemeId("thm2"))
        assert poly.contains(*p.corner, tol=1e-9)
    # and cor1 covers the plain superposition corners under the embedding
    sup = union_region(bc, SchemeId("sup"), cfg)
    for p in sup.points:
        chain = embed_chain(p.chain, 2)
        poly = region_special(bc, eval_mi_table(chain, bc), SchemeId("cor1", l=2))
        assert poly.contains(*p.corner, tol=1e-9)


def test_compare_same_scheme_zero_gap():
    table = compare_schemes(k2_bc(), SchemeId("km2"), SchemeId("km2"), CFG)
    for row in table.rows:
        assert row.gap == pytest.approx(0.0, abs=1e-12)


def test_compare_thm2_never_worse_than_sup(rng):
    bc = random_bc(rng, 3, 1, n_out=2)
    cfg = fast_cfg(lambdas=(0.0, 1.0, 2.0), multistarts=2, ascent_iters=6)
    table = compare_schemes(bc, SchemeId("thm2"), SchemeId("sup"), cfg)
    for row in table.rows:
        assert row.gap >= -1e-9
    assert table.csv().startswith("lambda,value_a,value_b,gap")


def test_support_csv_format():
    sp = support_value(k2_bc(), SchemeId("km2"), 0.5, CFG)
    row = sp.csv_row(SchemeId("km2"), CFG.seed)
    assert row.count(",") == 5 and row.endswith(str(CFG.seed))
