"""Per-distribution achievable-rate polygons in the (R0, R1) plane.

Every region formula handled here is an intersection of halfspaces whose
coefficient vectors are (1,0), (0,1) or (1,1) with nonnegative right-hand
sides built from mutual-information atoms, so the polygon is recovered
exactly by pairwise line intersections inside the nonnegative quadrant.
min{...} bounds are expanded into one labeled halfspace per minimand so the
active constraint keeps its provenance.

Also here: the split-rate reliability polytope that superposition coding with
indirect decoding induces before the split rates are projected away, together
with an exact feasibility oracle for it (the dual route used to cross-check
the closed-form region).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .fme import AtomCombo, LinearSystem
from .probkit import BroadcastSpec, MITable, ValidationError

COEFFS = ((1, 0), (0, 1), (1, 1))


class SchemeError(ValueError):
    """Scheme/parameter combination invalid for the given channel."""


@dataclass(frozen=True)
class Halfspace2D:
    a0: int
    a1: int
    rhs: object  # float, or Fraction in exact mode
    label: str

    def __post_init__(self):
        if (self.a0, self.a1) not in COEFFS:
            raise ValidationError(f"halfspace coefficients must be one of {COEFFS}")

    def holds(self, r0, r1, tol=0) -> bool:
        return self.a0 * r0 + self.a1 * r1 <= self.rhs + tol


@dataclass(frozen=True)
class SchemeId:
    """Which region formula to evaluate.

    kinds: km2 (two-receiver region), sup (K-user superposition), thm2
    (full rate splitting), cor1 (two-group splitting, parameter l), thm3
    (two-group splitting specialized to witnesses l, j, r), cor2 (l = L+1
    specialization, parameter r), cor3 (l = K-1 specialization, parameters
    j, r), jointdec (cor1 at l = L+1 with unique instead of indirect
    decoding).
    """

    kind: str
    l: Optional[int] = None
    j: Optional[int] = None
    r: Optional[int] = None

    def describe(self) -> str:
        args = [f"{k}={v}" for k, v in (("l", self.l), ("j", self.j), ("r", self.r)) if v is not None]
        return self.kind + (f"({', '.join(args)})" if args else "")


def validate_scheme(scheme: SchemeId, bc: BroadcastSpec) -> None:
    k, L, K = scheme.kind, bc.L, bc.K
    if k == "km2":
        if (K, L) != (2, 1):
            raise SchemeError("km2 needs K=2, L=1")
    elif k in ("sup", "thm2"):
        pass
    elif k == "cor1":
        if scheme.l is None or not L + 1 <= scheme.l <= K:
            raise SchemeError(f"cor1 needs l in [L+1, K] = [{L + 1}, {K}]")
    elif k == "thm3":
        if scheme.l is None or not L + 1 <= scheme.l <= K:
            raise SchemeError(f"thm3 needs l in [L+1, K] = [{L + 1}, {K}]")
        if scheme.j is None or not L + 1 <= scheme.j <= scheme.l:
            raise SchemeError(f"thm3 needs j in the first common group [L+1, l]")
        if scheme.r is None or not 1 <= scheme.r <= L:
            raise SchemeError("thm3 needs a private receiver r in [1, L]")
    elif k == "cor2":
        if K < L + 2:
            raise SchemeError("cor2 needs at least two common receivers")
        if scheme.r is None or not 1 <= scheme.r <= L:
            raise SchemeError("cor2 needs a private receiver r in [1, L]")
    elif k == "cor3":
        if K < L + 2:
            raise SchemeError("cor3 needs at least two common receivers")
        if scheme.j is None or not L + 1 <= scheme.j <= K - 1:
            raise SchemeError("cor3 needs j in [L+1, K-1]")
        if scheme.r is None or not 1 <= scheme.r <= L:
            raise SchemeError("cor3 needs a private receiver r in [1, L]")
    elif k == "jointdec":
        if K < L + 2:
            raise SchemeError("jointdec needs at least two common receivers")
    else:
        raise SchemeError(f"unknown scheme kind {k!r}")


def scheme_num_levels(scheme: SchemeId, bc: BroadcastSpec) -> int:
    """Auxiliary chain levels the scheme's atoms are read from."""
    validate_scheme(scheme, bc)
    k = scheme.kind
    if k in ("km2", "sup"):
        return 1
    if k == "thm2":
        return bc.K - bc.L
    if k in ("cor1", "thm3"):
        return 1 if scheme.l == bc.K else 2
    return 2  # cor2, cor3, jointdec


# ---------------------------------------------------------------------------
# Polygon construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegionPolygon:
    """Downward-closed convex region in the nonnegative quadrant.

    ``vertices`` run counterclockwise starting at the origin.  ``empty``
    marks an infeasible constraint list; ``bounded`` is False when the input
    halfspaces fail to cap one of the rates (the finite vertices are still
    listed).
    """

    halfspaces: tuple[Halfspace2D, ...]
    vertices: tuple[tuple[float, float], ...]
    empty: bool = False
    bounded: bool = True

    def contains(self, r0, r1, tol=1e-9) -> bool:
        if self.empty:
            return False
        if r0 < -tol or r1 < -tol:
            return False
        return all(h.holds(r0, r1, tol) for h in self.halfspaces)

    def support(self, lam: float) -> tuple[float, tuple[float, float]]:
        """max lam*R0 + R1 over the region and an achieving vertex (ties
        prefer the smaller R0, so the private-rate axis point wins at lam=0)."""
        if self.empty or not self.bounded:
            raise ValidationError("support needs a nonempty bounded region")
        best = None
        corner = None
        for r0, r1 in self.vertices:
            v = lam * r0 + r1
            if best is None or v > best or (v == best and r0 < corner[0]):
                best, corner = v, (r0, r1)
        return best, corner

    @property
    def max_r0(self) -> float:
        return max((v[0] for v in self.vertices), default=0.0)

    @property
    def max_r1(self) -> float:
        return max((v[1] for v in self.vertices), default=0.0)

    def to_text(self) -> str:
        lines = []
        for h in self.halfspaces:
            lines.append(f"halfspace {h.a0} {h.a1} {float(h.rhs):.9f} {h.label}")
        if self.empty:
            lines.append("empty")
        else:
            for r0, r1 in self.vertices:
                lines.append(f"vertex {float(r0):.9f} {float(r1):.9f}")
            if not self.bounded:
                lines.append("unbounded")
        return "\n".join(lines)

    def labeled_set(self) -> set:
        return {(h.a0, h.a1, round(float(h.rhs), 12), h.label) for h in self.halfspaces}


def halfspaces_to_polygon(halfspaces: Sequence[Halfspace2D]) -> RegionPolygon:
    """Vertex form of the intersection with the nonnegative quadrant.

    Exact when every rhs is a Fraction (or int); float inputs use a 1e-9
    feasibility tolerance.  An infeasible list (some negative rhs) yields the
    explicit empty marker.
    """
    if not halfspaces:
        raise ValidationError("need at least one halfspace")
    exact = all(isinstance(h.rhs, (Fraction, int)) for h in halfspaces)
    conv = (lambda x: x) if exact else float

    def fam(a0, a1):
        vals = [conv(h.rhs) for h in halfspaces if (h.a0, h.a1) == (a0, a1)]
        return min(vals) if vals else None

    A, B, C = fam(1, 0), fam(0, 1), fam(1, 1)
    zero = Fraction(0) if exact else 0.0
    if any(conv(h.rhs) < zero for h in halfspaces):
        return RegionPolygon(tuple(halfspaces), (), empty=True)

    bounded = (A is not None or C is not None) and (B is not None or C is not None)
    a0 = min(x for x in (A, C) if x is not None) if (A is not None or C is not None) else None
    b0 = min(x for x in (B, C) if x is not None) if (B is not None or C is not None) else None

    cands = [(zero, zero)]
    if a0 is not None:
        cands.append((a0, zero))
    if b0 is not None:
        cands.append((zero, b0))
    if A is not None and b0 is not None:
        up = [x for x in (B, C - A if C is not None else None) if x is not None]
        if up:
            cands.append((A, min(up)))
    if B is not None and a0 is not None:
        right = [x for x in (A, C - B if C is not None else None) if x is not None]
        if right:
            cands.append((min(right), B))

    tol = zero if exact else 1e-9
    feas = []
    for r0, r1 in cands:
        if r0 < -tol or r1 < -tol:
            continue
        r0 = max(r0, zero)
        r1 = max(r1, zero)
        if all(h.holds(r0, r1, tol) for h in halfspaces):
            feas.append((r0, r1))
    # dedup and convex-hull order (counterclockwise from the origin)
    uniq = []
    for p in feas:
        if not any(_close(p, q, exact) for q in uniq):
            uniq.append(p)
    verts = _hull_ccw(uniq, exact)
    return RegionPolygon(tuple(halfspaces), tuple(verts), empty=False, bounded=bounded)


def _close(p, q, exact) -> bool:
    if exact:
        return p == q
    return abs(p[0] - q[0]) <= 1e-12 and abs(p[1] - q[1]) <= 1e-12


def _hull_ccw(points, exact):
    if len(points) <= 2:
        return sorted(points)
    pts = sorted(points)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    eps = 0 if exact else 1e-15
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= eps:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= eps:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    # rotate so the origin-most vertex leads
    i = min(range(len(hull)), key=lambda k: hull[k])
    return hull[i:] + hull[:i]


# ---------------------------------------------------------------------------
# Atom labels (auxiliary levels carry the receiver index they serve: U_K on top)
# ---------------------------------------------------------------------------

def _iu(level: int, rx: int) -> str:
    return f"I(U{level};Y{rx})"


def _ixu(rx: int, level: int) -> str:
    return f"I(X;Y{rx}|U{level})"


def _ix(rx: int) -> str:
    return f"I(X;Y{rx})"


def _need_levels(mi: MITable, n: int) -> None:
    if mi.num_aux != n:
        raise ValidationError(f"this scheme reads a {n}-level chain, table has {mi.num_aux}")


def region_superposition(bc: BroadcastSpec, mi: MITable) -> RegionPolygon:
    """Superposition-only region for a one-level chain p(u, x):
    R0 <= I(U;Y_c) for common c, R1 <= I(X;Y_s|U) and R0+R1 <= I(X;Y_s)
    for private s.  The single auxiliary carries the common message, so it
    is labeled U_K."""
    _need_levels(mi, 1)
    K = bc.K
    hs = []
    for c in bc.common_set:
        hs.append(Halfspace2D(1, 0, mi.iu_y(0, c), f"R0 <= {_iu(K, c)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(0, 1, mi.ix_y_given_u(0, s), f"R1 <= {_ixu(s, K)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(1, 1, mi.ix_y(s), f"R0+R1 <= {_ix(s)}"))
    return halfspaces_to_polygon(hs)


def region_thm2(bc: BroadcastSpec, mi: MITable) -> RegionPolygon:
    """Full rate-splitting region for a (K-L)-level chain U_K - ... - U_{L+1} - X:
    R0 <= I(U_c;Y_c); R1 <= I(X;Y_s|U_K);
    R0+R1 <= I(X;Y_s|U_c) + I(U_c;Y_c) for c != K; R0+R1 <= I(X;Y_s)."""
    K, L = bc.K, bc.L
    _need_levels(mi, K - L)
    pos = {c: K - c for c in bc.common_set}  # level position of U_c
    hs = []
    for c in bc.common_set:
        hs.append(Halfspace2D(1, 0, mi.iu_y(pos[c], c), f"R0 <= {_iu(c, c)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(0, 1, mi.ix_y_given_u(pos[K], s), f"R1 <= {_ixu(s, K)}"))
    for s in bc.private_set:
        for c in bc.common_set:
            if c == K:
                continue
            rhs = mi.ix_y_given_u(pos[c], s) + mi.iu_y(pos[c], c)
            hs.append(Halfspace2D(1, 1, rhs, f"R0+R1 <= {_ixu(s, c)}+{_iu(c, c)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(1, 1, mi.ix_y(s), f"R0+R1 <= {_ix(s)}"))
    return halfspaces_to_polygon(hs)


def region_cor1(bc: BroadcastSpec, mi: MITable, l: int) -> RegionPolygon:
    """Two-group splitting region for a chain U_K - U_l - X: the first common
    group C1 = {L+1..l} decodes the common message indirectly from U_l, the
    rest directly from U_K.  At l = K there is no splitting and the emitted
    list is exactly the superposition one."""
    K, L = bc.K, bc.L
    if not L + 1 <= l <= K:
        raise SchemeError(f"cor1 needs l in [L+1, K] = [{L + 1}, {K}]")
    if l == K:
        return region_superposition(bc, mi)
    _need_levels(mi, 2)
    c1s = [c for c in bc.common_set if c <= l]
    c2s = [c for c in bc.common_set if c > l]
    hs = []
    for c in c1s:
        hs.append(Halfspace2D(1, 0, mi.iu_y(1, c), f"R0 <= {_iu(l, c)}"))
    for c in c2s:
        hs.append(Halfspace2D(1, 0, mi.iu_y(0, c), f"R0 <= {_iu(K, c)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(0, 1, mi.ix_y_given_u(0, s), f"R1 <= {_ixu(s, K)}"))
    for s in bc.private_set:
        for c in c1s:
            rhs = mi.ix_y_given_u(1, s) + mi.iu_y(1, c)
            hs.append(Halfspace2D(1, 1, rhs, f"R0+R1 <= {_ixu(s, l)}+{_iu(l, c)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(1, 1, mi.ix_y(s), f"R0+R1 <= {_ix(s)}"))
    return halfspaces_to_polygon(hs)


def region_jointdec(bc: BroadcastSpec, mi: MITable) -> RegionPolygon:
    """Like cor1 at l = L+1 but the first common receiver decodes its level
    uniquely, adding R1 <= I(X;Y_s|U_{L+1}) + I(U_{L+1};Y_{L+1}|U_K).
    Every other reliability constraint stays, so this region is contained in
    the indirect-decoding one chain by chain."""
    K, L = bc.K, bc.L
    if K < L + 2:
        raise SchemeError("jointdec needs at least two common receivers")
    _need_levels(mi, 2)
    l = L + 1
    hs = []
    hs.append(Halfspace2D(1, 0, mi.iu_y(1, l), f"R0 <= {_iu(l, l)}"))
    for c in bc.common_set:
        if c == l:
            continue
        hs.append(Halfspace2D(1, 0, mi.iu_y(0, c), f"R0 <= {_iu(K, c)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(0, 1, mi.ix_y_given_u(0, s), f"R1 <= {_ixu(s, K)}"))
    for s in bc.private_set:
        rhs = mi.ix_y_given_u(1, s) + mi.iu_y_given_u(1, 0, l)
        hs.append(Halfspace2D(0, 1, rhs, f"R1 <= {_ixu(s, l)}+I(U{l};Y{l}|U{K})"))
    for s in bc.private_set:
        rhs = mi.ix_y_given_u(1, s) + mi.iu_y(1, l)
        hs.append(Halfspace2D(1, 1, rhs, f"R0+R1 <= {_ixu(s, l)}+{_iu(l, l)}"))
    for s in bc.private_set:
        hs.append(Halfspace2D(1, 1, mi.ix_y(s), f"R0+R1 <= {_ix(s)}"))
    return halfspaces_to_polygon(hs)


def region_special(bc: BroadcastSpec, mi: MITable, scheme: SchemeId) -> RegionPolygon:
    """Dispatch on the scheme id; specialized displays emit their exact
    inequality lists (cor2/cor3 omit the sum-rate line, which their channel
    classes make redundant)."""
    validate_scheme(scheme, bc)
    K, L = bc.K, bc.L
    kind = scheme.kind
    if kind in ("km2", "sup"):
        return region_superposition(bc, mi)
    if kind == "thm2":
        return region_thm2(bc, mi)
    if kind == "cor1":
        return region_cor1(bc, mi, scheme.l)
    if kind == "jointdec":
        return region_jointdec(bc, mi)
    if kind == "thm3":
        l, j, r = scheme.l, scheme.j, scheme.r
        hs = []
        if l == K:
            _need_levels(mi, 1)
            hs.append(Halfspace2D(1, 0, mi.iu_y(0, j), f"R0 <= {_iu(K, j)}"))
            hs.append(Halfspace2D(0, 1, mi.ix_y_given_u(0, r), f"R1 <= {_ixu(r, K)}"))
            hs.append(Halfspace2D(1, 1, mi.ix_y(r), f"R0+R1 <= {_ix(r)}"))
            return halfspaces_to_polygon(hs)
        _need_levels(mi, 2)
        hs.append(Halfspace2D(1, 0, mi.iu_y(1, j), f"R0 <= {_iu(l, j)}"))
        for c in bc.common_set:
            if c > l:
                hs.append(Halfspace2D(1, 0, mi.iu_y(0, c), f"R0 <= {_iu(K, c)}"))
        hs.append(Halfspace2D(0, 1, mi.ix_y_given_u(0, r), f"R1 <= {_ixu(r, K)}"))
        rhs = mi.ix_y_given_u(1, r) + mi.iu_y(1, j)
        hs.append(Halfspace2D(1, 1, rhs, f"R0+R1 <= {_ixu(r, l)}+{_iu(l, j)}"))
        hs.append(Halfspace2D(1, 1, mi.ix_y(r), f"R0+R1 <= {_ix(r)}"))
        return halfspaces_to_polygon(hs)
    if kind == "cor2":
        _need_levels(mi, 2)
        r, l = scheme.r, L + 1
        hs = [Halfspace2D(1, 0, mi.iu_y(1, l), f"R0 <= {_iu(l, l)}")]
        for c in bc.common_set:
            if c != l:
                hs.append(Halfspace2D(1, 0, mi.iu_y(0, c), f"R0 <= {_iu(K, c)}"))
        hs.append(Halfspace2D(0, 1, mi.ix_y_given_u(0, r), f"R1 <= {_ixu(r, K)}"))
        rhs = mi.ix_y_given_u(1, r) + mi.iu_y(1, l)
        hs.append(Halfspace2D(1, 1, rhs, f"R0+R1 <= {_ixu(r, l)}+{_iu(l, l)}"))
        return halfspaces_to_polygon(hs)
    if kind == "cor3":
        _need_levels(mi, 2)
        j, r, l = scheme.j, scheme.r, K - 1
        hs = [
            Halfspace2D(1, 0, mi.iu_y(1, j), f"R0 <= {_iu(l, j)}"),
            Halfspace2D(1, 0, mi.iu_y(0, K), f"R0 <= {_iu(K, K)}"),
            Halfspace2D(0, 1, mi.ix_y_given_u(0, r), f"R1 <= {_ixu(r, K)}"),
            Halfspace2D(
                1, 1, mi.ix_y_given_u(1, r) + mi.iu_y(1, j), f"R0+R1 <= {_ixu(r, l)}+{_iu(l, j)}"
            ),
        ]
        return halfspaces_to_polygon(hs)
    raise SchemeError(f"unknown scheme kind {kind!r}")  # pragma: no cover


# ---------------------------------------------------------------------------
# Split-rate reliability polytope (before projecting the split rates away)
# ---------------------------------------------------------------------------

def splitrate_template(K: int, L: int) -> LinearSystem:
    """Symbolic reliability system over (R0, R1, R1_{L+1}..R1_{K-1}):

    R0 <= I(U_K;Y_K);  R0 + sum_{j>=c} R1_j <= I(U_c;Y_c)  (c < K);
    R1 <= I(X;Y_s|U_K);  R1 - sum_{j>=c} R1_j <= I(X;Y_s|U_c);
    R0 + R1 <= I(X;Y_s);  sum_j R1_j <= R1;  R1_c >= 0.
    """
    if not 1 <= L < K:
        raise ValidationError(f"need 1 <= L < K, got L={L}, K={K}")
    split = [f"R1_{c}" for c in range(L + 1, K)]
    variables = ["R0", "R1"] + split
    n = len(variables)
    idx = {v: i for i, v in enumerate(variables)}
    rows = []

    def unit_row(pairs, rhs):
        co = [Fraction(0)] * n
        for v, c in pairs:
            co[idx[v]] = Fraction(c)
        rows.append((tuple(co), rhs))

    unit_row([("R0", 1)], AtomCombo.atom(_iu(K, K)))
    for c in range(L + 1, K):
        pairs = [("R0", 1)] + [(f"R1_{j}", 1) for j in range(c, K)]
        unit_row(pairs, AtomCombo.atom(_iu(c, c)))
    for s in range(1, L + 1):
        unit_row([("R1", 1)], AtomCombo.atom(_ixu(s, K)))
    for s in range(1, L + 1):
        for c in range(L + 1, K):
            pairs = [("R1", 1)] + [(f"R1_{j}", -1) for j in range(c, K)]
            unit_row(pairs, AtomCombo.atom(_ixu(s, c)))
    for s in range(1, L + 1):
        unit_row([("R0", 1), ("R1", 1)], AtomCombo.atom(_ix(s)))
    unit_row([("R1", -1)] + [(f"R1_{j}", 1) for j in range(L + 1, K)], AtomCombo.of(0))
    for c in range(L + 1, K):
        unit_row([(f"R1_{c}", -1)], AtomCombo.of(0))
    return LinearSystem.of(variables, rows)


def splitrate_atoms(bc: BroadcastSpec, mi: MITable) -> dict[str, Fraction]:
    """Exact rational values for every atom of ``splitrate_template`` (binary
    floats convert exactly)."""
    K, L = bc.K, bc.L
    if mi.num_aux != K - L:
        raise ValidationError(f"split-rate system reads a {K - L}-level chain, table has {mi.num_aux}")
    atoms: dict[str, Fraction] = {}
    for c in bc.common_set:
        atoms[_iu(c, c)] = Fraction(mi.iu_y(K - c, c))
    for s in bc.private_set:
        atoms[_ix(s)] = Fraction(mi.ix_y(s))
        for c in bc.common_set:
            atoms[_ixu(s, c)] = Fraction(mi.ix_y_given_u(K - c, s))
    return atoms


def splitrate_system(bc: BroadcastSpec, mi: MITable) -> LinearSystem:
    """The reliability polytope instantiated with the chain's atom values."""
    return splitrate_template(bc.K, bc.L).instantiate(splitrate_atoms(bc, mi))


def split_feasible(bc: BroadcastSpec, mi: MITable, r0, r1) -> bool:
    """Exact feasibility of the split-rate system at fixed (R0, R1) >= 0.

    The partial sums T_c = sum_{j>=c} R1_j decrease along the chain, each in
    its own interval, so the minimal monotone completion decides feasibility
    without an LP.
    """
    K, L = bc.K, bc.L
    r0, r1 = Fraction(r0), Fraction(r1)
    if r0 > Fraction(mi.iu_y(0, K)):
        return False
    for s in bc.private_set:
        if r1 > Fraction(mi.ix_y_given_u(0, s)):
            return False
        if r0 + r1 > Fraction(mi.ix_y(s)):
            return False
    t_prev = Fraction(0)
    for c in range(K - 1, L, -1):
        pos = K - c
        lo = r1 - min(Fraction(mi.ix_y_given_u(pos, s)) for s in bc.private_set)
        t = max(Fraction(0), lo, t_prev)
        hi = Fraction(mi.iu_y(pos, c)) - r0
        if c == L + 1:
            hi = min(hi, r1)
        if t > hi:
            return False
        t_prev = t
    return True


def thm2_contains_exact(bc: BroadcastSpec, mi: MITable, r0, r1) -> bool:
    """Closed-form membership in the full rate-splitting region, with the
    same exact rational atom values as ``split_feasible``."""
    K, L = bc.K, bc.L
    r0, r1 = Fraction(r0), Fraction(r1)
    if r0 < 0 or r1 < 0:
        return False
    for c in bc.common_set:
        if r0 > Fraction(mi.iu_y(K - c, c)):
            return False
    for s in bc.private_set:
        if r1 > Fraction(mi.ix_y_given_u(0, s)):
            return False
        if r0 + r1 > Fraction(mi.ix_y(s)):
            return False
        for c in bc.common_set:
            if c == K:
                continue
            pos = K - c
            if r0 + r1 > Fraction(mi.ix_y_given_u(pos, s)) + Fraction(mi.iu_y(pos, c)):
                return False
    return True
