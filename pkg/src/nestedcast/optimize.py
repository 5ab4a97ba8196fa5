"""Supporting-line search for the union of a scheme's regions over coding
distributions.

For each direction weight lam >= 0 the search maximizes lam*R0 + R1 over the
per-chain polygon, with Dirichlet-random multistart chains refined by cyclic
coordinate ascent on the simplex (finite differences; projection by sorting).
Sweeping a lam grid yields an inner description (convex hull of achieved
corners, a true inner bound up to time sharing) and an outer description
(intersection of the supporting halfplanes); both are reported together with
their gap, never silently merged.

Auxiliary cardinalities default to |X| + 2 per level; the search is heuristic
and every report carries the budget that produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .config import SearchConfig
from .ordering import project_simplex
from .probkit import BroadcastSpec, MarkovChain, eval_mi_table
from .regions import SchemeId, region_special, scheme_num_levels, validate_scheme


@dataclass(frozen=True, eq=False)
class SupportPoint:
    lam: float
    value: float
    corner: tuple[float, float]
    chain: MarkovChain

    def csv_row(self, scheme: SchemeId, seed: int) -> str:
        return (
            f"{self.lam:.6g},{self.value:.9f},{self.corner[0]:.9f},{self.corner[1]:.9f},"
            f"{scheme.describe()},{seed}"
        )


def _chain_cards(bc: BroadcastSpec, levels: int, cfg: SearchConfig) -> list[int]:
    if cfg.cardinalities:
        if len(cfg.cardinalities) != levels:
            raise ValueError(f"{levels} cardinalities needed, got {len(cfg.cardinalities)}")
        return list(cfg.cardinalities)
    return [bc.input_size + cfg.card_extra] * levels


def _random_blocks(rng: np.random.Generator, cards: list[int], nx: int) -> list[np.ndarray]:
    """Chain parameters as stacked simplex rows: the top pmf then one kernel
    per level transition (the last one into X)."""
    blocks = [rng.dirichlet(np.ones(cards[0]))[None, :]]
    sizes = cards + [nx]
    for a, b in zip(sizes[:-1], sizes[1:]):
        blocks.append(rng.dirichlet(np.ones(b), size=a))
    return blocks


def _blocks_to_chain(blocks: list[np.ndarray]) -> MarkovChain:
    return MarkovChain.of(blocks[0][0], tuple(blocks[1:]))


def _copy_kernel(n_in: int, n_out: int) -> np.ndarray:
    k = np.zeros((n_in, n_out))
    k[np.arange(n_in), np.arange(n_in) % n_out] = 1.0
    return k


def _variants(blocks: list[np.ndarray], cfg: SearchConfig) -> list[list[np.ndarray]]:
    """Deterministic companions of a random start: collapsed upper levels
    (identity first kernel), a degenerate cloud center, and copy kernels
    (X follows the auxiliaries deterministically).  These anchor the
    axis-dominant and sum-rate directions that random kernels reach slowly."""
    out = [blocks]
    if not cfg.include_collapsed:
        return out
    const_top = [b.copy() for b in blocks]
    const_top[0] = np.eye(1, blocks[0].shape[1])
    out.append(const_top)
    det = [blocks[0].copy()] + [
        _copy_kernel(b.shape[0], b.shape[1]) for b in blocks[1:]
    ]
    out.append(det)
    det_u = [np.full((1, blocks[0].shape[1]), 1.0 / blocks[0].shape[1])] + det[1:]
    out.append(det_u)
    # degenerate cloud with a uniform channel input: the private-rate endpoint
    unif_x = [np.eye(1, blocks[0].shape[1])]
    for b in blocks[1:-1]:
        unif_x.append(np.eye(b.shape[0]) if b.shape[0] == b.shape[1] else np.full(b.shape, 1.0 / b.shape[1]))
    nx = blocks[-1].shape[1]
    unif_x.append(np.full(blocks[-1].shape, 1.0 / nx))
    out.append(unif_x)
    if len(blocks) >= 3 and blocks[1].shape[0] == blocks[1].shape[1]:
        collapsed = [b.copy() for b in blocks]
        collapsed[1] = np.eye(blocks[1].shape[0])
        out.append(collapsed)
        # the joint-preserving collapse: second level forced equal to the top
        composed = [blocks[0].copy(), np.eye(blocks[1].shape[0]), blocks[1] @ blocks[2]]
        composed += [b.copy() for b in blocks[3:]]
        out.append(composed)
        both = [b.copy() for b in collapsed]
        both[0] = np.eye(1, blocks[0].shape[1])
        out.append(both)
        det_c = [blocks[0].copy(), np.eye(blocks[1].shape[0])] + det[2:]
        out.append(det_c)
    return out


def embed_chain(chain: MarkovChain, levels: int) -> MarkovChain:
    """Pad a chain to ``levels`` auxiliary levels by inserting identity
    kernels below the top (all inserted levels equal the top variable)."""
    extra = levels - chain.num_aux
    if extra < 0:
        raise ValueError("cannot embed into fewer levels")
    if extra == 0:
        return chain
    eye = np.eye(chain.top.size)
    return MarkovChain.of(chain.top, (eye,) * extra + chain.kernels)


def _objective(bc: BroadcastSpec, scheme: SchemeId, lam: float) -> Callable:
    pairs = scheme.kind == "jointdec"

    def f(blocks: list[np.ndarray]) -> tuple[float, tuple[float, float]]:
        chain = _blocks_to_chain(blocks)
        mi = eval_mi_table(chain, bc, aux_pairs=pairs)
        poly = region_special(bc, mi, scheme)
        if poly.empty:
            return 0.0, (0.0, 0.0)
        return poly.support(lam)

    return f


def _ascend(f: Callable, blocks: list[np.ndarray], cfg: SearchConfig):
    best, corner = f(blocks)
    h = cfg.fd_step
    for it in range(cfg.ascent_iters):
        step = cfg.step0 / (1.0 + it / 5.0)
        improved = False
        for bi, block in enumerate(blocks):
            for ri in range(block.shape[0]):
                row = block[ri].copy()
                grad = np.zeros_like(row)
                for j in range(row.size):
                    pert = project_simplex(row + h * np.eye(1, row.size, j)[0])
                    block[ri] = pert
                    v, _ = f(blocks)
                    grad[j] = (v - best) / h
                    block[ri] = row
                if not np.any(grad > 0):
                    continue
                trial_step = step
                for _ in range(3):
                    cand = project_simplex(row + trial_step * grad)
                    block[ri] = cand
                    v, c = f(blocks)
                    if v > best + 1e-13:
                        best, corner = v, c
                        row = cand
                        improved = True
                        break
                    trial_step *= 0.25
                block[ri] = row
        if not improved and it > 2:
            break
    return best, corner, blocks


def support_value(
    bc: BroadcastSpec, scheme: SchemeId, lam: float, cfg: SearchConfig = SearchConfig()
) -> SupportPoint:
    """Best corner of the per-chain polygon in direction (lam, 1) over the
    multistart budget; deterministic given cfg.seed, and nondecreasing in
    ``multistarts`` because start i depends only on (seed, i)."""
    validate_scheme(scheme, bc)
    levels = scheme_num_levels(scheme, bc)
    cards = _chain_cards(bc, levels, cfg)
    f = _objective(bc, scheme, lam)
    best = None
    for i in range(cfg.multistarts):
        rng = np.random.default_rng([cfg.seed, levels, i])
        start = _random_blocks(rng, cards, bc.input_size)
        cand_blocks, cand_val, cand_corner = None, -np.inf, (0.0, 0.0)
        for var in _variants(start, cfg):
            v, c = f(var)
            if v > cand_val:
                cand_val, cand_corner, cand_blocks = v, c, var
        v, c, refined = _ascend(f, [b.copy() for b in cand_blocks], cfg)
        if best is None or v > best[0]:
            best = (v, c, refined)
    value, corner, blocks = best
    return SupportPoint(lam=lam, value=value, corner=corner, chain=_blocks_to_chain(blocks))


@dataclass(frozen=True, eq=False)
class UnionReport:
    """Inner and outer descriptions of a union sweep.

    The inner polygon is the downward-closed convex hull of achieved corners
    (every point genuinely achievable, possibly by time sharing); the outer
    polygon intersects the swept supporting halfplanes.  The support values
    are lifted to be consistent with the hull, which keeps inner inside
    outer by construction; ``gap`` is the largest distance from an outer
    vertex to the inner hull.
    """

    scheme: SchemeId
    seed: int
    points: tuple[SupportPoint, ...]
    inner_vertices: tuple[tuple[float, float], ...]
    outer_vertices: tuple[tuple[float, float], ...]
    gap: float
    budget: str = ""

    def support(self, lam: float) -> float:
        return max(lam * r0 + r1 for r0, r1 in self.inner_vertices)

    def to_text(self) -> str:
        lines = [f"union {self.scheme.describe()} seed={self.seed} gap={self.gap:.6f}"]
        if self.budget:
            lines.append(f"budget: {self.budget}")
        lines += [f"inner vertex {v[0]:.9f} {v[1]:.9f}" for v in self.inner_vertices]
        lines += [f"outer vertex {v[0]:.9f} {v[1]:.9f}" for v in self.outer_vertices]
        return "\n".join(lines)

    def csv(self) -> str:
        out = ["lambda,value,R0,R1,scheme,seed"]
        out += [p.csv_row(self.scheme, self.seed) for p in self.points]
        return "\n".join(out)


def _hull(points: list[tuple[float, float]]) -> list[tuple[float, float]]:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 1e-15:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 1e-15:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    i = min(range(len(hull)), key=lambda k: hull[k])
    return hull[i:] + hull[:i]


def _point_to_hull_dist(p: tuple[float, float], hull: list[tuple[float, float]]) -> float:
    if not hull:
        return float(np.hypot(*p))
    if len(hull) == 1:
        return float(np.hypot(p[0] - hull[0][0], p[1] - hull[0][1]))
    inside = True
    n = len(hull)
    d = np.inf
    for i in range(n):
        a, b = np.array(hull[i]), np.array(hull[(i + 1) % n])
        ab = b - a
        ap = np.array(p) - a
        crossv = ab[0] * ap[1] - ab[1] * ap[0]
        if crossv < -1e-12:
            inside = False
        t = np.clip(ap @ ab / max(ab @ ab, 1e-30), 0.0, 1.0)
        d = min(d, float(np.hypot(*(ap - t * ab))))
    return 0.0 if inside else d


def union_region(bc: BroadcastSpec, scheme: SchemeId, cfg: SearchConfig = SearchConfig()) -> UnionReport:
    """Sweep the lam grid and assemble the inner/outer sandwich."""
    points = [support_value(bc, scheme, lam, cfg) for lam in cfg.lambdas]
    corners = [p.corner for p in points]
    hull_pts = [(0.0, 0.0)]
    for r0, r1 in corners:
        hull_pts += [(r0, r1), (r0, 0.0), (0.0, r1)]
    inner = _hull(hull_pts)
    # self-consistency lift: every achieved corner supports every direction
    lifted = []
    for p in points:
        v = max(p.lam * r0 + r1 for r0, r1 in inner)
        lifted.append(SupportPoint(p.lam, max(p.value, v), p.corner, p.chain))
    outer = _outer_vertices([(p.lam, p.value) for p in lifted])
    gap = max((_point_to_hull_dist(v, inner) for v in outer), default=0.0)
    levels = scheme_num_levels(scheme, bc)
    cards = _chain_cards(bc, levels, cfg)
    budget = (
        f"aux cardinalities {cards} (|X|+{cfg.card_extra} heuristic), "
        f"{cfg.multistarts} starts x {cfg.ascent_iters} ascent iters, "
        f"{len(cfg.lambdas)} directions"
    )
    return UnionReport(
        scheme=scheme,
        seed=cfg.seed,
        points=tuple(lifted),
        inner_vertices=tuple(inner),
        outer_vertices=tuple(outer),
        gap=gap,
        budget=budget,
    )


def _outer_vertices(lines: list[tuple[float, float]]) -> list[tuple[float, float]]:
    """Vertices of {R0, R1 >= 0, lam*R0 + R1 <= v for each (lam, v)}."""
    # lines as (a, b, c): a*R0 + b*R1 <= c, plus the axes
    rows = [(lam, 1.0, v) for lam, v in lines]
    rows += [(-1.0, 0.0, 0.0), (0.0, -1.0, 0.0)]
    cand = []
    n = len(rows)
    for i in range(n):
        a1, b1, c1 = rows[i]
        for j in range(i + 1, n):
            a2, b2, c2 = rows[j]
            det = a1 * b2 - a2 * b1
            if abs(det) < 1e-12:
                continue
            r0 = (c1 * b2 - c2 * b1) / det
            r1 = (a1 * c2 - a2 * c1) / det
            if all(a * r0 + b * r1 <= c + 1e-9 for a, b, c in rows):
                cand.append((max(r0, 0.0), max(r1, 0.0)))
    return _hull(cand) if cand else [(0.0, 0.0)]


@dataclass(frozen=True)
class GapRow:
    lam: float
    value_a: float
    value_b: float

    @property
    def gap(self) -> float:
        return self.value_a - self.value_b


@dataclass(frozen=True)
class GapTable:
    scheme_a: SchemeId
    scheme_b: SchemeId
    rows: tuple[GapRow, ...]
    argmax_a: dict
    argmax_b: dict

    def csv(self) -> str:
        out = ["lambda,value_a,value_b,gap"]
        out += [f"{r.lam:.6g},{r.value_a:.9f},{r.value_b:.9f},{r.gap:.9f}" for r in self.rows]
        return "\n".join(out)


def compare_schemes(
    bc: BroadcastSpec, a: SchemeId, b: SchemeId, cfg: SearchConfig = SearchConfig()
) -> GapTable:
    """Per-direction support values of two schemes on one channel.

    Both searches share the same random starts; after optimizing, each
    scheme is also evaluated at the other's argmax chain (embedded into its
    own chain shape when level counts differ), so reported gaps reflect the
    formulas rather than divergent search luck.
    """
    la, lb = scheme_num_levels(a, bc), scheme_num_levels(b, bc)
    rows = []
    amax_a: dict = {}
    amax_b: dict = {}
    for lam in cfg.lambdas:
        pa = support_value(bc, a, lam, cfg)
        pb = support_value(bc, b, lam, cfg)
        va, vb = pa.value, pb.value
        fa = _objective(bc, a, lam)
        fb = _objective(bc, b, lam)
        if la >= lb:
            va = max(va, _best_over_variants(fa, embed_chain(pb.chain, la), cfg))
        if lb >= la:
            vb = max(vb, _best_over_variants(fb, embed_chain(pa.chain, lb), cfg))
        rows.append(GapRow(lam=lam, value_a=va, value_b=vb))
        amax_a[lam] = pa.chain
        amax_b[lam] = pb.chain
    return GapTable(scheme_a=a, scheme_b=b, rows=tuple(rows), argmax_a=amax_a, argmax_b=amax_b)


def _best_over_variants(f: Callable, chain: MarkovChain, cfg: SearchConfig) -> float:
    blocks = [chain.top[None, :]] + [k for k in chain.kernels]
    best = -np.inf
    for var in _variants(blocks, cfg):
        v, _ = f(var)
        best = max(best, v)
    return best
