"""Pairwise channel-ordering tests with machine-checkable certificates.

Three nested orderings between two channels sharing an input alphabet:

* degraded       -- W_c = W_s Q for some row-stochastic Q (decided exactly by
                    a small LP; the kernel Q is the certificate);
* less noisy     -- I(U;Y_s) >= I(U;Y_c) for every p(u, x); decided through
                    the equivalent criterion that p -> I(p;W_s) - I(p;W_c) is
                    concave on the simplex, sampled at random midpoints and
                    along random lines;
* more capable   -- I(X;Y_s) >= I(X;Y_c) for every p(x); decided by globally
                    maximizing the difference the other way.

Negative verdicts carry a certificate that re-verifies the defining
inequality directly; positive verdicts for the two sampled orderings are
reported as "yes (sampled)" together with the budget used.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.optimize import linprog

from .config import SearchConfig
from .probkit import (
    BroadcastSpec,
    ChannelMatrix,
    ValidationError,
    as_channel,
    mutual_info_rows,
)

DEGRADED_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class LessNoisyWitness:
    """Binary-U joint violating the less-noisy inequality: P(U=1) = lam,
    p(x|U=1) = p1, p(x|U=2) = p2."""

    lam: float
    p1: np.ndarray
    p2: np.ndarray

    def gap(self, w_s: np.ndarray, w_c: np.ndarray) -> float:
        """I(U;Y_s) - I(U;Y_c) at this joint (negative = violation)."""
        ps = np.vstack([self.p1, self.p2, self.lam * self.p1 + (1 - self.lam) * self.p2])
        ds = mutual_info_rows(ps, w_s)
        dc = mutual_info_rows(ps, w_c)
        delta = ds - dc
        return float(delta[2] - (self.lam * delta[0] + (1 - self.lam) * delta[1]))


@dataclass(frozen=True, eq=False)
class OrderVerdict:
    relation: str                      # degraded | less_noisy | more_capable
    holds: str                         # yes | no | undecided
    sampled: bool = False              # positive verdict rests on sampling only
    certificate: object = None         # Q kernel / LessNoisyWitness / pmf
    max_violation: float = 0.0
    samples: int = 0

    @property
    def yes(self) -> bool:
        return self.holds == "yes"

    def describe(self) -> str:
        tag = self.holds + (" (sampled)" if self.yes and self.sampled else "")
        return f"{self.relation}: {tag}"


def _check_pair(w_s, w_c) -> tuple[np.ndarray, np.ndarray]:
    ws = w_s.rows if isinstance(w_s, ChannelMatrix) else as_channel(w_s)
    wc = w_c.rows if isinstance(w_c, ChannelMatrix) else as_channel(w_c)
    if ws.shape[0] != wc.shape[0]:
        raise ValidationError(f"input sizes differ: {ws.shape[0]} vs {wc.shape[0]}")
    return ws, wc


def is_degraded(w_s, w_c, tol: float = DEGRADED_TOL) -> OrderVerdict:
    """Does a row-stochastic Q with W_c = W_s Q exist?

    Solved as an LP minimizing the max absolute deviation t over stochastic Q;
    yes iff the optimum is <= tol, with Q as the certificate.  On no, the
    optimal t is the margin by which every stochastic post-processing misses.
    """
    ws, wc = _check_pair(w_s, w_c)
    nx, ms = ws.shape
    mc = wc.shape[1]
    nq = ms * mc
    # variables: vec(Q) then t
    c = np.zeros(nq + 1)
    c[-1] = 1.0
    rows_ub = []
    rhs_ub = []
    for x in range(nx):
        for y in range(mc):
            pos = np.zeros(nq + 1)
            pos[y::mc][:ms] = ws[x]
            pos[-1] = -1.0
            rows_ub.append(pos.copy())
            rhs_ub.append(wc[x, y])
            neg = -pos
            neg[-1] = -1.0
            rows_ub.append(neg)
            rhs_ub.append(-wc[x, y])
    rows_eq = []
    for k in range(ms):
        row = np.zeros(nq + 1)
        row[k * mc:(k + 1) * mc] = 1.0
        rows_eq.append(row)
    res = linprog(
        c,
        A_ub=np.array(rows_ub),
        b_ub=np.array(rhs_ub),
        A_eq=np.array(rows_eq),
        b_eq=np.ones(ms),
        bounds=[(0, 1)] * nq + [(0, None)],
        method="highs",
    )
    if not res.success:  # pragma: no cover - the LP above is always feasible
        raise RuntimeError(f"degradedness LP failed: {res.message}")
    t = float(res.fun)
    q = np.clip(res.x[:nq].reshape(ms, mc), 0.0, None)
    q = q / q.sum(axis=1, keepdims=True)
    if t <= tol:
        return OrderVerdict("degraded", "yes", certificate=q, max_violation=t)
    return OrderVerdict("degraded", "no", max_violation=t)


def _delta(ps: np.ndarray, ws: np.ndarray, wc: np.ndarray) -> np.ndarray:
    return mutual_info_rows(ps, ws) - mutual_info_rows(ps, wc)


def is_less_noisy(w_s, w_c, cfg: SearchConfig = SearchConfig()) -> OrderVerdict:
    """Is Y_s less noisy than Y_c?

    Equivalent to concavity of Delta(p) = I(p;W_s) - I(p;W_c) on the simplex:
    for a binary U with P(U=1) = lam and conditionals p1, p2,
    I(U;Y_s) - I(U;Y_c) = Delta(mix) - E_U[Delta(p_U)], so any midpoint
    concavity violation converts directly into a definitional witness.
    """
    ws, wc = _check_pair(w_s, w_c)
    nx = ws.shape[0]
    rng = np.random.default_rng([cfg.seed, 101, nx])

    best_viol = -np.inf
    best_wit: Optional[LessNoisyWitness] = None

    # random midpoint pairs
    n = cfg.pairs
    p1 = rng.dirichlet(np.ones(nx), size=n)
    p2 = rng.dirichlet(np.ones(nx), size=n)
    lam = rng.uniform(0.05, 0.95, size=n)
    mid = lam[:, None] * p1 + (1 - lam)[:, None] * p2
    d1 = _delta(p1, ws, wc)
    d2 = _delta(p2, ws, wc)
    dm = _delta(mid, ws, wc)
    viol = lam * d1 + (1 - lam) * d2 - dm
    i = int(np.argmax(viol))
    if viol[i] > best_viol:
        best_viol = float(viol[i])
        best_wit = LessNoisyWitness(float(lam[i]), p1[i], p2[i])

    # second differences along lines: every simplex edge and vertex-to-
    # uniform segment (violations of the entropy-kink type live at the
    # boundary), then random chords
    m, npts = cfg.lines, cfg.line_points
    eye = np.eye(nx)
    unif = np.full((1, nx), 1.0 / nx)
    det_a = [eye[i] for i in range(nx) for k in range(i + 1, nx)] + [eye[i] for i in range(nx)]
    det_b = [eye[k] for i in range(nx) for k in range(i + 1, nx)] + [unif[0]] * nx
    a = np.vstack([det_a, rng.dirichlet(np.ones(nx), size=m)])
    b = np.vstack([det_b, rng.dirichlet(np.ones(nx), size=m)])
    m = a.shape[0]
    ts = np.linspace(0.0, 1.0, npts)
    pts = (1 - ts)[None, :, None] * a[:, None, :] + ts[None, :, None] * b[:, None, :]
    dl = _delta(pts.reshape(-1, nx), ws, wc).reshape(m, npts)
    d2nd = dl[:, :-2] - 2 * dl[:, 1:-1] + dl[:, 2:]
    j = np.unravel_index(int(np.argmax(d2nd)), d2nd.shape)
    line_viol = float(d2nd[j]) / 2.0  # midpoint form of the second difference
    if line_viol > best_viol:
        best_viol = line_viol
        best_wit = LessNoisyWitness(0.5, pts[j[0], j[1]], pts[j[0], j[1] + 2])

    samples = n + m * (npts - 2)
    if best_viol > cfg.tol:
        return OrderVerdict(
            "less_noisy", "no", certificate=best_wit, max_violation=best_viol, samples=samples
        )
    if best_viol > cfg.noise_tol:
        return OrderVerdict("less_noisy", "undecided", max_violation=best_viol, samples=samples)
    return OrderVerdict(
        "less_noisy", "yes", sampled=True, max_violation=max(best_viol, 0.0), samples=samples
    )


def project_simplex(x: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (by sorting)."""
    u = np.sort(x)[::-1]
    css = np.cumsum(u) - 1.0
    idx = np.arange(1, x.size + 1)
    cond = u - css / idx > 0
    rho = idx[cond][-1]
    theta = css[rho - 1] / rho
    return np.maximum(x - theta, 0.0)


def _mc_gap_and_grad(p: np.ndarray, ws: np.ndarray, wc: np.ndarray):
    """g(p) = I(p;W_c) - I(p;W_s) and its gradient (up to a simplex constant)."""
    qs = p @ ws
    qc = p @ wc

    def kl_rows(w, q):
        with np.errstate(divide="ignore", invalid="ignore"):
            t = np.where(w > 0, w * (np.log2(np.where(w > 0, w, 1.0)) - np.log2(np.where(q > 0, q, 1.0))), 0.0)
        return t.sum(axis=1)

    g = float(mutual_info_rows(p[None, :], wc)[0] - mutual_info_rows(p[None, :], ws)[0])
    grad = kl_rows(wc, qc) - kl_rows(ws, qs)
    return g, grad


def is_more_capable(w_s, w_c, cfg: SearchConfig = SearchConfig()) -> OrderVerdict:
    """Is Y_s more capable than Y_c?

    Maximizes g(p) = I(p;W_c) - I(p;W_s) over the simplex via grid/Dirichlet
    seeding plus projected-gradient ascent; yes iff the best value found stays
    at the floor (vertices pin g = 0, so the maximum is never negative).
    """
    ws, wc = _check_pair(w_s, w_c)
    nx = ws.shape[0]
    rng = np.random.default_rng([cfg.seed, 202, nx])

    if nx == 2:
        t = np.arange(0.0, 1.0 + 1e-12, cfg.grid)
        seeds = np.column_stack([1 - t, t])
    else:
        seeds = rng.dirichlet(np.ones(nx), size=cfg.simplex_seeds)
    seeds = np.vstack([seeds, np.eye(nx), np.full((1, nx), 1.0 / nx)])
    vals = mutual_info_rows(seeds, wc) - mutual_info_rows(seeds, ws)
    order = np.argsort(vals)[::-1]

    best_val = float(vals[order[0]])
    best_p = seeds[order[0]]
    for idx in order[: cfg.ascent_restarts]:
        p = seeds[idx].copy()
        step = 0.25
        g, grad = _mc_gap_and_grad(p, ws, wc)
        for _ in range(120):
            cand = project_simplex(p + step * grad)
            g2, grad2 = _mc_gap_and_grad(cand, ws, wc)
            if g2 > g + 1e-15:
                p, g, grad = cand, g2, grad2
            else:
                step *= 0.5
                if step < 1e-10:
                    break
        if g > best_val:
            best_val, best_p = g, p
    samples = seeds.shape[0]

    if best_val > cfg.tol:
        return OrderVerdict(
            "more_capable", "no", certificate=best_p, max_violation=best_val, samples=samples
        )
    if best_val > cfg.noise_tol:
        return OrderVerdict("more_capable", "undecided", max_violation=best_val, samples=samples)
    return OrderVerdict(
        "more_capable", "yes", sampled=True, max_violation=max(best_val, 0.0), samples=samples
    )


@dataclass(frozen=True, eq=False)
class OrderingGraph:
    """All pairwise verdicts of a broadcast channel plus the Hasse edges.

    Edge conventions follow the usual diagram style: a solid edge i -> j
    means Y_i is less noisy than Y_j, a dashed edge means Y_i is more capable
    than Y_j (and not known to be less noisy).  Transitively implied edges
    are dropped.
    """

    names: tuple[str, ...]
    verdicts: dict
    solid: tuple[tuple[int, int], ...]
    dashed: tuple[tuple[int, int], ...]

    def verdict(self, relation: str, i: int, j: int) -> OrderVerdict:
        return self.verdicts[(relation, i, j)]

    def edge_lines(self) -> list[str]:
        lines = [f"{i} solid {j}" for i, j in self.solid]
        lines += [f"{i} dashed {j}" for i, j in self.dashed]
        return lines

    def to_dot(self) -> str:
        out = ["digraph orderings {"]
        for idx, name in enumerate(self.names, start=1):
            out.append(f'  n{idx} [label="{name}"];')
        for i, j in self.solid:
            out.append(f"  n{i} -> n{j} [style=solid];")
        for i, j in self.dashed:
            out.append(f"  n{i} -> n{j} [style=dashed];")
        out.append("}")
        return "\n".join(out)

    def table_text(self) -> str:
        header = f"{'pair':>10} {'degraded':>12} {'less_noisy':>16} {'more_capable':>16}"
        rows = [header]
        k = len(self.names)
        for i in range(1, k + 1):
            for j in range(1, k + 1):
                if i == j:
                    continue
                cells = []
                for rel in ("degraded", "less_noisy", "more_capable"):
                    v = self.verdicts[(rel, i, j)]
                    cells.append(v.holds + ("*" if v.yes and v.sampled else ""))
                rows.append(f"{f'{i}->{j}':>10} {cells[0]:>12} {cells[1]:>16} {cells[2]:>16}")
        rows.append("(* = positive verdict certified by sampling only)")
        return "\n".join(rows)


def ordering_graph(bc: BroadcastSpec, cfg: SearchConfig = SearchConfig()) -> OrderingGraph:
    """Run all three testers on every ordered receiver pair."""
    k = bc.K
    verdicts: dict = {}
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j:
                continue
            wi, wj = bc.receiver(i), bc.receiver(j)
            verdicts[("degraded", i, j)] = is_degraded(wi, wj)
            verdicts[("less_noisy", i, j)] = is_less_noisy(wi, wj, cfg)
            verdicts[("more_capable", i, j)] = is_more_capable(wi, wj, cfg)

    def rel_yes(rel, i, j):
        return verdicts[(rel, i, j)].yes

    def reach(i, j):
        return rel_yes("less_noisy", i, j) or rel_yes("more_capable", i, j)

    solid = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j or not rel_yes("less_noisy", i, j):
                continue
            implied = any(
                rel_yes("less_noisy", i, m) and rel_yes("less_noisy", m, j)
                for m in range(1, k + 1)
                if m not in (i, j)
            )
            if not implied:
                solid.append((i, j))
    dashed = []
    for i in range(1, k + 1):
        for j in range(1, k + 1):
            if i == j or rel_yes("less_noisy", i, j) or not rel_yes("more_capable", i, j):
                continue
            implied = any(reach(i, m) and reach(m, j) for m in range(1, k + 1) if m not in (i, j))
            if not implied:
                dashed.append((i, j))
    return OrderingGraph(names=bc.names, verdicts=verdicts, solid=tuple(solid), dashed=tuple(dashed))
