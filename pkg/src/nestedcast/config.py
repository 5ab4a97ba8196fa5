"""Shared search configuration.

One knob object serves both the ordering testers (sampling budgets) and the
union-over-distributions optimizer (multistart ascent); all randomized
procedures derive their randomness from ``seed`` so results are reproducible
bit for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace


def default_lambdas() -> tuple[float, ...]:
    # 0.0 .. 3.0 in steps of 0.1, plus two axis-dominant directions.
    return tuple(round(0.1 * i, 10) for i in range(31)) + (10.0, 1000.0)


@dataclass(frozen=True)
class SearchConfig:
    # randomness / thresholds
    seed: int = 20240901
    tol: float = 1e-7          # verdict threshold: violations above it mean "no"
    noise_tol: float = 1e-9    # float-noise floor; violations in (noise_tol, tol] are undecided

    # ordering-test budgets
    pairs: int = 50_000        # midpoint-concavity sample pairs (less-noisy test)
    lines: int = 1_000         # random line scans (less-noisy test)
    line_points: int = 33      # sample points per line scan
    grid: float = 0.01         # seeding grid resolution on the simplex (|X| = 2)
    simplex_seeds: int = 2_000 # Dirichlet seed count for |X| > 2
    ascent_restarts: int = 8   # refinement starts (more-capable maximization)

    # union-search budgets
    cardinalities: tuple[int, ...] = ()  # per-level |U|; empty = |X| + card_extra
    card_extra: int = 2
    multistarts: int = 8
    ascent_iters: int = 40
    step0: float = 0.5
    fd_step: float = 1e-5
    lambdas: tuple[float, ...] = field(default_factory=default_lambdas)
    include_collapsed: bool = True  # also evaluate collapsed/degenerate chain variants

    # classification behavior
    strict_orders: bool = False  # accept only LP-certified (degradedness) positive verdicts
    verify_agreement: bool = False  # cross-check agreement of multiple matched formulas

    def with_(self, **kw) -> "SearchConfig":
        return replace(self, **kw)
