"""Exact linear programming over rationals.

A small two-phase simplex on ``fractions.Fraction`` tableaus, used by the
Fourier-Motzkin machinery for redundancy removal and polyhedron containment.
Problems are tiny (tens of rows, under ten free variables), so clarity and
exactness win over speed: Bland's rule everywhere, no scaling tricks.

Problem form:  maximize c.x  subject to  A x <= b,  x free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class LPResult:
    status: str                              # optimal | unbounded | infeasible
    value: Optional[Fraction] = None
    point: Optional[tuple[Fraction, ...]] = None
    ray: Optional[tuple[Fraction, ...]] = None  # improving direction when unbounded


class _Tableau:
    """Simplex tableau in equality form  M w = rhs,  w >= 0."""

    def __init__(self, matrix, rhs, basis):
        self.m = matrix          # list of rows, each a list of Fractions
        self.rhs = rhs           # list of Fractions, all >= 0
        self.basis = basis       # basis[i] = column index basic in row i

    def pivot(self, r: int, c: int) -> None:
        piv = self.m[r][c]
        inv = ONE / piv
        self.m[r] = [v * inv for v in self.m[r]]
        self.rhs[r] *= inv
        for i in range(len(self.m)):
            if i == r:
                continue
            f = self.m[i][c]
            if f == 0:
                continue
            row_r = self.m[r]
            self.m[i] = [a - f * b for a, b in zip(self.m[i], row_r)]
            self.rhs[i] -= f * self.rhs[r]
        self.basis[r] = c

    def maximize(self, cost: list[Fraction]) -> tuple[str, Optional[int]]:
        """Run simplex on the reduced cost row; returns ('optimal', None) or
        ('unbounded', entering_column)."""
        ncols = len(cost)
        # price out the current basis
        red = list(cost)
        offset = ZERO
        for i, bcol in enumerate(self.basis):
            f = red[bcol]
            if f == 0:
                continue
            row = self.m[i]
            for j in range(ncols):
                red[j] -= f * row[j]
            offset += f * self.rhs[i]
        self._offset = offset
        while True:
            enter = -1
            for j in range(ncols):
                if red[j] > 0:
                    enter = j
                    break  # Bland: smallest improving index
            if enter < 0:
                self._red = red
                return "optimal", None
            leave = -1
            best = None
            for i in range(len(self.m)):
                a = self.m[i][enter]
                if a > 0:
                    ratio = self.rhs[i] / a
                    if best is None or ratio < best or (ratio == best and self.basis[i] < self.basis[leave]):
                        best = ratio
                        leave = i
            if leave < 0:
                self._red = red
                return "unbounded", enter
            self.pivot(leave, enter)
            f = red[enter]
            row = self.m[leave]
            for j in range(ncols):
                red[j] -= f * row[j]
            self._offset += f * self.rhs[leave]

    def objective_value(self) -> Fraction:
        return self._offset

    def solution(self, ncols: int) -> list[Fraction]:
        w = [ZERO] * ncols
        for i, bcol in enumerate(self.basis):
            if bcol < ncols:
                w[bcol] = self.rhs[i]
        return w

    def ray(self, enter: int, ncols: int) -> list[Fraction]:
        d = [ZERO] * ncols
        d[enter] = ONE
        for i, bcol in enumerate(self.basis):
            if bcol < ncols:
                d[bcol] = -self.m[i][enter]
        return d


def _build(rows: Sequence[tuple[Sequence[Fraction], Fraction]], nvars: int):
    """Equality form with x = u - v split, slacks, and artificials where the
    (sign-normalized) right-hand side forces them.  Returns the tableau and
    the total structural column count (2*nvars + slacks)."""
    m = len(rows)
    nw = 2 * nvars
    nstruct = nw + m
    matrix: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    basis: list[int] = []
    art_cols: list[int] = []
    for i, (coeffs, b) in enumerate(rows):
        row = [ZERO] * nstruct
        for j in range(nvars):
            cj = Fraction(coeffs[j])
            if cj != 0:
                row[j] = cj
                row[nvars + j] = -cj
        row[nw + i] = ONE  # slack
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
            art_cols.append(i)
            basis.append(-1)  # patched below once artificial columns exist
        else:
            basis.append(nw + i)
        matrix.append(row)
        rhs.append(b)
    # append artificial columns
    nart = len(art_cols)
    total = nstruct + nart
    for row in matrix:
        row.extend([ZERO] * nart)
    for a, i in enumerate(art_cols):
        matrix[i][nstruct + a] = ONE
        basis[i] = nstruct + a
    return _Tableau(matrix, rhs, basis), nstruct, nart


def _phase1(tab: _Tableau, nstruct: int, nart: int) -> bool:
    """Drive artificials to zero; True iff feasible."""
    if nart == 0:
        return True
    total = nstruct + nart
    cost = [ZERO] * total
    for j in range(nstruct, total):
        cost[j] = Fraction(-1)
    status, _ = tab.maximize(cost)
    assert status == "optimal"  # phase-1 objective is bounded by 0
    if tab.objective_value() != 0:
        return False
    # pivot remaining artificials out of the basis where possible
    for i in range(len(tab.m)):
        if tab.basis[i] >= nstruct:
            for j in range(nstruct):
                if tab.m[i][j] != 0:
                    tab.pivot(i, j)
                    break
    # rows still basic in an artificial are identically zero; neutralize them
    keep_rows = [i for i in range(len(tab.m)) if tab.basis[i] < nstruct]
    tab.m = [tab.m[i][:nstruct] for i in keep_rows]
    tab.rhs = [tab.rhs[i] for i in keep_rows]
    tab.basis = [tab.basis[i] for i in keep_rows]
    return True


def _to_x(w: Sequence[Fraction], nvars: int) -> tuple[Fraction, ...]:
    return tuple(w[j] - w[nvars + j] for j in range(nvars))


def lp_max(
    objective: Sequence[Fraction],
    rows: Sequence[tuple[Sequence[Fraction], Fraction]],
) -> LPResult:
    """Maximize objective over {x : rows} with exact rational arithmetic."""
    nvars = len(objective)
    if not rows:
        # No constraints: any nonzero objective direction is unbounded.
        if any(Fraction(c) != 0 for c in objective):
            ray = tuple(Fraction(c) for c in objective)
            return LPResult("unbounded", point=tuple([ZERO] * nvars), ray=ray)
        return LPResult("optimal", value=ZERO, point=tuple([ZERO] * nvars))
    tab, nstruct, nart = _build(rows, nvars)
    if not _phase1(tab, nstruct, nart):
        return LPResult("infeasible")
    nw = 2 * nvars
    cost = [ZERO] * nstruct
    for j in range(nvars):
        cj = Fraction(objective[j])
        cost[j] = cj
        cost[nvars + j] = -cj
    status, enter = tab.maximize(cost)
    w = tab.solution(nstruct)
    point = _to_x(w, nvars)
    if status == "unbounded":
        ray = _to_x(tab.ray(enter, nstruct), nvars)
        return LPResult("unbounded", point=point, ray=ray)
    return LPResult("optimal", value=tab.objective_value(), point=point)


def lp_feasible(
    rows: Sequence[tuple[Sequence[Fraction], Fraction]], nvars: int
) -> Optional[tuple[Fraction, ...]]:
    """A feasible point of {x : rows}, or None."""
    if not rows:
        return tuple([ZERO] * nvars)
    tab, nstruct, nart = _build(rows, nvars)
    if not _phase1(tab, nstruct, nart):
        return None
    return _to_x(tab.solution(nstruct), nvars)
