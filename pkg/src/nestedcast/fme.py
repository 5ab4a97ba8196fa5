"""Exact Fourier-Motzkin elimination on named-variable inequality systems.

Rows are ``sum_j c_j x_j <= rhs`` with rational coefficients.  Right-hand
sides are rational combinations of named nonnegative atoms (the
mutual-information quantities), which can be instantiated to exact rationals;
a purely numeric system is the special case with no symbolic terms.

The module also provides LP-exact redundancy removal and polyhedron equality,
plus the two mechanical verifiers for the split-rate projection identities:
``verify_lemma2`` (partial projection keeps the nested-sum structure) and
``verify_lemma3`` (full projection collapses to two line families).
No tolerance appears anywhere here; all arithmetic is exact.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

from .ratlp import LPResult, lp_max

ZERO = Fraction(0)


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class AtomCombo:
    """const + sum_i coeff_i * atom_i with rational coefficients."""

    terms: tuple[tuple[str, Fraction], ...] = ()
    const: Fraction = ZERO

    @classmethod
    def of(cls, value=0, terms: Mapping[str, object] | None = None) -> "AtomCombo":
        tt = tuple(
            sorted((name, _fr(c)) for name, c in (terms or {}).items() if _fr(c) != 0)
        )
        return cls(terms=tt, const=_fr(value))

    @classmethod
    def atom(cls, name: str, coeff=1) -> "AtomCombo":
        return cls.of(0, {name: coeff})

    @property
    def is_numeric(self) -> bool:
        return not self.terms

    def __add__(self, other: "AtomCombo") -> "AtomCombo":
        d = dict(self.terms)
        for name, c in other.terms:
            d[name] = d.get(name, ZERO) + c
        return AtomCombo.of(self.const + other.const, d)

    def scale(self, f) -> "AtomCombo":
        f = _fr(f)
        return AtomCombo.of(self.const * f, {n: c * f for n, c in self.terms})

    def value(self, instantiation: Mapping[str, object] | None = None) -> Fraction:
        v = self.const
        for name, c in self.terms:
            if instantiation is None or name not in instantiation:
                raise KeyError(f"atom {name!r} has no value")
            v += c * _fr(instantiation[name])
        return v

    def __str__(self) -> str:
        parts = [] if self.const == 0 and self.terms else [str(self.const)]
        for name, c in self.terms:
            parts.append(name if c == 1 else f"{c}*{name}")
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class Row:
    """One inequality: coeffs . vars <= rhs."""

    coeffs: tuple[Fraction, ...]
    rhs: AtomCombo

    def canonical(self) -> "Row":
        """Scale by a positive rational so coefficients are integers with
        gcd 1 (all-zero rows are left unscaled)."""
        nz = [c for c in self.coeffs if c != 0]
        if not nz:
            return self
        den_lcm = 1
        for c in nz:
            den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
        num_gcd = 0
        for c in nz:
            num_gcd = gcd(num_gcd, abs(c.numerator * (den_lcm // c.denominator)))
        scale = Fraction(den_lcm, num_gcd)
        return Row(tuple(c * scale for c in self.coeffs), self.rhs.scale(scale))

    def is_tautology(self) -> bool:
        """Zero coefficients with a provably nonnegative right side (every
        atom is a nonnegative quantity)."""
        if any(c != 0 for c in self.coeffs):
            return False
        return self.rhs.const >= 0 and all(c >= 0 for _, c in self.rhs.terms)


@dataclass(frozen=True)
class LinearSystem:
    variables: tuple[str, ...]
    rows: tuple[Row, ...]

    @classmethod
    def of(cls, variables: Sequence[str], rows: Iterable) -> "LinearSystem":
        variables = tuple(variables)
        seen = set()
        out = []
        for r in rows:
            if not isinstance(r, Row):
                coeffs, rhs = r
                r = Row(
                    tuple(_fr(c) for c in coeffs),
                    rhs if isinstance(rhs, AtomCombo) else AtomCombo.of(rhs),
                )
            if len(r.coeffs) != len(variables):
                raise ValueError(f"row width {len(r.coeffs)} != {len(variables)} variables")
            r = r.canonical()
            key = (r.coeffs, r.rhs)
            if key not in seen:
                seen.add(key)
                out.append(r)
        return cls(variables=variables, rows=tuple(out))

    @property
    def is_numeric(self) -> bool:
        return all(r.rhs.is_numeric for r in self.rows)

    def instantiate(self, instantiation: Mapping[str, object]) -> "LinearSystem":
        return LinearSystem.of(
            self.variables,
            [Row(r.coeffs, AtomCombo.of(r.rhs.value(instantiation))) for r in self.rows],
        )

    def with_rows(self, extra: Iterable) -> "LinearSystem":
        return LinearSystem.of(self.variables, list(self.rows) + list(extra))

    def numeric_rows(self) -> list[tuple[tuple[Fraction, ...], Fraction]]:
        return [(r.coeffs, r.rhs.value()) for r in self.rows]

    def holds_at(self, point: Sequence) -> bool:
        pt = [_fr(x) for x in point]
        return all(sum(c * x for c, x in zip(r.coeffs, pt)) <= r.rhs.value() for r in self.rows)

    def to_text(self) -> str:
        lines = ["vars: " + " ".join(self.variables)]
        for r in self.rows:
            v = r.rhs.value()
            lines.append(
                " ".join(str(c) for c in r.coeffs) + f" <= {v.numerator}/{v.denominator}"
            )
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "LinearSystem":
        lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
        if not lines or not lines[0].startswith("vars:"):
            raise ValueError("system text must start with a 'vars:' header line")
        variables = lines[0].split(":", 1)[1].split()
        rows = []
        for ln in lines[1:]:
            lhs, rhs = ln.split("<=")
            coeffs = [Fraction(t) for t in lhs.split()]
            rows.append((coeffs, AtomCombo.of(Fraction(rhs.strip()))))
        return cls.of(variables, rows)


def eliminate(sys: LinearSystem, var: str) -> LinearSystem:
    """Standard Fourier-Motzkin step: combine every (positive, negative)
    coefficient pair on ``var`` and keep the rows not involving it."""
    if var not in sys.variables:
        raise ValueError(f"unknown variable {var!r}")
    k = sys.variables.index(var)
    keep_vars = sys.variables[:k] + sys.variables[k + 1:]

    def strip(coeffs):
        return coeffs[:k] + coeffs[k + 1:]

    zero, pos, neg = [], [], []
    for r in sys.rows:
        c = r.coeffs[k]
        (zero if c == 0 else pos if c > 0 else neg).append(r)
    out = [Row(strip(r.coeffs), r.rhs) for r in zero]
    for p in pos:
        cp = p.coeffs[k]
        for n in neg:
            cn = -n.coeffs[k]
            coeffs = tuple(a / cp + b / cn for a, b in zip(strip(p.coeffs), strip(n.coeffs)))
            out.append(Row(coeffs, p.rhs.scale(Fraction(1, 1) / cp) + n.rhs.scale(Fraction(1, 1) / cn)))
    return LinearSystem.of(keep_vars, out)


def _drop_dominated(rows: Sequence[Row]) -> tuple[list[Row], bool]:
    """Sound fast passes: provable tautologies go, and among rows sharing one
    coefficient vector only the smallest numeric rhs stays."""
    out: list[Row] = []
    best: dict[tuple, int] = {}
    changed = False
    for r in rows:
        if r.is_tautology():
            changed = True
            continue
        if r.rhs.is_numeric:
            i = best.get(r.coeffs)
            if i is not None and out[i].rhs.is_numeric:
                if out[i].rhs.const <= r.rhs.const:
                    changed = True
                    continue
                out[i] = r
                changed = True
                continue
            best[r.coeffs] = len(out)
        out.append(r)
    return out, changed


def remove_redundant(sys: LinearSystem) -> LinearSystem:
    """Drop a row iff its removal leaves the feasible set unchanged.

    Decided by exact LP: maximize the row's left side subject to all other
    (kept) rows; the row goes iff the optimum is <= its rhs.  Unbounded rows
    stay.  The numeric fast passes (tautologies, dominated duplicates) are
    sound shortcuts for the same criterion.
    """
    if not sys.is_numeric:
        raise ValueError("remove_redundant needs a numeric (instantiated) system")
    rows, _ = _drop_dominated(sys.rows)
    i = 0
    while i < len(rows):
        r = rows[i]
        others = [(q.coeffs, q.rhs.value()) for j, q in enumerate(rows) if j != i]
        res = lp_max(r.coeffs, others)
        if res.status == "infeasible" or (
            res.status == "optimal" and res.value <= r.rhs.value()
        ):
            rows.pop(i)
            continue
        i += 1
    return LinearSystem.of(sys.variables, rows)


def project(sys: LinearSystem, keep: Iterable[str]) -> LinearSystem:
    """Eliminate every variable not in ``keep`` (in variable-list order, so
    split rates go in ascending index order: each split appears in few rows
    and the row count stays linear), then prune redundant rows."""
    keep = set(keep)
    unknown = keep - set(sys.variables)
    if unknown:
        raise ValueError(f"unknown variables in keep set: {sorted(unknown)}")
    for var in list(sys.variables):
        if var not in keep:
            sys = eliminate(sys, var)
    if sys.is_numeric:
        sys = remove_redundant(sys)
    else:
        sys = LinearSystem.of(sys.variables, _drop_dominated(sys.rows)[0])
    return sys


def _violating_point(row: Row, host_rows, nvars: int):
    """A point of the host polyhedron violating ``row``, if one exists."""
    res: LPResult = lp_max(row.coeffs, host_rows)
    rhs = row.rhs.value()
    if res.status == "infeasible":
        return None
    if res.status == "optimal":
        if res.value <= rhs:
            return None
        return res.point
    # unbounded: walk along the improving ray until the row is violated
    lhs0 = sum(c * x for c, x in zip(row.coeffs, res.point))
    slope = sum(c * d for c, d in zip(row.coeffs, res.ray))
    t = (rhs - lhs0 + 1) / slope if slope > 0 else Fraction(1)
    if t < 1:
        t = Fraction(1)
    return tuple(x + t * d for x, d in zip(res.point, res.ray))


def _contained_in(host: LinearSystem, target: LinearSystem):
    """Is feasible(host) a subset of feasible(target)?  Returns (bool, witness)."""
    host_keys = {(r.coeffs, r.rhs.value()) for r in host.rows}
    host_by_coeffs: dict[tuple, Fraction] = {}
    for r in host.rows:
        v = r.rhs.value()
        cur = host_by_coeffs.get(r.coeffs)
        if cur is None or v < cur:
            host_by_coeffs[r.coeffs] = v
    host_rows = None
    for r in target.rows:
        rhs = r.rhs.value()
        if r.is_tautology():
            continue
        if (r.coeffs, rhs) in host_keys:
            continue
        tight = host_by_coeffs.get(r.coeffs)
        if tight is not None and tight <= rhs:
            continue
        if host_rows is None:
            host_rows = host.numeric_rows()
        pt = _violating_point(r, host_rows, len(host.variables))
        if pt is not None:
            return False, pt
    return True, None


def poly_equal(a: LinearSystem, b: LinearSystem):
    """Mutual containment of two numeric systems on the same variables.

    Returns (True, None) or (False, witness) where the witness is a point of
    one polyhedron outside the other.
    """
    if a.variables != b.variables:
        raise ValueError("poly_equal needs identical variable lists")
    if not (a.is_numeric and b.is_numeric):
        raise ValueError("poly_equal needs numeric systems")
    ok, wit = _contained_in(a, b)
    if not ok:
        return False, wit
    ok, wit = _contained_in(b, a)
    if not ok:
        return False, wit
    return True, None


# ---------------------------------------------------------------------------
# Split-rate projection identities
# ---------------------------------------------------------------------------

def _aname(c: int) -> str:
    return f"I(U{c};Y{c})"


def _bname(c: int) -> str:
    return f"I(U;Y|U{c})"


def _split_vars(lo: int, hi: int) -> list[str]:
    return [f"R1_{c}" for c in range(lo, hi + 1)]


def lemma_input_system(k: int, K: int) -> LinearSystem:
    """The split-rate reliability polytope with levels k..K (symbolic).

    Variables (R0, R1, R1_k..R1_K); for each level c:
    R0 + sum_{j>=c} R1_j <= I(U_c;Y_c) and R1 - sum_{j>=c} R1_j <= I(U;Y|U_c),
    plus sum_j R1_j <= R1 and R1_c >= 0.
    """
    if not 1 <= k <= K:
        raise ValueError(f"need 1 <= k <= K, got k={k}, K={K}")
    variables = ["R0", "R1"] + _split_vars(k, K)
    n = len(variables)

    def unit(name: str) -> int:
        return variables.index(name)

    rows = []
    for c in range(k, K + 1):
        co = [ZERO] * n
        co[unit("R0")] = Fraction(1)
        for j in range(c, K + 1):
            co[unit(f"R1_{j}")] = Fraction(1)
        rows.append((tuple(co), AtomCombo.atom(_aname(c))))
    for c in range(k, K + 1):
        co = [ZERO] * n
        co[unit("R1")] = Fraction(1)
        for j in range(c, K + 1):
            co[unit(f"R1_{j}")] = Fraction(-1)
        rows.append((tuple(co), AtomCombo.atom(_bname(c))))
    co = [ZERO] * n
    co[unit("R1")] = Fraction(-1)
    for j in range(k, K + 1):
        co[unit(f"R1_{j}")] = Fraction(1)
    rows.append((tuple(co), AtomCombo.of(0)))
    for c in range(k, K + 1):
        co = [ZERO] * n
        co[unit(f"R1_{c}")] = Fraction(-1)
        rows.append((tuple(co), AtomCombo.of(0)))
    return LinearSystem.of(variables, rows)


def lemma2_claim_system(k: int, l: int, K: int) -> LinearSystem:
    """Claimed result of projecting R1_k..R1_l out of ``lemma_input_system``."""
    if not k <= l <= K - 1:
        raise ValueError(f"need k <= l <= K-1, got k={k}, l={l}, K={K}")
    variables = ["R0", "R1"] + _split_vars(l + 1, K)
    n = len(variables)

    def unit(name: str) -> int:
        return variables.index(name)

    rows = []
    for c in range(k, l + 1):
        co = [ZERO] * n
        co[unit("R0")] = Fraction(1)
        co[unit("R1")] = Fraction(1)
        rows.append((tuple(co), AtomCombo.atom(_bname(c)) + AtomCombo.atom(_aname(c))))
    for c in range(k, l + 1):
        co = [ZERO] * n
        co[unit("R0")] = Fraction(1)
        for j in range(l + 1, K + 1):
            co[unit(f"R1_{j}")] = Fraction(1)
        rows.append((tuple(co), AtomCombo.atom(_aname(c))))
    for c in range(l + 1, K + 1):
        co = [ZERO] * n
        co[unit("R0")] = Fraction(1)
        for j in range(c, K + 1):
            co[unit(f"R1_{j}")] = Fraction(1)
        rows.append((tuple(co), AtomCombo.atom(_aname(c))))
    for c in range(l + 1, K + 1):
        co = [ZERO] * n
        co[unit("R1")] = Fraction(1)
        for j in range(c, K + 1):
            co[unit(f"R1_{j}")] = Fraction(-1)
        rows.append((tuple(co), AtomCombo.atom(_bname(c))))
    co = [ZERO] * n
    co[unit("R1")] = Fraction(-1)
    for j in range(l + 1, K + 1):
        co[unit(f"R1_{j}")] = Fraction(1)
    rows.append((tuple(co), AtomCombo.of(0)))
    for c in range(l + 1, K + 1):
        co = [ZERO] * n
        co[unit(f"R1_{c}")] = Fraction(-1)
        rows.append((tuple(co), AtomCombo.of(0)))
    return LinearSystem.of(variables, rows)


def lemma3_claim_system(k: int, K: int) -> LinearSystem:
    """Claimed full projection onto (R0, R1): the two line families
    R0 + R1 <= I(U;Y|U_c) + I(U_c;Y_c) and R0 <= I(U_c;Y_c), c in k..K."""
    variables = ["R0", "R1"]
    rows = []
    for c in range(k, K + 1):
        rows.append(((Fraction(1), Fraction(1)), AtomCombo.atom(_bname(c)) + AtomCombo.atom(_aname(c))))
        rows.append(((Fraction(1), ZERO), AtomCombo.atom(_aname(c))))
    return LinearSystem.of(variables, rows)


def _rate_nonneg_rows(variables: Sequence[str]) -> list:
    """R0 >= 0 and R1 >= 0, added to both sides before comparing (message
    rates are nonnegative; the claimed polygon statements presume it)."""
    rows = []
    for name in ("R0", "R1"):
        co = [ZERO] * len(variables)
        co[list(variables).index(name)] = Fraction(-1)
        rows.append((tuple(co), AtomCombo.of(0)))
    return rows


def validate_monotone_atoms(atoms: Mapping[str, Fraction], k: int, K: int) -> None:
    """The projection identities assume the chain's conditional informations
    are nondecreasing toward the top: I(U;Y|U_c) <= I(U;Y|U_{c+1}).  Reject
    instantiations that break the declared order (or negativity)."""
    for c in range(k, K + 1):
        if atoms[_aname(c)] < 0 or atoms[_bname(c)] < 0:
            raise ValueError(f"negative atom at level {c}")
        if c > k and atoms[_bname(c)] < atoms[_bname(c - 1)]:
            raise ValueError(
                f"conditional information decreases toward the top at level {c}: "
                f"{atoms[_bname(c)]} < {atoms[_bname(c - 1)]}"
            )


def random_monotone_atoms(k: int, K: int, rng: random.Random) -> dict[str, Fraction]:
    """Exact rational draws: I(U_c;Y_c) arbitrary nonnegative, I(U;Y|U_c)
    nondecreasing toward the top of the chain (c increasing)."""
    atoms: dict[str, Fraction] = {}
    for c in range(k, K + 1):
        den = rng.randint(1, 250)
        atoms[_aname(c)] = Fraction(rng.randint(0, 4 * den), den)
    bs = []
    for _ in range(K - k + 1):
        den = rng.randint(1, 250)
        bs.append(Fraction(rng.randint(0, 4 * den), den))
    bs.sort()
    for c, b in zip(range(k, K + 1), bs):
        atoms[_bname(c)] = b
    validate_monotone_atoms(atoms, k, K)
    return atoms


@dataclass
class FmeReport:
    lemma: str
    params: dict
    trials: int
    passes: int = 0
    failures: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passes == self.trials and not self.failures

    def text(self) -> str:
        head = f"{self.lemma} {self.params}: {self.passes}/{self.trials} trials equal ({self.elapsed:.2f}s)"
        if not self.failures:
            return head
        lines = [head]
        for trial, atoms, wit in self.failures:
            lines.append(f"  trial {trial}: witness {tuple(str(w) for w in wit)}")
            lines.append("  atoms: " + ", ".join(f"{n}={v}" for n, v in sorted(atoms.items())))
        return "\n".join(lines)


def _verify_projection(
    lemma: str,
    params: dict,
    input_sym: LinearSystem,
    claim_sym: LinearSystem,
    drop: Sequence[str],
    k: int,
    K: int,
    trials: int,
    seed: int,
) -> FmeReport:
    t0 = time.perf_counter()
    projected_sym = input_sym
    for var in drop:
        projected_sym = eliminate(projected_sym, var)
    report = FmeReport(lemma=lemma, params=params, trials=trials)
    for t in range(trials):
        rng = random.Random(seed * 1_000_003 + t)
        atoms = random_monotone_atoms(k, K, rng)
        got = projected_sym.instantiate(atoms).with_rows(_rate_nonneg_rows(projected_sym.variables))
        want = claim_sym.instantiate(atoms).with_rows(_rate_nonneg_rows(claim_sym.variables))
        equal, wit = poly_equal(got, want)
        if equal:
            report.passes += 1
        else:
            report.failures.append((t, atoms, wit))
    report.elapsed = time.perf_counter() - t0
    return report


def verify_lemma2(k: int, l: int, K: int, trials: int = 100, seed: int = 0) -> FmeReport:
    """Project R1_k..R1_l out of the split-rate polytope and check exact
    polyhedron equality with the claimed partially-projected system, on
    random monotone rational instantiations."""
    if not 1 <= k <= l <= K - 1:
        raise ValueError(f"need 1 <= k <= l <= K-1, got k={k}, l={l}, K={K}")
    return _verify_projection(
        "lemma2",
        {"k": k, "l": l, "K": K},
        lemma_input_system(k, K),
        lemma2_claim_system(k, l, K),
        [f"R1_{c}" for c in range(k, l + 1)],
        k,
        K,
        trials,
        seed,
    )


def verify_lemma3(k: int, K: int, trials: int = 100, seed: int = 0) -> FmeReport:
    """Project all split rates out and check equality with the two-family
    polygon {R0 + R1 <= I(U;Y|U_c) + I(U_c;Y_c), R0 <= I(U_c;Y_c)}."""
    if not 1 <= k <= K:
        raise ValueError(f"need 1 <= k <= K, got k={k}, K={K}")
    return _verify_projection(
        "lemma3",
        {"k": k, "K": K},
        lemma_input_system(k, K),
        lemma3_claim_system(k, K),
        [f"R1_{c}" for c in range(k, K + 1)],
        k,
        K,
        trials,
        seed,
    )
