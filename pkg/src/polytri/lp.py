"""Exact rational feasibility LP: phase-one simplex with Bland's rule.

Solves systems ``E x = e, G x >= g`` over free rational variables.  When the
system is infeasible a Farkas certificate ``(nu, mu)`` is returned with
``mu >= 0``, ``nu E + mu G = 0`` and ``nu . e + mu . g > 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["LPResult", "solve_feasibility", "check_farkas"]


@dataclass(frozen=True)
class LPResult:
    feasible: bool
    solution: tuple[Fraction, ...] | None = None
    eq_multipliers: tuple[Fraction, ...] | None = None
    ge_multipliers: tuple[Fraction, ...] | None = None


def solve_feasibility(
    nvars: int,
    eq_rows: Sequence[Sequence] = (),
    eq_rhs: Sequence = (),
    ge_rows: Sequence[Sequence] = (),
    ge_rhs: Sequence = (),
) -> LPResult:
    neq, nge = len(eq_rows), len(ge_rows)
    m = neq + nge
    if m == 0:
        return LPResult(True, tuple(Fraction(0) for _ in range(nvars)))
    # columns: x+ (nvars), x- (nvars), slacks (nge), artificials (m)
    ncols = 2 * nvars + nge + m
    tab: list[list[Fraction]] = []
    signs: list[int] = []
    for i, (row, rhs) in enumerate(
        [(r, b) for r, b in zip(eq_rows, eq_rhs)] + [(r, b) for r, b in zip(ge_rows, ge_rhs)]
    ):
        rhs = Fraction(rhs)
        line = [Fraction(0)] * (ncols + 1)
        for j, a in enumerate(row):
            if a:
                line[j] = Fraction(a)
                line[nvars + j] = -Fraction(a)
        if i >= neq:
            line[2 * nvars + (i - neq)] = Fraction(-1)
        sign = 1
        if rhs < 0:
            sign = -1
            line = [-x for x in line]
            rhs = -rhs
        line[2 * nvars + nge + i] = Fraction(1)
        line[ncols] = rhs
        tab.append(line)
        signs.append(sign)
    basis = [2 * nvars + nge + i for i in range(m)]
    art0 = 2 * nvars + nge

    # reduced costs of the phase-one objective (sum of artificials)
    cost = [Fraction(0)] * (ncols + 1)
    for j in range(ncols + 1):
        if j < art0 or j == ncols:
            cost[j] = -sum(tab[i][j] for i in range(m))

    while True:
        enter = next((j for j in range(ncols) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][ncols] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            # cannot happen in phase one (objective bounded below by zero)
            raise RuntimeError("unbounded phase-one problem")
        _pivot(tab, cost, leave, enter)
        basis[leave] = enter

    objective = -cost[ncols]
    if objective == 0:
        x = [Fraction(0)] * (2 * nvars)
        for i, b in enumerate(basis):
            if b < 2 * nvars:
                x[b] = tab[i][ncols]
        return LPResult(True, tuple(x[j] - x[nvars + j] for j in range(nvars)))

    # y_i = c_{a_i} - reduced cost of artificial column i
    y = [1 - cost[art0 + i] for i in range(m)]
    mult = [s * yi for s, yi in zip(signs, y)]
    return LPResult(False, None, tuple(mult[:neq]), tuple(mult[neq:]))


def _pivot(tab: list[list[Fraction]], cost: list[Fraction], r: int, c: int) -> None:
    row = tab[r]
    inv = 1 / row[c]
    if inv != 1:
        tab[r] = row = [x * inv for x in row]
    nz = [j for j, x in enumerate(row) if x]
    for i, other in enumerate(tab):
        if i != r:
            f = other[c]
            if f:
                for j in nz:
                    other[j] -= f * row[j]
    f = cost[c]
    if f:
        for j in nz:
            cost[j] -= f * row[j]


def check_farkas(
    eq_rows: Sequence[Sequence],
    eq_rhs: Sequence,
    ge_rows: Sequence[Sequence],
    ge_rhs: Sequence,
    nu: Sequence,
    mu: Sequence,
) -> bool:
    """Verify that ``(nu, mu)`` proves ``E x = e, G x >= g`` infeasible."""
    if any(Fraction(x) < 0 for x in mu):
        return False
    nvars = len((list(eq_rows) + list(ge_rows))[0])
    combo = [Fraction(0)] * nvars
    for w, row in list(zip(nu, eq_rows)) + list(zip(mu, ge_rows)):
        for j, a in enumerate(row):
            combo[j] += Fraction(w) * a
    if any(combo):
        return False
    rhs = sum(Fraction(w) * b for w, b in zip(nu, eq_rhs)) + sum(Fraction(w) * b for w, b in zip(mu, ge_rhs))
    return rhs > 0
