"""Exact rational linear feasibility via phase-one simplex with Bland's rule.

Everything is Fraction arithmetic; Bland's pivoting rule guarantees
termination.  Infeasibility comes with a Farkas certificate extracted from
the phase-one duals.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)


def solve_nonneg(
    rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> tuple[list[Fraction] | None, list[Fraction] | None]:
    """Find x >= 0 with A x = b, or a Farkas certificate of infeasibility.

    Returns (x, None) when feasible, else (None, y) with yA <= 0 and yb > 0.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    flip = [ONE] * m
    tab = []
    for r in range(m):
        row = [Fraction(v) for v in rows[r]] + [ZERO] * m + [Fraction(rhs[r])]
        if row[-1] < 0:
            row = [-v for v in row]
            flip[r] = -ONE
        row[n + r] = ONE
        tab.append(row)
    width = n + m + 1
    # reduced-cost row for min(sum of artificials), basis = artificials
    obj = [ZERO] * width
    for j in range(width):
        s = ZERO
        for r in range(m):
            s += tab[r][j]
        obj[j] = -s
    for r in range(m):
        obj[n + r] += ONE  # artificial cost
    basis = [n + r for r in range(m)]

    while True:
        enter = -1
        for j in range(n + m):
            if obj[j] < 0:
                enter = j  # Bland: smallest index
                break
        if enter < 0:
            break
        leave = -1
        best = None
        for r in range(m):
            a = tab[r][enter]
            if a > 0:
                ratio = tab[r][-1] / a
                if best is None or ratio < best or (
                    ratio == best and basis[r] < basis[leave]
                ):
                    best = ratio
                    leave = r
        if leave < 0:
            raise AssertionError("phase one cannot be unbounded")
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for r in range(m):
            if r != leave and tab[r][enter] != 0:
                f = tab[r][enter]
                tab[r] = [v - f * w for v, w in zip(tab[r], tab[leave])]
        if obj[enter] != 0:
            f = obj[enter]
            obj = [v - f * w for v, w in zip(obj, tab[leave])]
        basis[leave] = enter

    objective = -obj[-1]
    if objective == 0:
        x = [ZERO] * n
        for r, b in enumerate(basis):
            if b < n:
                x[b] = tab[r][-1]
        return x, None
    # infeasible: dual from the reduced costs of the artificial columns
    y = [flip[r] * (ONE - obj[n + r]) for r in range(m)]
    return None, y


def feasible_point(
    n_vars: int,
    equalities: Sequence[tuple[Sequence[Fraction], Fraction]],
    inequalities: Sequence[tuple[Sequence[Fraction], Fraction]] = (),
) -> list[Fraction] | None:
    """Find free x with c.x = d for equalities and c.x >= d for inequalities.

    Returns a rational point or None.  Free variables are split into
    differences of nonnegative ones; inequalities get surplus variables.
    """
    n_ge = len(inequalities)
    rows: list[list[Fraction]] = []
    rhs: list[Fraction] = []
    for coeffs, d in equalities:
        row = [ZERO] * (2 * n_vars + n_ge)
        for k, c in enumerate(coeffs):
            row[k] = Fraction(c)
            row[n_vars + k] = -Fraction(c)
        rows.append(row)
        rhs.append(Fraction(d))
    for idx, (coeffs, d) in enumerate(inequalities):
        row = [ZERO] * (2 * n_vars + n_ge)
        for k, c in enumerate(coeffs):
            row[k] = Fraction(c)
            row[n_vars + k] = -Fraction(c)
        row[2 * n_vars + idx] = -ONE
        rows.append(row)
        rhs.append(Fraction(d))
    if not rows:
        return [ZERO] * n_vars
    sol, _ = solve_nonneg(rows, rhs)
    if sol is None:
        return None
    return [sol[k] - sol[n_vars + k] for k in range(n_vars)]
