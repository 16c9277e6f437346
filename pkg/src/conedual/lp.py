"""Exact two-phase simplex over Fractions (Bland's rule, dense tableau).

Solves   minimize c.x  subject to  A x = b, x >= 0.
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple = None
    value: Fraction = None


def _pivot(tab, basis, r, c):
    inv = 1 / tab[r][c]
    tab[r] = [v * inv for v in tab[r]]
    for i, row in enumerate(tab):
        if i != r and row[c] != 0:
            f = row[c]
            tab[i] = [a - f * b for a, b in zip(row, tab[r])]
    basis[r] = c


def _run(tab, basis, ncols):
    """Minimize the objective stored in the last row (reduced costs)."""
    m = len(tab) - 1
    while True:
        obj = tab[-1]
        c = next((j for j in range(ncols) if obj[j] < 0), None)
        if c is None:
            return "optimal"
        best = None
        r = None
        for i in range(m):
            if tab[i][c] > 0:
                ratio = tab[i][-1] / tab[i][c]
                if best is None or ratio < best or (ratio == best and basis[i] < basis[r]):
                    best, r = ratio, i
        if r is None:
            return "unbounded"
        _pivot(tab, basis, r, c)


def solve_lp(c, a_eq, b_eq):
    n = len(c)
    rows = []
    rhs = []
    for row, b in zip(a_eq, b_eq):
        row = [Fraction(v) for v in row]
        b = Fraction(b)
        if b < 0:
            row = [-v for v in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    m = len(rows)
    # phase one: artificial variables n..n+m-1
    tab = []
    for i, row in enumerate(rows):
        art = [Fraction(int(i == j)) for j in range(m)]
        tab.append(row + art + [rhs[i]])
    obj = [Fraction(0)] * (n + m + 1)
    for i in range(m):
        obj = [o - v for o, v in zip(obj, tab[i])]
    for j in range(n, n + m):
        obj[j] = Fraction(0)
    tab.append(obj)
    basis = list(range(n, n + m))
    _run(tab, basis, n)  # never enter artificials
    if tab[-1][-1] != 0:
        return LPResult("infeasible")
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    tab = [tab[i][:n] + [tab[i][-1]] for i in keep]
    basis = [basis[i] for i in keep]
    cost = [Fraction(v) for v in c] + [Fraction(0)]
    for i, bcol in enumerate(basis):
        f = cost[bcol]
        if f != 0:
            cost = [a - f * b for a, b in zip(cost, tab[i])]
    tab.append(cost)
    status = _run(tab, basis, n)
    if status == "unbounded":
        return LPResult("unbounded")
    x = [Fraction(0)] * n
    for i, bcol in enumerate(basis):
        x[bcol] = tab[i][-1]
    value = sum(Fraction(ci) * xi for ci, xi in zip(c, x))
    return LPResult("optimal", tuple(x), value)


def nonneg_combination(gens, y, free=()):
    """Find coefficients with sum_i lam_i gens[i] + sum_j mu_j free[j] = y, lam >= 0.

    Returns (lam, mu) or None when y is not in cone(gens) + span(free).
    """
    gens = list(gens)
    free = list(free)
    cols = gens + free + [tuple(-v for v in f) for f in free]
    if not cols:
        return ((), ()) if all(v == 0 for v in y) else None
    a_eq = [[col[i] for col in cols] for i in range(len(y))]
    res = solve_lp([0] * len(cols), a_eq, y)
    if res.status != "optimal":
        return None
    x = res.x
    g = len(gens)
    f = len(free)
    lam = x[:g]
    mu = tuple(x[g + j] - x[g + f + j] for j in range(f))
    return lam, mu
