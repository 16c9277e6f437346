"""Decomposition searches for Minkowski sums with one curved summand.

The question answered here is whether y - sum_i lam_i g_i lies in a closed
cone B for some coefficients lam (nonnegative for rays, free for lines).
With a second-order cone B and a single direction g the question is a
one-variable quadratic inequality and is decided exactly.  Otherwise a
bracketed numerical search is run and every candidate is re-checked with the
cone's own certification routine, so a success is always genuine while a
failure only means nothing was found.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize

LAMBDA_BOUND = 2.0 ** 60
_GRID = [0.0] + [s * 2.0 ** e for e in range(-40, 61) for s in (1.0, -1.0)]


@dataclass
class SearchProfile:
    """What a decomposition search tried, kept as evidence when it fails."""

    method: str
    evaluations: int = 0
    best_margin: float = -math.inf
    best_lambda: tuple = ()
    bound: float = LAMBDA_BOUND
    exhaustive: bool = False
    notes: list = field(default_factory=list)


def _shift(y, gens, lams):
    x = list(y)
    for lam, g in zip(lams, gens):
        lam = Fraction(lam)
        if lam:
            for i, gi in enumerate(g):
                x[i] -= lam * gi
    return tuple(x)


def soc_line_decision(y, g, ray):
    """Exactly decide whether y - lam*g is in the second-order cone for some lam.

    ``ray`` restricts lam >= 0.  Returns a Fraction lam or None.
    """
    yn, gn = y[-1], g[-1]
    lo = Fraction(0) if ray else None
    hi = None
    # last coordinate of y - lam*g must be nonnegative
    if gn > 0:
        hi = yn / gn
    elif gn < 0:
        b = yn / gn
        lo = b if lo is None else max(lo, b)
    elif yn < 0:
        return None
    if lo is not None and hi is not None and lo > hi:
        return None
    a = gn * gn - sum(v * v for v in g[:-1])
    b = -2 * (yn * gn - sum(u * v for u, v in zip(y[:-1], g[:-1])))
    c = yn * yn - sum(v * v for v in y[:-1])

    def quad(t):
        return (a * t + b) * t + c

    cands = [t for t in (lo, hi) if t is not None]
    if a < 0:
        v = -b / (2 * a)
        if lo is not None:
            v = max(v, lo)
        if hi is not None:
            v = min(v, hi)
        cands.append(v)
    if not cands:
        cands.append(Fraction(0))
    for t in cands:
        if quad(t) >= 0:
            return t
    up = hi is None and (a > 0 or (a == 0 and b > 0))
    down = lo is None and (a > 0 or (a == 0 and b < 0))
    for direction, start in ((1, lo), (-1, hi)):
        if (direction == 1 and not up) or (direction == -1 and not down):
            continue
        t0 = start if start is not None else Fraction(0)
        step = Fraction(1)
        while True:
            t = t0 + direction * step
            if quad(t) >= 0:
                return t
            step *= 2
    return None


def line_search(y, g, ray, cone, policy):
    """Bracketed search over lam in [-2^60, 2^60] (or [0, 2^60] for a ray)."""
    prof = SearchProfile("bracket+golden")

    def f(lam):
        prof.evaluations += 1
        x = _shift(y, [g], [lam])
        return cone.margin(x), x

    grid = [t for t in _GRID if not ray or t >= 0]
    grid.sort()
    vals = []
    for lam in grid:
        m, x = f(lam)
        vals.append(m)
        if m > prof.best_margin:
            prof.best_margin, prof.best_lambda = m, (lam,)
        if m >= 0 and cone.certify(x, policy):
            return (Fraction(lam),), prof
    i = int(np.argmax(vals))
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, len(grid) - 1)]
    invphi = (math.sqrt(5) - 1) / 2
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, xc = f(c)
    fd, xd = f(d)
    for _ in range(200):
        for m, x, lam in ((fc, xc, c), (fd, xd, d)):
            if m > prof.best_margin:
                prof.best_margin, prof.best_lambda = m, (lam,)
            if m >= 0 and cone.certify(x, policy):
                return (Fraction(lam),), prof
        if fc >= fd:
            b, d, fd, xd = d, c, fc, xc
            c = b - invphi * (b - a)
            fc, xc = f(c)
        else:
            a, c, fc, xc = c, d, fd, xd
            d = a + invphi * (b - a)
            fd, xd = f(d)
        if b - a <= 1e-15 * max(1.0, abs(a)):
            break
    prof.exhaustive = True
    return None, prof


def box_search(y, gens, rays, cone, policy):
    """Nelder-Mead search for several coefficients; rays use squared variables."""
    prof = SearchProfile("nelder-mead")
    k = len(gens)

    def lams_of(z):
        return [float(v) ** 2 if r else float(v) for v, r in zip(z, rays)]

    def neg_margin(z):
        prof.evaluations += 1
        lams = lams_of(z)
        if max(abs(v) for v in lams) > LAMBDA_BOUND:
            return math.inf
        return -cone.margin(_shift(y, gens, lams))

    starts = [np.zeros(k)]
    for j in range(k):
        for s in (1.0, -1.0, 10.0, -10.0):
            z = np.zeros(k)
            z[j] = s
            starts.append(z)
    for z0 in starts:
        res = minimize(neg_margin, z0, method="Nelder-Mead",
                       options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 400 * k})
        lams = lams_of(res.x)
        m = -res.fun
        if m > prof.best_margin:
            prof.best_margin, prof.best_lambda = m, tuple(lams)
        if m >= 0:
            x = _shift(y, gens, lams)
            if cone.certify(x, policy):
                return tuple(Fraction(v) for v in lams), prof
    prof.exhaustive = True
    return None, prof


def decompose(y, gens, rays, cone, policy):
    """Find lam with y - sum lam_i gens_i in ``cone``.

    Returns (lams or None, profile, proven) where ``proven`` tells whether a
    None answer is a proof rather than a search failure.
    """
    exact_inputs = all(isinstance(a, (int, Fraction)) for a in y)
    if not gens:
        ok = cone.certify(y, policy)
        return ((), SearchProfile("direct", 1, exhaustive=True), True) if ok else \
            (None, SearchProfile("direct", 1, exhaustive=True), True)
    if len(gens) == 1 and getattr(cone, "is_second_order", False) and exact_inputs:
        lam = soc_line_decision(y, gens[0], rays[0])
        prof = SearchProfile("quadratic", 1, exhaustive=True)
        return ((lam,) if lam is not None else None), prof, True
    if len(gens) == 1:
        lams, prof = line_search(y, gens[0], rays[0], cone, policy)
    else:
        lams, prof = box_search(y, gens, rays, cone, policy)
    return lams, prof, False


def shifted(y, gens, lams):
    return _shift(y, gens, lams)
