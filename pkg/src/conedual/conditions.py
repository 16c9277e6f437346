"""Regularity conditions of the hyperplane pair, as tri-state verdicts.

Sp: a feasible primal point interior to K1.
Sd: (t, y2) with y2 in K2* and q - h t - y2 interior to K1*.
Tp: K1* + K2* is closed (sufficient conditions and certificates only).
Td: q - h t interior to K1* + K2* for some t.

Rational polyhedral instances are decided exactly.  On float instances a
search failure yields Unknown, never Fails.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import linalg
from .cones import Product, SecondOrder
from .errors import InternalInvariantViolation, InvalidInstance, PolicyError
from .geometry import FLOAT, norm
from .lp import nonneg_combination
from .polycone import PolyCone
from .solver import Status, solve_primal_hyperplane

TD_PROBES = [Fraction(0)] + [-Fraction(2) ** k for k in range(61)]


class Tri(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Check:
    verdict: Tri
    witness: object = None
    note: str = ""

    @property
    def certain(self):
        return self.verdict is not Tri.UNKNOWN


@dataclass(frozen=True)
class ConditionReport:
    sp: Tri
    sd: Tri
    tp: Tri
    td: Tri
    witnesses: dict = field(default_factory=dict)


def _rational(x):
    return all(isinstance(a, (int, Fraction)) for a in x)


def strict_interior(K, x):
    """Exact interiority test when one is available, else None."""
    if not _rational(x):
        return None
    x = tuple(Fraction(a) for a in x)
    if K.is_polyhedral:
        return K.poly.interior(x)
    if isinstance(K, SecondOrder):
        return x[-1] > 0 and x[-1] * x[-1] > sum(a * a for a in x[:-1])
    if isinstance(K, Product):
        a = strict_interior(K.left, x[:K.left.dim])
        b = strict_interior(K.right, x[K.left.dim:])
        if a is False or b is False:
            return False
        return None if a is None or b is None else True
    return None


def _resolved_intersection(inst):
    try:
        return inst.intersection.resolve()
    except PolicyError:
        return None


def _relint_in_int_k1(inst):
    """Relative-interior point of K1 ∩ K2 and whether it lies in int K1.

    If some point of K1 ∩ K2 is interior to K1 then every relative-interior
    point of K1 ∩ K2 is, so one probe decides the question."""
    K = _resolved_intersection(inst)
    if K is None:
        return None, None, None
    x = K.relint_point()
    exact = strict_interior(inst.K1, x)
    if exact is None:
        exact = True if inst.K1.interior(x, FLOAT) else None
    return K, x, exact


# --- Sp -----------------------------------------------------------------------------

def check_sp(inst):
    K, x, inside = _relint_in_int_k1(inst)
    if K is None:
        return Check(Tri.UNKNOWN, note="intersection has no closed form")
    s = sum(a * b for a, b in zip(inst.h, x))
    if _rational(x) and _rational(inst.h):
        if s <= 0:
            return Check(Tri.FAILS, note="primal infeasible")
    elif s <= FLOAT.band(norm(x) * norm(inst.h)):
        return Check(Tri.UNKNOWN, note="relative-interior probe misses the hyperplane")
    if inside is True:
        return Check(Tri.HOLDS, tuple(a / s for a in x))
    if inside is False:
        return Check(Tri.FAILS, note="intersection lies in the boundary of K1")
    return Check(Tri.UNKNOWN)


# --- Sd -----------------------------------------------------------------------------

def check_sd(inst):
    if inst.K1.is_polyhedral and inst.K2.is_polyhedral:
        return _sd_exact(inst)
    return _sd_search(inst)


def _sd_exact(inst):
    n = inst.ambient_dim
    k1d = inst.K1.poly.dual()
    k2d = inst.K2.poly.dual()
    if not inst.K1.poly.is_pointed:
        return Check(Tri.FAILS, note="K1* has empty interior")
    h = tuple(Fraction(a) for a in inst.h)
    q = tuple(Fraction(a) for a in inst.q)
    big = PolyCone.minkowski([k1d, k2d, PolyCone.from_v(n, (), [linalg.primitive(h)])])
    if not big.interior(q):
        return Check(Tri.FAILS, note="q is not interior to K1* + K2* + span(h)")
    w = k1d.relint_point()
    eps = Fraction(1)
    while not big.contains(linalg.sub(q, linalg.scale(eps, w))):
        eps /= 2
    y = linalg.sub(q, linalg.scale(eps, w))
    r1 = [tuple(map(Fraction, g)) for g in k1d.generators]
    r2 = [tuple(map(Fraction, g)) for g in k2d.generators]
    lam, mu = nonneg_combination(r1 + r2, y, [h])
    y2 = [Fraction(0)] * n
    for c, g in zip(lam[len(r1):], r2):
        y2 = linalg.add(y2, linalg.scale(c, g))
    t = mu[0]
    rest = linalg.sub(linalg.sub(q, linalg.scale(t, h)), y2)
    if not (k1d.interior(rest) and k2d.contains(tuple(y2))):
        raise InternalInvariantViolation("Sd witness failed re-verification")
    return Check(Tri.HOLDS, (t, tuple(y2)))


def _sd_search(inst):
    k1d, k2d = inst.K1.dual(), inst.K2.dual()
    cands = [tuple(0 for _ in inst.q)]
    if k2d.is_polyhedral:
        for g in k2d.poly.generators:
            for s in (1, -1, Fraction(1, 2), 2):
                cands.append(tuple(s * Fraction(a) for a in g))
    for t in [Fraction(0)] + [s * Fraction(2) ** k for k in range(61) for s in (-1, 1)]:
        base = tuple(a - b * t for a, b in zip(inst.q, inst.h))
        for y2 in cands:
            if k2d.is_polyhedral and not k2d.poly.contains(tuple(map(Fraction, y2))):
                continue
            rest = tuple(a - b for a, b in zip(base, y2))
            inside = strict_interior(k1d, rest)
            if inside is None:
                inside = k1d.interior(rest, None if k1d.is_polyhedral else FLOAT)
            if inside:
                return Check(Tri.HOLDS, (t, y2))
    td = check_td(inst)
    if td.verdict is Tri.FAILS:
        return Check(Tri.FAILS, note="Td fails, and Sd implies Td")
    return Check(Tri.UNKNOWN, note="no witness found")


# --- Tp -----------------------------------------------------------------------------

def check_tp(inst):
    if inst.K1.is_polyhedral and inst.K2.is_polyhedral:
        return Check(Tri.HOLDS, note="both cones polyhedral")
    K, x, inside = _relint_in_int_k1(inst)
    if inside:
        return Check(Tri.HOLDS, x, note="intersection meets int K1")
    if inst.nonclosed_certificate is not None:
        return Check(Tri.FAILS, inst.nonclosed_certificate, note="non-closed sum certificate")
    return Check(Tri.UNKNOWN)


# --- Td -----------------------------------------------------------------------------

def _td_exact(poly, q, h):
    if poly.lines:
        return Check(Tri.FAILS, note="K1 ∩ K2 contains a line")
    if not poly.rays:
        return Check(Tri.HOLDS, Fraction(0))
    q = tuple(map(Fraction, q))
    h = tuple(map(Fraction, h))
    hi = math.inf
    for r in poly.rays:
        beta, alpha = linalg.dot(r, h), linalg.dot(r, q)
        if beta == 0:
            if alpha <= 0:
                return Check(Tri.FAILS, note="a ray orthogonal to h has <q,r> <= 0")
        elif alpha / beta < hi:
            hi = alpha / beta
    t = Fraction(0) if hi > 0 else hi - 1
    y = linalg.sub(q, linalg.scale(t, h))
    if not poly.dual().interior(y):
        raise InternalInvariantViolation("Td witness failed re-verification")
    return Check(Tri.HOLDS, t)


def check_td(inst):
    K = _resolved_intersection(inst)
    if K is not None and K.is_polyhedral and _rational(inst.q) and _rational(inst.h):
        return _td_exact(K.poly, inst.q, inst.h)
    J = inst.dual_closure
    for t in TD_PROBES:
        y = tuple(a - b * t for a, b in zip(inst.q, inst.h))
        try:
            if J.interior(y, FLOAT):
                return Check(Tri.HOLDS, t)
        except PolicyError:
            break
    return Check(Tri.UNKNOWN, note="no interior point found on the line")


# --- optimal-set boundedness ---------------------------------------------------------

@dataclass(frozen=True)
class BoundedCheck:
    bounded: bool
    certificate: tuple = None
    certain: bool = True


def check_bounded_optimal_set(inst):
    """Whether the primal optimal set is nonempty and bounded."""
    K = _resolved_intersection(inst)
    if K is None:
        K = inst.intersection
    policy = None if K.is_polyhedral else FLOAT
    primal = solve_primal_hyperplane(K, inst.q, inst.h, policy)
    if primal.status is not Status.FINITE:
        return BoundedCheck(False)
    try:
        d = K.recession(inst.h, inst.q, "le", policy)
    except PolicyError:
        return BoundedCheck(False, certain=False)
    if d is not None:
        return BoundedCheck(False, tuple(d), certain=K.is_polyhedral)
    if K.is_polyhedral and primal.attained is not True:
        raise InternalInvariantViolation("finite polyhedral primal without an optimum")
    return BoundedCheck(True, certain=K.is_polyhedral)


def check_U_bounded(K1, x, rho):
    """Whether {u in K1* : <x,u> <= rho} is bounded."""
    if rho <= 0:
        raise InvalidInstance("rho must be positive")
    if K1.is_polyhedral:
        x = tuple(map(Fraction, x))
        kd = K1.poly.dual()
        if kd.lines:
            return False
        return all(linalg.dot(x, g) > 0 for g in kd.rays)
    exact = strict_interior(K1, x)
    return exact if exact is not None else K1.interior(x, FLOAT)


# --- everything at once ----------------------------------------------------------------

def check_all(inst):
    sp, sd, tp, td = check_sp(inst), check_sd(inst), check_tp(inst), check_td(inst)
    if sp.verdict is Tri.HOLDS and tp.verdict is not Tri.HOLDS:
        raise InternalInvariantViolation("Sp holds but Tp is not confirmed")
    if sd.verdict is Tri.HOLDS and td.verdict is not Tri.HOLDS:
        raise InternalInvariantViolation("Sd holds but Td is not confirmed")
    witnesses = {k: c.witness for k, c in (("sp", sp), ("sd", sd), ("tp", tp), ("td", td))
                 if c.witness is not None}
    return ConditionReport(sp.verdict, sd.verdict, tp.verdict, td.verdict, witnesses)
