"""Solvers for the hyperplane-constrained primal and the one-parameter dual.

The primal minimizes <q,x> over {x in K : <h,x> = 1}; the dual maximizes t
over {t : q - h t in J}.  For the two-cone pair the primal cone is K1 ∩ K2 and
the dual cone is K1* + K2* (or its closure, the dual of K1 ∩ K2).
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from . import linalg
from .cones import DualSum, Intersection, LinearSubspace
from .errors import InternalInvariantViolation, InvalidInstance, PolicyError
from .geometry import EXACT, FLOAT, check_dim, norm, project_onto, to_fraction
from .linalg import simplest_between

PROBE_EXPONENTS = range(61)
MAX_BISECTIONS = 200


class Status(str, Enum):
    FINITE = "finite"
    UNBOUNDED_BELOW = "unbounded_below"
    UNBOUNDED_ABOVE = "unbounded_above"
    INFEASIBLE = "infeasible"
    UNDECIDED = "numerically_undecided"


@dataclass(frozen=True)
class SolveOutcome:
    value: object
    status: Status
    attained: bool = None
    solution: object = None
    certificate: tuple = None
    flags: tuple = ()

    @property
    def finite(self):
        return self.status is Status.FINITE


def _rational(v):
    return all(isinstance(a, (int, Fraction)) or isinstance(a, str) for a in v)


def _coerce(v, exact):
    if exact or _rational(v):
        return tuple(to_fraction(a) for a in v)
    return tuple(float(a) for a in v)


@dataclass(frozen=True)
class HyperplaneInstance:
    """Data (K1, K2, q, h) of the primal min <q,x> s.t. x in K1 ∩ K2, <h,x> = 1."""

    K1: object
    K2: object
    q: tuple
    h: tuple
    policy: object = None
    instance_id: str = ""
    nonclosed_certificate: object = field(default=None, compare=False)

    def __post_init__(self):
        n = self.K1.dim
        if self.K2.dim != n:
            raise InvalidInstance("K1 and K2 live in different dimensions")
        check_dim(self.q, n, "q")
        check_dim(self.h, n, "h")
        poly = self.K1.is_polyhedral and self.K2.is_polyhedral
        policy = self.policy or (EXACT if poly else FLOAT)
        if policy.exact and not poly:
            raise PolicyError("exact policy needs rational polyhedral cones")
        object.__setattr__(self, "policy", policy)
        object.__setattr__(self, "q", _coerce(self.q, policy.exact))
        object.__setattr__(self, "h", _coerce(self.h, policy.exact))
        if all(a == 0 for a in self.h):
            raise InvalidInstance("h must be nonzero")
        if not self.K1.dual().member(self.h, self._policy_for(self.K1.dual())).inside:
            raise InvalidInstance("h must lie in the dual of K1")

    @property
    def ambient_dim(self):
        return self.K1.dim

    def _policy_for(self, cone):
        return None if cone.is_polyhedral else (self.policy if not self.policy.exact else FLOAT)

    @property
    def intersection(self):
        return Intersection((self.K1, self.K2))

    @property
    def dual_sum(self):
        closed = "proven_nonclosed" if self.nonclosed_certificate is not None else "unknown"
        if self.K1.is_polyhedral and self.K2.is_polyhedral:
            closed = "proven_closed"
        return DualSum((self.K1, self.K2), closed=closed,
                       certificate=self.nonclosed_certificate)

    @property
    def dual_closure(self):
        return self.intersection.dual()


# --- extended reals ------------------------------------------------------------

def extended_gap(p, d):
    """p - d with infinities; equal infinities give 0."""
    if p == d:
        return 0.0 if isinstance(p, float) and math.isfinite(p) else Fraction(0)
    return p - d


def _num(v):
    return float(v) if isinstance(v, float) else v


# --- the one-parameter dual ------------------------------------------------------

def solve_dual_line(J, q, h, policy=None, allow_zero_h=False):
    """sup {t : q - h t in J} with status, attainment and certificates."""
    check_dim(q, J.dim, "q")
    check_dim(h, J.dim, "h")
    if not allow_zero_h and all(a == 0 for a in h):
        raise InvalidInstance("h must be nonzero")
    if J.is_polyhedral:
        return _dual_line_exact(J.poly, tuple(map(to_fraction, q)), tuple(map(to_fraction, h)))
    policy = J._policy(policy)
    return _dual_line_float(J, q, h, policy)


def _dual_line_exact(pc, q, h):
    ineqs, eqs = pc.h
    oriented = []
    for e in eqs:
        oriented += [tuple(Fraction(a) for a in e), tuple(Fraction(-a) for a in e)]
    oriented += [tuple(Fraction(a) for a in v) for v in ineqs]
    lo, hi = -math.inf, math.inf
    lo_src = hi_src = None
    for a in oriented:
        alpha, beta = linalg.dot(a, q), linalg.dot(a, h)
        # constraint: alpha - t * beta >= 0
        if beta == 0:
            if alpha < 0:
                return SolveOutcome(-math.inf, Status.INFEASIBLE, certificate=a)
        elif beta > 0:
            if alpha / beta < hi:
                hi, hi_src = alpha / beta, a
        elif alpha / beta > lo:
            lo, lo_src = alpha / beta, a
    if lo > hi:
        bu, bl = linalg.dot(hi_src, h), linalg.dot(lo_src, h)
        cert = linalg.add(linalg.scale(-bl, hi_src), linalg.scale(bu, lo_src))
        return SolveOutcome(-math.inf, Status.INFEASIBLE, certificate=cert)
    if hi == math.inf:
        t0 = lo if lo != -math.inf else Fraction(0)
        return SolveOutcome(math.inf, Status.UNBOUNDED_ABOVE, solution=t0,
                            certificate=tuple(-a for a in h))
    return SolveOutcome(hi, Status.FINITE, attained=True, solution=hi)


def _line_point(q, h, t):
    if isinstance(t, Fraction) and _rational(q) and _rational(h):
        return tuple(to_fraction(a) - to_fraction(b) * t for a, b in zip(q, h))
    return tuple(float(a) - float(b) * float(t) for a, b in zip(q, h))


def _dual_line_float(J, q, h, policy):
    def feasible(t):
        return J.member(_line_point(q, h, t), policy).inside

    probes = [Fraction(0)]
    for k in PROBE_EXPONENTS:
        probes += [Fraction(2) ** k, -Fraction(2) ** k]
    t0 = next((t for t in probes if feasible(t)), None)
    if t0 is None:
        return SolveOutcome(-math.inf, Status.UNDECIDED, flags=("bracket_exhausted",))
    minus_h = tuple(-a for a in h)
    if J.member(minus_h, policy).inside:
        return SolveOutcome(math.inf, Status.UNBOUNDED_ABOVE, solution=t0, certificate=minus_h)
    lo, hi = t0, None
    for k in PROBE_EXPONENTS:
        t = t0 + Fraction(2) ** k
        if feasible(t):
            lo = t
        else:
            hi = t
            break
    if hi is None:
        return SolveOutcome(math.inf, Status.UNBOUNDED_ABOVE, solution=lo, flags=("probe_limit",))
    for _ in range(MAX_BISECTIONS):
        if hi - lo <= policy.abs_tol * max(1, abs(lo)):
            break
        mid = (lo + hi) / 2
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    t_star = simplest_between(lo, hi)
    cert = J.member(_line_point(q, h, t_star), policy)
    if cert.inside:
        return SolveOutcome(float(t_star), Status.FINITE, attained=True, solution=float(t_star))
    flags = ("numerically_uncertain",)
    if cert.certified and cert.witness is None and cert.profile is not None and cert.profile.exhaustive:
        flags += ("exact_refutation",)
    return SolveOutcome(float(t_star), Status.FINITE, attained=False, flags=flags)


# --- the hyperplane primal ---------------------------------------------------------

def _primal_is_feasible(gens, h):
    """Generators with <h,g> > 0; the primal is feasible iff this is nonempty."""
    return [g for g in gens if linalg.dot(h, g) > 0]


def solve_primal_hyperplane(K, q, h, policy=None, allow_zero_h=False):
    """inf {<q,x> : x in K, <h,x> = 1}."""
    check_dim(q, K.dim, "q")
    check_dim(h, K.dim, "h")
    zero_h = all(a == 0 for a in h)
    if zero_h and not allow_zero_h:
        raise InvalidInstance("h must be nonzero")
    if isinstance(K, Intersection) and not K.is_polyhedral:
        K = K.resolve()
    if not zero_h:
        kd = K.dual()
        if not kd.member(h, None if kd.is_polyhedral else (policy or FLOAT)).inside:
            raise InvalidInstance("h is not in the dual cone")
    if K.is_polyhedral:
        return _primal_exact(K, tuple(map(to_fraction, q)), tuple(map(to_fraction, h)))
    policy = K._policy(policy)
    return _primal_float(K, q, h, policy)


def _primal_exact(K, q, h):
    gens = [tuple(Fraction(a) for a in g) for g in K.poly.generators]
    pos = _primal_is_feasible(gens, h)
    if not pos:
        return SolveOutcome(math.inf, Status.INFEASIBLE)
    down = sorted(linalg.primitive(g) for g in gens
                  if linalg.dot(h, g) == 0 and linalg.dot(q, g) < 0)
    if down:
        return SolveOutcome(-math.inf, Status.UNBOUNDED_BELOW,
                            certificate=tuple(Fraction(a) for a in down[0]))
    best = None
    for g in pos:
        r = linalg.dot(q, g) / linalg.dot(h, g)
        key = (r, linalg.primitive(g))
        if best is None or key < best[0]:
            best = (key, g)
    (value, _), g = best
    x = linalg.scale(1 / linalg.dot(h, g), g)
    if not K.poly.contains(x) or linalg.dot(h, x) != 1:
        raise InternalInvariantViolation("ratio-rule solution failed re-verification")
    return SolveOutcome(value, Status.FINITE, attained=True, solution=x)


def _primal_float(K, q, h, policy):
    xbar = K.relint_point()
    s = float(sum(float(a) * float(b) for a, b in zip(h, xbar)))
    if s <= policy.band(norm(h) * norm(xbar)):
        return SolveOutcome(math.inf, Status.INFEASIBLE, flags=("relint_probe",))
    d = K.recession(h, q, "lt", policy)
    if d is not None:
        return SolveOutcome(-math.inf, Status.UNBOUNDED_BELOW, certificate=tuple(d))
    dual = solve_dual_line(K.dual(), q, h, policy)
    if dual.status is Status.FINITE:
        return SolveOutcome(dual.value, Status.FINITE, flags=("value_from_dual",))
    if dual.status is Status.UNBOUNDED_ABOVE:
        raise InternalInvariantViolation("feasible primal with unbounded dual")
    return SolveOutcome(-math.inf, Status.UNBOUNDED_BELOW, flags=("dual_infeasible",) + dual.flags)


# --- the pair -----------------------------------------------------------------------

CELLS = {
    (Status.FINITE, Status.FINITE): "abce",
    (Status.UNBOUNDED_BELOW, Status.INFEASIBLE): "d",
    (Status.INFEASIBLE, Status.UNBOUNDED_ABOVE): "f",
    (Status.INFEASIBLE, Status.INFEASIBLE): "g",
}


def table1_cell(primal_status, dual_status):
    """Cell of the (primal, dual) status grid; impossible cells raise."""
    if dual_status is Status.UNDECIDED:
        dual_status = Status.INFEASIBLE
    cell = CELLS.get((primal_status, dual_status))
    if cell is None:
        raise InternalInvariantViolation(
            f"Impossible({dual_status.value},{primal_status.value}) cell reached")
    return cell


@dataclass(frozen=True)
class DualityReport:
    instance_id: str
    primal: SolveOutcome
    dual_sum: SolveOutcome
    dual_closure: SolveOutcome
    table1_cell: str
    gap: object
    reference_gap: object
    conditions: object = None
    notes: str = ""


def _leq(a, b, exact):
    if exact or a in (math.inf, -math.inf) or b in (math.inf, -math.inf):
        return a <= b
    return float(a) <= float(b) + 1e-7 * max(1.0, abs(float(b)))


def solve_pair(inst, conditions=None):
    policy = inst.policy
    primal = solve_primal_hyperplane(inst.intersection, inst.q, inst.h, policy)
    dual_sum = solve_dual_line(inst.dual_sum, inst.q, inst.h, policy)
    dual_closure = solve_dual_line(inst.dual_closure, inst.q, inst.h, policy)
    return classify(primal, dual_sum, dual_closure, inst.instance_id, conditions, policy.exact)


def classify(primal, dual_sum, dual_closure, instance_id="", conditions=None, exact=True):
    """Assemble a report: weak-duality checks, cell label and gap diagnosis."""
    for name, d in (("sum", dual_sum), ("closure", dual_closure)):
        if not _leq(d.value, primal.value, exact):
            raise InternalInvariantViolation(f"weak duality fails for the {name} dual")
    if not _leq(dual_sum.value, dual_closure.value, exact):
        raise InternalInvariantViolation("sum dual exceeds closure dual")
    gap = extended_gap(primal.value, dual_sum.value)
    ref = extended_gap(primal.value, dual_closure.value)
    notes = []
    if dual_sum.status is not dual_closure.status or not _same(dual_sum.value, dual_closure.value, exact):
        notes.append("sum dual differs from closure dual (closedness failure signature)")
    elif dual_sum.attained is False and dual_closure.attained:
        notes.append("sum dual not attained while the closure dual is")
    if ref != 0 and primal.status is Status.FINITE:
        notes.append("nonzero gap against the closure dual")
    return DualityReport(instance_id, primal, dual_sum, dual_closure,
                         table1_cell(primal.status, dual_closure.status),
                         gap, ref, conditions, "; ".join(notes))


def _same(a, b, exact):
    if exact or a in (math.inf, -math.inf) or b in (math.inf, -math.inf):
        return a == b
    return abs(float(a) - float(b)) <= 1e-7 * max(1.0, abs(float(a)))


def solve_many(instances, max_workers=None):
    """Solve a batch of instances; results come back in input order."""
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        return list(pool.map(solve_pair, instances))


# --- projection onto the span of the cone --------------------------------------------

def reduce_by_projection(K, q, h):
    """Project q and h onto the subspace generated by K."""
    span = K.generated_subspace()
    return project_onto(span, tuple(q)), project_onto(span, tuple(h)), span


def projected_dual_cone(K, span):
    """K* intersected with the generated subspace."""
    return Intersection((K.dual(), LinearSubspace(span)))
