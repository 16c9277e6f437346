"""Seeded random rational instances and the named property checks run on them."""

import itertools
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from . import linalg
from .conditions import (Tri, check_bounded_optimal_set, check_sd, check_sp, check_td,
                         check_tp, check_U_bounded)
from .cones import (DualSum, HRep, Intersection, LinearSubspace, Orthant, VRep,
                    full_space, is_pointed_in_span)
from .lp import nonneg_combination, solve_lp
from .reformulate import (LinearMap, SymmetricInstance, build_shapiro_cones,
                          check_shapiro_conditions, theta_dual, theta_primal,
                          to_hyperplane_dual_form, to_hyperplane_primal_form)
from .serialize import instance_to_json, symmetric_to_json
from .solver import (CELLS, HyperplaneInstance, Status, projected_dual_cone,
                     reduce_by_projection, solve_dual_line, solve_pair,
                     solve_primal_hyperplane)

ALLOWED_CELLS = frozenset(CELLS.values())
INF = float("inf")


def _finite(v):
    return v not in (INF, -INF)


# --- random data -----------------------------------------------------------------------------

def _vec(rng, n, box):
    return tuple(rng.randint(-box, box) for _ in range(n))


def random_cone(rng, n, box=3):
    """VRep, HRep or orthant with small integer data."""
    r = rng.random()
    if r < 0.1:
        return Orthant(n)
    while True:
        vecs = [v for v in (_vec(rng, n, box) for _ in range(rng.randint(1, n + 2))) if any(v)]
        if vecs:
            break
    if r < 0.3 and n > 1:
        # cone spanning a proper subspace
        basis = vecs[:rng.randint(1, n - 1)]
        vecs = [tuple(sum(rng.randint(0, 2) * b[i] for b in basis) for i in range(n)) for _ in range(3)]
        vecs = [v for v in vecs if any(v)] or basis
        return VRep(n, vecs)
    return VRep(n, vecs) if r < 0.65 else HRep(n, vecs)


def random_dual_vector(rng, K):
    """Nonzero conic combination of generators of K*, or None if K* = {0}."""
    kd = K.poly.dual()
    rays, lines = kd.v
    if not rays and not lines:
        return None
    n = K.dim
    pool = [(r, False) for r in rays] + [(l, True) for l in lines]
    if lines and rng.random() < 0.15:
        pool = [(l, True) for l in lines]
    for _ in range(10):
        h = [Fraction(0)] * n
        for g, free in pool:
            c = rng.randint(-2, 2) if free else rng.randint(0, 3)
            h = [a + c * b for a, b in zip(h, g)]
        if any(h):
            return tuple(h)
    return tuple(Fraction(a) for a in pool[0][0])


def random_instance(rng, two_cone=True, idx=0):
    while True:
        n = rng.choice((2, 2, 3, 3, 3))
        K1 = random_cone(rng, n)
        h = random_dual_vector(rng, K1)
        if h is None:
            continue
        K2 = random_cone(rng, n) if two_cone else full_space(n)
        q = _vec(rng, n, 3)
        return HyperplaneInstance(K1, K2, q, h, instance_id=f"r{idx}")


def random_symmetric(rng):
    n_p, n_d = rng.randint(1, 2), rng.randint(1, 2)
    Jp = random_cone(rng, n_p, 2)
    Jd = random_cone(rng, n_d, 2)
    A = LinearMap([_vec(rng, n_p, 2) for _ in range(n_d)])
    return SymmetricInstance(Jp, Jd, A, _vec(rng, n_d, 2), _vec(rng, n_p, 2))


def random_points(rng, n, count, box=4):
    return [_vec(rng, n, box) for _ in range(count)]


# --- a solved case with lazily computed pieces ---------------------------------------------------

class Case:
    def __init__(self, inst, rng):
        self.inst = inst
        self.rng = rng

    @cached_property
    def report(self):
        return solve_pair(self.inst)

    @cached_property
    def td(self):
        return check_td(self.inst)

    @cached_property
    def tp(self):
        return check_tp(self.inst)

    @cached_property
    def sd(self):
        return check_sd(self.inst)

    @cached_property
    def sp(self):
        return check_sp(self.inst)

    @cached_property
    def bounded(self):
        return check_bounded_optimal_set(self.inst)

    @property
    def finite(self):
        return _finite(self.report.primal.value) or _finite(self.report.dual_sum.value)


# --- properties on hyperplane instances ------------------------------------------------------------

def prop_weak_duality(c):
    r = c.report
    return (r.dual_sum.value <= r.primal.value and r.dual_closure.value <= r.primal.value
            and r.gap >= 0)


def prop_allowed_cells(c):
    return c.report.table1_cell in ALLOWED_CELLS


def prop_closure_dual_matches(c):
    """Finite primal: equals the closure dual, whose solution re-verifies."""
    r = c.report
    if r.primal.status is not Status.FINITE:
        return None
    d = r.dual_closure
    if d.value != r.primal.value or not d.attained:
        return False
    y = tuple(a - b * d.solution for a, b in zip(c.inst.q, c.inst.h))
    return c.inst.dual_closure.member(y).inside


def prop_finite_dual_finite_primal(c):
    if c.report.dual_closure.status is not Status.FINITE:
        return None
    return c.report.primal.status is Status.FINITE


def prop_unbounded_dual(c):
    J = c.inst.dual_sum
    out = c.report.dual_sum
    feasible = out.status is not Status.INFEASIBLE
    minus_h = tuple(-a for a in c.inst.h)
    return (out.status is Status.UNBOUNDED_ABOVE) == (feasible and J.member(minus_h).inside)


def prop_projection(c):
    K = c.inst.intersection
    qh, hh, span = reduce_by_projection(K, c.inst.q, c.inst.h)
    p = solve_primal_hyperplane(K, qh, hh, allow_zero_h=True)
    d = solve_dual_line(projected_dual_cone(K, span), qh, hh, allow_zero_h=True)
    r = c.report
    return ((p.value, p.status) == (r.primal.value, r.primal.status)
            and (d.value, d.status) == (r.dual_closure.value, r.dual_closure.status))


def prop_ratio_rule(c):
    """Primal value against an LP over the H-description of K1 ∩ K2."""
    K = c.inst.intersection.poly
    ineqs, eqs = K.h
    # variables x+ (n), x- (n), slacks (len(ineqs)); x = x+ - x-
    m = len(ineqs)
    rows, rhs = [], []
    for j, a in enumerate(ineqs):
        rows.append(list(a) + [-v for v in a] + [-int(i == j) for i in range(m)])
        rhs.append(0)
    for e in eqs:
        rows.append(list(e) + [-v for v in e] + [0] * m)
        rhs.append(0)
    h = c.inst.h
    rows.append(list(h) + [-v for v in h] + [0] * m)
    rhs.append(1)
    cost = list(c.inst.q) + [-v for v in c.inst.q] + [0] * m
    res = solve_lp(cost, rows, rhs)
    value = {"infeasible": INF, "unbounded": -INF}.get(res.status, res.value)
    return value == c.report.primal.value


def prop_ratio_rule_grid(c, max_gens=6):
    """Primal value against the best ratio over a grid of conic combinations."""
    if c.report.primal.status is not Status.FINITE:
        return None
    gens = [tuple(map(Fraction, g)) for g in c.inst.intersection.poly.generators]
    if len(gens) > max_gens:
        return None
    h, q = c.inst.h, c.inst.q
    best = None
    for coefs in itertools.product((0, 1, 2), repeat=len(gens)):
        x = [sum(k * g[i] for k, g in zip(coefs, gens)) for i in range(len(h))]
        s = linalg.dot(h, x)
        if s > 0:
            r = linalg.dot(q, x) / s
            best = r if best is None or r < best else best
    return best == c.report.primal.value


def prop_certificates(c, points=5):
    """Outside witnesses separate and sum decompositions recombine."""
    cones = (c.inst.K1, c.inst.intersection, DualSum((c.inst.K1, c.inst.K2)))
    for K in cones:
        kd = K.dual()
        for y in random_points(c.rng, K.dim, points):
            cert = K.member(y)
            if not cert.inside:
                w = cert.witness
                if w is None or linalg.dot(w, y) >= 0 or not kd.member(w).inside:
                    return False
            elif cert.decomposition is not None:
                total = [sum(p[i] for p in cert.decomposition) for i in range(K.dim)]
                if tuple(total) != tuple(map(Fraction, y)):
                    return False
                if not all(part.dual().member(d).inside
                           for part, d in zip(K.parts, cert.decomposition)):
                    return False
    return True


def prop_tp_or_td_zero_gap(c):
    if not c.finite:
        return None
    if c.tp.verdict is not Tri.HOLDS and c.td.verdict is not Tri.HOLDS:
        return None
    return c.report.gap == 0


def prop_tp_dual_attained(c):
    r = c.report
    if c.tp.verdict is not Tri.HOLDS or r.primal.status is not Status.FINITE:
        return None
    if not r.dual_sum.attained:
        return False
    y = tuple(a - b * r.dual_sum.solution for a, b in zip(c.inst.q, c.inst.h))
    return c.inst.dual_sum.member(y).inside


def prop_td_iff_bounded(c):
    if not c.finite or not c.td.certain or not c.bounded.certain:
        return None
    return (c.td.verdict is Tri.HOLDS) == c.bounded.bounded


def prop_bounded_zero_gap(c):
    if not c.bounded.bounded:
        return None
    return c.report.primal.status is Status.FINITE and c.report.gap == 0


def prop_sum_equals_closure(c, points=5):
    n = c.inst.ambient_dim
    s = DualSum((c.inst.K1, c.inst.K2))
    cl = Intersection((c.inst.K1, c.inst.K2)).dual()
    return all(s.member(y).inside == cl.member(y).inside
               for y in random_points(c.rng, n, points) + [c.inst.q, c.inst.h])


def prop_interior_point_gives_tp(c):
    """An x in K1 ∩ K2 ∩ int K1 forces Tp."""
    if c.sp.verdict is not Tri.HOLDS:
        return None
    return c.tp.verdict is Tri.HOLDS


def prop_sd_implies_td(c):
    if c.sd.verdict is not Tri.HOLDS:
        return None
    t, _ = c.sd.witness
    y = tuple(a - b * t for a, b in zip(c.inst.q, c.inst.h))
    return c.td.verdict is Tri.HOLDS and c.inst.dual_sum.interior(y)


def prop_pointed_in_span(c):
    return all(is_pointed_in_span(K) for K in (c.inst.K1, c.inst.K2, c.inst.intersection))


def prop_relint_positivity(c):
    ok = True
    for K in (c.inst.K1, c.inst.intersection):
        x = K.relint_point()
        span = K.generated_subspace()
        dual_in_span = Intersection((K.dual(), LinearSubspace(span))).poly
        for r in dual_in_span.rays:
            ok = ok and linalg.dot(x, r) > 0
        if dual_in_span.lines:
            ok = False
    return ok


def prop_interior_identity(c, points=5):
    n = c.inst.ambient_dim
    s = DualSum((c.inst.K1, c.inst.K2))
    cl = Intersection((c.inst.K1, c.inst.K2)).dual()
    return all(s.interior(y) == cl.interior(y) for y in random_points(c.rng, n, points, 2))


def prop_dual_slice_bounded(c):
    K1 = c.inst.K1
    x = K1.relint_point()
    if not K1.interior(x):
        return None
    return check_U_bounded(K1, x, 1)


def prop_bidual(c, points=5):
    K = c.inst.K1
    kk = K.dual().dual()
    return all(kk.member(y).inside == K.member(y).inside
               for y in random_points(c.rng, K.dim, points))


HYPERPLANE_PROPERTIES = {
    "weak_duality": prop_weak_duality,
    "allowed_status_cells": prop_allowed_cells,
    "closure_dual_matches_primal": prop_closure_dual_matches,
    "finite_dual_implies_finite_primal": prop_finite_dual_finite_primal,
    "unbounded_dual_characterization": prop_unbounded_dual,
    "projection_preserves_values": prop_projection,
    "ratio_rule_vs_lp": prop_ratio_rule,
    "ratio_rule_vs_grid": prop_ratio_rule_grid,
    "membership_certificates": prop_certificates,
    "tp_or_td_gives_zero_gap": prop_tp_or_td_zero_gap,
    "tp_gives_dual_attainment": prop_tp_dual_attained,
    "td_iff_bounded_optimal_set": prop_td_iff_bounded,
    "bounded_optimal_set_zero_gap": prop_bounded_zero_gap,
    "sum_dual_equals_intersection_dual": prop_sum_equals_closure,
    "interior_point_gives_tp": prop_interior_point_gives_tp,
    "sd_implies_td": prop_sd_implies_td,
    "dual_pointed_in_span": prop_pointed_in_span,
    "relint_pairs_positively": prop_relint_positivity,
    "sum_interior_identity": prop_interior_identity,
    "dual_slice_bounded": prop_dual_slice_bounded,
    "bidual_identity": prop_bidual,
}


# --- properties on symmetric instances ----------------------------------------------------------

class SymCase:
    def __init__(self, s, rng):
        self.s = s
        self.rng = rng

    @cached_property
    def thetas(self):
        return theta_primal(self.s), theta_dual(self.s)

    @cached_property
    def primal_form(self):
        return solve_pair(to_hyperplane_primal_form(self.s))

    @cached_property
    def dual_form_inst(self):
        return to_hyperplane_dual_form(self.s)

    @cached_property
    def dual_form(self):
        return solve_pair(self.dual_form_inst)


def prop_primal_form(c):
    tp, td = c.thetas
    r = c.primal_form
    return r.primal.value == tp and r.dual_sum.value == td


def prop_dual_form(c):
    tp, td = c.thetas
    r = c.dual_form
    return r.primal.value == -td and r.dual_sum.value == -tp


def prop_image_interior_vs_td(c):
    rep = check_shapiro_conditions(c.s)
    td_dual = check_td(c.dual_form_inst).verdict
    td_primal = check_td(to_hyperplane_primal_form(c.s)).verdict
    return rep.minus_b_in_int_np is td_dual and rep.c_in_int_nd is td_primal


def prop_mp_identity(c, points=5):
    mp = build_shapiro_cones(c.s).Mp
    inst = c.dual_form_inst
    s = DualSum((inst.K1, inst.K2))
    return all(s.member(y).inside == mp.member(y).inside
               for y in random_points(c.rng, inst.ambient_dim, points, 2))


def prop_closed_images(c, points=5):
    """With finite theta_p the polyhedral image cones equal their closures."""
    if not _finite(c.thetas[0]):
        return None
    cones = build_shapiro_cones(c.s)
    inst = c.dual_form_inst
    closure = DualSum((inst.K1, inst.K2), closure=True)
    ok = True
    for y in random_points(c.rng, inst.ambient_dim, points, 2):
        ok = ok and cones.Mp.member(y).inside == closure.member(y).inside
        y = tuple(map(Fraction, y))
        # generator combinations (the cone itself) against facets (its closure)
        by_gens = nonneg_combination(cones.Mp_hat.poly.rays, y, cones.Mp_hat.poly.lines) is not None
        ok = ok and by_gens == cones.Mp_hat.poly.contains(y)
    return ok


def prop_symmetric_strong_duality(c):
    tp, td = c.thetas
    if not _finite(tp):
        return None
    return tp == td


def prop_symmetric_values_attained(c):
    tp, td = c.thetas
    if not (_finite(tp) and _finite(td)):
        return None
    return tp == td and c.primal_form.primal.attained is True


SYMMETRIC_PROPERTIES = {
    "conversion_primal_form": prop_primal_form,
    "conversion_dual_form": prop_dual_form,
    "image_interior_matches_td": prop_image_interior_vs_td,
    "mp_set_identity": prop_mp_identity,
    "closed_image_cones": prop_closed_images,
    "symmetric_strong_duality": prop_symmetric_strong_duality,
    "symmetric_values_and_attainment": prop_symmetric_values_attained,
}


# --- the suite ---------------------------------------------------------------------------------

@dataclass
class PropertyResult:
    name: str
    checked: int = 0
    vacuous: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)


@dataclass
class SuiteReport:
    seed: int
    count: int
    results: dict

    @property
    def passed(self):
        return all(r.failed == 0 for r in self.results.values())

    def text(self):
        lines = [f"property suite: seed={self.seed} count={self.count}"]
        for r in self.results.values():
            mark = "PASS" if r.failed == 0 else "FAIL"
            lines.append(f"{mark} {r.name}: checked={r.checked} vacuous={r.vacuous} failed={r.failed}")
        return "\n".join(lines) + "\n"


def _run_one(props, case):
    out = {}
    for name, fn in props.items():
        try:
            out[name] = fn(case)
        except Exception as exc:  # a crash counts as a failure of that property
            out[name] = exc
    return out


def _evaluate(seed, i):
    rng = random.Random(f"{seed}:{i}")
    inst = random_instance(rng, two_cone=rng.random() < 0.7, idx=i)
    hres = _run_one(HYPERPLANE_PROPERTIES, Case(inst, rng))
    s = random_symmetric(rng)
    sres = _run_one(SYMMETRIC_PROPERTIES, SymCase(s, rng))
    return inst, s, hres, sres


def run_property_suite(seed, count, workers=4):
    if count < 1:
        raise ValueError("count must be at least 1")
    results = {n: PropertyResult(n) for n in list(HYPERPLANE_PROPERTIES) + list(SYMMETRIC_PROPERTIES)}
    with ThreadPoolExecutor(max_workers=workers) as pool:
        outcomes = list(pool.map(lambda i: _evaluate(seed, i), range(count)))
    for inst, s, hres, sres in outcomes:
        for res, replay in ((hres, lambda: instance_to_json(inst)), (sres, lambda: symmetric_to_json(s))):
            for name, v in res.items():
                r = results[name]
                if v is None:
                    r.vacuous += 1
                    continue
                r.checked += 1
                if v is not True:
                    r.failed += 1
                    if len(r.failures) < 3:
                        detail = repr(v) if isinstance(v, Exception) else "property violated"
                        r.failures.append({"instance": replay(), "detail": detail})
    return SuiteReport(seed, count, results)
