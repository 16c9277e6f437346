"""The ten acceptance criteria, one test each.

Each test prints a single PASS/FAIL line; pytest also repeats them in an
"acceptance criteria" section of the terminal summary.  Run this file as a
script to get the lines without pytest.
"""

import random
import sys
import time

from conedual.conditions import Tri, check_bounded_optimal_set, check_td, check_tp
from conedual.cones import DualSum, Intersection, Verdict, VRep, full_space, is_pointed_in_span
from conedual.gallery import EPSILONS, builtin_gallery, verify_gallery
from conedual.propcheck import (ALLOWED_CELLS, Case, SymCase, prop_closure_dual_matches,
                                prop_dual_form, prop_dual_slice_bounded,
                                prop_image_interior_vs_td, prop_interior_identity,
                                prop_pointed_in_span, prop_projection, prop_relint_positivity,
                                random_instance, random_points, random_symmetric)
from conedual.solver import HyperplaneInstance, Status, reduce_by_projection, solve_pair

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script from elsewhere
    ACCEPTANCE_LINES = []


def report(number, title, ok, detail):
    line = f"acceptance {number:2d} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
    ACCEPTANCE_LINES.append((number, line))
    print(line)
    assert ok, line


def instances(tag, count, two_cone, accept=lambda c: True, limit=20):
    """``count`` cases drawn from a seeded stream that satisfy ``accept``."""
    out = []
    for i in range(count * limit):
        rng = random.Random(f"{tag}:{i}")
        c = Case(random_instance(rng, two_cone=two_cone, idx=i), rng)
        if accept(c):
            out.append(c)
            if len(out) == count:
                break
    return out


def test_01_gallery_cells():
    start = time.perf_counter()
    entries = builtin_gallery(verify=False)
    checks = verify_gallery(entries)
    elapsed = time.perf_counter() - start
    planar = [c for c in checks if c.entry.id.startswith("case-")]
    cells_ok = all(c.report.table1_cell == c.entry.expected_cell for c in planar)
    labels = {c.entry.id[-1]: c.report.table1_cell for c in planar}
    ok = (len(planar) == 7 and cells_ok and all(c.ok for c in checks) and elapsed < 5
          and all(k in cell for k, cell in labels.items()))
    report(1, "gallery status cells", ok, f"7 planar entries, {len(checks)} entries verified, {elapsed:.2f}s")


def test_02_impossible_cells_excluded():
    start = time.perf_counter()
    cells = {}
    for i in range(10_000):
        rng = random.Random(f"acc2:{i}")
        inst = random_instance(rng, two_cone=rng.random() < 0.7, idx=i)
        cell = solve_pair(inst).table1_cell
        cells[cell] = cells.get(cell, 0) + 1
    elapsed = time.perf_counter() - start
    ok = set(cells) <= ALLOWED_CELLS and elapsed < 60
    report(2, "impossible-cell exclusion", ok,
           f"10000 instances, cells {dict(sorted(cells.items()))}, {elapsed:.1f}s")


def test_03_single_cone_strong_duality():
    cases = instances("acc3", 500, False, lambda c: c.report.primal.status is Status.FINITE)
    bad = [c.inst.instance_id for c in cases if prop_closure_dual_matches(c) is not True]
    ok = len(cases) == 500 and not bad
    report(3, "single-cone zero gap and dual solvability", ok,
           f"{len(cases)} finite instances, {len(bad)} failures")


def test_04_tp_or_td_zero_gap():
    def qualifies(c):
        if not c.finite:
            return False
        return c.tp.verdict is Tri.HOLDS or c.td.verdict is Tri.HOLDS
    cases = instances("acc4", 500, True, qualifies)
    bad = [c.inst.instance_id for c in cases if c.report.gap != 0]
    ok = len(cases) == 500 and not bad
    report(4, "Tp-or-Td zero gap", ok, f"{len(cases)} two-cone instances, {len(bad)} nonzero gaps")


def test_05_td_iff_bounded():
    cases = instances("acc5", 500, True)
    checked = disagreements = 0
    for c in cases:
        if c.report.primal.status is not Status.FINITE:
            continue
        td, bounded = check_td(c.inst), check_bounded_optimal_set(c.inst)
        if not (td.certain and bounded.certain):
            continue
        checked += 1
        disagreements += (td.verdict is Tri.HOLDS) != bounded.bounded
    ok = len(cases) == 500 and checked > 0 and disagreements == 0
    report(5, "Td iff bounded optimal set", ok,
           f"500 instances, {checked} with finite value and certain verdicts, {disagreements} disagreements")


def test_06_projection_equivalence():
    cases = instances("acc6", 500, True)
    zero_h = 0
    bad = []
    for c in cases:
        _, hh, _ = reduce_by_projection(c.inst.intersection, c.inst.q, c.inst.h)
        zero_h += all(a == 0 for a in hh)
        if prop_projection(c) is not True:
            bad.append(c.inst.instance_id)
    # the ray cases (f) and (g) with h orthogonal to the ray
    for q in ((0, 1), (0, -1)):
        rng = random.Random(0)
        c = Case(HyperplaneInstance(VRep(2, ((0, 1),)), full_space(2), q, (1, 0)), rng)
        zero_h += 1
        if prop_projection(c) is not True:
            bad.append(f"ray q={q}")
    ok = len(cases) == 500 and zero_h > 2 and not bad
    report(6, "projection equivalence", ok,
           f"502 instances, {zero_h} with zero projected h, {len(bad)} mismatches")


def test_07_sum_equals_dual_of_intersection():
    cases = instances("acc7", 200, True)
    points = mismatches = 0
    for c in cases:
        s = DualSum((c.inst.K1, c.inst.K2))
        cl = Intersection((c.inst.K1, c.inst.K2)).dual()
        for y in random_points(c.rng, c.inst.ambient_dim, 50):
            points += 1
            mismatches += s.member(y).inside != cl.member(y).inside
    ok = len(cases) == 200 and points == 10_000 and mismatches == 0
    report(7, "dual of intersection equals the dual sum", ok,
           f"200 pairs, {points} points, {mismatches} mismatches")


def test_08_symmetric_round_trip():
    bad_values = bad_shapiro = 0
    for i in range(200):
        rng = random.Random(f"acc8:{i}")
        c = SymCase(random_symmetric(rng), rng)
        bad_values += prop_dual_form(c) is not True
        bad_shapiro += prop_image_interior_vs_td(c) is not True
    ok = bad_values == 0 and bad_shapiro == 0
    report(8, "symmetric-pair round trip", ok,
           f"200 instances, {bad_values} value mismatches, {bad_shapiro} condition mismatches")


def test_09_nonclosed_sum_certificate():
    entries = {e.id: e for e in builtin_gallery(verify=False)}
    entry = entries["soc-tangent-attainment"]
    cert = entry.instance.nonclosed_certificate
    K1, K2 = entry.instance.K1, entry.instance.K2
    s = DualSum((K1, K2))
    near_ok = True
    for eps, parts in zip(EPSILONS, cert.decompositions):
        y = (0, 1, eps)
        total = tuple(sum(p[i] for p in parts) for i in range(3))
        residual = max(abs(float(a - b)) for a, b in zip(total, y))
        near_ok = near_ok and residual <= 1e-9 and s.member(y).inside
        near_ok = near_ok and K1.dual().member(parts[0]).inside and K2.dual().member(parts[1]).inside
    c0 = s.member((0, 1, 0))
    outside = c0.verdict is Verdict.OUTSIDE and c0.certified and cert.profile.bound >= 2.0 ** 60
    r = solve_pair(entry.instance)
    attain = r.dual_sum.attained is False and r.gap == 0 and check_tp(entry.instance).verdict is Tri.FAILS
    ok = near_ok and outside and attain
    report(9, "non-closed sum certificate", ok,
           f"eps {[str(e) for e in EPSILONS]} decomposed, (0,1,0) refuted over |lambda| <= 2^60, "
           f"sum dual attained={r.dual_sum.attained}, gap={r.gap}")


def test_10_appendix_invariants():
    cases = instances("acc10", 200, True)
    counts = {}
    for name, prop in (("pointed", prop_pointed_in_span), ("positivity", prop_relint_positivity),
                       ("interior", prop_interior_identity), ("bounded", prop_dual_slice_bounded)):
        counts[name] = sum(prop(c) is False for c in cases)
    for c in cases:
        counts["pointed"] += not is_pointed_in_span(c.inst.K2)
    ok = len(cases) == 200 and not any(counts.values())
    report(10, "appendix invariants", ok, f"200 instances, violations {counts}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
