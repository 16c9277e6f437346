import math
from fractions import Fraction

import pytest

from conedual.cones import DualSum, Intersection, LinearSubspace, Orthant, SecondOrder, VRep, full_space
from conedual.errors import InternalInvariantViolation, InvalidInstance, PolicyError
from conedual.geometry import EXACT
from conedual.solver import (HyperplaneInstance, SolveOutcome, Status, classify,
                             extended_gap, projected_dual_cone, reduce_by_projection,
                             solve_dual_line, solve_many, solve_pair, solve_primal_hyperplane,
                             table1_cell)

SOC = SecondOrder(3)
TANGENT = LinearSubspace.orthogonal_to([(1, 0, 1)], 3)
R2 = Orthant(2)


# --- the dual line ------------------------------------------------------------------

def test_dual_line_orthant_finite():
    out = solve_dual_line(R2, (1, 2), (1, 1))
    assert (out.status, out.value, out.attained, out.solution) == (Status.FINITE, 1, True, 1)


def test_dual_line_orthant_infeasible():
    out = solve_dual_line(R2, (0, -1), (1, 0))
    assert out.status is Status.INFEASIBLE and out.value == -math.inf


def test_dual_line_unbounded_above():
    out = solve_dual_line(R2, (1, 1), (-1, 0))
    assert out.status is Status.UNBOUNDED_ABOVE and out.value == math.inf


def test_dual_line_tangent_sum_vs_closure():
    q, h = (0, 1, 0), (0, 0, 1)
    s = solve_dual_line(DualSum((SOC, TANGENT)), q, h)
    assert s.status is Status.FINITE and s.value == 0 and s.attained is False
    c = solve_dual_line(Intersection((SOC, TANGENT)).dual(), q, h)
    assert c.status is Status.FINITE and c.value == 0 and c.attained is True


def test_dual_line_rejects_zero_h():
    with pytest.raises(InvalidInstance):
        solve_dual_line(R2, (1, 1), (0, 0))
    out = solve_dual_line(R2, (1, 1), (0, 0), allow_zero_h=True)
    assert out.status is Status.UNBOUNDED_ABOVE


# --- the primal -------------------------------------------------------------------------

def test_primal_ratio_rule():
    out = solve_primal_hyperplane(R2, (1, 2), (1, 1))
    assert out.status is Status.FINITE and out.value == 1 and out.solution == (1, 0)


def test_primal_unbounded_with_certificate():
    out = solve_primal_hyperplane(R2, (0, -1), (1, 0))
    assert out.status is Status.UNBOUNDED_BELOW and out.value == -math.inf
    assert out.certificate == (0, 1)


def test_primal_zero_cone_infeasible():
    out = solve_primal_hyperplane(VRep(2, ()), (5, -3), (1, 0))
    assert out.status is Status.INFEASIBLE and out.value == math.inf


def test_primal_h_outside_dual_rejected():
    with pytest.raises(InvalidInstance):
        solve_primal_hyperplane(R2, (1, 1), (-1, 1))


# --- pairs ------------------------------------------------------------------------------

def test_pair_orthants():
    r = solve_pair(HyperplaneInstance(R2, R2, (1, 2), (1, 1)))
    assert r.primal.value == r.dual_sum.value == r.dual_closure.value == 1
    assert r.gap == 0 and r.table1_cell == "abce"


def test_pair_tangent_attainment_failure():
    r = solve_pair(HyperplaneInstance(SOC, TANGENT, (0, 1, 0), (0, 0, 1)))
    assert r.primal.value == 0 and r.primal.attained
    assert r.dual_sum.value == 0 and r.dual_sum.attained is False
    assert r.dual_closure.value == 0 and r.dual_closure.attained is True
    assert r.gap == 0
    assert "not attained" in r.notes


def test_pair_tangent_infinite_discrepancy():
    r = solve_pair(HyperplaneInstance(SOC, TANGENT, (0, 1, 0), (1, 0, 1)))
    assert r.primal.status is Status.INFEASIBLE and r.primal.value == math.inf
    assert r.dual_sum.value == -math.inf
    assert r.dual_closure.status is Status.UNBOUNDED_ABOVE
    assert r.table1_cell == "f"
    assert "closedness failure" in r.notes


def test_instance_validation():
    with pytest.raises(InvalidInstance):
        HyperplaneInstance(R2, R2, (1, 1), (0, 0))
    with pytest.raises(InvalidInstance):
        HyperplaneInstance(R2, R2, (1, 1), (-1, 0))
    with pytest.raises(PolicyError):
        HyperplaneInstance(SOC, TANGENT, (0, 1, 0), (0, 0, 1), policy=EXACT)


def test_solve_many_keeps_order():
    insts = [HyperplaneInstance(R2, R2, (k, 2 * k), (1, 1), instance_id=str(k)) for k in range(1, 6)]
    assert [r.primal.value for r in solve_many(insts, max_workers=3)] == [1, 2, 3, 4, 5]


# --- projection ----------------------------------------------------------------------

def test_projection_onto_ray():
    K = VRep(2, ((0, 1),))
    qh, hh, span = reduce_by_projection(K, (2, 3), (1, 1))
    assert qh == (0, 3) and hh == (0, 1)
    before = solve_primal_hyperplane(K, (2, 3), (1, 1))
    after = solve_primal_hyperplane(K, qh, hh)
    assert before.value == after.value == 3


def test_projection_full_dimensional_is_identity():
    qh, hh, _ = reduce_by_projection(R2, (1, 2), (3, 4))
    assert qh == (1, 2) and hh == (3, 4)


@pytest.mark.parametrize("q, dual_status", [((0, 1), Status.UNBOUNDED_ABOVE),
                                            ((0, -1), Status.INFEASIBLE)])
def test_projection_zero_h(q, dual_status):
    K = VRep(2, ((0, 1),))
    qh, hh, span = reduce_by_projection(K, q, (1, 0))
    assert hh == (0, 0)
    p = solve_primal_hyperplane(K, qh, hh, allow_zero_h=True)
    assert p.status is Status.INFEASIBLE
    d = solve_dual_line(projected_dual_cone(K, span), qh, hh, allow_zero_h=True)
    assert d.status is dual_status
    assert d.status is solve_dual_line(K.dual(), q, (1, 0)).status


# --- classification -------------------------------------------------------------------

def test_table1_cells():
    assert table1_cell(Status.FINITE, Status.FINITE) == "abce"
    assert table1_cell(Status.INFEASIBLE, Status.UNBOUNDED_ABOVE) == "f"
    assert table1_cell(Status.UNBOUNDED_BELOW, Status.INFEASIBLE) == "d"
    assert table1_cell(Status.INFEASIBLE, Status.INFEASIBLE) == "g"
    for p, d in [(Status.FINITE, Status.INFEASIBLE), (Status.FINITE, Status.UNBOUNDED_ABOVE),
                 (Status.UNBOUNDED_BELOW, Status.FINITE), (Status.INFEASIBLE, Status.FINITE)]:
        with pytest.raises(InternalInvariantViolation):
            table1_cell(p, d)


def test_classify_rejects_weak_duality_violation():
    p = SolveOutcome(Fraction(1), Status.FINITE, attained=True)
    d = SolveOutcome(Fraction(2), Status.FINITE, attained=True)
    with pytest.raises(InternalInvariantViolation):
        classify(p, d, d)


def test_extended_gap():
    assert extended_gap(math.inf, -math.inf) == math.inf
    assert extended_gap(math.inf, math.inf) == 0
    assert extended_gap(Fraction(3), Fraction(1)) == 2


def test_float_path_single_soc():
    r = solve_pair(HyperplaneInstance(SOC, full_space(3), (0, 0, 1), (0, 0, 1)))
    assert r.primal.value == pytest.approx(1, abs=1e-7)
    assert r.dual_sum.value == pytest.approx(1, abs=1e-7)
