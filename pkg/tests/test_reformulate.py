import math

import pytest

from conedual.conditions import Tri, check_td
from conedual.cones import LinearSubspace, Orthant, SecondOrder
from conedual.errors import DimensionError, InvalidInstance, PolicyError
from conedual.reformulate import (LinearMap, SymmetricInstance, build_shapiro_cones,
                                  check_shapiro_conditions, qop_dnn_form, theta_dual,
                                  theta_primal, to_hyperplane_dual_form,
                                  to_hyperplane_primal_form)
from conedual.solver import Status, solve_pair

SOC = SecondOrder(3)


def tiny_lp(b=(1,), c=(1, 2)):
    # min x1 + 2 x2  s.t.  x >= 0, x1 + x2 >= b
    return SymmetricInstance(Orthant(2), Orthant(1), LinearMap([[1, 1]]), b, c)


def test_lp_oracles():
    s = tiny_lp()
    assert theta_primal(s) == 1 and theta_dual(s) == 1


def test_primal_form_value():
    r = solve_pair(to_hyperplane_primal_form(tiny_lp()))
    assert r.primal.value == 1 and r.dual_sum.value == 1


def test_primal_form_homogeneous():
    s = tiny_lp(b=(0,))
    inst = to_hyperplane_primal_form(s)
    # with b = 0 the first coordinate of K2 is unconstrained
    assert inst.K2.member((-5, 1, 0)).inside and inst.K2.member((5, 1, 0)).inside
    assert theta_primal(s) == 0 == solve_pair(inst).primal.value


def test_primal_form_infeasible():
    s = SymmetricInstance(Orthant(1), Orthant(1), LinearMap([[-1]]), (1,), (1,))
    assert theta_primal(s) == math.inf
    assert solve_pair(to_hyperplane_primal_form(s)).primal.status is Status.INFEASIBLE


def test_dual_form_values():
    r = solve_pair(to_hyperplane_dual_form(tiny_lp()))
    assert r.primal.value == -1 and r.dual_sum.value == -1


def test_dual_form_round_trip_self_dual():
    s = SymmetricInstance(Orthant(2), Orthant(2), LinearMap([[1, 0], [1, 2]]), (1, 1), (2, 3))
    r = solve_pair(to_hyperplane_dual_form(s))
    assert r.primal.value == -theta_dual(s) and r.dual_sum.value == -theta_primal(s)


def test_dual_form_with_zero_cost():
    s = tiny_lp(c=(0, 0))
    inst = to_hyperplane_dual_form(s)
    assert inst.q == (0, -1)
    assert solve_pair(inst).primal.value == -theta_dual(s)


def test_shapiro_cones_full_line():
    s = SymmetricInstance(Orthant(1), Orthant(1), LinearMap([[1]]), (0,), (1,))
    cones = build_shapiro_cones(s)
    assert cones.Np.poly.lines and cones.Np.member((-7,)).inside
    s2 = SymmetricInstance(Orthant(1), Orthant(1), LinearMap([[1]]), (-1,), (1,))
    assert check_shapiro_conditions(s2).minus_b_in_int_np is Tri.HOLDS


def test_shapiro_hat_with_zero_cost():
    s = SymmetricInstance(Orthant(1), Orthant(1), LinearMap([[2]]), (1,), (0,))
    cones = build_shapiro_cones(s)
    for y in [(0, 3), (0, -3), (1, 0), (-1, 2)]:
        expect = y[0] == 0 and cones.Np.member(y[1:]).inside
        assert cones.Mp_hat.member(y).inside is expect


def test_shapiro_tiny_lp():
    rep = check_shapiro_conditions(tiny_lp())
    assert rep.mp_closed is Tri.HOLDS
    assert rep.minus_b_in_int_np is check_td(to_hyperplane_dual_form(tiny_lp())).verdict
    assert rep.c_in_int_nd is check_td(to_hyperplane_primal_form(tiny_lp())).verdict


def test_shapiro_boundary_fails_with_td():
    # A = 0 and J_d = R_+ give N_p = R_+, so b = 0 puts -b on its boundary
    s = SymmetricInstance(Orthant(1), Orthant(1), LinearMap([[0]]), (0,), (1,))
    assert check_shapiro_conditions(s).minus_b_in_int_np is Tri.FAILS
    assert check_td(to_hyperplane_dual_form(s)).verdict is Tri.FAILS


def test_strong_duality_when_shapiro_holds():
    s = tiny_lp()
    rep = check_shapiro_conditions(s)
    assert Tri.HOLDS in (rep.minus_b_in_int_np, rep.c_in_int_nd)
    assert theta_primal(s) == theta_dual(s)


def test_non_polyhedral_data():
    s = SymmetricInstance(SOC, Orthant(1), LinearMap([[0, 0, 1]]), (1,), (0, 0, 1))
    with pytest.raises(PolicyError):
        build_shapiro_cones(s)
    rep = check_shapiro_conditions(s)
    assert rep.minus_b_in_int_np is Tri.UNKNOWN and rep.c_in_int_nd is Tri.UNKNOWN


def test_symmetric_validation():
    with pytest.raises(DimensionError):
        SymmetricInstance(Orthant(2), Orthant(1), LinearMap([[1, 1, 1]]), (1,), (1, 2))
    with pytest.raises(DimensionError):
        LinearMap([[1, 2], [3]])


def test_qop_zero_h1_is_single_cone():
    inst = qop_dnn_form(Orthant(2), (1, 2), (1, 1), (0, 0))
    assert inst.K2.generated_subspace().dim == 2


def test_qop_orthant():
    inst = qop_dnn_form(Orthant(2), (1, 2), (1, 1), (0, 1))
    r = solve_pair(inst)
    assert r.primal.value == 1 and r.primal.solution == (1, 0)
    assert r.dual_sum.value == 1


def test_qop_soc_tangent():
    inst = qop_dnn_form(SOC, (0, 1, 0), (0, 0, 1), (1, 0, 1))
    assert isinstance(inst.K2, LinearSubspace)
    assert inst.intersection.resolve().poly.generators == ((-1, 0, 1),)


def test_qop_rejects_h1_outside_dual():
    with pytest.raises(InvalidInstance):
        qop_dnn_form(Orthant(2), (1, 2), (1, 1), (-1, 1))
