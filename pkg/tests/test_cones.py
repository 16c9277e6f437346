from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conedual.cones import (DualSum, HRep, Intersection, LinearSubspace, Orthant, Preimage,
                            Product, PsdEmbedded, SecondOrder, Verdict, VRep,
                            is_pointed_in_span, recession_ray_in_level)
from conedual.errors import DimensionError, PolicyError
from conedual.geometry import FLOAT, Subspace, inner_product

SOC = SecondOrder(3)
TANGENT = LinearSubspace.orthogonal_to([(1, 0, 1)], 3)


def same_span(a, b):
    return a.dim == b.dim and all(b.contains(v) for v in a.basis)


# --- membership ----------------------------------------------------------------

def test_soc_boundary_ray():
    assert SOC.member((3, 4, 5)).verdict is Verdict.BOUNDARY
    assert SOC.member((0, 0, 1)).verdict is Verdict.INSIDE
    assert SOC.member((1, 0, 0)).verdict is Verdict.OUTSIDE


def test_orthant_outside_with_separating_witness():
    cert = Orthant(2).member((1, -1))
    assert cert.verdict is Verdict.OUTSIDE
    assert cert.witness == (0, 1)


def test_dual_sum_near_tangent_point_decomposes():
    s = DualSum((SOC, TANGENT))
    y = (0, 1, Fraction(1, 1000))
    cert = s.member(y)
    assert cert.verdict is Verdict.INSIDE
    y1, y2 = cert.decomposition
    assert tuple(a + b for a, b in zip(y1, y2)) == y
    assert SOC.member(y1).inside and TANGENT.dual().member(y2).inside


def test_dual_sum_closure_point_is_outside():
    cert = DualSum((SOC, TANGENT)).member((0, 1, 0))
    assert cert.verdict is Verdict.OUTSIDE
    assert cert.profile.bound >= 2.0 ** 60


def test_interior_examples():
    assert Orthant(2).interior((1, 1))
    assert not Orthant(2).interior((1, 0))
    assert DualSum((SOC, TANGENT)).interior((-1, 0, 2))


def test_dimension_mismatch_raises():
    with pytest.raises(DimensionError):
        Orthant(2).member((1, 2, 3))


# --- duals -------------------------------------------------------------------------

def test_orthant_self_dual():
    d = Orthant(3).dual()
    for x in [(1, 2, 3), (0, 0, 1), (1, -1, 0)]:
        assert d.member(x).inside == Orthant(3).member(x).inside


def test_dual_of_planar_vrep():
    d = VRep(2, ((1, 0), (1, 1))).dual()
    # normals (1,0),(1,1); its extreme rays are (0,1) and (1,-1)
    assert set(map(tuple, d.poly.generators)) == {(0, 1), (1, -1)}
    for y, inside in [((0, 1), True), ((1, -1), True), ((-1, 0), False), ((1, -2), False)]:
        assert d.member(y).inside is inside


def test_dual_of_subspace_is_complement():
    line = LinearSubspace(Subspace(3, ((1, 0, 1),)))
    d = line.dual()
    assert same_span(d.generated_subspace(), Subspace(3, ((0, 1, 0), (-1, 0, 1))))


def test_soc_self_dual_and_psd():
    assert isinstance(SOC.dual(), SecondOrder)
    psd = PsdEmbedded(2)
    assert psd.dim == 3 and psd.dual().dim == 3


# --- spans, pointedness and recession --------------------------------------------------

def test_generated_subspaces():
    assert same_span(VRep(2, ((0, 1),)).generated_subspace(), Subspace(2, ((0, 1),)))
    assert SOC.generated_subspace().dim == 3
    meet = Intersection((SOC, TANGENT)).resolve()
    assert same_span(meet.generated_subspace(), Subspace(3, ((-1, 0, 1),)))


def test_pointed_in_span():
    assert is_pointed_in_span(Orthant(2))
    assert is_pointed_in_span(VRep(2, ((0, 1),)))
    with pytest.raises(PolicyError):
        is_pointed_in_span(SOC)


ints = st.integers(-3, 3)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(ints, ints, ints).filter(any), min_size=1, max_size=4))
def test_random_vrep_pointed_in_span(gens):
    assert is_pointed_in_span(VRep(3, tuple(gens)))


def test_recession_rays():
    assert recession_ray_in_level(Orthant(2), (1, 0), (0, -1)) == (0, 1)
    assert recession_ray_in_level(Orthant(2), (1, 1), (1, 2)) is None
    assert recession_ray_in_level(VRep(3, ((-1, 0, 1),)), (0, 0, 1), (0, 0, 0)) is None


# --- identities --------------------------------------------------------------------------

@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(ints, ints).filter(any), min_size=1, max_size=3),
       st.lists(st.tuples(ints, ints).filter(any), min_size=1, max_size=3),
       st.tuples(ints, ints))
def test_bidual_and_sum_identity(g1, g2, y):
    K1, K2 = VRep(2, tuple(g1)), HRep(2, tuple(g2))
    assert K1.dual().dual().member(y).inside == K1.member(y).inside
    s = DualSum((K1, K2))
    c = Intersection((K1, K2)).dual()
    assert s.member(y).inside == c.member(y).inside
    assert s.interior(y) == c.interior(y)


def test_outside_witness_separates():
    K = HRep(3, ((1, 0, 0), (0, 1, -1)))
    y = (1, 0, 2)
    cert = K.member(y)
    assert not cert.inside
    assert inner_product(cert.witness, y) < 0
    assert K.dual().member(cert.witness).inside


def test_product_and_preimage():
    P = Product(Orthant(1), SOC)
    assert P.member((1, 0, 0, 1)).inside and not P.member((-1, 0, 0, 1)).inside
    pre = Preimage(((1, -1),), Orthant(1), 2)
    assert pre.member((2, 1)).inside and not pre.member((1, 2)).inside


def test_float_policy_membership_near_boundary():
    assert SOC.member((3.0, 4.0, 5.0 + 1e-12), FLOAT).verdict is not Verdict.OUTSIDE
    assert SOC.member((3.0, 4.0, 4.9), FLOAT).verdict is Verdict.OUTSIDE
