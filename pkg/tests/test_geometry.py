from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conedual.errors import DimensionError, PolicyError
from conedual.geometry import (EXACT, FLOAT, Subspace, inner_product, point_from_json,
                               point_to_json, policy_named, project_onto, scalar_from_json,
                               scalar_to_json, smat, span_of, svec)

small = st.integers(-5, 5).map(Fraction)
ratio = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def vectors(n):
    return st.tuples(*[ratio] * n)


def test_inner_product_examples():
    assert inner_product((1, 2), (3, 4)) == 11
    assert inner_product((Fraction(7, 3), -2), (0, 0)) == 0


def test_inner_product_dimension_mismatch():
    with pytest.raises(DimensionError):
        inner_product((1, 2), (1, 2, 3))


def test_svec_preserves_trace_pairing():
    eye = np.eye(2)
    assert inner_product(svec(eye), svec(eye)) == pytest.approx(2.0)
    a = np.array([[1.0, 2.0], [2.0, 5.0]])
    b = np.array([[0.5, -1.0], [-1.0, 3.0]])
    assert inner_product(svec(a), svec(b)) == pytest.approx(np.trace(a @ b))
    assert np.allclose(smat(svec(a)), a)


def test_projection_examples():
    assert project_onto(Subspace(2, ((0, 1),)), (2, 3)) == (0, 3)
    assert project_onto(Subspace.full(3), (1, -2, 5)) == (1, -2, 5)
    assert project_onto(Subspace(2, ((1, 1),)), (1, 0)) == (Fraction(1, 2), Fraction(1, 2))


def test_span_examples():
    assert span_of([(1, 0), (2, 0)]).dim == 1
    assert span_of([(1, 0), (0, 1)]).dim == 2
    # three boundary rays of the second-order cone in R^3
    rays = [(3, 4, 5), (-3, 4, 5), (0, -1, 1)]
    assert span_of(rays).dim == 3


def test_zero_subspace_has_empty_basis():
    z = Subspace.zero(3)
    assert z.basis == () and project_onto(z, (1, 2, 3)) == (0, 0, 0)


def test_dependent_basis_rejected():
    with pytest.raises(ValueError):
        Subspace(2, ((1, 2), (2, 4)))


def test_policies():
    assert EXACT.exact and not FLOAT.exact
    assert 0 < FLOAT.abs_tol <= 1e-3 and 0 < FLOAT.rel_tol <= 1e-3
    assert policy_named("float") is FLOAT
    with pytest.raises(PolicyError):
        policy_named("quad")


def test_json_round_trip():
    x = (Fraction(1, 3), Fraction(-2), Fraction(0))
    assert point_from_json(point_to_json(x)) == x
    assert scalar_from_json(scalar_to_json(float("inf"))) == float("inf")
    assert scalar_to_json(Fraction(5, 2)) == "5/2"


@settings(max_examples=60, deadline=None)
@given(st.lists(vectors(3), min_size=1, max_size=3), vectors(3))
def test_projection_idempotent_and_pythagorean(points, x):
    s = span_of(points)
    p = project_onto(s, x)
    assert project_onto(s, p) == p
    r = tuple(a - b for a, b in zip(x, p))
    assert inner_product(x, x) == inner_product(p, p) + inner_product(r, r)


@settings(max_examples=60, deadline=None)
@given(vectors(3), vectors(3), vectors(3), small, small)
def test_inner_product_bilinear(x, y, z, a, b):
    lhs = inner_product(tuple(a * u + b * v for u, v in zip(x, y)), z)
    assert lhs == a * inner_product(x, z) + b * inner_product(y, z)


def test_float_projection_within_tolerance():
    s = span_of([(1.0, 1.0, 0.0)], FLOAT)
    p = project_onto(s, (1.0, 0.0, 2.0))
    assert np.allclose(p, (0.5, 0.5, 0.0), atol=1e-9)
    assert np.allclose(project_onto(s, p), p, atol=1e-9)
