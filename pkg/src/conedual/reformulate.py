"""Conversions between the symmetric pair and the hyperplane form.

Symmetric pair, with J_p in E_p, J_d in E_d and A : E_p -> E_d:

    theta_p = inf <c,u>  s.t. u in J_p, A u - b in J_d
    theta_d = sup <b,v>  s.t. v in J_d*, c - A^T v in J_p*

Both sides can be rewritten as a hyperplane instance on R x E_p (primal form)
or R x E_d (dual form).  Exact LP oracles for theta_p and theta_d are provided
so the conversions can be checked against something that does not go through
the hyperplane solvers.
"""

import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .conditions import Tri, check_tp
from .cones import DualSum, LinearSubspace, Orthant, Preimage, Product, VRep, full_space
from .errors import DimensionError, InvalidInstance, PolicyError
from .geometry import to_fraction
from .lp import solve_lp
from .polycone import PolyCone
from .solver import HyperplaneInstance

MAX_IMAGE_GENERATORS = 256


@dataclass(frozen=True)
class LinearMap:
    """A matrix with ``codomain_dim`` rows and ``domain_dim`` columns."""

    matrix: tuple

    def __post_init__(self):
        rows = tuple(tuple(to_fraction(a) for a in r) for r in self.matrix)
        if not rows or len({len(r) for r in rows}) != 1 or not rows[0]:
            raise DimensionError("matrix must be a nonempty rectangular grid")
        object.__setattr__(self, "matrix", rows)

    @property
    def codomain_dim(self):
        return len(self.matrix)

    @property
    def domain_dim(self):
        return len(self.matrix[0])

    def __call__(self, u):
        if len(u) != self.domain_dim:
            raise DimensionError("argument does not match the domain")
        return tuple(sum((a * to_fraction(b) for a, b in zip(r, u)), Fraction(0))
                     for r in self.matrix)

    def adjoint(self):
        return LinearMap(tuple(zip(*self.matrix)))


@dataclass(frozen=True)
class SymmetricInstance:
    Jp: object
    Jd: object
    A: LinearMap
    b: tuple
    c: tuple

    def __post_init__(self):
        if not isinstance(self.A, LinearMap):
            object.__setattr__(self, "A", LinearMap(self.A))
        if isinstance(self.Jp, DualSum) or isinstance(self.Jd, DualSum):
            raise InvalidInstance("symmetric instances take closed cones only")
        if self.A.domain_dim != self.Jp.dim or self.A.codomain_dim != self.Jd.dim:
            raise DimensionError("A must map the space of J_p into the space of J_d")
        if len(self.b) != self.Jd.dim or len(self.c) != self.Jp.dim:
            raise DimensionError("b lives with J_d and c lives with J_p")
        object.__setattr__(self, "b", tuple(to_fraction(a) for a in self.b))
        object.__setattr__(self, "c", tuple(to_fraction(a) for a in self.c))

    @property
    def Ep_dim(self):
        return self.Jp.dim

    @property
    def Ed_dim(self):
        return self.Jd.dim

    @property
    def is_polyhedral(self):
        return self.Jp.is_polyhedral and self.Jd.is_polyhedral


def _e0(n):
    return (Fraction(1),) + (Fraction(0),) * n


def to_hyperplane_primal_form(s, instance_id=""):
    """K1 = R+ x J_p, K2 = {(x0,u) : A u - b x0 in J_d}, q = (0,c), h = (1,0)."""
    mat = [(-s.b[i],) + s.A.matrix[i] for i in range(s.Ed_dim)]
    K1 = Product(Orthant(1), s.Jp)
    K2 = Preimage(tuple(mat), s.Jd, 1 + s.Ep_dim)
    return HyperplaneInstance(K1, K2, (Fraction(0),) + s.c, _e0(s.Ep_dim),
                              instance_id=instance_id)


def to_hyperplane_dual_form(s, instance_id=""):
    """K1 = R+ x J_d*, K2 = {(x0,v) : c x0 - A^T v in J_p*}, q = (0,-b), h = (1,0)."""
    at = s.A.adjoint().matrix
    mat = [(s.c[j],) + tuple(-a for a in at[j]) for j in range(s.Ep_dim)]
    K1 = Product(Orthant(1), s.Jd.dual())
    K2 = Preimage(tuple(mat), s.Jp.dual(), 1 + s.Ed_dim)
    return HyperplaneInstance(K1, K2, (Fraction(0),) + tuple(-a for a in s.b),
                              _e0(s.Ed_dim), instance_id=instance_id)


def qop_dnn_form(K1, q, h, h1, instance_id=""):
    """Pair with K2 = {x : <h1,x> = 0}; h1 must lie in K1*."""
    n = K1.dim
    kd = K1.dual()
    if not kd.member(h1).inside:
        raise InvalidInstance("h1 must lie in the dual of K1")
    if all(a == 0 for a in h1):
        K2 = full_space(n)
    else:
        K2 = LinearSubspace.orthogonal_to([h1], n)
    return HyperplaneInstance(K1, K2, q, h, instance_id=instance_id)


# --- cones of the symmetric pair -------------------------------------------------------

@dataclass(frozen=True)
class ShapiroCones:
    Mp: object
    Np: object
    Nd: object
    Mp_hat: object


def _gens(poly):
    rays, lines = poly.v
    out = [tuple(map(Fraction, r)) for r in rays]
    for l in lines:
        out += [tuple(map(Fraction, l)), tuple(-Fraction(a) for a in l)]
    return out


def _vrep(n, gens):
    pc = PolyCone.from_v(n, gens)
    if len(pc.vmin[0]) + 2 * len(pc.vmin[1]) > MAX_IMAGE_GENERATORS:
        raise PolicyError("image cone exceeds the generator cap")
    return VRep.of(PolyCone.from_v(n, *pc.vmin))


def build_shapiro_cones(s):
    if not s.is_polyhedral:
        raise PolicyError("image cones are built for polyhedral data only")
    m = s.Ed_dim
    zero = (Fraction(0),)
    jp, jd = _gens(s.Jp.poly), _gens(s.Jd.poly)
    jp_dual, jd_dual = _gens(s.Jp.poly.dual()), _gens(s.Jd.poly.dual())
    minus_au = [tuple(-a for a in s.A(g)) for g in jp]
    cu = [linalg.dot(s.c, g) for g in jp]
    np_gens = jd + minus_au
    hat = [zero + w for w in jd] + [(a,) + v for a, v in zip(cu, minus_au)]
    mp = [(Fraction(1),) + zero * m] + hat
    at = s.A.adjoint()
    nd = jp_dual + [at(w) for w in jd_dual]
    return ShapiroCones(_vrep(1 + m, mp), _vrep(m, np_gens), _vrep(s.Ep_dim, nd),
                        _vrep(1 + m, hat))


@dataclass(frozen=True)
class ShapiroReport:
    mp_closed: Tri
    minus_b_in_int_np: Tri
    c_in_int_nd: Tri


def check_shapiro_conditions(s):
    mp_closed = check_tp(to_hyperplane_dual_form(s)).verdict
    if not s.is_polyhedral:
        return ShapiroReport(mp_closed, Tri.UNKNOWN, Tri.UNKNOWN)
    cones = build_shapiro_cones(s)
    minus_b = tuple(-a for a in s.b)
    b_ok = Tri.HOLDS if cones.Np.poly.interior(minus_b) else Tri.FAILS
    c_ok = Tri.HOLDS if cones.Nd.poly.interior(s.c) else Tri.FAILS
    return ShapiroReport(mp_closed, b_ok, c_ok)


# --- exact LP oracles --------------------------------------------------------------------

def _lp_value(cost, ge_rows, eq_rows, nvars, maximize=False):
    """Optimize over x >= 0 subject to rows; returns an extended real."""
    a_eq, b_eq = [], []
    k = len(ge_rows)
    for j, (row, rhs) in enumerate(ge_rows):
        a_eq.append(list(row) + [Fraction(-int(i == j)) for i in range(k)])
        b_eq.append(rhs)
    for row, rhs in eq_rows:
        a_eq.append(list(row) + [Fraction(0)] * k)
        b_eq.append(rhs)
    c = [(-a if maximize else a) for a in cost] + [Fraction(0)] * k
    if not a_eq:
        a_eq, b_eq = [[Fraction(0)] * (nvars + k)], [Fraction(0)]
    res = solve_lp(c, a_eq, b_eq)
    if res.status == "infeasible":
        return -math.inf if maximize else math.inf
    if res.status == "unbounded":
        return math.inf if maximize else -math.inf
    return -res.value if maximize else res.value


def theta_primal(s):
    """inf <c,u> over u in J_p with A u - b in J_d, by an LP over generators of J_p."""
    gens = _gens(s.Jp.poly)
    ineqs, eqs = s.Jd.poly.h
    images = [s.A(g) for g in gens]
    ge = [([linalg.dot(a, ag) for ag in images], linalg.dot(a, s.b)) for a in ineqs]
    eq = [([linalg.dot(e, ag) for ag in images], linalg.dot(e, s.b)) for e in eqs]
    cost = [linalg.dot(s.c, g) for g in gens]
    return _lp_value(cost, ge, eq, len(gens))


def theta_dual(s):
    """sup <b,v> over v in J_d* with c - A^T v in J_p*."""
    gens = _gens(s.Jd.poly.dual())
    rays, lines = s.Jp.poly.v
    at = s.A.adjoint()
    images = [at(w) for w in gens]
    ge = [([linalg.dot(g, aw) for aw in images], linalg.dot(g, s.c)) for g in rays]
    eq = [([linalg.dot(g, aw) for aw in images], linalg.dot(g, s.c)) for g in lines]
    # c - A^T v >= 0 on rays: sum_k mu_k <g, A^T w_k> <= <g, c>
    ge = [([-a for a in row], -rhs) for row, rhs in ge]
    cost = [linalg.dot(s.b, w) for w in gens]
    return _lp_value(cost, ge, eq, len(gens), maximize=True)
