"""Closed convex cones: representations, membership, duals and subspaces.

Rational polyhedral variants (HRep, VRep, Orthant, LinearSubspace and their
products/intersections/sums) are handled exactly through ``PolyCone``.  The
second-order and PSD cones are float cones whose membership is decided by a
concave margin function and the policy's tolerance band.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property

import numpy as np

from . import linalg, search
from .errors import DimensionError, PolicyError
from .geometry import (EXACT, FLOAT, Subspace, check_dim, norm, smat, svec,
                       svec_dim, to_fraction)
from .lp import nonneg_combination
from .polycone import PolyCone


class Verdict(str, Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class MembershipCertificate:
    verdict: Verdict
    witness: tuple = None
    decomposition: tuple = None
    certified: bool = True
    profile: object = field(default=None, compare=False)

    @property
    def inside(self):
        return self.verdict is not Verdict.OUTSIDE


def _frac(x):
    return tuple(to_fraction(a) for a in x)


def _unit(n, i):
    return tuple(Fraction(int(j == i)) for j in range(n))


class Cone:
    """Common behaviour of every cone representation."""

    dim = 0
    is_polyhedral = True

    # -- policy handling ------------------------------------------------------
    def _policy(self, policy):
        if policy is None:
            return EXACT if self.is_polyhedral else FLOAT
        if policy.exact and not self.is_polyhedral:
            raise PolicyError(f"{type(self).__name__} needs the float policy")
        return policy

    def _point(self, x):
        x = tuple(x)
        check_dim(x, self.dim)
        return x

    # -- polyhedral defaults ----------------------------------------------------
    @property
    def poly(self):
        raise PolicyError(f"{type(self).__name__} is not a rational polyhedral cone")

    def member(self, x, policy=None):
        x = self._point(x)
        policy = self._policy(policy)
        if self.is_polyhedral:
            x = _frac(x)
            w = self.poly.violated(x)
            if w is not None:
                return MembershipCertificate(Verdict.OUTSIDE, witness=w)
            v = Verdict.INSIDE if self.poly.interior(x) else Verdict.BOUNDARY
            return MembershipCertificate(v)
        return self._float_member(x, policy)

    def interior(self, x, policy=None):
        x = self._point(x)
        policy = self._policy(policy)
        if self.is_polyhedral:
            return self.poly.interior(_frac(x))
        return self.margin(x) > policy.band(norm(x))

    def generated_subspace(self):
        if self.is_polyhedral:
            return Subspace(self.dim, tuple(linalg.frac_vec(b) for b in self.poly.span()))
        raise PolicyError(f"no generated subspace for {type(self).__name__}")

    def relint_point(self):
        if self.is_polyhedral:
            return self.poly.relint_point()
        raise PolicyError(f"no relative interior point for {type(self).__name__}")

    def resolve(self):
        """A closed-form equivalent (VRep for polyhedral cones)."""
        if self.is_polyhedral:
            return VRep.of(self.poly)
        return self

    def recession(self, h, q, mode, policy=None):
        if self.is_polyhedral:
            return self.poly.recession_ray(_frac(h), _frac(q), mode)
        raise PolicyError(f"no recession search for {type(self).__name__}")

    # -- float protocol ---------------------------------------------------------
    def margin(self, x):
        """Concave function that is >= 0 exactly on the cone (float)."""
        ineqs, eqs = self.poly.h
        vals = [float(linalg.dot(a, _frac(x))) / norm(a) for a in ineqs]
        vals += [-abs(float(linalg.dot(e, _frac(x)))) / norm(e) for e in eqs]
        return min(vals) if vals else math.inf

    def certify(self, x, policy=FLOAT):
        """Membership check used to accept search results (exact where possible)."""
        if self.is_polyhedral:
            return self.poly.contains(_frac(x))
        return self.margin(x) >= -policy.band(norm(x))

    def _float_member(self, x, policy):
        m = self.margin(x)
        band = policy.band(norm(x))
        if m < -band:
            return MembershipCertificate(Verdict.OUTSIDE, witness=self.separator(x))
        return MembershipCertificate(Verdict.INSIDE if m > band else Verdict.BOUNDARY)

    def separator(self, x):
        return None


# --- rational polyhedral variants ---------------------------------------------

def _normalize_all(vectors, n):
    out = []
    seen = set()
    for v in vectors:
        v = tuple(v)
        check_dim(v, n, "generator")
        p = linalg.primitive(_frac(v))
        if any(p) and p not in seen:
            seen.add(p)
            out.append(tuple(Fraction(a) for a in p))
    return tuple(out)


@dataclass(frozen=True)
class HRep(Cone):
    """{x : <a_j, x> >= 0 for every normal a_j}."""

    dim: int
    normals: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "normals", _normalize_all(self.normals, self.dim))

    @cached_property
    def poly(self):
        return PolyCone.from_h(self.dim, self.normals)

    def dual(self):
        return VRep(self.dim, self.normals)


@dataclass(frozen=True)
class VRep(Cone):
    """cone{g_i}: all nonnegative combinations of the generators."""

    dim: int
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "generators", _normalize_all(self.generators, self.dim))

    @classmethod
    def of(cls, poly):
        k = cls(poly.n, tuple(poly.generators))
        k.__dict__["poly"] = poly
        return k

    @cached_property
    def poly(self):
        return PolyCone.from_v(self.dim, self.generators)

    def dual(self):
        return HRep(self.dim, self.generators)


@dataclass(frozen=True)
class Orthant(Cone):
    dim: int

    @cached_property
    def poly(self):
        eye = [_unit(self.dim, i) for i in range(self.dim)]
        return PolyCone(self.dim, h=(eye, ()), v=(eye, ()), minimal=True)

    def member(self, x, policy=None):
        x = _frac(self._point(x))
        self._policy(policy)
        for i, a in enumerate(x):
            if a < 0:
                return MembershipCertificate(Verdict.OUTSIDE, witness=_unit(self.dim, i))
        v = Verdict.INSIDE if all(a > 0 for a in x) else Verdict.BOUNDARY
        return MembershipCertificate(v)

    def dual(self):
        return self


@dataclass(frozen=True)
class LinearSubspace(Cone):
    space: Subspace

    def __post_init__(self):
        if not self.space.is_exact:
            raise PolicyError("linear subspaces must have a rational basis")

    @property
    def dim(self):
        return self.space.ambient_dim

    @classmethod
    def orthogonal_to(cls, normals, n):
        return cls(Subspace.orthogonal_to([_frac(a) for a in normals], n))

    @classmethod
    def full(cls, n):
        return cls(Subspace.full(n))

    @cached_property
    def poly(self):
        comp = self.space.complement()
        return PolyCone(self.dim, h=((), comp.basis), v=((), self.space.basis), minimal=True)

    def dual(self):
        return LinearSubspace(self.space.complement())

    def generated_subspace(self):
        return self.space


def full_space(n):
    """The whole space R^n as a cone (no constraints)."""
    return HRep(n, ())


# --- float variants ------------------------------------------------------------

def soc_margin(x):
    """x_n - ||x_bar||, evaluated from the exact squared difference when possible."""
    xf = _frac(x)
    xn = xf[-1]
    s = sum(a * a for a in xf[:-1])
    r = math.sqrt(float(s))
    if xn > 0:
        den = float(xn) + r
        return float(xn * xn - s) / den
    return float(xn) - r


def soc_contains_exact(x):
    xf = _frac(x)
    return xf[-1] >= 0 and xf[-1] * xf[-1] >= sum(a * a for a in xf[:-1])


@dataclass(frozen=True)
class SecondOrder(Cone):
    """{x : x_n >= ||(x_1, ..., x_{n-1})||}."""

    dim: int
    is_polyhedral = False
    is_second_order = True

    def margin(self, x):
        return soc_margin(x)

    def certify(self, x, policy=FLOAT):
        return soc_contains_exact(x)

    def separator(self, x):
        bar = np.array([float(a) for a in x[:-1]])
        nb = float(np.linalg.norm(bar))
        if nb == 0:
            return tuple(float(i == self.dim - 1) for i in range(self.dim))
        return tuple(list(-bar / nb) + [1.0])

    def dual(self):
        return self

    def generated_subspace(self):
        return Subspace.full(self.dim)

    def relint_point(self):
        return _unit(self.dim, self.dim - 1)

    def recession(self, h, q, mode, policy=None):
        policy = policy or FLOAT
        h = [float(a) for a in h]
        hbar = np.array(h[:-1])
        nb = float(np.linalg.norm(hbar))
        if soc_margin(h) > policy.band(norm(h)) or nb == 0:
            return None  # h interior: <h,d> = 0 forces d = 0
        d = np.array(list(-hbar / nb) + [1.0]) / math.sqrt(2.0)
        s = float(np.dot([float(a) for a in q], d))
        tol = policy.band(norm(q))
        if mode == "lt" and s < -tol or mode == "le" and s <= tol or mode == "eq" and abs(s) <= tol:
            return tuple(float(a) for a in d)
        return None


@dataclass(frozen=True)
class PsdEmbedded(Cone):
    """svec image of the cone of m x m positive semidefinite matrices."""

    order: int
    is_polyhedral = False

    @property
    def dim(self):
        return svec_dim(self.order)

    def margin(self, x):
        return float(np.linalg.eigvalsh(smat([float(a) for a in x]))[0])

    def separator(self, x):
        w, v = np.linalg.eigh(smat([float(a) for a in x]))
        u = v[:, 0]
        return svec(np.outer(u, u))

    def dual(self):
        return self

    def generated_subspace(self):
        return Subspace.full(self.dim)

    def relint_point(self):
        return svec(np.eye(self.order))

    def recession(self, h, q, mode, policy=None):
        policy = policy or FLOAT
        hm = smat([float(a) for a in h])
        w, v = np.linalg.eigh(hm)
        null = v[:, w <= policy.band(float(np.linalg.norm(hm)))]
        if null.shape[1] == 0:
            return None
        qm = null.T @ smat([float(a) for a in q]) @ null
        lw, lv = np.linalg.eigh(qm)
        tol = policy.band(norm(q))
        s = float(lw[0])
        if mode == "lt" and s < -tol or mode == "le" and s <= tol or mode == "eq" and abs(s) <= tol:
            u = null @ lv[:, 0]
            d = np.array(svec(np.outer(u, u)))
            return tuple(d / np.linalg.norm(d))
        return None


# --- composite variants --------------------------------------------------------

@dataclass(frozen=True)
class Product(Cone):
    left: Cone
    right: Cone

    @property
    def dim(self):
        return self.left.dim + self.right.dim

    @property
    def is_polyhedral(self):
        return self.left.is_polyhedral and self.right.is_polyhedral

    @cached_property
    def poly(self):
        if not self.is_polyhedral:
            return Cone.poly.fget(self)
        return self.left.poly.product(self.right.poly)

    def _split(self, x):
        return x[:self.left.dim], x[self.left.dim:]

    def _float_member(self, x, policy):
        a, b = self._split(x)
        ca = self.left.member(a, None if self.left.is_polyhedral else policy)
        cb = self.right.member(b, None if self.right.is_polyhedral else policy)
        if not ca.inside:
            w = tuple(ca.witness) + (0,) * self.right.dim if ca.witness else None
            return MembershipCertificate(Verdict.OUTSIDE, witness=w)
        if not cb.inside:
            w = (0,) * self.left.dim + tuple(cb.witness) if cb.witness else None
            return MembershipCertificate(Verdict.OUTSIDE, witness=w)
        both = ca.verdict is Verdict.INSIDE and cb.verdict is Verdict.INSIDE
        return MembershipCertificate(Verdict.INSIDE if both else Verdict.BOUNDARY)

    def interior(self, x, policy=None):
        x = self._point(x)
        if self.is_polyhedral:
            return Cone.interior(self, x, policy)
        a, b = self._split(x)
        return (self.left.interior(a, None if self.left.is_polyhedral else policy)
                and self.right.interior(b, None if self.right.is_polyhedral else policy))

    def margin(self, x):
        a, b = self._split(x)
        return min(self.left.margin(a), self.right.margin(b))

    def certify(self, x, policy=FLOAT):
        a, b = self._split(x)
        return self.left.certify(a, policy) and self.right.certify(b, policy)

    def dual(self):
        return Product(self.left.dual(), self.right.dual())

    def generated_subspace(self):
        if self.is_polyhedral:
            return Cone.generated_subspace(self)
        s1, s2 = self.left.generated_subspace(), self.right.generated_subspace()
        z1, z2 = (Fraction(0),) * s1.ambient_dim, (Fraction(0),) * s2.ambient_dim
        return Subspace(self.dim, tuple(tuple(b) + z2 for b in s1.basis)
                        + tuple(z1 + tuple(b) for b in s2.basis))

    def relint_point(self):
        if self.is_polyhedral:
            return Cone.relint_point(self)
        return tuple(self.left.relint_point()) + tuple(self.right.relint_point())

    def recession(self, h, q, mode, policy=None):
        if self.is_polyhedral:
            return Cone.recession(self, h, q, mode, policy)
        ha, hb = self._split(h)
        qa, qb = self._split(q)
        da = self.left.recession(ha, qa, mode, policy)
        if da is not None:
            return tuple(da) + (0,) * self.right.dim
        db = self.right.recession(hb, qb, mode, policy)
        if db is not None:
            return (0,) * self.left.dim + tuple(db)
        return None


def _same_dim(parts):
    parts = tuple(parts)
    if not parts:
        raise ValueError("at least one part is required")
    n = parts[0].dim
    for p in parts:
        if p.dim != n:
            raise DimensionError("parts live in different dimensions")
    return parts


@dataclass(frozen=True)
class Intersection(Cone):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", _same_dim(self.parts))

    @property
    def dim(self):
        return self.parts[0].dim

    @property
    def is_polyhedral(self):
        return all(p.is_polyhedral for p in self.parts)

    @cached_property
    def poly(self):
        if not self.is_polyhedral:
            return Cone.poly.fget(self)
        return PolyCone.intersect([p.poly for p in self.parts])

    @cached_property
    def resolved(self):
        return resolve_intersection(self.parts)

    def resolve(self):
        return self.resolved

    def _float_member(self, x, policy):
        verdicts = []
        for p in self.parts:
            c = p.member(x, None if p.is_polyhedral else policy)
            if not c.inside:
                return c
            verdicts.append(c.verdict)
        inside = all(v is Verdict.INSIDE for v in verdicts)
        return MembershipCertificate(Verdict.INSIDE if inside else Verdict.BOUNDARY)

    def interior(self, x, policy=None):
        if self.is_polyhedral:
            return Cone.interior(self, x, policy)
        return all(p.interior(x, None if p.is_polyhedral else policy) for p in self.parts)

    def margin(self, x):
        return min(p.margin(x) for p in self.parts)

    def certify(self, x, policy=FLOAT):
        return all(p.certify(x, policy) for p in self.parts)

    def dual(self):
        return DualSum(self.parts, closure=True, closed="proven_closed")

    def generated_subspace(self):
        if self.is_polyhedral:
            return Cone.generated_subspace(self)
        return self.resolved.generated_subspace()

    def relint_point(self):
        if self.is_polyhedral:
            return Cone.relint_point(self)
        return self.resolved.relint_point()

    def recession(self, h, q, mode, policy=None):
        if self.is_polyhedral:
            return Cone.recession(self, h, q, mode, policy)
        return self.resolved.recession(h, q, mode, policy)


CLOSED_STATES = ("unknown", "proven_closed", "proven_nonclosed")


@dataclass(frozen=True)
class DualSum(Cone):
    """Sum of the parts' duals.  With ``closure`` set it denotes the closure of
    that sum, which is the dual of the intersection of the parts."""

    parts: tuple
    closed: str = "unknown"
    closure: bool = False
    certificate: object = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "parts", _same_dim(self.parts))
        if self.closed not in CLOSED_STATES:
            raise ValueError(f"closed annotation must be one of {CLOSED_STATES}")

    @property
    def dim(self):
        return self.parts[0].dim

    @property
    def is_polyhedral(self):
        return all(p.is_polyhedral for p in self.parts)

    @cached_property
    def poly(self):
        if not self.is_polyhedral:
            return Cone.poly.fget(self)
        if self.closure:
            return PolyCone.intersect([p.poly for p in self.parts]).dual()
        return PolyCone.minkowski([p.poly.dual() for p in self.parts])

    @cached_property
    def closure_cone(self):
        """(intersection of the parts)^*, in closed form."""
        return resolve_intersection(self.parts).dual()

    @cached_property
    def _split_duals(self):
        """Generators of the polyhedral part duals (with owning part) plus the
        curved part duals."""
        gens, rays, owner, curved = [], [], [], []
        for k, p in enumerate(self.parts):
            d = p.dual()
            if d.is_polyhedral:
                r, l = d.poly.v
                for g in r:
                    gens.append(tuple(Fraction(a) for a in g))
                    rays.append(True)
                    owner.append(k)
                for g in l:
                    gens.append(tuple(Fraction(a) for a in g))
                    rays.append(False)
                    owner.append(k)
            else:
                curved.append((k, d.resolve()))
        return gens, rays, owner, curved

    def member(self, x, policy=None):
        x = self._point(x)
        policy = self._policy(policy)
        if self.is_polyhedral:
            return self._exact_member(_frac(x))
        if self.closure:
            return self.closure_cone.member(x, policy)
        return self._search_member(x, policy)

    def _exact_member(self, y):
        if self.closure:
            return Cone.member(self, y)
        gens, rays, owner, _ = self._split_duals
        idx_r = [i for i, r in enumerate(rays) if r]
        idx_l = [i for i, r in enumerate(rays) if not r]
        sol = nonneg_combination([gens[i] for i in idx_r], y, [gens[i] for i in idx_l])
        if sol is None:
            return MembershipCertificate(Verdict.OUTSIDE, witness=self.poly.violated(y))
        coef = [0] * len(gens)
        for i, c in zip(idx_r + idx_l, list(sol[0]) + list(sol[1])):
            coef[i] = c
        parts = self._assign(gens, owner, coef, None, None)
        v = Verdict.INSIDE if self.poly.interior(y) else Verdict.BOUNDARY
        return MembershipCertificate(v, decomposition=parts)

    def _assign(self, gens, owner, coef, curved_index, curved_part):
        """One summand per part from generator coefficients."""
        out = [[Fraction(0)] * self.dim for _ in self.parts]
        for g, k, c in zip(gens, owner, coef):
            if c:
                for i, a in enumerate(g):
                    out[k][i] += c * a
        if curved_index is not None:
            out[curved_index] = list(curved_part)
        return tuple(tuple(v) for v in out)

    def _search_member(self, x, policy):
        gens, rays, owner, curved = self._split_duals
        if len(curved) != 1:
            raise PolicyError("sum membership supports exactly one non-polyhedral summand")
        k_big, big = curved[0]
        y = _frac(x)
        try:
            closure = self.closure_cone
        except PolicyError:
            closure = None
        if closure is not None:
            c = closure.member(x, policy)
            if not c.inside:
                return c
        lams, prof, proven = search.decompose(y, gens, rays, big, policy)
        if lams is None:
            return MembershipCertificate(Verdict.OUTSIDE, certified=proven, profile=prof)
        rest = search.shifted(y, gens, lams)
        parts = self._assign(gens, owner, lams, k_big, rest)
        inside = closure is not None and closure.interior(x, policy)
        return MembershipCertificate(Verdict.INSIDE if inside else Verdict.BOUNDARY,
                                     decomposition=parts, profile=prof)

    def interior(self, x, policy=None):
        x = self._point(x)
        policy = self._policy(policy)
        if self.is_polyhedral:
            return self.poly.interior(_frac(x))
        return self.closure_cone.interior(x, policy)

    def margin(self, x):
        return self.closure_cone.margin(x)

    def certify(self, x, policy=FLOAT):
        if self.is_polyhedral:
            return self.poly.contains(_frac(x))
        return self.member(x, policy).inside

    def dual(self):
        return Intersection(self.parts)

    def generated_subspace(self):
        if self.is_polyhedral:
            return Cone.generated_subspace(self)
        vecs = []
        for p in self.parts:
            vecs += p.dual().generated_subspace().basis
        if not vecs:
            return Subspace.zero(self.dim)
        from .geometry import span_of
        exact = all(isinstance(a, (int, Fraction)) for v in vecs for a in v)
        return span_of(vecs, EXACT if exact else FLOAT)

    def relint_point(self):
        if self.is_polyhedral:
            return Cone.relint_point(self)
        x = [0] * self.dim
        for p in self.parts:
            for i, a in enumerate(p.dual().relint_point()):
                x[i] += a
        return tuple(x)

    def resolve(self):
        if self.closure:
            return self.closure_cone
        if self.is_polyhedral:
            return VRep.of(self.poly)
        return self


@dataclass(frozen=True)
class Preimage(Cone):
    """{x : M x in target} for a rational matrix M."""

    matrix: tuple
    target: Cone
    ncols: int

    def __post_init__(self):
        mat = tuple(tuple(to_fraction(a) for a in row) for row in self.matrix)
        if len(mat) != self.target.dim or any(len(r) != self.ncols for r in mat):
            raise DimensionError("matrix shape does not match target cone")
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self):
        return self.ncols

    @property
    def is_polyhedral(self):
        return self.target.is_polyhedral

    @cached_property
    def poly(self):
        if not self.is_polyhedral:
            return Cone.poly.fget(self)
        return self.target.poly.preimage(self.matrix, self.ncols)

    def _apply(self, x):
        return tuple(sum(a * b for a, b in zip(row, x)) for row in self.matrix)

    def _float_member(self, x, policy):
        c = self.target.member(self._apply(x), policy)
        if c.inside:
            return MembershipCertificate(Verdict.BOUNDARY if c.verdict is Verdict.BOUNDARY
                                         else Verdict.INSIDE)
        w = None
        if c.witness is not None:
            w = tuple(sum(float(self.matrix[i][j]) * float(c.witness[i])
                          for i in range(len(self.matrix))) for j in range(self.ncols))
        return MembershipCertificate(Verdict.OUTSIDE, witness=w)

    def margin(self, x):
        return self.target.margin(self._apply(x))

    def certify(self, x, policy=FLOAT):
        return self.target.certify(self._apply(_frac(x)), policy)

    def dual(self):
        if self.is_polyhedral:
            return VRep.of(self.poly.dual())
        raise PolicyError("the dual of a non-polyhedral preimage has no closed form here")


# --- second-order cone cut by a rational subspace --------------------------------

@dataclass(frozen=True)
class _SliceGeometry:
    proj: tuple        # exact projector onto the subspace
    axis: tuple        # exact projection of e_n onto the subspace
    basis: np.ndarray  # orthonormal basis of the subspace (columns)
    what: np.ndarray   # unit axis direction in subspace coordinates
    alpha: float       # aperture: ||v|| <= alpha * a in axis coordinates


def _slice_geometry(space):
    n = space.ambient_dim
    proj = linalg.projector(space.basis, n)
    axis = tuple(proj[i][n - 1] for i in range(n))
    q, _ = np.linalg.qr(np.array(space.basis, dtype=float).T)
    w = q.T @ np.eye(n)[n - 1]
    p = float(proj[n - 1][n - 1])
    return _SliceGeometry(tuple(map(tuple, proj)), axis, q, w / np.linalg.norm(w),
                          math.sqrt(max(2 * p - 1, 0.0)))


@dataclass(frozen=True)
class SocSlice(Cone):
    """Second-order cone intersected with a subspace that meets its interior."""

    space: Subspace
    is_polyhedral = False

    @property
    def dim(self):
        return self.space.ambient_dim

    @cached_property
    def geom(self):
        return _slice_geometry(self.space)

    def _residual(self, x):
        return linalg.sub(_frac(x), linalg.matvec(self.geom.proj, _frac(x)))

    def margin(self, x):
        return min(soc_margin(x), -norm(self._residual(x)))

    def certify(self, x, policy=FLOAT):
        return linalg.is_zero(self._residual(x)) and soc_contains_exact(x)

    def separator(self, x):
        r = self._residual(x)
        if norm(r) > FLOAT.band(norm(x)):
            return tuple(-float(a) for a in r)
        return SecondOrder(self.dim).separator(x)

    def _float_member(self, x, policy):
        c = Cone._float_member(self, x, policy)
        if c.verdict is Verdict.INSIDE:
            return MembershipCertificate(Verdict.BOUNDARY)
        return c

    def interior(self, x, policy=None):
        return False

    def dual(self):
        return SocSliceDual(self.space)

    def generated_subspace(self):
        return self.space

    def relint_point(self):
        return self.geom.axis

    def recession(self, h, q, mode, policy=None):
        raise PolicyError("recession search is not available on a curved slice")


@dataclass(frozen=True)
class SocSliceDual(Cone):
    """Dual of ``SocSlice``: full-dimensional, lineality = subspace complement."""

    space: Subspace
    is_polyhedral = False

    @property
    def dim(self):
        return self.space.ambient_dim

    @cached_property
    def geom(self):
        return _slice_geometry(self.space)

    def _coords(self, y):
        g = self.geom
        z = g.basis.T @ np.array([float(a) for a in y])
        b = float(z @ g.what)
        return b, z - b * g.what

    def margin(self, y):
        b, rest = self._coords(y)
        a = self.geom.alpha
        return (b - a * float(np.linalg.norm(rest))) / math.sqrt(1 + a * a)

    def separator(self, y):
        g = self.geom
        _, rest = self._coords(y)
        nr = float(np.linalg.norm(rest))
        z = g.what - (g.alpha * rest / nr if nr > 0 else 0)
        return tuple(float(v) for v in g.basis @ z)

    def dual(self):
        return SocSlice(self.space)

    def generated_subspace(self):
        return Subspace.full(self.dim)

    def relint_point(self):
        return self.geom.axis


def resolve_intersection(parts):
    """Closed-form description of an intersection, or PolicyError."""
    parts = _same_dim(parts)
    n = parts[0].dim
    polys = [p.poly for p in parts if p.is_polyhedral]
    curved = [p.resolve() for p in parts if not p.is_polyhedral]
    pc = PolyCone.intersect(polys) if polys else PolyCone.whole(n)
    if not curved:
        return VRep.of(pc)
    if pc.dim == 0:
        return VRep.of(PolyCone.origin(n))
    if len(curved) == 1:
        big = curved[0]
        if pc.is_subspace and pc.is_full:
            return big
        if isinstance(big, SecondOrder) and pc.is_subspace:
            return soc_slice(n, pc.lines)
    raise PolicyError("intersection has no closed form for these parts")


def soc_slice(n, basis):
    """SOC_n intersected with span(basis), classified exactly."""
    basis = [tuple(Fraction(a) for a in b) for b in basis]
    proj = linalg.projector(basis, n)
    p = proj[n - 1][n - 1]
    axis = tuple(proj[i][n - 1] for i in range(n))
    if p < Fraction(1, 2):
        return VRep.of(PolyCone.origin(n))
    if p == Fraction(1, 2):
        return VRep(n, (axis,))
    space = Subspace(n, tuple(basis))
    if len(basis) == n:
        return SecondOrder(n)
    return SocSlice(space)


# --- module-level operations ---------------------------------------------------

def member(K, x, policy=None):
    return K.member(x, policy)


def interior_member(K, x, policy=None):
    return K.interior(x, policy)


def dual(K):
    return K.dual()


def generated_subspace(K):
    return K.generated_subspace()


def is_pointed_in_span(K):
    """Whether K* intersected with span(K) contains no line (always true)."""
    if not K.is_polyhedral:
        raise PolicyError("pointedness check needs a rational polyhedral cone")
    span = K.generated_subspace()
    comp = span.complement()
    kd = K.poly.dual()
    ineqs, eqs = kd.h
    restricted = PolyCone.from_h(K.dim, ineqs, list(eqs) + list(comp.basis))
    return not restricted.lines


def recession_ray_in_level(K, h, q, strict=False, level=False, policy=None):
    """Nonzero d in K with <h,d> = 0 and <q,d> <= 0 (< 0 if strict, = 0 if level)."""
    check_dim(h, K.dim)
    check_dim(q, K.dim)
    mode = "lt" if strict else ("eq" if level else "le")
    return K.recession(h, q, mode, policy)
