"""Scalar policies, points, subspaces and the symmetric-matrix embedding.

Points are plain tuples.  Under the exact policy their entries are
``fractions.Fraction``; under the float policy they are Python floats.
"""

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import linalg
from .errors import DimensionError, PolicyError

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True)
class ScalarPolicy:
    kind: str  # "exact" or "float"
    abs_tol: float = 0.0
    rel_tol: float = 0.0

    def __post_init__(self):
        if self.kind == "exact":
            if self.abs_tol or self.rel_tol:
                raise PolicyError("exact policy carries no tolerances")
        elif self.kind == "float":
            for tol in (self.abs_tol, self.rel_tol):
                if not (0 < tol <= 1e-3):
                    raise PolicyError("float tolerances must lie in (0, 1e-3]")
        else:
            raise PolicyError(f"unknown policy kind {self.kind!r}")

    @property
    def exact(self):
        return self.kind == "exact"

    def band(self, x_norm):
        """Half-width of the Boundary band for a point of the given norm."""
        return self.abs_tol + self.rel_tol * x_norm


EXACT = ScalarPolicy("exact")
FLOAT = ScalarPolicy("float", 1e-9, 1e-9)


def policy_named(name):
    if name in (None, ""):
        return None
    name = name.strip().lower()
    if name == "exact":
        return EXACT
    if name == "float":
        return FLOAT
    raise PolicyError(f"unknown policy {name!r}; expected 'exact' or 'float'")


def env_policy():
    """Policy forced through the CONEDUAL_POLICY environment variable, if any."""
    return policy_named(os.environ.get("CONEDUAL_POLICY"))


def to_fraction(a):
    if isinstance(a, Fraction):
        return a
    if isinstance(a, str):
        return Fraction(a.strip())
    if isinstance(a, (int, np.integer)):
        return Fraction(int(a))
    if isinstance(a, (float, np.floating)):
        if not math.isfinite(a):
            raise ValueError("non-finite coordinate")
        return Fraction(float(a))
    return Fraction(a)


def to_float(a):
    if isinstance(a, str):
        return float(Fraction(a))
    return float(a)


def point(coords, policy=EXACT):
    """Convert a coordinate sequence to a point under the given policy."""
    if policy.exact:
        return tuple(to_fraction(a) for a in coords)
    return tuple(to_float(a) for a in coords)


def exact_point(coords):
    return tuple(to_fraction(a) for a in coords)


def check_dim(x, n, what="point"):
    if len(x) != n:
        raise DimensionError(f"{what} has dimension {len(x)}, expected {n}")


def inner_product(x, y):
    if len(x) != len(y):
        raise DimensionError(f"dimension mismatch {len(x)} vs {len(y)}")
    return sum(a * b for a, b in zip(x, y))


def norm(x):
    return math.sqrt(float(sum(a * a for a in x)))


def zero(n, policy=EXACT):
    return tuple(Fraction(0) for _ in range(n)) if policy.exact else (0.0,) * n


def unit(n, i, policy=EXACT):
    z = list(zero(n, policy))
    z[i] = Fraction(1) if policy.exact else 1.0
    return tuple(z)


def normalized(v):
    """Canonical direction: coprime integers for rationals, unit norm for floats."""
    if all(isinstance(a, (int, Fraction)) for a in v):
        return tuple(Fraction(a) for a in linalg.primitive(v))
    n = norm(v)
    return tuple(float(a) / n for a in v) if n > 0 else tuple(float(a) for a in v)


@dataclass(frozen=True)
class Subspace:
    """Linear subspace given by a basis of linearly independent points."""

    ambient_dim: int
    basis: tuple = field(default=())

    def __post_init__(self):
        basis = tuple(tuple(b) for b in self.basis)
        for b in basis:
            check_dim(b, self.ambient_dim, "basis vector")
        object.__setattr__(self, "basis", basis)
        if self.is_exact:
            if linalg.rank(basis, self.ambient_dim) != len(basis):
                raise ValueError("basis vectors are linearly dependent")
        elif basis and _float_rank(basis, FLOAT) != len(basis):
            raise ValueError("basis vectors are numerically dependent")

    @property
    def is_exact(self):
        return all(isinstance(a, (int, Fraction)) for b in self.basis for a in b)

    @property
    def dim(self):
        return len(self.basis)

    @classmethod
    def full(cls, n):
        return cls(n, tuple(unit(n, i) for i in range(n)))

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def orthogonal_to(cls, normals, n):
        """The subspace {x : <a, x> = 0 for every a in normals} (exact)."""
        return cls(n, tuple(linalg.frac_vec(v) for v in linalg.nullspace(list(normals), n)))

    def complement(self):
        if self.is_exact:
            return Subspace.orthogonal_to(self.basis, self.ambient_dim)
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        _, s, vt = np.linalg.svd(np.array(self.basis, dtype=float))
        return Subspace(self.ambient_dim, tuple(tuple(r) for r in vt[len(self.basis):]))

    def project(self, x):
        return project_onto(self, x)

    def contains(self, x, policy=EXACT):
        r = linalg.sub(x, self.project(x))
        if policy.exact:
            return linalg.is_zero(r)
        return norm(r) <= policy.band(norm(x))


def project_onto(s, x):
    """Orthogonal projection of x onto the subspace s."""
    check_dim(x, s.ambient_dim)
    if s.is_exact and all(isinstance(a, (int, Fraction)) for a in x):
        return linalg.project(s.basis, x)
    if not s.basis:
        return (0.0,) * s.ambient_dim
    b = np.array(s.basis, dtype=float).T
    coef, *_ = np.linalg.lstsq(b, np.array(x, dtype=float), rcond=None)
    return tuple(float(v) for v in b @ coef)


def _float_rank(points, policy):
    m = np.array(points, dtype=float)
    if m.size == 0:
        return 0
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > policy.rel_tol * s[0])) if s[0] > 0 else 0


def span_of(points, policy=EXACT):
    """Basis of the linear span of the given points."""
    points = [tuple(p) for p in points]
    if not points:
        raise ValueError("span_of needs at least one point")
    n = len(points[0])
    for p in points:
        check_dim(p, n)
    if policy.exact:
        return Subspace(n, tuple(linalg.frac_vec(r) for r in linalg.row_basis(points, n)))
    m = np.array(points, dtype=float)
    _, s, vt = np.linalg.svd(m)
    r = _float_rank(points, policy)
    return Subspace(n, tuple(tuple(float(v) for v in vt[i]) for i in range(r)))


# --- symmetric matrix embedding -------------------------------------------

def svec_dim(m):
    return m * (m + 1) // 2


def svec_order(n):
    m = int(round((math.sqrt(8 * n + 1) - 1) / 2))
    if svec_dim(m) != n:
        raise DimensionError(f"{n} is not a triangular number")
    return m


def svec(mat):
    """Upper triangle, row by row, off-diagonal entries scaled by sqrt(2)."""
    a = np.asarray(mat, dtype=float)
    m = a.shape[0]
    out = []
    for i in range(m):
        for j in range(i, m):
            out.append(float(a[i, j]) if i == j else SQRT2 * float(a[i, j]))
    return tuple(out)


def smat(x):
    """Inverse of svec."""
    m = svec_order(len(x))
    a = np.zeros((m, m))
    k = 0
    for i in range(m):
        for j in range(i, m):
            if i == j:
                a[i, i] = x[k]
            else:
                a[i, j] = a[j, i] = x[k] / SQRT2
            k += 1
    return a


# --- serialization of scalars and points ------------------------------------

def scalar_to_json(a):
    if isinstance(a, Fraction) or isinstance(a, int):
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"
    a = float(a)
    if math.isinf(a):
        return "inf" if a > 0 else "-inf"
    return a


def scalar_from_json(v):
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity"):
            return math.inf
        if s in ("-inf", "-infinity"):
            return -math.inf
        return Fraction(v)
    if isinstance(v, int):
        return Fraction(v)
    return float(v)


def point_to_json(x):
    return {"dim": len(x), "coords": [scalar_to_json(a) for a in x]}


def point_from_json(obj):
    if isinstance(obj, dict):
        coords = [scalar_from_json(a) for a in obj["coords"]]
        check_dim(coords, int(obj["dim"]))
    else:
        coords = [scalar_from_json(a) for a in obj]
    return tuple(coords)
