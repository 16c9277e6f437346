"""Rational polyhedral cones carrying both descriptions.

A ``PolyCone`` is built from either an H-description (inequality normals plus
equality normals) or a V-description (rays plus lineality basis); the other one
is produced on demand by double description and cached.
"""

from fractions import Fraction
from functools import cached_property

from . import dd, linalg


def _ints(vectors, n):
    out = []
    seen = set()
    for v in vectors:
        if len(v) != n:
            raise ValueError(f"vector of length {len(v)} in a {n}-dimensional cone")
        p = linalg.primitive(v)
        if any(p) and p not in seen:
            seen.add(p)
            out.append(p)
    return tuple(out)


class PolyCone:
    """``h``/``v`` may be redundant descriptions; ``hmin``/``vmin`` are minimal."""

    def __init__(self, n, h=None, v=None, minimal=False):
        self.n = n
        if h is None and v is None:
            raise ValueError("PolyCone needs an H- or V-description")
        if h is not None:
            self.__dict__["h"] = (_ints(h[0], n), _ints(h[1], n))
            if minimal:
                self.__dict__["hmin"] = self.__dict__["h"]
        if v is not None:
            self.__dict__["v"] = (_ints(v[0], n), _ints(v[1], n))
            if minimal:
                self.__dict__["vmin"] = self.__dict__["v"]

    @classmethod
    def from_h(cls, n, ineqs, eqs=()):
        return cls(n, h=(ineqs, eqs))

    @classmethod
    def from_v(cls, n, rays, lines=()):
        return cls(n, v=(rays, lines))

    @classmethod
    def whole(cls, n):
        eye = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return cls(n, h=((), ()), v=((), eye), minimal=True)

    @classmethod
    def origin(cls, n):
        eye = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        return cls(n, h=((), eye), v=((), ()), minimal=True)

    @cached_property
    def h(self):
        return self.hmin

    @cached_property
    def v(self):
        return self.vmin

    @cached_property
    def hmin(self):
        rays, lines = self.v
        facets, eqs = dd.vrep_to_hrep(list(rays), list(lines), self.n)
        return tuple(facets), tuple(eqs)

    @cached_property
    def vmin(self):
        ineqs, eqs = self.h
        rays, lines = dd.hrep_to_vrep(list(ineqs), list(eqs), self.n)
        return tuple(rays), tuple(lines)

    # -- derived data ---------------------------------------------------------
    @property
    def rays(self):
        return self.vmin[0]

    @property
    def lines(self):
        return self.vmin[1]

    @property
    def facets(self):
        return self.hmin[0]

    @property
    def equalities(self):
        return self.hmin[1]

    @property
    def generators(self):
        """Conic generators: rays, lineality vectors and their negatives."""
        rays, lines = self.v
        return rays + lines + tuple(tuple(-a for a in l) for l in lines)

    @property
    def dim(self):
        return linalg.rank(list(self.v[0]) + list(self.v[1]), self.n)

    @property
    def is_full(self):
        return self.dim == self.n

    @property
    def is_pointed(self):
        return not self.lines

    @property
    def is_subspace(self):
        return not self.rays

    def span(self):
        return linalg.row_basis(list(self.v[0]) + list(self.v[1]), self.n)

    def relint_point(self):
        x = [Fraction(0)] * self.n
        for r in self.v[0]:
            for i, a in enumerate(r):
                x[i] += a
        return tuple(x)

    # -- membership -----------------------------------------------------------
    def violated(self, x):
        """A vector of the dual cone separating x, or None when x is in the cone."""
        ineqs, eqs = self.h
        for e in eqs:
            s = linalg.dot(e, x)
            if s != 0:
                return tuple(Fraction(-a) if s > 0 else Fraction(a) for a in e)
        for a in ineqs:
            if linalg.dot(a, x) < 0:
                return tuple(Fraction(b) for b in a)
        return None

    def contains(self, x):
        return self.violated(x) is None

    def interior(self, x):
        ineqs, eqs = self.h
        if eqs:
            return False
        return all(linalg.dot(a, x) > 0 for a in ineqs)

    # -- constructions ----------------------------------------------------------
    def dual(self):
        d = PolyCone.__new__(PolyCone)
        d.n = self.n
        for mine, theirs in (("h", "v"), ("v", "h"), ("hmin", "vmin"), ("vmin", "hmin")):
            if mine in self.__dict__:
                d.__dict__[theirs] = self.__dict__[mine]
        return d

    @staticmethod
    def intersect(parts):
        n = parts[0].n
        ineqs, eqs = [], []
        for p in parts:
            a, e = p.h
            ineqs += a
            eqs += e
        return PolyCone.from_h(n, ineqs, eqs)

    @staticmethod
    def minkowski(parts):
        n = parts[0].n
        rays, lines = [], []
        for p in parts:
            r, l = p.v
            rays += r
            lines += l
        return PolyCone.from_v(n, rays, lines)

    def product(self, other):
        n1, n2 = self.n, other.n
        z1, z2 = (0,) * n1, (0,) * n2
        if "h" in self.__dict__ and "h" in other.__dict__ or "v" not in self.__dict__:
            a1, e1 = self.h
            a2, e2 = other.h
            return PolyCone.from_h(n1 + n2,
                                   [a + z2 for a in a1] + [z1 + a for a in a2],
                                   [e + z2 for e in e1] + [z1 + e for e in e2])
        r1, l1 = self.v
        r2, l2 = other.v
        return PolyCone.from_v(n1 + n2,
                               [r + z2 for r in r1] + [z1 + r for r in r2],
                               [l + z2 for l in l1] + [z1 + l for l in l2])

    def preimage(self, mat, ncols):
        """{x : mat @ x in self} for an integer/rational matrix with ncols columns."""
        ineqs, eqs = self.h

        def pull(a):
            return tuple(sum(Fraction(mat[i][j]) * a[i] for i in range(len(mat))) for j in range(ncols))

        return PolyCone.from_h(ncols, [pull(a) for a in ineqs], [pull(e) for e in eqs])

    def image(self, mat):
        """{mat @ x : x in self}."""
        m = len(mat)
        rays, lines = self.v
        return PolyCone.from_v(m, [linalg.matvec(mat, r) for r in rays],
                               [linalg.matvec(mat, l) for l in lines])

    def recession_ray(self, h, q, mode):
        """Nonzero d in the cone with <h,d> = 0 and <q,d> {<=, <, =} 0."""
        ineqs, eqs = self.h
        eqs = list(eqs) + [h]
        if mode == "eq":
            eqs.append(q)
        else:
            ineqs = list(ineqs) + [tuple(-a for a in q)]
        sub = PolyCone.from_h(self.n, ineqs, eqs)
        cands = list(sub.rays)
        for l in sub.lines:
            cands += [l, tuple(-a for a in l)]
        for d in sorted(cands):
            if mode == "lt" and linalg.dot(q, d) >= 0:
                continue
            return tuple(Fraction(a) for a in d)
        return None
