"""Double description conversion for rational polyhedral cones.

``hrep_to_vrep`` turns {x : A x >= 0, E x = 0} into extreme rays of its pointed
part plus a basis of its lineality space.  Everything runs on integer vectors;
new rays are formed as integer combinations and divided by their gcd, so there
is no rational growth.  Redundant rays are kept out with the combinatorial
adjacency test (valid because the working cone is always pointed).
"""

from fractions import Fraction
from math import gcd

from . import linalg

MAX_DIM = 12
MAX_ITEMS = 64


def _prim(v):
    g = 0
    for a in v:
        g = gcd(g, a)
    if g > 1:
        return tuple(a // g for a in v)
    return tuple(v)


def _idot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _clean(vectors, n):
    out = []
    seen = set()
    for v in vectors:
        p = linalg.primitive(v)
        if len(p) != n:
            raise ValueError("dimension mismatch in double description input")
        if any(p) and p not in seen:
            seen.add(p)
            out.append(p)
    return out


def hrep_to_vrep(ineqs, eqs, n):
    """Return (rays, lines) with rays extreme and lines a lineality basis."""
    ineqs = _clean(ineqs, n)
    eqs = _clean(eqs, n)
    lines = linalg.nullspace(ineqs + eqs, n)
    # working subspace: {E x = 0} intersected with the complement of the lineality space
    work = linalg.nullspace(eqs + lines, n)
    k = len(work)
    if k == 0:
        return [], lines
    proj = []
    for a in ineqs:
        pa = _prim([_idot(a, b) for b in work])
        if any(pa):
            proj.append(pa)
    seen = set()
    rows = []
    for pa in proj:
        if pa not in seen:
            seen.add(pa)
            rows.append(pa)
    start = linalg.independent_subset(rows, k)
    if len(start) != k:
        raise AssertionError("restricted cone is not pointed")
    inv = linalg.inverse([rows[i] for i in start])
    # column j of the inverse is the ray tight at every starting row but j
    rays = []
    for j in range(k):
        col = linalg.primitive([inv[i][j] for i in range(k)])
        mask = 0
        for pos, _ in enumerate(start):
            if pos != j:
                mask |= 1 << pos
        rays.append((col, mask))
    order = start + [i for i in range(len(rows)) if i not in start]
    for step in range(k, len(order)):
        a = rows[order[step]]
        bit = 1 << step
        pos, neg, nxt = [], [], []
        for r, z in rays:
            v = _idot(a, r)
            if v > 0:
                pos.append((r, z, v))
                nxt.append((r, z))
            elif v < 0:
                neg.append((r, z, v))
            else:
                nxt.append((r, z | bit))
        if not neg:
            rays = nxt
            continue
        for p, zp, vp in pos:
            for m, zm, vm in neg:
                common = zp & zm
                if common.bit_count() < k - 2:
                    continue
                adjacent = True
                for r, zr in rays:
                    if r is p or r is m:
                        continue
                    if common & ~zr == 0:
                        adjacent = False
                        break
                if adjacent:
                    new = _prim([vp * x - vm * y for x, y in zip(m, p)])
                    nxt.append((new, common | bit))
        rays = nxt
    out = []
    for z, _ in rays:
        x = [0] * n
        for c, b in zip(z, work):
            if c:
                for i, bi in enumerate(b):
                    x[i] += c * bi
        out.append(_prim(x))
    out.sort()
    return out, lines


def vrep_to_hrep(rays, lines, n):
    """Facet normals and equality normals of cone(rays) + span(lines)."""
    return hrep_to_vrep(rays, lines, n)


def as_fractions(vectors):
    return [tuple(Fraction(a) for a in v) for v in vectors]
