"""Exact rational linear algebra on tuples of Fractions and integers.

Everything here works on plain Python sequences so that results are exact and
hashable.  Rows are sequences of numbers; matrices are lists of rows.
"""

from fractions import Fraction
from math import gcd


def frac_vec(v):
    return tuple(Fraction(x) for x in v)


def dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def sub(x, y):
    return tuple(a - b for a, b in zip(x, y))


def add(x, y):
    return tuple(a + b for a, b in zip(x, y))


def scale(s, x):
    return tuple(s * a for a in x)


def is_zero(v):
    return all(a == 0 for a in v)


def primitive(v):
    """Scale a rational vector by a positive factor to coprime integers."""
    fr = [Fraction(a) for a in v]
    lcm = 1
    for a in fr:
        lcm = lcm * a.denominator // gcd(lcm, a.denominator)
    ints = [int(a * lcm) for a in fr]
    g = 0
    for a in ints:
        g = gcd(g, a)
    if g > 1:
        ints = [a // g for a in ints]
    return tuple(ints)


def rref(rows, ncols):
    """Reduced row echelon form.  Returns (rows, pivot_columns)."""
    m = [[Fraction(a) for a in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [a * inv for a in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(rows, ncols):
    return len(rref(rows, ncols)[1])


def nullspace(rows, ncols):
    """Basis (as primitive integer vectors) of {x : row . x = 0 for all rows}."""
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(primitive(x))
    return basis


def row_basis(rows, ncols):
    """Primitive integer basis of the row space (taken from the RREF)."""
    red, _ = rref(rows, ncols)
    return [primitive(r) for r in red]


def independent_subset(rows, ncols):
    """Indices of a maximal linearly independent subset, chosen greedily in order."""
    chosen = []
    basis = []  # reduced rows with their pivot column
    for idx, r in enumerate(rows):
        v = [Fraction(a) for a in r]
        for b, pc in basis:
            if v[pc] != 0:
                f = v[pc]
                v = [a - f * c for a, c in zip(v, b)]
        pc = next((c for c in range(ncols) if v[c] != 0), None)
        if pc is None:
            continue
        inv = 1 / v[pc]
        v = [a * inv for a in v]
        new_basis = []
        for b, bpc in basis:
            if b[pc] != 0:
                f = b[pc]
                b = [a - f * c for a, c in zip(b, v)]
            new_basis.append((b, bpc))
        basis = new_basis + [(v, pc)]
        chosen.append(idx)
    return chosen


def solve_square(mat, rhs):
    """Solve mat @ x = rhs exactly for an invertible square matrix."""
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(mat, rhs)]
    red, pivots = rref(aug, n + 1)
    if pivots != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return tuple(row[n] for row in red)


def inverse(mat):
    n = len(mat)
    aug = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(mat)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def project(basis, x):
    """Orthogonal projection of x onto span(basis) via the normal equations."""
    if not basis:
        return tuple(Fraction(0) for _ in x)
    gram = [[dot(a, b) for b in basis] for a in basis]
    coef = solve_square(gram, [dot(a, x) for a in basis])
    out = [Fraction(0)] * len(x)
    for c, b in zip(coef, basis):
        for i, bi in enumerate(b):
            out[i] += c * bi
    return tuple(out)


def projector(basis, n):
    """Matrix of the orthogonal projector onto span(basis) (n x n, exact)."""
    cols = [project(basis, tuple(Fraction(int(i == j)) for i in range(n))) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def matvec(mat, x):
    return tuple(dot(row, x) for row in mat)


def transpose(mat, ncols=None):
    if not mat:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*mat)]


def simplest_between(lo, hi):
    """Rational with smallest denominator in the closed interval [lo, hi]."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_between(-hi, -lo)
    fl = lo.numerator // lo.denominator
    if fl == lo:
        return Fraction(fl)
    if fl + 1 <= hi:
        return Fraction(fl + 1)
    # lo and hi share the integer part fl; recurse on reciprocals of the fractional parts
    rest = simplest_between(1 / (hi - fl), 1 / (lo - fl))
    return fl + 1 / rest
