"""Exact linear algebra over integers and fractions.

Everything here is tuned for the tiny dense systems this package needs
(dimension at most 5). Determinants of integer matrices are expanded
explicitly so the hull engine's hot loops stay cheap.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt

Vec = tuple  # length-n tuple of Fraction (or int in scaled contexts)


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def vsub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def vadd(a, b):
    return tuple(x + y for x, y in zip(a, b))


def vscale(a, s):
    return tuple(x * s for x in a)


def vneg(a):
    return tuple(-x for x in a)


def det(rows) -> int | Fraction:
    """Determinant of a small square matrix (size 1 to 5), exact."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    if n == 3:
        (a, b, c), (d, e, f), (g, h, i) = rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    if n == 4:
        r0, r1, r2, r3 = rows
        m = (r1, r2, r3)
        total = 0
        sign = 1
        for col in range(4):
            sub = [tuple(r[c] for c in range(4) if c != col) for r in m]
            total += sign * r0[col] * det(sub)
            sign = -sign
        return total
    # general cofactor fallback, only ever hit for n=5
    total = 0
    sign = 1
    rest = rows[1:]
    for col in range(n):
        sub = [tuple(r[c] for c in range(n) if c != col) for r in rest]
        total += sign * rows[0][col] * det(sub)
        sign = -sign
    return total


def cross_rows(rows):
    """Normal vector N of the hyperplane spanned by d-1 row vectors in R^d.

    Satisfies det(rows + [y]) == dot(N, y) for every row y. Returns the
    zero vector when the rows are linearly dependent.
    """
    d = len(rows) + 1
    out = []
    for k in range(d):
        sub = [tuple(r[c] for c in range(d) if c != k) for r in rows]
        minor = det(sub) if sub else 1
        out.append(minor if (d - 1 + k) % 2 == 0 else -minor)
    return tuple(out)


def gcd_vec(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def primitive(v):
    """Scale an integer vector to coprime coordinates, keeping direction."""
    g = gcd_vec(v)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def primitive_from_rational(v):
    """Primitive integer vector with the same direction as a rational vector."""
    denoms = [Fraction(x).denominator for x in v]
    m = 1
    for d in denoms:
        m = m * d // gcd(m, d)
    ints = [int(x * m) for x in v]
    return primitive(ints)


def rank(rows) -> int:
    """Exact rank via fraction-free Gaussian elimination."""
    mat = [list(map(Fraction, r)) for r in rows]
    if not mat:
        return 0
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c] / mat[r][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        r += 1
        if r == len(mat):
            break
    return r


def rref(rows):
    """Reduced row echelon form. Returns (pivot column indices, rows)."""
    mat = [list(map(Fraction, r)) for r in rows]
    pivots: list[int] = []
    if not mat:
        return pivots, []
    ncols = len(mat[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c]
        mat[r] = [a / inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return pivots, [tuple(row) for row in mat[: len(pivots)]]


def solve(a_rows, b):
    """Solve a square rational system exactly; None when singular."""
    n = len(a_rows)
    mat = [list(map(Fraction, row)) + [Fraction(b[i])] for i, row in enumerate(a_rows)]
    for c in range(n):
        piv = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if piv is None:
            return None
        mat[c], mat[piv] = mat[piv], mat[c]
        inv = mat[c][c]
        mat[c] = [x / inv for x in mat[c]]
        for i in range(n):
            if i != c and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return tuple(mat[i][n] for i in range(n))


def lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def common_denominator(points) -> int:
    m = 1
    for p in points:
        for x in p:
            m = lcm(m, Fraction(x).denominator)
    return m


def scale_to_int(points):
    """Clear denominators: returns (integer point tuples, scale s) with p_int = s*p."""
    s = common_denominator(points)
    return [tuple(int(x * s) for x in p) for p in points], s


def gram_det(vectors) -> Fraction:
    g = [[Fraction(dot(a, b)) for b in vectors] for a in vectors]
    if not g:
        return Fraction(1)
    return Fraction(det(g))


def perfect_nth_root(x: Fraction, k: int):
    """Exact k-th root of a nonnegative rational, or None if irrational."""
    if x < 0:
        return None
    if k == 1:
        return x
    num, den = x.numerator, x.denominator

    def iroot(m: int) -> int | None:
        if m == 0:
            return 0
        if k == 2:
            r = isqrt(m)
            return r if r * r == m else None
        # integer Newton for the floor k-th root; exact at any size
        r = 1 << -(-m.bit_length() // k)
        while True:
            y = ((k - 1) * r + m // r ** (k - 1)) // k
            if y >= r:
                break
            r = y
        return r if r**k == m else None

    rn, rd = iroot(num), iroot(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)
