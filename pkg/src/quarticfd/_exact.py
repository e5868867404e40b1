"""Small exact linear algebra over the rationals.

Matrices are tuples of row tuples of :class:`fractions.Fraction`.  Sizes here
never exceed 4x5, so plain Gauss-Jordan elimination is the right tool.
"""

from fractions import Fraction
from math import gcd, isqrt, lcm


def frac(x):
    """Coerce ints, strings like ``"3/4"`` and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted in exact arithmetic")
    return Fraction(x)


def fvec(xs):
    return tuple(frac(x) for x in xs)


def fmat(rows):
    return tuple(fvec(r) for r in rows)


def det(m):
    a = [list(r) for r in m]
    n = len(a)
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result *= p
        for r in range(col + 1, n):
            f = a[r][col] / p
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def solve(m, rhs):
    """Solve ``m @ x = rhs`` exactly; raises ZeroDivisionError if singular."""
    n = len(m)
    a = [list(m[i]) + [frac(rhs[i])] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[i][n] for i in range(n))


def inverse(m):
    n = len(m)
    cols = [solve(m, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def matmul(a, b):
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(r, c)), Fraction(0)) for c in bt) for r in a)


def matvec(m, v):
    return tuple(sum((x * y for x, y in zip(r, v)), Fraction(0)) for r in m)


def vecmat(v, m):
    return matvec(transpose(m), v)


def dot(u, v):
    return sum((x * y for x, y in zip(u, v)), Fraction(0))


def rank(rows):
    a = [list(r) for r in rows]
    if not a:
        return 0
    n_cols = len(a[0])
    rk = 0
    for col in range(n_cols):
        piv = next((r for r in range(rk, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        for r in range(rk + 1, len(a)):
            if a[r][col] != 0:
                f = a[r][col] / a[rk][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rk])]
        rk += 1
    return rk


def nullspace(rows, n_cols):
    """Basis of ``{x : rows @ x = 0}`` as Fraction tuples (reduced echelon)."""
    a = [list(fvec(r)) for r in rows]
    pivots = []
    rk = 0
    for col in range(n_cols):
        piv = next((r for r in range(rk, len(a)) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        p = a[rk][col]
        a[rk] = [x / p for x in a[rk]]
        for r in range(len(a)):
            if r != rk and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[rk])]
        pivots.append(col)
        rk += 1
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        x = [Fraction(0)] * n_cols
        x[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            x[pc] = -a[i][free]
        basis.append(tuple(x))
    return basis


def is_rational_square(q):
    q = frac(q)
    if q < 0:
        return False
    p, r = q.numerator, q.denominator
    return isqrt(p) ** 2 == p and isqrt(r) ** 2 == r


def rational_sqrt(q):
    q = frac(q)
    return Fraction(isqrt(q.numerator), isqrt(q.denominator))


def primitive_integer(vec):
    """Scale a rational vector to coprime integers, keeping its direction."""
    vec = fvec(vec)
    den = lcm(*(x.denominator for x in vec)) if vec else 1
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


def integer_row_basis(rows):
    """Row-style Hermite reduction of an integer matrix with transform.

    Returns ``(basis, transform)`` where ``basis`` lists the nonzero rows of
    the echelon form and ``transform`` is the unimodular matrix (as integer
    row lists) with ``transform @ rows`` equal to echelon form, nonzero rows
    first.
    """
    a = [list(map(int, r)) for r in rows]
    m = len(a)
    n = len(a[0]) if a else 0
    t = [[int(i == j) for j in range(m)] for i in range(m)]
    rk = 0
    for col in range(n):
        while True:
            nz = [r for r in range(rk, m) if a[r][col] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda r: abs(a[r][col]))
            a[rk], a[piv] = a[piv], a[rk]
            t[rk], t[piv] = t[piv], t[rk]
            done = True
            for r in range(rk + 1, m):
                if a[r][col]:
                    q = a[r][col] // a[rk][col]
                    a[r] = [x - q * y for x, y in zip(a[r], a[rk])]
                    t[r] = [x - q * y for x, y in zip(t[r], t[rk])]
                    if a[r][col]:
                        done = False
            if done:
                break
        if rk < m and a[rk][col] != 0:
            if a[rk][col] < 0:
                a[rk] = [-x for x in a[rk]]
                t[rk] = [-x for x in t[rk]]
            rk += 1
    return [tuple(r) for r in a[:rk]], [tuple(r) for r in t]


def sign_qsqrt(r, t, d):
    """Exact sign of ``r + t*sqrt(d)`` for rationals r, t and d >= 0."""
    sr = (r > 0) - (r < 0)
    st = (t > 0) - (t < 0)
    if d == 0 or st == 0:
        return sr
    if sr == 0 or sr == st:
        return st
    diff = r * r - t * t * d
    s = (diff > 0) - (diff < 0)
    return sr * s
