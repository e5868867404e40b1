"""Exact arithmetic in biquadratic quartic fields ``Q[x]/(x^4 - 2a x^2 + b)``.

Elements are plain 4-tuples of :class:`~fractions.Fraction` holding the
coefficients ``(k, l, m, n)`` of ``k x^3 + l x^2 + m x + n``.  Tuples keep
elements hashable and give the lexicographic order used everywhere for
deterministic output.

The real roots are ordered ``x1 > x2 > x3 > x4`` with ``x1 = sqrt(a + sqrt d)``,
``x2 = sqrt(a - sqrt d)``, ``x3 = -x2`` and ``x4 = -x1``; the i-th conjugate
of an element is its value at ``x_i``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import isqrt

import numpy as np

from . import _exact as ex

ONE = (Fraction(0), Fraction(0), Fraction(0), Fraction(1))
X = (Fraction(0), Fraction(0), Fraction(1), Fraction(0))

# x_i^2 = a + _SQRT_SIGN[i] * sqrt(d); x_i has sign _ROOT_SIGN[i]
_SQRT_SIGN = (1, -1, -1, 1)
_ROOT_SIGN = (1, 1, -1, -1)


def element(*coeffs) -> tuple:
    """Build a field element from ``k, l, m, n`` (ints, Fractions or "p/q")."""
    if len(coeffs) == 1:
        coeffs = tuple(coeffs[0])
    if len(coeffs) != 4:
        raise ValueError("a field element has exactly four coefficients")
    return ex.fvec(coeffs)


def format_element(v) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


class GaloisType(enum.Enum):
    REDUCIBLE = "reducible"
    NOT_TOTALLY_REAL = "not_totally_real"
    NON_GALOIS = "non_galois"
    CYCLIC = "cyclic"
    KLEIN = "klein"


@dataclass(frozen=True)
class Classification:
    kind: GaloisType
    c: Fraction | None = None

    @property
    def is_galois(self) -> bool:
        return self.kind in (GaloisType.CYCLIC, GaloisType.KLEIN)

    def __str__(self):
        if self.c is None:
            return self.kind.value
        return f"{self.kind.value}(c={self.c})"


@dataclass(frozen=True)
class FieldParams:
    """Parameters of ``x^4 - 2a x^2 + b`` with ``two_a = 2a`` and ``b`` integers."""

    two_a: int
    b: int

    def __post_init__(self):
        if int(self.two_a) != self.two_a or int(self.b) != self.b:
            raise ValueError("2a and b must be integers")
        if self.two_a < 1 or self.b < 1:
            raise ValueError("2a and b must be positive")

    @property
    def a(self) -> Fraction:
        return Fraction(self.two_a, 2)

    @property
    def d(self) -> Fraction:
        return self.a * self.a - self.b

    def poly(self, t):
        """Evaluate ``t^4 - 2a t^2 + b``; works for Fractions and floats."""
        t2 = t * t
        return t2 * t2 - self.two_a * t2 + self.b

    def __str__(self):
        return f"x^4 - {self.two_a}x^2 + {self.b}"


def is_reducible(params: FieldParams) -> bool:
    """Complete case analysis for even quartics over Q.

    An even quartic factors iff it splits as ``(x^2 + q)(x^2 + q')`` (iff the
    discriminant ``d`` of the quadratic in ``x^2`` is a square) or as
    ``(x^2 + p x + q)(x^2 - p x + q)`` with ``q^2 = b`` and
    ``p^2 = 2a + 2q``.  A rational root r forces the factor ``x^2 - r^2``,
    which the first shape already covers.
    """
    a, b = params.a, Fraction(params.b)
    if ex.is_rational_square(params.d):
        return True
    if ex.is_rational_square(b):
        s = ex.rational_sqrt(b)
        for q in (s, -s):
            p2 = 2 * a + 2 * q
            if p2 > 0 and ex.is_rational_square(p2):
                return True
    return False


def classify_biquadratic(params: FieldParams) -> Classification:
    """Galois type of the splitting field of ``x^4 - 2a x^2 + b``.

    Reducibility is decided first, so a polynomial with both ``b`` and ``b d``
    squares (which forces ``d`` to be a square) comes back as reducible.
    """
    if is_reducible(params):
        return Classification(GaloisType.REDUCIBLE)
    d = params.d
    if d <= 0:
        return Classification(GaloisType.NOT_TOTALLY_REAL)
    b = Fraction(params.b)
    if ex.is_rational_square(b * d):
        return Classification(GaloisType.CYCLIC, ex.rational_sqrt(b * d))
    if ex.is_rational_square(b):
        return Classification(GaloisType.KLEIN, ex.rational_sqrt(b))
    return Classification(GaloisType.NON_GALOIS)


class FieldError(ValueError):
    """Operation requires a totally real Galois field."""


@dataclass(frozen=True)
class RootSystem:
    """Disjoint rational intervals ``(lo, hi)`` around ``x1 > x2 > x3 > x4``."""

    intervals: tuple
    precision: Fraction

    def midpoints(self):
        return tuple((lo + hi) / 2 for lo, hi in self.intervals)

    def index_of(self, lo, hi):
        """Index of the root interval containing ``[lo, hi]``, else None."""
        hits = [i for i, (rlo, rhi) in enumerate(self.intervals) if rlo <= lo and hi <= rhi]
        return hits[0] if len(hits) == 1 else None


def _rational_below_sqrt(q: Fraction, scale: int) -> Fraction:
    return Fraction(isqrt(q.numerator * scale * scale // q.denominator), scale)


def isolate_roots(params: FieldParams, precision=Fraction(1, 2**64)) -> RootSystem:
    """Bisection isolation of the four real roots to width <= precision."""
    precision = ex.frac(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    if params.d <= 0:
        raise FieldError(f"{params} is not totally real")
    a = params.a
    p = params.poly
    # p(sqrt a) = -d < 0, so a rational r close to sqrt(a) separates x2 < r < x1
    scale = 2
    r = _rational_below_sqrt(a, scale)
    while p(r) >= 0 or r <= 0:
        scale *= 2
        r = _rational_below_sqrt(a, scale)
    hi = Fraction(isqrt(int(2 * a) + 1) + 2)
    while p(hi) <= 0:
        hi *= 2

    def bisect(lo, hi):
        slo = p(lo) > 0
        while hi - lo > precision:
            mid = (lo + hi) / 2
            pm = p(mid)
            if pm == 0:
                return mid, mid
            if (pm > 0) == slo:
                lo = mid
            else:
                hi = mid
        return lo, hi

    x1 = bisect(r, hi)
    x2 = bisect(Fraction(0), r)
    intervals = (x1, x2, (-x2[1], -x2[0]), (-x1[1], -x1[0]))
    return RootSystem(intervals, precision)


def _interval_eval(v, lo, hi):
    """Enclosure of ``v(t)`` over ``t in [lo, hi]`` with ``lo > 0`` or ``hi < 0``."""
    k, l, m, n = v
    pw = {1: (lo, hi)}
    pw[2] = (min(lo * lo, hi * hi), max(lo * lo, hi * hi))
    pw[3] = (lo**3, hi**3)
    out_lo = out_hi = n
    for coef, power in ((k, 3), (l, 2), (m, 1)):
        plo, phi = pw[power]
        a, b = coef * plo, coef * phi
        out_lo += min(a, b)
        out_hi += max(a, b)
    return out_lo, out_hi


@dataclass(frozen=True)
class Automorphism:
    """A field automorphism as a 4x4 rational matrix on ``(k, l, m, n)`` columns."""

    matrix: tuple
    order: int
    image_of_x: tuple

    def apply(self, v):
        return ex.matvec(self.matrix, ex.fvec(v))

    def __call__(self, v):
        return self.apply(v)


class BiquadraticField:
    """The field ``K = Q[x]/(x^4 - 2a x^2 + b)`` with exact element arithmetic.

    Parameters
    ----------
    two_a, b : int
        Positive integers giving the defining polynomial ``x^4 - two_a x^2 + b``.

    Notes
    -----
    Construction never fails; operations that need a totally real Galois
    field raise :class:`FieldError` otherwise.
    """

    def __init__(self, two_a: int, b: int):
        self.params = FieldParams(int(two_a), int(b))
        self.classification = classify_biquadratic(self.params)
        self.a = self.params.a
        self.d = self.params.d

    def __repr__(self):
        return f"BiquadraticField(two_a={self.params.two_a}, b={self.params.b})"

    def __eq__(self, other):
        return isinstance(other, BiquadraticField) and self.params == other.params

    def __hash__(self):
        return hash(self.params)

    # ring operations -----------------------------------------------------

    def mul(self, u, v):
        # ascending coefficient lists
        pu = (u[3], u[2], u[1], u[0])
        pv = (v[3], v[2], v[1], v[0])
        prod = [Fraction(0)] * 7
        for i, x in enumerate(pu):
            if x:
                for j, y in enumerate(pv):
                    if y:
                        prod[i + j] += x * y
        two_a, b = self.params.two_a, self.params.b
        for deg in range(6, 3, -1):
            t = prod[deg]
            if t:
                prod[deg - 2] += two_a * t
                prod[deg - 4] -= b * t
                prod[deg] = Fraction(0)
        return (prod[3], prod[2], prod[1], prod[0])

    def add(self, u, v):
        return tuple(x + y for x, y in zip(u, v))

    def sub(self, u, v):
        return tuple(x - y for x, y in zip(u, v))

    def scale(self, s, v):
        s = ex.frac(s)
        return tuple(s * x for x in v)

    def power(self, v, e: int):
        if e < 0:
            return self.power(self.inv(v), -e)
        result, base = ONE, ex.fvec(v)
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def mult_matrix(self, v):
        """Matrix of ``w -> v*w`` acting on coefficient columns ``(k, l, m, n)``."""
        basis = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))
        cols = [self.mul(v, ex.fvec(e)) for e in basis]
        return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))

    def norm(self, v) -> Fraction:
        return ex.det(self.mult_matrix(v))

    def trace(self, v) -> Fraction:
        m = self.mult_matrix(v)
        return sum((m[i][i] for i in range(4)), Fraction(0))

    def norm_trace(self, v):
        m = self.mult_matrix(v)
        return ex.det(m), sum((m[i][i] for i in range(4)), Fraction(0))

    def inv(self, v):
        if all(x == 0 for x in v) or self.norm(v) == 0:
            raise ZeroDivisionError(f"{format_element(v)} is not invertible")
        return ex.solve(self.mult_matrix(v), ONE)

    # real embeddings -----------------------------------------------------

    def _require_totally_real(self):
        if self.classification.kind in (GaloisType.REDUCIBLE, GaloisType.NOT_TOTALLY_REAL):
            raise FieldError(f"{self.params} does not define a totally real quartic field")

    def roots(self, precision=Fraction(1, 2**64)) -> RootSystem:
        self._require_totally_real()
        return isolate_roots(self.params, precision)

    @cached_property
    def root_values(self) -> np.ndarray:
        self._require_totally_real()
        a, sd = float(self.a), float(self.d) ** 0.5
        x1, x2 = (a + sd) ** 0.5, (a - sd) ** 0.5
        return np.array([x1, x2, -x2, -x1])

    @cached_property
    def vandermonde(self) -> np.ndarray:
        """Float matrix E with ``E @ (k, l, m, n)`` = the four conjugates."""
        r = self.root_values
        return np.stack([r**3, r**2, r, np.ones(4)], axis=1)

    def conjugates(self, v) -> np.ndarray:
        return self.vandermonde @ np.array([float(x) for x in v])

    def conjugates_mp(self, v, prec: int = 128):
        """Conjugates as mpmath numbers at ``prec`` bits."""
        import mpmath

        self._require_totally_real()
        with mpmath.workprec(prec + 20):
            a = mpmath.mpf(self.a.numerator) / self.a.denominator
            d = mpmath.mpf(self.d.numerator) / self.d.denominator
            sd = mpmath.sqrt(d)
            x1, x2 = mpmath.sqrt(a + sd), mpmath.sqrt(a - sd)
            coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in v]
            out = []
            for r in (x1, x2, -x2, -x1):
                k, l, m, n = coeffs
                out.append(((k * r + l) * r + m) * r + n)
        return out

    def conjugate_sign(self, v, i: int) -> int:
        """Exact sign of ``v(x_i)`` via arithmetic in ``Q(sqrt d)``.

        ``v(x) = x P + Q`` with ``P = k x^2 + m`` and ``Q = l x^2 + n`` both
        in ``Q(sqrt d)`` once ``x^2 = a +/- sqrt d`` is substituted.
        """
        self._require_totally_real()
        k, l, m, n = v
        a, d = self.a, self.d
        s = _SQRT_SIGN[i]
        eps = _ROOT_SIGN[i]
        p0, p1 = k * a + m, k * s
        q0, q1 = l * a + n, l * s
        sp = eps * ex.sign_qsqrt(p0, p1, d)
        sq = ex.sign_qsqrt(q0, q1, d)
        if sp == 0:
            return sq
        if sq == 0 or sp == sq:
            return sp
        # opposite signs: compare x^2 P^2 with Q^2
        pp0, pp1 = p0 * p0 + p1 * p1 * d, 2 * p0 * p1
        xp0, xp1 = a * pp0 + s * pp1 * d, a * pp1 + s * pp0
        qq0, qq1 = q0 * q0 + q1 * q1 * d, 2 * q0 * q1
        cmp = ex.sign_qsqrt(xp0 - qq0, xp1 - qq1, d)
        if cmp > 0:
            return sp
        if cmp < 0:
            return sq
        return 0

    def sign_vector(self, v) -> tuple:
        """Exact signs (+1, 0, -1) of the four conjugates of ``v``."""
        v = ex.fvec(v)
        return tuple(self.conjugate_sign(v, i) for i in range(4))

    def is_strictly_positive(self, v) -> bool:
        v = ex.fvec(v)
        return all(self.conjugate_sign(v, i) > 0 for i in range(4))

    # Galois structure -----------------------------------------------------

    def _require_galois(self):
        if not self.classification.is_galois:
            raise FieldError(f"{self.params} is {self.classification}; a Galois field is required")

    def automorphism_from_image(self, w) -> Automorphism:
        """Automorphism determined by ``x -> w``; raises if w is not a root."""
        w = ex.fvec(w)
        w2 = self.mul(w, w)
        w3 = self.mul(w2, w)
        w4 = self.mul(w3, w)
        if self.sub(self.add(w4, self.scale(self.params.b, ONE)), self.scale(self.params.two_a, w2)) != (0, 0, 0, 0):
            raise FieldError(f"{format_element(w)} is not a root of {self.params}")
        cols = (w3, w2, w, ONE)
        matrix = tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))
        ident = tuple(tuple(Fraction(int(i == j)) for j in range(4)) for i in range(4))
        power, order = matrix, 1
        while power != ident:
            power = ex.matmul(matrix, power)
            order += 1
            if order > 4:
                raise FieldError("automorphism order exceeds 4")
        return Automorphism(matrix, order, w)

    def generator_automorphisms(self) -> list:
        """Generators of the Galois group.

        The sign of ``c`` is fixed to ``-|c|``, which reproduces the printed
        generators (``x -> x^3 - 3x`` for ``x^4 - 4x^2 + 2`` etc.).  For cyclic
        fields this is the generator sending x1 to x2.
        """
        self._require_galois()
        a, d = self.a, self.d
        c = -self.classification.c
        if self.classification.kind is GaloisType.CYCLIC:
            k, l = -a / c, (a * a + d) / c
            return [self.automorphism_from_image((k, Fraction(0), l, Fraction(0)))]
        k, l = -1 / c, 2 * a / c
        sigma = self.automorphism_from_image((k, Fraction(0), l, Fraction(0)))
        neg = self.automorphism_from_image((Fraction(0), Fraction(0), Fraction(-1), Fraction(0)))
        return [sigma, neg]

    def galois_group(self) -> list:
        """All four automorphisms, identity first."""
        gens = self.generator_automorphisms()
        group = [self.automorphism_from_image(X)]
        seen = {X}
        frontier = list(group)
        while frontier:
            nxt = []
            for g in frontier:
                for h in gens:
                    img = h.apply(g.image_of_x)
                    if img not in seen:
                        seen.add(img)
                        auto = self.automorphism_from_image(img)
                        group.append(auto)
                        nxt.append(auto)
            frontier = nxt
        return group

    def root_permutation(self, sigma: Automorphism, roots: RootSystem | None = None) -> tuple:
        """Index j with ``sigma(x)(x_i) = x_j`` for each i, by interval images."""
        targets = roots if roots is not None else self.roots(Fraction(1, 2**10))
        precision = targets.precision / 2**20
        for _ in range(6):
            fine = self.roots(precision)
            perm = []
            for lo, hi in fine.intervals:
                ilo, ihi = _interval_eval(sigma.image_of_x, lo, hi)
                perm.append(targets.index_of(ilo, ihi))
            if None not in perm and len(set(perm)) == 4:
                return tuple(perm)
            precision /= 2**20
        raise FieldError("could not certify the root permutation")

    @cached_property
    def trace_form(self):
        """``T[i][j] = Tr(b_i b_j)`` for the power basis ``(x^3, x^2, x, 1)``."""
        basis = [ex.fvec(e) for e in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))]
        return tuple(tuple(self.trace(self.mul(bi, bj)) for bj in basis) for bi in basis)

    def dual_element(self, phi):
        """The element ``lam`` with ``phi(v) = Tr(lam * v)`` for every v.

        Since ``Tr(lam v) = sum_i lam(x_i) v(x_i)``, the linear functional phi
        is nonnegative (positive) on the closed cone of totally positive
        elements exactly when lam is totally nonnegative (positive).
        """
        self._require_galois()
        return ex.solve(self.trace_form, ex.fvec(phi))
