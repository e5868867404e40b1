"""Units, the totally positive unit group and canonical forms modulo its action."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import _exact as ex
from .field import ONE, BiquadraticField
from .lattice import IntegralLattice, embedding_matrix, lattice_points_in_region

log = logging.getLogger(__name__)

DEFAULT_RADIUS = 60


class InsufficientRankError(ValueError):
    pass


def is_unit(v, lat: IntegralLattice, field: BiquadraticField) -> bool:
    v = ex.fvec(v)
    if not lat.contains(v):
        return False
    if abs(field.norm(v)) != 1:
        return False
    return lat.contains(field.inv(v))


def search_units(lat: IntegralLattice, field: BiquadraticField, radius=DEFAULT_RADIUS, orthants="all") -> list:
    """Units with every conjugate of absolute value in ``[1/radius, radius]``.

    Each sign orthant of conjugate space is scanned as a box; ``orthants``
    may be ``"all"`` or ``"positive"`` (totally positive units only).
    """
    if radius < 1:
        raise ValueError("radius must be at least 1")
    M = embedding_matrix(lat, field)
    R = float(radius)
    if orthants == "positive":
        patterns = [(1, 1, 1, 1)]
    else:
        patterns = list(itertools.product((1, -1), repeat=4))
    found = set()
    for signs in patterns:
        s = np.array(signs, dtype=float)
        A = np.vstack([-np.diag(s), np.diag(s)])
        rhs = np.concatenate([np.zeros(4), np.full(4, R)])
        corners = np.array(list(itertools.product((0.0, R), repeat=4))) * s
        pts, _ = lattice_points_in_region(M, A, rhs, corners)
        if not len(pts):
            continue
        y = pts @ M
        ay = np.abs(y)
        ok = (ay >= 1 / R * (1 - 1e-9)).all(axis=1) & (ay <= R * (1 + 1e-9)).all(axis=1)
        ok &= (np.sign(y) == s).all(axis=1)
        ok &= np.abs(np.prod(ay, axis=1) - 1) < 1e-6
        for z in pts[ok]:
            v = lat.from_coordinates(z)
            if is_unit(v, lat, field):
                found.add(v)
    return sorted(found)


@dataclass(frozen=True)
class LogVector:
    values: tuple
    error: float

    def as_array(self):
        return np.array([float(x) for x in self.values])


def log_embedding(u, field: BiquadraticField, precision: int = 128) -> LogVector:
    """``ln |u(x_i)|`` at ``precision`` bits with an absolute error bound."""
    import mpmath

    u = ex.fvec(u)
    if all(x == 0 for x in u):
        raise ValueError("log embedding of zero")
    conj = field.conjugates_mp(u, precision)
    with mpmath.workprec(precision):
        vals = tuple(mpmath.log(abs(c)) for c in conj)
    err = float(2.0 ** (-precision + 8) * (1 + max(abs(float(v)) for v in vals)))
    return LogVector(vals, err)


def _logs(units, field):
    return np.array([np.log(np.abs(field.conjugates(u))) for u in units])


@dataclass(eq=False)
class UnitGroup:
    """Free abelian group of rank 3 generated by totally positive units."""

    field: BiquadraticField
    generators: tuple
    logs: np.ndarray
    _cache: dict = dc_field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._pinv = np.linalg.pinv(self.logs)

    def element(self, exponents) -> tuple:
        key = tuple(int(e) for e in exponents)
        if key not in self._cache:
            v = ONE
            for g, e in zip(self.generators, key):
                if e:
                    v = self.field.mul(v, self.field.power(g, e))
            self._cache[key] = v
        return self._cache[key]

    def log_coordinates(self, logvec) -> np.ndarray:
        """Coordinates of a trace-zero log vector in the generator basis."""
        w = np.asarray(logvec, dtype=float)
        w = w - w.mean()
        return w @ self._pinv

    def exponents(self, u):
        """Exact exponent vector of a unit of the group, or None."""
        u = ex.fvec(u)
        c = self.log_coordinates(np.log(np.abs(self.field.conjugates(u))))
        e = tuple(int(round(x)) for x in c)
        if np.abs(c - np.array(e)).max() > 1e-6:
            return None
        return e if self.element(e) == u else None

    def contains(self, u) -> bool:
        return self.exponents(u) is not None

    def certified_rank(self) -> int:
        """Rank of the log lattice, certified by a 3x3 minor bounded away from 0."""
        minors = [abs(np.linalg.det(self.logs[:, list(cols)])) for cols in itertools.combinations(range(4), 3)]
        bound = 1e-9 * max(1.0, float(np.abs(self.logs).max())) ** 3
        return 3 if max(minors) > bound else int(np.linalg.matrix_rank(self.logs, tol=1e-9))


def _lll(gens, field, delta=0.75):
    """LLL reduction of the log vectors, carrying the units along exactly."""
    g = list(gens)
    b = [np.log(np.abs(field.conjugates(u))) for u in g]
    n = len(b)

    def gso():
        bs, mu = [], np.zeros((n, n))
        for i in range(n):
            v = b[i].copy()
            for j in range(i):
                mu[i, j] = b[i] @ bs[j] / (bs[j] @ bs[j])
                v = v - mu[i, j] * bs[j]
            bs.append(v)
        return bs, mu

    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            _, mu = gso()
            r = int(round(mu[k, j]))
            if r:
                b[k] = b[k] - r * b[j]
                g[k] = field.mul(g[k], field.power(g[j], -r))
        bs, mu = gso()
        if bs[k] @ bs[k] >= (delta - mu[k, k - 1] ** 2) * (bs[k - 1] @ bs[k - 1]):
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            g[k], g[k - 1] = g[k - 1], g[k]
            k = max(k - 1, 1)
    return g


def totally_positive_basis(units, field: BiquadraticField) -> UnitGroup:
    """A basis of the group generated by the totally positive members of ``units``.

    Units that are not totally positive contribute their squares.  The basis
    is built by integer row reduction of rationalized log coordinates, LLL
    reduced, and every input is checked to decompose exactly.
    """
    pool = set()
    for u in units:
        u = ex.fvec(u)
        if u == ONE:
            continue
        pool.add(u if field.is_strictly_positive(u) else field.mul(u, u))
    pool = sorted(pool, key=lambda u: (float(np.linalg.norm(_logs([u], field)[0])), u))
    if not pool:
        raise InsufficientRankError("no nontrivial totally positive units")

    gens = []
    for u in pool:
        cand = gens + [u]
        if np.linalg.matrix_rank(_logs(cand, field), tol=1e-8) == len(cand):
            gens = cand
        if len(gens) == 3:
            break
    if len(gens) < 3:
        raise InsufficientRankError(f"units span a group of rank {len(gens)} < 3; enlarge the search radius")

    for u in pool:
        L = _logs(gens, field)
        c = np.log(np.abs(field.conjugates(u))) @ np.linalg.pinv(L)
        q = [Fraction(float(x)).limit_denominator(10**6) for x in c]
        if all(x.denominator == 1 for x in q):
            continue
        den = 1
        for x in q:
            den = den * x.denominator // np.gcd(den, x.denominator)
        rows = [[den * int(i == j) for j in range(3)] for i in range(3)] + [[int(x * den) for x in q]]
        _, transform = ex.integer_row_basis(rows)
        olds = gens + [u]
        new = []
        for trow in transform[:3]:
            v = ONE
            for w, e in zip(olds, trow):
                if e:
                    v = field.mul(v, field.power(w, e))
            new.append(v)
        gens = new

    gens = _lll(gens, field)
    group = UnitGroup(field, tuple(gens), _logs(gens, field))
    for u in pool:
        if group.exponents(u) is None:
            raise ValueError(f"unit {u} does not decompose over the computed basis")
    return group


def unit_group(lat: IntegralLattice, field: BiquadraticField, radius=DEFAULT_RADIUS, max_radius=960) -> UnitGroup:
    """Search units and build the totally positive group, doubling the radius as needed."""
    while True:
        units = search_units(lat, field, radius)
        try:
            return totally_positive_basis(units, field)
        except InsufficientRankError:
            if radius * 2 > max_radius:
                raise
            log.info("insufficient rank at radius %s; doubling", radius)
            radius *= 2


_EPS = 1e-7


def canonicalize(vertices, group: UnitGroup, field: BiquadraticField):
    """Canonical representative of a vertex set modulo the unit action.

    The mean log vector of the vertices is moved into the half-open unit
    parallelepiped of the log lattice.  Candidates within ``1e-7`` of its
    boundary are all tried and the lexicographically smallest sorted vertex
    tuple wins, so the result depends only on the orbit.  Returns
    ``(canonical_vertices, exponents)`` with
    ``canonical_vertices = group.element(exponents) * vertices``.
    """
    vertices = [ex.fvec(v) for v in vertices]
    logs = np.log(np.abs(np.array([field.conjugates(v) for v in vertices])))
    c = group.log_coordinates(logs.mean(axis=0))
    base = np.floor(c)
    best = None
    for delta in itertools.product((-1, 0, 1), repeat=3):
        e = base + np.array(delta)
        frac = c - e
        if (frac < -_EPS).any() or (frac >= 1 + _EPS).any():
            continue
        exps = tuple(int(-x) for x in e)
        u = group.element(exps)
        image = tuple(sorted(field.mul(u, v) for v in vertices))
        if best is None or image < best[0]:
            best = (image, exps)
    return best


def canonicalize_cell(vertex_set, group: UnitGroup, field: BiquadraticField):
    """``(canonical vertex tuple, unit)`` with ``unit * vertex_set`` canonical."""
    image, exps = canonicalize(vertex_set, group, field)
    return image, group.element(exps)
