"""Integral lattices of orders and certified enumeration of positive points.

A lattice is given by four rational basis rows in the ``(k, l, m, n)`` power
basis.  Enumeration works in integer lattice coordinates ``z`` with
``v = z @ B``; the conjugate vector of ``v`` is ``y = z @ M`` where
``M = B @ E.T`` and ``E`` is the float Vandermonde matrix of the roots.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import lcm

import numpy as np

from . import _exact as ex
from .field import ONE, BiquadraticField

_IDENTITY = ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1))


class UnboundedSlabError(ValueError):
    """The functional is not strictly positive on the cone, so its slab is infinite."""


@dataclass(frozen=True)
class IntegralLattice:
    basis: tuple
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "basis", ex.fmat(self.basis))
        if len(self.basis) != 4 or any(len(r) != 4 for r in self.basis):
            raise ValueError("lattice basis must be 4x4")
        if ex.det(self.basis) == 0:
            raise ValueError("lattice basis is singular")

    @cached_property
    def inverse(self):
        return ex.inverse(self.basis)

    @property
    def covolume(self) -> Fraction:
        return abs(ex.det(self.basis))

    def coordinates(self, v):
        """Lattice coordinates ``z`` with ``z @ basis = v``."""
        return ex.vecmat(ex.fvec(v), self.inverse)

    def contains(self, v) -> bool:
        return all(z.denominator == 1 for z in self.coordinates(v))

    def from_coordinates(self, z):
        return ex.vecmat(tuple(Fraction(int(t)) for t in z), self.basis)

    def verify_order(self, field: BiquadraticField) -> bool:
        """True iff 1 is in the lattice and the basis products stay inside."""
        if not self.contains(ONE):
            return False
        return all(self.contains(field.mul(u, w)) for u in self.basis for w in self.basis)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.basis) + "\n"


def lattice_from_generators(gens, name=None) -> IntegralLattice:
    """Lattice spanned by rational generators (at least four, full rank)."""
    gens = [ex.fvec(g) for g in gens]
    den = lcm(*(x.denominator for g in gens for x in g))
    ints = [[int(x * den) for x in g] for g in gens]
    basis, _ = ex.integer_row_basis(ints)
    if len(basis) != 4:
        raise ValueError("generators do not span a rank-4 lattice")
    return IntegralLattice(tuple(tuple(Fraction(x, den) for x in row) for row in basis), name)


def _shintani_generators(n: int):
    if n < 1 or n % 2 == 0:
        raise ValueError("the family parameter n must be an odd positive integer")
    a = (n - 1) // 2
    return list(_IDENTITY) + [
        (Fraction(1, n), 0, Fraction(2 * a - 1, n), 0),
        (0, Fraction(1, n), 0, Fraction(2 * a - 1, n)),
    ]


_SHINTANI = re.compile(r"^shintani[(:_-]?(\d+)\)?$")


def preset_lattice(name: str) -> IntegralLattice:
    """Integral basis for a named field.

    Known names: ``identity`` (same as ``k1``, ``k2``), ``f15_45``, ``shintani(n)`` (also spelled
    ``shintani3``/``shintani:3``), ``klein9``, ``klein25``, ``klein49``, ``k11``.
    """
    key = name.strip().lower()
    if key in ("k1", "k2", "identity"):
        return IntegralLattice(_IDENTITY, key)
    if key == "f15_45":
        gens = list(_IDENTITY) + [(Fraction(1, 6), 0, 0, Fraction(1, 2)), (0, Fraction(1, 6), Fraction(1, 2), Fraction(1, 2))]
        return lattice_from_generators(gens, key)
    if key in ("klein9", "klein25", "klein49"):
        q = {"klein9": 3, "klein25": 5, "klein49": 7}[key]
        return IntegralLattice(
            ((Fraction(1, q), 0, 0, 0), (0, Fraction(1, q), 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)), key
        )
    if key == "k11":
        gens = list(_IDENTITY) + [(Fraction(1, 275), 0, Fraction(3, 11), 0), (0, Fraction(1, 55), 0, Fraction(4, 11))]
        return lattice_from_generators(gens, key)
    m = _SHINTANI.match(key)
    if m:
        n = int(m.group(1))
        return lattice_from_generators(_shintani_generators(n), f"shintani({n})")
    raise KeyError(f"unknown lattice preset {name!r}")


def read_lattice_file(path) -> IntegralLattice:
    """Four whitespace-separated rows of rationals ``p/q``; ``#`` starts a comment."""
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append(tuple(Fraction(tok) for tok in line.split()))
    return IntegralLattice(tuple(rows), str(path))


def load_lattice(source: str) -> IntegralLattice:
    try:
        return preset_lattice(source)
    except KeyError:
        return read_lattice_file(source)


# enumeration -----------------------------------------------------------------


def embedding_matrix(lat: IntegralLattice, field: BiquadraticField) -> np.ndarray:
    """Float M with ``conjugates(z @ basis) = z @ M``."""
    b = np.array([[float(x) for x in row] for row in lat.basis])
    return b @ field.vandermonde.T


def _lll_transform(B, delta=0.99):
    """Unimodular integer T with ``T @ B`` LLL reduced (float rows)."""
    B = np.array(B, dtype=float)
    n = len(B)
    T = np.eye(n, dtype=np.int64)
    k = 1
    while k < n:
        for j in range(k - 1, -1, -1):
            Q = _gram_schmidt(B)
            r = int(round((B[k] @ Q[j]) / (Q[j] @ Q[j])))
            if r:
                B[k] -= r * B[j]
                T[k] -= r * T[j]
        Q = _gram_schmidt(B)
        mu = (B[k] @ Q[k - 1]) / (Q[k - 1] @ Q[k - 1])
        if Q[k] @ Q[k] >= (delta - mu * mu) * (Q[k - 1] @ Q[k - 1]):
            k += 1
        else:
            B[[k - 1, k]] = B[[k, k - 1]]
            T[[k - 1, k]] = T[[k, k - 1]]
            k = max(k - 1, 1)
    return T


def _gram_schmidt(B):
    Q = np.array(B, dtype=float)
    for i in range(len(B)):
        for j in range(i):
            Q[i] -= (B[i] @ Q[j]) / (Q[j] @ Q[j]) * Q[j]
    return Q


def lattice_points_in_region(M, A, rhs, y_vertices, max_candidates=50_000_000):
    """Integer z whose conjugates ``y = z @ M`` satisfy ``A @ y <= rhs`` (with slack).

    The basis is first LLL reduced after rescaling conjugate space to the
    extent of the region, which keeps the scanned box close to the region's
    volume.  Returns ``(points, box)`` with the box in reduced coordinates.
    """
    M = np.asarray(M, dtype=float)
    extent = np.abs(np.asarray(y_vertices, dtype=float)).max(axis=0)
    extent[extent == 0] = 1.0
    T = _lll_transform(M / extent)
    pts, box = _scan_region(T @ M, A, rhs, y_vertices, max_candidates)
    return pts @ T, box


def _scan_region(M, A, rhs, y_vertices, max_candidates):
    """Box scan behind ``lattice_points_in_region``.

    ``y_vertices`` are the vertices of the bounded region in conjugate space;
    their preimages bound a coordinate box.  Three coordinates are scanned
    over that box and the remaining one is solved as an interval from the
    linear constraints, so the result is a superset of the exact region
    (constraints are relaxed by a relative 1e-9) and callers filter exactly.
    Returns ``(points, box)``.
    """
    A = np.asarray(A, dtype=float)
    rhs = np.asarray(rhs, dtype=float)
    zv = np.asarray(y_vertices, dtype=float) @ np.linalg.inv(M)
    lo = np.floor(zv.min(axis=0) - 1e-7).astype(np.int64)
    hi = np.ceil(zv.max(axis=0) + 1e-7).astype(np.int64)
    box = tuple(zip(lo.tolist(), hi.tolist()))
    G = A @ M.T
    zmax = np.maximum(np.abs(lo), np.abs(hi)).astype(float)
    tol = 1e-9 * (np.abs(rhs) + np.abs(G) @ zmax) + 1e-12
    bound = rhs + tol

    span = hi - lo
    last = int(np.argmax(span))
    others = [j for j in range(4) if j != last]
    n_scan = int(np.prod(span[others] + 1))
    if n_scan > max_candidates:
        raise MemoryError(f"enumeration box too large ({n_scan} scan cells)")

    g_last = G[:, last]
    scale = np.abs(G).max()
    out = []
    r1 = np.arange(lo[others[1]], hi[others[1]] + 1)
    r2 = np.arange(lo[others[2]], hi[others[2]] + 1)
    g1, g2 = np.meshgrid(r1, r2, indexing="ij")
    g1, g2 = g1.ravel(), g2.ravel()
    part12 = np.outer(G[:, others[1]], g1) + np.outer(G[:, others[2]], g2)
    for z0 in range(lo[others[0]], hi[others[0]] + 1):
        rem = bound[:, None] - G[:, others[0], None] * z0 - part12
        lower = np.full(g1.shape, float(lo[last]))
        upper = np.full(g1.shape, float(hi[last]))
        feasible = np.ones(g1.shape, dtype=bool)
        for r in range(G.shape[0]):
            g = g_last[r]
            if g > 1e-13 * scale:
                upper = np.minimum(upper, rem[r] / g)
            elif g < -1e-13 * scale:
                lower = np.maximum(lower, rem[r] / g)
            else:
                feasible &= rem[r] >= 0
        zlo = np.ceil(lower - 1e-9).astype(np.int64)
        zhi = np.floor(upper + 1e-9).astype(np.int64)
        counts = np.where(feasible, np.maximum(zhi - zlo + 1, 0), 0)
        if not counts.any():
            continue
        idx = np.repeat(np.arange(len(counts)), counts)
        starts = np.repeat(zlo, counts)
        offs = np.arange(len(idx)) - np.repeat(np.cumsum(counts) - counts, counts)
        pts = np.empty((len(idx), 4), dtype=np.int64)
        pts[:, others[0]] = z0
        pts[:, others[1]] = g1[idx]
        pts[:, others[2]] = g2[idx]
        pts[:, last] = starts + offs
        out.append(pts)
    if not out:
        return np.zeros((0, 4), dtype=np.int64), box
    return np.concatenate(out), box


def _integer_form(values):
    """Scale rationals to integers with a common denominator."""
    den = lcm(*(ex.frac(x).denominator for x in values))
    return [int(x * den) for x in values], den


def positive_mask(points, lat, field, M=None):
    """Exact strict-positivity mask over integer coordinate rows.

    Float conjugates decide clear cases; anything within a relative 1e-8 of
    zero is settled by the exact sign test.
    """
    if len(points) == 0:
        return np.zeros(0, dtype=bool)
    M = embedding_matrix(lat, field) if M is None else M
    y = points @ M
    margin = 1e-8 * (np.abs(points) @ np.abs(M)) + 1e-12
    sure = (y > margin).all(axis=1)
    maybe = ~sure & ~(y < -margin).any(axis=1)
    mask = sure.copy()
    for i in np.flatnonzero(maybe):
        mask[i] = field.is_strictly_positive(lat.from_coordinates(points[i]))
    return mask


@dataclass(frozen=True)
class SlabEnumeration:
    """All strictly positive lattice points with ``phi(v) <= level``.

    ``box`` is the integer coordinate box that was covered and
    ``candidates`` the number of lattice points tested exactly.
    """

    functional: tuple
    level: Fraction
    points: tuple
    box: tuple
    candidates: int

    def on_level(self, value=None):
        value = self.level if value is None else ex.frac(value)
        return tuple(p for p in self.points if ex.dot(self.functional, p) == value)

    def below_level(self):
        return tuple(p for p in self.points if ex.dot(self.functional, p) < self.level)


def slab_region(field: BiquadraticField, phi, level):
    """Conjugate-space simplex ``{y >= 0, sum lam_i y_i <= level}`` for phi.

    Raises UnboundedSlabError unless the dual element of phi is strictly
    positive.
    """
    phi = ex.fvec(phi)
    lam = field.dual_element(phi)
    if not field.is_strictly_positive(lam):
        raise UnboundedSlabError(f"functional {phi} is not strictly positive on the cone")
    lam_f = field.conjugates(lam) * (1 - 1e-12)
    level = float(level)
    A = np.vstack([-np.eye(4), lam_f[None, :]])
    rhs = np.concatenate([np.zeros(4), [level]])
    verts = np.vstack([np.zeros(4), np.diag(level / lam_f)])
    return A, rhs, verts


def enumerate_slab(phi, level, lat: IntegralLattice, field: BiquadraticField) -> SlabEnumeration:
    """Complete list of strictly positive lattice points with ``phi(v) <= level``.

    The dual element lam of phi bounds each conjugate by ``level / lam_i``;
    the resulting simplex is pulled back to lattice coordinates, scanned, and
    every candidate is checked exactly.  Points are sorted lexicographically.
    """
    phi, level = ex.fvec(phi), ex.frac(level)
    if level <= 0:
        return SlabEnumeration(phi, level, (), ((0, 0),) * 4, 0)
    A, rhs, verts = slab_region(field, phi, level)
    M = embedding_matrix(lat, field)
    pts, box = lattice_points_in_region(M, A, rhs, verts)
    weights, den = _integer_form([ex.dot(phi, row) for row in lat.basis] + [level])
    w, cap = np.array(weights[:4], dtype=object), weights[4]
    if len(pts):
        vals = pts.astype(object) @ w
        keep = np.array([x <= cap for x in vals], dtype=bool)
        pts = pts[keep]
    pts = pts[positive_mask(pts, lat, field, M)]
    points = sorted(lat.from_coordinates(z) for z in pts)
    return SlabEnumeration(phi, level, tuple(points), box, int(len(pts)))


def points_on_level(phi, level, lat: IntegralLattice, field: BiquadraticField) -> tuple:
    return enumerate_slab(phi, level, lat, field).on_level()
