"""Facets of the boundary of the convex hull of positive integral elements.

A facet lives in a support hyperplane ``phi(v) = level`` and is described in
internal coordinates obtained by dropping the coordinate where ``phi`` has the
largest absolute coefficient.  All predicates are exact integer determinants.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from math import gcd, lcm

from . import _exact as ex
from .field import BiquadraticField
from .lattice import IntegralLattice, UnboundedSlabError, enumerate_slab


class InvalidSupportError(ValueError):
    pass


class DegenerateHullError(ValueError):
    pass


def normalize_functional(phi, level):
    """Coprime integer form ``(phi, level)`` with a positive level.

    The level of a support functional of a positive set is positive, so the
    sign is fixed by it (``k - 2l + m - 2n + 2 = 0`` becomes
    ``(-1, 2, -1, 2; 2)``).
    """
    ints = ex.primitive_integer(tuple(ex.fvec(phi)) + (ex.frac(level),))
    if ints[4] < 0:
        ints = tuple(-x for x in ints)
    if ints[4] == 0:
        raise InvalidSupportError("a support functional must have nonzero level")
    return tuple(ints[:4]), ints[4]


def parse_functional(text: str):
    """Parse ``"c3,c2,c1,c0;c"`` (rationals allowed) into a normalized pair."""
    try:
        coeffs, level = text.split(";")
        phi = tuple(Fraction(t.strip()) for t in coeffs.split(","))
    except ValueError as err:
        raise ValueError(f"cannot parse functional {text!r}; expected 'c3,c2,c1,c0;c'") from err
    if len(phi) != 4:
        raise ValueError("a functional needs four coefficients")
    return normalize_functional(phi, Fraction(level.strip()))


def format_functional(phi, level) -> str:
    return ",".join(str(x) for x in phi) + ";" + str(level)


@dataclass(frozen=True)
class SupportCertificate:
    valid: bool
    reason: str
    functional: tuple
    level: int
    dual: tuple
    face_points: tuple = ()
    lower_points: tuple = ()

    def __bool__(self):
        return self.valid


def verify_support(phi, level, lat: IntegralLattice, field: BiquadraticField) -> SupportCertificate:
    """Certify that ``phi >= level`` on all positive lattice points, with equality somewhere."""
    if all(ex.frac(x) == 0 for x in phi):
        raise ValueError("zero functional")
    phi, level = normalize_functional(phi, level)
    lam = field.dual_element(phi)
    if not field.is_strictly_positive(lam):
        return SupportCertificate(False, "unbounded direction", phi, level, lam)
    slab = enumerate_slab(phi, level, lat, field)
    lower = slab.below_level()
    if lower:
        return SupportCertificate(False, "lower point found", phi, level, lam, slab.on_level(), lower)
    face = slab.on_level()
    if not face:
        return SupportCertificate(False, "empty face", phi, level, lam)
    return SupportCertificate(True, "valid", phi, level, lam, face)


# 3-dimensional exact hull ------------------------------------------------------


def _cross(u, v):
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _polygon_cycle(pts, idx, normal):
    """Vertices of a planar convex polygon, counter-clockwise about ``normal``."""
    axis = max(range(3), key=lambda j: abs(normal[j]))
    keep = [j for j in range(3) if j != axis]
    proj = sorted(((pts[i][keep[0]], pts[i][keep[1]]), i) for i in idx)

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in proj:
        while len(lower) >= 2 and turn(lower[-2][0], lower[-1][0], p[0]) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(proj):
        while len(upper) >= 2 and turn(upper[-2][0], upper[-1][0], p[0]) <= 0:
            upper.pop()
        upper.append(p)
    cycle = [i for _, i in lower[:-1] + upper[:-1]]
    if len(cycle) >= 3:
        a, b, c = (pts[i] for i in cycle[:3])
        if _dot(_cross(_sub(b, a), _sub(c, a)), normal) < 0:
            cycle.reverse()
    start = cycle.index(min(cycle))
    return tuple(cycle[start:] + cycle[:start])


def _affine_rank(pts):
    if len(pts) <= 1:
        return 0
    base = pts[0]
    return ex.rank([tuple(Fraction(x) for x in _sub(p, base)) for p in pts[1:]])


def convex_hull_3d(pts):
    """Exact hull of integer points in R^3.

    Every triple spanning a plane with all points on one side gives a 2-face;
    the face polygon is the planar hull of the points on that plane.  Returns
    ``(dimension, faces)`` where ``faces`` is a list of
    ``(outward_normal, offset, cycle)`` with ``normal . p <= offset`` for all
    points.  Lower-dimensional inputs return their dimension and no faces.
    """
    pts = [tuple(p) for p in pts]
    dim = _affine_rank(pts)
    if dim < 3:
        return dim, []
    found = {}
    n = len(pts)
    for i, j, k in itertools.combinations(range(n), 3):
        nrm = _cross(_sub(pts[j], pts[i]), _sub(pts[k], pts[i]))
        if nrm == (0, 0, 0):
            continue
        off = _dot(nrm, pts[i])
        pos = neg = False
        on = []
        for q in range(n):
            s = _dot(nrm, pts[q]) - off
            if s > 0:
                pos = True
            elif s < 0:
                neg = True
            else:
                on.append(q)
            if pos and neg:
                break
        if pos and neg:
            continue
        if pos:
            nrm, off = tuple(-x for x in nrm), -off
        g = gcd(*nrm, off)
        key = (tuple(x // g for x in nrm), off // g)
        if key not in found:
            found[key] = on
    faces = []
    for (nrm, off), on in found.items():
        faces.append((nrm, off, _polygon_cycle(pts, on, nrm)))
    return 3, faces


@dataclass(frozen=True)
class HullLattice:
    """Face lattice of a polytope given by vertex indices into ``points``."""

    dimension: int
    points: tuple
    vertices: tuple
    edges: tuple
    faces: tuple

    @property
    def f_vector(self):
        return len(self.vertices), len(self.edges), len(self.faces)


def hull3(points, functional=None) -> HullLattice:
    """Hull of points lying in a common hyperplane of Q^4.

    ``functional`` (its coefficient vector) selects the dropped coordinate;
    when omitted it is recovered from the points.  Degenerate inputs come
    back with ``dimension < 3`` and only their vertices.
    """
    points = tuple(sorted(set(ex.fvec(p) for p in points)))
    if functional is None:
        base = points[0]
        diffs = [tuple(x - y for x, y in zip(p, base)) for p in points[1:]]
        normals = ex.nullspace(diffs, 4)
        if len(normals) != 1:
            raise DegenerateHullError("points do not span a hyperplane")
        functional = normals[0]
    drop = max(range(4), key=lambda j: (abs(ex.frac(functional[j])), -j))
    keep = [j for j in range(4) if j != drop]
    den = lcm(*(p[j].denominator for p in points for j in keep))
    internal = [tuple(int(p[j] * den) for j in keep) for p in points]
    dim, faces = convex_hull_3d(internal)
    if dim < 3:
        verts = _low_dim_vertices(internal, dim)
        return HullLattice(dim, points, tuple(verts), (), ())
    verts = sorted({i for _, _, cyc in faces for i in cyc})
    edges = set()
    for _, _, cyc in faces:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            edges.add((min(a, b), max(a, b)))
    cycles = sorted((cyc for _, _, cyc in faces), key=lambda c: tuple(sorted(c)))
    return HullLattice(3, points, tuple(verts), tuple(sorted(edges)), tuple(cycles))


def _low_dim_vertices(pts, dim):
    if dim == 0:
        return [0]
    if dim == 1:
        order = sorted(range(len(pts)), key=lambda i: pts[i])
        return sorted({order[0], order[-1]})
    base = pts[0]
    diffs = [_sub(p, base) for p in pts[1:]]
    normal = next(_cross(u, v) for u, v in itertools.combinations(diffs, 2) if _cross(u, v) != (0, 0, 0))
    return sorted(_polygon_cycle(pts, range(len(pts)), normal))


# facets ----------------------------------------------------------------------


@dataclass(frozen=True)
class Facet:
    """A 3-dimensional face of the boundary, with its full face lattice.

    ``faces`` hold indices into ``vertices`` ordered as oriented cycles;
    ``face_planes[j]`` is ``(eta, e)`` with ``eta(v) >= e`` on the facet and
    equality on face j.
    """

    functional: tuple
    level: int
    points: tuple
    vertices: tuple
    edges: tuple
    faces: tuple
    face_planes: tuple
    drop: int

    @property
    def f_vector(self):
        return len(self.vertices), len(self.edges), len(self.faces)

    @property
    def euler(self):
        v, e, f = self.f_vector
        return v - e + f

    def face_vertices(self, j):
        return tuple(self.vertices[i] for i in self.faces[j])

    def face_index(self, vertex_set):
        target = frozenset(ex.fvec(v) for v in vertex_set)
        for j, face in enumerate(self.faces):
            if frozenset(self.vertices[i] for i in face) == target:
                return j
        raise KeyError("vertex set is not a 2-face of this facet")

    @property
    def non_vertices(self):
        vs = set(self.vertices)
        return tuple(p for p in self.points if p not in vs)

    def classify_point(self, p):
        """'vertex', 'edge', 'face' or 'interior' for a point of the facet."""
        p = ex.fvec(p)
        if p in self.vertices:
            return "vertex"
        on = sum(1 for eta, e in self.face_planes if ex.dot(eta, p) == e)
        if on >= 2:
            return "edge"
        return "face" if on == 1 else "interior"

    def face_sizes(self):
        return sorted(len(f) for f in self.faces)


def facet_from_points(functional, level, points) -> Facet:
    functional, level = normalize_functional(functional, level)
    points = tuple(sorted(set(ex.fvec(p) for p in points)))
    hl = hull3(points, functional)
    if hl.dimension < 3:
        raise DegenerateHullError(f"face of {functional};{level} has dimension {hl.dimension}")
    vert_pts = [points[i] for i in hl.vertices]
    remap = {old: new for new, old in enumerate(hl.vertices)}
    faces = tuple(tuple(remap[i] for i in cyc) for cyc in hl.faces)
    faces = tuple(sorted(faces, key=lambda c: tuple(sorted(c))))
    edges = tuple(sorted((remap[a], remap[b]) for a, b in hl.edges))
    drop = max(range(4), key=lambda j: (abs(functional[j]), -j))
    planes = tuple(_face_plane([vert_pts[i] for i in face], vert_pts, drop) for face in faces)
    return Facet(functional, level, points, tuple(vert_pts), edges, faces, planes, drop)


def _face_plane(face_pts, all_pts, drop):
    keep = [j for j in range(4) if j != drop]
    rows = [tuple(p[j] for j in keep) + (Fraction(-1),) for p in face_pts]
    (sol,) = ex.nullspace(rows, 4)
    eta3, e = sol[:3], sol[3]
    if any(ex.dot(eta3, tuple(p[j] for j in keep)) < e for p in all_pts):
        eta3, e = tuple(-x for x in eta3), -e
    eta = [Fraction(0)] * 4
    for j, val in zip(keep, eta3):
        eta[j] = val
    ints = ex.primitive_integer(tuple(eta) + (e,))
    return tuple(Fraction(x) for x in ints[:4]), Fraction(ints[4])


def facet_polytope(phi, level, lat: IntegralLattice, field: BiquadraticField) -> Facet:
    cert = verify_support(phi, level, lat, field)
    if not cert.valid:
        raise InvalidSupportError(f"{format_functional(cert.functional, cert.level)}: {cert.reason}")
    return facet_from_points(cert.functional, cert.level, cert.face_points)


def transform_facet(facet: Facet, unit, field: BiquadraticField) -> Facet:
    """Image of a facet under multiplication by a unit."""
    inv = field.inv(unit)
    minv = field.mult_matrix(inv)
    phi = ex.vecmat(tuple(Fraction(x) for x in facet.functional), minv)
    pts = [field.mul(unit, p) for p in facet.points]
    return facet_from_points(phi, facet.level, pts)


def rotate_support(phi, level, eta, e, lat, field, start_level=None, max_doublings=24):
    """Rotate the hyperplane ``phi = level`` about ``{phi = level, eta = e}``.

    With ``f = phi - level`` (>= 0 on positive points) and ``g = eta - e``,
    the hyperplanes ``t f + g = 0`` all contain the axis; the first one met
    when rotating away from ``f = 0`` maximizes ``-g(p) / f(p)`` over points
    with ``f(p) > 0``.  Candidates come from growing slabs of phi and are
    confirmed by complete enumeration of their own slab, so the result is a
    certified support hyperplane.  Returns ``(functional, level, face_points)``.
    """
    phi, level = ex.fvec(phi), ex.frac(level)
    eta, e = ex.fvec(eta), ex.frac(e)
    search = ex.frac(start_level) if start_level is not None else 2 * level
    best = None

    def ratio(p):
        return (e - ex.dot(eta, p)) / (ex.dot(phi, p) - level)

    for _ in range(max_doublings):
        pts = enumerate_slab(phi, search, lat, field).points
        ratios = [ratio(p) for p in pts if ex.dot(phi, p) > level]
        if ratios:
            cand = max(ratios)
            best = cand if best is None else max(best, cand)
        if best is not None:
            while True:
                psi = tuple(best * x + y for x, y in zip(phi, eta))
                lev = best * level + e
                if lev <= 0:
                    # the axis holds positive points, so t is still too small
                    break
                try:
                    slab = enumerate_slab(psi, lev, lat, field)
                except UnboundedSlabError:
                    break
                lower = slab.below_level()
                if not lower:
                    psi, lev = normalize_functional(psi, lev)
                    return psi, lev, slab.on_level()
                best = max(ratio(p) for p in lower)
        search *= 2
    raise RuntimeError("rotation did not reach a bounded support hyperplane")


def pivot(facet: Facet, ridge, lat: IntegralLattice, field: BiquadraticField) -> Facet:
    """The other facet of the boundary containing the 2-face ``ridge``.

    ``ridge`` is a face index of ``facet`` or the face's vertex set.
    """
    j = ridge if isinstance(ridge, int) else facet.face_index(ridge)
    eta, e = facet.face_planes[j]
    psi, lev, face = rotate_support(facet.functional, facet.level, eta, e, lat, field)
    return facet_from_points(psi, lev, face)


def find_seed(lat: IntegralLattice, field: BiquadraticField):
    """A support functional with a 3-dimensional face, found automatically.

    Starts from the trace, which is minimized on positive integral elements
    only at 1, and rotates about the current face until it is a facet.
    """
    from .field import ONE

    phi = tuple(field.trace(b) for b in ((1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)))
    phi = ex.fvec(phi)
    cert = verify_support(phi, 4, lat, field)
    if not cert.valid:
        raise InvalidSupportError("trace is not minimized at 1")
    phi, level = cert.functional, cert.level
    face = [ONE]
    while True:
        dim = _affine_rank(face)
        if dim == 3:
            return phi, level
        rows = [tuple(p) + (Fraction(-1),) for p in face]
        basis = ex.nullspace(rows, 5)
        target = tuple(Fraction(x) for x in phi) + (Fraction(level),)
        eta = next(v for v in basis if ex.rank([v, target]) == 2)
        phi, level, face = rotate_support(phi, level, eta[:4], eta[4], lat, field)


# export ----------------------------------------------------------------------


def _decimal(q: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 30
        val = Decimal(q.numerator) / Decimal(q.denominator)
    text = format(val.quantize(Decimal("1e-15")).normalize(), "f")
    return "0" if text in ("-0", "0") else text


def facet_to_off(facet: Facet) -> str:
    """OFF text of a facet in its internal coordinates.

    Coordinates are written as decimals; the exact rationals follow on ``#``
    comment lines so the file stays lossless.
    """
    keep = [j for j in range(4) if j != facet.drop]
    lines = ["OFF", f"# functional {format_functional(facet.functional, facet.level)} drop {facet.drop}"]
    lines.append(f"{len(facet.vertices)} {len(facet.faces)} {len(facet.edges)}")
    for v in facet.vertices:
        lines.append(" ".join(_decimal(v[j]) for j in keep))
    for i, v in enumerate(facet.vertices):
        lines.append(f"# v{i} " + " ".join(str(x) for x in v))
    for face in facet.faces:
        lines.append(" ".join(str(x) for x in (len(face),) + face))
    return "\n".join(lines) + "\n"
