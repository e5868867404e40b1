"""Fundamental domains of the totally positive unit group acting on the boundary.

Cells are facets; two 2-face slots are paired when one face is a unit
multiple of the other.  A pairing with the trivial unit is an internal
gluing of adjacent cells, any other pairing is an identification.
"""

from __future__ import annotations

import json
import logging
from collections import Counter, defaultdict
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import _exact as ex
from .field import ONE, BiquadraticField
from .hull import Facet, facet_from_points, facet_polytope, format_functional, pivot, transform_facet
from .lattice import IntegralLattice
from .units import UnitGroup, canonicalize

log = logging.getLogger(__name__)

DEFAULT_MAX_CELLS = 64


class CapReachedError(RuntimeError):
    def __init__(self, cap, complex_):
        super().__init__(f"cap reached: {cap} cells and the domain is not closed")
        self.complex = complex_


@dataclass(frozen=True)
class Identification:
    """``unit * (face_a of cell_a) = face_b of cell_b`` with vertex map by index."""

    cell_a: int
    face_a: int
    cell_b: int
    face_b: int
    unit: tuple
    exponents: tuple
    vertex_map: tuple

    @property
    def is_gluing(self):
        return self.unit == ONE


@dataclass
class CellComplex:
    field: BiquadraticField
    lattice: IntegralLattice
    units: UnitGroup
    cells: list
    pairings: list = dc_field(default_factory=list)
    free_faces: list = dc_field(default_factory=list)
    face_orbits: dict = dc_field(default_factory=dict)

    @classmethod
    def from_cells(cls, cells, lattice, units, field):
        cx = cls(field, lattice, units, list(cells))
        cx._pair()
        return cx

    @property
    def identifications(self):
        return [p for p in self.pairings if not p.is_gluing]

    @property
    def gluings(self):
        return [p for p in self.pairings if p.is_gluing]

    def face_vertices(self, cell, face):
        return self.cells[cell].face_vertices(face)

    def _pair(self):
        orbits = defaultdict(list)
        for i, cell in enumerate(self.cells):
            for j in range(len(cell.faces)):
                key, exps = canonicalize(cell.face_vertices(j), self.units, self.field)
                orbits[key].append((i, j, exps))
        pairings, free = [], []
        for key, slots in orbits.items():
            slots.sort()
            if len(slots) == 1:
                free.append(slots[0][:2])
            for (ia, ja, ea), (ib, jb, eb) in zip(slots[::2], slots[1::2]):
                pairings.append(self._make_pairing(ia, ja, ea, ib, jb, eb))
        self.pairings = sorted(pairings, key=lambda p: (p.cell_a, p.face_a))
        self.free_faces = sorted(free)
        self.face_orbits = {k: [s[:2] for s in v] for k, v in orbits.items()}

    def _make_pairing(self, ia, ja, ea, ib, jb, eb):
        exps = tuple(x - y for x, y in zip(ea, eb))
        u = self.units.element(exps)
        cell_a, cell_b = self.cells[ia], self.cells[ib]
        index_b = {v: k for k, v in enumerate(cell_b.vertices)}
        vmap = []
        for k in cell_a.faces[ja]:
            image = self.field.mul(u, cell_a.vertices[k])
            if image not in index_b or index_b[image] not in cell_b.faces[jb]:
                raise AssertionError("face pairing is not exact")
            vmap.append((k, index_b[image]))
        return Identification(ia, ja, ib, jb, u, exps, tuple(vmap))

    def to_dict(self, report=None) -> dict:
        f = self.field.params
        data = {
            "field": {
                "two_a": f.two_a,
                "b": f.b,
                "classification": self.field.classification.kind.value,
                "c": str(self.field.classification.c),
            },
            "lattice": [[str(x) for x in row] for row in self.lattice.basis],
            "unit_generators": [[str(x) for x in g] for g in self.units.generators],
            "cells": [
                {
                    "functional": list(c.functional),
                    "level": c.level,
                    "vertices": [[str(x) for x in v] for v in c.vertices],
                    "faces": [list(face) for face in c.faces],
                    "points": [[str(x) for x in p] for p in c.points],
                }
                for c in self.cells
            ],
            "identifications": [
                {
                    "cell_a": p.cell_a,
                    "face_a": p.face_a,
                    "cell_b": p.cell_b,
                    "face_b": p.face_b,
                    "unit": [str(x) for x in p.unit],
                    "unit_exponents": list(p.exponents),
                    "vertex_map": [list(m) for m in p.vertex_map],
                }
                for p in self.pairings
            ],
            "free_faces": [list(s) for s in self.free_faces],
        }
        report = report if report is not None else verify_closed(self)
        data["report"] = report.to_dict()
        return data

    def to_json(self, report=None) -> str:
        return json.dumps(self.to_dict(report), indent=2) + "\n"


def complex_from_dict(data: dict) -> CellComplex:
    """Rebuild a complex from its JSON form; faces are recomputed and compared."""
    from .lattice import IntegralLattice
    from .units import _logs

    fdata = data["field"]
    field = BiquadraticField(fdata["two_a"], fdata["b"])
    lattice = IntegralLattice(tuple(tuple(Fraction(x) for x in row) for row in data["lattice"]))
    gens = tuple(tuple(Fraction(x) for x in g) for g in data["unit_generators"])
    units = UnitGroup(field, gens, _logs(gens, field))
    cells = []
    for c in data["cells"]:
        pts = [tuple(Fraction(x) for x in p) for p in c["points"]]
        cell = facet_from_points(c["functional"], c["level"], pts)
        if [list(face) for face in cell.faces] != c["faces"]:
            raise ValueError("stored faces disagree with the recomputed hull")
        cells.append(cell)
    return CellComplex.from_cells(cells, lattice, units, field)


@dataclass(frozen=True)
class ClosureReport:
    closed: bool
    free_faces: int
    vertices: int
    edges: int
    faces: int
    cells: int
    euler: int
    pseudo_manifold: bool

    def to_dict(self):
        return {
            "closed": self.closed,
            "free_faces": self.free_faces,
            "orbits": {"V": self.vertices, "E": self.edges, "F": self.faces, "C": self.cells},
            "euler_characteristic": self.euler,
            "pseudo_manifold": self.pseudo_manifold,
        }


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def classes(self, kind):
        return len({self.find(x) for x in self.parent if x[0] == kind})


def verify_closed(cx: CellComplex) -> ClosureReport:
    """Orbit counts of the quotient complex and the necessary closure conditions."""
    uf = _UnionFind()
    edge_index = []
    for i, cell in enumerate(cx.cells):
        for k in range(len(cell.vertices)):
            uf.find(("v", i, k))
        idx = {}
        for e, (a, b) in enumerate(cell.edges):
            uf.find(("e", i, e))
            idx[(a, b)] = e
        edge_index.append(idx)
        for j in range(len(cell.faces)):
            uf.find(("f", i, j))
    for p in cx.pairings:
        uf.union(("f", p.cell_a, p.face_a), ("f", p.cell_b, p.face_b))
        vmap = dict(p.vertex_map)
        for a, b in p.vertex_map:
            uf.union(("v", p.cell_a, a), ("v", p.cell_b, b))
        cyc = cx.cells[p.cell_a].faces[p.face_a]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            ea = edge_index[p.cell_a][(min(a, b), max(a, b))]
            ma, mb = vmap[a], vmap[b]
            eb = edge_index[p.cell_b][(min(ma, mb), max(ma, mb))]
            uf.union(("e", p.cell_a, ea), ("e", p.cell_b, eb))
    V, E, F = uf.classes("v"), uf.classes("e"), uf.classes("f")
    C = len(cx.cells)
    pseudo = all(len(slots) == 2 for slots in cx.face_orbits.values())
    return ClosureReport(not cx.free_faces, len(cx.free_faces), V, E, F, C, V - E + F - C, pseudo)


def match_face(vertices, cx: CellComplex, exclude=None):
    """Face slot ``(cell, face, unit, vertex_map)`` that is a unit multiple of ``vertices``.

    ``exclude`` names the slot the face itself occupies.  Returns None when
    the face is free.
    """
    vertices = tuple(ex.fvec(v) for v in vertices)
    key, exps = canonicalize(vertices, cx.units, cx.field)
    for cell, face in cx.face_orbits.get(key, []):
        if exclude is not None and (cell, face) == tuple(exclude):
            continue
        _, other = canonicalize(cx.face_vertices(cell, face), cx.units, cx.field)
        rel = tuple(x - y for x, y in zip(exps, other))
        u = cx.units.element(rel)
        target = cx.cells[cell]
        vmap = tuple((v, cx.field.mul(u, v)) for v in vertices)
        assert {w for _, w in vmap} == set(target.face_vertices(face))
        return cell, face, u, vmap
    return None


def _cell_key(cell: Facet, cx: CellComplex):
    return canonicalize(cell.vertices, cx.units, cx.field)[0]


def build_domain(field: BiquadraticField, lat: IntegralLattice, units: UnitGroup, seed, max_cells=DEFAULT_MAX_CELLS):
    """Grow a fundamental domain from a seed support functional.

    The first free face (by cell index, then face index) is crossed by a
    pivot and the neighbouring facet is added, until no face is free.
    Representatives are then translated by units to maximize the number of
    internal gluings, so that identification counts do not depend on the
    order in which cells were discovered.
    """
    phi, level = seed
    cells = [facet_polytope(phi, level, lat, field)]
    cx = CellComplex.from_cells(cells, lat, units, field)
    keys = {_cell_key(cells[0], cx)}
    while cx.free_faces:
        if len(cx.cells) >= max_cells:
            raise CapReachedError(max_cells, cx)
        i, j = cx.free_faces[0]
        neighbour = pivot(cx.cells[i], j, lat, field)
        key = _cell_key(neighbour, cx)
        if key in keys:
            raise AssertionError("pivot across a free face reached a known cell orbit")
        keys.add(key)
        log.info("cell %d: %s", len(cx.cells), format_functional(neighbour.functional, neighbour.level))
        cx = CellComplex.from_cells(cx.cells + [neighbour], lat, units, field)
    return _best_representatives(cx)


def _best_representatives(cx: CellComplex) -> CellComplex:
    """Translate cells by units to maximize gluings (greedy component merging)."""
    n = len(cx.cells)
    if n == 1:
        return cx
    edges = [(p.cell_a, p.cell_b, p.exponents) for p in cx.pairings if p.cell_a != p.cell_b]
    pot = {i: (0, 0, 0) for i in range(n)}
    comp = {i: i for i in range(n)}

    def sub(a, b):
        return tuple(x - y for x, y in zip(a, b))

    while True:
        gains = Counter()
        for a, b, x in edges:
            ca, cb = comp[a], comp[b]
            if ca == cb:
                continue
            # translating cell i by element(s_i) turns exponent x into
            # s_b + x - s_a, a gluing iff s_a - s_b == x
            t = sub(sub(pot[a], pot[b]), x)
            gains[(cb, ca, t)] += 1
            gains[(ca, cb, tuple(-y for y in t))] += 1
        if not gains:
            break
        (moving, target, t), _ = min(gains.items(), key=lambda kv: (-kv[1], kv[0]))
        for i in range(n):
            if comp[i] == moving:
                pot[i] = tuple(x + y for x, y in zip(pot[i], t))
                comp[i] = target
    base = pot[0]
    pot = {i: sub(p, base) for i, p in pot.items()}

    def glue_count(potentials):
        return sum(1 for a, b, x in edges if sub(potentials[a], potentials[b]) == x)

    current = glue_count({i: (0, 0, 0) for i in range(n)})
    if glue_count(pot) <= current:
        return cx
    cells = []
    for i, cell in enumerate(cx.cells):
        if pot[i] == (0, 0, 0):
            cells.append(cell)
        else:
            cells.append(transform_facet(cell, cx.units.element(pot[i]), cx.field))
    return CellComplex.from_cells(cells, cx.lattice, cx.units, cx.field)
