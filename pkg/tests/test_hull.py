from fractions import Fraction

import pytest

from quarticfd import _exact as ex
from quarticfd.hull import (
    DegenerateHullError, facet_from_points, facet_polytope, facet_to_off, find_seed, format_functional, hull3,
    normalize_functional, parse_functional, pivot, transform_facet, verify_support,
)
from quarticfd.presets import K1_POINTS, K1_TETRA_1, K1_TETRA_2, K1_TETRA_2_PRINTED, KLEIN9_POINTS, KLEIN9_TETRA

F = Fraction


def named(points, names):
    return {points[n] for n in names.split()}


class TestFunctional:
    def test_normalize(self):
        assert normalize_functional((F(4), F(5, 2), 1, 1), 1) == ((8, 5, 2, 2), 2)
        assert normalize_functional((2, 2, 0, 2), 2) == ((1, 1, 0, 1), 1)

    def test_parse_roundtrip(self):
        phi, lev = parse_functional("4,5/2,1,1;1")
        assert (phi, lev) == ((8, 5, 2, 2), 2)
        assert parse_functional(format_functional(phi, lev)) == (phi, lev)

    @pytest.mark.parametrize("bad", ["1,2,3;1", "1,2,3,4", "a,b,c,d;1"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_functional(bad)


class TestSupport:
    def test_k1_seed(self, ctx):
        _, K, L, _ = ctx("k1")
        cert = verify_support((1, 1, 0, 1), 1, L, K)
        assert cert and len(cert.face_points) == 9

    def test_printed_tetrahedron_plane_is_invalid(self, ctx):
        _, K, L, _ = ctx("k1")
        cert = verify_support(*K1_TETRA_2_PRINTED, L, K)
        assert not cert and cert.reason == "unbounded direction"
        phi, lev = K1_TETRA_2_PRINTED
        assert ex.dot(phi, K1_POINTS["A11"]) == 6

    def test_lower_point(self, ctx):
        _, K, L, _ = ctx("k1")
        cert = verify_support((1, 1, 0, 1), 2, L, K)
        assert not cert and cert.reason == "lower point found"
        assert ex.fvec((0, 0, 0, 1)) in cert.lower_points

    def test_zero_functional(self, ctx):
        _, K, L, _ = ctx("k1")
        with pytest.raises(ValueError):
            verify_support((0, 0, 0, 0), 1, L, K)

    def test_empty_face(self, ctx):
        _, K, L, _ = ctx("k1")
        cert = verify_support((2, 2, 0, 2), 1, L, K)
        assert not cert and cert.reason == "empty face"


class TestHull:
    def test_octahedron(self):
        hl = hull3(named(K1_POINTS, "A1 A2 A3 A4 A5 A6 A7 A8 A9"))
        assert hl.dimension == 3 and hl.f_vector == (6, 12, 8)
        assert {hl.points[i] for i in hl.vertices} == named(K1_POINTS, "A1 A2 A4 A6 A8 A9")

    def test_tetrahedron(self):
        hl = hull3(named(K1_POINTS, "A1 A3 A6 A8 A10"))
        assert hl.f_vector == (4, 6, 4)
        assert K1_POINTS["A3"] not in {hl.points[i] for i in hl.vertices}

    def test_degenerate(self):
        pts = named(K1_POINTS, "A1 A8 A10")
        with pytest.raises(DegenerateHullError):
            hull3(pts)
        with pytest.raises(DegenerateHullError):
            facet_from_points((1, 1, 0, 1), 1, named(K1_POINTS, "A2 A6 A9"))

    def test_cube(self):
        cube = [(x, y, z, 1 - x - y - z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
        hl = hull3(cube + [(F(1, 2), F(1, 2), F(1, 2), F(-1, 2))])
        assert hl.f_vector == (8, 12, 6)
        assert all(len(c) == 4 for c in hl.faces)


class TestFacets:
    def test_k1_facet(self, ctx):
        _, K, L, _ = ctx("k1")
        f = facet_polytope((1, 1, 0, 1), 1, L, K)
        assert set(f.points) == named(K1_POINTS, "A1 A2 A3 A4 A5 A6 A7 A8 A9")
        assert f.f_vector == (6, 12, 8) and f.euler == 2
        kinds = {n: f.classify_point(K1_POINTS[n]) for n in ("A3", "A5", "A7", "A1")}
        assert kinds["A1"] == "vertex"
        assert kinds["A5"] == "interior"
        assert {kinds["A3"], kinds["A7"]} <= {"edge", "face"}

    def test_klein9_prism(self, ctx):
        _, K, L, _ = ctx("klein9")
        f = facet_polytope((6, 3, 1, 1), 1, L, K)
        assert len(f.points) == 14 and f.f_vector[0] == 12
        assert f.face_sizes() == [3] * 8 + [4] * 2 + [6] * 2
        assert set(f.non_vertices) == named(KLEIN9_POINTS, "G G1")
        assert f.euler == 2

    def test_klein9_tetra(self, ctx):
        _, K, L, _ = ctx("klein9")
        phi, lev, names = KLEIN9_TETRA
        f = facet_polytope(phi, lev, L, K)
        assert set(f.vertices) == named(KLEIN9_POINTS, " ".join(names))

    def test_points_inside_hull(self, ctx):
        _, K, L, _ = ctx("f15_45")
        f = facet_polytope((3, 6, 1, 1), 1, L, K)
        for p in f.points:
            assert all(ex.dot(eta, p) >= e for eta, e in f.face_planes)
        for j, (eta, e) in enumerate(f.face_planes):
            assert all(ex.dot(eta, v) == e for v in f.face_vertices(j))

    @pytest.mark.parametrize("name", ["k1", "k2", "f15_45", "klein9", "klein25"])
    def test_domain_cells_are_polytopes(self, dom, name):
        for c in dom(name).cells:
            assert c.euler == 2
            assert all(len(face) >= 3 for face in c.faces)
            assert all(sum(1 for a, b in c.edges if k in (a, b)) >= 3 for k in range(len(c.vertices)))


class TestPivot:
    @pytest.mark.parametrize("ridge,expected", [
        ("A1 A6 A8", K1_TETRA_1[:2]),
        ("A1 A4 A8", K1_TETRA_2[:2]),
    ])
    def test_k1(self, ctx, ridge, expected):
        _, K, L, _ = ctx("k1")
        f = facet_polytope((1, 1, 0, 1), 1, L, K)
        g = pivot(f, named(K1_POINTS, ridge), L, K)
        assert (g.functional, g.level) == expected

    def test_klein9(self, ctx):
        _, K, L, _ = ctx("klein9")
        f = facet_polytope((6, 3, 1, 1), 1, L, K)
        g = pivot(f, named(KLEIN9_POINTS, "F A A1"), L, K)
        assert (g.functional, g.level) == KLEIN9_TETRA[:2]

    @pytest.mark.parametrize("name", ["k1", "k2", "klein9"])
    def test_symmetry(self, ctx, name):
        p, K, L, _ = ctx(name)
        f = facet_polytope(*p.seed, L, K)
        for j in range(len(f.faces)):
            ridge = f.face_vertices(j)
            g = pivot(f, j, L, K)
            assert set(ridge) <= set(g.vertices)
            back = pivot(g, ridge, L, K)
            assert (back.functional, back.level) == (f.functional, f.level)


class TestUnitAction:
    @pytest.mark.parametrize("name", ["k1", "k2", "klein9"])
    def test_facets_to_facets(self, ctx, name):
        p, K, L, U = ctx(name)
        f = facet_polytope(*p.seed, L, K)
        for g in U.generators + (K.inv(U.generators[-1]),):
            image = transform_facet(f, g, K)
            direct = facet_polytope(image.functional, image.level, L, K)
            assert direct.points == image.points and direct.faces == image.faces
            assert verify_support(image.functional, image.level, L, K)


class TestSeedAndExport:
    @pytest.mark.parametrize("name", ["k1", "klein9"])
    def test_find_seed(self, ctx, name):
        _, K, L, _ = ctx(name)
        phi, lev = find_seed(L, K)
        assert facet_polytope(phi, lev, L, K).f_vector[0] >= 4

    def test_off(self, ctx):
        _, K, L, _ = ctx("k1")
        f = facet_polytope((1, 1, 0, 1), 1, L, K)
        text = facet_to_off(f)
        lines = [ln for ln in text.splitlines() if not ln.startswith("#")]
        assert lines[0] == "OFF" and lines[1] == "6 8 12"
        exact = [ln.split()[2:] for ln in text.splitlines() if ln.startswith("# v")]
        assert [tuple(F(x) for x in row) for row in exact] == list(f.vertices)
        faces = lines[2 + 6:]
        assert len(faces) == 8 and all(ln.split()[0] == "3" for ln in faces)
