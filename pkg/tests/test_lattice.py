import itertools
from fractions import Fraction

import numpy as np
import pytest

from oracles import brute_force_slab
from quarticfd import _exact as ex
from quarticfd.field import ONE, BiquadraticField
from quarticfd.lattice import (
    IntegralLattice, UnboundedSlabError, enumerate_slab, lattice_from_generators, load_lattice, points_on_level,
    preset_lattice, read_lattice_file,
)

K1 = BiquadraticField(4, 1)
K2 = BiquadraticField(4, 2)
F = Fraction


class TestPresets:
    def test_identity(self):
        lat = preset_lattice("k1")
        assert lat.basis == ex.fmat(np.eye(4, dtype=int).tolist())
        assert lat.contains((1, 2, 3, 4))
        assert not lat.contains((F(1, 2), 0, 0, 0))

    def test_f15(self):
        lat = preset_lattice("f15_45")
        assert lat.contains((F(1, 6), 0, 0, F(1, 2)))
        assert lat.contains((0, F(1, 6), F(1, 2), F(1, 2)))
        assert not lat.contains((F(1, 6), 0, 0, 0))
        assert lat.covolume == F(1, 36)

    def test_klein9(self):
        lat = preset_lattice("klein9")
        assert lat.contains((0, F(1, 3), -1, 1))
        assert lat.contains((F(-1, 3), F(4, 3), -1, 0))
        assert not lat.contains((0, 0, F(1, 3), 0))

    def test_shintani(self):
        lat = preset_lattice("shintani(3)")
        assert lat.contains((F(4, 3), F(-4, 3), F(-47, 3), F(50, 3)))
        assert preset_lattice("shintani3") == lat
        assert preset_lattice("shintani1").covolume == 1

    @pytest.mark.parametrize("name,two_a,b", [
        ("k1", 4, 1), ("k2", 4, 2), ("f15_45", 15, 45), ("shintani1", 5, 5), ("shintani3", 13, 13),
        ("klein9", 9, 9), ("klein25", 25, 25), ("klein49", 49, 49), ("k11", 125, 125),
    ])
    def test_orders(self, name, two_a, b):
        assert preset_lattice(name).verify_order(BiquadraticField(two_a, b))

    def test_not_an_order(self):
        half = IntegralLattice(tuple(tuple(F(int(i == j), 2) for j in range(4)) for i in range(4)))
        assert not half.verify_order(K1)

    def test_unknown(self):
        with pytest.raises(KeyError):
            preset_lattice("nope")

    def test_membership_linear(self):
        lat = preset_lattice("f15_45")
        u, v = (F(1, 6), 0, 0, F(1, 2)), (0, F(1, 6), F(1, 2), F(1, 2))
        assert lat.contains(tuple(3 * a - 5 * b for a, b in zip(u, v)))

    def test_file_roundtrip(self, tmp_path):
        lat = preset_lattice("f15_45")
        path = tmp_path / "lat.txt"
        path.write_text("# f15\n" + lat.to_text())
        assert read_lattice_file(path).basis == lat.basis
        assert load_lattice(str(path)).basis == lat.basis

    def test_generators(self):
        lat = lattice_from_generators([(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1), (F(1, 2), 0, 0, F(1, 2))])
        assert lat.covolume == F(1, 2)


K1_FACET = {(-2, 0, 6, 3), (-2, 3, 2, 0), (-1, 0, 3, 2), (-1, 0, 4, 2), (-1, 1, 2, 1),
            (-1, 2, 0, 0), (-1, 2, 1, 0), (0, 0, 0, 1), (0, 1, 0, 0)}


def _as_set(points):
    return {tuple(int(x) if x.denominator == 1 else x for x in p) for p in points}


class TestSlabs:
    def test_k1_nine_points(self):
        slab = enumerate_slab((1, 1, 0, 1), 1, preset_lattice("k1"), K1)
        assert _as_set(slab.points) == K1_FACET
        assert not slab.below_level()

    def test_k1_tetrahedron(self):
        pts = points_on_level((8, 5, 2, 2), 2, preset_lattice("k1"), K1)
        assert _as_set(pts) == {(-2, 0, 6, 3), (-1, 0, 3, 2), (-1, 2, 0, 0), (0, 0, 0, 1), (0, 0, -1, 2)}

    def test_k2_octahedron_plane(self):
        pts = _as_set(points_on_level((3, 2, 1, 1), 1, preset_lattice("k2"), K2))
        assert len(pts) == 7 and (0, 0, -1, 2) in pts and (-2, 4, 0, -1) in pts

    def test_shintani3_count(self):
        f = BiquadraticField(13, 13)
        assert len(enumerate_slab((2, 2, 1, 1), 1, preset_lattice("shintani3"), f).points) == 36

    def test_klein9_planes(self):
        f = BiquadraticField(9, 9)
        pts = enumerate_slab((6, 3, 1, 1), 1, preset_lattice("klein9"), f).points
        assert len(pts) == 14
        levels = [9 * p[0] + 3 * p[1] + p[2] for p in pts]
        assert levels.count(0) == 7 and levels.count(1) == 7

    def test_unbounded(self):
        with pytest.raises(UnboundedSlabError):
            enumerate_slab((0, 0, 0, 1), 1, preset_lattice("k1"), K1)

    def test_monotone(self):
        lat = preset_lattice("k2")
        small = set(enumerate_slab((1, 2, 1, 2), 2, lat, K2).points)
        large = set(enumerate_slab((1, 2, 1, 2), 5, lat, K2).points)
        assert small <= large
        assert set(points_on_level((1, 2, 1, 2), 3, lat, K2)) == {
            p for p in large if ex.dot((1, 2, 1, 2), p) == 3}

    def test_exact_recheck(self):
        lat = preset_lattice("f15_45")
        f = BiquadraticField(15, 45)
        for p in enumerate_slab((3, 6, 1, 1), 4, lat, f).points:
            assert lat.contains(p) and f.is_strictly_positive(p) and ex.dot((3, 6, 1, 1), p) <= 4

    def test_sorted(self):
        pts = enumerate_slab((1, 1, 0, 1), 3, preset_lattice("k1"), K1).points
        assert list(pts) == sorted(pts)


@pytest.mark.parametrize("name,two_a,b,phi,level", [
    ("k1", 4, 1, (1, 1, 0, 1), 2),
    ("k2", 4, 2, (1, 2, 1, 2), 4),
    ("k2", 4, 2, (3, 2, 1, 1), 2),
    ("klein9", 9, 9, (6, 3, 1, 1), 1),
])
def test_completeness_against_box_scan(name, two_a, b, phi, level):
    lat, field = preset_lattice(name), BiquadraticField(two_a, b)
    expected, scanned = brute_force_slab(phi, level, lat, field)
    assert scanned < 3_000_000
    assert set(enumerate_slab(phi, level, lat, field).points) == expected
