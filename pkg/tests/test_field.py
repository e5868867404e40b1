import itertools
import random
from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.polys.numberfields.galoisgroups import galois_group

from quarticfd import _exact as ex
from quarticfd.field import (
    ONE, BiquadraticField, FieldError, FieldParams, GaloisType, classify_biquadratic, element, isolate_roots,
    is_reducible,
)

K1 = BiquadraticField(4, 1)
K2 = BiquadraticField(4, 2)
KLEIN9 = BiquadraticField(9, 9)

small = st.integers(-12, 12)
elements = st.tuples(small, small, small, small)


def _sympy_kind(two_a, b):
    x = sympy.symbols("x")
    poly = sympy.Poly(x**4 - two_a * x**2 + b, x)
    _, factors = sympy.factor_list(poly.as_expr())
    if len(factors) > 1 or factors[0][1] > 1:
        return GaloisType.REDUCIBLE
    a = Fraction(two_a, 2)
    if a * a - b <= 0:
        return GaloisType.NOT_TOTALLY_REAL
    group, _ = galois_group(poly)
    if group.order() == 8:
        return GaloisType.NON_GALOIS
    return GaloisType.CYCLIC if group.is_cyclic else GaloisType.KLEIN


class TestClassification:
    def test_examples(self):
        k1 = classify_biquadratic(FieldParams(4, 1))
        assert k1.kind == GaloisType.KLEIN and abs(k1.c) == 1
        k2 = classify_biquadratic(FieldParams(4, 2))
        assert k2.kind == GaloisType.CYCLIC and abs(k2.c) == 2
        assert classify_biquadratic(FieldParams(3, 1)).kind == GaloisType.REDUCIBLE
        f = classify_biquadratic(FieldParams(15, 45))
        assert f.kind == GaloisType.CYCLIC and abs(f.c) == Fraction(45, 2)

    def test_square_invariants(self):
        for two_a, b in itertools.product(range(1, 21), repeat=2):
            p = FieldParams(two_a, b)
            cl = classify_biquadratic(p)
            if cl.kind == GaloisType.CYCLIC:
                assert cl.c**2 == b * p.d
            elif cl.kind == GaloisType.KLEIN:
                assert cl.c**2 == b

    @pytest.mark.parametrize("two_a", range(1, 21))
    def test_against_sympy(self, two_a):
        for b in range(1, 21):
            assert classify_biquadratic(FieldParams(two_a, b)).kind == _sympy_kind(two_a, b), (two_a, b)

    def test_family_irreducible(self):
        for n in range(1, 16, 2):
            assert not is_reducible(FieldParams(n * n + 4, n * n + 4))


class TestRoots:
    def test_k1_intervals(self):
        rs = isolate_roots(K1.params, Fraction(1, 1000))
        (lo1, hi1), (lo2, hi2) = rs.intervals[:2]
        assert Fraction(193, 100) <= lo1 and hi1 <= Fraction(194, 100)
        assert Fraction(51, 100) <= lo2 and hi2 <= Fraction(52, 100)

    @pytest.mark.parametrize("field", [K1, K2, KLEIN9])
    def test_mirror_and_width(self, field):
        prec = Fraction(1, 2**40)
        rs = field.roots(prec)
        assert rs.intervals[3] == (-rs.intervals[0][1], -rs.intervals[0][0])
        assert rs.intervals[2] == (-rs.intervals[1][1], -rs.intervals[1][0])
        for lo, hi in rs.intervals:
            assert hi - lo <= prec
            assert field.params.poly(lo) * field.params.poly(hi) <= 0
        for (_, hi), (lo, _) in zip(rs.intervals[1:], rs.intervals[:-1]):
            assert hi < lo

    def test_closed_form(self):
        rs = K2.roots(Fraction(1, 2**50))
        exact = [mpmath.sqrt(2 + mpmath.sqrt(2)), mpmath.sqrt(2 - mpmath.sqrt(2))]
        for (lo, hi), r in zip(rs.intervals, exact):
            assert float(lo) <= r <= float(hi) + 1e-15

    def test_not_totally_real(self):
        with pytest.raises(FieldError):
            BiquadraticField(2, 5).roots()


class TestArithmetic:
    def test_basic(self):
        assert K1.mul((0, 0, 1, 0), (0, 0, 1, 0)) == element(0, 1, 0, 0)
        assert K1.mul((0, 1, 0, 0), (-2, 0, 6, 3)) == element(-2, 3, 2, 0)
        assert K1.mul(ONE, (3, 1, 4, 1)) == element(3, 1, 4, 1)

    def test_norm_trace(self):
        assert K1.norm_trace(ONE) == (1, 4)
        assert K1.norm((-1, 0, 3, 2)) == 4
        assert K1.norm((-1, 1, 2, 1)) == 9
        assert K2.norm((1, 0, -3, 2)) == 2

    def test_inverse(self):
        assert K1.inv(ONE) == ONE
        assert K1.inv((0, 1, 0, 0)) == element(0, -1, 0, 4)
        assert K2.inv((0, 1, 0, 0)) == element(0, Fraction(-1, 2), 0, 2)
        with pytest.raises(ZeroDivisionError):
            K1.inv((0, 0, 0, 0))

    @settings(max_examples=60, deadline=None)
    @given(elements, elements, elements)
    def test_ring_axioms(self, u, v, w):
        for F in (K1, K2):
            assert F.mul(u, v) == F.mul(v, u)
            assert F.mul(F.mul(u, v), w) == F.mul(u, F.mul(v, w))
            assert F.mul(u, F.add(v, w)) == F.add(F.mul(u, v), F.mul(u, w))

    @pytest.mark.parametrize("field", [K1, K2, KLEIN9])
    def test_norm_multiplicative_500(self, field):
        rng = random.Random(20240501)
        for _ in range(500):
            u = tuple(rng.randint(-9, 9) for _ in range(4))
            v = tuple(rng.randint(-9, 9) for _ in range(4))
            assert field.norm(field.mul(u, v)) == field.norm(u) * field.norm(v)

    @settings(max_examples=40, deadline=None)
    @given(elements)
    def test_inverse_roundtrip(self, v):
        if K2.norm(v) != 0:
            assert K2.mul(v, K2.inv(v)) == ONE

    def test_norm_is_conjugate_product(self):
        rng = random.Random(7)
        for _ in range(50):
            v = tuple(rng.randint(-5, 5) for _ in range(4))
            conj = K2.conjugates_mp(v, 100)
            assert abs(float(mpmath.fprod(conj)) - float(K2.norm(v))) < 1e-6 * (1 + abs(float(K2.norm(v))))


class TestAutomorphisms:
    def test_k1_generators(self):
        images = sorted(s.image_of_x for s in K1.generator_automorphisms())
        assert images == sorted([element(1, 0, -4, 0), element(0, 0, -1, 0)])
        for s in K1.generator_automorphisms():
            assert s.order == 2
            assert s(s((0, 0, 1, 0))) == element(0, 0, 1, 0)

    def test_k2_generator(self):
        (s,) = K2.generator_automorphisms()
        assert s.image_of_x == element(1, 0, -3, 0)
        assert s.order == 4
        assert s(s((0, 0, 1, 0))) == element(0, 0, -1, 0)

    def test_family_generator(self):
        for a in range(0, 4):
            n = 2 * a + 1
            F = BiquadraticField(n * n + 4, n * n + 4)
            want = element(Fraction(1, n), 0, -Fraction(4 * a * a + 4 * a + 3, n), 0)
            assert want in [s.image_of_x for s in F.generator_automorphisms()]

    def test_f15_generator(self):
        (s,) = BiquadraticField(15, 45).generator_automorphisms()
        assert s.image_of_x == element(Fraction(1, 3), 0, -3, 0)

    @pytest.mark.parametrize("field", [K1, K2, KLEIN9])
    def test_homomorphism_and_order(self, field):
        rng = random.Random(11)
        for s in field.galois_group():
            m = s.matrix
            power = m
            for _ in range(s.order - 1):
                power = ex.matmul(power, m)
            assert power == ex.fmat([[int(i == j) for j in range(4)] for i in range(4)])
            assert s(ONE) == ONE
            for _ in range(20):
                u = tuple(rng.randint(-6, 6) for _ in range(4))
                v = tuple(rng.randint(-6, 6) for _ in range(4))
                assert s(field.mul(u, v)) == field.mul(s(u), s(v))
                assert field.norm(s(u)) == field.norm(u)

    @pytest.mark.parametrize("field", [K1, K2, KLEIN9])
    def test_permutes_roots(self, field):
        assert len(field.galois_group()) == 4
        for s in field.galois_group():
            perm = field.root_permutation(s)
            assert sorted(perm) == [0, 1, 2, 3]

    def test_non_galois_refused(self):
        with pytest.raises(FieldError):
            BiquadraticField(5, 3).generator_automorphisms()


class TestSigns:
    def test_examples(self):
        assert K1.sign_vector(ONE) == (1, 1, 1, 1)
        assert K1.sign_vector((0, 0, 1, 0)) == (1, 1, -1, -1)
        assert K1.is_strictly_positive((-2, 0, 6, 3))

    def test_exact_zero(self):
        assert K1.sign_vector((0, 0, 0, 0)) == (0, 0, 0, 0)
        # tiny but nonzero conjugates are resolved exactly
        u = K1.power((0, 1, 0, 0), 30)
        tiny = K1.inv(u)
        assert K1.sign_vector(tiny) == (1, 1, 1, 1)
        # tiny(x1) = (2 + sqrt3)^-30 ~ 7.0e-18
        assert K1.sign_vector(K1.sub(tiny, K1.scale(Fraction(1, 10**18), ONE))) == (1, 1, 1, 1)
        assert K1.sign_vector(K1.sub(tiny, K1.scale(Fraction(1, 10**17), ONE))) == (-1, 1, 1, -1)

    @pytest.mark.parametrize("field", [K1, K2, KLEIN9])
    def test_multiplicative(self, field):
        rng = random.Random(3)
        for _ in range(200):
            u = tuple(rng.randint(-7, 7) for _ in range(4))
            v = tuple(rng.randint(-7, 7) for _ in range(4))
            su, sv = field.sign_vector(u), field.sign_vector(v)
            assert field.sign_vector(field.mul(u, v)) == tuple(a * b for a, b in zip(su, sv))

    def test_matches_floats(self):
        rng = random.Random(5)
        for _ in range(200):
            v = tuple(rng.randint(-9, 9) for _ in range(4))
            conj = K2.conjugates(v)
            signs = K2.sign_vector(v)
            for c, s in zip(conj, signs):
                if abs(c) > 1e-9:
                    assert (c > 0) == (s > 0)


def _vandermonde_weights(field, phi, prec=120):
    """w with phi(v) = sum_i w_i v(x_i), by a high-precision linear solve."""
    with mpmath.workprec(prec):
        roots = [mpmath.mpf(float(lo + hi) / 2) for lo, hi in field.roots(Fraction(1, 2**110)).intervals]
        # refine with Newton on the quartic for full precision
        a2, b = mpmath.mpf(field.params.two_a), mpmath.mpf(field.params.b)
        roots = [mpmath.findroot(lambda t: t**4 - a2 * t**2 + b, r) for r in roots]
        V = mpmath.matrix([[r**3, r**2, r, 1] for r in roots]).T
        return mpmath.lu_solve(V, mpmath.matrix([mpmath.mpf(float(x)) for x in phi]))


class TestDual:
    def test_signs_against_vandermonde(self):
        lam = K1.dual_element((1, 1, 0, 1))
        assert K1.is_strictly_positive(lam)
        w = _vandermonde_weights(K1, (1, 1, 0, 1))
        assert all(x > 0 for x in w)
        lam0 = K1.dual_element((0, 0, 0, 1))
        w0 = _vandermonde_weights(K1, (0, 0, 0, 1))
        assert set(K1.sign_vector(lam0)) == {-1, 1}
        assert tuple(int(mpmath.sign(x)) for x in w0) == K1.sign_vector(lam0)

    @pytest.mark.parametrize("field", [K1, K2, KLEIN9])
    def test_conjugates_are_weights(self, field):
        rng = random.Random(13)
        for _ in range(5):
            phi = tuple(rng.randint(-5, 5) for _ in range(4))
            if not any(phi):
                continue
            w = _vandermonde_weights(field, phi)
            conj = field.conjugates_mp(field.dual_element(phi), 110)
            assert all(abs(a - b) < 1e-20 * (1 + abs(b)) for a, b in zip(conj, w))

    @pytest.mark.parametrize("field", [K1, K2, KLEIN9])
    def test_linearity_and_reconstruction(self, field):
        rng = random.Random(17)
        for _ in range(10):
            phi = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4))
            psi = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(4))
            total = tuple(x + y for x, y in zip(phi, psi))
            assert field.dual_element(total) == field.add(field.dual_element(phi), field.dual_element(psi))
        phi = (3, -1, 2, 5)
        lam = field.dual_element(phi)
        for _ in range(100):
            v = tuple(rng.randint(-20, 20) for _ in range(4))
            assert field.trace(field.mul(lam, v)) == ex.dot(phi, v)
            approx = sum(a * b for a, b in zip(field.conjugates(lam), field.conjugates(v)))
            assert abs(approx - float(ex.dot(phi, v))) < 1e-8 * (1 + abs(approx))

    def test_requires_galois(self):
        with pytest.raises(FieldError):
            BiquadraticField(5, 3).dual_element((1, 0, 0, 0))
