import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import float_angles, rational_angles
from rank2spectra.graphs import moment_multinomial
from rank2spectra.torus import (LaurentPoly2, TorusPoint, Weight, char_fund, char_fund_poly,
                                char_general, weyl_character_numeric)
from rank2spectra.weyl import D8

weights = st.builds(Weight, st.integers(0, 5), st.integers(0, 5))
polys = st.dictionaries(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), st.integers(-5, 5),
                        max_size=6).map(LaurentPoly2)


def brute_dimension(w: Weight) -> int:
    # independent oracle: C2 Weyl dimension as a product over positive roots in the epsilon basis
    lam = np.array(w.partition) + np.array([2, 1])
    rho = np.array([2, 1])
    roots = [(1, -1), (1, 1), (2, 0), (0, 2)]
    num = math.prod(Fraction(int(np.dot(r, lam)), int(np.dot(r, rho))) for r in roots)
    return int(num)


class TestWeight:
    @given(st.integers(0, 50), st.integers(0, 50))
    def test_partition_round_trip(self, l1, l2):
        w = Weight(l1, l2)
        mu1, mu2 = w.partition
        assert mu1 >= mu2 >= 0
        assert Weight.from_partition(mu1, mu2) == w

    def test_rejects_bad_labels(self):
        with pytest.raises(ValueError):
            Weight(-1, 0)
        with pytest.raises(ValueError):
            Weight.from_partition(1, 2)

    @given(weights)
    def test_dimension_matches_root_product(self, w):
        assert w.dimension() == brute_dimension(w)


class TestTorusPoint:
    def test_reduces_mod_one(self):
        assert TorusPoint(Fraction(5, 4), -1) == TorusPoint(Fraction(1, 4), 0)

    def test_rejects_floats(self):
        with pytest.raises(TypeError):
            TorusPoint(0.25, 0)

    @given(rational_angles(), rational_angles())
    def test_serialisation_is_exact(self, a, b):
        p = TorusPoint(a, b)
        assert 0 <= p.theta1 < 1 and 0 <= p.theta2 < 1
        assert TorusPoint.from_json(p.as_json()) == p
        assert TorusPoint.from_pairs(p.as_pairs()) == p
        assert p.as_json() == [[a.numerator, a.denominator], [b.numerator, b.denominator]]


class TestCharFund:
    @pytest.mark.parametrize("u, p, expected", [
        ("x", (0, 0), 4), ("y", (0, 0), 5), ("z", (0, 0), 10),
        ("x", (Fraction(1, 2), 0), 0), ("y", (Fraction(1, 2), 0), -3), ("z", (Fraction(1, 2), 0), 2),
    ])
    def test_values(self, u, p, expected):
        assert char_fund(u, TorusPoint(*p)) == pytest.approx(expected, abs=1e-12)

    def test_unknown_generator(self):
        with pytest.raises(ValueError):
            char_fund("w", TorusPoint(0, 0))
        with pytest.raises(ValueError):
            char_fund_poly("w")

    def test_polys(self):
        assert char_fund_poly("x").coeffs == {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1}
        assert char_fund_poly("y").coeffs == {(0, 0): 1, (1, 1): 1, (-1, -1): 1, (1, -1): 1, (-1, 1): 1}
        assert char_fund_poly("z").coeffs == {(0, 0): 2, (2, 0): 1, (-2, 0): 1, (0, 2): 1, (0, -2): 1,
                                              (1, 1): 1, (-1, -1): 1, (1, -1): 1, (-1, 1): 1}

    @given(float_angles, float_angles, st.sampled_from("xyz"))
    def test_poly_matches_numeric(self, t1, t2, u):
        val = char_fund_poly(u).evaluate((t1, t2))
        assert abs(val.imag) < 1e-12
        assert val.real == pytest.approx(char_fund(u, (t1, t2)), abs=1e-12)

    def test_vectorises(self):
        t = np.linspace(0, 1, 7)
        assert char_fund("z", (t, t)).shape == (7,)

    @pytest.mark.parametrize("u", "xyz")
    def test_constant_terms_are_multinomial_moments(self, u):
        for m in range(13):
            assert (char_fund_poly(u) ** m).constant_term() == moment_multinomial(u, m)


class TestCharGeneral:
    def test_small_values(self):
        assert char_general(Weight(0, 0)) == LaurentPoly2.constant(1)
        assert char_general(Weight(0, 1)).evaluate((0, 0)).real == pytest.approx(5)
        assert char_general(Weight.from_partition(2, 1)).evaluate((0, 0)).real == pytest.approx(16)

    def test_phi3_identity(self):
        x, y = char_fund_poly("x"), char_fund_poly("y")
        assert char_general(Weight.from_partition(2, 0)) == x * x - y - 1
        assert char_general(Weight.from_partition(2, 0)) == char_fund_poly("z")

    @given(weights)
    def test_coefficient_sum_is_dimension(self, w):
        chi = char_general(w)
        assert sum(v for _, v in chi.items()) == brute_dimension(w)
        assert all(v > 0 for _, v in chi.items())

    @given(weights)
    def test_exactly_weyl_invariant(self, w):
        chi = char_general(w)
        for g in D8:
            assert chi.substitute(g) == chi

    @given(weights, float_angles, float_angles)
    def test_real_and_matches_weyl_formula(self, w, t1, t2):
        val = complex(char_general(w).evaluate((t1, t2)))
        scale = w.dimension()
        assert abs(val.imag) < 1e-12 * scale
        s = math.sin
        denom = s(4 * math.pi * t1) * s(2 * math.pi * t2) - s(4 * math.pi * t2) * s(2 * math.pi * t1)
        if abs(denom) > 1e-3:
            assert weyl_character_numeric(w, (t1, t2)) == pytest.approx(val.real, abs=1e-9 * scale)

    def test_thread_safe_memo(self):
        from concurrent.futures import ThreadPoolExecutor
        labels = list(itertools.product(range(7), repeat=2))
        with ThreadPoolExecutor(8) as pool:
            out = list(pool.map(lambda ab: char_general(Weight(*ab)), labels))
        assert [sum(v for _, v in c.items()) for c in out] == [Weight(*ab).dimension() for ab in labels]


class TestLaurentPoly:
    @given(polys, polys, polys)
    def test_ring_axioms(self, a, b, c):
        assert (a + b) * c == a * c + b * c
        assert a * b == b * a
        assert a - a == LaurentPoly2()
        assert (a * b).constant_term() == sum(v * b.coeffs.get((-i, -j), 0) for (i, j), v in a.items())

    @given(polys)
    def test_no_zero_coefficients(self, a):
        assert all(v != 0 for _, v in (a * a - a).items())

    @given(polys, st.integers(0, 4))
    def test_power(self, a, n):
        expected = LaurentPoly2.constant(1)
        for _ in range(n):
            expected = expected * a
        assert a ** n == expected

    def test_big_integers(self):
        assert (char_fund_poly("z") ** 30).constant_term() == moment_multinomial("z", 30)
        assert moment_multinomial("z", 30) > 2 ** 63
