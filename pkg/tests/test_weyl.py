import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given

from conftest import float_angles, rational_angles
from rank2spectra.torus import TorusPoint
from rank2spectra.weyl import (D8, IDENTITY, T2, T4, DomainError, canonical, d8_act, d8_orbit,
                               in_domain_xy, in_domain_yz, in_fundamental_domain, jacobian_xy,
                               jacobian_xy_from_xy, jacobian_xy_from_yz, jacobian_xy_sine,
                               jacobian_xy_squared_from_xy, jacobian_yz, jacobian_yz_from_yz,
                               jacobian_yz_sine, matmul, psi_map)

PI2 = math.pi ** 2
F = Fraction


def inverse(g):
    (a, b), (c, d) = g
    det = a * d - b * c
    return ((d * det, -b * det), (-c * det, a * det))


class TestD8:
    def test_order_and_closure(self):
        assert len(D8) == 8
        assert IDENTITY in D8
        for g in D8:
            assert inverse(g) in D8
            for h in D8:
                assert matmul(g, h) in D8

    def test_actions(self):
        p = TorusPoint(F(1, 8), F(1, 4))
        assert d8_act(T2, p) == TorusPoint(F(1, 4), F(1, 8))
        assert d8_act(T4, p) == TorusPoint(F(1, 4), F(7, 8))
        assert d8_act(IDENTITY, p) == p

    @pytest.mark.parametrize("theta, size", [
        ((0, 0), 1), ((F(1, 12), F(2, 12)), 8), ((F(1, 8), F(1, 8)), 4), ((F(1, 2), F(1, 2)), 1),
    ])
    def test_orbit_sizes(self, theta, size):
        assert len(d8_orbit(TorusPoint(*theta))) == size

    @given(rational_angles(), rational_angles())
    def test_orbit_is_a_class(self, a, b):
        p = TorusPoint(a, b)
        orbit = d8_orbit(p)
        assert 8 % len(orbit) == 0
        assert all(d8_orbit(q) == orbit for q in orbit)
        rep = canonical(p)
        assert rep in orbit and in_fundamental_domain(rep)
        assert sum(in_fundamental_domain(q) for q in orbit) == 1


class TestJacobianXY:
    def test_values(self):
        p = TorusPoint(F(1, 8), F(1, 4))
        assert jacobian_xy(p) == pytest.approx(16 * PI2, rel=1e-12)
        assert jacobian_xy_sine(p) == pytest.approx(16 * PI2, rel=1e-12)
        assert abs(jacobian_xy(TorusPoint(F(1, 12), F(2, 12)))) / (8 * PI2) == pytest.approx(
            (3 - math.sqrt(3)) / 2, rel=1e-12)
        assert jacobian_xy_sine(TorusPoint(0, F(1, 3))) == 0
        assert abs(jacobian_xy_sine(TorusPoint(F(1, 4), F(1, 4)))) < 1e-12

    def test_factored_values(self):
        assert jacobian_xy_from_xy(math.sqrt(2), 1) == pytest.approx(16 * PI2, rel=1e-12)
        assert jacobian_xy_from_xy(0, -3) == 0
        assert jacobian_xy_from_xy(4, 5) == pytest.approx(0, abs=1e-9)

    def test_outside_domain(self):
        with pytest.raises(DomainError):
            jacobian_xy_from_xy(0, 3)
        assert not in_domain_xy(0, 3)

    @given(rational_angles())
    def test_vanishes_on_walls(self, t):
        for p in [(t, t), (t, 0), (0, t), (t, -t)]:
            assert abs(jacobian_xy(TorusPoint(*p))) < 1e-9

    @given(float_angles, float_angles)
    def test_forms_agree(self, t1, t2):
        j = jacobian_xy((t1, t2))
        assert jacobian_xy_sine((t1, t2)) == pytest.approx(j, abs=1e-8 * 64 * PI2)
        x, y = psi_map("xy", (t1, t2))
        assert in_domain_xy(x, y)
        assert jacobian_xy_squared_from_xy(x, y) == pytest.approx(j * j, abs=1e-8 * (64 * PI2) ** 2)
        assert jacobian_xy_from_xy(x, y) == pytest.approx(abs(j), abs=1e-6 * 64 * PI2)

    @given(float_angles, float_angles)
    def test_square_is_weyl_invariant(self, t1, t2):
        j2 = jacobian_xy((t1, t2)) ** 2
        for (a, b), (c, d) in D8:
            q = (a * t1 + b * t2, c * t1 + d * t2)
            assert jacobian_xy(q) ** 2 == pytest.approx(j2, rel=1e-9, abs=1e-9)

    def test_printed_sign_is_wrong(self):
        # the product with (4y - x^2 - 4) is negative at an interior point
        x, y = math.sqrt(2), 1.0
        printed = 16 * math.pi ** 4 * (y + 2 * x + 3) * (y - 2 * x + 3) * (4 * y - x * x - 4)
        assert printed < 0
        assert jacobian_xy_squared_from_xy(x, y) == pytest.approx(256 * math.pi ** 4)


class TestJacobianYZ:
    def test_values(self):
        p = TorusPoint(F(1, 8), F(1, 4))
        assert jacobian_yz(p) ** 2 == pytest.approx(2048 * math.pi ** 4, rel=1e-12)
        assert jacobian_yz_from_yz(1, 0) == pytest.approx(32 * math.sqrt(2) * PI2, rel=1e-12)

    @given(rational_angles())
    def test_vanishes_on_extra_lines(self, t):
        assert abs(jacobian_yz(TorusPoint(t, F(1, 2) - t))) < 1e-9
        assert abs(jacobian_yz(TorusPoint(t, F(1, 2) + t))) < 1e-9

    @given(float_angles, float_angles)
    def test_relation_to_xy(self, t1, t2):
        y, z = psi_map("yz", (t1, t2))
        assert in_domain_yz(y, z)
        jyz = jacobian_yz((t1, t2))
        jxy = jacobian_xy((t1, t2))
        assert jacobian_yz_sine((t1, t2)) == pytest.approx(jyz, abs=1e-8 * 128 * PI2)
        assert abs(jyz) == pytest.approx(2 * math.sqrt(max(z + y + 1, 0)) * abs(jxy), abs=1e-6 * 128 * PI2)
        assert jacobian_yz_from_yz(y, z) == pytest.approx(abs(jyz), abs=1e-6 * 128 * PI2)
        assert jacobian_xy_from_yz(y, z) == pytest.approx(abs(jxy), abs=1e-6 * 64 * PI2)


class TestPsiMap:
    def test_images(self):
        assert psi_map("xy", TorusPoint(0, 0)) == pytest.approx((4, 5))
        assert psi_map("xy", TorusPoint(F(1, 2), 0)) == pytest.approx((0, -3), abs=1e-12)
        assert psi_map("yz", TorusPoint(F(1, 2), F(1, 2))) == pytest.approx((5, 10))

    def test_bad_pair(self):
        with pytest.raises(ValueError):
            psi_map("xz", TorusPoint(0, 0))

    def test_vectorised(self):
        t = np.linspace(0, 1, 11)
        x, y = psi_map("xy", (t, t[::-1]))
        assert x.shape == y.shape == (11,)
