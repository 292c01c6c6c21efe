import csv
import io
import math

import numpy as np
import pytest
import scipy.special
from hypothesis import given, strategies as st
from scipy import integrate

from oracles import haar_cross_moment
from rank2spectra.graphs import moment_multinomial
from rank2spectra.torus import INTERVALS, char_fund
from rank2spectra.weights import (FAMILIES, ellip_E, ellip_K, ellip_series, jx_haar_quad, jx_haar_raw,
                                  jx_t2, jx_t2_quad, jx_t2_second_form, jy_haar_quad, jy_haar_raw, jy_t2,
                                  jy_t2_quad, weight_for, weight_Haar, weight_T2, z_slice)

ALL = [(f, u) for f in FAMILIES for u in "xyz"]


@pytest.fixture(scope="module")
def weights():
    return {(f, u): weight_for(f, u) for f, u in ALL}


@pytest.fixture(scope="module")
def torus_grid():
    n = 600
    t = (np.arange(n) + 0.5) / n
    t1, t2 = np.meshgrid(t, t, indexing="ij")
    jm = 2 * (np.cos(2 * np.pi * (t1 + 2 * t2)) + np.cos(2 * np.pi * (2 * t1 - t2))
              - np.cos(2 * np.pi * (2 * t1 + t2)) - np.cos(2 * np.pi * (t1 - 2 * t2)))
    values = {u: char_fund(u, (t1, t2)).ravel() for u in "xyz"}
    return values, {"T2": np.full(n * n, 1.0 / (n * n)), "Haar": (jm * jm / 8).ravel() / (n * n)}


class TestElliptic:
    def test_special_values(self):
        assert ellip_K(0) == pytest.approx(math.pi / 2, abs=1e-15)
        assert ellip_E(0) == pytest.approx(math.pi / 2, abs=1e-15)
        assert ellip_E(1) == 1
        with pytest.raises(ValueError):
            ellip_K(1)

    @pytest.mark.parametrize("m", [0.5, 0.75])
    def test_series_oracle(self, m):
        assert ellip_K(m) == pytest.approx(ellip_series(m, "K"), abs=1e-12)
        assert ellip_E(m) == pytest.approx(ellip_series(m, "E"), abs=1e-12)

    def test_parameter_convention(self):
        # parameter m = k^2, not modulus k
        assert ellip_K(0.75) == pytest.approx(2.156515647499643, abs=1e-13)

    @given(st.floats(0, 0.999999))
    def test_matches_scipy(self, m):
        assert ellip_K(m) == pytest.approx(scipy.special.ellipk(m), rel=1e-13)
        assert ellip_E(m) == pytest.approx(scipy.special.ellipe(m), rel=1e-13)

    def test_vectorised(self):
        m = np.linspace(0, 0.9, 5)
        np.testing.assert_allclose(ellip_K(m), scipy.special.ellipk(m), rtol=1e-13)


class TestClosedForms:
    @given(st.floats(-3.999, 3.999).filter(lambda x: abs(x) > 1e-3))
    def test_t2_x_vs_slice_quadrature(self, x):
        assert jx_t2(x) == pytest.approx(jx_t2_quad(x), rel=1e-7)

    @given(st.floats(-2.999, 4.999).filter(lambda y: abs(y - 1) > 1e-3))
    def test_t2_y_vs_slice_quadrature(self, y):
        assert jy_t2(y) == pytest.approx(jy_t2_quad(y), rel=1e-7)

    @given(st.floats(-4, 4))
    def test_haar_x_vs_slice_quadrature(self, x):
        assert jx_haar_raw(x) == pytest.approx(jx_haar_quad(x), rel=1e-7, abs=1e-9)

    @given(st.floats(-3, 5))
    def test_haar_y_vs_slice_quadrature(self, y):
        assert jy_haar_raw(y) == pytest.approx(jy_haar_quad(y), rel=1e-7, abs=1e-9)

    def test_shift_identity(self):
        for y in np.linspace(-2.99, 4.99, 50):
            assert jy_t2(y) == pytest.approx(jx_t2(y - 1), abs=1e-8)

    @given(st.floats(-3.99, -0.01))
    def test_second_form_branches(self, x):
        assert jx_t2_second_form(x, "signed") == pytest.approx(jx_t2(x), rel=1e-12)
        assert jx_t2_second_form(x, "principal") == pytest.approx(-jx_t2(x), rel=1e-12)

    def test_continuity(self):
        for f, c in ((jx_t2, 0.0), (jy_haar_raw, 1.0), (jx_haar_raw, 0.0)):
            h = 1e-9
            left, right = f(c - h), f(c + h)
            if f is jx_t2:  # logarithmic peak: the two branches agree, both large
                assert left == pytest.approx(right, rel=1e-6)
            else:
                assert left == pytest.approx(f(c), abs=1e-6 * abs(f(c)))
                assert right == pytest.approx(f(c), abs=1e-6 * abs(f(c)))

    def test_haar_x_vanishes_at_ends(self):
        assert weight_Haar("x")(4.0) == pytest.approx(0, abs=1e-12)
        assert weight_Haar("x")(-4.0) == pytest.approx(0, abs=1e-12)

    def test_outside_support(self):
        for f, u in ALL:
            lo, hi = INTERVALS[u]
            w = weight_for(f, u)
            assert w(lo - 0.5) == 0 and w(hi + 0.5) == 0

    def test_z_slices(self):
        assert z_slice(0.0) == [(-1.0, 5 / 3)]
        assert len(z_slice(1.5)) == 2 and len(z_slice(5.0)) == 1


class TestWeights:
    @pytest.mark.parametrize("key", ALL)
    def test_mass_and_moments(self, weights, key):
        family, u = key
        mom = weights[key].moments(6)
        for m in range(7):
            expected = moment_multinomial(u, m) if family == "T2" else haar_cross_moment(u, m)
            assert mom[m] == pytest.approx(expected, abs=1e-5)
        assert mom[0] == pytest.approx(1, abs=1e-6)

    @pytest.mark.parametrize("key", ALL)
    def test_cdf_matches_torus_grid(self, weights, torus_grid, key):
        family, u = key
        values, grid_weights = torus_grid
        w = weights[key]
        lo, hi = INTERVALS[u]
        for t in np.linspace(lo, hi, 7)[1:-1]:
            cuts = [lo, *[b for b in w.breakpoints if lo < b < t], t]
            cdf = sum(integrate.quad(w, a, b, limit=200)[0] for a, b in zip(cuts, cuts[1:]))
            frac = float(np.sum(grid_weights[family][values[u] <= t]))
            assert cdf == pytest.approx(frac, abs=5e-3)

    @pytest.mark.parametrize("key", ALL)
    def test_nonnegative(self, weights, key):
        n = 1000 if key[1] != "z" else 200
        _, vals = weights[key].samples(n)
        assert np.all(vals >= 0)

    def test_z_pieces(self, weights):
        w = weights[("T2", "z")]
        assert w.pieces() == [(-2.0, 1.0), (1.0, 2.0), (2.0, 10.0)]
        parts = [integrate.quad(w, a, b, limit=200)[0] for a, b in w.pieces()]
        assert parts == pytest.approx([4 / 9, 2 / 9, 1 / 3], abs=1e-6)

    def test_printed_haar_masses(self):
        assert weight_Haar("x", "printed").mass() == pytest.approx(3.3155440709691795, abs=1e-8)
        assert weight_Haar("z", "printed").mass() == pytest.approx(2, abs=1e-6)
        assert weight_Haar("y", "printed").mass() == pytest.approx(1, abs=1e-6)

    def test_csv(self):
        text = weight_T2("x").to_csv(801)
        rows = list(csv.reader(io.StringIO(text)))
        assert rows[0] == ["x", "density"] and len(rows) == 802
        vals = np.array([float(r[1]) for r in rows[1:]])
        assert np.argmax(vals) == 400

    def test_bad_arguments(self):
        with pytest.raises(ValueError):
            weight_for("Lebesgue", "x")
        with pytest.raises(ValueError):
            weight_T2("w")
        with pytest.raises(ValueError):
            weight_Haar("x", "other")
        with pytest.raises(ValueError):
            weight_T2("x").samples(1)
