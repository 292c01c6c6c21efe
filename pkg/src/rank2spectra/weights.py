"""One-dimensional spectral weights on I_x, I_y, I_z and complete elliptic integrals.

Elliptic integrals use the parameter convention K(m) = int_0^{pi/2} (1 - m sin^2)^{-1/2}.
The x and y weights have closed forms in K and E; the z weights are slice
integrals over the (y, z) domain, done numerically.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy import integrate

from .torus import INTERVALS
from .weyl import PI2, PI4

FAMILIES = ("T2", "Haar")
_AGM_MAXITER = 60


# elliptic integrals ----------------------------------------------------------

def _agm_terms(m):
    m = np.asarray(m, dtype=float)
    if np.any((m < 0) | (m > 1)):
        raise ValueError("elliptic parameter must lie in [0, 1]")
    a = np.ones_like(m)
    b = np.sqrt(1.0 - m)
    c2sum = 0.5 * m  # 2^{n-1} c_n^2 at n = 0
    power = 0.5
    for _ in range(_AGM_MAXITER):
        if np.all(np.abs(a - b) <= 1e-16 * a):
            break
        c = 0.5 * (a - b)
        a, b = 0.5 * (a + b), np.sqrt(a * b)
        power *= 2
        c2sum = c2sum + power * c * c
    return a, c2sum


def ellip_K(m):
    """Complete elliptic integral of the first kind, by the arithmetic-geometric mean."""
    m = np.asarray(m, dtype=float)
    if np.any(m >= 1):
        raise ValueError("K(m) diverges at m = 1")
    a, _ = _agm_terms(m)
    out = math.pi / (2 * a)
    return float(out) if out.ndim == 0 else out


def ellip_E(m):
    """Complete elliptic integral of the second kind; E(1) = 1."""
    m = np.asarray(m, dtype=float)
    one = m >= 1
    safe = np.where(one, 0.0, m)
    a, c2sum = _agm_terms(safe)
    out = np.where(one, 1.0, math.pi / (2 * a) * (1.0 - c2sum))
    return float(out) if out.ndim == 0 else out


def ellip_series(m: float, kind: str = "K", terms: int = 4000) -> float:
    """Hypergeometric series for K or E; slow near m = 1, used only as an oracle."""
    total, coef = 0.0, 1.0
    for n in range(terms):
        if n:
            coef *= ((2 * n - 1) / (2 * n)) ** 2
        term = coef * m ** n
        total += term if kind == "K" else term / (1 - 2 * n)
        if abs(term) < 1e-18:
            break
    return math.pi / 2 * total


# quadrature ------------------------------------------------------------------

def _split_sqrt(f, a, b, vector=False, epsabs=1e-11, epsrel=1e-11):
    """int_a^b f with t = a + s^2 on the left half and t = b - s^2 on the right half.

    Turns inverse-square-root and logarithmic endpoint behaviour into something smooth.
    """
    if b <= a:
        return 0.0
    c = 0.5 * (a + b)
    r = math.sqrt(c - a)

    def left(s):
        return f(a + s * s) * 2 * s

    def right(s):
        return f(b - s * s) * 2 * s

    if vector:
        lv = integrate.quad_vec(left, 0.0, r, epsabs=epsabs, epsrel=epsrel)[0]
        rv = integrate.quad_vec(right, 0.0, r, epsabs=epsabs, epsrel=epsrel)[0]
        return lv + rv
    lv = integrate.quad(left, 0.0, r, epsabs=epsabs, epsrel=epsrel, limit=200)[0]
    rv = integrate.quad(right, 0.0, r, epsabs=epsabs, epsrel=epsrel, limit=200)[0]
    return lv + rv


@dataclass(frozen=True)
class Weight1D:
    """A density on [lo, hi] with known interior breakpoints."""

    name: str
    lo: float
    hi: float
    density: Callable
    breakpoints: tuple[float, ...] = ()
    variant: str = "corrected"
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    def __call__(self, t):
        return self.density(t)

    def pieces(self) -> list[tuple[float, float]]:
        edges = [self.lo, *sorted(self.breakpoints), self.hi]
        return list(zip(edges[:-1], edges[1:]))

    def moments(self, max_order: int) -> np.ndarray:
        """[int t^m w(t) dt for m = 0..max_order], one vector-valued pass per piece."""
        key = max_order
        if key not in self._cache:
            powers = np.arange(max_order + 1)

            def f(t):
                return float(self.density(t)) * t ** powers

            total = np.zeros(max_order + 1)
            for a, b in self.pieces():
                total = total + _split_sqrt(f, a, b, vector=True)
            self._cache[key] = total
        return self._cache[key]

    def moment(self, m: int) -> float:
        return float(self.moments(m)[m])

    def mass(self) -> float:
        return self.moment(0)

    def samples(self, n: int) -> tuple[np.ndarray, np.ndarray]:
        """n evenly spaced points in [lo, hi] and the density there (singular points nudged inward)."""
        if n < 2:
            raise ValueError("need at least 2 samples")
        t = np.linspace(self.lo, self.hi, n)
        vals = np.array([self._safe(x) for x in t])
        return t, vals

    def _safe(self, x: float) -> float:
        span = self.hi - self.lo
        for shift in (0.0, 1e-12 * span, -1e-12 * span):
            y = min(max(x + shift, self.lo), self.hi)
            try:
                v = float(self.density(y))
            except (ValueError, ZeroDivisionError):
                continue
            if math.isfinite(v):
                return v
        return math.inf

    def to_csv(self, n: int) -> str:
        t, vals = self.samples(n)
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow([self.name[-1], "density"])
        for a, b in zip(t, vals):
            out.writerow([repr(float(a)), repr(float(b))])
        return buf.getvalue()


# closed forms ----------------------------------------------------------------

def v_of(x):
    return (x + 4) ** 2 / (x - 4) ** 2


def _inv_v(x):
    return (x - 4) ** 2 / (x + 4) ** 2


def _param(x):
    """The elliptic parameter in [0, 1]: v(x) left of 0 and 1/v(x) right of it."""
    return v_of(x) if x <= 0 else _inv_v(x)


def jx_t2(x: float) -> float:
    """J_x^{T^2}(x), the pushforward of Lebesgue measure on the torus to I_x.

    Infinite where the parameter reaches 1 (the logarithmic peak at x = 0).
    """
    if not -4 <= x <= 4:
        return 0.0
    m = _param(x)
    if m >= 1:
        return math.inf
    return 4 * ellip_K(m) / (PI2 * (4 + abs(x)))


def jx_t2_second_form(x: float, branch: str = "signed") -> float:
    """The alternative printed form -4 v^{1/2} K(v) / (pi^2 (x+4)) on [-4, 0).

    branch='signed' takes v^{1/2} = (x+4)/(x-4), which agrees with jx_t2;
    branch='principal' takes the positive root and flips the sign of the weight.
    """
    v = v_of(x)
    root = (x + 4) / (x - 4) if branch == "signed" else math.sqrt(v)
    return -4 * root * ellip_K(v) / (PI2 * (x + 4))


def jy_t2(y: float) -> float:
    return jx_t2(y - 1)


def jx_haar_raw(x: float, variant: str = "corrected") -> float:
    """int |J_{x,y}| dy over the slice of D_{x,y}; the K coefficient is 16 (printed: 12)."""
    if not -4 <= x <= 4:
        return 0.0
    c = 12 if variant == "printed" else 16
    q = x ** 4 + 224 * x ** 2 + 256
    m = _param(x)
    if m >= 1:  # x rounds to the peak; the K term carries a factor x and E(1) = 1
        return PI2 / 15 * 4 * q
    if x <= 0:
        return PI2 / 15 * (4 - x) * (q * ellip_E(m) + 8 * x * (x * x - 24 * x + c) * ellip_K(m))
    return PI2 / 15 * (x + 4) * (q * ellip_E(m) - 8 * x * (x * x + 24 * x + c) * ellip_K(m))


def jy_haar_raw(y: float) -> float:
    """int |J_{x,y}| dx over the slice of D_{x,y}."""
    if not -3 <= y <= 5:
        return 0.0
    q = y * y + 22 * y - 7
    m = _param(y - 1)
    if m >= 1:  # the K term carries a factor (1 - y) and E(1) = 1
        return 2 * PI2 / 3 * 4 * q
    if y <= 1:
        return 2 * PI2 / 3 * (5 - y) * (16 * (1 - y) * ellip_K(m) + q * ellip_E(m))
    return 2 * PI2 / 3 * (y + 3) * (32 * (1 - y) * ellip_K(m) + q * ellip_E(m))


# slice integrals (the independent oracle for x, y and the definition for z) ----
#
# Every slice integrand is  scale * prod |t - root|^exp * smooth(t)  and each segment
# ends on a root.  Distances to the endpoint roots are carried as s^2 exactly, so the
# boundary factors never suffer cancellation.


@dataclass(frozen=True)
class SliceIntegrand:
    roots: tuple[float, ...]
    exps: tuple[float, ...]
    scale: float
    smooth: Callable[[float], float] | None = None

    def _value(self, t, dist):
        out = self.scale
        for rho, e in zip(self.roots, self.exps):
            d = dist(rho)
            if d <= 0:  # only hit exactly at an endpoint node, a null set
                return 0.0
            out *= d ** e
        if self.smooth is not None:
            out *= self.smooth(t)
        return out

    def integrate(self, a: float, b: float, splits=()) -> float:
        cuts = [a, *(c for c in splits if a < c < b), b]
        return sum(self._piece(lo, hi) for lo, hi in zip(cuts[:-1], cuts[1:]))

    def _piece(self, a, b):
        if b <= a:
            return 0.0
        half = 0.5 * (b - a)
        r = math.sqrt(half)
        offs_a = {rho: a - rho for rho in self.roots}
        offs_b = {rho: b - rho for rho in self.roots}

        def left(s):
            s2 = s * s
            return self._value(a + s2, lambda rho: s2 if rho == a else abs(offs_a[rho] + s2)) * 2 * s

        def right(s):
            s2 = s * s
            return self._value(b - s2, lambda rho: s2 if rho == b else abs(offs_b[rho] - s2)) * 2 * s

        opts = dict(epsabs=1e-13, epsrel=1e-12, limit=200)
        return integrate.quad(left, 0.0, r, **opts)[0] + integrate.quad(right, 0.0, r, **opts)[0]


def x_slice(x: float) -> list[tuple[float, float]]:
    """y-range of D_{x,y} at fixed x."""
    return [(2 * abs(x) - 3, (x * x + 4) / 4)]


def y_slice(y: float) -> list[tuple[float, float]]:
    """x-range of D_{x,y} at fixed y."""
    half = (y + 3) / 2
    if y <= 1:
        return [(-half, half)]
    r = 2 * math.sqrt(y - 1)
    return [(-half, -r), (r, half)]


def z_slice(z: float) -> list[tuple[float, float]]:
    """y-range of D_{y,z} at fixed z."""
    top = (z + 5) / 3
    if z <= 1:
        return [(-z - 1, top)]
    r = 2 * math.sqrt(z - 1)
    if z <= 2:
        return [(-z - 1, -1 - r), (-1 + r, top)]
    return [(-1 + r, top)]


def _x_integrand(x, e):
    # J^2 = 64 pi^4 |y+2x+3| |y-2x+3| |(x^2+4)/4 - y|
    roots = (-2 * x - 3, 2 * x - 3, (x * x + 4) / 4)
    return SliceIntegrand(roots, (e, e, e), (8 * PI2) ** (2 * e))


def _y_integrand(y, e):
    # J^2 = 64 pi^4 |x-h| |x+h| (x^2 + 4 - 4y),  h = (y+3)/2
    h = (y + 3) / 2
    if y <= 1:
        return SliceIntegrand((-h, h), (e, e), (8 * PI2) ** (2 * e),
                              lambda x: (x * x + 4 * (1 - y)) ** e)
    r = 2 * math.sqrt(y - 1)
    return SliceIntegrand((-h, h, -r, r), (e,) * 4, (8 * PI2) ** (2 * e))


def _z_roots(z):
    top, bottom = (z + 5) / 3, -z - 1
    if z <= 1:
        return top, bottom, None
    r = 2 * math.sqrt(z - 1)
    return top, bottom, (-1 - r, -1 + r)


def _z_integrand(z, e_top, e_bottom, e_c, scale):
    # |J_{y,z}|^2 = 192 pi^4 |top - y| |y - bottom| c(y),  c = (y+1)^2 - 4(z-1)
    top, bottom, cr = _z_roots(z)
    if cr is None:
        return SliceIntegrand((top, bottom), (e_top, e_bottom), scale,
                              lambda y: ((y + 1) ** 2 + 4 * (1 - z)) ** e_c)
    return SliceIntegrand((top, bottom, *cr), (e_top, e_bottom, e_c, e_c), scale)


def slice_integral(integrand: SliceIntegrand, segments, splits=()) -> float:
    return sum(integrand.integrate(a, b, splits) for a, b in segments)


def jx_t2_quad(x: float) -> float:
    return 8 * slice_integral(_x_integrand(x, -0.5), x_slice(x))


def jy_t2_quad(y: float) -> float:
    return 8 * slice_integral(_y_integrand(y, -0.5), y_slice(y))


def jx_haar_quad(x: float) -> float:
    return slice_integral(_x_integrand(x, 0.5), x_slice(x))


def jy_haar_quad(y: float) -> float:
    return slice_integral(_y_integrand(y, 0.5), y_slice(y))


@lru_cache(maxsize=8192)
def jz_t2(z: float) -> float:
    """J_z^{T^2}(z) = 16 int |J_{y,z}|^{-1} dy over the slice of D_{y,z}."""
    if not -2 <= z <= 10:
        return 0.0
    f = _z_integrand(z, -0.5, -0.5, -0.5, 16 / math.sqrt(192 * PI4))
    # near z = 1 the integrand peaks at y = -1, where two roots of c meet
    return slice_integral(f, z_slice(z), (-1.0,))


@lru_cache(maxsize=8192)
def jz_haar_raw(z: float) -> float:
    """int |J_{x,y}(y,z)| (z+y+1)^{-1/2} dy over the slice of D_{y,z}."""
    if not -2 <= z <= 10:
        return 0.0
    # |J_{x,y}| = 4 pi^2 sqrt(3 |top - y| c)
    f = _z_integrand(z, 0.5, -0.5, 0.5, 4 * PI2 * math.sqrt(3))
    return slice_integral(f, z_slice(z), (-1.0,))


# the six weights -------------------------------------------------------------

def weight_T2(u: str) -> Weight1D:
    """Pushforward of Lebesgue measure on the torus to I_u."""
    lo, hi = INTERVALS[_check(u)]
    if u == "x":
        return Weight1D("T2-x", lo, hi, jx_t2, (0.0,))
    if u == "y":
        return Weight1D("T2-y", lo, hi, jy_t2, (1.0,))
    return Weight1D("T2-z", lo, hi, jz_t2, (1.0, 2.0))


HAAR_NORM = {"x": 16 * PI4, "y": 16 * PI4, "z": 16 * PI4}
HAAR_NORM_PRINTED = {"x": 16 * PI4, "y": 16 * PI4, "z": 8 * PI4}


def weight_Haar(u: str, variant: str = "corrected") -> Weight1D:
    """Pushforward of Haar measure on Sp(2) to I_u.

    variant='printed' uses the K coefficient 12 in the x weight and the 1/8pi^4
    prefactor for z; neither integrates to 1.
    """
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    lo, hi = INTERVALS[_check(u)]
    norm = (HAAR_NORM_PRINTED if variant == "printed" else HAAR_NORM)[u]
    if u == "x":
        return Weight1D("Haar-x", lo, hi, lambda t: jx_haar_raw(t, variant) / norm, (0.0,), variant)
    if u == "y":
        return Weight1D("Haar-y", lo, hi, lambda t: jy_haar_raw(t) / norm, (1.0,), variant)
    return Weight1D("Haar-z", lo, hi, lambda t: jz_haar_raw(t) / norm, (1.0, 2.0), variant)


def weight_for(family: str, u: str, variant: str = "corrected") -> Weight1D:
    if family == "T2":
        return weight_T2(u)
    if family == "Haar":
        return weight_Haar(u, variant)
    raise ValueError(f"family must be one of {FAMILIES}, got {family!r}")


def _check(u: str) -> str:
    if u not in INTERVALS:
        raise ValueError(f"unknown generator {u!r}; expected one of x, y, z")
    return u


__all__ = [
    "FAMILIES", "Weight1D", "ellip_E", "ellip_K", "ellip_series", "jx_haar_quad", "jx_haar_raw",
    "jx_t2", "jx_t2_quad", "jx_t2_second_form", "jy_haar_quad", "jy_haar_raw", "jy_t2",
    "jy_t2_quad", "jz_haar_raw", "jz_t2", "slice_integral", "v_of", "weight_Haar", "weight_T2",
    "weight_for", "x_slice", "y_slice", "z_slice",
]
