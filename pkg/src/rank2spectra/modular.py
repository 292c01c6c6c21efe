"""Level-k modular data for Sp(2): S-matrix, Verlinde fusion, nimrep exponent data."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .graphs import sp2_alcove
from .torus import TorusPoint, Weight, char_fund
from .weyl import jacobian_xy

PI2 = math.pi ** 2
VERLINDE_GUARD = 1e-6


class IntegralityError(ArithmeticError):
    """A Verlinde coefficient is not within the guard band of an integer."""


@dataclass(frozen=True)
class SMatrix:
    level: int
    weights: tuple[Weight, ...]
    matrix: np.ndarray

    @property
    def kappa(self) -> int:
        return self.level + 3

    def index(self, w: Weight) -> int:
        return self.weights.index(w)

    def unitarity_residual(self) -> float:
        s = self.matrix
        return float(np.max(np.abs(s @ s.conj().T - np.eye(len(s)))))

    def symmetry_residual(self) -> float:
        return float(np.max(np.abs(self.matrix - self.matrix.T)))


def gannon_entry(lam: Weight, mu: Weight, kappa: int) -> float:
    xi = math.pi / (2 * kappa)
    a1, a2 = lam.hat
    b1, b2 = mu.hat
    A, B = a1 + 2 * a2, b1 + 2 * b2
    c = math.cos
    return (c(xi * (A * B + a1 * b1)) - c(xi * (A * B - a1 * b1))
            + c(xi * (A * b1 - a1 * B)) - c(xi * (A * b1 + a1 * B))) / kappa


@lru_cache(maxsize=64)
def smatrix(k: int) -> SMatrix:
    if k < 1:
        raise ValueError("level must be >= 1")
    weights = tuple(sp2_alcove(k))
    kappa = k + 3
    s = np.array([[gannon_entry(a, b, kappa) for b in weights] for a in weights])
    s.setflags(write=False)
    return SMatrix(k, weights, s)


def theta_of(w: Weight, k: int) -> TorusPoint:
    """theta1 = hat l2 / 2 kappa, theta2 = (hat l1 + hat l2) / 2 kappa."""
    kappa = k + 3
    h1, h2 = w.hat
    return TorusPoint(Fraction(h2, 2 * kappa), Fraction(h1 + h2, 2 * kappa))


def verlinde_N(k: int, w: Weight, guard: float = VERLINDE_GUARD) -> np.ndarray:
    """Fusion matrix (N_w)_{a,b} = N_{w a}^b from the Verlinde formula."""
    sm = smatrix(k)
    s = sm.matrix
    i = sm.index(w)
    ratio = s[:, i] / s[:, 0]
    raw = np.einsum("s,sa,sb->ab", ratio, s, s.conj()).real
    rounded = np.rint(raw)
    err = np.max(np.abs(raw - rounded))
    if err > guard or np.any(rounded < 0):
        raise IntegralityError(f"Verlinde N at level {k} for {w.as_tuple()} off by {err:.3g}")
    return rounded.astype(np.int64)


def psi_star(k: int, w: Weight, mode: str = "cosine", variant: str = "corrected") -> float:
    """Perron-Frobenius eigenvector entry psi^w_(0,0) = S_{w,0}, three independent ways.

    variant="printed" reproduces the Jacobian form with a minus sign and the
    Kac-Weyl form with normalisation 16; both are off (sign, factor 2).
    """
    if variant not in ("corrected", "printed"):
        raise ValueError(f"unknown variant {variant!r}")
    kappa = k + 3
    xi = math.pi / (2 * kappa)
    h1, h2 = w.hat
    if mode == "cosine":
        c = math.cos
        return (c(2 * xi * (2 * h1 + 3 * h2)) + c(2 * xi * (h1 - h2))
                - c(2 * xi * (h1 + 3 * h2)) - c(2 * xi * (2 * h1 + h2))) / kappa
    if mode == "jacobian":
        sign = -1 if variant == "printed" else 1
        return sign * float(jacobian_xy(theta_of(w, k))) / (8 * kappa * PI2)
    if mode == "kac-weyl":
        s = math.sin
        norm = 16 if variant == "printed" else 8
        phi = (s(h1 * xi) * s(2 * h2 * xi) * s((h1 + 2 * h2) * xi) * s((2 * h1 + 2 * h2) * xi)
               / (s(xi) * s(2 * xi) * s(3 * xi) * s(4 * xi)))
        return norm * s(xi) * s(2 * xi) * s(3 * xi) * s(4 * xi) / kappa * phi
    raise ValueError(f"unknown mode {mode!r}")


# quintic roots -------------------------------------------------------------

def _poly_eval(coeffs, x):
    acc = 0
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_rem(a, b):
    a = [Fraction(c) for c in a]
    while len(a) >= len(b):
        f = a[0] / b[0]
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    while a and a[0] == 0:
        a.pop(0)
    return a


def _derivative(coeffs):
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def sturm_chain(coeffs):
    chain = [[Fraction(c) for c in coeffs], [Fraction(c) for c in _derivative(coeffs)]]
    while True:
        r = _poly_rem(chain[-2], chain[-1])
        if not r:
            return chain
        chain.append([-c for c in r])


def _sign_changes(chain, x):
    signs = [v for v in (_poly_eval(p, x) for p in chain) if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def real_roots(coeffs, tol: float = 1e-15) -> list[float]:
    """All real roots, descending, of a squarefree integer polynomial (leading coefficient first).

    Sturm counts isolate each root in a rational interval; bisection then refines it.
    """
    chain = sturm_chain(coeffs)
    bound = 1 + max(abs(Fraction(c, coeffs[0])) for c in coeffs[1:])
    lo, hi = -bound, bound
    intervals = []
    stack = [(lo, hi)]
    while stack:
        a, b = stack.pop()
        count = _sign_changes(chain, a) - _sign_changes(chain, b)
        if count == 0:
            continue
        if count == 1:
            intervals.append((a, b))
            continue
        mid = (a + b) / 2
        stack.extend([(a, mid), (mid, b)])
    roots = []
    for a, b in intervals:
        # Sturm counts roots in (a, b], so an exact rational root can only sit at b
        if _poly_eval(coeffs, b) == 0:
            roots.append(float(b))
            continue
        a, b = float(a), float(b)
        fa = _poly_eval(coeffs, a)
        while b - a > tol * max(1.0, abs(a)):
            mid = 0.5 * (a + b)
            if mid in (a, b):
                break
            fm = _poly_eval(coeffs, mid)
            if fm == 0:
                a = b = mid
                break
            if (fm > 0) == (fa > 0):
                a, fa = mid, fm
            else:
                b = mid
        roots.append(0.5 * (a + b))
    return sorted(roots, reverse=True)


E8_A_POLY = (56689952, -15460896, 1522664, -63888, 968, -1)
E8_B_POLY = (1, -11, 44, -77, 55, -11)


@lru_cache(maxsize=1)
def e8_roots() -> tuple[tuple[float, ...], tuple[float, ...]]:
    """(a_1..a_5, b_1..b_5), each ordered from largest to smallest."""
    return tuple(real_roots(E8_A_POLY)), tuple(real_roots(E8_B_POLY))


# exponent data -----------------------------------------------------------

@dataclass(frozen=True)
class ExponentEntry:
    label: tuple[int, int]
    theta: TorusPoint
    multiplicity: int
    weight: float  # |psi_*|^2 of one copy
    note: str = ""

    @property
    def beta(self) -> tuple[float, float, float]:
        return tuple(float(char_fund(u, self.theta)) for u in "xyz")

    @property
    def total_weight(self) -> float:
        return self.multiplicity * self.weight


@dataclass(frozen=True)
class ExponentData:
    model: str
    entries: tuple[ExponentEntry, ...]
    variant: str = "corrected"

    def total_weight(self) -> float:
        return math.fsum(e.total_weight for e in self.entries)

    def to_json(self) -> list[dict]:
        return [{"label": list(e.label), "theta": e.theta.as_json(), "mult": e.multiplicity,
                 "weight": e.weight, "beta": list(e.beta)} for e in self.entries]


def exponent_sum_moment(data: ExponentData, pair: str, m: int, n: int) -> float:
    u, v = pair
    terms = []
    for e in data.entries:
        if e.weight == 0:
            continue
        bu = float(char_fund(u, e.theta))
        bv = float(char_fund(v, e.theta))
        terms.append(e.multiplicity * e.weight * bu ** m * bv ** n)
    return math.fsum(terms)


def _a_sp2(k):
    s = smatrix(k)
    return tuple(ExponentEntry(w.as_tuple(), theta_of(w, k), 1, float(s.matrix[0, i]) ** 2)
                 for i, w in enumerate(s.weights))


def _a_so5(k, variant):
    s = smatrix(k)
    out = []
    for i, w in enumerate(s.weights):
        if w.l1 + 2 * w.l2 > k:
            continue
        s2 = float(s.matrix[0, i]) ** 2
        fixed = w.l1 + 2 * w.l2 == k
        weight = s2 if (fixed and variant == "corrected") else 2 * s2
        out.append(ExponentEntry(w.as_tuple(), theta_of(w, k), 1, weight,
                                 "fixed" if fixed else ""))
    return tuple(out)


def _d(k, variant):
    s = smatrix(k)
    out = []
    for i, w in enumerate(s.weights):
        s2 = float(s.matrix[0, i]) ** 2
        fixed = w.l1 + 2 * w.l2 == k
        if not fixed:
            if w.l1 % 2 == 0:
                out.append(ExponentEntry(w.as_tuple(), theta_of(w, k), 1, 2 * s2))
            continue
        if k % 2 == 0:
            # two copies of each fixed point
            weight = s2 if variant == "corrected" else s2 / 2
            out.append(ExponentEntry(w.as_tuple(), theta_of(w, k), 2, weight, "fixed"))
        else:
            # odd level: fixed points carry odd l1 and are orthogonal to the vacuum
            weight = 0.0 if variant == "corrected" else s2
            out.append(ExponentEntry(w.as_tuple(), theta_of(w, k), 1, weight, "fixed"))
    return tuple(out)


def _table(denom, rows):
    out = []
    for label, (p1, p2), mult, weight in rows:
        out.append(ExponentEntry(label, TorusPoint(Fraction(p1, denom), Fraction(p2, denom)),
                                 mult, weight))
    return tuple(out)


def _e3(scale):
    r3 = math.sqrt(3)
    lo, hi = (3 - r3) / 24 * scale, (3 + r3) / 24 * scale
    return _table(12, [
        ((0, 0), (1, 2), 1, lo), ((2, 1), (2, 5), 1, hi), ((2, 0), (1, 4), 1, hi),
        ((0, 3), (4, 5), 1, lo), ((1, 1), (2, 4), 2, 0.25),
    ])


def _e7(denom_weight, middle):
    r5 = math.sqrt(5)
    s_m, s_p = math.sqrt(10 - 2 * r5), math.sqrt(10 + 2 * r5)
    w1 = (5 - r5 - s_m) / denom_weight
    w2 = (5 - r5 + s_m) / denom_weight
    w3 = (5 + r5 + s_p) / denom_weight
    w4 = (5 + r5 - s_p) / denom_weight
    return _table(20, [
        ((0, 0), (1, 2), 1, w1), ((0, 7), (8, 9), 1, w1),
        ((6, 1), (2, 9), 1, w2), ((6, 0), (1, 8), 1, w2),
        ((2, 2), (3, 6), 1, w3), ((2, 3), (4, 7), 1, w3),
        ((0, 5), (6, 7), 1, w4), ((0, 2), (3, 4), 1, w4),
        ((3, 1), (2, 6), 1, middle), ((3, 3), (4, 8), 1, middle),
    ])


def _e8(variant):
    a, b = e8_roots()
    bw = (lambda v: 11 * v) if variant == "printed" else (lambda v: 1 / (11 * v))
    return _table(22, [
        ((0, 0), (1, 2), 1, a[4]), ((0, 8), (9, 10), 1, a[4]),
        ((0, 2), (3, 4), 1, a[3]), ((0, 6), (7, 8), 1, a[3]),
        ((4, 0), (1, 6), 1, a[2]), ((4, 4), (5, 10), 1, a[2]),
        ((4, 1), (2, 7), 1, a[1]), ((4, 3), (4, 9), 1, a[1]),
        ((2, 2), (3, 6), 1, a[0]), ((2, 4), (5, 8), 1, a[0]),
        ((8, 0), (1, 10), 1, bw(b[0])), ((6, 1), (2, 9), 1, bw(b[4])),
        ((4, 2), (3, 8), 1, bw(b[1])), ((2, 3), (4, 7), 1, bw(b[3])),
        ((0, 4), (5, 6), 1, bw(b[2])),
    ])


def _e12():
    r5 = math.sqrt(5)
    sp, sm = math.sqrt(30 + 6 * r5), math.sqrt(30 - 6 * r5)
    w1, w2 = (9 - r5 - sp) / 120, (9 + r5 - sm) / 120
    w3, w4 = (9 + r5 + sm) / 120, (9 - r5 + sp) / 120
    return _table(30, [
        ((0, 0), (1, 2), 1, w1), ((0, 12), (13, 14), 1, w1),
        ((6, 0), (1, 8), 1, w2), ((6, 6), (7, 14), 1, w2),
        ((8, 1), (2, 11), 1, w3), ((8, 3), (4, 13), 1, w3),
        ((2, 3), (4, 7), 1, w4), ((2, 7), (8, 11), 1, w4),
        ((4, 4), (5, 10), 4, 1 / 6),
    ])


EXCEPTIONAL_LEVELS = {"E3": 3, "E3M": 3, "E7": 7, "E7M": 7, "E8": 8, "E12": 12}


def parse_model(model: str) -> tuple[str, int | None]:
    """'A_Sp2(5)' -> ('A_Sp2', 5); 'E7' -> ('E7', None)."""
    model = model.strip()
    if "(" in model:
        name, rest = model.split("(", 1)
        return name, int(rest.rstrip(")"))
    return model, None


def eigendata(model: str, variant: str = "corrected") -> ExponentData:
    """Exponents, angles and |psi_*|^2 for A_Sp2(k), A_SO5(k), D(k) and the exceptional tables.

    variant='printed' reproduces the normalisations exactly as stated in the source
    where they differ from the ones that reproduce the graph moments.
    """
    if variant not in ("corrected", "printed"):
        raise ValueError("variant must be 'corrected' or 'printed'")
    name, k = parse_model(model)
    if name == "A_Sp2":
        entries = _a_sp2(k)
    elif name == "A_SO5":
        entries = _a_so5(k, variant)
    elif name == "D":
        if k < 2:
            raise ValueError("D(k) needs k >= 2")
        entries = _d(k, variant)
    elif name == "E3":
        entries = _e3(1)
    elif name == "E3M":
        entries = _e3(2)
    elif name == "E7":
        entries = _e7(80, 0.25)
    elif name == "E7M":
        entries = _e7(40, 0.0)
    elif name == "E8":
        entries = _e8(variant)
    elif name == "E12":
        entries = _e12()
    else:
        raise ValueError(f"unknown model {model!r}")
    return ExponentData(model, entries, variant)
