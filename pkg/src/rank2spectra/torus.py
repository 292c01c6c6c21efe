"""Characters of Sp(2) restricted to the maximal torus.

Points of the torus are stored as exact rational angles (units of full
turns); trigonometric evaluation is deferred to the last step.  Laurent
polynomials with integer coefficients serve as an exact integration oracle:
the Haar integral over the torus of a Laurent polynomial is its constant term.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

FUNDAMENTALS = ("x", "y", "z")
INTERVALS = {"x": (-4.0, 4.0), "y": (-3.0, 5.0), "z": (-2.0, 10.0)}

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True, order=True)
class Weight:
    """Dynkin labels (l1, l2) of an irreducible Sp(2) representation."""

    l1: int
    l2: int

    def __post_init__(self):
        if self.l1 < 0 or self.l2 < 0:
            raise ValueError(f"Dynkin labels must be nonnegative, got {self.as_tuple()}")

    @classmethod
    def from_partition(cls, mu1: int, mu2: int) -> "Weight":
        if not mu1 >= mu2 >= 0:
            raise ValueError(f"partition labels need mu1 >= mu2 >= 0, got ({mu1}, {mu2})")
        return cls(mu1 - mu2, mu2)

    @property
    def partition(self) -> tuple[int, int]:
        return (self.l1 + self.l2, self.l2)

    @property
    def hat(self) -> tuple[int, int]:
        return (self.l1 + 1, self.l2 + 1)

    def as_tuple(self) -> tuple[int, int]:
        return (self.l1, self.l2)

    def dimension(self) -> int:
        """Weyl dimension formula for C2."""
        m1, m2 = self.partition
        return (m1 + 2) * (m2 + 1) * (m1 + m2 + 3) * (m1 - m2 + 1) // 6


def _frac(v) -> Fraction:
    if isinstance(v, float):
        raise TypeError("torus angles must be exact; pass a Fraction, int or 'p/q' string")
    return Fraction(v)


@dataclass(frozen=True, order=True)
class TorusPoint:
    """(e^{2 pi i theta1}, e^{2 pi i theta2}) with exact rational angles in [0,1)."""

    theta1: Fraction
    theta2: Fraction

    def __init__(self, theta1, theta2):
        object.__setattr__(self, "theta1", _frac(theta1) % 1)
        object.__setattr__(self, "theta2", _frac(theta2) % 1)

    def as_floats(self) -> tuple[float, float]:
        return (float(self.theta1), float(self.theta2))

    def as_pairs(self) -> list[int]:
        """[p1, q1, p2, q2] with theta_i = p_i / q_i."""
        return [self.theta1.numerator, self.theta1.denominator,
                self.theta2.numerator, self.theta2.denominator]

    def as_json(self) -> list[list[int]]:
        """[[p1, q1], [p2, q2]]: each angle as an exact [numerator, denominator] pair."""
        return [[self.theta1.numerator, self.theta1.denominator],
                [self.theta2.numerator, self.theta2.denominator]]

    @classmethod
    def from_json(cls, data) -> "TorusPoint":
        (p1, q1), (p2, q2) = data
        return cls(Fraction(p1, q1), Fraction(p2, q2))

    @classmethod
    def from_pairs(cls, pairs: Iterable[int]) -> "TorusPoint":
        p1, q1, p2, q2 = pairs
        return cls(Fraction(p1, q1), Fraction(p2, q2))

    def __repr__(self):
        return f"TorusPoint({self.theta1}, {self.theta2})"


def angles(p):
    """Float angles of a TorusPoint, or pass through a (theta1, theta2) pair of floats/arrays."""
    if isinstance(p, TorusPoint):
        return p.as_floats()
    t1, t2 = p
    return t1, t2


def char_fund(u: str, p):
    """chi_u at p for u in {x, y, z}; vectorises over array angles."""
    t1, t2 = angles(p)
    x = 2.0 * np.cos(TWO_PI * t1) + 2.0 * np.cos(TWO_PI * t2)
    if u == "x":
        return x
    y = 1.0 + 2.0 * np.cos(TWO_PI * (np.add(t1, t2))) + 2.0 * np.cos(TWO_PI * np.subtract(t1, t2))
    if u == "y":
        return y
    if u == "z":
        return x * x - y - 1.0
    raise ValueError(f"unknown generator {u!r}; expected one of {FUNDAMENTALS}")


class LaurentPoly2:
    """Finitely supported map Z^2 -> Z, i.e. an integer Laurent polynomial in two variables."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Mapping[tuple[int, int], int] | None = None):
        c = {}
        for k, v in (coeffs or {}).items():
            if v:
                c[(int(k[0]), int(k[1]))] = int(v)
        self._c = c

    @classmethod
    def constant(cls, value: int) -> "LaurentPoly2":
        return cls({(0, 0): value})

    @property
    def coeffs(self) -> dict[tuple[int, int], int]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def __len__(self):
        return len(self._c)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        if not isinstance(other, LaurentPoly2):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        terms = ", ".join(f"{k}: {v}" for k, v in sorted(self._c.items()))
        return f"LaurentPoly2({{{terms}}})"

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        out = dict(self._c)
        for k, v in other._c.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly2(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly2({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly2.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly2({k: v * other for k, v in self._c.items()})
        out: dict[tuple[int, int], int] = {}
        for (a1, b1), v1 in self._c.items():
            for (a2, b2), v2 in other._c.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + v1 * v2
        return LaurentPoly2(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not Laurent polynomials in general")
        result = LaurentPoly2.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def constant_term(self) -> int:
        return self._c.get((0, 0), 0)

    def evaluate(self, p) -> complex:
        t1, t2 = angles(p)
        total = 0j
        for (a, b), v in self._c.items():
            total += v * np.exp(1j * TWO_PI * (a * np.asarray(t1) + b * np.asarray(t2)))
        return total

    def substitute(self, g) -> "LaurentPoly2":
        """Pull back along the torus map (w1, w2) -> (w1^g11 w2^g12, w1^g21 w2^g22)."""
        (g11, g12), (g21, g22) = g
        return LaurentPoly2({(a * g11 + b * g21, a * g12 + b * g22): v for (a, b), v in self._c.items()})


_FUND_POLYS = {
    "x": {(1, 0): 1, (-1, 0): 1, (0, 1): 1, (0, -1): 1},
    "y": {(0, 0): 1, (1, 1): 1, (-1, -1): 1, (1, -1): 1, (-1, 1): 1},
    "z": {(0, 0): 2, (2, 0): 1, (-2, 0): 1, (0, 2): 1, (0, -2): 1,
          (1, 1): 1, (-1, -1): 1, (1, -1): 1, (-1, 1): 1},
}


def char_fund_poly(u: str) -> LaurentPoly2:
    try:
        return LaurentPoly2(_FUND_POLYS[u])
    except KeyError:
        raise ValueError(f"unknown generator {u!r}; expected one of {FUNDAMENTALS}") from None


class _CharacterTable:
    """Memoised characters chi_mu, mu a partition, built by the classical product rules."""

    def __init__(self):
        self._lock = threading.Lock()
        self._table: dict[tuple[int, int], LaurentPoly2] = {
            (0, 0): LaurentPoly2.constant(1),
            (1, 0): char_fund_poly("x"),
            (1, 1): char_fund_poly("y"),
        }
        self._top = 1  # all partitions with mu1 + mu2 <= _top are filled in

    def _get(self, m1: int, m2: int) -> LaurentPoly2:
        if m2 < 0 or m1 < m2:
            return LaurentPoly2()
        return self._table[(m1, m2)]

    def _fill(self, total: int):
        chi_x, chi_y = self._table[(1, 0)], self._table[(1, 1)]
        # mu2 >= 1 first: chi_(1,1) chi_(a-1,b-1) involves only lower totals
        for b in range(total // 2, 0, -1):
            a = total - b
            if (a, b) in self._table:
                continue
            c, d = a - 1, b - 1
            prod = chi_y * self._get(c, d)
            rest = self._get(c - 1, d - 1) + self._get(c + 1, d - 1) + self._get(c - 1, d + 1)
            if c != d:
                rest = rest + self._get(c, d)
            self._table[(a, b)] = prod - rest
        a = total
        if (a, 0) not in self._table:
            # chi_(1,0) chi_(a-1,0) = chi_(a,0) + chi_(a-2,0) + chi_(a-1,1)
            self._table[(a, 0)] = chi_x * self._get(a - 1, 0) - self._get(a - 2, 0) - self._get(a - 1, 1)

    def __call__(self, m1: int, m2: int) -> LaurentPoly2:
        with self._lock:
            while self._top < m1 + m2:
                self._top += 1
                self._fill(self._top)
            return self._get(m1, m2)


_CHARACTERS = _CharacterTable()


def char_general(w: Weight) -> LaurentPoly2:
    """Exact character of the representation with Dynkin labels w."""
    return _CHARACTERS(*w.partition)


def weyl_character_numeric(w: Weight, p) -> float:
    """Symplectic Weyl character formula as a 2x2 determinant ratio (cross-check only)."""
    t1, t2 = angles(p)
    m1, m2 = w.partition
    l1, l2 = m1 + 2, m2 + 1

    def det(a, b):
        s = np.sin
        return s(TWO_PI * a * t1) * s(TWO_PI * b * t2) - s(TWO_PI * a * t2) * s(TWO_PI * b * t1)

    return det(l1, l2) / det(2, 1)
