"""Joint spectral measures on the torus for the Sp(2)/SO(5) graph families.

Atomic measures keep exact rational atom positions; weights are floats.  The
constructors for each model come in a "corrected" form (the one whose moments
reproduce the graph / exponent oracles) and a "printed" form that follows the
published coefficients literally.  Where the two differ the verify suite
reports the gap instead of hiding it.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from .modular import EXCEPTIONAL_LEVELS, e8_roots, parse_model
from .torus import TorusPoint, char_fund
from .weyl import PI2, PI4, d8_orbit, jacobian_xy, jacobian_yz

VARIANTS = ("corrected", "printed")
DEFAULT_GRID = 400


@dataclass(frozen=True)
class AtomicMeasure2:
    """Finite sum of weighted Dirac masses on the torus.

    ``atoms`` maps each support point to its weight; ``tags`` records where each
    atom came from (grid / orbit / table).  Negative weights only appear in the
    printed variants that subtract one grid from another.
    """

    atoms: dict[TorusPoint, float]
    tags: dict[TorusPoint, str] = field(default_factory=dict)
    model: str = ""
    pair: str = ""
    variant: str = "corrected"

    @property
    def support(self) -> frozenset[TorusPoint]:
        return frozenset(self.atoms)

    def support_size(self, nonzero: bool = False) -> int:
        if nonzero:
            return sum(1 for w in self.atoms.values() if w != 0)
        return len(self.atoms)

    def mass(self) -> float:
        return math.fsum(self.atoms.values())

    def is_signed(self) -> bool:
        return any(w < 0 for w in self.atoms.values())

    def arrays(self):
        pts = list(self.atoms)
        t1 = np.array([float(p.theta1) for p in pts])
        t2 = np.array([float(p.theta2) for p in pts])
        w = np.array([self.atoms[p] for p in pts])
        return t1, t2, w

    def scaled(self, c: float) -> "AtomicMeasure2":
        return AtomicMeasure2({p: c * w for p, w in self.atoms.items()}, dict(self.tags),
                              self.model, self.pair, self.variant)

    def reweighted(self, f: Callable[[TorusPoint], float]) -> "AtomicMeasure2":
        """Multiply every atom by f(point)."""
        return AtomicMeasure2({p: w * float(f(p)) for p, w in self.atoms.items()}, dict(self.tags),
                              self.model, self.pair, self.variant)

    def __add__(self, other: "AtomicMeasure2") -> "AtomicMeasure2":
        atoms = dict(self.atoms)
        tags = dict(self.tags)
        for p, w in other.atoms.items():
            atoms[p] = atoms.get(p, 0.0) + w
            if p in tags and other.tags.get(p) and other.tags[p] not in tags[p].split("+"):
                tags[p] = tags[p] + "+" + other.tags[p]
            else:
                tags.setdefault(p, other.tags.get(p, ""))
        return AtomicMeasure2(atoms, tags, self.model or other.model, self.pair or other.pair,
                              self.variant)

    def __sub__(self, other: "AtomicMeasure2") -> "AtomicMeasure2":
        return self + other.scaled(-1.0)

    def with_meta(self, model: str, pair: str, variant: str) -> "AtomicMeasure2":
        return AtomicMeasure2(dict(self.atoms), dict(self.tags), model, pair, variant)

    def to_json(self) -> dict:
        atoms = [{"theta": p.as_json(), "weight": w, "tag": self.tags.get(p, "")}
                 for p, w in sorted(self.atoms.items())]
        return {"model": self.model, "pair": self.pair, "variant": self.variant, "atoms": atoms}

    def to_csv(self) -> str:
        buf = io.StringIO()
        out = csv.writer(buf, lineterminator="\n")
        out.writerow(["p1", "q1", "p2", "q2", "weight", "tag"])
        for p, w in sorted(self.atoms.items()):
            out.writerow([*p.as_pairs(), repr(w), self.tags.get(p, "")])
        return buf.getvalue()


@dataclass(frozen=True)
class DensityMeasure2:
    """density(t1, t2) dtheta1 dtheta2 on the torus, integrated on a uniform grid."""

    density: Callable
    grid: int = DEFAULT_GRID
    model: str = ""
    pair: str = ""
    variant: str = "corrected"

    def nodes(self):
        t = np.arange(self.grid) / self.grid
        t1, t2 = np.meshgrid(t, t, indexing="ij")
        return t1, t2

    def mass(self) -> float:
        t1, t2 = self.nodes()
        return float(np.mean(self.density(t1, t2)))

    def to_json(self) -> dict:
        return {"model": self.model, "pair": self.pair, "variant": self.variant,
                "atoms": [], "density_grid": self.grid}


Measure = AtomicMeasure2 | DensityMeasure2


def _atomic(points: Iterable[TorusPoint], weight: float, tag: str) -> AtomicMeasure2:
    atoms: dict[TorusPoint, float] = {}
    for p in points:
        atoms[p] = atoms.get(p, 0.0) + weight
    return AtomicMeasure2(atoms, {p: tag for p in atoms})


def dirac_grid(m: int) -> AtomicMeasure2:
    """d_m x d_m: weight 1/m^2 at each (p/m, q/m)."""
    if m < 1:
        raise ValueError("grid size must be positive")
    pts = [TorusPoint(Fraction(p, m), Fraction(q, m)) for p in range(m) for q in range(m)]
    return _atomic(pts, 1.0 / (m * m), f"grid{m}")


def second_seed(theta1, theta2) -> TorusPoint:
    return TorusPoint(Fraction(1, 2) - Fraction(theta2), Fraction(1, 2) - Fraction(theta1))


def d8_orbit_measure(theta1, theta2) -> AtomicMeasure2:
    """d^(theta1,theta2): uniform on the D8-orbits of (theta1,theta2) and (1/2-theta2, 1/2-theta1)."""
    p = TorusPoint(theta1, theta2)
    support = d8_orbit(p) | d8_orbit(second_seed(p.theta1, p.theta2))
    return _atomic(sorted(support), 1.0 / len(support), f"orbit({p.theta1},{p.theta2})")


# weight functions on atoms ---------------------------------------------------

def _j2(p) -> float:
    return float(jacobian_xy(p)) ** 2


def _abs_j(p) -> float:
    return abs(float(jacobian_xy(p)))


def _jyz2(p) -> float:
    return float(jacobian_yz(p)) ** 2


def _orbits(pairs, denom) -> AtomicMeasure2:
    """Sum of d^(a/denom, b/denom) with integer multiplicities: pairs = [(a, b, mult), ...]."""
    total = AtomicMeasure2({})
    for a, b, mult in pairs:
        total = total + d8_orbit_measure(Fraction(a, denom), Fraction(b, denom)).scaled(mult)
    return total


# model constructors ----------------------------------------------------------

def _a_sp2(k: int) -> AtomicMeasure2:
    kappa = k + 3
    return dirac_grid(2 * kappa).reweighted(lambda p: _j2(p) / (128 * PI4))


def _line(k: int) -> AtomicMeasure2:
    kappa = k + 3
    return _orbits([(j, kappa - j, 1) for j in range(1, k)], 2 * kappa)


def _a_so5(k: int, variant: str) -> AtomicMeasure2:
    base = _a_sp2(k)
    if variant == "corrected":
        return base
    kappa = k + 3
    return base + _line(k).reweighted(lambda p: _j2(p) / (64 * kappa ** 2 * PI4))


def _d(k: int, variant: str) -> AtomicMeasure2:
    kappa = k + 3
    if variant == "corrected":
        n = 2 * kappa
        pts = [TorusPoint(Fraction(a, n), Fraction(b, n))
               for a in range(n) for b in range(n) if (a + b) % 2 == 1]
        return _atomic(pts, 1.0, f"grid{n}-odd").reweighted(
            lambda p: _j2(p) / (256 * kappa ** 2 * PI4))
    # d_kappa x (d_2kappa - d_kappa) + (d_2kappa - d_kappa) x d_kappa, built coordinatewise
    def product(f1: dict, f2: dict) -> AtomicMeasure2:
        atoms = {}
        for a, wa in f1.items():
            for b, wb in f2.items():
                p = TorusPoint(a, b)
                atoms[p] = atoms.get(p, 0.0) + wa * wb
        return AtomicMeasure2({p: w for p, w in atoms.items() if w != 0},
                              {p: "grid-diff" for p in atoms})
    one = {Fraction(a, kappa): 1.0 / kappa for a in range(kappa)}
    two = {Fraction(a, 2 * kappa): 1.0 / (2 * kappa) for a in range(2 * kappa)}
    diff = {t: two.get(t, 0.0) - one.get(t, 0.0) for t in two}
    grid = product(one, diff) + product(diff, one)
    zeta = 1.0 if k % 2 else 1.5
    return (grid.reweighted(lambda p: _j2(p) / (128 * PI4))
            + _line(k).reweighted(lambda p: zeta * _j2(p) / (64 * kappa ** 2 * PI4)))


def _d6_abs_j(coeff: float) -> AtomicMeasure2:
    return dirac_grid(6).reweighted(lambda p: coeff * _abs_j(p))


def _e3(variant: str, model: str) -> AtomicMeasure2:
    orbit_coeff = 1 / (48 * PI2) if model == "E3" else 1 / (24 * PI2)
    grid_coeff = 1 / (384 * PI2) if variant == "printed" else 3 / (32 * PI2)
    orbits = _orbits([(1, 2, 1), (1, 4, 1)], 12)
    return orbits.reweighted(lambda p: orbit_coeff * _abs_j(p)) + _d6_abs_j(grid_coeff)


def _e7(variant: str, model: str) -> AtomicMeasure2:
    terms = [(1, 2, 1), (1, 8, 1), (3, 6, 1), (3, 4, 1)]
    if model == "E7":
        terms.append((2, 6, 2))
        coeff = 1 / (80 * PI2)
    else:
        coeff = 1 / (80 * PI2) if variant == "printed" else 1 / (40 * PI2)
    return _orbits(terms, 20).reweighted(lambda p: coeff * _abs_j(p))


# E8: b-line orbits paired with the roots b_1 > ... > b_5
_E8_B_ORBITS = ((1, 10), (3, 8), (5, 6), (4, 7), (2, 9))


def _e8(variant: str) -> AtomicMeasure2:
    _, b = e8_roots()
    if variant == "printed":
        jterms = [(1, 2, 1), (3, 4, 1), (1, 6, 1), (3, 6, 1), (2, 7, 2)]
        jcoeff = 1 / (1936 * PI4)
        bweights = [11 * v for v in b]
    else:
        jterms = [(1, 2, 1), (3, 4, 1), (1, 6, 1), (3, 6, 1), (2, 7, 1)]
        jcoeff = 1 / (7744 * PI4)
        bweights = [1 / (11 * v) for v in b]
    total = _orbits(jterms, 22).reweighted(lambda p: jcoeff * _jyz2(p))
    for (a, c), w in zip(_E8_B_ORBITS, bweights):
        total = total + d8_orbit_measure(Fraction(a, 22), Fraction(c, 22)).scaled(w)
    return total


def _e12() -> AtomicMeasure2:
    orbits = _orbits([(1, 2, 1), (1, 8, 1), (2, 11, 1), (4, 7, 1)], 30)
    return orbits.reweighted(lambda p: _abs_j(p) / (60 * PI2)) + _d6_abs_j(1 / (8 * PI2))


def _a_infty_density(t1, t2):
    return jacobian_xy((t1, t2)) ** 2 / (128 * PI4)


NATURAL_PAIR = {"A_Sp2": "xy", "A_SO5": "yz", "D": "xy", "A_infty": "xy"}


def measure_for(model: str, pair: str | None = None, variant: str = "corrected",
                grid: int = DEFAULT_GRID) -> Measure:
    """The joint spectral measure of a model, e.g. 'A_Sp2(3)', 'A_SO5(4)', 'D(5)', 'E8', 'A_infty'."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    name, k = parse_model(model)
    pair = pair or NATURAL_PAIR.get(name, "xy")
    if pair not in ("xy", "yz", "xz"):
        raise ValueError(f"unknown pair {pair!r}")
    if name in ("A_Sp2", "A_SO5", "D"):
        if k is None or k < 1 or (name == "D" and k < 2):
            raise ValueError(f"model {model!r} needs a valid level")
    if name == "A_Sp2":
        mu = _a_sp2(k)
    elif name == "A_SO5":
        mu = _a_so5(k, variant)
    elif name == "D":
        mu = _d(k, variant)
    elif name in ("E3", "E3M"):
        mu = _e3(variant, name)
    elif name in ("E7", "E7M"):
        mu = _e7(variant, name)
    elif name == "E8":
        mu = _e8(variant)
    elif name == "E12":
        mu = _e12()
    elif name == "A_infty":
        return DensityMeasure2(_a_infty_density, grid, model, pair, variant)
    else:
        raise ValueError(f"unknown model {model!r}; known: A_Sp2(k), A_SO5(k), D(k), "
                         f"{', '.join(EXCEPTIONAL_LEVELS)}, A_infty")
    return mu.with_meta(model, pair, variant)


def measure_cross_moment(mu: Measure, pair: str, m: int, n: int) -> float:
    """Integral of chi_u^m chi_v^n against mu, for pair = 'uv'."""
    u, v = pair
    if isinstance(mu, DensityMeasure2):
        t1, t2 = mu.nodes()
        vals = mu.density(t1, t2) * char_fund(u, (t1, t2)) ** m * char_fund(v, (t1, t2)) ** n
        return float(np.mean(vals))
    t1, t2, w = mu.arrays()
    if len(w) == 0:
        return 0.0
    vals = w * char_fund(u, (t1, t2)) ** m * char_fund(v, (t1, t2)) ** n
    return math.fsum(vals.tolist())


__all__ = [
    "AtomicMeasure2", "DensityMeasure2", "Measure", "NATURAL_PAIR", "VARIANTS", "d8_orbit_measure",
    "dirac_grid", "measure_cross_moment", "measure_for", "second_seed",
]
